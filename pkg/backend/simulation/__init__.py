"""
Escenarios y motor de simulación en lazo cerrado
"""

from .engine import (
    DisturbanceGenerator,
    Trace,
    TraceRecord,
    disturbance_eval,
    open_loop_response,
    reference_eval,
    rk4_step,
    run_closed_loop,
)
from .scenario import (
    ControllerConfig,
    CustomPlantConfig,
    DisturbanceConfig,
    ReferenceConfig,
    Scenario,
    ZpkConfig,
)

__all__ = [
    'Scenario',
    'ControllerConfig',
    'CustomPlantConfig',
    'DisturbanceConfig',
    'ReferenceConfig',
    'ZpkConfig',
    'Trace',
    'TraceRecord',
    'DisturbanceGenerator',
    'disturbance_eval',
    'open_loop_response',
    'reference_eval',
    'rk4_step',
    'run_closed_loop',
]
