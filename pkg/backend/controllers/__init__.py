"""
Superficies deslizantes, leyes de control y controladores SMC
"""

from .laws import RelayLaw, SaturationLaw, relay_control, sat_control, sign
from .smc import (
    PRESET_GAINS,
    ControlDiagnostics,
    ControllerKind,
    ControlStep,
    LawKind,
    SlidingModeController,
    apply_law,
    build_controller,
    controller_step,
    error_signals,
    lyapunov,
    reaching_check,
)
from .surfaces import (
    ErrorSignals,
    LinearSurface,
    PidSurface,
    SecondOrderSurface,
    eval_surface,
    pid_integral_step,
    surface_derivative,
)

__all__ = [
    'sign',
    'RelayLaw',
    'SaturationLaw',
    'relay_control',
    'sat_control',
    'ErrorSignals',
    'LinearSurface',
    'SecondOrderSurface',
    'PidSurface',
    'eval_surface',
    'surface_derivative',
    'pid_integral_step',
    'ControllerKind',
    'LawKind',
    'PRESET_GAINS',
    'ControlDiagnostics',
    'ControlStep',
    'SlidingModeController',
    'apply_law',
    'build_controller',
    'controller_step',
    'error_signals',
    'lyapunov',
    'reaching_check',
]
