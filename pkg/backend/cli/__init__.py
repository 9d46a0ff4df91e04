"""
Línea de comandos de Torpedo-SMC
"""

from .commands import cmd_compare, cmd_presets, cmd_run, run_scenarios
from .main import build_parser, main
from .scenario_file import (
    PRESET_NAMES,
    load_scenario,
    parse_scenario,
    preset_scenario,
    serialize_scenario,
)

__all__ = [
    'PRESET_NAMES',
    'build_parser',
    'cmd_compare',
    'cmd_presets',
    'cmd_run',
    'load_scenario',
    'main',
    'parse_scenario',
    'preset_scenario',
    'run_scenarios',
    'serialize_scenario',
]
