"""
Métricas de chattering, convergencia y esfuerzo de control
"""

from .metrics import (
    SUMMARY_COLUMNS,
    MetricsReport,
    compute_metrics,
    settling_time,
    steady_window_stats,
    switch_count,
    total_variation,
)

__all__ = [
    'MetricsReport',
    'SUMMARY_COLUMNS',
    'compute_metrics',
    'settling_time',
    'steady_window_stats',
    'switch_count',
    'total_variation',
]
