"""
Exportación de trazas y resúmenes
"""

from .csv_export import (
    ERROR_SENTINEL,
    format_report,
    write_summary_csv,
    write_trace_csv,
)

__all__ = [
    'ERROR_SENTINEL',
    'format_report',
    'write_summary_csv',
    'write_trace_csv',
]
