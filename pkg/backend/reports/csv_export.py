"""
Exportación CSV de trazas y resúmenes comparativos

Formato numérico %.Ng (independiente del locale, punto decimal) y fin de
línea "\\n" para que dos ejecuciones idénticas produzcan ficheros idénticos.
"""
import logging
from pathlib import Path
from typing import IO, Any, Dict, List, Optional, Sequence, Union

import pandas as pd

from ..analytics.metrics import SUMMARY_COLUMNS, MetricsReport

logger = logging.getLogger(__name__)

ERROR_SENTINEL = "ERROR"
MISSING_VALUE = "none"

Destination = Union[str, Path, IO[str]]


def _format_number(value: Any, digits: int) -> str:
    if value is None:
        return MISSING_VALUE
    if isinstance(value, (bool, int)) and not isinstance(value, float):
        return str(int(value))
    return f"{float(value):.{digits}g}"


def write_trace_csv(trace, destination: Destination, digits: int = 9) -> None:
    """Cabecera t,z,theta,e,s,u y una fila por paso"""
    frame = trace.to_dataframe()
    text = frame.to_csv(index=False, float_format=f"%.{digits}g", lineterminator="\n")
    if trace.aborted:
        text += f"# aborted: {trace.error}\n"
    _write_text(text, destination)
    logger.debug("Trace with %d rows written", len(frame))


def error_row(name: str) -> Dict[str, Any]:
    return {column: (name if column == "name" else ERROR_SENTINEL) for column in SUMMARY_COLUMNS}


def write_summary_csv(rows: Sequence[Optional[Dict[str, Any]]], names: Sequence[str],
                      destination: Destination, digits: int = 9) -> None:
    """Una fila por escenario, en el orden de entrada; None marca un fallo"""
    formatted: List[Dict[str, str]] = []
    for name, row in zip(names, rows):
        if row is None:
            formatted.append(error_row(name))
            continue
        formatted.append({
            column: (str(row[column]) if column == "name" else _format_number(row[column], digits))
            for column in SUMMARY_COLUMNS
        })
    frame = pd.DataFrame(formatted, columns=list(SUMMARY_COLUMNS))
    _write_text(frame.to_csv(index=False, lineterminator="\n"), destination)


def format_report(report: MetricsReport, name: Optional[str] = None, digits: int = 9) -> str:
    """Informe de métricas legible para la salida estándar"""
    lines = [f"scenario: {name}"] if name else []
    for key, value in report.to_dict().items():
        lines.append(f"{key}: {_format_number(value, digits) if key != 'aborted' else str(value).lower()}")
    return "\n".join(lines)


def _write_text(text: str, destination: Destination) -> None:
    if hasattr(destination, "write"):
        destination.write(text)
        return
    with open(destination, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)
