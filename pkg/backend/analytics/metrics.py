"""
Métricas de chattering y convergencia sobre una traza

Chattering no tiene una definición cuantitativa única: switch_count y la
variación total son sus operacionalizaciones, pensadas para comparaciones
ordinales entre controladores.
"""
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np

from ..config import Settings, get_settings

logger = logging.getLogger(__name__)

SUMMARY_COLUMNS = (
    "name",
    "switch_count",
    "total_variation",
    "settling_time",
    "steady_control_mean",
    "steady_control_tv",
    "peak_control",
)


@dataclass
class MetricsReport:
    """Resumen de un experimento"""
    switch_count: int
    total_variation: float
    settling_time: Optional[float]
    steady_control_mean: float
    steady_control_tv: float
    peak_control: float
    peak_error: float
    peak_theta: float = 0.0
    reaching_fraction: float = 1.0
    aborted: bool = False

    def to_dict(self) -> Dict[str, Any]:
        """Convertir a diccionario"""
        return {
            'switch_count': self.switch_count,
            'total_variation': self.total_variation,
            'settling_time': self.settling_time,
            'steady_control_mean': self.steady_control_mean,
            'steady_control_tv': self.steady_control_tv,
            'peak_control': self.peak_control,
            'peak_error': self.peak_error,
            'peak_theta': self.peak_theta,
            'reaching_fraction': self.reaching_fraction,
            'aborted': self.aborted,
        }

    def summary_row(self, name: str) -> Dict[str, Any]:
        data = self.to_dict()
        return {column: (name if column == "name" else data[column]) for column in SUMMARY_COLUMNS}


def switch_count(u: Sequence[float], threshold: float = 1e-9) -> int:
    """
    Conmutaciones de la señal de control

    Cuenta los incrementos |Δu| > threshold cuyo signo difiere del incremento
    significativo anterior; el primero cuenta como conmutación.
    """
    if threshold < 0:
        raise ValueError(f"threshold must be non-negative, got {threshold!r}")
    u = np.asarray(u, dtype=float)
    if u.size < 2:
        return 0
    du = np.diff(u)
    significant = np.sign(du[np.abs(du) > threshold])
    if significant.size == 0:
        return 0
    return 1 + int(np.count_nonzero(significant[1:] != significant[:-1]))


def total_variation(u: Sequence[float]) -> float:
    """Σ|u[i+1] - u[i]|"""
    u = np.asarray(u, dtype=float)
    if u.size < 2:
        return 0.0
    return float(np.sum(np.abs(np.diff(u))))


def settling_time(e: Sequence[float], t: Sequence[float], band: float,
                  amplitude: float = 1.0) -> Optional[float]:
    """Primer instante (relativo a t[0]) a partir del cual |e| <= band·|amplitud|"""
    if not 0 < band < 1:
        raise ValueError(f"band must be in (0, 1), got {band!r}")
    e = np.abs(np.asarray(e, dtype=float))
    t = np.asarray(t, dtype=float)
    if e.size == 0:
        return None

    outside = np.flatnonzero(e > band * abs(amplitude))
    if outside.size == 0:
        return 0.0
    last = int(outside[-1])
    if last == e.size - 1:
        return None
    return float(t[last + 1] - t[0])


def steady_window_stats(u: Sequence[float], tail_fraction: float = 0.2) -> Tuple[float, float]:
    """(media, variación total) sobre la fracción final de la serie"""
    if not 0 < tail_fraction <= 1:
        raise ValueError(f"tail_fraction must be in (0, 1], got {tail_fraction!r}")
    u = np.asarray(u, dtype=float)
    if u.size == 0:
        return 0.0, 0.0
    n_tail = max(1, int(math.ceil(u.size * tail_fraction)))
    tail = u[-n_tail:]
    return float(np.mean(tail)), total_variation(tail)


def compute_metrics(trace, settings: Optional[Settings] = None) -> MetricsReport:
    """Construir el MetricsReport de una traza con los parámetros configurados"""
    settings = settings or get_settings()
    params = settings.metrics
    u = trace["u"]
    e = trace["e"]

    mean, tail_tv = steady_window_stats(u, params.tail_fraction) if len(trace) else (0.0, 0.0)
    report = MetricsReport(
        switch_count=switch_count(u, params.switch_threshold),
        total_variation=total_variation(u),
        settling_time=settling_time(e, trace["t"], params.settling_band, trace.scenario.reference.amplitude),
        steady_control_mean=mean,
        steady_control_tv=tail_tv,
        peak_control=float(np.max(np.abs(u))) if u.size else 0.0,
        peak_error=float(np.max(np.abs(e))) if e.size else 0.0,
        peak_theta=float(np.max(np.abs(trace["theta"]))) if u.size else 0.0,
        reaching_fraction=trace.reaching_fraction(),
        aborted=trace.aborted,
    )
    if report.reaching_fraction < 0.95:
        logger.warning(
            "Reaching condition held at only %.1f%% of reaching-phase steps (%s)",
            100 * report.reaching_fraction, trace.scenario.name,
        )
    return report
