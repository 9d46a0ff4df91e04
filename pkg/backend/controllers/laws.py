"""
Leyes de control: relé u = k·sign(s) y saturación con capa límite
u = λ·sat(s/φ)
"""
from dataclasses import dataclass

import numpy as np

from ..errors import InvalidGainError


def _require_positive(**gains: float) -> None:
    for name, value in gains.items():
        if not (np.isfinite(value) and value > 0):
            raise InvalidGainError(f"{name} must be a finite positive number, got {value!r}")


def sign(s: float) -> float:
    """+1 si s > 0, -1 si s < 0, 0 en s = 0"""
    if s > 0:
        return 1.0
    if s < 0:
        return -1.0
    return 0.0


@dataclass(frozen=True)
class RelayLaw:
    k: float

    def __post_init__(self):
        _require_positive(k=self.k)

    @property
    def amplitude(self) -> float:
        return self.k


@dataclass(frozen=True)
class SaturationLaw:
    lam: float
    phi: float  # espesor de la capa límite

    def __post_init__(self):
        _require_positive(**{"lambda": self.lam, "phi": self.phi})

    @property
    def amplitude(self) -> float:
        return self.lam


def relay_control(s: float, law: RelayLaw) -> float:
    return law.k * sign(s)


def sat_control(s: float, law: SaturationLaw) -> float:
    if abs(s) >= law.phi:
        return law.lam * sign(s)
    return law.lam * s / law.phi
