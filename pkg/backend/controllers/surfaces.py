"""
Superficies deslizantes

    lineal (1er orden):  s = k1·e + k2·ė
    segundo orden:       σ = β1·e + β2·ė + β3·ë
    PID:                 s = α1·e + α2·ė + α3·∫e dt
"""
from dataclasses import dataclass, replace
from typing import Union

import math

from ..errors import InvalidGainError
from .laws import _require_positive


@dataclass(frozen=True)
class ErrorSignals:
    """Error de seguimiento y sus derivadas (e = r - z)"""
    e: float
    e_dot: float = 0.0
    e_ddot: float = 0.0
    e_dddot: float = 0.0
    e_int: float = 0.0

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.e, self.e_dot, self.e_ddot, self.e_dddot, self.e_int)):
            raise ValueError(f"error signals must be finite: {self}")


@dataclass(frozen=True)
class LinearSurface:
    k1: float
    k2: float

    def __post_init__(self):
        _require_positive(k1=self.k1, k2=self.k2)

    # número de derivadas del error que necesita s y su derivada
    derivative_depth = 2


@dataclass(frozen=True)
class SecondOrderSurface:
    beta1: float
    beta2: float
    beta3: float

    def __post_init__(self):
        _require_positive(beta1=self.beta1, beta2=self.beta2, beta3=self.beta3)

    derivative_depth = 3


@dataclass(frozen=True)
class PidSurface:
    alpha1: float
    alpha2: float
    alpha3: float
    integral: float = 0.0  # ∫e dt, error·segundos

    def __post_init__(self):
        _require_positive(alpha1=self.alpha1, alpha2=self.alpha2)
        # α3 = 0 degenera en la superficie lineal
        if not (math.isfinite(self.alpha3) and self.alpha3 >= 0):
            raise InvalidGainError(f"alpha3 must be a finite non-negative number, got {self.alpha3!r}")
        if not math.isfinite(self.integral):
            raise InvalidGainError(f"PID integral must be finite, got {self.integral!r}")

    derivative_depth = 2


SlidingSurface = Union[LinearSurface, SecondOrderSurface, PidSurface]


def eval_surface(surface: SlidingSurface, sig: ErrorSignals) -> float:
    """Evaluar s (o σ) sobre las señales de error"""
    if isinstance(surface, LinearSurface):
        return surface.k1 * sig.e + surface.k2 * sig.e_dot
    if isinstance(surface, SecondOrderSurface):
        return surface.beta1 * sig.e + surface.beta2 * sig.e_dot + surface.beta3 * sig.e_ddot
    if isinstance(surface, PidSurface):
        return surface.alpha1 * sig.e + surface.alpha2 * sig.e_dot + surface.alpha3 * surface.integral
    raise TypeError(f"unsupported surface: {type(surface).__name__}")


def surface_derivative(surface: SlidingSurface, sig: ErrorSignals) -> float:
    """Derivada temporal analítica de la superficie"""
    if isinstance(surface, LinearSurface):
        return surface.k1 * sig.e_dot + surface.k2 * sig.e_ddot
    if isinstance(surface, SecondOrderSurface):
        return surface.beta1 * sig.e_dot + surface.beta2 * sig.e_ddot + surface.beta3 * sig.e_dddot
    if isinstance(surface, PidSurface):
        return surface.alpha1 * sig.e_dot + surface.alpha2 * sig.e_ddot + surface.alpha3 * sig.e
    raise TypeError(f"unsupported surface: {type(surface).__name__}")


def pid_integral_step(surface: PidSurface, e_prev: float, e_now: float, dt: float) -> PidSurface:
    """Integral trapezoidal: integral += dt·(e_prev + e_now)/2"""
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt!r}")
    return replace(surface, integral=surface.integral + dt * (e_prev + e_now) / 2.0)
