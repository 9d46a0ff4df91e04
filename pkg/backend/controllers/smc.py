"""
Controladores por modo deslizante del torpedo

Composición (estructura de conmutación sobre la unidad de control):
    SMC1      superficie lineal        + relé
    SMC2      superficie de 2º orden   + relé
    PID-SMC1  superficie PID           + saturación con capa límite

La salida regulada es la inmersión z; theta solo se monitoriza.
"""
import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Dict, Optional, Tuple, Union

from ..errors import InvalidGainError
from ..plant.torpedo import TorpedoPlant
from .laws import RelayLaw, SaturationLaw, relay_control, sat_control
from .surfaces import (
    ErrorSignals,
    LinearSurface,
    PidSurface,
    SecondOrderSurface,
    SlidingSurface,
    eval_surface,
    pid_integral_step,
    surface_derivative,
)

logger = logging.getLogger(__name__)

ControlLaw = Union[RelayLaw, SaturationLaw]


class ControllerKind(Enum):
    """Tipos de controlador"""
    SMC1 = "smc1"
    SMC2 = "smc2"
    PID_SMC1 = "pid-smc1"


class LawKind(Enum):
    RELAY = "relay"
    SATURATION = "saturation"


# Ganancias de los experimentos comparativos
PRESET_GAINS: Dict[ControllerKind, Dict[str, float]] = {
    ControllerKind.SMC1: {"k1": 1.0, "k2": 2.5, "k": 3.0},
    # amplitud elegida para reproducir u ≈ ±1.8
    ControllerKind.SMC2: {"beta1": 2.0, "beta2": 5.0, "beta3": 2.0, "k": 1.8},
    ControllerKind.PID_SMC1: {"alpha1": 1.0, "alpha2": 4.0, "alpha3": 0.04, "lambda": 1.0, "phi": 2.0},
}

DEFAULT_LAW: Dict[ControllerKind, LawKind] = {
    ControllerKind.SMC1: LawKind.RELAY,
    ControllerKind.SMC2: LawKind.RELAY,
    ControllerKind.PID_SMC1: LawKind.SATURATION,
}

SURFACE_GAINS: Dict[ControllerKind, Tuple[str, ...]] = {
    ControllerKind.SMC1: ("k1", "k2"),
    ControllerKind.SMC2: ("beta1", "beta2", "beta3"),
    ControllerKind.PID_SMC1: ("alpha1", "alpha2", "alpha3"),
}

LAW_GAINS: Dict[LawKind, Tuple[str, ...]] = {
    LawKind.RELAY: ("k",),
    LawKind.SATURATION: ("lambda", "phi"),
}

# Valores de ley por defecto cuando se cambia la ley de un preset
LAW_DEFAULTS: Dict[LawKind, Dict[str, float]] = {
    LawKind.RELAY: {"k": 3.0},
    LawKind.SATURATION: {"lambda": 1.0, "phi": 2.0},
}


def error_signals(plant: TorpedoPlant, r: float, r_dot: float, u_prev: float,
                  depth: int = 2, r_ddot: float = 0.0, e_int: float = 0.0) -> ErrorSignals:
    """
    Derivadas analíticas del error sobre la realización de la inmersión

    z^(k) = C·A^k·x + C·A^(k-1)·B·u_prev, con u constante dentro del
    intervalo de retención (el término en u̇ se descarta).
    """
    rows, gains = plant.immersion_derivative_rows
    x = plant.x_z

    z = float(rows[0] @ x)
    derivs = [0.0, 0.0, 0.0]
    for k in range(1, min(depth, 3) + 1):
        derivs[k - 1] = float(rows[k] @ x) + float(gains[k]) * u_prev

    return ErrorSignals(
        e=r - z,
        e_dot=r_dot - derivs[0],
        e_ddot=(r_ddot - derivs[1]) if depth >= 2 else 0.0,
        e_dddot=-derivs[2] if depth >= 3 else 0.0,
        e_int=e_int,
    )


def reaching_check(s: float, s_dot: float, eta: float = 0.0) -> bool:
    """Condición de alcance: s·ṡ <= -η·|s|"""
    if eta < 0:
        raise ValueError(f"eta must be non-negative, got {eta!r}")
    return s * s_dot <= -eta * abs(s)


def lyapunov(s: float) -> float:
    """V = ½·s²"""
    return 0.5 * s * s


def apply_law(s: float, law: ControlLaw) -> float:
    if isinstance(law, RelayLaw):
        return relay_control(s, law)
    if isinstance(law, SaturationLaw):
        return sat_control(s, law)
    raise TypeError(f"unsupported control law: {type(law).__name__}")


@dataclass(frozen=True)
class ControlDiagnostics:
    signals: ErrorSignals
    s_dot: float
    lyapunov: float
    reaching_ok: bool
    in_boundary_layer: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            'e': self.signals.e,
            'e_dot': self.signals.e_dot,
            'e_ddot': self.signals.e_ddot,
            'e_int': self.signals.e_int,
            's_dot': self.s_dot,
            'V': self.lyapunov,
            'reaching_ok': self.reaching_ok,
            'in_boundary_layer': self.in_boundary_layer,
        }


@dataclass(frozen=True)
class ControlStep:
    u: float
    s: float
    diagnostics: ControlDiagnostics


@dataclass
class SlidingModeController:
    """Controlador SMC con estado explícito (integral PID y error previo)"""
    kind: ControllerKind
    surface: SlidingSurface
    law: ControlLaw
    eta: float = 0.0
    _e_prev: Optional[float] = field(default=None, init=False, repr=False)

    def __post_init__(self):
        if self.eta < 0:
            raise InvalidGainError(f"eta must be non-negative, got {self.eta!r}")
        expected = {
            ControllerKind.SMC1: LinearSurface,
            ControllerKind.SMC2: SecondOrderSurface,
            ControllerKind.PID_SMC1: PidSurface,
        }[self.kind]
        if not isinstance(self.surface, expected):
            raise InvalidGainError(
                f"{self.kind.value} requires {expected.__name__}, got {type(self.surface).__name__}"
            )

    @property
    def amplitude(self) -> float:
        return self.law.amplitude

    def reset(self) -> None:
        self._e_prev = None
        if isinstance(self.surface, PidSurface):
            self.surface = replace(self.surface, integral=0.0)

    def evaluate(self, sig: ErrorSignals) -> Tuple[float, float]:
        """(s, u) para unas señales de error dadas"""
        s = eval_surface(self.surface, sig)
        return s, apply_law(s, self.law)

    def step(self, plant: TorpedoPlant, r: float, r_dot: float, u_prev: float, dt: float) -> ControlStep:
        """Control para el siguiente intervalo de retención"""
        sig = error_signals(plant, r, r_dot, u_prev, depth=self.surface.derivative_depth)

        if isinstance(self.surface, PidSurface):
            if self._e_prev is not None:
                self.surface = pid_integral_step(self.surface, self._e_prev, sig.e, dt)
            sig = replace(sig, e_int=self.surface.integral)
        self._e_prev = sig.e

        s, u = self.evaluate(sig)
        s_dot = surface_derivative(self.surface, sig)
        in_layer = isinstance(self.law, SaturationLaw) and abs(s) < self.law.phi

        return ControlStep(
            u=u,
            s=s,
            diagnostics=ControlDiagnostics(
                signals=sig,
                s_dot=s_dot,
                lyapunov=lyapunov(s),
                reaching_ok=reaching_check(s, s_dot, self.eta),
                in_boundary_layer=in_layer,
            ),
        )


def controller_step(controller: SlidingModeController, plant: TorpedoPlant, r: float,
                    r_dot: float, u_prev: float, dt: float) -> Tuple[float, float, ControlDiagnostics]:
    result = controller.step(plant, r, r_dot, u_prev, dt)
    return result.u, result.s, result.diagnostics


def build_controller(kind: Union[ControllerKind, str], law: Union[LawKind, str, None] = None,
                     gains: Optional[Dict[str, float]] = None, eta: float = 0.0) -> SlidingModeController:
    """
    Construir un controlador a partir de su tipo, ley y ganancias

    Las ganancias ausentes se toman del preset del tipo (o de LAW_DEFAULTS
    si la ley no es la del preset).
    """
    kind = ControllerKind(kind)
    law_kind = LawKind(law) if law is not None else DEFAULT_LAW[kind]

    allowed = SURFACE_GAINS[kind] + LAW_GAINS[law_kind]
    gains = dict(gains or {})
    foreign = sorted(set(gains) - set(allowed))
    if foreign:
        raise InvalidGainError(
            f"gains {foreign} do not belong to {kind.value} with {law_kind.value} law"
        )

    base = dict(PRESET_GAINS[kind])
    if law_kind is not DEFAULT_LAW[kind]:
        base.update(LAW_DEFAULTS[law_kind])
    resolved = {name: float(gains.get(name, base[name])) for name in allowed}
    logger.debug("Resolved %s/%s gains: %s", kind.value, law_kind.value, resolved)

    if kind is ControllerKind.SMC1:
        surface: SlidingSurface = LinearSurface(resolved["k1"], resolved["k2"])
    elif kind is ControllerKind.SMC2:
        surface = SecondOrderSurface(resolved["beta1"], resolved["beta2"], resolved["beta3"])
    else:
        surface = PidSurface(resolved["alpha1"], resolved["alpha2"], resolved["alpha3"])

    if law_kind is LawKind.RELAY:
        control_law: ControlLaw = RelayLaw(resolved["k"])
    else:
        control_law = SaturationLaw(resolved["lambda"], resolved["phi"])

    return SlidingModeController(kind=kind, surface=surface, law=control_law, eta=eta)
