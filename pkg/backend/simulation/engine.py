"""
Motor de simulación en lazo cerrado

Integrador Runge-Kutta de 4º orden de paso fijo, control con retención de
orden cero, perturbación aleatoria acotada y registro completo de la traza.
"""
import logging
import math
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterator, Optional, Tuple

import numpy as np
import pandas as pd

from ..controllers.laws import sign
from ..errors import NonFiniteStateError, SimulationAbortedError
from ..plant.torpedo import TorpedoPlant, plant_derivative, plant_outputs
from .scenario import DisturbanceConfig, Scenario

logger = logging.getLogger(__name__)

StateFunction = Callable[[float, np.ndarray], np.ndarray]

TRACE_COLUMNS = ("t", "z", "theta", "e", "s", "u")
DIAGNOSTIC_COLUMNS = ("e_dot", "e_ddot", "s_dot", "V")
FLAG_COLUMNS = ("reaching_ok", "in_boundary_layer")


def rk4_step(f: StateFunction, x: np.ndarray, t: float, dt: float) -> np.ndarray:
    """Un paso RK4 clásico; u y la perturbación se mantienen dentro de f"""
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt!r}")

    def checked(value: np.ndarray, stage: str) -> np.ndarray:
        if not np.all(np.isfinite(value)):
            raise NonFiniteStateError(t, stage)
        return value

    half = 0.5 * dt
    k1 = checked(f(t, x), "k1")
    k2 = checked(f(t + half, x + half * k1), "k2")
    k3 = checked(f(t + half, x + half * k2), "k3")
    k4 = checked(f(t + dt, x + dt * k3), "k4")
    return checked(x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4), "update")


def reference_eval(scenario: Scenario, t: float) -> Tuple[float, float]:
    """Escalón: (0, 0) antes de step_time, (amplitud, 0) después"""
    ref = scenario.reference
    r = ref.amplitude if t >= ref.step_time else 0.0
    return r, 0.0


class DisturbanceGenerator:
    """
    Perturbación φ con ‖φ‖₂ <= M·‖x‖₂

    Cada paso consume 6 normales (dirección) y una uniforme (fracción de la
    cota) de un Generator PCG64 sembrado, independientemente del estado.
    """

    def __init__(self, config: DisturbanceConfig, dimension: int = 6):
        self.config = config
        self.dimension = dimension
        self.rng = np.random.Generator(np.random.PCG64(config.seed))

    def sample(self, x: np.ndarray) -> np.ndarray:
        return disturbance_eval(self.config, x, self.rng)


def disturbance_eval(config: DisturbanceConfig, x: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if not config.enabled:
        return np.zeros_like(x)

    direction = rng.standard_normal(x.size)
    fraction = rng.random()
    bound = config.M * float(np.linalg.norm(x))
    d_norm = float(np.linalg.norm(direction))
    if bound == 0.0 or d_norm == 0.0:
        return np.zeros_like(x)
    return (fraction * bound / d_norm) * direction


@dataclass(frozen=True)
class TraceRecord:
    t: float
    z: float
    theta: float
    e: float
    s: float
    u: float
    reaching_ok: bool


@dataclass
class Trace:
    """Serie temporal muestreada de un experimento"""
    scenario: Scenario
    columns: Dict[str, np.ndarray]
    aborted: bool = False
    error: Optional[str] = None
    elapsed: float = 0.0
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __len__(self) -> int:
        return int(self.columns["t"].size)

    def __getitem__(self, name: str) -> np.ndarray:
        return self.columns[name]

    @property
    def step_count(self) -> int:
        return max(len(self) - 1, 0)

    def record(self, i: int) -> TraceRecord:
        c = self.columns
        return TraceRecord(
            t=float(c["t"][i]), z=float(c["z"][i]), theta=float(c["theta"][i]),
            e=float(c["e"][i]), s=float(c["s"][i]), u=float(c["u"][i]),
            reaching_ok=bool(c["reaching_ok"][i]),
        )

    def records(self) -> Iterator[TraceRecord]:
        for i in range(len(self)):
            yield self.record(i)

    def surface_entry_index(self) -> int:
        """Primer índice sobre la superficie (capa límite o cambio de signo de s)"""
        s = self.columns["s"]
        if s.size == 0:
            return 0
        if self.scenario.controller.law == "saturation":
            inside = np.flatnonzero(self.columns["in_boundary_layer"])
            return int(inside[0]) if inside.size else int(s.size)
        s0 = sign(float(s[0]))
        if s0 == 0.0:
            return 0
        crossed = np.flatnonzero(np.sign(s) != s0)
        return int(crossed[0]) if crossed.size else int(s.size)

    def reaching_fraction(self) -> float:
        """Fracción de pasos que cumplen s·ṡ <= -η|s| antes de alcanzar la superficie"""
        entry = self.surface_entry_index()
        if entry == 0:
            return 1.0
        return float(np.mean(self.columns["reaching_ok"][:entry]))

    def to_dataframe(self, diagnostics: bool = False) -> pd.DataFrame:
        names = TRACE_COLUMNS + (DIAGNOSTIC_COLUMNS + FLAG_COLUMNS if diagnostics else ())
        return pd.DataFrame({name: self.columns[name] for name in names})


def _allocate(n: int) -> Dict[str, np.ndarray]:
    columns = {name: np.zeros(n) for name in TRACE_COLUMNS + DIAGNOSTIC_COLUMNS}
    for name in FLAG_COLUMNS:
        columns[name] = np.zeros(n, dtype=bool)
    return columns


def run_closed_loop(scenario: Scenario, strict: bool = False) -> Trace:
    """
    Lazo cerrado con conmutación sobre la unidad de control

    En cada paso: leer salidas, construir las señales de error, actualizar la
    integral PID, evaluar la superficie, calcular u, mantener u durante un
    paso RK4 y registrar.
    """
    plant = scenario.build_plant()
    controller = scenario.build_controller()
    disturbance = DisturbanceGenerator(scenario.disturbance, plant.n)
    dt = scenario.dt
    n_steps = scenario.step_count

    columns = _allocate(n_steps + 1)
    x = plant.state
    u_prev = 0.0
    count = 0
    error: Optional[str] = None
    started = time.perf_counter()

    logger.info("Running scenario %s: %d steps of %.3g s", scenario.name, n_steps, dt)

    for k in range(n_steps + 1):
        t = k * dt
        plant.state = x
        z, theta = plant_outputs(plant)
        r, r_dot = reference_eval(scenario, t)

        try:
            step = controller.step(plant, r, r_dot, u_prev, dt)
        except ValueError as exc:
            error = f"controller failed at t={t:.6g} s: {exc}"
            break
        diag = step.diagnostics
        u = step.u

        columns["t"][k] = t
        columns["z"][k] = z
        columns["theta"][k] = theta
        columns["e"][k] = diag.signals.e
        columns["s"][k] = step.s
        columns["u"][k] = u
        columns["e_dot"][k] = diag.signals.e_dot
        columns["e_ddot"][k] = diag.signals.e_ddot
        columns["s_dot"][k] = diag.s_dot
        columns["V"][k] = diag.lyapunov
        columns["reaching_ok"][k] = diag.reaching_ok
        columns["in_boundary_layer"][k] = diag.in_boundary_layer
        count = k + 1

        if k == n_steps:
            break
        if not (math.isfinite(u) and math.isfinite(step.s)):
            error = f"non-finite control at t={t:.6g} s"
            break

        phi = disturbance.sample(x)

        def f(t_stage: float, x_stage: np.ndarray) -> np.ndarray:
            return plant_derivative(plant, u, phi, x_stage)

        try:
            x = rk4_step(f, x, t, dt)
        except NonFiniteStateError as exc:
            error = str(exc)
            break
        u_prev = u

    if count < n_steps + 1:
        columns = {name: values[:count].copy() for name, values in columns.items()}

    trace = Trace(
        scenario=scenario,
        columns=columns,
        aborted=error is not None,
        error=error,
        elapsed=time.perf_counter() - started,
        metadata={"scenario": scenario.to_dict(), "step_count": count - 1},
    )

    if trace.aborted:
        logger.error("❌ Scenario %s aborted: %s", scenario.name, error)
        if strict:
            raise SimulationAbortedError(f"scenario {scenario.name} aborted: {error}", trace)
    else:
        logger.info("✅ Scenario %s finished in %.2f s", scenario.name, trace.elapsed)
    return trace


def open_loop_response(plant: TorpedoPlant, u: float, duration: float, dt: float) -> pd.DataFrame:
    """Respuesta en lazo abierto a una entrada constante u"""
    n_steps = int(math.floor(duration / dt + 1e-9))
    x = plant.state
    rows = []
    for k in range(n_steps + 1):
        plant.state = x
        z, theta = plant_outputs(plant)
        rows.append((k * dt, z, theta))
        if k < n_steps:
            x = rk4_step(lambda t, xs: plant_derivative(plant, u, None, xs), x, k * dt, dt)
    return pd.DataFrame(rows, columns=["t", "z", "theta"])
