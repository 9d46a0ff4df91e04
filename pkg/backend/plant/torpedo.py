"""
Planta del torpedo: inclinación H1 y inmersión H2 realizadas como dos
subsistemas independientes excitados por la misma deflexión u
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence, Tuple

import numpy as np

from ..errors import InvalidModelError
from .lti import StateSpace, ZpkModel, from_zpk, tf_to_ss

logger = logging.getLogger(__name__)

# H1(p) = 7660 / (p (p + 40))
INCLINATION_ZPK = ZpkModel(zeros=(), poles=(0.0, -40.0), gain=7660.0)
# H2(p) = 6514 (p + 6.85) / (p (p + 1.91) (p + 12.5) (p + 40))
IMMERSION_ZPK = ZpkModel(zeros=(-6.85,), poles=(0.0, -1.91, -12.5, -40.0), gain=6514.0)


@dataclass(eq=False)
class TorpedoPlant:
    """Inmersión z (m) y ángulo de inclinación theta (rad)"""
    immersion: StateSpace
    inclination: StateSpace
    x_z: np.ndarray = field(default=None)
    x_theta: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.x_z is None:
            self.x_z = np.zeros(self.immersion.n)
        if self.x_theta is None:
            self.x_theta = np.zeros(self.inclination.n)
        self.x_z = np.asarray(self.x_z, dtype=float).reshape(self.immersion.n)
        self.x_theta = np.asarray(self.x_theta, dtype=float).reshape(self.inclination.n)

    @classmethod
    def from_models(cls, immersion: ZpkModel, inclination: ZpkModel) -> "TorpedoPlant":
        return cls(
            immersion=tf_to_ss(from_zpk(immersion)),
            inclination=tf_to_ss(from_zpk(inclination)),
        )

    @classmethod
    def torpedo(cls) -> "TorpedoPlant":
        """Planta del torpedo (H1, H2)"""
        return cls.from_models(IMMERSION_ZPK, INCLINATION_ZPK)

    @property
    def n(self) -> int:
        return self.immersion.n + self.inclination.n

    @property
    def state(self) -> np.ndarray:
        return np.concatenate([self.x_z, self.x_theta])

    @state.setter
    def state(self, x: Sequence[float]) -> None:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.n,):
            raise InvalidModelError(f"state must have dimension {self.n}, got {x.shape}")
        nz = self.immersion.n
        self.x_z = x[:nz].copy()
        self.x_theta = x[nz:].copy()

    def with_state(self, x: Sequence[float]) -> "TorpedoPlant":
        clone = TorpedoPlant(self.immersion, self.inclination)
        clone.state = x
        return clone

    def block_matrices(self) -> Tuple[np.ndarray, np.ndarray]:
        return self._block_A, self._block_B

    @cached_property
    def _block_A(self) -> np.ndarray:
        nz, nt = self.immersion.n, self.inclination.n
        A = np.zeros((nz + nt, nz + nt))
        A[:nz, :nz] = self.immersion.A
        A[nz:, nz:] = self.inclination.A
        A.setflags(write=False)
        return A

    @cached_property
    def _block_B(self) -> np.ndarray:
        B = np.concatenate([self.immersion.B, self.inclination.B])
        B.setflags(write=False)
        return B

    @cached_property
    def immersion_derivative_rows(self) -> Tuple[np.ndarray, np.ndarray]:
        """Filas C·A^k (k = 0..3) y escalares C·A^(k-1)·B (k = 1..3) de la inmersión"""
        A, B, C = self.immersion.A, self.immersion.B, self.immersion.C
        rows = [C.copy()]
        for _ in range(3):
            rows.append(rows[-1] @ A)
        gains = [0.0] + self.immersion.markov_parameters(3)
        return np.vstack(rows), np.asarray(gains)


def plant_derivative(plant: TorpedoPlant, u: float, phi: Optional[np.ndarray] = None,
                     x: Optional[np.ndarray] = None) -> np.ndarray:
    """x' = A x + B u + phi sobre el estado apilado de dimensión 6"""
    A, B = plant.block_matrices()
    if x is None:
        x = plant.state
    dx = A @ x + B * u
    if phi is not None:
        if np.shape(phi) != dx.shape:
            raise InvalidModelError(f"disturbance must have dimension {dx.size}, got {np.shape(phi)}")
        dx = dx + phi
    return dx


def plant_outputs(plant: TorpedoPlant) -> Tuple[float, float]:
    """(z en metros, theta en radianes)"""
    z = float(plant.immersion.C @ plant.x_z)
    theta = float(plant.inclination.C @ plant.x_theta)
    return z, theta
