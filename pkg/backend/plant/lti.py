"""
Sistemas LTI SISO: función de transferencia, forma zpk y realización en
espacio de estados (forma compañera controlable)
"""
import logging
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple, Union

import numpy as np

from ..errors import EvaluationAtPoleError, InvalidModelError

logger = logging.getLogger(__name__)

# Tolerancia para decidir que j*omega coincide con un autovalor de A
POLE_TOLERANCE = 1e-12


def _as_coefficients(values: Sequence[float]) -> Tuple[float, ...]:
    # + 0.0 normaliza los -0.0 que aparecen al negar polos en el origen
    return tuple(float(v) + 0.0 for v in values)


@dataclass(frozen=True)
class TransferFunction:
    """H(p) = num(p) / den(p), coeficientes en potencias descendentes de p"""
    num: Tuple[float, ...]
    den: Tuple[float, ...]

    def __post_init__(self):
        num = np.trim_zeros(np.asarray(self.num, dtype=float), "f")
        den = np.asarray(self.den, dtype=float)

        if den.size == 0 or den[0] == 0.0:
            raise InvalidModelError(f"den must be non-empty with den[0] != 0, got {list(self.den)}")
        if not (np.all(np.isfinite(num)) and np.all(np.isfinite(den))):
            raise InvalidModelError("transfer function coefficients must be finite")
        if num.size >= den.size:
            raise InvalidModelError(
                f"transfer function is not strictly proper: "
                f"degree(num)={num.size - 1} >= degree(den)={den.size - 1}"
            )

        object.__setattr__(self, "num", _as_coefficients(num))
        object.__setattr__(self, "den", _as_coefficients(den))

    @property
    def order(self) -> int:
        return len(self.den) - 1

    @property
    def relative_degree(self) -> int:
        return len(self.den) - len(self.num)

    def evaluate(self, s: complex) -> complex:
        """Evaluar H(s) en un punto complejo (Horner vía np.polyval)"""
        d_val = np.polyval(self.den, s)
        if d_val == 0:
            raise EvaluationAtPoleError(abs(complex(s)), f"evaluation at pole: s={s!r}")
        n_val = np.polyval(self.num, s) if self.num else 0.0
        return complex(n_val / d_val)

    def poles(self) -> np.ndarray:
        return np.roots(self.den)

    def zeros(self) -> np.ndarray:
        return np.roots(self.num) if len(self.num) > 1 else np.array([])

    def to_dict(self):
        return {"num": list(self.num), "den": list(self.den)}


@dataclass(frozen=True)
class ZpkModel:
    """Forma factorizada ceros-polos-ganancia"""
    zeros: Tuple[float, ...] = ()
    poles: Tuple[float, ...] = ()
    gain: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "zeros", _as_coefficients(self.zeros))
        object.__setattr__(self, "poles", _as_coefficients(self.poles))
        object.__setattr__(self, "gain", float(self.gain))

    def to_transfer_function(self) -> TransferFunction:
        return from_zpk(self)

    def to_dict(self):
        return {"zeros": list(self.zeros), "poles": list(self.poles), "gain": self.gain}


@dataclass(frozen=True, eq=False)
class StateSpace:
    """Realización (A, B, C, D) de un sistema SISO continuo"""
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: float = 0.0
    n: int = field(init=False)

    def __post_init__(self):
        A = np.array(self.A, dtype=float, ndmin=2)
        B = np.array(self.B, dtype=float).reshape(-1)
        C = np.array(self.C, dtype=float).reshape(-1)
        n = A.shape[0]

        if A.shape != (n, n) or B.shape != (n,) or C.shape != (n,):
            raise InvalidModelError(
                f"inconsistent dimensions: A{A.shape}, B{B.shape}, C{C.shape}"
            )
        for arr in (A, B, C):
            arr.setflags(write=False)

        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "C", C)
        object.__setattr__(self, "D", float(self.D))
        object.__setattr__(self, "n", n)

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvals(self.A)

    def markov_parameters(self, k: int) -> List[float]:
        """C·A^i·B para i = 0..k-1"""
        params = []
        v = self.B.copy()
        for _ in range(k):
            params.append(float(self.C @ v))
            v = self.A @ v
        return params


def from_zpk(m: ZpkModel) -> TransferFunction:
    """Expandir (ceros, polos, ganancia) a polinomios por convolución iterada"""
    if len(m.zeros) >= len(m.poles):
        raise InvalidModelError(
            f"zpk model is not strictly proper: {len(m.zeros)} zeros, {len(m.poles)} poles"
        )

    num = np.array([1.0])
    for z in m.zeros:
        num = np.convolve(num, [1.0, -z])
    den = np.array([1.0])
    for p in m.poles:
        den = np.convolve(den, [1.0, -p])

    return TransferFunction(num=tuple(m.gain * num), den=tuple(den))


def tf_to_ss(tf: TransferFunction) -> StateSpace:
    """Realización en forma compañera controlable"""
    n = tf.order
    if n == 0:
        raise InvalidModelError("zero-dimensional transfer function has no state-space realization")

    lead = tf.den[0]
    a = np.asarray(tf.den, dtype=float) / lead
    b = np.asarray(tf.num, dtype=float) / lead

    A = np.zeros((n, n))
    A[np.arange(n - 1), np.arange(1, n)] = 1.0
    A[n - 1, :] = -a[1:][::-1] + 0.0

    B = np.zeros(n)
    B[n - 1] = 1.0

    # C en potencias ascendentes, rellenado con ceros
    C = np.zeros(n)
    C[: b.size] = b[::-1]

    return StateSpace(A=A, B=B, C=C, D=0.0)


def freq_response(sys: Union[TransferFunction, StateSpace], omega: float) -> complex:
    """H(j*omega) por evaluación polinómica o C(jwI - A)^-1 B + D"""
    s = 1j * float(omega)

    if isinstance(sys, TransferFunction):
        try:
            return sys.evaluate(s)
        except EvaluationAtPoleError:
            raise EvaluationAtPoleError(float(omega)) from None

    if isinstance(sys, StateSpace):
        eig = sys.eigenvalues()
        if eig.size and np.min(np.abs(eig - s)) <= POLE_TOLERANCE * max(1.0, abs(omega)):
            raise EvaluationAtPoleError(float(omega))
        resolvent = s * np.eye(sys.n) - sys.A
        try:
            x = np.linalg.solve(resolvent, sys.B.astype(complex))
        except np.linalg.LinAlgError:
            raise EvaluationAtPoleError(float(omega)) from None
        return complex(sys.C @ x + sys.D)

    raise TypeError(f"unsupported system type: {type(sys).__name__}")
