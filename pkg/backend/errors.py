"""
Excepciones de Torpedo-SMC
Todas heredan de TorpedoSMCError y de la excepción estándar más cercana,
para que el código cliente pueda capturar cualquiera de las dos.
"""
from typing import Any, Optional, Sequence


class TorpedoSMCError(Exception):
    """Error base del sistema"""


class InvalidModelError(TorpedoSMCError, ValueError):
    """Función de transferencia o modelo zpk que viola sus invariantes"""


class EvaluationAtPoleError(TorpedoSMCError, ZeroDivisionError):
    """Evaluación de la respuesta en frecuencia sobre un polo del sistema"""

    def __init__(self, omega: float, message: Optional[str] = None):
        self.omega = omega
        super().__init__(message or f"evaluation at pole: omega={omega!r} rad/s")


class ScenarioValidationError(TorpedoSMCError, ValueError):
    """Escenario mal formado o inválido; nombra las claves culpables"""

    def __init__(self, message: str, keys: Sequence[str] = ()):
        self.keys = list(keys)
        super().__init__(message)


class NonFiniteStateError(TorpedoSMCError, ArithmeticError):
    """Valores no finitos durante la integración"""

    def __init__(self, t: float, stage: str):
        self.t = t
        self.stage = stage
        super().__init__(f"non-finite state at t={t:.6g} s (stage {stage})")


class SimulationAbortedError(TorpedoSMCError, RuntimeError):
    """Simulación abortada; conserva la traza parcial"""

    def __init__(self, message: str, trace: Any = None):
        self.trace = trace
        super().__init__(message)


class InvalidGainError(TorpedoSMCError, ValueError):
    """Ganancia de superficie o de ley de control fuera de su dominio"""
