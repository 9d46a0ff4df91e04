"""
Descripción de un experimento en lazo cerrado (Scenario)

Los modelos rechazan claves desconocidas y toman los valores ausentes de la
configuración activa (config.json).
"""
import math
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationInfo, field_validator, model_validator

from ..config import get_settings
from ..controllers.laws import RelayLaw
from ..controllers.smc import (
    ControllerKind,
    LawKind,
    SlidingModeController,
    build_controller,
)
from ..errors import InvalidGainError
from ..plant.lti import ZpkModel
from ..plant.torpedo import IMMERSION_ZPK, INCLINATION_ZPK, TorpedoPlant

STATE_DIMENSION = 6
GAIN_FIELDS = ("k1", "k2", "k", "beta1", "beta2", "beta3", "alpha1", "alpha2", "alpha3", "lam", "phi")


class _StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid", allow_inf_nan=False, populate_by_name=True)


class ReferenceConfig(_StrictModel):
    """Escalón de profundidad (metros) aplicado en step_time (s)"""
    amplitude: float = Field(default_factory=lambda: get_settings().simulation.amplitude)
    step_time: float = Field(default_factory=lambda: get_settings().simulation.step_time, ge=0)


class DisturbanceConfig(_StrictModel):
    """Perturbación acotada ‖φ‖ <= M·‖x‖"""
    enabled: bool = False
    M: float = Field(default=0.0, ge=0)
    seed: int = Field(default=0, ge=0, lt=2 ** 64)


class ZpkConfig(_StrictModel):
    zeros: List[float] = Field(default_factory=list)
    poles: List[float]
    gain: float

    @model_validator(mode="after")
    def _strictly_proper(self) -> "ZpkConfig":
        if len(self.zeros) >= len(self.poles):
            raise ValueError("zpk model must be strictly proper (fewer zeros than poles)")
        return self

    def to_model(self) -> ZpkModel:
        return ZpkModel(zeros=tuple(self.zeros), poles=tuple(self.poles), gain=self.gain)


class CustomPlantConfig(_StrictModel):
    """Par zpk propio: inmersión (controlada) e inclinación (monitorizada)"""
    immersion: ZpkConfig
    inclination: ZpkConfig

    @property
    def state_dimension(self) -> int:
        return len(self.immersion.poles) + len(self.inclination.poles)


class ControllerConfig(_StrictModel):
    """Tipo de controlador, ley y ganancias; las ausentes salen del preset"""
    kind: str
    law: Optional[str] = None
    k1: Optional[float] = None
    k2: Optional[float] = None
    k: Optional[float] = None
    beta1: Optional[float] = None
    beta2: Optional[float] = None
    beta3: Optional[float] = None
    alpha1: Optional[float] = None
    alpha2: Optional[float] = None
    alpha3: Optional[float] = None
    lam: Optional[float] = Field(default=None, alias="lambda")
    phi: Optional[float] = None

    @field_validator("kind")
    @classmethod
    def _known_kind(cls, value: str) -> str:
        kinds = [k.value for k in ControllerKind]
        if value not in kinds:
            raise ValueError(f"unknown controller kind {value!r} (expected one of {kinds})")
        return value

    @field_validator("law")
    @classmethod
    def _known_law(cls, value: Optional[str]) -> Optional[str]:
        laws = [l.value for l in LawKind]
        if value is not None and value not in laws:
            raise ValueError(f"unknown control law {value!r} (expected one of {laws})")
        return value

    def given_gains(self) -> Dict[str, float]:
        gains = {}
        for name in GAIN_FIELDS:
            value = getattr(self, name)
            if value is not None:
                gains["lambda" if name == "lam" else name] = value
        return gains

    @model_validator(mode="after")
    def _resolve_gains(self) -> "ControllerConfig":
        try:
            controller = build_controller(self.kind, self.law, self.given_gains())
        except InvalidGainError as e:
            raise ValueError(str(e)) from None

        # Normalizar: ley explícita y todas las ganancias resueltas
        self.law = "relay" if isinstance(controller.law, RelayLaw) else "saturation"
        for name, value in vars(controller.surface).items():
            if name in GAIN_FIELDS:
                setattr(self, name, value)
        if self.law == "relay":
            self.k = controller.law.k
        else:
            self.lam = controller.law.lam
            self.phi = controller.law.phi
        return self


class Scenario(_StrictModel):
    """Experimento en lazo cerrado"""
    name: Optional[str] = None
    plant: Union[Literal["torpedo"], CustomPlantConfig] = "torpedo"
    controller: ControllerConfig
    reference: ReferenceConfig = Field(default_factory=ReferenceConfig)
    duration: float = Field(default_factory=lambda: get_settings().simulation.duration, gt=0)
    dt: float = Field(default_factory=lambda: get_settings().simulation.dt, gt=0)
    disturbance: DisturbanceConfig = Field(default_factory=DisturbanceConfig)
    eta: float = Field(default=0.0, ge=0)
    initial_state: Optional[List[float]] = None

    @field_validator("initial_state")
    @classmethod
    def _state_dimension(cls, value: Optional[List[float]], info: ValidationInfo) -> Optional[List[float]]:
        if value is None or "plant" not in info.data:
            return value
        plant = info.data["plant"]
        expected = STATE_DIMENSION if plant == "torpedo" else plant.state_dimension
        if len(value) != expected:
            raise ValueError(f"initial_state must have {expected} entries for this plant, got {len(value)}")
        return value

    @model_validator(mode="after")
    def _check_horizon(self) -> "Scenario":
        if self.duration < self.dt:
            raise ValueError(f"duration ({self.duration}) must be >= dt ({self.dt})")
        if self.name is None:
            self.name = self.controller.kind
        return self

    @property
    def step_count(self) -> int:
        """Número de pasos de integración: floor(duration/dt)"""
        return int(math.floor(self.duration / self.dt + 1e-9))

    def build_plant(self) -> TorpedoPlant:
        if self.plant == "torpedo":
            plant = TorpedoPlant.from_models(IMMERSION_ZPK, INCLINATION_ZPK)
        else:
            plant = TorpedoPlant.from_models(
                self.plant.immersion.to_model(), self.plant.inclination.to_model()
            )
        if self.initial_state is not None:
            plant.state = self.initial_state
        return plant

    def build_controller(self) -> SlidingModeController:
        return build_controller(
            self.controller.kind, self.controller.law, self.controller.given_gains(), eta=self.eta
        )

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump(mode="json", by_alias=True, exclude_none=True)
