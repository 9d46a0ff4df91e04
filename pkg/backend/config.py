"""
⚙️ Configuración del sistema Torpedo-SMC - pydantic-settings v2

Los valores por defecto viven en config.json (raíz del repositorio). Las
variables de entorno NO son una fuente de configuración: una misma invocación
de la CLI debe producir siempre los mismos ficheros.
"""
from pathlib import Path
from typing import Optional, Tuple, Type, Union

from pydantic import BaseModel, Field
from pydantic_settings import (
    BaseSettings,
    JsonConfigSettingsSource,
    PydanticBaseSettingsSource,
    SettingsConfigDict,
)

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parent.parent / "config.json"


class SystemInfo(BaseModel):
    name: str = "Torpedo-SMC"
    version: str = "1.0.0"
    description: str = ""


class SimulationDefaults(BaseModel):
    """Valores por defecto de los escenarios"""
    dt: float = Field(default=0.001, gt=0)
    duration: float = Field(default=60.0, gt=0)
    amplitude: float = 10.0  # metros
    step_time: float = Field(default=0.0, ge=0)


class MetricsDefaults(BaseModel):
    """Parámetros de las métricas de chattering y convergencia"""
    switch_threshold: float = Field(default=1e-9, ge=0)
    tail_fraction: float = Field(default=0.2, gt=0, le=1)
    settling_band: float = Field(default=0.02, gt=0, lt=1)


class OutputOptions(BaseModel):
    significant_digits: int = Field(default=9, ge=1, le=17)


class Settings(BaseSettings):
    """Configuración principal del sistema"""

    system: SystemInfo = SystemInfo()
    simulation: SimulationDefaults = SimulationDefaults()
    metrics: MetricsDefaults = MetricsDefaults()
    output: OutputOptions = OutputOptions()
    compare_workers: int = Field(default=3, ge=1)
    log_level: str = "INFO"

    model_config = SettingsConfigDict(
        json_file=DEFAULT_CONFIG_PATH,
        json_file_encoding="utf-8",
        extra="ignore",
    )

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: Type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        # Sin entorno ni .env: solo argumentos explícitos y config.json
        return (init_settings, JsonConfigSettingsSource(settings_cls))

    @classmethod
    def from_json_file(cls, path: Union[str, Path]) -> "Settings":
        """Cargar configuración desde un JSON alternativo (--config)"""
        path = Path(path)
        if not path.is_file():
            raise FileNotFoundError(f"config file not found: {path}")
        values = JsonConfigSettingsSource(cls, json_file=path)()
        return cls(**values)


# Instancia global de configuración
_settings_instance: Optional[Settings] = None


def get_settings() -> Settings:
    """Obtener instancia de configuración (singleton)"""
    global _settings_instance
    if _settings_instance is None:
        _settings_instance = Settings()
    return _settings_instance


def set_settings(settings: Optional[Settings]) -> None:
    """Reemplazar la instancia global; None fuerza a releer config.json"""
    global _settings_instance
    _settings_instance = settings
