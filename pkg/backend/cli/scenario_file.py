"""
Ficheros de escenario (JSON UTF-8) y presets de los experimentos comparativos

Precedencia: flag de la CLI > fichero > valor por defecto (config.json).
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Union

from pydantic import ValidationError

from ..controllers.smc import ControllerKind
from ..errors import ScenarioValidationError
from ..simulation.scenario import Scenario

logger = logging.getLogger(__name__)

PRESET_NAMES = tuple(kind.value for kind in ControllerKind)


def _validation_error(exc: ValidationError) -> ScenarioValidationError:
    keys = []
    messages = []
    for err in exc.errors():
        # las ramas de un Union añaden su etiqueta al final de loc
        loc = [str(part) for part in err["loc"] if not str(part).startswith(("literal[", "CustomPlantConfig"))]
        key = ".".join(loc) or "<root>"
        keys.append(key)
        messages.append(f"{key}: {err['msg']}")
    return ScenarioValidationError("invalid scenario: " + "; ".join(messages), keys=keys)


def _merge(base: Dict[str, Any], overrides: Mapping[str, Any]) -> Dict[str, Any]:
    merged = dict(base)
    for key, value in overrides.items():
        if isinstance(value, Mapping) and isinstance(merged.get(key), Mapping):
            merged[key] = _merge(dict(merged[key]), value)
        else:
            merged[key] = value
    return merged


def scenario_from_dict(data: Mapping[str, Any], overrides: Optional[Mapping[str, Any]] = None) -> Scenario:
    if not isinstance(data, Mapping):
        raise ScenarioValidationError("scenario document must be a JSON object", keys=["<root>"])
    merged = _merge(dict(data), overrides or {})
    try:
        return Scenario.model_validate(merged)
    except ValidationError as exc:
        raise _validation_error(exc) from None


def _decode(raw: bytes, where: str) -> str:
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ScenarioValidationError(
            f"malformed scenario document{where}: not valid UTF-8 (byte {exc.start})"
        ) from None


def parse_scenario(source: Union[str, Path, bytes], overrides: Optional[Mapping[str, Any]] = None) -> Scenario:
    """
    Validar un escenario a partir de una ruta o de su texto JSON

    Args:
        source: Path al fichero, o el texto JSON del documento
        overrides: valores que sustituyen a los del documento (flags de la CLI)
    """
    if isinstance(source, Path):
        text = _decode(source.read_bytes(), f" {source}")
    elif isinstance(source, bytes):
        text = _decode(source, "")
    else:
        text = source

    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioValidationError(
            f"malformed scenario document: {exc.msg} (line {exc.lineno}, column {exc.colno})"
        ) from None
    return scenario_from_dict(data, overrides)


def preset_scenario(name: str, overrides: Optional[Mapping[str, Any]] = None) -> Scenario:
    """Escenario de uno de los presets smc1, smc2, pid-smc1"""
    if name not in PRESET_NAMES:
        raise ScenarioValidationError(
            f"unknown preset {name!r} (expected one of {list(PRESET_NAMES)})", keys=["preset"]
        )
    return scenario_from_dict({"name": name, "controller": {"kind": name}}, overrides)


def serialize_scenario(scenario: Scenario) -> str:
    """JSON normalizado: claves ordenadas y valores por defecto resueltos"""
    return json.dumps(scenario.to_dict(), sort_keys=True, indent=2) + "\n"


def cli_overrides(dt: Optional[float] = None, duration: Optional[float] = None,
                  amplitude: Optional[float] = None, seed: Optional[int] = None,
                  disturbance: Optional[float] = None) -> Dict[str, Any]:
    """Traducir los flags de la CLI a un diccionario de sobreescritura"""
    overrides: Dict[str, Any] = {}
    if dt is not None:
        overrides["dt"] = dt
    if duration is not None:
        overrides["duration"] = duration
    if amplitude is not None:
        overrides["reference"] = {"amplitude": amplitude}
    if disturbance is not None:
        overrides["disturbance"] = {"enabled": True, "M": disturbance}
    if seed is not None:
        overrides.setdefault("disturbance", {})["seed"] = seed
    return overrides


def load_scenario(path: Optional[Union[str, Path]] = None, preset: Optional[str] = None,
                  overrides: Optional[Mapping[str, Any]] = None) -> Scenario:
    """
    Escenario para `run`: fichero, preset o ambos

    Con ambos, el preset reemplaza el bloque controller del fichero.
    """
    if path is None and preset is None:
        raise ScenarioValidationError("either a scenario file or a preset is required", keys=["scenario"])
    if path is None:
        return preset_scenario(preset, overrides)

    path = Path(path)
    data: Any
    try:
        data = json.loads(_decode(path.read_bytes(), f" {path}"))
    except json.JSONDecodeError as exc:
        raise ScenarioValidationError(
            f"malformed scenario document {path}: {exc.msg} (line {exc.lineno}, column {exc.colno})"
        ) from None

    if preset is not None:
        if preset not in PRESET_NAMES:
            raise ScenarioValidationError(f"unknown preset {preset!r}", keys=["preset"])
        if not isinstance(data, dict):
            raise ScenarioValidationError("scenario document must be a JSON object", keys=["<root>"])
        data = dict(data, controller={"kind": preset})
        data.setdefault("name", preset)
    elif isinstance(data, dict):
        data.setdefault("name", path.stem)
    return scenario_from_dict(data, overrides)
