"""
🌊 Torpedo-SMC - línea de comandos

    torpedo-smc run --preset pid-smc1 --out pid.csv
    torpedo-smc run --scenario exp.json [--preset smc1] --out exp.csv [--dt 0.0005]
    torpedo-smc compare --preset smc1 --preset smc2 --preset pid-smc1 --out summary.csv
    torpedo-smc presets

Códigos de salida: 0 éxito, 1 error de validación, 2 simulación abortada,
3 error de E/S.
"""
import argparse
import logging
import sys
from typing import List, Optional, Sequence, Tuple

from ..config import Settings, get_settings, set_settings
from ..errors import ScenarioValidationError
from ..simulation.scenario import Scenario
from .commands import EXIT_IO, EXIT_VALIDATION, cmd_compare, cmd_presets, cmd_run
from .scenario_file import PRESET_NAMES, cli_overrides, load_scenario, preset_scenario

logger = logging.getLogger(__name__)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Los errores de uso salen con código 1, no con el 2 de argparse"""

    def error(self, message: str):
        raise UsageError(f"{self.prog}: error: {message}")


class _OrderedSource(argparse.Action):
    """Acumula --preset/--scenario en un único destino conservando el orden"""

    def __call__(self, parser, namespace, values, option_string=None):
        sources = list(getattr(namespace, self.dest, None) or [])
        kind = "preset" if option_string == "--preset" else "scenario"
        if kind == "preset" and values not in PRESET_NAMES:
            parser.error(f"argument --preset: invalid choice {values!r} (choose from {', '.join(PRESET_NAMES)})")
        sources.append((kind, values))
        setattr(namespace, self.dest, sources)


def _add_overrides(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--dt", type=float, help="paso de integración (s)")
    parser.add_argument("--duration", type=float, help="duración (s)")
    parser.add_argument("--amplitude", type=float, help="amplitud del escalón de profundidad (m)")
    parser.add_argument("--disturbance", type=float, metavar="M", help="activar perturbación con cota M")
    parser.add_argument("--seed", type=int, help="semilla de la perturbación")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="torpedo-smc", description="Sliding-mode control experiments on a torpedo")
    parser.add_argument("--config", help="fichero JSON de configuración alternativo")
    parser.add_argument("--verbose", action="store_true", help="logging DEBUG")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    run = sub.add_parser("run", help="simular un escenario y escribir su traza CSV")
    run.add_argument("--scenario", help="fichero de escenario JSON")
    run.add_argument("--preset", choices=PRESET_NAMES)
    run.add_argument("--out", required=True, help="fichero CSV de salida")
    _add_overrides(run)

    compare = sub.add_parser("compare", help="comparar escenarios y escribir un resumen CSV")
    compare.add_argument("--preset", dest="sources", action=_OrderedSource, metavar="PRESET")
    compare.add_argument("--scenario", dest="sources", action=_OrderedSource, metavar="FILE")
    compare.add_argument("--out", required=True, help="fichero CSV de resumen")
    compare.add_argument("--workers", type=int, help="simulaciones en paralelo")
    _add_overrides(compare)

    sub.add_parser("presets", help="mostrar los escenarios de los presets")
    return parser


def _compare_scenarios(sources: Sequence[Tuple[str, str]], overrides) -> List[Scenario]:
    return [
        preset_scenario(value, overrides) if kind == "preset" else load_scenario(value, None, overrides)
        for kind, value in sources
    ]


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(parser.format_usage(), file=sys.stderr, end="")
        print(e, file=sys.stderr)
        return EXIT_VALIDATION

    try:
        settings = Settings.from_json_file(args.config) if args.config else get_settings()
    except (OSError, ValueError) as e:
        print(f"torpedo-smc: cannot load config: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    set_settings(settings)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else settings.log_level.upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    if args.command == "presets":
        return cmd_presets()

    overrides = cli_overrides(args.dt, args.duration, args.amplitude, args.seed, args.disturbance)
    try:
        if args.command == "run":
            scenario = load_scenario(args.scenario, args.preset, overrides)
            return cmd_run(scenario, args.out, settings)

        sources = args.sources or []
        if len(sources) < 2:
            print(parser.format_usage(), file=sys.stderr, end="")
            print("torpedo-smc compare: error: at least two --preset/--scenario are required", file=sys.stderr)
            return EXIT_VALIDATION
        return cmd_compare(_compare_scenarios(sources, overrides), args.out, settings, args.workers)

    except ScenarioValidationError as e:
        logger.error(str(e))
        print(f"torpedo-smc: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as e:
        logger.error(f"I/O error: {e}")
        print(f"torpedo-smc: {e}", file=sys.stderr)
        return EXIT_IO
