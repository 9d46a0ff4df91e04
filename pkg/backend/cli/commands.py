"""
Comandos de la CLI: run, compare y presets
"""
import asyncio
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import IO, List, Optional, Sequence, Union

from ..analytics.metrics import compute_metrics
from ..config import Settings, get_settings
from ..errors import TorpedoSMCError
from ..reports.csv_export import format_report, write_summary_csv, write_trace_csv
from ..simulation.engine import Trace, run_closed_loop
from ..simulation.scenario import Scenario
from .scenario_file import PRESET_NAMES, preset_scenario, serialize_scenario

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_ABORTED = 2
EXIT_IO = 3


def cmd_run(scenario: Scenario, out_path: Union[str, Path], settings: Optional[Settings] = None,
            stdout: Optional[IO[str]] = None) -> int:
    """Simular un escenario, escribir la traza CSV e imprimir las métricas"""
    settings = settings or get_settings()
    stdout = stdout or sys.stdout
    trace = run_closed_loop(scenario)

    try:
        write_trace_csv(trace, out_path, settings.output.significant_digits)
    except OSError as e:
        logger.error(f"Cannot write trace to {out_path}: {e}")
        return EXIT_IO

    report = compute_metrics(trace, settings)
    print(format_report(report, scenario.name, settings.output.significant_digits), file=stdout)

    if trace.aborted:
        logger.warning("Partial trace written to %s (%s)", out_path, trace.error)
        return EXIT_ABORTED
    return EXIT_OK


async def run_scenarios(scenarios: Sequence[Scenario], workers: int = 1) -> List[Optional[Trace]]:
    """
    Ejecutar escenarios en paralelo; el resultado conserva el orden de entrada

    Un escenario fallido (abortado o con excepción) devuelve None.
    """
    loop = asyncio.get_running_loop()

    def guarded(scenario: Scenario) -> Optional[Trace]:
        try:
            trace = run_closed_loop(scenario)
        except TorpedoSMCError as e:
            logger.error(f"Scenario {scenario.name} failed: {e}")
            return None
        return None if trace.aborted else trace

    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        futures = [loop.run_in_executor(pool, guarded, scenario) for scenario in scenarios]
        return list(await asyncio.gather(*futures))


def cmd_compare(scenarios: Sequence[Scenario], out_path: Union[str, Path],
                settings: Optional[Settings] = None, workers: Optional[int] = None) -> int:
    """Una fila de métricas por escenario, en el orden de entrada"""
    settings = settings or get_settings()
    if len(scenarios) < 2:
        raise ValueError("compare needs at least two scenarios")

    workers = workers or settings.compare_workers
    logger.info("Comparing %d scenarios with %d workers", len(scenarios), workers)
    traces = asyncio.run(run_scenarios(scenarios, workers))

    rows = [
        compute_metrics(trace, settings).summary_row(scenario.name) if trace is not None else None
        for scenario, trace in zip(scenarios, traces)
    ]
    try:
        write_summary_csv(rows, [s.name for s in scenarios], out_path, settings.output.significant_digits)
    except OSError as e:
        logger.error(f"Cannot write summary to {out_path}: {e}")
        return EXIT_IO

    return EXIT_ABORTED if any(row is None for row in rows) else EXIT_OK


def cmd_presets(stdout: Optional[IO[str]] = None) -> int:
    """Imprimir los escenarios normalizados de los tres presets"""
    stdout = stdout or sys.stdout
    for name in PRESET_NAMES:
        print(f"# {name}", file=stdout)
        print(serialize_scenario(preset_scenario(name)), file=stdout, end="")
    return EXIT_OK
