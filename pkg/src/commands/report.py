"""
Runs every analysis for one spin and merges the sub-reports in a fixed order.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Tuple

import click

from src.commands.capacities import build_capacities_report
from src.commands.common import common_options, emit, handle_errors, resolve_settings, resolve_spin
from src.commands.degradability import build_degradability_report
from src.commands.entanglement import build_entanglement_report
from src.commands.extremes import build_extremes_report
from src.commands.multiplicativity import build_multiplicativity_report
from src.commands.spectrum import build_spectrum_report
from src.models.reports import Report
from src.models.settings import Settings
from src.models.spin import TwoJ

logger = logging.getLogger(__name__)


def sections() -> List[Tuple[str, Callable[[TwoJ, Settings], Report]]]:
    return [
        ("spectrum", build_spectrum_report),
        ("capacities", build_capacities_report),
        ("degradability", build_degradability_report),
        ("entanglement", build_entanglement_report),
        ("extremes_p2", lambda spin, settings: build_extremes_report(spin, settings, 2.0)),
        ("extremes_pinf", lambda spin, settings: build_extremes_report(spin, settings, math.inf)),
        ("multiplicativity", build_multiplicativity_report),
    ]


def build_full_report(spin: TwoJ, settings: Settings) -> Report:
    plan = sections()
    logger.info("report for 2j=%d: %d sections on %d worker(s)", spin.two_j, len(plan), settings.workers)
    # sub-analyses run single-threaded when the report itself fans out
    inner = settings.override(workers=1) if settings.workers > 1 else settings
    with ThreadPoolExecutor(max_workers=settings.workers) as pool:
        futures = [pool.submit(build, spin, inner) for _, build in plan]
        reports = [future.result() for future in futures]

    payload, rows, breaches = {}, [], []
    for (name, _), report in zip(plan, reports):
        payload[name] = report.payload
        rows.extend({**row, 'quantity': f"{name}.{row['quantity']}"} for row in report.rows)
        breaches.extend(f"{name}.{quantity}" for quantity in report.breaches)
    if breaches:
        payload['breaches'] = breaches

    return Report(
        two_j=spin.two_j,
        command="report",
        payload=payload,
        seed=settings.seed,
        tolerances=settings.tolerances(),
        breaches=breaches,
        rows=rows,
    )


@click.command("report")
@common_options
@click.pass_obj
@handle_errors
def report_cmd(settings, two_j, j_text, fmt, seed, tol, restarts):
    """Every analysis for one spin in a single report."""
    settings = resolve_settings(settings, seed, tol, restarts)
    spin = resolve_spin(settings, two_j, j_text)
    emit(build_full_report(spin, settings), fmt)
