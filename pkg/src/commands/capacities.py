import math

import click

from src.capacities import capacity_report, chi_capacity_numeric, ea_capacity_numeric
from src.channel_core import landau_streater
from src.commands.common import ReportBuilder, common_options, emit, handle_errors, resolve_settings, resolve_spin
from src.models.reports import OptimizerConfig, Report
from src.models.settings import Settings
from src.models.spin import TwoJ


def build_capacities_report(spin: TwoJ, settings: Settings) -> Report:
    builder = ReportBuilder("capacities", spin, settings, seed=settings.seed)
    report = capacity_report(spin)
    ch = landau_streater(spin)
    cfg = OptimizerConfig(restarts=settings.restarts, seed=settings.seed, workers=settings.workers)

    builder.check("chi_capacity", report.chi_capacity, chi_capacity_numeric(ch, cfg), settings.tol_optimizer)
    builder.check("ea_capacity", report.ea_capacity, ea_capacity_numeric(ch), settings.tol_closed)
    single_letter = math.log2(spin.dim) - math.log2(3)
    builder.check("coherent_info_mm", single_letter, report.coherent_info_mm, settings.tol_closed)
    if report.q_lower_bound is not None:
        builder.check("q_lower_bound", report.q_lower_bound, report.coherent_info_mm, settings.tol_closed)
    builder.row("s_min", report.s_min)

    payload = report.to_dict()
    return builder.build(payload)


@click.command("capacities")
@common_options
@click.pass_obj
@handle_errors
def capacities_cmd(settings, two_j, j_text, fmt, seed, tol, restarts):
    """χ-capacity, entanglement-assisted capacity and quantum-capacity verdict."""
    settings = resolve_settings(settings, seed, tol, restarts)
    spin = resolve_spin(settings, two_j, j_text)
    emit(build_capacities_report(spin, settings), fmt)
