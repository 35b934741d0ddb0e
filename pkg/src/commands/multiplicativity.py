import click

from src.commands.common import ReportBuilder, common_options, emit, handle_errors, resolve_settings, resolve_spin
from src.commands.extremes import optimizer_config
from src.models.reports import Report
from src.models.settings import Settings
from src.models.spin import TwoJ
from src.output_extremes import max_p_norm_closed, multiplicativity_experiment

GAP_TOL = 1e-4


def build_multiplicativity_report(spin: TwoJ, settings: Settings) -> Report:
    builder = ReportBuilder("multiplicativity", spin, settings, seed=settings.seed)
    cfg = optimizer_config(settings)
    result = multiplicativity_experiment(spin, cfg)

    builder.check("nu2_single", max_p_norm_closed(spin, 2.0), result.nu2_single, settings.tol_optimizer)
    builder.check("nu2_gap", result.nu2_single ** 2, result.nu2_double, GAP_TOL)

    payload = {
        'spin': spin.to_dict(),
        **result.to_dict(),
        'gap_tolerance': GAP_TOL,
        'optimizer': cfg.to_dict(),
    }
    return builder.build(payload)


@click.command("multiplicativity")
@common_options
@click.pass_obj
@handle_errors
def multiplicativity_cmd(settings, two_j, j_text, fmt, seed, tol, restarts):
    """ν₂(Φ⊗Φ) against ν₂(Φ)² over entangled inputs."""
    settings = resolve_settings(settings, seed, tol, restarts)
    spin = resolve_spin(settings, two_j, j_text)
    emit(build_multiplicativity_report(spin, settings), fmt)
