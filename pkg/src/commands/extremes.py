import math

import click

from src.channel_core import landau_streater
from src.commands.common import ReportBuilder, common_options, emit, handle_errors, resolve_settings, resolve_spin
from src.models.reports import OptimizerConfig, Report
from src.models.settings import Settings
from src.models.spin import TwoJ
from src.output_extremes import (
    max_p_norm_closed,
    min_output_entropy_closed,
    optimal_output_spectrum,
    output_extremes,
)


class SchattenIndex(click.ParamType):
    """A real p >= 1, or 'inf'"""
    name = "p"

    def convert(self, value, param, ctx):
        if isinstance(value, float):
            p = value
        else:
            text = str(value).strip().lower()
            if text in ("inf", "infinity", "∞"):
                return math.inf
            try:
                p = float(text)
            except ValueError:
                self.fail(f"{value!r} is not a number or 'inf'", param, ctx)
        if math.isnan(p) or p < 1:
            self.fail(f"p must be >= 1, got {value}", param, ctx)
        return p


def optimizer_config(settings: Settings) -> OptimizerConfig:
    return OptimizerConfig(restarts=settings.restarts, seed=settings.seed, workers=settings.workers)


def build_extremes_report(spin: TwoJ, settings: Settings, p: float = 2.0) -> Report:
    builder = ReportBuilder("extremes", spin, settings, seed=settings.seed)
    ch = landau_streater(spin)
    cfg = optimizer_config(settings)
    tol = settings.tol_optimizer

    nu_closed = max_p_norm_closed(spin, p)
    nu, s_min = output_extremes(ch, p, cfg)
    builder.check("nu_p", nu_closed, nu.value, tol)
    if p == 2.0:
        builder.check("max_purity", nu_closed ** 2, nu.value ** 2, tol)

    s_closed = min_output_entropy_closed(spin)
    builder.check("s_min", s_closed, s_min.value, tol)

    payload = {
        'spin': spin.to_dict(),
        'p': p,
        'nu_p_closed': nu_closed,
        'nu_p': nu.to_dict(),
        's_min_closed': s_closed,
        's_min': s_min.to_dict(),
        'optimal_output_spectrum': optimal_output_spectrum(spin).to_dict(),
        'optimizer': cfg.to_dict(),
    }
    return builder.build(payload)


@click.command("extremes")
@common_options
@click.option("--p", "p", type=SchattenIndex(), default="2", show_default=True,
              help="Schatten index, a real number >= 1 or 'inf'.")
@click.pass_obj
@handle_errors
def extremes_cmd(settings, two_j, j_text, fmt, seed, tol, restarts, p):
    """Maximal output p-norm and minimal output entropy, closed form vs optimizer."""
    settings = resolve_settings(settings, seed, tol, restarts)
    spin = resolve_spin(settings, two_j, j_text)
    emit(build_extremes_report(spin, settings, p), fmt)
