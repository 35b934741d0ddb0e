import click

from src.channel_core import complementary, landau_streater
from src.commands.common import ReportBuilder, common_options, emit, handle_errors, resolve_settings, resolve_spin
from src.degradability import (
    choi_min_eigenvalue,
    degradability_verdict,
    factoring_choi,
    qubit_factoring_choi_reference,
)
from src.linalg_core import max_abs
from src.models.reports import Report
from src.models.settings import Settings
from src.models.spin import TwoJ

# (degradable, antidegradable) for j = 1/2, j = 1 and j >= 3/2
EXPECTED = {1: (False, True), 2: (True, True)}
EXPECTED_LARGE = (False, False)


def build_degradability_report(spin: TwoJ, settings: Settings) -> Report:
    builder = ReportBuilder("degradability", spin, settings, seed=settings.seed)
    verdict = degradability_verdict(spin)
    certificates = verdict.certificates

    expected = EXPECTED.get(spin.two_j, EXPECTED_LARGE)
    builder.require("verdict", (verdict.degradable, verdict.antidegradable) == expected)

    if spin.two_j == 1:
        ch = landau_streater(spin)
        omega, _ = factoring_choi(ch, complementary(ch))
        deviation = max_abs(omega.matrix - qubit_factoring_choi_reference())
        builder.check("omega_T_entries", 0.0, deviation, settings.tol_closed)
        builder.row("omega_T_min_eigenvalue", None, choi_min_eigenvalue(omega))
    elif spin.two_j == 2:
        builder.check("werner_holevo_equivalence", 0.0, certificates['werner_holevo_residual'],
                      settings.tol_closed)
    else:
        builder.check("complementary_choi_rank", spin.dim, certificates['complementary_choi_rank'], 0)
        if 'diag_element_numeric' in certificates:
            builder.check("omega_T_diag_element", certificates['diag_element_closed'],
                          certificates['diag_element_numeric'], max(settings.tol_closed, 1e-8))
        else:
            builder.row("omega_T_diag_element", certificates['diag_element_closed'])

    return builder.build({'spin': spin.to_dict(), **verdict.to_dict()})


@click.command("degradability")
@common_options
@click.pass_obj
@handle_errors
def degradability_cmd(settings, two_j, j_text, fmt, seed, tol, restarts):
    """Degradability and antidegradability verdicts with certificates."""
    settings = resolve_settings(settings, seed, tol, restarts)
    spin = resolve_spin(settings, two_j, j_text)
    emit(build_degradability_report(spin, settings), fmt)
