import click

from src.commands.common import ReportBuilder, common_options, emit, handle_errors, resolve_settings, resolve_spin
from src.entanglement import annihilation_witness, eb_verdict, extreme_dyad_action, witness_min_closed
from src.models.reports import Report
from src.models.settings import Settings
from src.models.spin import TwoJ


def build_entanglement_report(spin: TwoJ, settings: Settings) -> Report:
    builder = ReportBuilder("entanglement", spin, settings, seed=settings.seed)
    witness = annihilation_witness(spin)
    breaking, certificate = eb_verdict(spin)

    if spin.two_j >= 2:
        builder.check("witness_min_pt_eigenvalue", witness_min_closed(spin), witness.min_pt_eigenvalue,
                      settings.tol_closed)
        builder.require("witness_entangled", witness.entangled)
    else:
        builder.row("witness_min_pt_eigenvalue", None, witness.min_pt_eigenvalue)
        builder.require("witness_separable", not witness.entangled)
    builder.check("extreme_dyad_action", 0.0, extreme_dyad_action(spin), settings.tol_closed)

    payload = {
        'spin': spin.to_dict(),
        'witness': witness.to_dict(),
        'entanglement_annihilating': not witness.entangled,
        'entanglement_breaking': breaking,
        'certificate': certificate,
    }
    return builder.build(payload)


@click.command("entanglement")
@common_options
@click.pass_obj
@handle_errors
def entanglement_cmd(settings, two_j, j_text, fmt, seed, tol, restarts):
    """PPT witness for Φ⊗Φ and the entanglement-breaking verdict."""
    settings = resolve_settings(settings, seed, tol, restarts)
    spin = resolve_spin(settings, two_j, j_text)
    emit(build_entanglement_report(spin, settings), fmt)
