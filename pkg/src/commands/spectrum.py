import logging

import click
import numpy as np

from src.channel_core import landau_streater
from src.commands.common import ReportBuilder, common_options, emit, handle_errors, resolve_settings, resolve_spin
from src.models.reports import Report
from src.models.settings import Settings
from src.models.spin import TwoJ
from src.spectral_analysis import (
    determinant,
    determinant_closed,
    imaginary_residue,
    ls_spectrum_closed,
    markov_markers,
    superoperator_eigenvalues,
    verify_eigenoperators,
)

logger = logging.getLogger(__name__)


def build_spectrum_report(spin: TwoJ, settings: Settings) -> Report:
    """Closed-form vs numeric map spectrum, determinant and eigenoperator residuals"""
    tol = settings.tol_closed
    logger.info("spectrum for 2j=%d", spin.two_j)
    builder = ReportBuilder("spectrum", spin, settings, seed=settings.seed)
    closed = ls_spectrum_closed(spin)
    raw = superoperator_eigenvalues(landau_streater(spin))
    residue = imaginary_residue(raw)
    numeric = np.sort(raw.real)[::-1]
    builder.require("imaginary_residue", residue <= 1e-9)

    # λ_L decreases with L, so level L occupies the next 2L+1 sorted eigenvalues
    flat = closed.flattened().values
    offset = 0
    for L, (lam, mult) in enumerate(closed.pairs):
        chunk = numeric[offset:offset + mult]
        offset += mult
        deviation = float(np.max(np.abs(chunk - float(lam))))
        builder.row(f"lambda_{L}", float(lam), float(np.mean(chunk)), deviation)
        builder.require(f"lambda_{L}", deviation <= tol)
    max_deviation = float(np.max(np.abs(numeric - flat)))

    det_closed = determinant_closed(spin)
    builder.check("determinant", float(det_closed), determinant(landau_streater(spin)), tol)

    rng = np.random.default_rng(settings.seed)
    residuals = verify_eigenoperators(spin, rng)
    for entry in residuals:
        builder.check(f"eigenoperator_T_{entry['L']}0", 0.0, entry['residual'], tol)
        builder.check(f"eigenoperator_rotated_T_{entry['L']}0", 0.0, entry['rotated_residual'], tol)

    payload = {
        'spin': spin.to_dict(),
        'closed_form': closed.to_dict(),
        'numeric': numeric.tolist(),
        'imaginary_residue': residue,
        'max_deviation': max_deviation,
        'determinant': float(det_closed),
        'determinant_exact': str(det_closed),
        'markers': markov_markers(spin),
        'eigenoperators': residuals,
    }
    return builder.build(payload)


@click.command("spectrum")
@common_options
@click.pass_obj
@handle_errors
def spectrum_cmd(settings, two_j, j_text, fmt, seed, tol, restarts):
    """Map spectrum: λ_L with multiplicities, numeric eigenvalues, determinant."""
    settings = resolve_settings(settings, seed, tol, restarts)
    spin = resolve_spin(settings, two_j, j_text)
    emit(build_spectrum_report(spin, settings), fmt)
