"""
Shared flags, report assembly and output writers for every subcommand.
"""
from __future__ import annotations

import csv
import functools
import io
import json
import logging
import math
from fractions import Fraction
from typing import Any, Dict, List, Optional

import click
import numpy as np

from src.errors import ContractViolation, LandauStreaterError, ToleranceBreach
from src.models.reports import Report
from src.models.settings import Settings
from src.models.spin import TwoJ

logger = logging.getLogger(__name__)

EXIT_USAGE = 2
EXIT_BREACH = 3

CSV_HEADER = ('quantity', 'closed_form', 'numeric', 'deviation')


# ------------------------------------------------------------------------------
# Flags
# ------------------------------------------------------------------------------
def common_options(func):
    """--two-j / --j, --format, --seed, --tol, --restarts"""
    options = [
        click.option("--two-j", "two_j", type=int, default=None, help="Twice the spin, e.g. 3 for j = 3/2."),
        click.option("--j", "j_text", type=str, default=None, help="Spin as '3/2' or 1.5 (exact half-integers only)."),
        click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True),
        click.option("--seed", type=click.IntRange(min=0), default=None, help="Random seed (defaults to LS_SEED)."),
        click.option("--tol", type=float, default=None, help="Closed-form comparison tolerance."),
        click.option("--restarts", type=click.IntRange(min=1), default=None, help="Optimizer restarts."),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def resolve_settings(settings: Settings, seed: Optional[int], tol: Optional[float],
                     restarts: Optional[int]) -> Settings:
    if tol is not None and not tol > 0:
        raise click.BadParameter(f"must be positive, got {tol}", param_hint="--tol")
    return settings.override(seed=seed, tol_closed=tol, restarts=restarts)


def resolve_spin(settings: Settings, two_j: Optional[int], j_text: Optional[str]) -> TwoJ:
    if two_j is None and j_text is None:
        raise click.UsageError("one of --two-j or --j is required")
    if two_j is not None and j_text is not None:
        raise click.UsageError("pass only one of --two-j and --j")
    if j_text is not None:
        try:
            spin = TwoJ.from_j(j_text)
        except ContractViolation as e:
            raise click.BadParameter(str(e), param_hint="--j")
    else:
        if two_j < 1:
            raise click.BadParameter(f"must be >= 1, got {two_j}", param_hint="--two-j")
        spin = TwoJ(two_j)
    if not 1 <= spin.two_j <= settings.max_two_j:
        raise click.BadParameter(
            f"2j must lie in 1..{settings.max_two_j}, got {spin.two_j}", param_hint="--two-j")
    return spin


# ------------------------------------------------------------------------------
# Report assembly
# ------------------------------------------------------------------------------
class ReportBuilder:
    """Collects comparison rows and the names of quantities that breach their tolerance"""

    def __init__(self, command: str, spin: TwoJ, settings: Settings, seed: Optional[int] = None):
        self.command = command
        self.spin = spin
        self.settings = settings
        self.seed = seed
        self.rows: List[Dict[str, Any]] = []
        self.breaches: List[str] = []

    def row(self, quantity: str, closed_form=None, numeric=None, deviation=None) -> None:
        self.rows.append({
            'quantity': quantity,
            'closed_form': closed_form,
            'numeric': numeric,
            'deviation': deviation,
        })

    def check(self, quantity: str, closed_form: float, numeric: float, tol: float) -> float:
        deviation = abs(float(numeric) - float(closed_form))
        self.row(quantity, closed_form, numeric, deviation)
        if not deviation <= tol:
            logger.warning("%s: deviation %.3e exceeds %.1e", quantity, deviation, tol)
            self.breaches.append(quantity)
        return deviation

    def require(self, quantity: str, ok: bool) -> None:
        if not ok:
            logger.warning("%s: check failed", quantity)
            self.breaches.append(quantity)

    def build(self, payload: Dict[str, Any]) -> Report:
        if self.breaches:
            payload = {**payload, 'breaches': list(self.breaches)}
        return Report(
            two_j=self.spin.two_j,
            command=self.command,
            payload=payload,
            seed=self.seed,
            tolerances=self.settings.tolerances(),
            breaches=list(self.breaches),
            rows=list(self.rows),
        )


# ------------------------------------------------------------------------------
# Encoding
# ------------------------------------------------------------------------------
def format_float(x: float) -> str:
    """17 significant digits; non-finite values become the JSON strings "inf", "-inf" and "nan".

    Readers must accept a string wherever a float is expected. The only field that
    carries one in practice is the Schatten index `p` of `extremes --p inf`.
    """
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(x, ".17g")


def _plain(value: Any) -> Any:
    if hasattr(value, "to_dict"):
        return value.to_dict()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, complex):
        if value.imag == 0:
            return value.real
        return {'re': value.real, 'im': value.imag}
    return value


def encode_json(value: Any, indent: int = 2, level: int = 0) -> str:
    """JSON with every float written to 17 significant digits"""
    value = _plain(value)
    pad = " " * (indent * (level + 1))
    close = " " * (indent * level)
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(str(key), ensure_ascii=False)}: {encode_json(item, indent, level + 1)}"
                 for key, item in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + close + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = [pad + encode_json(item, indent, level + 1) for item in value]
        return "[\n" + ",\n".join(items) + "\n" + close + "]"
    raise TypeError(f"cannot encode {type(value).__name__}")


def _csv_cell(value: Any) -> str:
    value = _plain(value)
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_float(value).strip('"')
    return str(value)


def encode_csv(rows: List[Dict[str, Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow([_csv_cell(row.get(column)) for column in CSV_HEADER])
    return buffer.getvalue()


# ------------------------------------------------------------------------------
# Output and errors
# ------------------------------------------------------------------------------
def emit(report: Report, fmt: str) -> None:
    if fmt == "csv":
        click.echo(encode_csv(report.rows), nl=False)
    else:
        click.echo(encode_json(report.to_dict()))
    if report.breaches:
        raise ToleranceBreach(report.breaches)


def fail(error: Exception, code: int) -> None:
    click.echo(json.dumps({'error': type(error).__name__, 'message': str(error)}), err=True)
    raise click.exceptions.Exit(code)


def handle_errors(func):
    """Map package errors onto exit codes: 2 for bad input, 3 for failed identities"""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except ContractViolation as e:
            fail(e, EXIT_USAGE)
        except ToleranceBreach as e:
            logger.warning(str(e))
            fail(e, EXIT_BREACH)
        except LandauStreaterError as e:
            fail(e, EXIT_BREACH)
    return wrapper
