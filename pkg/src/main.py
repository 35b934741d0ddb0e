import logging
import sys

import click
from dotenv import load_dotenv

from src.commands.common import EXIT_USAGE, fail
from src.errors import ContractViolation
from src.models.settings import Settings

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR"]


# -------------------------------
# Logging (stderr only, stdout carries the reports)
# -------------------------------
def configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


# -------------------------------
# CLI group
# -------------------------------
@click.group()
@click.option("--log-level", type=click.Choice(LOG_LEVELS, case_sensitive=False), default=None,
              help="Overrides LS_LOG_LEVEL.")
@click.pass_context
def cli(ctx, log_level):
    """Landau–Streater channel: spectra, extremes, capacities, degradability, entanglement."""
    load_dotenv()
    try:
        settings = Settings.from_env()
    except ContractViolation as e:
        fail(e, EXIT_USAGE)
    settings = settings.override(log_level=log_level)
    configure_logging(settings.log_level)
    ctx.obj = settings


# -------------------------------
# Subcommands
# -------------------------------
from src.commands.spectrum import spectrum_cmd
from src.commands.capacities import capacities_cmd
from src.commands.degradability import degradability_cmd
from src.commands.entanglement import entanglement_cmd
from src.commands.extremes import extremes_cmd
from src.commands.multiplicativity import multiplicativity_cmd
from src.commands.report import report_cmd

cli.add_command(spectrum_cmd)
cli.add_command(capacities_cmd)
cli.add_command(degradability_cmd)
cli.add_command(entanglement_cmd)
cli.add_command(extremes_cmd)
cli.add_command(multiplicativity_cmd)
cli.add_command(report_cmd)


def main():
    cli()


# -------------------------------
# Run
# -------------------------------
if __name__ == "__main__":
    main()
