"""
Command line interface for the reservoir teleportation simulator.
Provides the run, validate and thresholds commands.
"""

import asyncio
import sys
from pathlib import Path
from typing import Optional, Sequence, Tuple

import click
from rich.console import Console
from rich.table import Table

from config.presets import PRESETS
from config.scenario import build_scenario
from config.settings import Settings, get_settings
from core.logger import get_cli_logger, setup_logging
from physics.errors import ScenarioError, TeleportSimError
from physics.fidelity import asymptotic_f_avg
from physics.spectral import Ohmicity, SpectralParams, bound_state, bound_state_threshold

logger = get_cli_logger()
console = Console()

VALIDATION_CHECKS = ("closed-form", "fig1", "oracle", "rates", "bound-state", "sign-law", "convergence", "determinism")


def _settings_with_level(level: Optional[str]) -> Settings:
    settings = get_settings()
    if level:
        logging_section = settings.logging.model_copy(update={"level": level.upper()})
        settings = settings.model_copy(update={"logging": logging_section})
    setup_logging(settings)
    return settings


def _multi(values: Sequence) -> Optional[list]:
    return list(values) if values else None


@click.group()
@click.version_option("1.0.0", prog_name="teleport-sim")
def cli() -> None:
    """Teleportation fidelity through non-Markovian amplitude-damping reservoirs."""


@cli.command()
@click.option("--preset", type=click.Choice(list(PRESETS)), default=None, help="Figure preset to reproduce.")
@click.option("--config", "config_file", type=click.Path(path_type=Path), default=None, help="Key-value scenario file.")
@click.option("--s", "s", default=None, help="Ohmicity: 1/2 or a positive integer.")
@click.option("--eta", multiple=True, type=float, help="Coupling strength (repeatable).")
@click.option("--omega-c", type=float, default=None, help="Cutoff frequency in units of omega_0.")
@click.option("--r", "r", multiple=True, type=float, help="Werner mixing parameter (repeatable).")
@click.option("--t-max", type=float, default=None, help="Final time in units of 1/omega_0.")
@click.option("--dt", type=float, default=None, help="Solver step.")
@click.option("--out", "output_dir", type=click.Path(path_type=Path), default=None, help="Output directory.")
@click.option("--format", "formats", multiple=True, type=click.Choice(["csv", "svg"]), help="Artifact format (repeatable).")
@click.option("--workers", type=int, default=None, help="Concurrent solver runs.")
@click.option("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR.")
def run(
    preset: Optional[str],
    config_file: Optional[Path],
    s: Optional[str],
    eta: Tuple[float, ...],
    omega_c: Optional[float],
    r: Tuple[float, ...],
    t_max: Optional[float],
    dt: Optional[float],
    output_dir: Optional[Path],
    formats: Tuple[str, ...],
    workers: Optional[int],
    log_level: Optional[str],
) -> None:
    """Solve p(t) and write F_av / gamma artifacts for a preset or custom sweep."""
    # local import: the orchestrator loads matplotlib
    from core.orchestrator import run_scenario

    settings = _settings_with_level(log_level)
    overrides = {
        "s": s,
        "eta": _multi(eta),
        "omega_c": omega_c,
        "r": _multi(r),
        "t_max": t_max,
        "dt": dt,
        "output_dir": output_dir,
        "formats": _multi(formats),
        "workers": workers,
    }
    try:
        config = build_scenario(preset, config_file, overrides)
    except ScenarioError as e:
        raise click.UsageError(str(e)) from e

    try:
        result = asyncio.run(run_scenario(config, settings))
    except OSError as e:
        logger.error("Cannot write artifacts", error=str(e))
        console.print(f"[bold red]Output error:[/bold red] {e}")
        sys.exit(1)
    except TeleportSimError as e:
        logger.error("Scenario failed", error=str(e))
        console.print(f"[bold red]Scenario failed:[/bold red] {e}")
        sys.exit(1)

    table = Table(title=f"{config.preset}: {len(result.files)} artifacts in {result.elapsed:.2f}s")
    table.add_column("File", style="cyan")
    table.add_column("Size", justify="right")
    for path in result.files:
        table.add_row(str(path), f"{path.stat().st_size:,}")
    console.print(table)


@cli.command()
@click.option("--only", multiple=True, type=click.Choice(VALIDATION_CHECKS), help="Run only these checks.")
@click.option("--config", "config_file", type=click.Path(path_type=Path), default=None, help="Scenario file supplying omega_c and omega_0.")
@click.option("--omega-c", type=float, default=None, help="Cutoff frequency in units of omega_0.")
@click.option("--omega-0", type=float, default=None, help="Qubit frequency.")
@click.option("--log-level", default=None)
def validate(
    only: Tuple[str, ...],
    config_file: Optional[Path],
    omega_c: Optional[float],
    omega_0: Optional[float],
    log_level: Optional[str],
) -> None:
    """Run the validation suite and exit non-zero on any failure."""
    from core.validation import validate as run_validation

    settings = _settings_with_level(log_level)
    try:
        config = build_scenario(None, config_file, {"omega_c": omega_c, "omega_0": omega_0})
    except ScenarioError as e:
        raise click.UsageError(str(e)) from e

    try:
        report = run_validation(config, settings, _multi(only))
    except TeleportSimError as e:
        console.print(f"[bold red]Validation aborted:[/bold red] {e}")
        sys.exit(1)

    table = Table(title="Validation")
    table.add_column("Check")
    table.add_column("Result")
    table.add_column("Measured")
    table.add_column("Detail", style="dim")
    for check in report.checks:
        verdict = "[green]PASS[/green]" if check.passed else "[bold red]FAIL[/bold red]"
        table.add_row(check.name, verdict, check.measured, check.detail)
    console.print(table)

    if not report.passed:
        sys.exit(1)


_DEFAULT_SWEEPS = {PRESETS[p]["s"]: PRESETS[p]["eta"] for p in ("fig2", "fig3", "fig4")}


@cli.command()
@click.option("--s", "ohmicities", multiple=True, help="Ohmicity to tabulate (repeatable).")
@click.option("--eta", multiple=True, type=float, help="Couplings to tabulate (repeatable).")
@click.option("--r", "r", type=float, default=1.0, show_default=True, help="Werner mixing parameter.")
@click.option("--omega-c", type=float, default=1.0, show_default=True)
@click.option("--log-level", default=None)
def thresholds(
    ohmicities: Tuple[str, ...], eta: Tuple[float, ...], r: float, omega_c: float, log_level: Optional[str]
) -> None:
    """Tabulate bound-state thresholds, pole energies and long-time fidelities."""
    _settings_with_level(log_level)
    if not 0.0 <= r <= 1.0:
        raise click.BadParameter("r must lie in [0, 1]", param_hint="--r")

    table = Table(title=f"Bound states (omega_c = {omega_c:g}, r = {r:.4g})")
    for column in ("s", "eta", "eta_c", "E", "Z", "|p(inf)|^2", "F_av(inf)"):
        table.add_column(column, justify="right")

    try:
        for label in ohmicities or tuple(_DEFAULT_SWEEPS):
            ohm = Ohmicity.parse(label)
            etas = eta or _DEFAULT_SWEEPS.get(ohm.label, (0.3,))
            for coupling in etas:
                params = SpectralParams(ohm, coupling, omega_c)
                state = bound_state(params)
                table.add_row(
                    ohm.label,
                    f"{coupling:g}",
                    f"{bound_state_threshold(params):.6g}",
                    "-" if state is None else f"{state.energy:.6g}",
                    "-" if state is None else f"{state.residue:.6g}",
                    "0" if state is None else f"{state.population:.6g}",
                    f"{asymptotic_f_avg(r, params):.6g}",
                )
    except TeleportSimError as e:
        raise click.UsageError(str(e)) from e
    console.print(table)
