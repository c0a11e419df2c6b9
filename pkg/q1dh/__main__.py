"""Main entry point for the quasi-one-dimensional hydrogen toolkit.

Tabulates wavefunctions and densities, runs the claim suites, reports entropies and exports
the momentum densities for plotting. Machine-readable output goes to `--out` or to stdout;
logs and human-readable tables go to stderr.

Exit codes: 0 all checks pass, 1 a claim failed, 2 usage or configuration error,
3 numerical non-convergence.
"""

import json
import logging
import time
from collections.abc import Callable
from enum import IntEnum

from q1dh._compat import StrEnum
from pathlib import Path
from typing import Annotated, Any

import numpy as np
import pandas as pd
import typer
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator
from rich.console import Console
from rich.logging import RichHandler
from rich.progress import track
from rich.table import Table

from q1dh import __version__
from q1dh.audit import ClaimError, ClaimReport, NodeResolutionError, SuiteSummary, claim_plan, stc_claim_plan
from q1dh.config import Config
from q1dh.infotheory import EntropyReport, bbm_report
from q1dh.momentum import MomentumEntropySource
from q1dh.quadrature import QuadratureError, ToleranceSpec
from q1dh.states import energy, gamma_density, half_width, momentum_waveform, psi, rho_density

console = Console(stderr=True)

# Set up logging format
logging.basicConfig(format="%(message)s", handlers=[RichHandler(console=console, omit_repeated_times=False)])
logger = logging.getLogger("rich")
logger.setLevel(Config().log_level)

app = typer.Typer()


class ExitCode(IntEnum):
    OK = 0
    CLAIM_FAILURE = 1
    USAGE = 2
    NON_CONVERGENCE = 3


class Command(StrEnum):
    TABULATE = "tabulate"
    VERIFY = "verify"
    ENTROPY = "entropy"
    AUDIT_STC = "audit-stc"
    PLOT_DATA = "plot-data"


class OutputFormat(StrEnum):
    CSV = "csv"
    JSON = "json"


class Space(StrEnum):
    POSITION = "position"
    MOMENTUM = "momentum"


class Grid(BaseModel):
    """Uniform sampling grid written as 'min:max:points' on the command line."""

    model_config = ConfigDict(frozen=True)

    min: float
    max: float
    points: int = Field(ge=2)

    @model_validator(mode="after")
    def validate_bounds(self) -> "Grid":
        if not self.min < self.max:
            msg = f"The grid minimum must be below its maximum, got {self.min}:{self.max}"
            raise ValueError(msg)
        return self

    @classmethod
    def parse(cls, text: str) -> "Grid":
        parts = text.split(":")
        if len(parts) != 3:  # noqa: PLR2004
            msg = f"Expected a grid as 'min:max:points', got '{text}'"
            raise ValueError(msg)
        return cls(min=float(parts[0]), max=float(parts[1]), points=int(parts[2]))

    def values(self) -> np.ndarray:
        """Return the grid points; a grid symmetric about 0 is made exactly antisymmetric."""
        values = np.linspace(self.min, self.max, self.points)
        if self.min == -self.max:
            values = 0.5 * (values - values[::-1])
        return values


class RunConfig(BaseModel):
    """Everything a command needs to produce its output."""

    command: Command
    n_list: list[Annotated[int, Field(ge=1)]] = Field(min_length=1)
    grid: Grid | None = None
    output_path: Path | None = None
    format: OutputFormat = OutputFormat.CSV
    tolerance: ToleranceSpec | None = None
    space: Space = Space.MOMENTUM
    stc: bool = False

    def grid_values(self) -> np.ndarray:
        if self.grid is None:
            msg = f"The {self.command} command needs a grid"
            raise ValueError(msg)
        return self.grid.values()


class ReportDocument(BaseModel):
    """Top-level JSON report."""

    version: str
    config: dict[str, Any]
    claims: list[ClaimReport] = Field(default_factory=list)
    entropies: list[EntropyReport] = Field(default_factory=list)


def parse_n_list(text: str) -> list[int]:
    """Parse '1,2,5-8' into [1, 2, 5, 6, 7, 8]."""
    n_list = []
    for item in filter(None, (part.strip() for part in text.split(","))):
        first, _, last = item.partition("-")
        n_list.extend(range(int(first), int(last or first) + 1))
    return n_list


NOption = Annotated[str, typer.Option("--n", help="Quantum indices, e.g. '1,2,5-8'.")]
GridOption = Annotated[str, typer.Option("--grid", help="Sampling grid as 'min:max:points'.")]
OutOption = Annotated[Path | None, typer.Option("--out", help="Output file; stdout when omitted.")]
FormatOption = Annotated[OutputFormat, typer.Option("--format", help="Output format.")]
TolAbsOption = Annotated[
    float | None,
    typer.Option("--tol-abs", help="Absolute quadrature tolerance; also replaces every claim tolerance."),
]
TolRelOption = Annotated[float | None, typer.Option("--tol-rel", help="Relative quadrature tolerance.")]


def _run_config(command: Command, n: str, grid: str | None = None, **kwargs: Any) -> RunConfig:  # noqa: ANN401
    try:
        parsed_grid = None if grid is None else Grid.parse(grid)
        return RunConfig(command=command, n_list=parse_n_list(n), grid=parsed_grid, **kwargs)
    except (ValidationError, ValueError) as e:
        logger.error("Invalid arguments: %s", e)  # noqa: TRY400
        raise typer.Exit(ExitCode.USAGE) from e


def _tolerance(tol_abs: float | None, tol_rel: float | None) -> ToleranceSpec:
    try:
        return Config().tolerance(tol_abs, tol_rel)
    except (ValidationError, ValueError) as e:
        logger.error("Invalid tolerance settings: %s", e)  # noqa: TRY400
        raise typer.Exit(ExitCode.USAGE) from e


def _write(text: str, path: Path | None) -> None:
    if path is None:
        typer.echo(text, nl=False)
        return
    try:
        path.write_text(text, encoding="utf-8", newline="\n")
    except OSError as e:
        logger.error("Cannot write '%s': %s", path, e)  # noqa: TRY400
        raise typer.Exit(ExitCode.USAGE) from e
    logger.info("Output written to '%s'", path)


def _write_table(frame: pd.DataFrame, run: RunConfig) -> None:
    if run.format is OutputFormat.CSV:
        text = frame.to_csv(index=False, float_format="%.16e", lineterminator="\n")
    else:
        document = {
            "version": __version__,
            "config": run.model_dump(mode="json"),
            "rows": frame.to_dict(orient="records"),
        }
        text = json.dumps(document, indent=2) + "\n"
    _write(text, run.output_path)


def _write_report(run: RunConfig, claims: list[ClaimReport], entropies: list[EntropyReport]) -> None:
    if run.format is OutputFormat.JSON:
        document = ReportDocument(
            version=__version__,
            config={**run.model_dump(mode="json"), "settings": Config().dump()},
            claims=claims,
            entropies=entropies,
        )
        _write(document.model_dump_json(indent=2) + "\n", run.output_path)
        return

    if claims:
        frame = pd.DataFrame(
            [
                {
                    "claim_id": report.claim_id,
                    "n_values": ";".join(map(str, report.n_values)),
                    "residual": report.residual,
                    "tolerance": report.tolerance,
                    "passed": report.passed,
                    "expected_to_pass": report.expected_to_pass,
                }
                for report in claims
            ],
        )
    else:
        frame = pd.DataFrame([report.model_dump(mode="json") for report in entropies])
    _write_table(frame, run)


def _run_claims(plan: list[Callable[[], ClaimReport]], description: str) -> SuiteSummary:
    start = time.perf_counter()
    try:
        reports = [claim() for claim in track(plan, description=description, console=console)]
    except (QuadratureError, ClaimError, NodeResolutionError) as e:
        logger.error("Numerical failure: %s", e)  # noqa: TRY400
        raise typer.Exit(ExitCode.NON_CONVERGENCE) from e

    summary = SuiteSummary(reports, time.perf_counter() - start)

    table = Table("claim", "n", "residual", "tolerance", "outcome")
    for report in reports:
        outcome = "pass" if report.passed else "FAIL"
        if not report.expected_to_pass:
            outcome += " (expected fail)" if not report.passed else " (UNEXPECTED)"
        table.add_row(
            report.claim_id,
            ",".join(map(str, report.n_values)),
            f"{report.residual:.3e}",
            f"{report.tolerance:.1e}",
            outcome,
        )
    console.print(table)

    logger.info("Run summary:")
    logger.info("- Claims checked: %d", len(reports))
    logger.info("- Average time per claim: %f seconds", summary.claim_time_average())
    logger.info("- Pass percentage: %f%%", summary.pass_percentage() * 100)
    for report in summary.unexpected():
        logger.warning("Claim '%s' for n=%s: %s", report.claim_id, report.n_values, report.details)

    return summary


@app.command()
def tabulate(
    n: NOption = "1",
    grid: GridOption = "-3:3:601",
    space: Annotated[Space, typer.Option("--space", help="Representation to tabulate.")] = Space.MOMENTUM,
    out: OutOption = None,
    fmt: FormatOption = OutputFormat.CSV,
) -> None:
    """Tabulate wavefunctions, densities and energies on a grid."""
    run = _run_config(Command.TABULATE, n, grid, output_path=out, format=fmt, space=space)
    values = run.grid_values()

    if run.space is Space.POSITION and values[0] < 0:
        logger.error("Position grids must not extend behind the wall at x = 0")
        raise typer.Exit(ExitCode.USAGE)

    frames = []
    for index in run.n_list:
        if run.space is Space.POSITION:
            frame = pd.DataFrame({"n": index, "x": values, "psi": psi(index, values), "rho": rho_density(index, values)})
        else:
            waveform = momentum_waveform(index, values)
            frame = pd.DataFrame(
                {
                    "n": index,
                    "p": values,
                    "re_phi": waveform.real,
                    "im_phi": waveform.imag,
                    "gamma": gamma_density(index, values),
                },
            )
        frame["energy"] = energy(index)
        frames.append(frame)

    _write_table(pd.concat(frames, ignore_index=True), run)


@app.command()
def verify(
    n: NOption = "1-5",
    out: OutOption = None,
    fmt: FormatOption = OutputFormat.CSV,
    tol_abs: TolAbsOption = None,
    tol_rel: TolRelOption = None,
) -> None:
    """Run the claim suite: orthonormality, Fourier consistency, nodes, STC normalization, concentration."""
    tol = _tolerance(tol_abs, tol_rel)
    run = _run_config(Command.VERIFY, n, output_path=out, format=fmt, tolerance=tol)
    logger.info("Verifying n = %s with tolerance %s", run.n_list, tol)

    try:
        plan = claim_plan(run.n_list, tol, tolerance=tol_abs)
    except ValueError as e:
        logger.error("Invalid arguments: %s", e)  # noqa: TRY400
        raise typer.Exit(ExitCode.USAGE) from e

    summary = _run_claims(plan, "Checking claims")
    _write_report(run, summary.reports, [])

    if not summary.all_passed():
        raise typer.Exit(ExitCode.CLAIM_FAILURE)


@app.command()
def entropy(
    n: NOption = "1",
    stc: Annotated[bool, typer.Option("--stc", help="Append the STC entropy row for each n.")] = False,  # noqa: FBT002
    out: OutOption = None,
    fmt: FormatOption = OutputFormat.CSV,
    tol_abs: TolAbsOption = None,
    tol_rel: TolRelOption = None,
) -> None:
    """Report position and momentum entropies and the entropic uncertainty check."""
    tol = _tolerance(tol_abs, tol_rel)
    run = _run_config(Command.ENTROPY, n, output_path=out, format=fmt, tolerance=tol, stc=stc)

    sources = [MomentumEntropySource.CORRECT]
    if run.stc:
        sources.append(MomentumEntropySource.STC)

    reports = []
    try:
        for index in track(run.n_list, description="Computing entropies", console=console):
            reports.extend(bbm_report(index, source, tol) for source in sources)
    except ValueError as e:
        logger.error("Invalid arguments: %s", e)  # noqa: TRY400
        raise typer.Exit(ExitCode.USAGE) from e
    except QuadratureError as e:
        logger.error("Numerical failure: %s", e)  # noqa: TRY400
        raise typer.Exit(ExitCode.NON_CONVERGENCE) from e

    table = Table("n", "source", "S_rho", "S_gamma", "S_gamma (closed form)", "sum", "1 + ln pi", "margin", "")
    for report in reports:
        analytic = "" if report.s_gamma_analytic is None else f"{report.s_gamma_analytic:.4f}"
        table.add_row(
            str(report.n),
            report.source,
            f"{report.s_rho:.4f}",
            f"{report.s_gamma_numeric:.4f}",
            analytic,
            f"{report.bbm_sum:.4f}",
            f"{report.bbm_bound:.4f}",
            f"{report.margin:+.4f}",
            "ok" if report.satisfied else "VIOLATION",
        )
        if not report.satisfied:
            logger.warning("n=%d (%s) violates S_rho + S_gamma >= 1 + ln(pi)", report.n, report.source)
    console.print(table)

    _write_report(run, [], reports)

    if any(not r.satisfied for r in reports if r.source is MomentumEntropySource.CORRECT):
        raise typer.Exit(ExitCode.CLAIM_FAILURE)


@app.command("audit-stc")
def audit_stc(
    n: NOption = "1,2",
    out: OutOption = None,
    fmt: FormatOption = OutputFormat.CSV,
    tol_abs: TolAbsOption = None,
    tol_rel: TolRelOption = None,
) -> None:
    """Check the STC waveform: Fourier mismatch, half-line normalization, zero momentum, entropy violation."""
    tol = _tolerance(tol_abs, tol_rel)
    run = _run_config(Command.AUDIT_STC, n, output_path=out, format=fmt, tolerance=tol)

    try:
        plan = stc_claim_plan(run.n_list, tol)
    except ValueError as e:
        logger.error("Invalid arguments: %s", e)  # noqa: TRY400
        raise typer.Exit(ExitCode.USAGE) from e

    summary = _run_claims(plan, "Auditing the STC waveform")
    _write_report(run, summary.reports, [])

    if not summary.all_as_expected():
        raise typer.Exit(ExitCode.CLAIM_FAILURE)


@app.command("plot-data")
def plot_data(
    n: NOption = "1,2,3,4,10",
    grid: GridOption = "-3:3:601",
    out: OutOption = None,
    fmt: FormatOption = OutputFormat.CSV,
) -> None:
    """Export the momentum densities gamma_n(p) as columns, one per n."""
    run = _run_config(Command.PLOT_DATA, n, grid, output_path=out, format=fmt)
    values = run.grid_values()

    frame = pd.DataFrame({"p": values})
    for index in run.n_list:
        frame[f"gamma_n{index}"] = gamma_density(index, values)
        logger.info("n=%d: peak %.4f, half width at half maximum %.4f", index, 2 * index / np.pi, half_width(index))

    _write_table(frame, run)


def main() -> None:
    app()


if __name__ == "__main__":
    main()
