import csv
import sys
from enum import Enum
from typing import Annotated, NoReturn, Optional

import typer
from loguru import logger
from rich.console import Console
from rich.table import Table
from typer import Option, Typer

from . import utils
from .arith import primes_upto
from .gfun import g_direct, g_factorization, g_p, g_rec, g_via_primes
from .global_vars import GLOBAL_VARS
from .models import (
    CheckReport,
    GPayload,
    OutputRecord,
    StatementId,
    TableRow,
)
from .models.output import TABLE_CSV_HEADER
from .period import OracleGuardError, PeriodAssumptionError, exact_period, oracle_period
from .verify import CheckGuardError
from .verify.manager import CheckManager, Profile, run_all

EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


class GMethod(str, Enum):
    direct = "direct"
    rec = "rec"
    primes = "primes"


class TableFormat(str, Enum):
    json = "json"
    csv = "csv"


G_METHODS = {
    GMethod.direct: g_direct,
    GMethod.rec: g_rec,
    GMethod.primes: g_via_primes,
}

cli = Typer(name="lcm-period", no_args_is_help=True)


def emit(command: str, payload):
    record = OutputRecord(command=command, payload=payload)
    typer.echo(record.model_dump_json(indent=2))


def usage_error(message: str) -> NoReturn:
    logger.error(message)
    raise typer.Exit(code=EXIT_USAGE)


@cli.callback()
def main(
    verbose: Annotated[
        bool, Option("--verbose", "-v", help="Debug logs and factorizations")
    ] = False,
    workers: Annotated[
        int, Option("--workers", "-w", min=1, help="Threads for independent checks")
    ] = 1,
):
    utils.configure_logging(verbose)
    GLOBAL_VARS["workers"] = workers


@cli.command()
def g(
    n: Annotated[int, Option("--n", help="Start of the window")],
    k: Annotated[int, Option("--k", help="Window length minus one")],
    method: Annotated[GMethod, Option("--method", "-m")] = GMethod.direct,
):
    """g_k(n) = n(n+1)...(n+k) / lcm(n, ..., n+k)."""
    if k < 0:
        usage_error(f"--k must be >= 0, got {k}")
    if method is not GMethod.rec and n < 1:
        usage_error(f"--method {method.value} needs --n >= 1, got {n}; use --method rec")

    value = G_METHODS[method](n, k)
    payload = GPayload(n=n, k=k, method=method.value, value=value)

    if GLOBAL_VARS["verbose"]:
        factorization = g_factorization(value, k)
        payload = payload.model_copy(
            update={
                "factorization": {str(p): e for p, e in factorization.factors},
                "valuations": (
                    {str(p): g_p(n, k, p) for p in primes_upto(k)}
                    if n >= 1
                    else None
                ),
            }
        )

    emit("g", payload.model_dump(mode="json"))


@cli.command()
def period(
    k: Annotated[int, Option("--k")],
    oracle: Annotated[
        bool, Option("--oracle", help="Brute-force search instead of the closed form")
    ] = False,
    window_multiplier: Annotated[
        int, Option("--window-multiplier", min=1, help="Oracle: tabulate this many periods")
    ] = 1,
    allow_large_oracle: Annotated[
        bool, Option("--allow-large-oracle", help="Lift the oracle k limit")
    ] = False,
):
    """Exact period P_k of g_k."""
    if k < 0:
        usage_error(f"--k must be >= 0, got {k}")

    try:
        result = (
            oracle_period(k, window_multiplier, allow_large=allow_large_oracle)
            if oracle
            else exact_period(k)
        )
    except OracleGuardError as e:
        usage_error(str(e))
    except PeriodAssumptionError as e:
        logger.error(str(e))
        raise typer.Exit(code=EXIT_CHECK_FAILED)

    emit("period", result.model_dump(mode="json"))


@cli.command(
    help=(
        "One row per k: P_k, lcm(1, ..., k), bad prime and lcm / P_k. "
        f"JSON and CSV layouts follow schema_version {GLOBAL_VARS['schema_version']}."
    )
)
def table(
    k_min: Annotated[int, Option("--k-min")] = 0,
    k_max: Annotated[int, Option("--k-max")] = 12,
    output_format: Annotated[TableFormat, Option("--format", "-f")] = TableFormat.json,
):
    if k_min < 0 or k_min > k_max:
        usage_error(f"need 0 <= --k-min <= --k-max, got [{k_min}, {k_max}]")

    rows = []
    for k in range(k_min, k_max + 1):
        result = exact_period(k)
        rows.append(
            TableRow(
                k=k,
                period=result.period,
                lcm_upto_k=result.lcm_upto_k,
                bad_prime=result.bad_prime,
                ratio=result.ratio,
            )
        )

    if output_format is TableFormat.csv:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(TABLE_CSV_HEADER)
        writer.writerows(row.as_csv_row() for row in rows)
        return

    emit("table", {"rows": [row.model_dump(mode="json") for row in rows]})


def print_summary(reports: list[CheckReport]):
    summary = Table(title="verify")
    summary.add_column("statement")
    summary.add_column("params")
    summary.add_column("result")
    summary.add_column("seconds", justify="right")

    for report in reports:
        summary.add_row(
            report.statement_id.value + (" *" if report.conditional else ""),
            ", ".join(f"{name}={lo}..{hi}" for name, (lo, hi) in report.params.items()),
            "[green]passed[/green]" if report.passed else "[red]FAILED[/red]",
            f"{report.elapsed:.2f}",
        )

    Console(stderr=True).print(summary)


@cli.command()
def verify(
    profile: Annotated[Profile, Option("--profile", "-p")] = Profile.quick,
    statement: Annotated[
        Optional[StatementId], Option("--statement", "-s", help="Run a single check")
    ] = None,
    supplementary: Annotated[
        bool, Option("--supplementary", help="Also run the per-prime period check")
    ] = False,
):
    """Run the statement checks and report each outcome."""
    try:
        if statement is None:
            reports = run_all(profile, include_supplementary=supplementary)
        else:
            reports = CheckManager(profile).run([statement])
    except (CheckGuardError, OracleGuardError, ValueError) as e:
        usage_error(str(e))

    if GLOBAL_VARS["verbose"]:
        print_summary(reports)

    passed = all(report.passed for report in reports)
    emit(
        "verify",
        {
            "profile": profile.value,
            "passed": passed,
            "reports": [report.model_dump(mode="json") for report in reports],
        },
    )

    if not passed:
        raise typer.Exit(code=EXIT_CHECK_FAILED)


if __name__ == "__main__":
    cli()
