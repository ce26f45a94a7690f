"""
Command-line interface for pickup_sticks.

Usage:
    pickup-sticks exact --n 5 --k 3 --format json
    pickup-sticks table --max-n 12 --k 3 --k 4 --format csv --output table.csv
    pickup-sticks simulate --n 4 --k 3 --trials 1000000 --seed 1
    pickup-sticks verify --max-n 25 --max-k 8
    pickup-sticks sequence --k 4 --count 6

Exit codes: 0 success, 1 verification mismatch, 2 argument error, 3 I/O error.
Exact values are always written as "num/den" strings, never floats.
"""

from __future__ import annotations

import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Context, Decimal
from fractions import Fraction
from typing import Any, Callable, Iterable

import click

from . import exact_sequences as seq
from . import montecarlo as mc
from . import polytope_oracle as oracle
from . import spacings_integrator as engine
from .errors import ContractViolation, DomainError

__all__ = ["cli", "OutputRecord", "decimal_string", "run_verification", "VerificationReport"]

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_IO = 3

DEFAULT_PRECISION = 12
FORMATS = ("human", "csv", "json")
RECORD_FIELDS = ("n", "k", "method", "p_exact", "p_decimal")
TABLE_FIELDS = ("n", "k", "p_num", "p_den", "p_decimal", "coeffs")
GRID_CASES = ((3, 3, 512), (4, 3, 256), (4, 4, 256))
GRID_TOLERANCE = 5e-3


def decimal_string(value: Fraction | float, precision: int = DEFAULT_PRECISION) -> str:
    """Round ``value`` to ``precision`` significant digits, half-even.

    >>> decimal_string(Fraction(1, 30))
    '0.0333333333333'
    """
    ctx = Context(prec=precision, rounding=ROUND_HALF_EVEN)
    if isinstance(value, Fraction):
        d = ctx.divide(Decimal(value.numerator), Decimal(value.denominator))
    else:
        d = ctx.plus(Decimal(repr(float(value))))
    return str(d)


def ratio_string(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


@dataclass
class OutputRecord:
    n: int
    k: int
    method: str
    p_decimal: str
    p_exact: str | None = None
    extra: dict[str, Any] = field(default_factory=dict)

    def as_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "k": self.k,
            "method": self.method,
            "p_exact": self.p_exact,
            "p_decimal": self.p_decimal,
            "extra": self.extra,
        }

    @classmethod
    def exact(cls, n: int, k: int, method: str, value: Fraction, precision: int, **extra) -> OutputRecord:
        return cls(n, k, method, decimal_string(value, precision), ratio_string(value), dict(extra))


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _write(text: str, output: str | None) -> None:
    if output is None:
        click.echo(text, nl=False)
        return
    try:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise _Fail(EXIT_IO, f"cannot write {output}: {exc.strerror or exc}") from exc


def _csv_text(header: Iterable[str], rows: Iterable[Iterable[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _json_text(command: str, records: list[dict[str, Any]]) -> str:
    return json.dumps({"command": command, "records": records}, indent=2) + "\n"


def _extra_text(extra: dict[str, Any]) -> str:
    return " ".join(f"{key}={val}" for key, val in extra.items())


def render_records(command: str, records: list[OutputRecord], fmt: str) -> str:
    if fmt == "json":
        return _json_text(command, [r.as_dict() for r in records])
    if fmt == "csv":
        extra_keys = sorted({key for r in records for key in r.extra})
        rows = ([r.n, r.k, r.method, r.p_exact or "", r.p_decimal] + [r.extra.get(key, "") for key in extra_keys]
                for r in records)
        return _csv_text(list(RECORD_FIELDS) + extra_keys, rows)
    lines = []
    for r in records:
        exact = r.p_exact if r.p_exact is not None else "-"
        line = f"n={r.n:<3} k={r.k:<3} {r.method:<10} {exact:<24} {r.p_decimal}"
        if r.extra:
            line += "  " + _extra_text(r.extra)
        lines.append(line.rstrip())
    return "\n".join(lines) + "\n"


def _closed_form(n: int, k: int) -> Fraction | None:
    if k == 3:
        return seq.p_no_triangle(n)
    if k == 4:
        return seq.p_no_quadrilateral(n)
    return None


def _guard(fn: Callable[..., int]) -> Callable[..., None]:
    """Map domain errors and I/O failures onto the documented exit codes."""

    def wrapper(*args, **kwargs):
        try:
            code = fn(*args, **kwargs)
        except (DomainError, ContractViolation) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_USAGE)
        except _Fail as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(exc.code)
        sys.exit(code or EXIT_OK)

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


format_option = click.option("--format", "fmt", type=click.Choice(FORMATS), default="human", show_default=True)
output_option = click.option("--output", type=click.Path(dir_okay=False), default=None,
                             help="Write to PATH instead of stdout.")
precision_option = click.option("--precision", type=click.IntRange(min=1), default=DEFAULT_PRECISION,
                                show_default=True, help="Significant digits in decimal output.")


@click.group()
def cli() -> None:
    """Exact and simulated probabilities for the pick-up stick model."""


@cli.command()
@click.option("--n", type=int, required=True, help="Number of sticks.")
@click.option("--k", type=int, required=True, help="Polygon size to forbid (k >= 3).")
@click.option("--cross-check", is_flag=True, help="Also emit engine, oracle and (n <= 4) grid values.")
@format_option
@output_option
@precision_option
@_guard
def exact(n: int, k: int, cross_check: bool, fmt: str, output: str | None, precision: int) -> int:
    """Exact probability that no k of n sticks form a k-gon."""
    query = engine.KGonQuery(n, k)
    closed = _closed_form(n, k)
    value = engine.probability(query)
    records = []
    if closed is not None:
        records.append(OutputRecord.exact(n, k, "theorem", closed, precision))
    if closed is None or cross_check:
        records.append(OutputRecord.exact(n, k, "engine", value, precision))
    status = EXIT_OK
    if cross_check:
        records.append(OutputRecord.exact(n, k, "oracle", oracle.probability_oracle(query), precision))
        if k <= n <= oracle.GRID_MAX_N:
            resolution = 256
            grid = oracle.grid_volume_estimate(query, resolution)
            records.append(OutputRecord(n, k, "grid", decimal_string(grid, precision),
                                        extra={"resolution": resolution}))
        exact_values = {Fraction(r.p_exact) for r in records if r.p_exact is not None}
        if len(exact_values) != 1:
            status = EXIT_MISMATCH
    _write(render_records("exact", records, fmt), output)
    return status


def _coeff_text(n: int, k: int) -> str:
    if n < k:
        return ""
    final = engine.coefficient_trace((n, k))[-1]
    return " ".join(str(c) for c in (final.a, *final.b)) + f" / {final.divisor}"


@cli.command()
@click.option("--max-n", type=int, required=True)
@click.option("--k", "k_list", type=int, multiple=True, required=True, help="Repeatable.")
@format_option
@output_option
@precision_option
@_guard
def table(max_n: int, k_list: tuple[int, ...], fmt: str, output: str | None, precision: int) -> int:
    """One row per (n, k): exact ratio, decimal, and final engine coefficients.

    The coeffs column reads "a b_1 ... b_{k-2} / divisor" and is empty for n < k.
    """
    if max_n < 1:
        raise DomainError(f"max-n must be >= 1, got {max_n}")
    rows = []
    for k in k_list:
        for n in range(1, max_n + 1):
            p = engine.probability(engine.KGonQuery(n, k))
            rows.append((n, k, p.numerator, p.denominator, decimal_string(p, precision), _coeff_text(n, k)))
    if fmt == "csv":
        text = _csv_text(TABLE_FIELDS, rows)
    elif fmt == "json":
        text = _json_text("table", [dict(zip(TABLE_FIELDS, row)) for row in rows])
    else:
        text = "".join(f"n={n:<3} k={k:<3} {num}/{den:<22} {dec:<20} {co}".rstrip() + "\n"
                       for n, k, num, den, dec, co in rows)
    _write(text, output)
    return EXIT_OK


@cli.command()
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, default=3, show_default=True)
@click.option("--trials", type=int, default=1_000_000, show_default=True)
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=0, show_default=True)
@click.option("--chunk-size", type=int, default=mc.DEFAULT_CHUNK_SIZE, show_default=True)
@click.option("--threads", type=click.IntRange(min=1), default=None,
              help=f"Worker threads (speed only). Defaults to ${mc.THREADS_ENV} or the CPU count.")
@click.option("--event", type=click.Choice(["no-kgon", "cannot-ngon"]), default="no-kgon", show_default=True,
              help="cannot-ngon: all n sticks fail to close an n-gon (k ignored).")
@format_option
@output_option
@precision_option
@_guard
def simulate(n, k, trials, seed, chunk_size, threads, event, fmt, output, precision) -> int:
    """Seeded Monte Carlo estimate with a 4-sigma check against the exact value.

    Ties count as "no k-gon" (sum of k-1 lengths <= the largest) and as
    "cannot form" for the n-gon event (largest >= sum of the rest).
    """
    config = mc.TrialConfig(n=n, k=k, trials=trials, seed=seed, chunk_size=chunk_size)
    if event == "cannot-ngon":
        est = mc.estimate_cannot_ngon(config, threads=threads)
        exact_value = seq.p_cannot_ngon(n)
        k_out = n
    else:
        est = mc.estimate(config, threads=threads)
        exact_value = engine.probability(engine.KGonQuery(n, k))
        k_out = k
    passed = est.within(float(exact_value))
    record = OutputRecord(
        n, k_out, "montecarlo", decimal_string(est.p_hat, precision), None,
        {
            "event": event,
            "trials": est.trials,
            "successes": est.successes,
            "seed": seed,
            "chunk_size": chunk_size,
            "ci_low": decimal_string(est.ci_low, precision),
            "ci_high": decimal_string(est.ci_high, precision),
            "exact": ratio_string(exact_value),
            "exact_decimal": decimal_string(exact_value, precision),
            "within_4sigma": "pass" if passed else "fail",
        },
    )
    _write(render_records("simulate", [record], fmt), output)
    return EXIT_OK


@dataclass
class VerificationReport:
    lines: list[str] = field(default_factory=list)
    first_failure: tuple[int, int] | None = None

    def check(self, label: str, ok: bool, n: int, k: int) -> None:
        self.lines.append(f"{'PASS' if ok else 'FAIL'}  {label}")
        if not ok and self.first_failure is None:
            self.first_failure = (n, k)

    @property
    def ok(self) -> bool:
        return self.first_failure is None


def run_verification(max_n: int, max_k: int, grid: bool = True) -> VerificationReport:
    """Cross-method identity suite behind ``pickup-sticks verify``."""
    if max_n < 3 or max_k < 3:
        raise DomainError(f"verify needs max-n >= 3 and max-k >= 3, got {max_n}, {max_k}")
    report = VerificationReport()
    for n in range(1, max_n + 1):
        report.check(f"engine({n},3) = 1/(F_1...F_{n})",
                     engine.probability((n, 3)) == seq.p_no_triangle(n), n, 3)
        if max_k >= 4:
            report.check(f"engine({n},4) = Tribonacci closed form",
                         engine.probability((n, 4)) == seq.p_no_quadrilateral(n), n, 4)
    for k in range(3, max_k + 1):
        for n in range(1, max_n + 1):
            report.check(f"engine({n},{k}) = oracle({n},{k})",
                         engine.probability((n, k)) == oracle.probability_oracle((n, k)), n, k)
    for k in range(3, max(max_k, max_n) + 1):
        report.check(f"engine({k},{k}) = 1/{k - 1}!",
                     engine.probability((k, k)) == Fraction(1, math.factorial(k - 1)), k, k)
    if max_n >= 3:
        fib = seq.fibonacci(max_n + 2)
        trace = engine.coefficient_trace((max_n, 3))
        # step i has (a, b_1) = (F_{i+2}, F_{i+1}); the initial state is i = 0 read as (1, 1)
        ok = all((s.a, s.b[0]) == (fib[i + 1], fib[i]) for i, s in enumerate(trace[1:], start=1))
        report.check(f"trace({max_n},3) follows Fibonacci", ok and trace[0].b == (1,), max_n, 3)
    if max_n >= 4 and max_k >= 4:
        tri = seq.tribonacci(max_n + 2)
        trace = engine.coefficient_trace((max_n, 4))
        ok = all(s.b[1] == tri[i] for i, s in enumerate(trace))
        ok = ok and all(cur.a - cur.b[0] == prev.b[1] and cur.b[1] == prev.b[0]
                        for prev, cur in zip(trace, trace[1:]))
        report.check(f"trace({max_n},4) follows Tribonacci (R-S=T_prev, T=S_prev)", ok, max_n, 4)
    if grid:
        for n, k, res in GRID_CASES:
            if n <= max_n and k <= max_k:
                est = oracle.grid_volume_estimate((n, k), res)
                err = abs(est - float(engine.probability((n, k))))
                report.check(f"grid({n},{k}) at resolution {res} within {GRID_TOLERANCE} (err {err:.2e})",
                             err <= GRID_TOLERANCE, n, k)
    return report


@cli.command()
@click.option("--max-n", type=int, default=25, show_default=True)
@click.option("--max-k", type=int, default=8, show_default=True)
@click.option("--no-grid", is_flag=True, help="Skip the numeric grid checks.")
@output_option
@_guard
def verify(max_n: int, max_k: int, no_grid: bool, output: str | None) -> int:
    """Run every cross-method identity; exit 1 on the first mismatch."""
    report = run_verification(max_n, max_k, grid=not no_grid)
    passed = sum(line.startswith("PASS") for line in report.lines)
    summary = f"{passed}/{len(report.lines)} checks passed"
    if not report.ok:
        n, k = report.first_failure
        summary += f"; first failure at (n={n}, k={k})"
    _write("\n".join(report.lines + [summary]) + "\n", output)
    return EXIT_OK if report.ok else EXIT_MISMATCH


@cli.command()
@click.option("--k", type=int, required=True, help="Window size: each term sums k-1 predecessors.")
@click.option("--count", type=int, required=True)
@format_option
@output_option
@_guard
def sequence(k: int, count: int, fmt: str, output: str | None) -> int:
    """Print the k-step Fibonacci-type sequence (k=3 Fibonacci, k=4 Tribonacci)."""
    terms = seq.kbonacci(seq.SequenceSpec(k, count))
    if fmt == "json":
        text = _json_text("sequence", [{"index": i, "value": t} for i, t in enumerate(terms, start=1)])
    elif fmt == "csv":
        text = _csv_text(("index", "value"), enumerate(terms, start=1))
    else:
        text = " ".join(map(str, terms)) + "\n"
    _write(text, output)
    return EXIT_OK


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
