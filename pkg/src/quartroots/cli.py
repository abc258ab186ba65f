"""Batch front-end: solve coefficient files, verify against the oracle, and
benchmark the closed-form path.

Input is one record per line, CSV (``id,e4,e3,e2,e1,e0``, optional header) or
JSON lines (``{"id": ..., "coeffs": [e4, e3, e2, e1, e0]}``), picked by file
extension and overridable with ``--format``.  Output is line-delimited in the
same two flavors.  Exit codes: 0 ok, 1 I/O failure, 2 malformed records
present, 3 oracle disagreement (``check`` only).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import statistics
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import backend
from .cubic import solve_lower_degree
from .oracle import oracle_real_roots
from .polycore import (
    DomainError,
    LowerDegreeProblem,
    MonicQuartic,
    RawCoefficients,
    ZeroPolynomialError,
    normalize,
    residual,
)
from .quartic import SolveOptions, solve_quartic

__all__ = [
    "JobRecord",
    "ResultRecord",
    "BenchReport",
    "vieta_coefficients",
    "run_bench",
    "main",
]

_LOWER_NAMES = {3: "cubic", 2: "quadratic", 1: "linear", 0: "constant"}


@dataclass(frozen=True)
class JobRecord:
    """One parsed input line: an id, five coefficients, optional overrides."""

    id: str
    coeffs: tuple[float, float, float, float, float]
    polish: bool | None = None
    tol: float | None = None


@dataclass
class ResultRecord:
    """One output line; ``error`` is set instead of roots for bad records."""

    id: str
    klass: str = ""
    real_roots: list[tuple[float, int]] = field(default_factory=list)
    complex_pairs: list[tuple[float, float]] = field(default_factory=list)
    branch: str = ""
    max_residual: float = 0.0
    time_ns: int = 0
    error: str | None = None
    oracle_agreement: bool | None = None


# ---------------------------------------------------------------------------
# parsing


def _parse_float(text: str) -> float:
    value = float(text)
    if not math.isfinite(value):
        raise ValueError(f"non-finite coefficient {text!r}")
    return value


def _is_csv_header(fields: list[str]) -> bool:
    if not fields:
        return False
    if fields[0].strip().lower() == "id":
        return True
    # A header's coefficient columns are all labels; a data line (even a
    # malformed one) has at least one numeric field there.
    numeric = 0
    for item in fields[1:6]:
        try:
            float(item)
        except ValueError:
            continue
        numeric += 1
    return numeric == 0


def _iter_csv(handle: io.TextIOBase):
    reader = csv.reader(handle)
    first = True
    for line_no, fields in enumerate(reader, start=1):
        if not fields or all(not f.strip() for f in fields):
            continue
        if first:
            first = False
            if _is_csv_header(fields):
                continue
        yield line_no, fields


def _parse_csv_fields(fields: list[str]) -> JobRecord:
    if len(fields) != 6:
        raise ValueError(f"expected 6 fields (id + 5 coefficients), got {len(fields)}")
    coeffs = tuple(_parse_float(f) for f in fields[1:6])
    return JobRecord(fields[0].strip(), coeffs)


def _parse_json_line(line: str) -> JobRecord:
    obj = json.loads(line)
    if not isinstance(obj, dict):
        raise ValueError("record must be a JSON object")
    if "id" not in obj or "coeffs" not in obj:
        raise ValueError("record needs 'id' and 'coeffs'")
    coeffs = obj["coeffs"]
    if not isinstance(coeffs, list) or len(coeffs) != 5:
        raise ValueError("'coeffs' must hold exactly 5 numbers")
    parsed = tuple(_parse_float(str(x)) for x in coeffs)
    options = obj.get("options") or {}
    polish = options.get("polish")
    tol = options.get("tol")
    return JobRecord(
        str(obj["id"]),
        parsed,
        polish if isinstance(polish, bool) else None,
        float(tol) if tol is not None else None,
    )


def _detect_format(path: str, override: str | None) -> str:
    if override:
        return override
    if path.lower().endswith(".csv"):
        return "csv"
    return "jsonl"


def _read_jobs(path: str, fmt: str):
    """Yield (JobRecord | None, error_message | None, raw_id) per input line."""
    seen: set[str] = set()
    with open(path, "r", encoding="utf-8", newline="") as handle:
        if fmt == "csv":
            entries = _iter_csv(handle)
            for line_no, fields in entries:
                raw_id = fields[0].strip() if fields else f"line{line_no}"
                try:
                    job = _parse_csv_fields(fields)
                except ValueError as exc:
                    yield None, str(exc), raw_id
                    continue
                if job.id in seen:
                    yield None, f"duplicate id {job.id!r}", job.id
                    continue
                seen.add(job.id)
                yield job, None, job.id
        else:
            for line_no, line in enumerate(handle, start=1):
                if not line.strip():
                    continue
                raw_id = f"line{line_no}"
                try:
                    job = _parse_json_line(line)
                except (ValueError, json.JSONDecodeError) as exc:
                    yield None, str(exc), raw_id
                    continue
                if job.id in seen:
                    yield None, f"duplicate id {job.id!r}", job.id
                    continue
                seen.add(job.id)
                yield job, None, job.id


# ---------------------------------------------------------------------------
# solving


def _solve_job(job: JobRecord, opts: SolveOptions) -> ResultRecord:
    if job.polish is not None:
        opts = SolveOptions(
            polish_iters=2 if job.polish else 0,
            q_band=opts.q_band,
            radicand_band=opts.radicand_band,
            d0_band=opts.d0_band,
        )
    record = ResultRecord(id=job.id)
    start = time.perf_counter_ns()
    try:
        problem = normalize(RawCoefficients(*job.coeffs))
        if isinstance(problem, MonicQuartic):
            report = solve_quartic(problem, opts)
            record.klass = report.classification.value
            record.real_roots = list(report.roots.real_roots)
            record.complex_pairs = list(report.roots.complex_pairs)
            record.branch = report.branch.value
            record.max_residual = report.max_residual
        else:
            record.klass = _LOWER_NAMES[problem.degree]
            record.branch = "lower_degree"
            reals, pairs = solve_lower_degree(problem)
            record.real_roots = reals
            record.complex_pairs = pairs
            record.max_residual = _lower_residual(problem, reals)
    except ZeroPolynomialError:
        record.error = "identically zero polynomial"
        record.klass = "error"
    except DomainError as exc:
        record.error = str(exc)
        record.klass = "error"
    record.time_ns = time.perf_counter_ns() - start
    return record


def _lower_residual(problem: LowerDegreeProblem, reals: list[tuple[float, int]]) -> float:
    worst = 0.0
    coeffs = (1.0,) + problem.coefficients
    for x, _ in reals:
        acc = 0.0
        for coef in coeffs:
            acc = acc * x + coef
        worst = max(worst, abs(acc) / (1.0 + abs(x) ** problem.degree))
    return worst


# ---------------------------------------------------------------------------
# serialization


def _record_to_json(record: ResultRecord, with_timing: bool) -> str:
    payload: dict = {"id": record.id, "class": record.klass}
    if record.error is not None:
        payload["error"] = record.error
    else:
        payload["real_roots"] = [[v, m] for v, m in record.real_roots]
        payload["complex_pairs"] = [[re, im] for re, im in record.complex_pairs]
        payload["branch"] = record.branch
        payload["max_residual"] = record.max_residual
    if record.oracle_agreement is not None:
        payload["oracle_agreement"] = record.oracle_agreement
    if with_timing:
        payload["time_ns"] = record.time_ns
    return json.dumps(payload)


_CSV_COLUMNS = [
    "id",
    "class",
    "real_roots",
    "complex_pairs",
    "branch",
    "max_residual",
    "time_ns",
    "error",
]


def _record_to_csv_row(record: ResultRecord, with_timing: bool) -> list[str]:
    return [
        record.id,
        record.klass,
        ";".join(f"{v!r}@{m}" for v, m in record.real_roots),
        ";".join(f"{re!r}@{im!r}" for re, im in record.complex_pairs),
        record.branch,
        repr(record.max_residual),
        str(record.time_ns) if with_timing else "",
        record.error or "",
    ]


def _write_records(path: str, fmt: str, records, with_timing: bool) -> None:
    out = sys.stdout if path == "-" else open(path, "w", encoding="utf-8", newline="")
    try:
        if fmt == "csv":
            writer = csv.writer(out, lineterminator="\n")
            writer.writerow(_CSV_COLUMNS)
            for record in records:
                writer.writerow(_record_to_csv_row(record, with_timing))
        else:
            for record in records:
                out.write(_record_to_json(record, with_timing) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()


# ---------------------------------------------------------------------------
# commands


def cmd_solve(args: argparse.Namespace) -> int:
    opts = SolveOptions(polish_iters=0 if args.no_polish else 2)
    in_fmt = _detect_format(args.input, args.format)
    out_fmt = _detect_format(args.output, args.format)
    records: list[ResultRecord] = []
    had_errors = False
    try:
        for job, error, raw_id in _read_jobs(args.input, in_fmt):
            if job is None:
                records.append(ResultRecord(id=raw_id, klass="error", error=error))
                had_errors = True
                continue
            record = _solve_job(job, opts)
            had_errors = had_errors or record.error is not None
            records.append(record)
    except OSError as exc:
        print(f"error: cannot read {args.input}: {exc}", file=sys.stderr)
        return 1
    try:
        _write_records(args.output, out_fmt, records, not args.no_timing)
    except OSError as exc:
        print(f"error: cannot write {args.output}: {exc}", file=sys.stderr)
        return 1
    return 2 if had_errors else 0


def _multiset_agreement(
    closed: list[float], oracle: list[float], tol: float
) -> tuple[bool, float]:
    if len(closed) != len(oracle):
        return False, math.inf
    if not closed:
        return True, 0.0
    deviation = max(
        abs(x - y) / (1.0 + max(abs(x), abs(y)))
        for x, y in zip(sorted(closed), sorted(oracle))
    )
    return deviation <= tol, deviation


def cmd_check(args: argparse.Namespace) -> int:
    opts = SolveOptions(polish_iters=0 if args.no_polish else 2)
    in_fmt = _detect_format(args.input, args.format)
    oracle_tol = min(1e-9, args.tol)
    total = agreed = 0
    had_parse_errors = False
    worst_id = ""
    worst_dev = 0.0
    try:
        for job, error, raw_id in _read_jobs(args.input, in_fmt):
            if job is None:
                print(f"{raw_id}: parse error: {error}")
                had_parse_errors = True
                continue
            tol = job.tol if job.tol is not None else args.tol
            try:
                problem = normalize(RawCoefficients(*job.coeffs))
            except DomainError as exc:
                print(f"{job.id}: error: {exc}")
                had_parse_errors = True
                continue
            if not isinstance(problem, MonicQuartic):
                print(f"{job.id}: skipped (degree {problem.degree})")
                continue
            report = solve_quartic(problem, opts)
            reference = oracle_real_roots(problem, tol=oracle_tol)
            ok, deviation = _multiset_agreement(
                report.roots.real_values(),
                [v for v, m in reference for _ in range(m)],
                tol,
            )
            total += 1
            if ok:
                agreed += 1
            else:
                print(f"{job.id}: disagreement (deviation {deviation:.3e})")
            if args.verbose:
                record = ResultRecord(
                    id=job.id,
                    klass=report.classification.value,
                    real_roots=list(report.roots.real_roots),
                    complex_pairs=list(report.roots.complex_pairs),
                    branch=report.branch.value,
                    max_residual=report.max_residual,
                    oracle_agreement=ok,
                )
                print(_record_to_json(record, with_timing=False))
            if deviation > worst_dev or (math.isinf(deviation) and not math.isinf(worst_dev)):
                worst_dev = deviation
                worst_id = job.id
    except OSError as exc:
        print(f"error: cannot read {args.input}: {exc}", file=sys.stderr)
        return 1
    print(
        f"{agreed}/{total} agree; max deviation {worst_dev:.3e}"
        + (f" (worst id {worst_id})" if worst_id else "")
    )
    if agreed != total:
        return 3
    if had_parse_errors:
        return 2
    return 0


# ---------------------------------------------------------------------------
# benchmark


def vieta_coefficients(roots: np.ndarray) -> np.ndarray:
    """Monic coefficient rows (a, b, c, d) from an (n, 4) array of real roots."""
    r1, r2, r3, r4 = (roots[:, k] for k in range(4))
    a = -(r1 + r2 + r3 + r4)
    b = r1 * r2 + r1 * r3 + r1 * r4 + r2 * r3 + r2 * r4 + r3 * r4
    c = -(r1 * r2 * r3 + r1 * r2 * r4 + r1 * r3 * r4 + r2 * r3 * r4)
    d = r1 * r2 * r3 * r4
    return np.column_stack([a, b, c, d])


def _bench_corpus(regime: str, count: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    if regime == "all-real":
        return vieta_coefficients(rng.uniform(-10.0, 10.0, (count, 4)))
    if regime == "mixed":
        return rng.uniform(-100.0, 100.0, (count, 4))
    if regime == "biquadratic":
        coeffs = np.zeros((count, 4))
        coeffs[:, 1] = rng.uniform(-50.0, 50.0, count)
        coeffs[:, 3] = rng.uniform(-50.0, 50.0, count)
        return coeffs
    raise ValueError(f"unknown regime {regime!r}")


@dataclass
class BenchReport:
    """Timing summary of a benchmark run.

    Per-instance stats include the Python call overhead; ``branch_batch_ns``
    re-times each branch's instances through the batch entry point, which is
    the honest kernel-cost comparison between the trigonometric and
    cube-root paths.
    """

    regime: str
    count: int
    seed: int
    backend: str
    branch_stats: dict[str, dict[str, float]]  # name -> n/share/mean_ns/median_ns
    branch_batch_ns: dict[str, float]  # name -> per-instance ns, batch timed
    closed_mean_ns: float
    oracle_sample: int
    oracle_mean_ns: float
    speedup_vs_oracle: float
    backend_batch_ns: dict[str, float]  # backend name -> per-instance batch ns

    def lines(self) -> list[str]:
        out = [
            f"regime={self.regime} count={self.count} seed={self.seed} "
            f"backend={self.backend}"
        ]
        for name, stats in sorted(self.branch_stats.items()):
            batch = self.branch_batch_ns.get(name)
            batch_part = f" batch={batch:.0f}ns" if batch is not None else ""
            out.append(
                f"branch {name}: n={int(stats['n'])} ({stats['share'] * 100:.1f}%)"
                f" mean={stats['mean_ns']:.0f}ns median={stats['median_ns']:.0f}ns"
                + batch_part
            )
        out.append(f"closed-form mean: {self.closed_mean_ns:.0f}ns/solve")
        out.append(
            f"oracle mean (sampled {self.oracle_sample}): "
            f"{self.oracle_mean_ns:.0f}ns/solve"
        )
        out.append(f"closed-form speedup vs oracle: {self.speedup_vs_oracle:.1f}x")
        for name, per_ns in sorted(self.backend_batch_ns.items()):
            out.append(f"batch backend {name}: {per_ns:.0f}ns/solve")
        return out


_BRANCH_NAMES = {0: "biquadratic", 1: "trig", 2: "cardano", 3: "triple_root"}


def run_bench(
    count: int,
    seed: int = 0,
    regime: str = "all-real",
    polish: bool = True,
    oracle_sample: int | None = None,
    compare_backends: bool = False,
) -> BenchReport:
    """Generate ``count`` quartics, time the closed form per branch, and time
    the bisection oracle on a sample (it is far too slow to run on the whole
    corpus at large counts; means are what get compared)."""
    if count <= 0:
        raise ValueError("count must be > 0")
    coeffs = _bench_corpus(regime, count, seed)
    kernel = backend.active()
    polish_iters = 2 if polish else 0

    timings: dict[int, list[int]] = {}
    members: dict[int, list[int]] = {}
    solve = kernel.solve_quartic_raw
    clock = time.perf_counter_ns
    rows = coeffs.tolist()
    for i, (a, b, c, d) in enumerate(rows):
        t0 = clock()
        result = solve(a, b, c, d, 1e-12, 1e-10, 1e-13, polish_iters)
        t1 = clock()
        timings.setdefault(result[0], []).append(t1 - t0)
        members.setdefault(result[0], []).append(i)

    branch_stats = {}
    branch_batch_ns = {}
    total_ns = 0
    for code, samples in timings.items():
        total_ns += sum(samples)
        name = _BRANCH_NAMES.get(code, f"code{code}")
        branch_stats[name] = {
            "n": float(len(samples)),
            "share": len(samples) / count,
            "mean_ns": statistics.fmean(samples),
            "median_ns": float(statistics.median(samples)),
        }
        subset = np.ascontiguousarray(coeffs[members[code]])
        t0 = clock()
        kernel.solve_batch(subset, 1e-12, 1e-10, 1e-13, polish_iters)
        branch_batch_ns[name] = (clock() - t0) / subset.shape[0]
    closed_mean = total_ns / count

    sample = min(count, oracle_sample if oracle_sample is not None else 2000)
    t0 = clock()
    for i in range(sample):
        oracle_real_roots(MonicQuartic(*rows[i]), tol=1e-9)
    oracle_mean = (clock() - t0) / sample

    batch_ns: dict[str, float] = {}
    if compare_backends:
        for name in backend.available():
            mod = backend.get(name)
            t0 = clock()
            mod.solve_batch(coeffs, 1e-12, 1e-10, 1e-13, polish_iters)
            batch_ns[name] = (clock() - t0) / count

    return BenchReport(
        regime=regime,
        count=count,
        seed=seed,
        backend=kernel.NAME,
        branch_stats=branch_stats,
        branch_batch_ns=branch_batch_ns,
        closed_mean_ns=closed_mean,
        oracle_sample=sample,
        oracle_mean_ns=oracle_mean,
        speedup_vs_oracle=oracle_mean / closed_mean if closed_mean else math.inf,
        backend_batch_ns=batch_ns,
    )


def cmd_bench(args: argparse.Namespace) -> int:
    report = run_bench(
        count=args.count,
        seed=args.seed,
        regime=args.regime,
        polish=not args.no_polish,
        oracle_sample=args.oracle_sample,
        compare_backends=args.compare_backends,
    )
    if args.json:
        payload = {
            "regime": report.regime,
            "count": report.count,
            "seed": report.seed,
            "backend": report.backend,
            "branch_stats": report.branch_stats,
            "branch_batch_ns": report.branch_batch_ns,
            "closed_mean_ns": report.closed_mean_ns,
            "oracle_sample": report.oracle_sample,
            "oracle_mean_ns": report.oracle_mean_ns,
            "speedup_vs_oracle": report.speedup_vs_oracle,
            "backend_batch_ns": report.backend_batch_ns,
        }
        print(json.dumps(payload))
    else:
        for line in report.lines():
            print(line)
    return 0


# ---------------------------------------------------------------------------
# entry point


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quartroots",
        description="Closed-form quartic root solving over coefficient batches.",
    )
    parser.add_argument(
        "--backend",
        choices=("python", "compiled"),
        help="force a kernel backend (default: compiled when available)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve records from a file")
    p_solve.add_argument("input")
    p_solve.add_argument("output", help="output path, or - for stdout")
    p_solve.add_argument("--format", choices=("csv", "jsonl"))
    p_solve.add_argument("--no-polish", action="store_true")
    p_solve.add_argument(
        "--no-timing",
        action="store_true",
        help="omit time_ns so identical inputs give byte-identical outputs",
    )
    p_solve.set_defaults(func=cmd_solve)

    p_check = sub.add_parser("check", help="verify solutions against the oracle")
    p_check.add_argument("input")
    p_check.add_argument("--format", choices=("csv", "jsonl"))
    p_check.add_argument("--tol", type=float, default=1e-7)
    p_check.add_argument("--no-polish", action="store_true")
    p_check.add_argument(
        "--verbose",
        action="store_true",
        help="emit one result record (with oracle_agreement) per line",
    )
    p_check.set_defaults(func=cmd_check)

    p_bench = sub.add_parser("bench", help="time closed form vs oracle")
    p_bench.add_argument("--count", type=int, default=10000)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument(
        "--regime", choices=("all-real", "mixed", "biquadratic"), default="all-real"
    )
    p_bench.add_argument("--no-polish", action="store_true")
    p_bench.add_argument(
        "--oracle-sample",
        type=int,
        default=None,
        help="instances used to estimate oracle time (default min(count, 2000))",
    )
    p_bench.add_argument("--compare-backends", action="store_true")
    p_bench.add_argument("--json", action="store_true")
    p_bench.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.backend:
        try:
            backend.use(args.backend)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
