"""Randomized ensemble sweeps over the bound suite.

Each sample is drawn from its own Philox stream keyed by ``(seed, cell,
index)``, with ``cell`` the degree, so output does not depend on how work
is split across processes.
"""

from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from .bounds import BOUND_IDS, NotSeparableError, check_all
from .measures import discriminant_exact, discriminant_from_roots
from .poly import RootSet, from_coefficients
from .rootfind import SEPARABLE_TOL, RootFindingError, SolverConfig, find_roots

CSV_HEADER = "# mahler-sep sweep v1"
THREADS_ENV = "MAHLER_SEP_THREADS"
KINDS = ("int_coeff", "disk_roots", "real_roots")

BASE_COLUMNS = (
    "cell", "index", "n", "signature", "sep", "abs_sep", "mahler", "disc_abs",
    "disc_abs_from_roots",
)
COLUMNS = BASE_COLUMNS + tuple(
    f"{b}:{field}" for b in BOUND_IDS for field in ("value", "margin", "pass")
) + ("normalized_ratio",)


@dataclass(frozen=True)
class EnsembleSpec:
    kind: str
    degree_min: int
    degree_max: int
    count: int
    seed: int = 42
    height: int = 10
    radius: float = 1.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown ensemble kind {self.kind!r}")
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if self.degree_min < 2 or self.degree_max < self.degree_min:
            raise ValueError("degree range must satisfy 2 <= min <= max")
        if self.height < 1:
            raise ValueError("height must be >= 1")
        if not self.radius > 0:
            raise ValueError("radius must be positive")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in 64 bits")

    @property
    def degrees(self) -> range:
        return range(self.degree_min, self.degree_max + 1)


@dataclass
class SampleResult:
    cell: int
    index: int
    status: str  # "ok", "nonseparable", "solver_failure"
    row: Optional[dict] = None
    violations: int = 0


def sample_rng(seed: int, cell: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, cell, index])))


def draw_sample(spec: EnsembleSpec, n: int, index: int):
    """Return ``(polynomial or None, roots or None, real)`` for one sample."""
    rng = sample_rng(spec.seed, n, index)
    if spec.kind == "int_coeff":
        coeffs = [int(c) for c in rng.integers(-spec.height, spec.height + 1, size=n)] + [1]
        return from_coefficients(coeffs), None, True
    if spec.kind == "disk_roots":
        rad = spec.radius * np.sqrt(rng.random(n))
        ang = 2 * np.pi * rng.random(n)
        return None, RootSet.exact(rad * np.exp(1j * ang)), False
    tol = SEPARABLE_TOL * max(1.0, spec.radius)
    roots: list[float] = []
    while len(roots) < n:
        x = float(rng.uniform(-spec.radius, spec.radius))
        if all(abs(x - y) > tol for y in roots):
            roots.append(x)
    return None, RootSet.exact(complex(x) for x in roots), True


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def run_sample(spec: EnsembleSpec, n: int, index: int, cfg: SolverConfig | None = None) -> SampleResult:
    p, rs, real = draw_sample(spec, n, index)
    if p is not None:
        if discriminant_exact(p) == 0:
            return SampleResult(n, index, "nonseparable")
        try:
            rs = find_roots(p, cfg)
        except RootFindingError:
            return SampleResult(n, index, "solver_failure")
    try:
        rep = check_all(rs, p, real=real)
    except NotSeparableError:
        return SampleResult(n, index, "nonseparable")
    m = rep.measured
    row = {
        "cell": n,
        "index": index,
        "n": n,
        "signature": f"{m.signature.t};{m.signature.s}" if m.signature else None,
        "sep": m.sep,
        "abs_sep": m.abs_sep,
        "mahler": m.mahler,
        "disc_abs": math.exp(m.log_abs_disc) if m.log_abs_disc < 709 else math.inf,
        "disc_abs_from_roots": abs(discriminant_from_roots(rs)),
    }
    for e in rep.entries:
        row[f"{e.bound_id}:value"] = e.value
        row[f"{e.bound_id}:margin"] = e.margin
        row[f"{e.bound_id}:pass"] = e.satisfied
    row["normalized_ratio"] = normalized_ratio(n, m.sep, m.log_mahler)
    return SampleResult(n, index, "ok", row, len(rep.violations))


def normalized_ratio(n: int, sep: float, log_mahler: float) -> float:
    """``sep sqrt(n) / M^{1/(n-1)}``; bounded by 34 for every polynomial."""
    return math.exp(math.log(sep) + 0.5 * math.log(n) - log_mahler / (n - 1))


def _run_chunk(args):
    spec, n, start, stop = args
    return [run_sample(spec, n, i) for i in range(start, stop)]


def worker_count(requested: Optional[int] = None) -> int:
    w = requested or os.cpu_count() or 1
    cap = os.environ.get(THREADS_ENV)
    if cap:
        w = min(w, max(1, int(cap)))
    return max(1, w)


def run_ensemble(spec: EnsembleSpec, workers: Optional[int] = None, chunk: int = 100) -> list[SampleResult]:
    """Run every sample; results come back ordered by (cell, index)."""
    tasks = [
        (spec, n, s, min(s + chunk, spec.count))
        for n in spec.degrees
        for s in range(0, spec.count, chunk)
    ]
    w = worker_count(workers)
    if w == 1:
        chunks = map(_run_chunk, tasks)
        return [r for c in chunks for r in c]
    with ProcessPoolExecutor(max_workers=w) as ex:
        return [r for c in ex.map(_run_chunk, tasks) for r in c]


def rows_to_csv(results) -> str:
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(COLUMNS)
    for r in results:
        if r.status == "ok":
            wr.writerow([_fmt(r.row.get(c)) for c in COLUMNS])
    return buf.getvalue()


def summarize(spec: EnsembleSpec, results) -> dict:
    by_degree: dict = {}
    for r in results:
        d = by_degree.setdefault(r.cell, {
            "samples": 0, "rows": 0, "nonseparable": 0, "solver_failures": 0,
            "violations": 0, "max_normalized_ratio": None,
        })
        d["samples"] += 1
        if r.status == "ok":
            d["rows"] += 1
            d["violations"] += r.violations
            q = r.row["normalized_ratio"]
            if d["max_normalized_ratio"] is None or q > d["max_normalized_ratio"]:
                d["max_normalized_ratio"] = q
        elif r.status == "nonseparable":
            d["nonseparable"] += 1
        else:
            d["solver_failures"] += 1
    return {
        "spec": asdict(spec),
        "samples": sum(d["samples"] for d in by_degree.values()),
        "rows": sum(d["rows"] for d in by_degree.values()),
        "nonseparable": sum(d["nonseparable"] for d in by_degree.values()),
        "solver_failures": sum(d["solver_failures"] for d in by_degree.values()),
        "violations": sum(d["violations"] for d in by_degree.values()),
        "by_degree": {str(k): v for k, v in sorted(by_degree.items())},
    }
