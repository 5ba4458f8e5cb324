"""Timing harness for the density recursion versus the brute-force baseline.

Wall-clock seconds depend on the machine, so each report also records a
deterministic cost proxy: the recursion visits exactly sum_{m=1}^{N-1} d(m)
factor pairs to reach limit N (d = number-of-divisors), while the
enumeration baseline visits a chain-prefix tree whose size grows faster
than any polynomial.  The proxy makes the scaling claim checkable without
trusting a clock.
"""

import csv
import io
import time
from dataclasses import dataclass
from statistics import median

from . import _kernels
from .density import bruteforce_node_count, cp_density, cp_density_bruteforce
from .errors import ParameterError

_RUNS = 3


@dataclass(frozen=True)
class BenchReport:
    """Rows of (limit, wall seconds, pair visits) under one method tag."""

    method: str
    rows: tuple

    def __post_init__(self):
        limits = [row[0] for row in self.rows]
        if any(b <= a for a, b in zip(limits, limits[1:])):
            raise ParameterError(f"limits must be strictly increasing, got {limits}")


def _timed(run):
    """Median wall time of `_RUNS` calls, single-threaded."""
    samples = []
    for _ in range(_RUNS):
        start = time.perf_counter()
        run()
        samples.append(time.perf_counter() - start)
    return median(samples)


def bench_density(law, limits, backend=None):
    """Time `cp_density` at each limit (median of 3 runs).

    One untimed warm-up call at the largest limit primes the shared factor
    sieve and any jit compilation, so the timed runs measure the recursion
    itself.  The method tag records which kernel backend actually ran.
    """
    limits = [int(x) for x in limits]
    chosen = _kernels.resolve_backend(backend)
    cp_density(law, limits[-1] if limits else 1, backend=chosen)
    rows = []
    for limit in limits:
        seconds = _timed(lambda: cp_density(law, limit, backend=chosen))
        rows.append((limit, seconds, _kernels.pair_visit_total(limit, backend=chosen)))
    return BenchReport(method=f"recursion-{chosen}", rows=tuple(rows))


def bench_bruteforce(law, limits):
    """Time the exponential enumeration baseline at each (small) limit.

    The cost column records enumeration tree nodes rather than factor
    pairs; resource caps from the enumerator propagate unchanged.
    """
    limits = [int(x) for x in limits]
    rows = []
    for limit in limits:
        seconds = _timed(lambda: cp_density_bruteforce(law, limit))
        rows.append((limit, seconds, bruteforce_node_count(limit)))
    return BenchReport(method="bruteforce", rows=tuple(rows))


def bench_to_csv(report, stream=None):
    """Write ``limit,seconds,pair_visits,method`` rows; returns text when no stream given."""
    own = stream is None
    out = io.StringIO() if own else stream
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["limit", "seconds", "pair_visits", "method"])
    for limit, seconds, visits in report.rows:
        writer.writerow([limit, f"{seconds:.17g}", visits, report.method])
    if own:
        return out.getvalue()
    return None


def bench_to_dict(report):
    return {
        "method": report.method,
        "rows": [
            {"limit": limit, "seconds": seconds, "pair_visits": visits}
            for limit, seconds, visits in report.rows
        ],
    }
