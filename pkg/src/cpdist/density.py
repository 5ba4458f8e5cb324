"""Density of the compound-product variable X on {1, 2, ...}.

X solves X = A X + 1 in distribution.  Conditioning on the first multiplier
gives the recursion

    P(X = 1) = P(A = 0)
    P(X = n) = sum over factor pairs i * j = n - 1 of P(A = i) P(X = j)

which the fast path evaluates with one divisor sieve.  A brute-force
enumerator over terminating multiplier chains serves as an independent
oracle for small limits.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from . import _kernels, divisors
from .alaw import ALaw, pmf, pmf_vector
from .errors import ResourceError

DEFAULT_LIMIT_CAP = 10_000_000
BRUTEFORCE_MAX_LIMIT = 14


@dataclass(frozen=True, eq=False)
class CpDensity:
    """P(X = n) for n = 1..limit; ``probs[0]`` is unused padding."""

    law: ALaw
    limit: int
    probs: np.ndarray = field(repr=False)

    @property
    def tail_mass(self) -> float:
        """Probability mass beyond the computed range, clipped at 0."""
        return max(0.0, 1.0 - float(self.probs[1:].sum()))

    def prob(self, n: int) -> float:
        if not 1 <= n <= self.limit:
            raise ValueError(f"n must be in 1..{self.limit}, got {n}")
        return float(self.probs[n])


def cp_density(
    law: ALaw,
    limit: int,
    backend: str | None = None,
    compensated: bool = False,
    limit_cap: int = DEFAULT_LIMIT_CAP,
) -> CpDensity:
    """Density at 1..limit via the factor-pair recursion.

    ``compensated=True`` switches to Kahan summation inside each n, kept as
    a verification flag.  ``backend`` overrides the numba/numpy selection.
    """
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    if limit > limit_cap:
        raise ResourceError(f"limit {limit} exceeds the cap {limit_cap}")
    pmf_a = pmf_vector(law, max(limit, 2))
    chosen = _kernels.resolve_backend(backend)
    spf = None
    if chosen == "numba" or compensated:
        spf = divisors.shared_sieve(max(limit - 1, 1), backend=chosen).spf
    probs = _kernels.density_recursion(
        pmf_a, limit, spf=spf, backend=chosen, compensated=compensated
    )
    probs.setflags(write=False)
    return CpDensity(law=law, limit=limit, probs=probs)


def cp_density_bruteforce(law: ALaw, limit: int) -> CpDensity:
    """Exhaustive enumeration of terminating multiplier chains (exponential cost).

    Each chain draws a_1, a_2, ... >= 1 and stops at the first 0, reaching
    the value 1 + a_1 + a_1 a_2 + ...; chains whose partial value exceeds
    the limit are pruned.  Independent of the sieve and of the cached pmf
    vector, so it can act as an oracle for the recursion.
    """
    probs, _ = _bruteforce_enumerate(law, limit)
    probs.setflags(write=False)
    return CpDensity(law=law, limit=limit, probs=probs)


def bruteforce_node_count(limit: int) -> int:
    """Number of chain prefixes the brute-force enumeration visits.

    Law-independent: the prefix tree is fixed by the pruning limit.  Used by
    the benchmark as a deterministic proxy for the enumeration cost.
    """
    law = ALaw.poisson(1.0)  # any admissible law; counts do not depend on it
    _, nodes = _bruteforce_enumerate(law, limit)
    return nodes


def _bruteforce_enumerate(law: ALaw, limit: int) -> tuple[np.ndarray, int]:
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    if limit > BRUTEFORCE_MAX_LIMIT:
        raise ResourceError(
            f"brute-force enumeration is exponential; limit {limit} exceeds {BRUTEFORCE_MAX_LIMIT}"
        )
    p_zero = pmf(law, 0)
    probs = np.zeros(limit + 1, dtype=np.float64)
    nodes = 0

    def visit(s: int, q: int, weight: float) -> None:
        nonlocal nodes
        nodes += 1
        probs[s] += weight * p_zero
        a = 1
        while s + q * a <= limit:
            visit(s + q * a, q * a, weight * pmf(law, a))
            a += 1

    visit(1, 1, 1.0)
    return probs, nodes


def tail_mass_at(density: CpDensity) -> float:
    """1 minus the computed partial sum; the mass assigned beyond the limit."""
    return density.tail_mass


def density_to_rows(density: CpDensity):
    """Yield (n, prob) pairs for n = 1..limit."""
    for n in range(1, density.limit + 1):
        yield n, float(density.probs[n])


def density_to_csv(density: CpDensity, stream: io.TextIOBase | None = None) -> str | None:
    """Write ``n,prob`` rows (with header); returns the text when no stream given."""
    own = stream is None
    out = io.StringIO() if own else stream
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["n", "prob"])
    for n, p in density_to_rows(density):
        writer.writerow([n, f"{p:.17g}"])
    if own:
        return out.getvalue()
    return None


def density_to_dict(density: CpDensity) -> dict:
    """JSON-ready mapping: family, params, limit, tail mass and the prob array."""
    return {
        "family": density.law.family,
        "params": density.law.params_dict(),
        "limit": density.limit,
        "tail_mass": density.tail_mass,
        "probs": [float(x) for x in density.probs[1:]],
    }
