"""Smallest-prime-factor sieve and ordered factor-pair enumeration.

One sieve build amortizes the factorization of every m up to the limit,
which keeps the density recursion near-linear instead of paying a trial
division per value.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import ResourceError

# hard cap on sieve size; ~400 MB of int32 at the default
MAX_SIEVE_LIMIT = 100_000_000


@dataclass(frozen=True, eq=False)
class DivisorSieve:
    """Precomputed smallest prime factors for 1..limit (``spf[1] = 1``, index 0 unused)."""

    limit: int
    spf: np.ndarray = field(repr=False)


def build_sieve(limit: int, backend: str | None = None) -> DivisorSieve:
    if limit < 1:
        raise ValueError(f"sieve limit must be >= 1, got {limit}")
    if limit > MAX_SIEVE_LIMIT:
        raise ResourceError(f"sieve limit {limit} exceeds the cap {MAX_SIEVE_LIMIT}")
    spf = _kernels.spf_sieve(limit, backend=backend)
    spf.setflags(write=False)
    return DivisorSieve(limit=limit, spf=spf)


def factorize(sieve: DivisorSieve, m: int) -> list[tuple[int, int]]:
    """(prime, exponent) pairs of m in ascending prime order."""
    _check_range(sieve, m)
    out = []
    mm = m
    spf = sieve.spf
    while mm > 1:
        p = int(spf[mm])
        e = 0
        while mm % p == 0:
            mm //= p
            e += 1
        out.append((p, e))
    return out


def divisor_count(sieve: DivisorSieve, m: int) -> int:
    """d(m), the product of (exponent + 1) over the prime factorization."""
    count = 1
    for _, e in factorize(sieve, m):
        count *= e + 1
    return count


def factor_pairs(sieve: DivisorSieve, m: int) -> list[tuple[int, int]]:
    """All ordered pairs (i, j) with i * j = m, ascending in i.

    Both (2, 6) and (6, 2) appear: the recursion weights the two pair
    members differently.
    """
    _check_range(sieve, m)
    divs = _kernels._divisors_from_spf(sieve.spf, m)
    return [(i, m // i) for i in divs]


def _check_range(sieve: DivisorSieve, m: int) -> None:
    if not 1 <= m <= sieve.limit:
        raise ValueError(f"m must be in 1..{sieve.limit}, got {m}")


# A shared sieve that grows on demand; density/fitting calls reuse it so the
# build cost is paid once per process.
_shared_lock = threading.Lock()
_shared: DivisorSieve | None = None


def shared_sieve(limit: int, backend: str | None = None) -> DivisorSieve:
    global _shared
    if limit > MAX_SIEVE_LIMIT:
        raise ResourceError(f"sieve limit {limit} exceeds the cap {MAX_SIEVE_LIMIT}")
    sieve = _shared
    if sieve is not None and sieve.limit >= limit:
        return sieve
    with _shared_lock:
        if _shared is None or _shared.limit < limit:
            grown = min(max(limit, 2 * (_shared.limit if _shared else 0), 1024), MAX_SIEVE_LIMIT)
            _shared = build_sieve(grown, backend=backend)
        return _shared
