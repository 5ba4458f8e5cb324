"""Hot numeric kernels: numba-jitted fast paths with pure-numpy fallbacks.

Backend selection: numba is used when importable unless the environment
variable ``CPDIST_NO_NUMBA`` is set to anything other than ``""``/``"0"``.
Every public function also accepts an explicit ``backend=`` override
("numba" or "numpy") so the two paths can be compared directly.
"""

from __future__ import annotations

import os

import numpy as np
from scipy.signal import lfilter

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def decorate(func):
            return func

        if args and callable(args[0]):
            return args[0]
        return decorate


BACKENDS = ("numba", "numpy")

# Largest divisor count for m < 2^31 is 1344; 4096 leaves ample slack.
_DIV_BUF = 4096


def numba_disabled_by_env() -> bool:
    return os.environ.get("CPDIST_NO_NUMBA", "") not in ("", "0")


def default_backend() -> str:
    if HAVE_NUMBA and not numba_disabled_by_env():
        return "numba"
    return "numpy"


def resolve_backend(backend: str | None) -> str:
    if backend is None:
        return default_backend()
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}; expected one of {BACKENDS}")
    if backend == "numba" and not HAVE_NUMBA:
        raise ValueError("numba backend requested but numba is not importable")
    return backend


# ---------------------------------------------------------------------------
# smallest-prime-factor sieve
# ---------------------------------------------------------------------------


@njit(cache=True, nogil=True)
def _spf_sieve_numba(limit):  # pragma: no cover - measured via dispatch
    spf = np.zeros(limit + 1, dtype=np.int32)
    if limit >= 1:
        spf[1] = 1
    for i in range(2, limit + 1):
        if spf[i] == 0:
            spf[i] = i
            if i <= limit // i:
                for j in range(i * i, limit + 1, i):
                    if spf[j] == 0:
                        spf[j] = i
    return spf


def _spf_sieve_numpy(limit: int) -> np.ndarray:
    spf = np.zeros(limit + 1, dtype=np.int32)
    if limit >= 1:
        spf[1] = 1
    for p in range(2, int(np.sqrt(limit)) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    unset = spf == 0
    unset[:2] = False
    spf[unset] = np.nonzero(unset)[0]
    return spf


def spf_sieve(limit: int, backend: str | None = None) -> np.ndarray:
    """Array ``spf`` with ``spf[m]`` the smallest prime factor of ``m`` (``spf[1] = 1``)."""
    if limit < 1:
        raise ValueError("sieve limit must be >= 1")
    if resolve_backend(backend) == "numba":
        return _spf_sieve_numba(limit)
    return _spf_sieve_numpy(limit)


# ---------------------------------------------------------------------------
# density recursion over factor pairs
# ---------------------------------------------------------------------------


@njit(cache=True, nogil=True)
def _density_numba(pmf_a, spf, limit, compensated):  # pragma: no cover
    probs = np.zeros(limit + 1, dtype=np.float64)
    probs[1] = pmf_a[0]
    divs = np.empty(_DIV_BUF, dtype=np.int64)
    for n in range(2, limit + 1):
        m = n - 1
        # enumerate all divisors of m from its spf factorization
        ndiv = 1
        divs[0] = 1
        mm = m
        while mm > 1:
            p = np.int64(spf[mm])
            e = 0
            while mm % p == 0:
                mm //= p
                e += 1
            base = ndiv
            pe = np.int64(1)
            for _ in range(e):
                pe *= p
                for t in range(base):
                    divs[ndiv] = divs[t] * pe
                    ndiv += 1
        # ascending-i accumulation order; insertion sort, buffers stay local
        for a in range(1, ndiv):
            key = divs[a]
            b = a - 1
            while b >= 0 and divs[b] > key:
                divs[b + 1] = divs[b]
                b -= 1
            divs[b + 1] = key
        if compensated:
            total = 0.0
            carry = 0.0
            for t in range(ndiv):
                i = divs[t]
                term = pmf_a[i] * probs[m // i]
                y = term - carry
                acc = total + y
                carry = (acc - total) - y
                total = acc
            probs[n] = total
        else:
            total = 0.0
            for t in range(ndiv):
                i = divs[t]
                total += pmf_a[i] * probs[m // i]
            probs[n] = total
    return probs


def _density_numpy(pmf_a: np.ndarray, limit: int) -> np.ndarray:
    """Blockwise vectorized recursion.

    Within a block ``(lo, hi]`` with ``hi <= 2*lo`` every factor pair
    ``(i, j)`` of ``m = n - 1`` with ``i >= 2`` has ``j < lo``, so those
    contributions are gathered vectorized; the remaining ``i = 1`` term is a
    first-order linear recurrence handled by ``lfilter``.
    """
    probs = np.zeros(limit + 1, dtype=np.float64)
    probs[1] = pmf_a[0]
    if limit < 2:
        return probs
    a1 = pmf_a[1]
    probs[2] = a1 * probs[1]
    lo = 2
    while lo < limit:
        hi = min(2 * lo, limit)
        c = np.zeros(hi - lo)
        for j in range(1, (hi - 1) // 2 + 1):
            i_lo = max(2, -(-lo // j))
            i_hi = (hi - 1) // j
            if i_lo > i_hi:
                continue
            i = np.arange(i_lo, i_hi + 1)
            c[i * j - lo] += pmf_a[i] * probs[j]
        block, _ = lfilter([1.0], [1.0, -a1], c, zi=np.array([a1 * probs[lo]]))
        probs[lo + 1 : hi + 1] = block
        lo = hi
    return probs


def _density_python_kahan(pmf_a: np.ndarray, spf: np.ndarray, limit: int) -> np.ndarray:
    # compensated-summation reference path; verification only, not fast
    probs = np.zeros(limit + 1, dtype=np.float64)
    probs[1] = pmf_a[0]
    for n in range(2, limit + 1):
        m = n - 1
        divs = _divisors_from_spf(spf, m)
        total = 0.0
        carry = 0.0
        for i in divs:
            term = pmf_a[i] * probs[m // i]
            y = term - carry
            acc = total + y
            carry = (acc - total) - y
            total = acc
        probs[n] = total
    return probs


def _divisors_from_spf(spf: np.ndarray, m: int) -> list[int]:
    divs = [1]
    mm = m
    while mm > 1:
        p = int(spf[mm])
        e = 0
        while mm % p == 0:
            mm //= p
            e += 1
        base = list(divs)
        pe = 1
        for _ in range(e):
            pe *= p
            divs.extend(d * pe for d in base)
    divs.sort()
    return divs


def density_recursion(
    pmf_a: np.ndarray,
    limit: int,
    spf: np.ndarray | None = None,
    backend: str | None = None,
    compensated: bool = False,
) -> np.ndarray:
    """`probs` with ``probs[n] = P(X = n)`` for ``n = 1..limit`` (index 0 unused).

    ``pmf_a`` must hold the multiplier pmf for ``k = 0..limit-1``.  ``spf`` is
    required by the numba path (a smallest-prime-factor sieve covering
    ``limit - 1``); the numpy path ignores it.
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    if len(pmf_a) < limit:
        raise ValueError("pmf_a must cover k = 0..limit-1")
    chosen = resolve_backend(backend)
    if chosen == "numba":
        if spf is None or len(spf) < limit:
            raise ValueError("numba backend needs an spf sieve covering limit - 1")
        return _density_numba(
            np.ascontiguousarray(pmf_a, dtype=np.float64), spf, limit, compensated
        )
    if compensated:
        if spf is None or len(spf) < limit:
            raise ValueError("compensated numpy path needs an spf sieve covering limit - 1")
        return _density_python_kahan(pmf_a, spf, limit)
    return _density_numpy(np.asarray(pmf_a, dtype=np.float64), limit)


# ---------------------------------------------------------------------------
# factor-pair visit counts (the machine-independent cost proxy)
# ---------------------------------------------------------------------------


@njit(cache=True, nogil=True)
def _pair_visits_numba(spf, limit):  # pragma: no cover
    total = np.int64(0)
    for m in range(1, limit):
        mm = m
        d = np.int64(1)
        while mm > 1:
            p = np.int64(spf[mm])
            e = 0
            while mm % p == 0:
                mm //= p
                e += 1
            d *= e + 1
        total += d
    return total


def _pair_visits_numpy(limit: int) -> int:
    # Dirichlet hyperbola identity: sum_{m<=M} d(m) = 2*sum_{i<=sqrt(M)} floor(M/i) - floor(sqrt(M))^2
    m_top = limit - 1
    if m_top <= 0:
        return 0
    s = int(np.sqrt(m_top))
    while (s + 1) * (s + 1) <= m_top:
        s += 1
    i = np.arange(1, s + 1, dtype=np.int64)
    return int(2 * np.sum(m_top // i) - s * s)


def pair_visit_total(limit: int, spf: np.ndarray | None = None, backend: str | None = None) -> int:
    """Total factor-pair visits performed by the recursion up to ``limit``.

    Equals ``sum_{m=1}^{limit-1} d(m)`` where ``d`` is the divisor count.
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    chosen = resolve_backend(backend)
    if chosen == "numba" and spf is not None and len(spf) >= limit:
        return int(_pair_visits_numba(spf, limit))
    return _pair_visits_numpy(limit)
