"""Input distributions for the non-negative integer multiplier A.

Four families are supported: Poisson(lambda), Binomial(n, p),
NegBinomial(r, p) and Geometric(p).  The negative binomial and geometric
laws count failures before the r-th (resp. first) success with success
probability p, so their means are r(1-p)/p and (1-p)/p.  Every admissible
parameter set puts positive mass on both 0 and 1, which the rest of the
package relies on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ParameterError

FAMILIES = ("poisson", "binomial", "negbinomial", "geometric")

# switch NB pmf evaluation to log-space once binomial coefficients get large
_NB_LOG_THRESHOLD = 64


@dataclass(frozen=True)
class ALaw:
    """A parametric law for the multiplier A: a family tag plus its parameters."""

    family: str
    params: tuple

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ParameterError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        _VALIDATORS[self.family](self.params)

    @classmethod
    def poisson(cls, lam: float) -> "ALaw":
        return cls("poisson", (float(lam),))

    @classmethod
    def binomial(cls, n: int, p: float) -> "ALaw":
        return cls("binomial", (int(n), float(p)))

    @classmethod
    def negbinomial(cls, r: int, p: float) -> "ALaw":
        return cls("negbinomial", (int(r), float(p)))

    @classmethod
    def geometric(cls, p: float) -> "ALaw":
        return cls("geometric", (float(p),))

    @classmethod
    def make(cls, family: str, **kwargs) -> "ALaw":
        """Build from keyword parameters, e.g. ``make("poisson", lam=0.3)``."""
        if family == "poisson":
            return cls.poisson(kwargs["lam"])
        if family == "binomial":
            return cls.binomial(kwargs["n"], kwargs["p"])
        if family == "negbinomial":
            return cls.negbinomial(kwargs["r"], kwargs["p"])
        if family == "geometric":
            return cls.geometric(kwargs["p"])
        raise ParameterError(f"unknown family {family!r}")

    def params_dict(self) -> dict:
        """Parameters keyed by their conventional names (JSON-friendly)."""
        if self.family == "poisson":
            return {"lambda": self.params[0]}
        if self.family == "binomial":
            return {"n": self.params[0], "p": self.params[1]}
        if self.family == "negbinomial":
            return {"r": self.params[0], "p": self.params[1]}
        return {"p": self.params[0]}

    def __str__(self):
        inner = ", ".join(f"{k}={v:g}" if isinstance(v, float) else f"{k}={v}" for k, v in self.params_dict().items())
        return f"{self.family}({inner})"


def _validate_poisson(params):
    (lam,) = params
    if not (math.isfinite(lam) and lam > 0):
        raise ParameterError(f"poisson requires lambda > 0, got {lam}")


def _validate_binomial(params):
    n, p = params
    if n < 1:
        raise ParameterError(f"binomial requires integer n >= 1, got {n}")
    if not (math.isfinite(p) and 0.0 < p < 1.0):
        raise ParameterError(f"binomial requires p in (0, 1), got {p}")


def _validate_negbinomial(params):
    r, p = params
    if r < 1:
        raise ParameterError(f"negbinomial requires integer r >= 1, got {r}")
    if not (math.isfinite(p) and 0.0 < p < 1.0):
        raise ParameterError(f"negbinomial requires p in (0, 1), got {p}")


def _validate_geometric(params):
    (p,) = params
    if not (math.isfinite(p) and 0.0 < p < 1.0):
        raise ParameterError(f"geometric requires p in (0, 1), got {p}")


_VALIDATORS = {
    "poisson": _validate_poisson,
    "binomial": _validate_binomial,
    "negbinomial": _validate_negbinomial,
    "geometric": _validate_geometric,
}


def pmf(law: ALaw, k: int) -> float:
    """P(A = k) for a single support point."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if law.family == "poisson":
        (lam,) = law.params
        if k == 0:
            return math.exp(-lam)
        return math.exp(k * math.log(lam) - lam - math.lgamma(k + 1))
    if law.family == "binomial":
        n, p = law.params
        if k > n:
            return 0.0
        return math.comb(n, k) * p**k * (1.0 - p) ** (n - k)
    if law.family == "negbinomial":
        r, p = law.params
        if k < _NB_LOG_THRESHOLD:
            return math.comb(k + r - 1, k) * p**r * (1.0 - p) ** k
        log_pmf = (
            math.lgamma(k + r)
            - math.lgamma(r)
            - math.lgamma(k + 1)
            + r * math.log(p)
            + k * math.log1p(-p)
        )
        return math.exp(log_pmf)
    (p,) = law.params
    return p * (1.0 - p) ** k


@lru_cache(maxsize=16)
def pmf_vector(law: ALaw, size: int) -> np.ndarray:
    """pmf values for k = 0..size-1 as a read-only float64 array.

    Built from the one-step pmf ratios with a cumulative product, so the
    cost is O(size) with no large intermediates.  Deep-tail entries
    underflow to exactly 0.0, which downstream sums treat as negligible.
    """
    if size < 1:
        raise ValueError("size must be >= 1")
    k = np.arange(1, size, dtype=np.float64)
    if law.family == "poisson":
        (lam,) = law.params
        p0 = math.exp(-lam)
        ratios = lam / k
    elif law.family == "binomial":
        n, p = law.params
        p0 = (1.0 - p) ** n
        ratios = np.zeros_like(k)
        top = min(n, size - 1)
        kk = k[:top]
        ratios[:top] = (n - kk + 1.0) / kk * (p / (1.0 - p))
    elif law.family == "negbinomial":
        r, p = law.params
        p0 = p**r
        ratios = (k + r - 1.0) / k * (1.0 - p)
    else:
        (p,) = law.params
        p0 = p
        ratios = np.full_like(k, 1.0 - p)
    out = np.empty(size, dtype=np.float64)
    out[0] = p0
    if size > 1:
        np.multiply.accumulate(ratios, out=ratios)
        out[1:] = p0 * ratios
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def _stirling2_row(m: int) -> tuple:
    """Stirling numbers of the second kind S(m, k) for k = 0..m, exact."""
    row = [1]
    for n in range(1, m + 1):
        prev = row
        row = [0] * (n + 1)
        for k in range(1, n + 1):
            row[k] = k * prev[k] if k < n else 0
            row[k] += prev[k - 1]
    return tuple(row)


def _factorial_moment(law: ALaw, k: int) -> float:
    """E[A (A-1) ... (A-k+1)], the k-th falling factorial moment."""
    if k == 0:
        return 1.0
    if law.family == "poisson":
        (lam,) = law.params
        return lam**k
    if law.family == "binomial":
        n, p = law.params
        if k > n:
            return 0.0
        falling = 1.0
        for j in range(k):
            falling *= n - j
        return falling * p**k
    if law.family == "negbinomial":
        r, p = law.params
        rising = 1.0
        for j in range(k):
            rising *= r + j
        return rising * ((1.0 - p) / p) ** k
    (p,) = law.params
    return math.factorial(k) * ((1.0 - p) / p) ** k


def raw_moment(law: ALaw, m: int) -> float:
    """E[A^m] via the Stirling expansion over factorial moments (finite exact sum)."""
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    if m == 0:
        return 1.0
    stirling = _stirling2_row(m)
    return float(sum(stirling[k] * _factorial_moment(law, k) for k in range(1, m + 1)))


def mean_a(law: ALaw) -> float:
    """E[A] from the family's closed-form mean."""
    if law.family == "poisson":
        return law.params[0]
    if law.family == "binomial":
        n, p = law.params
        return n * p
    if law.family == "negbinomial":
        r, p = law.params
        return r * (1.0 - p) / p
    (p,) = law.params
    return (1.0 - p) / p
