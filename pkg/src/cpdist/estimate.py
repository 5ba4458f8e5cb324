"""Parameter estimation and model comparison for the product-chain law.

Two fitting routes.  Method of moments inverts the closed-form expressions
for E[X] and E[X^2] in the sample moments mu1' and mu2'; for the
two-parameter families the integer parameter estimate is rounded to the
nearest positive integer and p is then re-solved from the mean equation, so
the returned pair is always admissible.  Maximum likelihood evaluates the
exact density (computed once per candidate law up to the largest observed
value and cached) and searches: golden-section over a bracketing grid for
one-parameter families, an integer scan with a nested 1D search for
two-parameter families.

Observations are frequency data: a map from observed value to its
multiplicity, which keeps likelihood evaluation O(distinct values).
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from .alaw import FAMILIES, ALaw
from .density import DEFAULT_LIMIT_CAP, cp_density
from .errors import MomentConditionError, ParameterError, ResourceError

__all__ = [
    "FrequencyDataset",
    "FitResult",
    "sample_moments",
    "mom_fit",
    "loglik",
    "mle_fit",
    "aic",
    "compare_models",
]

_NPARAMS = {"poisson": 1, "binomial": 2, "negbinomial": 2, "geometric": 1}
_GRID_POINTS = 64


@dataclass(frozen=True, eq=False)
class FrequencyDataset:
    """Distinct observed values (>= 1) with positive multiplicities."""

    values: np.ndarray
    counts: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.int64)
        counts = np.asarray(self.counts, dtype=np.int64)
        if values.ndim != 1 or values.shape != counts.shape:
            raise ParameterError("values and counts must be 1-d arrays of equal length")
        if values.size == 0:
            raise ParameterError("dataset must contain at least one observation")
        if (values < 1).any():
            raise ParameterError("observed values must be >= 1")
        if (counts < 1).any():
            raise ParameterError("counts must be >= 1")
        if (np.diff(values) <= 0).any():
            raise ParameterError("values must be strictly increasing")
        values.flags.writeable = False
        counts.flags.writeable = False
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "counts", counts)

    @classmethod
    def from_pairs(cls, pairs):
        """Build from (value, count) pairs, merging duplicate values."""
        merged = {}
        for value, count in pairs:
            merged[int(value)] = merged.get(int(value), 0) + int(count)
        if not merged:
            raise ParameterError("dataset must contain at least one observation")
        values = np.array(sorted(merged), dtype=np.int64)
        counts = np.array([merged[v] for v in values], dtype=np.int64)
        return cls(values, counts)

    @classmethod
    def from_values(cls, observations):
        """Build from raw observations (one entry per draw)."""
        values, counts = np.unique(np.asarray(observations, dtype=np.int64), return_counts=True)
        if values.size == 0:
            raise ParameterError("dataset must contain at least one observation")
        return cls(values, counts)

    @property
    def total(self):
        return int(self.counts.sum())

    @property
    def max_value(self):
        return int(self.values[-1])

    def as_dict(self):
        return {int(v): int(c) for v, c in zip(self.values, self.counts)}


@dataclass(frozen=True)
class FitResult:
    """One fitted family: parameters, fitting method, optional loglik/AIC.

    ``flags`` carries diagnostics: "boundary" when an estimate sits on the
    edge of its domain, "int_max_exhausted" when the integer scan ended while
    the likelihood was still improving.
    """

    family: str
    params: dict
    method: str
    loglik: float = None
    aic: float = None
    flags: tuple = ()

    def to_law(self):
        return ALaw.make(self.family, **self.params)


def sample_moments(data):
    """First and second raw sample moments (mu1', mu2')."""
    v = data.values.astype(np.float64)
    c = data.counts.astype(np.float64)
    total = c.sum()
    return float((v * c).sum() / total), float((v * v * c).sum() / total)


def aic(loglik_value, k):
    return 2.0 * k - 2.0 * loglik_value


def _round_positive(x):
    # nearest positive integer, half away from zero, floor at 1
    return max(1, int(math.floor(x + 0.5)))


def mom_fit(data, family):
    """Method-of-moments fit; no likelihood evaluation.

    mu1' <= 1 can only come from the all-ones sample and yields the
    degenerate boundary estimate (lambda=0 / p at the edge) with a
    "boundary" flag.  For the two-parameter families the estimators share
    the denominator D = (2mu1'-1)mu1'^2 + (mu1'^2-3mu1'+1)mu2'; its sign
    selects the compatible family (D > 0 binomial, D < 0 negative
    binomial), and incompatible or vanishing D raises
    ``MomentConditionError``.
    """
    if family not in FAMILIES:
        raise ParameterError(f"unknown family: {family!r}")
    mu1, mu2 = sample_moments(data)
    if mu1 <= 1.0:
        return _degenerate_mom(family)
    if family == "poisson":
        return FitResult("poisson", {"lam": 1.0 - 1.0 / mu1}, "mom")
    if family == "geometric":
        return FitResult("geometric", {"p": mu1 / (2.0 * mu1 - 1.0)}, "mom")
    d = (2.0 * mu1 - 1.0) * mu1 * mu1 + (mu1 * mu1 - 3.0 * mu1 + 1.0) * mu2
    if not math.isfinite(d) or d == 0.0:
        raise MomentConditionError("sample moments give a vanishing estimator denominator")
    if family == "binomial":
        if d < 0.0:
            raise MomentConditionError("sample moments incompatible with a binomial multiplier")
        n = _round_positive((mu1 - 1.0) ** 2 * mu2 / d)
        return FitResult("binomial", {"n": n, "p": (mu1 - 1.0) / (n * mu1)}, "mom")
    if d > 0.0:
        raise MomentConditionError(
            "sample moments incompatible with a negative-binomial multiplier"
        )
    r = _round_positive(-((mu1 - 1.0) ** 2) * mu2 / d)
    return FitResult("negbinomial", {"r": r, "p": r * mu1 / (mu1 * (r + 1.0) - 1.0)}, "mom")


def _degenerate_mom(family):
    params = {
        "poisson": {"lam": 0.0},
        "geometric": {"p": 1.0},
        "binomial": {"n": 1, "p": 0.0},
        "negbinomial": {"r": 1, "p": 1.0},
    }[family]
    return FitResult(family, params, "mom", flags=("boundary",))


def _quantize(x):
    return round(float(x) * 1e9) / 1e9


@lru_cache(maxsize=512)
def _log_probs(family, qparams, limit):
    law = ALaw(family, qparams)
    probs = cp_density(law, limit).probs
    with np.errstate(divide="ignore"):
        return np.log(probs)


def loglik(data, law, limit_cap=DEFAULT_LIMIT_CAP):
    """Log-likelihood of frequency data under one law.

    The density is computed once per candidate law and cached; laws are
    quantized to 1e-9 in their continuous parameter and the density limit is
    rounded up to a power of two, so optimizer grid evaluations hit the
    cache even across datasets of different extent.
    """
    if data.max_value > limit_cap:
        raise ResourceError(
            f"largest observed value {data.max_value} exceeds the density cap {limit_cap}"
        )
    qparams = tuple(_quantize(p) if isinstance(p, float) else p for p in law.params)
    limit = min(limit_cap, max(64, 1 << (data.max_value - 1).bit_length()))
    logp = _log_probs(law.family, qparams, limit)
    return float((data.counts * logp[data.values]).sum())


def _degenerate_loglik(data):
    # A = 0 almost surely: X = 1 with certainty
    return 0.0 if data.max_value == 1 else -math.inf


def _loglik_at(data, family, params, limit_cap):
    lam = params.get("lam")
    p = params.get("p")
    if (family == "poisson" and lam == 0.0) or (family == "binomial" and p == 0.0):
        return _degenerate_loglik(data)
    if family in ("geometric", "negbinomial") and p == 1.0:
        return _degenerate_loglik(data)
    return loglik(data, ALaw.make(family, **params), limit_cap=limit_cap)


def _golden(f, lo, hi, tol):
    # golden-section maximization on [lo, hi]
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = f(d)
    return (c, fc) if fc >= fd else (d, fd)


def _search_1d(f, lo, hi, tol):
    # bracketing grid against multimodality, then golden-section refinement
    grid = np.linspace(lo, hi, _GRID_POINTS + 2)[1:-1]
    vals = [f(x) for x in grid]
    best = int(np.argmax(vals))
    a = grid[best - 1] if best > 0 else lo
    b = grid[best + 1] if best < len(grid) - 1 else hi
    x, fx = _golden(f, a, b, tol)
    boundary = best in (0, len(grid) - 1)
    return x, fx, boundary


def _thread_count():
    raw = os.environ.get("CPDIST_THREADS", "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def mle_fit(data, family, int_max=50, tol=1e-6, limit_cap=DEFAULT_LIMIT_CAP):
    """Maximum-likelihood fit with loglik and AIC attached.

    One-parameter families: 1D likelihood search (grid + golden section) over
    the open parameter domain.  Two-parameter families: scan the integer
    parameter over 1..int_max with the nested 1D search for p; ties resolve
    toward the smaller integer.  Set CPDIST_THREADS to evaluate integer
    candidates concurrently.
    """
    if family not in FAMILIES:
        raise ParameterError(f"unknown family: {family!r}")
    if family in ("poisson", "geometric"):
        if family == "poisson":
            # coercive: mass escapes to infinity as lambda grows, so a data-
            # dependent upper bracket is safe
            hi = max(4.0, math.log(data.total) + 2.0)
            f = lambda lam: _loglik_at(data, "poisson", {"lam": lam}, limit_cap)
            x, fx, boundary = _search_1d(f, 0.0, hi, tol)
            params = {"lam": x}
        else:
            f = lambda p: _loglik_at(data, "geometric", {"p": p}, limit_cap)
            x, fx, boundary = _search_1d(f, 0.0, 1.0, tol)
            params = {"p": x}
        flags = ("boundary",) if boundary else ()
        return FitResult(
            family, params, "mle", loglik=fx, aic=aic(fx, 1), flags=flags
        )

    key = "n" if family == "binomial" else "r"

    def fit_one(k):
        f = lambda p: _loglik_at(data, family, {key: k, "p": p}, limit_cap)
        return _search_1d(f, 0.0, 1.0, tol)

    candidates = range(1, int_max + 1)
    workers = min(_thread_count(), int_max)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(fit_one, candidates))
    else:
        results = [fit_one(k) for k in candidates]
    best_k = max(candidates, key=lambda k: (results[k - 1][1], -k))
    p, fx, boundary = results[best_k - 1]
    flags = []
    if boundary:
        flags.append("boundary")
    if best_k == int_max and int_max > 1 and results[-1][1] > results[-2][1]:
        flags.append("int_max_exhausted")
    return FitResult(
        family,
        {key: best_k, "p": p},
        "mle",
        loglik=fx,
        aic=aic(fx, 2),
        flags=tuple(flags),
    )


def compare_models(data, method="paper", int_max=50, tol=1e-6, limit_cap=DEFAULT_LIMIT_CAP):
    """Fit all four families and rank them by ascending AIC.

    ``method="paper"``: Poisson and geometric by method of moments (their
    likelihood evaluated at the MoM parameters for the AIC), binomial and
    negative binomial by maximum likelihood.  ``method="mle"``: all four by
    maximum likelihood.  Ties order alphabetically by family name.
    """
    if method not in ("paper", "mle"):
        raise ParameterError("method must be 'paper' or 'mle'")
    results = []
    for family in sorted(FAMILIES):
        if method == "paper" and family in ("poisson", "geometric"):
            fit = mom_fit(data, family)
            ll = _loglik_at(data, family, fit.params, limit_cap)
            fit = replace(fit, loglik=ll, aic=aic(ll, _NPARAMS[family]))
        else:
            fit = mle_fit(data, family, int_max=int_max, tol=tol, limit_cap=limit_cap)
        results.append(fit)
    return sorted(results, key=lambda r: (r.aic, r.family))
