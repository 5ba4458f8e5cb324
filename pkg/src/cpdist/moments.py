"""Moments of the product-chain law X = 1 + A1 + A1*A2 + ...

Raw moments of X follow a one-line recursion: expanding E[(AX + 1)^m] and
solving for E[X^m] gives

    E[X^m] = sum_{i<m} C(m,i) E[A^i] E[X^i] / (1 - E[A^m]),

finite exactly when E[A^i] < 1 for every i <= m.  For integer-valued A the
sequence E[A^m] is nondecreasing, so the moments of X are finite up to some
order and infinite beyond it; infinite entries are reported as ``math.inf``
and are detected from the E[A^m] conditions up front, never produced by
overflowing arithmetic.

Alongside the recursion this module carries closed forms: mean and variance
as explicit rational functions of the law parameters, threshold predicates
for their finiteness, and reference rational expressions for the ratios
mu3/mu2**3 and mu4/mu2**4 (a cube/fourth-power normalization, not the
standard mu3/mu2**1.5 and mu4/mu2**2).  See ``closed_form_skewness`` for
the per-family caveats on those reference expressions.
"""

import math
from dataclasses import dataclass

from .alaw import ALaw, raw_moment
from .errors import ParameterError

__all__ = [
    "MomentReport",
    "moment_condition",
    "raw_moments",
    "closed_form_mean_var",
    "finiteness",
    "skewness_kurtosis",
    "closed_form_skewness",
    "closed_form_kurtosis",
    "moment_report_dict",
]


@dataclass(frozen=True)
class MomentReport:
    """Raw moments E[X^m] for m = 0..order plus standardized summaries.

    Divergent entries hold ``math.inf``.  ``skewness`` and ``kurtosis`` are
    the standard standardized moments mu3/mu2**1.5 and mu4/mu2**2.
    """

    law: ALaw
    raw: tuple
    mean: float
    variance: float
    skewness: float
    kurtosis: float


def moment_condition(law, m):
    """True when E[A^i] < 1 for every i = 1..m, i.e. E[X^m] is finite."""
    return all(raw_moment(law, i) < 1.0 for i in range(1, m + 1))


def _raw_sequence(law, order):
    # cumulative finiteness: an entry is infinite once E[A^m] >= 1 or any
    # lower moment already diverged
    ea = [raw_moment(law, i) for i in range(order + 1)]
    vals = [1.0]
    for m in range(1, order + 1):
        if ea[m] >= 1.0 or math.isinf(vals[m - 1]):
            vals.append(math.inf)
            continue
        acc = 0.0
        for i in range(m):
            acc += math.comb(m, i) * ea[i] * vals[i]
        vals.append(acc / (1.0 - ea[m]))
    return vals


def raw_moments(law, order=4):
    """Raw moments of X up to ``order`` with mean/variance/skewness/kurtosis.

    The summary statistics always come from the recursion run to order 4,
    regardless of ``order``; ``raw`` is truncated to the requested length.
    """
    if order < 1:
        raise ParameterError("order must be >= 1")
    vals = _raw_sequence(law, max(order, 4))
    mean = vals[1]
    if math.isinf(vals[2]):
        variance = math.inf
    else:
        variance = vals[2] - mean * mean
    skew, kurt = _standardized(vals)
    return MomentReport(
        law=law,
        raw=tuple(vals[: order + 1]),
        mean=mean,
        variance=variance,
        skewness=skew,
        kurtosis=kurt,
    )


def _standardized(vals):
    m1, m2, m3, m4 = vals[1:5]
    if math.isinf(m3):
        skew = math.inf
    else:
        mu2 = m2 - m1 * m1
        mu3 = m3 - 3.0 * m1 * m2 + 2.0 * m1**3
        skew = mu3 / mu2**1.5
    if math.isinf(m4):
        kurt = math.inf
    else:
        mu2 = m2 - m1 * m1
        mu4 = m4 - 4.0 * m1 * m3 + 6.0 * m1 * m1 * m2 - 3.0 * m1**4
        kurt = mu4 / (mu2 * mu2)
    return skew, kurt


def finiteness(law, m):
    """Closed-form threshold test for E[X^m] < infinity, m in {1, 2}.

    Equivalent to ``moment_condition`` but expressed directly in the law
    parameters (e.g. Poisson variance is finite iff lambda < (sqrt(5)-1)/2).
    """
    if m not in (1, 2):
        raise ParameterError("finiteness is defined for m in {1, 2}")
    family = law.family
    if family == "poisson":
        (lam,) = law.params
        return lam < 1.0 if m == 1 else lam < (math.sqrt(5.0) - 1.0) / 2.0
    if family == "binomial":
        n, p = law.params
        if n == 1:
            return True
        if m == 1:
            return p < 1.0 / n
        return p < 0.5 * math.sqrt((5.0 * n - 4.0) / ((n - 1.0) ** 2 * n)) - 0.5 / (n - 1.0)
    if family == "negbinomial":
        r, p = law.params
        if m == 1:
            return r / (1.0 + r) < p
        if r == 1:
            return p > 2.0 / 3.0
        return p > (2.0 * r * r + r) / (2.0 * (r * r - 1.0)) - 0.5 * math.sqrt(
            5.0 * r * r + 4.0 * r
        ) / (r * r - 1.0)
    # geometric
    (p,) = law.params
    return p > 0.5 if m == 1 else p > 2.0 / 3.0


def closed_form_mean_var(law):
    """Mean and variance of X as explicit rational functions of the parameters.

    Returns ``math.inf`` for a moment whose ``finiteness`` predicate fails;
    the formulas are only evaluated on their domain of validity.
    """
    family = law.family
    mean = variance = math.inf
    if family == "poisson":
        (lam,) = law.params
        if finiteness(law, 1):
            mean = 1.0 / (1.0 - lam)
        if finiteness(law, 2):
            variance = -lam / ((lam - 1.0) ** 2 * (lam * lam + lam - 1.0))
    elif family == "binomial":
        n, p = law.params
        if finiteness(law, 1):
            mean = 1.0 / (1.0 - n * p)
        if finiteness(law, 2):
            variance = (
                n * (p - 1.0) * p
                / ((n * p - 1.0) ** 2 * (n * n * p * p - n * (p - 1.0) * p - 1.0))
            )
    elif family == "negbinomial":
        r, p = law.params
        if finiteness(law, 1):
            mean = p / (p * r + p - r)
        if finiteness(law, 2):
            variance = (
                (p - 1.0) * p * p * r
                / (
                    (p * r + p - r) ** 2
                    * (p * p * (r * r - 1.0) - p * r * (2.0 * r + 1.0) + r * (r + 1.0))
                )
            )
    else:
        (p,) = law.params
        if finiteness(law, 1):
            mean = p / (2.0 * p - 1.0)
        if finiteness(law, 2):
            variance = -(p - 1.0) * p * p / ((1.0 - 2.0 * p) ** 2 * (3.0 * p - 2.0))
    return mean, variance


def skewness_kurtosis(law):
    """Standard standardized moments (mu3/mu2**1.5, mu4/mu2**2) of X.

    ``math.inf`` when the third (resp. fourth) moment diverges.
    """
    return _standardized(_raw_sequence(law, 4))


# Reference closed forms for the cube/fourth-power normalized ratios
# mu3/mu2**3 and mu4/mu2**4, kept as fixed rational expressions for
# cross-checking the recursion.  Characterization against exact arithmetic:
#   poisson    skew and kurt both reproduce the ratios exactly
#   geometric  skew and kurt both reproduce the ratios exactly
#   binomial   skew exact; the kurtosis expression deviates from mu4/mu2**4
#              in its p^6 and p^7 terms (sign-level defect, relative error
#              ~1e-4 at small p)
#   negbinomial  neither expression reproduces the ratios (wrong polynomial
#              degrees; at r=1 they do not reduce to the geometric forms)
# The expressions are evaluated mechanically; the result is meaningful as a
# moment ratio only where the corresponding moment of X is finite.


def closed_form_skewness(law):
    """Reference rational expression for mu3/mu2**3 (see module comment)."""
    family = law.family
    if family == "poisson":
        (lam,) = law.params
        return (
            (lam - 1.0) ** 3
            * (lam * lam + lam - 1.0) ** 2
            * (5.0 * lam * lam + 2.0 * lam + 1.0)
            / (lam * lam * (lam**3 + 3.0 * lam * lam + lam - 1.0))
        )
    if family == "binomial":
        n, p = law.params
        return -(
            (n * p - 1.0) ** 3
            * (-(n * n) * p * p + n * (p - 1.0) * p + 1.0) ** 2
            * (
                4.0 * (n - 1.0) * n * p**3
                + n * (6.0 - 5.0 * n) * p * p
                - 2.0 * (n - 1.0) * p
                - 1.0
            )
        ) / (
            n * n
            * (p - 1.0) ** 2
            * p * p
            * (
                n**3 * p**3
                - 3.0 * n * n * (p - 1.0) * p * p
                + n * (2.0 * p * p - 3.0 * p + 1.0) * p
                - 1.0
            )
        )
    if family == "negbinomial":
        r, p = law.params
        return (
            (p * r + p - r) ** 3
            * (p * p * (r * r - 1.0) - p * r * (2.0 * r + 1.0) + r * (r + 1.0)) ** 2
            * (
                p * r * r * (-4.0 * r * r + r - 5.0)
                + r * (r**3 + r + 2.0)
                + p**3 * (-4.0 * r**4 + 3.0 * r**3 - 3.0 * r * r + 3.0 * r + 1.0)
                + p**4 * (r**4 - r**3 + r - 1.0)
                + p * p * (6.0 * r**4 - 3.0 * r**3 + 7.0 * r * r - 6.0 * r + 1.0)
            )
        ) / (
            (p - 1.0) ** 2
            * p**3
            * r * r
            * (
                p**3 * (r * r - r + 1.0)
                + p * p * r * (2.0 - 3.0 * r)
                + 3.0 * p * r * r
                - r * (r + 1.0)
            )
        )
    (p,) = law.params
    return (
        (2.0 - 3.0 * p) ** 2
        * (2.0 * p - 1.0) ** 3
        * (6.0 * p * p - 13.0 * p + 8.0)
        / ((p - 1.0) ** 2 * p**3 * (2.0 * p**3 - 7.0 * p * p + 12.0 * p - 6.0))
    )


def closed_form_kurtosis(law):
    """Reference rational expression for mu4/mu2**4 (see module comment)."""
    family = law.family
    if family == "poisson":
        (lam,) = law.params
        return (
            (lam - 1.0) ** 4
            * (lam * lam + lam - 1.0) ** 3
            * (
                3.0 * lam**6
                - 25.0 * lam**5
                - 55.0 * lam**4
                - 32.0 * lam**3
                - 47.0 * lam * lam
                - 11.0 * lam
                - 1.0
            )
            / (
                lam**3
                * (lam + 1.0) ** 2
                * (lam * lam + 2.0 * lam - 1.0)
                * (lam**3 + 5.0 * lam * lam + 2.0 * lam - 1.0)
            )
        )
    if family == "binomial":
        n, p = law.params
        return (
            (n * p - 1.0) ** 4
            * (n * n * p * p - n * (p - 1.0) * p - 1.0) ** 3
            * (
                1.0
                + (11.0 * n - 6.0) * p
                + (47.0 * n * n - 65.0 * n + 6.0) * p * p
                + n * (32.0 * n * n - 165.0 * n + 138.0) * p**3
                + n * (55.0 * n**3 - 177.0 * n * n + 243.0 * n - 120.0) * p**4
                + n * (25.0 * n**4 - 184.0 * n**3 + 339.0 * n * n - 216.0 * n + 36.0) * p**5
                - 3.0 * (n - 1.0) ** 2 * n * n * (n * n + 4.0 * n - 12.0) * p**7
                + 3.0 * n * n * (n**4 + 10.0 * n**3 - 62.0 * n * n + 93.0 * n - 42.0) * p**6
            )
        ) / (
            n**3
            * (p - 1.0) ** 3
            * p**3
            * (
                n**3 * p**3
                - 3.0 * n * n * (p - 1.0) * p * p
                + n * (2.0 * p * p - 3.0 * p + 1.0) * p
                - 1.0
            )
            * (
                n**4 * p**4
                - 6.0 * n**3 * (p - 1.0) * p**3
                + n * n * (11.0 * p * p - 18.0 * p + 7.0) * p * p
                + n * (-6.0 * p**4 + 12.0 * p**3 - 7.0 * p * p + p)
                - 1.0
            )
        )
    if family == "negbinomial":
        r, p = law.params
        return -(
            (p * r + p - r) ** 4
            * (p * p * (r * r - 1.0) - p * r * (2.0 * r + 1.0) + r * (r + 1.0)) ** 3
            * (
                r * r * (r + 1.0) ** 2 * (3.0 * r**3 + 5.0 * r * r - 3.0 * r + 6.0)
                - 2.0 * p * r * r * (12.0 * r**5 + 32.0 * r**4 + 24.0 * r**3 + 16.0 * r * r + 15.0 * r + 3.0)
                + p**3 * r * (-168.0 * r**6 - 106.0 * r**5 - 140.0 * r**4 - 29.0 * r**3 + 76.0 * r * r + 35.0 * r + 10.0)
                + p**6 * r * (84.0 * r**6 - 211.0 * r**5 + 238.0 * r**4 - 126.0 * r**3 + 98.0 * r * r - 38.0 * r - 24.0)
                + p * p * r * (84.0 * r**6 + 139.0 * r**5 + 98.0 * r**4 + 68.0 * r**3 - 2.0 * r * r - 18.0 * r + 6.0)
                + p**4 * r * (210.0 * r**6 - 85.0 * r**5 + 210.0 * r**4 - 103.0 * r**3 - 9.0 * r * r - 66.0 * r - 19.0)
                + p**7 * (-24.0 * r**7 + 86.0 * r**6 - 108.0 * r**5 + 39.0 * r**4 + 6.0 * r**3 - 33.0 * r * r + 30.0 * r + 1.0)
                + p**8 * (3.0 * r**7 - 14.0 * r**6 + 20.0 * r**5 - 4.0 * r**4 - 16.0 * r**3 + 20.0 * r * r - 7.0 * r - 2.0)
                - 2.0 * p**5 * (84.0 * r**7 - 122.0 * r**6 + 140.0 * r**5 - 91.0 * r**4 + 66.0 * r**3 - 50.0 * r * r - 2.0 * r - 1.0)
            )
        ) / (
            (p - 1.0) ** 3
            * p**4
            * r**3
            * (
                p**3 * (r * r - r + 1.0)
                + p * p * r * (2.0 - 3.0 * r)
                + 3.0 * p * r * r
                - r * (r + 1.0)
            )
            * (
                p**3 * r * (-4.0 * r * r + 6.0 * r - 3.0)
                + r * (r * r + 3.0 * r + 2.0)
                - p**4 * (r**3 - 3.0 * r * r + 2.0 * r - 1.0)
                + p * p * (6.0 * r**3 + r)
                + 2.0 * p * r * (2.0 * r * r + 3.0 * r + 1.0)
            )
        )
    (p,) = law.params
    return (
        (1.0 - 2.0 * p) ** 4
        * (3.0 * p - 2.0) ** 3
        * (
            42.0 * p**6
            - 173.0 * p**5
            + 105.0 * p**4
            + 435.0 * p**3
            - 872.0 * p * p
            + 642.0 * p
            - 180.0
        )
        / (
            (p - 1.0) ** 3
            * p**4
            * (2.0 * p**3 - 7.0 * p * p + 12.0 * p - 6.0)
            * (15.0 * p**3 - 50.0 * p * p + 60.0 * p - 24.0)
        )
    )


def _jsonable(x):
    return None if math.isinf(x) else x


def moment_report_dict(report):
    """JSON-friendly view: infinite entries become null with explicit flags."""
    m1, m2, m3, m4 = report.raw[1:5] if len(report.raw) >= 5 else _raw_sequence(report.law, 4)[1:]
    central = {"mu2": math.inf, "mu3": math.inf, "mu4": math.inf}
    if math.isfinite(m2):
        central["mu2"] = m2 - m1 * m1
    if math.isfinite(m3):
        central["mu3"] = m3 - 3.0 * m1 * m2 + 2.0 * m1**3
    if math.isfinite(m4):
        central["mu4"] = m4 - 4.0 * m1 * m3 + 6.0 * m1 * m1 * m2 - 3.0 * m1**4
    return {
        "family": report.law.family,
        "params": report.law.params_dict(),
        "raw": [_jsonable(v) for v in report.raw],
        "raw_finite": [math.isfinite(v) for v in report.raw],
        "mean": _jsonable(report.mean),
        "mean_finite": math.isfinite(report.mean),
        "variance": _jsonable(report.variance),
        "variance_finite": math.isfinite(report.variance),
        "central": {k: _jsonable(v) for k, v in central.items()},
        "skewness": _jsonable(report.skewness),
        "skewness_finite": math.isfinite(report.skewness),
        "kurtosis": _jsonable(report.kurtosis),
        "kurtosis_finite": math.isfinite(report.kurtosis),
    }
