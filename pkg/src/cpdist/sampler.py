"""Random variate generation for the product-chain law.

Each variate follows the chain s = 1, q = 1; draw a ~ A: on a = 0 emit s,
otherwise q *= a and s += q.  P[A=0] > 0 makes the zero draw, and hence
termination, almost sure.  Chains advance in vectorized rounds over the
still-active draws; multiplier values come from inversion of the cached
cdf of A.

Accumulators are int64.  Infinite-mean laws produce astronomically large
variates with non-negligible probability, so overflow is detected before
every multiply/add and handled per the configured policy: ``error`` raises,
``saturate`` ends the chain and reports the largest int64.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .alaw import pmf, pmf_vector
from .errors import ParameterError, SamplerOverflowError, SamplerStepLimitError

__all__ = ["SampleConfig", "sample", "sample_stopped"]

_INT64_MAX = np.iinfo(np.int64).max
# product guard for the reference sampler, whose float64 shadow products
# are exact only below 2**53
_FLOAT_EXACT_MAX = float(2**53)


@dataclass(frozen=True)
class SampleConfig:
    seed: int = 0
    max_steps: int = 1_000_000
    overflow_policy: str = "error"

    def __post_init__(self):
        if not (0 <= int(self.seed) < 2**64):
            raise ParameterError("seed must be a 64-bit unsigned integer")
        if self.max_steps < 1:
            raise ParameterError("max_steps must be >= 1")
        if self.overflow_policy not in ("error", "saturate"):
            raise ParameterError("overflow_policy must be 'error' or 'saturate'")


@lru_cache(maxsize=32)
def _cdf(law):
    # grow until the pmf underflows to zero or the remaining tail is below
    # 1e-15; draws landing past the last entry are clipped onto it, an
    # inversion error bounded by that tail
    size = 64
    while True:
        pm = pmf_vector(law, size)
        cdf = np.cumsum(pm)
        if pm[-1] == 0.0 or 1.0 - cdf[-1] < 1e-15:
            last = int(np.nonzero(pm)[0][-1])
            out = cdf[: last + 1]
            out.flags.writeable = False
            return out
        size *= 2


def sample(law, config, count):
    """Draw ``count`` variates of X as an int64 array.

    Identical (law, config, count) inputs produce identical output arrays.
    """
    if count < 1:
        raise ParameterError("count must be >= 1")
    cdf = _cdf(law)
    top = len(cdf) - 1
    rng = np.random.default_rng(config.seed)
    out = np.empty(count, dtype=np.int64)
    idx = np.arange(count)
    s = np.ones(count, dtype=np.int64)
    q = np.ones(count, dtype=np.int64)
    steps = 0
    while idx.size:
        steps += 1
        if steps > config.max_steps:
            raise SamplerStepLimitError(
                f"{idx.size} chains still active after {config.max_steps} steps"
            )
        u = rng.random(idx.size)
        a = np.minimum(np.searchsorted(cdf, u, side="right"), top).astype(np.int64)
        zero = a == 0
        out[idx[zero]] = s[zero]
        live = ~zero
        idx, s, q, a = idx[live], s[live], q[live], a[live]
        if not idx.size:
            break
        idx, s, q, a = _guard(out, config, idx, s, q, a, q > _INT64_MAX // a)
        if not idx.size:
            break
        q = q * a
        idx, s, q, a = _guard(out, config, idx, s, q, a, s > _INT64_MAX - q)
        s = s + q
    return out


def _guard(out, config, idx, s, q, a, over):
    # drop overflowing chains per policy before the unsafe int64 op runs
    if not over.any():
        return idx, s, q, a
    if config.overflow_policy == "error":
        raise SamplerOverflowError(
            f"{int(over.sum())} chains exceeded the int64 range"
        )
    out[idx[over]] = _INT64_MAX
    live = ~over
    return idx[live], s[live], q[live], a[live]


def sample_stopped(law, config, count):
    """Reference generator: draw the chain length first, then the multipliers.

    The number N of nonzero draws before the terminating zero is geometric
    with success probability P[A=0]; conditioned on N = k the k multipliers
    are iid zero-truncated copies of A and X = 1 + sum of their running
    products.  Same law as ``sample`` by construction; kept as an
    independent cross-check and not tuned for speed.  Products are range-
    guarded at 2**53 (where the float64 shadow used for overflow detection
    stops being exact), tighter than the int64 bound of ``sample``.
    """
    if count < 1:
        raise ParameterError("count must be >= 1")
    p0 = pmf(law, 0)
    cdf = _cdf(law)
    top = len(cdf) - 1
    tcdf = (cdf[1:] - cdf[0]) / (1.0 - cdf[0])
    rng = np.random.default_rng(config.seed)
    n = rng.geometric(p0, size=count) - 1
    if n.max(initial=0) > config.max_steps:
        raise SamplerStepLimitError(
            f"chain length {int(n.max())} exceeds max_steps={config.max_steps}"
        )
    out = np.ones(count, dtype=np.int64)
    for k in np.unique(n):
        if k == 0:
            continue
        rows = np.nonzero(n == k)[0]
        u = rng.random((rows.size, int(k)))
        a = np.minimum(
            np.searchsorted(tcdf, u.ravel(), side="right") + 1, top
        ).reshape(rows.size, int(k))
        shadow = np.cumprod(a.astype(np.float64), axis=1)
        total = 1.0 + shadow.sum(axis=1)
        over = (shadow[:, -1] > _FLOAT_EXACT_MAX) | (total > _FLOAT_EXACT_MAX)
        if over.any():
            if config.overflow_policy == "error":
                raise SamplerOverflowError(
                    f"{int(over.sum())} chains exceeded the reference range guard"
                )
            out[rows[over]] = _INT64_MAX
            rows, a = rows[~over], a[~over]
            if not rows.size:
                continue
        prod = np.cumprod(a, axis=1)
        out[rows] = 1 + prod.sum(axis=1)
    return out
