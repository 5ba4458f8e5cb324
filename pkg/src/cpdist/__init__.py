"""Compound-product distributions: the law of the fixed point X = AX + 1.

A is a non-negative integer random variable with P(A = 0) > 0; X is the
distributional fixed point of X = AX + 1, supported on {1, 2, ...}.  The
package computes the density of X by a divisor-pair recursion, its moments
(with exact finiteness tests), draws samples, and fits the four standard
multiplier families (Poisson, binomial, negative binomial, geometric) to
frequency data by method of moments or maximum likelihood.
"""

from .alaw import FAMILIES, ALaw, pmf, pmf_vector, raw_moment
from .bench import BenchReport, bench_bruteforce, bench_density, bench_to_csv, bench_to_dict
from .density import (
    DEFAULT_LIMIT_CAP,
    CpDensity,
    bruteforce_node_count,
    cp_density,
    cp_density_bruteforce,
    density_to_csv,
    density_to_dict,
    density_to_rows,
)
from .errors import (
    CpdistError,
    EmptyInputError,
    MomentConditionError,
    ParameterError,
    ParseError,
    ResourceError,
    SamplerOverflowError,
    SamplerStepLimitError,
)
from .estimate import (
    FitResult,
    FrequencyDataset,
    aic,
    compare_models,
    loglik,
    mle_fit,
    mom_fit,
    sample_moments,
)
from .ingest import CorpusConfig, read_counts, word_counts, write_counts
from .moments import (
    MomentReport,
    closed_form_kurtosis,
    closed_form_mean_var,
    closed_form_skewness,
    finiteness,
    moment_condition,
    moment_report_dict,
    raw_moments,
    skewness_kurtosis,
)
from .sampler import SampleConfig, sample, sample_stopped

__version__ = "0.1.0"

__all__ = [
    "ALaw",
    "BenchReport",
    "CorpusConfig",
    "CpDensity",
    "CpdistError",
    "DEFAULT_LIMIT_CAP",
    "EmptyInputError",
    "FAMILIES",
    "FitResult",
    "FrequencyDataset",
    "MomentConditionError",
    "MomentReport",
    "ParameterError",
    "ParseError",
    "ResourceError",
    "SampleConfig",
    "SamplerOverflowError",
    "SamplerStepLimitError",
    "aic",
    "bench_bruteforce",
    "bench_density",
    "bench_to_csv",
    "bench_to_dict",
    "bruteforce_node_count",
    "closed_form_kurtosis",
    "closed_form_mean_var",
    "closed_form_skewness",
    "compare_models",
    "cp_density",
    "cp_density_bruteforce",
    "density_to_csv",
    "density_to_dict",
    "density_to_rows",
    "finiteness",
    "loglik",
    "mle_fit",
    "mom_fit",
    "moment_condition",
    "moment_report_dict",
    "pmf",
    "pmf_vector",
    "raw_moment",
    "raw_moments",
    "read_counts",
    "sample",
    "sample_moments",
    "sample_stopped",
    "skewness_kurtosis",
    "word_counts",
    "write_counts",
    "__version__",
]
