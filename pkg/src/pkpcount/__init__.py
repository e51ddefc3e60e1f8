"""Exact expected solution counts for random Permuted Kernel Problem instances.

Closed forms live in :mod:`pkpcount.expectation`, instance generators in
:mod:`pkpcount.generators` and brute-force/Monte Carlo checks in
:mod:`pkpcount.oracle`.
"""

from .errors import CapExceeded, InstanceFormatError, ParameterError, PKPError, SamplingError
from .exactnum import (
    binomial,
    divisors,
    euler_phi,
    factorial,
    format_rational,
    rank_count,
    render_decimal,
    stirling1_unsigned,
)
from .expectation import (
    ExpectationReport,
    check_phi_binomial_bound,
    expectation_report,
    expected,
    expected_ipkp,
    expected_ipkp_star_mono,
    expected_pkp_mono,
    expected_pkp_star_mono,
    heuristic_expectation,
    prob_block_rank,
    prob_zero_product,
    sum_E_sigma,
    sum_E_sigma_star,
)
from .generators import (
    IpkpInstance,
    PkpInstance,
    deserialize,
    gen_ipkp,
    gen_ipkp_star,
    gen_pkp,
    gen_pkp_star,
    generate,
    serialize,
)
from .gfp import GF, inv, multiplicative_order
from .linalg import FqMatrix, Permutation, compose, left_kernel_basis, mat_mul, permute_rows, rank, rank_sigma_minus_identity
from .oracle import (
    MonteCarloReport,
    SolutionCount,
    brute_E_sigma,
    check_cycle_identity,
    count_solutions,
    exhaustive_expectation,
    monte_carlo_expectation,
)
from .params import ParameterSet, Variant
from .sampling import (
    SeededRng,
    sample_distinct_nonzero_rows_full_rank,
    sample_full_rank,
    sample_permutation,
)

__version__ = "0.1.0"

__all__ = [
    "binomial",
    "brute_E_sigma",
    "CapExceeded",
    "check_cycle_identity",
    "check_phi_binomial_bound",
    "compose",
    "count_solutions",
    "deserialize",
    "divisors",
    "euler_phi",
    "exhaustive_expectation",
    "expectation_report",
    "ExpectationReport",
    "expected",
    "expected_ipkp",
    "expected_ipkp_star_mono",
    "expected_pkp_mono",
    "expected_pkp_star_mono",
    "factorial",
    "format_rational",
    "FqMatrix",
    "gen_ipkp",
    "gen_ipkp_star",
    "gen_pkp",
    "gen_pkp_star",
    "generate",
    "GF",
    "heuristic_expectation",
    "InstanceFormatError",
    "inv",
    "IpkpInstance",
    "left_kernel_basis",
    "mat_mul",
    "monte_carlo_expectation",
    "MonteCarloReport",
    "multiplicative_order",
    "ParameterError",
    "ParameterSet",
    "Permutation",
    "permute_rows",
    "PKPError",
    "PkpInstance",
    "prob_block_rank",
    "prob_zero_product",
    "rank",
    "rank_count",
    "rank_sigma_minus_identity",
    "render_decimal",
    "sample_distinct_nonzero_rows_full_rank",
    "sample_full_rank",
    "sample_permutation",
    "SamplingError",
    "SeededRng",
    "serialize",
    "SolutionCount",
    "stirling1_unsigned",
    "sum_E_sigma",
    "sum_E_sigma_star",
    "Variant",
]
