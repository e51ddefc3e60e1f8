"""Exact expected solution counts for random IPKP/PKP instances.

Everything is evaluated in integers and :class:`~fractions.Fraction`;
decimal strings are produced only for display.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ParameterError
from .exactnum import (
    binomial,
    divisors,
    euler_phi,
    factorial,
    format_rational,
    is_prime_power,
    rank_count,
    render_decimal,
    stirling1_row,
)
from .params import ParameterSet, PrimePowerWarning, Variant

DEFAULT_DIGITS = 12


def _prod_ratio(q: int, top: int, bottom: int, count: int) -> tuple[int, int]:
    """(num, den) of prod_{i<count} (q^top - q^i) / (q^bottom - q^i)."""
    num = den = 1
    for i in range(count):
        qi = q**i
        num *= q**top - qi
        den *= q**bottom - qi
    return num, den


def heuristic_expectation(params: ParameterSet) -> Fraction:
    """The classical estimate m! / q^(ell n)."""
    return Fraction(factorial(params.m), params.q ** (params.ell * params.n))


# --- validity of the closed forms ----------------------------------------------


def validity_violations(params: ParameterSet) -> list[str]:
    """Hypotheses of the closed form for ``params.variant`` that fail."""
    q, ell, m, n = params.q, params.ell, params.m, params.n
    bad = []
    if q < 2:
        bad.append("q >= 2")
    if min(ell, m, n) < 1:
        bad.append("ell, m, n >= 1")
    v = params.variant
    if v is Variant.IPKP:
        if max(ell, n) > m:
            bad.append("max(ell, n) <= m")
    elif v is Variant.IPKP_STAR:
        if not ell <= m < q:
            bad.append("ell <= m < q")
    elif v is Variant.PKP:
        if not 0 < ell < m:
            bad.append("0 < ell < m")
    elif not 0 < ell < m < q:
        bad.append("0 < ell < m < q")
    return bad


def _check(params: ParameterSet, variant: Variant, strict: bool) -> ParameterSet:
    if params.variant is not variant:
        params = params.with_variant(variant)
    if variant is not Variant.IPKP and params.n != 1:
        raise ParameterError(
            f"no closed form for {variant.value} with n = {params.n}: only the monodimensional case n = 1 "
            "is known; generalizing it to the multidimensional case is an open problem",
            "n = 1",
        )
    bad = validity_violations(params)
    if bad and strict:
        raise ParameterError(f"{params} violates {bad[0]}", bad[0])
    return params


# --- the four closed forms -----------------------------------------------------


def expected_ipkp(params: ParameterSet, strict: bool = True) -> Fraction:
    """E[N_sol] for the inhomogeneous generator with unconstrained B, any n.

    Sums, over the number k of cycles of sigma, the probability that
    A (P(sigma) - I) B = 0, which depends on sigma only through
    rank(P(sigma) - I) = m - k.
    """
    params = _check(params, Variant.IPKP, strict)
    q, ell, m, n = params.q, params.ell, params.m, params.n
    stirling = stirling1_row(m)
    # common denominator: |F^{ell x m, ell}| * prod_i (q^m - q^i)
    den_b = 1
    for i in range(n):
        den_b *= q**m - q**i
    total = 0
    for k in range(1, m + 1):
        inner = 0
        for r in range(min(ell, m - k) + 1):
            c = rank_count(ell, m - k, r, q) * rank_count(ell - r, k, ell - r, q)
            if not c:
                continue
            b_num = 1
            for i in range(n):
                b_num *= q ** (m - r) - q**i
            inner += c * q ** (k * r) * b_num
        total += stirling[k] * inner
    return Fraction(total, rank_count(ell, m, ell, q) * den_b)


def expected_ipkp_star_mono(params: ParameterSet, strict: bool = True) -> Fraction:
    """E[N_sol] for the inhomogeneous generator with distinct nonzero entries in b (n = 1)."""
    params = _check(params, Variant.IPKP_STAR, strict)
    q, ell, m = params.q, params.ell, params.m
    return 1 + Fraction((factorial(m) - 1) * (q ** (m - ell) - 1), q**m - 1)


def sum_E_sigma(m: int, q: int) -> int:
    """Total number of (sigma, x) with sigma in S_m and x a nonzero eigenvector of P(sigma).

    Closed form m! (sum_{d | q-1} phi(d) C(floor((q+m-1)/d), floor(m/d)) - q + 1).
    """
    if m < 1 or q < 2:
        raise ParameterError(f"need m >= 1 and q >= 2, got m={m}, q={q}")
    s = sum(euler_phi(d) * binomial((q + m - 1) // d, m // d) for d in divisors(q - 1))
    return factorial(m) * (s - q + 1)


def phi_binomial_sum(m: int, q: int) -> int:
    """sum_{d | gcd(q-1, m)} phi(d) C((q-1)/d, m/d)."""
    return sum(euler_phi(d) * binomial((q - 1) // d, m // d) for d in divisors(math.gcd(q - 1, m)))


def sum_E_sigma_star(m: int, q: int) -> int:
    """As :func:`sum_E_sigma` restricted to eigenvectors with distinct nonzero entries."""
    if not 1 <= m <= q - 1:
        raise ParameterError(f"need 1 <= m <= q - 1, got m={m}, q={q}", "1 <= m <= q - 1")
    return factorial(m) * phi_binomial_sum(m, q)


def expected_pkp_mono(params: ParameterSet, strict: bool = True) -> Fraction:
    """E[N_sol] for the homogeneous generator with unconstrained b (n = 1)."""
    params = _check(params, Variant.PKP, strict)
    q, ell, m = params.q, params.ell, params.m
    qm, qml = q**m, q ** (m - ell)
    first = Fraction(factorial(m) * (qml - q), qm - q)
    second = Fraction((qm - qml) * sum_E_sigma(m, q), (qm - 1) * (qm - q))
    return first + second


def expected_pkp_star_mono(params: ParameterSet, strict: bool = True) -> Fraction:
    """E[N_sol] for the homogeneous generator with distinct nonzero entries in b (n = 1)."""
    params = _check(params, Variant.PKP_STAR, strict)
    q, ell, m = params.q, params.ell, params.m
    qm, qml = q**m, q ** (m - ell)
    first = Fraction(factorial(m) * (qml - q), qm - q)
    c = binomial(q - 1, m)
    if c == 0:
        raise ParameterError(f"C(q-1, m) = 0 for q={q}, m={m}; formula undefined", "m < q")
    second = Fraction((qm - qml) * phi_binomial_sum(m, q), (qm - q) * c)
    return first + second


FORMULAS = {
    Variant.IPKP: expected_ipkp,
    Variant.IPKP_STAR: expected_ipkp_star_mono,
    Variant.PKP: expected_pkp_mono,
    Variant.PKP_STAR: expected_pkp_star_mono,
}


def expected(params: ParameterSet, strict: bool = True) -> Fraction:
    """Dispatch to the closed form matching ``params.variant``."""
    return FORMULAS[params.variant](params, strict)


# --- supporting probabilities --------------------------------------------------


def prob_block_rank(ell: int, m1: int, m2: int, r: int, q: int) -> Fraction:
    """P[rank(A1) = r] for A = (A1 | A2) uniform of full row rank ell, A1 with m1 columns."""
    if ell > m1 + m2 or min(ell, m1, m2) < 0:
        raise ParameterError(f"need 0 <= ell <= m1 + m2, got ell={ell}, m1={m1}, m2={m2}", "ell <= m1 + m2")
    if not 0 <= r <= min(ell, m1):
        raise ParameterError(f"r={r} outside [0, min(ell, m1)] = [0, {min(ell, m1)}]", "0 <= r <= min(ell, m1)")
    num = rank_count(ell, m1, r, q) * rank_count(ell - r, m2, ell - r, q) * q ** (m2 * r)
    return Fraction(num, rank_count(ell, m1 + m2, ell, q))


def prob_zero_product(ell: int, m: int, mprime: int, n: int, s: int, q: int, which: str) -> Fraction:
    """Probability that a fixed rank-s ``M`` (m x m') is annihilated.

    A is uniform of shape ell x m and rank ell, B uniform of shape m' x n and
    rank n, independent.  ``which`` selects the event: ``"AM"`` (A M = 0),
    ``"MB"`` (M B = 0) or ``"AMB"`` (A M B = 0).
    """
    if min(ell, m, mprime, n, s) < 0 or s > min(m, mprime) or ell > m or n > mprime:
        raise ParameterError(
            f"need s <= min(m, m'), ell <= m, n <= m'; got ell={ell}, m={m}, m'={mprime}, n={n}, s={s}",
            "s <= min(m, m'), ell <= m, n <= m'",
        )
    which = which.upper()
    if which == "AM":
        return Fraction(*_prod_ratio(q, m - s, m, ell))
    if which == "MB":
        return Fraction(*_prod_ratio(q, mprime - s, mprime, n))
    if which != "AMB":
        raise ParameterError(f"unknown event {which!r}; expected AM, MB or AMB", "which")
    total = Fraction(0)
    for r in range(min(ell, s) + 1):
        p_rank = prob_block_rank(ell, s, m - s, r, q)
        if p_rank:
            total += p_rank * Fraction(*_prod_ratio(q, mprime - r, mprime, n))
    return total


def expected_ipkp_by_cycle_count(params: ParameterSet) -> Fraction:
    """Same quantity as :func:`expected_ipkp`, assembled from :func:`prob_zero_product`.

    Used as a plumbing cross-check between the Stirling, rank-count and
    probability kernels.
    """
    params = _check(params, Variant.IPKP, True)
    q, ell, m, n = params.q, params.ell, params.m, params.n
    stirling = stirling1_row(m)
    return sum(
        (stirling[k] * prob_zero_product(ell, m, m, n, m - k, q, "AMB") for k in range(1, m + 1)),
        Fraction(0),
    )


def check_phi_binomial_bound(m: int, q: int) -> bool:
    """Whether sum_{d | gcd(q-1, m)} phi(d) C((q-1)/d, m/d) < 3 C(q-1, m)."""
    if not 1 <= m <= q - 2:
        raise ParameterError(f"need 1 <= m <= q - 2, got m={m}, q={q}", "1 <= m <= q - 2")
    return phi_binomial_sum(m, q) < 3 * binomial(q - 1, m)


# --- reports -------------------------------------------------------------------


@dataclass(frozen=True)
class ExpectationReport:
    params: ParameterSet
    exact: Fraction
    heuristic: Fraction
    within_validity: bool = True
    digits: int = DEFAULT_DIGITS
    exact_minus_one: Fraction = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "exact_minus_one", self.exact - 1)

    @property
    def ratio(self) -> Fraction:
        """Extra solutions beyond the planted one, relative to the heuristic."""
        return self.exact_minus_one / self.heuristic

    def decimal(self, x: Fraction) -> str:
        return render_decimal(x, self.digits)

    def as_dict(self) -> dict:
        p = self.params
        return {
            "variant": p.variant.value,
            "q": p.q,
            "ell": p.ell,
            "m": p.m,
            "n": p.n,
            "exact": format_rational(self.exact),
            "exact_num": self.exact.numerator,
            "exact_den": self.exact.denominator,
            "exact_decimal": self.decimal(self.exact),
            "exact_minus_one": format_rational(self.exact_minus_one),
            "exact_minus_one_decimal": self.decimal(self.exact_minus_one),
            "heuristic": format_rational(self.heuristic),
            "heuristic_decimal": self.decimal(self.heuristic),
            "ratio_decimal": self.decimal(self.ratio),
            "within_validity": self.within_validity,
        }

    def text(self) -> str:
        p = self.params
        lines = [
            f"parameters        {p}",
            f"exact             {format_rational(self.exact)}",
            f"exact (decimal)   {self.decimal(self.exact)}",
            f"exact - 1         {self.decimal(self.exact_minus_one)}",
            f"heuristic         {self.decimal(self.heuristic)}",
            f"ratio             {self.decimal(self.ratio)}",
        ]
        if not self.within_validity:
            lines.append("note              outside stated validity: " + ", ".join(validity_violations(p)))
        return "\n".join(lines)


def expectation_report(params: ParameterSet, strict: bool = True, digits: int = DEFAULT_DIGITS) -> ExpectationReport:
    if not is_prime_power(params.q):
        warnings.warn(f"q={params.q} is not a prime power; formula evaluated arithmetically", PrimePowerWarning)
    exact = expected(params, strict)
    return ExpectationReport(
        params,
        exact,
        heuristic_expectation(params),
        within_validity=not validity_violations(params),
        digits=digits,
    )
