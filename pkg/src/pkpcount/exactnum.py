"""Exact integer and rational kernels used by every closed-form evaluation.

Rationals are plain :class:`fractions.Fraction` values; they are always in
lowest terms with a positive denominator and never round internally.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import ParameterError

ExactRational = Fraction

# trial division bound; every q used in practice is far below this
MAX_FACTOR_INPUT = 2**31


def factorial(k: int) -> int:
    if k < 0:
        raise ParameterError(f"factorial needs k >= 0, got {k}", "k >= 0")
    return math.factorial(k)


def binomial(a: int, b: int) -> int:
    """C(a, b), with C(a, b) = 0 whenever b > a."""
    if a < 0 or b < 0:
        raise ParameterError(f"binomial needs non-negative arguments, got ({a}, {b})")
    return math.comb(a, b)


@lru_cache(maxsize=1024)
def factorize(k: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``k`` as ``((p, e), ...)`` by trial division."""
    if k < 1:
        raise ParameterError(f"cannot factor {k}", "k >= 1")
    if k > MAX_FACTOR_INPUT:
        raise ParameterError(f"{k} exceeds the trial-division bound 2^31", "k <= 2^31")
    out = []
    p = 2
    while p * p <= k:
        if k % p == 0:
            e = 0
            while k % p == 0:
                k //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if k > 1:
        out.append((k, 1))
    return tuple(out)


def is_prime(k: int) -> bool:
    return k >= 2 and factorize(k) == ((k, 1),)


def is_prime_power(k: int) -> bool:
    return k >= 2 and len(factorize(k)) == 1


def euler_phi(k: int) -> int:
    result = k
    for p, _ in factorize(k):
        result = result // p * (p - 1)
    return result


def divisors(k: int) -> list[int]:
    divs = [1]
    for p, e in factorize(k):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


@lru_cache(maxsize=256)
def stirling1_row(m: int) -> tuple[int, ...]:
    """Row ``m`` of the unsigned Stirling numbers of the first kind.

    Entry ``k`` (0 <= k <= m) counts permutations of m points with exactly k
    cycles.  Built with |S(j,k)| = |S(j-1,k-1)| + (j-1)|S(j-1,k)|.
    """
    if m < 0:
        raise ParameterError(f"m must be >= 0, got {m}")
    row = [1]
    for j in range(1, m + 1):
        nxt = [0] * (j + 1)
        for k in range(1, j + 1):
            nxt[k] = row[k - 1] + (j - 1) * (row[k] if k < j else 0)
        row = nxt
    return tuple(row)


def stirling1_unsigned(m: int, k: int) -> int:
    if not 1 <= k <= m:
        raise ParameterError(f"need 1 <= k <= m, got m={m}, k={k}", "1 <= k <= m")
    return stirling1_row(m)[k]


@lru_cache(maxsize=65536)
def rank_count(m: int, n: int, r: int, q: int) -> int:
    """Number of m x n matrices of rank exactly r over a field of q elements."""
    if min(m, n, r) < 0:
        raise ParameterError(f"negative dimension in rank_count({m}, {n}, {r}, {q})")
    if r > min(m, n):
        return 0
    num = 1
    den = 1
    for i in range(r):
        qi = q**i
        num *= (q**m - qi) * (q**n - qi)
        den *= q**r - qi
    count, rem = divmod(num, den)
    assert rem == 0, "rank count division must be exact"
    return count


def _floor_log10(x: Fraction) -> int:
    # x > 0
    e = len(str(x.numerator)) - len(str(x.denominator))
    while Fraction(10) ** e > x:
        e -= 1
    while Fraction(10) ** (e + 1) <= x:
        e += 1
    return e


def render_decimal(x: Fraction | int, digits: int = 12, scientific: bool | None = None) -> str:
    """Render ``x`` correctly rounded (half-even) to ``digits`` significant digits.

    Scientific notation is used for |x| < 1e-3 or |x| >= 1e9 unless forced
    through ``scientific``.  Trailing zeros are dropped.
    """
    if digits < 1:
        raise ParameterError(f"digits must be >= 1, got {digits}", "digits >= 1")
    x = Fraction(x)
    if x == 0:
        return "0"
    sign = "-" if x < 0 else ""
    x = abs(x)
    e = _floor_log10(x)
    mant = round(x * Fraction(10) ** (digits - 1 - e))
    if mant == 10**digits:
        mant //= 10
        e += 1
    if scientific is None:
        scientific = x < Fraction(1, 1000) or x >= 10**9
    s = str(mant)
    if scientific:
        head, tail = s[0], s[1:].rstrip("0")
        body = f"{head}.{tail}" if tail else head
        return f"{sign}{body}e{e}"
    point = e + 1  # digits before the decimal point
    if point <= 0:
        s = "0" * (1 - point) + s
        point = 1
    elif point > len(s):
        s = s + "0" * (point - len(s))
    whole, frac = s[:point], s[point:].rstrip("0")
    return f"{sign}{whole}.{frac}" if frac else f"{sign}{whole}"


def format_rational(x: Fraction) -> str:
    """``p/q`` form; integers are shown without a denominator."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def decimal_exponent(x: Fraction) -> int:
    """floor(log10 |x|) computed exactly."""
    x = abs(Fraction(x))
    if x == 0:
        raise ParameterError("zero has no decimal exponent")
    return _floor_log10(x)
