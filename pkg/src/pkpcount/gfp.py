"""Arithmetic in the prime field F_q.

Elements are plain ints in ``[0, q)``; the modulus travels with a
:class:`GF` context instead of with each element.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParameterError
from .exactnum import divisors, is_prime


def inv(x: int, q: int) -> int:
    """Multiplicative inverse of ``x`` modulo ``q`` (extended Euclid)."""
    x %= q
    if x == 0:
        raise ZeroDivisionError(f"0 has no inverse modulo {q}")
    r0, r1, s0, s1 = q, x, 0, 1
    while r1:
        t = r0 // r1
        r0, r1 = r1, r0 - t * r1
        s0, s1 = s1, s0 - t * s1
    if r0 != 1:
        raise ZeroDivisionError(f"{x} is not invertible modulo {q}")
    return s0 % q


def multiplicative_order(x: int, q: int) -> int:
    """Least d >= 1 with x^d = 1 in F_q; always a divisor of q - 1."""
    x %= q
    if x == 0:
        raise ZeroDivisionError("0 has no multiplicative order")
    for d in divisors(q - 1):
        if pow(x, d, q) == 1:
            return d
    raise ParameterError(f"{x} has no order dividing {q - 1}; is q={q} prime?", "q prime")


@dataclass(frozen=True)
class GF:
    """Prime field context."""

    q: int

    def __post_init__(self):
        if not is_prime(self.q):
            raise ParameterError(f"GF({self.q}): modulus must be prime", "q prime")

    def __call__(self, x: int) -> int:
        return x % self.q

    def add(self, x: int, y: int) -> int:
        return (x + y) % self.q

    def sub(self, x: int, y: int) -> int:
        return (x - y) % self.q

    def mul(self, x: int, y: int) -> int:
        return x * y % self.q

    def neg(self, x: int) -> int:
        return -x % self.q

    def inv(self, x: int) -> int:
        return inv(x, self.q)

    def div(self, x: int, y: int) -> int:
        return x * inv(y, self.q) % self.q

    def pow(self, x: int, e: int) -> int:
        if e < 0:
            return pow(inv(x, self.q), -e, self.q)
        return pow(x, e, self.q)

    def order(self, x: int) -> int:
        return multiplicative_order(x, self.q)

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)
