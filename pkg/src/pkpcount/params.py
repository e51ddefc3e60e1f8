"""Problem parameters (q, ell, m, n) and the four generator variants."""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass

from .errors import ParameterError
from .exactnum import is_prime, is_prime_power


class Variant(str, enum.Enum):
    IPKP = "ipkp"
    IPKP_STAR = "ipkp_star"
    PKP = "pkp"
    PKP_STAR = "pkp_star"

    @property
    def star(self) -> bool:
        return self in (Variant.IPKP_STAR, Variant.PKP_STAR)

    @property
    def homogeneous(self) -> bool:
        return self in (Variant.PKP, Variant.PKP_STAR)

    @classmethod
    def parse(cls, text) -> "Variant":
        if isinstance(text, Variant):
            return text
        key = str(text).strip().lower().replace("-", "_").replace("*", "_star")
        key = key.replace("★", "_star")
        try:
            return cls(key)
        except ValueError:
            names = ", ".join(v.value for v in cls)
            raise ParameterError(f"unknown variant {text!r} (expected one of {names})", "variant") from None


class PrimePowerWarning(UserWarning):
    pass


@dataclass(frozen=True)
class ParameterSet:
    """Field size ``q``, rows of A ``ell``, permuted dimension ``m``, columns of B ``n``."""

    q: int
    ell: int
    m: int
    n: int = 1
    variant: Variant = Variant.IPKP

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant.parse(self.variant))
        for name in ("q", "ell", "m", "n"):
            if not isinstance(getattr(self, name), int) or isinstance(getattr(self, name), bool):
                raise ParameterError(f"{name} must be an integer, got {getattr(self, name)!r}", name)

    def violations(self) -> list[str]:
        """Names of the violated generator constraints (empty when valid)."""
        q, ell, m, n = self.q, self.ell, self.m, self.n
        bad = []
        if q < 2:
            bad.append("q >= 2")
        if ell < 1:
            bad.append("ell >= 1")
        if m < 1:
            bad.append("m >= 1")
        if n < 1:
            bad.append("n >= 1")
        if bad:
            return bad
        if self.variant.homogeneous:
            if ell + n > m:
                bad.append("ell + n <= m")
        elif max(ell, n) > m:
            bad.append("max(ell, n) <= m")
        if self.variant.star and not (n <= m < q**n):
            bad.append("n <= m < q^n")
        return bad

    def validate(self, require_prime: bool = False, warn_prime_power: bool = True) -> "ParameterSet":
        bad = self.violations()
        if bad:
            raise ParameterError(f"{self} violates {bad[0]}", bad[0])
        if require_prime and not is_prime(self.q):
            raise ParameterError(f"q={self.q} must be prime for sampling and enumeration", "q prime")
        if warn_prime_power and not is_prime_power(self.q):
            warnings.warn(f"q={self.q} is not a prime power; formula evaluated arithmetically", PrimePowerWarning)
        return self

    def with_variant(self, variant) -> "ParameterSet":
        return ParameterSet(self.q, self.ell, self.m, self.n, Variant.parse(variant))

    def __str__(self):
        return f"{self.variant.value}(q={self.q}, ell={self.ell}, m={self.m}, n={self.n})"
