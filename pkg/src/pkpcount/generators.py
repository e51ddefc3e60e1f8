"""Random IPKP/PKP instance generators and the instance file format."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Optional, Union

from .errors import InstanceFormatError, ParameterError
from .linalg import FqMatrix, Permutation, left_kernel_basis, permute_rows, rank
from .params import ParameterSet, Variant
from .sampling import (
    sample_distinct_nonzero_rows_full_rank,
    sample_full_rank,
    sample_permutation,
)

FORMAT_VERSION = 1


@dataclass(frozen=True)
class IpkpInstance:
    params: ParameterSet
    A: FqMatrix
    B: FqMatrix
    C: FqMatrix
    secret: Optional[Permutation] = None

    def target(self) -> FqMatrix:
        return self.C

    def is_solution(self, rho: Permutation) -> bool:
        return self.A @ permute_rows(rho, self.B) == self.C

    def check_invariants(self) -> None:
        _check_common(self)
        if self.C.shape != (self.params.ell, self.params.n):
            raise ParameterError(f"C has shape {self.C.shape}, expected {(self.params.ell, self.params.n)}")


@dataclass(frozen=True)
class PkpInstance:
    params: ParameterSet
    A: FqMatrix
    B: FqMatrix
    secret: Optional[Permutation] = None

    @property
    def C(self) -> FqMatrix:
        return FqMatrix.zeros(self.params.ell, self.params.n, self.params.q)

    def target(self) -> FqMatrix:
        return self.C

    def is_solution(self, rho: Permutation) -> bool:
        return (self.A @ permute_rows(rho, self.B)).is_zero()

    def check_invariants(self) -> None:
        _check_common(self)


Instance = Union[IpkpInstance, PkpInstance]


def _check_common(inst) -> None:
    p = inst.params
    if inst.A.shape != (p.ell, p.m):
        raise ParameterError(f"A has shape {inst.A.shape}, expected {(p.ell, p.m)}")
    if inst.B.shape != (p.m, p.n):
        raise ParameterError(f"B has shape {inst.B.shape}, expected {(p.m, p.n)}")
    if rank(inst.A) != p.ell:
        raise ParameterError(f"rank(A) = {rank(inst.A)}, expected {p.ell}", "rank(A) = ell")
    if rank(inst.B) != p.n:
        raise ParameterError(f"rank(B) = {rank(inst.B)}, expected {p.n}", "rank(B) = n")
    if p.variant.star:
        rows = inst.B.rows
        if any(not any(r) for r in rows) or len(set(rows)) != len(rows):
            raise ParameterError("B must have pairwise distinct nonzero rows", "distinct nonzero rows")
    if inst.secret is not None:
        if inst.secret.m != p.m:
            raise ParameterError(f"secret permutation has size {inst.secret.m}, expected {p.m}")
        if not inst.is_solution(inst.secret):
            raise ParameterError("secret permutation does not solve the instance", "A P B = C")


def _sample_B(params: ParameterSet, rng: random.Random) -> FqMatrix:
    if params.variant.star:
        return sample_distinct_nonzero_rows_full_rank(params.m, params.n, params.q, rng)
    return sample_full_rank(params.n, params.m, params.q, rng).T


def _prepare(params: ParameterSet, variant: Variant) -> ParameterSet:
    if params.variant is not variant:
        params = params.with_variant(variant)
    return params.validate(require_prime=True, warn_prime_power=False)


def _gen_inhomogeneous(params: ParameterSet, rng: random.Random) -> IpkpInstance:
    A = sample_full_rank(params.ell, params.m, params.q, rng)
    B = _sample_B(params, rng)
    pi = sample_permutation(params.m, rng)
    C = A @ permute_rows(pi, B)
    return IpkpInstance(params, A, B, C, pi)


def _gen_homogeneous(params: ParameterSet, rng: random.Random) -> PkpInstance:
    B = _sample_B(params, rng)
    pi = sample_permutation(params.m, rng)
    # rows of A range over the left kernel of P(pi) B, which has dimension m - n
    K = left_kernel_basis(permute_rows(pi, B))
    M = sample_full_rank(params.ell, params.m - params.n, params.q, rng)
    return PkpInstance(params, M @ K, B, pi)


def gen_ipkp(params: ParameterSet, rng: random.Random) -> IpkpInstance:
    """A uniform rank-ell, B uniform rank-n, pi uniform, C = A P(pi) B."""
    return _gen_inhomogeneous(_prepare(params, Variant.IPKP), rng)


def gen_ipkp_star(params: ParameterSet, rng: random.Random) -> IpkpInstance:
    """As :func:`gen_ipkp` with B drawn from matrices with distinct nonzero rows."""
    return _gen_inhomogeneous(_prepare(params, Variant.IPKP_STAR), rng)


def gen_pkp(params: ParameterSet, rng: random.Random) -> PkpInstance:
    """B and pi uniform, then A uniform among rank-ell matrices with A P(pi) B = 0.

    A is built as M K with K a basis of the left kernel of P(pi) B and M a
    uniform full-rank coefficient matrix; M -> M K is a bijection onto the
    admissible A and preserves rank, so this matches redrawing A until it
    annihilates P(pi) B.
    """
    return _gen_homogeneous(_prepare(params, Variant.PKP), rng)


def gen_pkp_star(params: ParameterSet, rng: random.Random) -> PkpInstance:
    return _gen_homogeneous(_prepare(params, Variant.PKP_STAR), rng)


GENERATORS = {
    Variant.IPKP: gen_ipkp,
    Variant.IPKP_STAR: gen_ipkp_star,
    Variant.PKP: gen_pkp,
    Variant.PKP_STAR: gen_pkp_star,
}


def generate(params: ParameterSet, rng: random.Random) -> Instance:
    return GENERATORS[params.variant](params, rng)


# --- instance documents -------------------------------------------------------


def to_document(instance: Instance, with_secret: bool = False) -> dict:
    p = instance.params
    doc = {
        "format_version": FORMAT_VERSION,
        "variant": p.variant.value,
        "q": p.q,
        "ell": p.ell,
        "m": p.m,
        "n": p.n,
        "A": instance.A.tolist(),
        "B": instance.B.tolist(),
    }
    if isinstance(instance, IpkpInstance):
        doc["C"] = instance.C.tolist()
    if with_secret and instance.secret is not None:
        doc["pi"] = instance.secret.one_indexed()
    return doc


def serialize(instance: Instance, with_secret: bool = False) -> str:
    """JSON text; the secret permutation is written only when asked for."""
    doc = to_document(instance, with_secret)
    lines = ["{"]
    items = list(doc.items())
    for k, (key, value) in enumerate(items):
        sep = "," if k < len(items) - 1 else ""
        if key in ("A", "B", "C"):
            body = ",\n    ".join(json.dumps(r) for r in value)
            text = f"[\n    {body}\n  ]" if value else "[]"
        else:
            text = json.dumps(value)
        lines.append(f"  {json.dumps(key)}: {text}{sep}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _int_field(doc: dict, key: str) -> int:
    if key not in doc:
        raise InstanceFormatError("missing field", key)
    v = doc[key]
    if not isinstance(v, int) or isinstance(v, bool):
        raise InstanceFormatError(f"expected an integer, got {v!r}", key)
    return v


def _matrix_field(doc: dict, key: str, nrows: int, ncols: int, q: int) -> FqMatrix:
    if key not in doc:
        raise InstanceFormatError("missing field", key)
    rows = doc[key]
    if not isinstance(rows, list) or len(rows) != nrows:
        raise InstanceFormatError(f"expected {nrows} rows", key)
    for i, r in enumerate(rows):
        if not isinstance(r, list) or len(r) != ncols:
            raise InstanceFormatError(f"expected {ncols} entries", f"{key}[{i}]")
        for j, v in enumerate(r):
            if not isinstance(v, int) or isinstance(v, bool):
                raise InstanceFormatError(f"entry {v!r} is not an integer", f"{key}[{i}][{j}]")
            if not 0 <= v < q:
                raise InstanceFormatError(f"entry {v} outside [0, {q})", f"{key}[{i}][{j}]")
    return FqMatrix(tuple(tuple(r) for r in rows), q, ncols)


def from_document(doc: dict) -> Instance:
    if not isinstance(doc, dict):
        raise InstanceFormatError("top level must be an object")
    version = _int_field(doc, "format_version")
    if version != FORMAT_VERSION:
        raise InstanceFormatError(f"unsupported version {version}", "format_version")
    if "variant" not in doc:
        raise InstanceFormatError("missing field", "variant")
    try:
        variant = Variant.parse(doc["variant"])
    except ParameterError as exc:
        raise InstanceFormatError(str(exc), "variant") from None
    q, ell, m, n = (_int_field(doc, k) for k in ("q", "ell", "m", "n"))
    try:
        params = ParameterSet(q, ell, m, n, variant).validate(require_prime=True, warn_prime_power=False)
    except ParameterError as exc:
        raise InstanceFormatError(str(exc), "parameters") from None
    A = _matrix_field(doc, "A", ell, m, q)
    B = _matrix_field(doc, "B", m, n, q)
    secret = None
    if "pi" in doc:
        pi = doc["pi"]
        if not isinstance(pi, list) or len(pi) != m:
            raise InstanceFormatError(f"expected a list of {m} images", "pi")
        try:
            secret = Permutation.from_one_indexed(pi)
        except (ParameterError, TypeError, ValueError) as exc:
            raise InstanceFormatError(str(exc), "pi") from None
    if "C" in doc:
        if variant.homogeneous:
            raise InstanceFormatError(f"variant {variant.value!r} does not take a C matrix", "C")
        inst = IpkpInstance(params, A, B, _matrix_field(doc, "C", ell, n, q), secret)
    else:
        if not variant.homogeneous:
            raise InstanceFormatError(f"variant {variant.value!r} requires a C matrix", "C")
        inst = PkpInstance(params, A, B, secret)
    try:
        inst.check_invariants()
    except ParameterError as exc:
        raise InstanceFormatError(str(exc), "instance") from None
    return inst


def deserialize(text: str) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"invalid JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from None
    return from_document(doc)
