"""Dense matrices over a prime field and permutations acting on their rows.

Permutation matrix convention: the matrix of ``pi`` has a 1 in row i,
column j exactly when ``j == pi(i)``.  Hence ``pi.matrix(q) @ B`` has row i
equal to row ``pi(i)`` of B, which is what :func:`permute_rows` computes.

Two products are provided:

* ``compose(s, t)`` is function composition, ``(s o t)(i) = s(t(i))``;
  it satisfies ``permute_rows(compose(s, t), X) == permute_rows(t, permute_rows(s, X))``.
* ``s * t`` is the product in matrix order, so that
  ``(s * t).matrix(q) == s.matrix(q) @ t.matrix(q)``; it equals ``compose(t, s)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .errors import ParameterError
from .gfp import inv


@dataclass(frozen=True)
class FqMatrix:
    """Immutable row-major matrix with entries in ``[0, q)``."""

    rows: tuple
    q: int
    ncols: int = -1

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in r) for r in self.rows)
        ncols = self.ncols
        if ncols < 0:
            if not rows:
                raise ParameterError("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        for i, r in enumerate(rows):
            if len(r) != ncols:
                raise ParameterError(f"row {i} has {len(r)} entries, expected {ncols}")
            for j, v in enumerate(r):
                if not 0 <= v < self.q:
                    raise ParameterError(f"entry ({i}, {j}) = {v} outside [0, {self.q})")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "ncols", ncols)

    @classmethod
    def reduce(cls, rows, q: int, ncols: int = -1) -> "FqMatrix":
        """Build a matrix, reducing every entry modulo q."""
        return cls(tuple(tuple(int(v) % q for v in r) for r in rows), q, ncols)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, q: int) -> "FqMatrix":
        return cls(((0,) * ncols,) * nrows, q, ncols)

    @classmethod
    def identity(cls, size: int, q: int) -> "FqMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(size)) for i in range(size)), q, size)

    @classmethod
    def column(cls, values, q: int) -> "FqMatrix":
        return cls.reduce([[v] for v in values], q, 1)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __iter__(self):
        return iter(self.rows)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def to_numpy(self):
        import numpy as np

        return np.array(self.rows, dtype=np.int64).reshape(self.shape)

    @property
    def T(self) -> "FqMatrix":
        return FqMatrix(tuple(tuple(r[j] for r in self.rows) for j in range(self.ncols)), self.q, self.nrows)

    def _check_same_field(self, other: "FqMatrix"):
        if self.q != other.q:
            raise ParameterError(f"modulus mismatch: {self.q} vs {other.q}")

    def __matmul__(self, other: "FqMatrix") -> "FqMatrix":
        return mat_mul(self, other)

    def __add__(self, other: "FqMatrix") -> "FqMatrix":
        self._check_same_field(other)
        if self.shape != other.shape:
            raise ParameterError(f"shape mismatch: {self.shape} vs {other.shape}")
        q = self.q
        return FqMatrix(tuple(tuple((a + b) % q for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)), q, self.ncols)

    def __sub__(self, other: "FqMatrix") -> "FqMatrix":
        return self + other.scale(-1)

    def scale(self, c: int) -> "FqMatrix":
        q = self.q
        return FqMatrix(tuple(tuple(c * v % q for v in r) for r in self.rows), q, self.ncols)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def rank(self) -> int:
        return rank(self)

    def rref(self):
        return rref(self)

    def left_kernel_basis(self) -> "FqMatrix":
        return left_kernel_basis(self)

    def hstack(self, other: "FqMatrix") -> "FqMatrix":
        self._check_same_field(other)
        if self.nrows != other.nrows:
            raise ParameterError("hstack needs equal row counts")
        return FqMatrix(tuple(r + s for r, s in zip(self.rows, other.rows)), self.q, self.ncols + other.ncols)


def mat_mul(X: FqMatrix, Y: FqMatrix) -> FqMatrix:
    if X.q != Y.q:
        raise ParameterError(f"modulus mismatch: {X.q} vs {Y.q}")
    if X.ncols != Y.nrows:
        raise ParameterError(f"cannot multiply {X.shape} by {Y.shape}")
    q = X.q
    cols = list(zip(*Y.rows)) if Y.nrows else [()] * Y.ncols
    out = tuple(
        tuple(sum(a * b for a, b in zip(r, c)) % q for c in cols)
        for r in X.rows
    )
    return FqMatrix(out, q, Y.ncols)


def _eliminate(rows: list[list[int]], q: int, ncols: int) -> list[int]:
    """In-place reduced row echelon form; returns pivot columns.

    The pivot is the first nonzero entry found scanning down each column.
    """
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r]
        s = inv(piv[c], q)
        if s != 1:
            piv[:] = [v * s % q for v in piv]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % q for a, b in zip(rows[i], piv)]
        pivots.append(c)
        r += 1
    return pivots


def rref(X: FqMatrix) -> tuple[FqMatrix, list[int]]:
    """Reduced row echelon form (zero rows dropped) and its pivot columns."""
    rows = [list(r) for r in X.rows]
    pivots = _eliminate(rows, X.q, X.ncols)
    return FqMatrix(tuple(rows[: len(pivots)]), X.q, X.ncols), pivots


def rank(X: FqMatrix) -> int:
    rows = [list(r) for r in X.rows]
    return len(_eliminate(rows, X.q, X.ncols))


def left_kernel_basis(X: FqMatrix) -> FqMatrix:
    """Rows spanning {x : x X = 0}, as the canonical reduced echelon basis."""
    q = X.q
    m = X.nrows
    R, pivots = rref(X.T)  # right kernel of X^T
    free = [c for c in range(m) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * m
        v[f] = 1
        for row, p in zip(R.rows, pivots):
            v[p] = -row[f] % q
        basis.append(v)
    if not basis:
        return FqMatrix((), q, m)
    K, _ = rref(FqMatrix(tuple(map(tuple, basis)), q, m))
    return K


@dataclass(frozen=True)
class Permutation:
    """A bijection of {0, ..., m-1}; ``images[i]`` is the image of i.

    Serialized forms use 1-indexed images (see :meth:`one_indexed`).
    """

    images: tuple

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        if sorted(images) != list(range(len(images))):
            raise ParameterError(f"{list(images)} is not a permutation of 0..{len(images) - 1}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, m: int) -> "Permutation":
        return cls(tuple(range(m)))

    @classmethod
    def from_one_indexed(cls, images) -> "Permutation":
        return cls(tuple(int(v) - 1 for v in images))

    def one_indexed(self) -> list[int]:
        return [v + 1 for v in self.images]

    @property
    def m(self) -> int:
        return len(self.images)

    def __len__(self):
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # matrix order: P(self * other) == P(self) @ P(other)
        return compose(other, self)

    def inverse(self) -> "Permutation":
        out = [0] * self.m
        for i, v in enumerate(self.images):
            out[v] = i
        return Permutation(tuple(out))

    @cached_property
    def cycles(self) -> tuple[tuple[int, ...], ...]:
        seen = [False] * self.m
        out = []
        for start in range(self.m):
            if seen[start]:
                continue
            cyc = []
            i = start
            while not seen[i]:
                seen[i] = True
                cyc.append(i)
                i = self.images[i]
            out.append(tuple(cyc))
        return tuple(out)

    @property
    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles), reverse=True))

    @property
    def num_cycles(self) -> int:
        return len(self.cycles)

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.images))

    def matrix(self, q: int) -> FqMatrix:
        m = self.m
        return FqMatrix(tuple(tuple(int(j == self.images[i]) for j in range(m)) for i in range(m)), q, m)


def compose(sigma: Permutation, tau: Permutation) -> Permutation:
    """Function composition: i -> sigma(tau(i))."""
    if sigma.m != tau.m:
        raise ParameterError("cannot compose permutations of different sizes")
    return Permutation(tuple(sigma.images[t] for t in tau.images))


def all_permutations(m: int):
    """All of S_m in lexicographic order of their image tuples."""
    for p in itertools.permutations(range(m)):
        yield Permutation(p)


def permute_rows(pi: Permutation, X: FqMatrix) -> FqMatrix:
    """Row i of the result is row pi(i) of X (the product P(pi) @ X)."""
    if pi.m != X.nrows:
        raise ParameterError(f"permutation of size {pi.m} cannot act on {X.nrows} rows")
    return FqMatrix(tuple(X.rows[j] for j in pi.images), X.q, X.ncols)


def rank_sigma_minus_identity(sigma: Permutation, verify: bool = False, q: int = 2) -> int:
    """rank(P(sigma) - I) = m - (number of cycles of sigma)."""
    r = sigma.m - sigma.num_cycles
    if verify:
        explicit = rank(sigma.matrix(q) - FqMatrix.identity(sigma.m, q))
        if explicit != r:
            raise AssertionError(f"rank(P - I) = {explicit} but m - cycles = {r} for {sigma}")
    return r
