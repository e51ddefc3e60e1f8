"""Seeded uniform samplers for permutations and rank-constrained matrices.

The generator is the stdlib Mersenne Twister (``random.Random``).  Its
``randrange``/``shuffle``/``sample`` draw from ``getrandbits`` with rejection,
so integer sampling is unbiased.  Outputs are bit-identical for a given seed
and call sequence on every CPython >= 3.2.
"""

from __future__ import annotations

import hashlib
import random

from .errors import ParameterError, SamplingError
from .exactnum import is_prime
from .linalg import FqMatrix, Permutation, rank

MAX_REJECTIONS = 10_000
SEED_MASK = 2**64 - 1


class SeededRng(random.Random):
    """``random.Random`` that remembers its 64-bit seed and can derive children."""

    def __init__(self, seed: int = 0):
        seed = int(seed)
        if not 0 <= seed <= SEED_MASK:
            raise ParameterError(f"seed must be a 64-bit unsigned integer, got {seed}", "0 <= seed < 2^64")
        self.seed_value = seed
        super().__init__(seed)

    def spawn(self, index: int) -> "SeededRng":
        """Independent generator for task ``index``, a pure function of (seed, index)."""
        return SeededRng(derive_seed(self.seed_value, index))


def derive_seed(seed: int, index: int) -> int:
    digest = hashlib.sha256(f"pkpcount:{seed}:{index}".encode()).digest()
    return int.from_bytes(digest[:8], "little")


def _require_prime(q: int):
    if not is_prime(q):
        raise ParameterError(f"sampling needs a prime q, got {q}", "q prime")


def sample_permutation(m: int, rng: random.Random) -> Permutation:
    if m < 1:
        raise ParameterError(f"m must be >= 1, got {m}", "m >= 1")
    images = list(range(m))
    rng.shuffle(images)  # Fisher-Yates
    return Permutation(tuple(images))


def sample_matrix(rows: int, cols: int, q: int, rng: random.Random) -> FqMatrix:
    """Uniform over all rows x cols matrices."""
    rr = rng.randrange
    return FqMatrix(tuple(tuple(rr(q) for _ in range(cols)) for _ in range(rows)), q, cols)


def sample_full_rank(rows: int, cols: int, q: int, rng: random.Random) -> FqMatrix:
    """Uniform over rows x cols matrices of rank ``rows``, by rejection."""
    if rows > cols:
        raise ParameterError(f"a {rows} x {cols} matrix cannot have rank {rows}", "rows <= cols")
    _require_prime(q)
    for _ in range(MAX_REJECTIONS):
        X = sample_matrix(rows, cols, q, rng)
        if rank(X) == rows:
            return X
    raise SamplingError(f"no full-rank {rows} x {cols} matrix over F_{q} after {MAX_REJECTIONS} draws")


def decode_row(value: int, n: int, q: int) -> tuple[int, ...]:
    """Base-q digits of ``value``, most significant first."""
    digits = [0] * n
    for j in range(n - 1, -1, -1):
        value, digits[j] = divmod(value, q)
    return tuple(digits)


def encode_row(row, q: int) -> int:
    v = 0
    for x in row:
        v = v * q + x
    return v


def sample_distinct_nonzero_rows(rows: int, cols: int, q: int, rng: random.Random) -> FqMatrix:
    """Uniform ordered choice of ``rows`` pairwise distinct nonzero rows (no rank condition)."""
    values = rng.sample(range(1, q**cols), rows)
    return FqMatrix(tuple(decode_row(v, cols, q) for v in values), q, cols)


def sample_distinct_nonzero_rows_full_rank(rows: int, cols: int, q: int, rng: random.Random) -> FqMatrix:
    """Uniform over m x n matrices with m pairwise distinct nonzero rows and rank n."""
    m, n = rows, cols
    if not n <= m < q**n:
        raise ParameterError(f"need n <= m < q^n, got m={m}, n={n}, q={q}", "n <= m < q^n")
    _require_prime(q)
    for _ in range(MAX_REJECTIONS):
        X = sample_distinct_nonzero_rows(m, n, q, rng)
        if n == 1 or rank(X) == n:
            return X
    raise SamplingError(f"no rank-{n} distinct-row {m} x {n} matrix over F_{q} after {MAX_REJECTIONS} draws")
