"""Independent ground truth for the closed forms.

Nothing here calls the formulas in :mod:`pkpcount.expectation` except the
Monte Carlo report, which uses one only as the reference it is compared to.

Exhaustive expectations enumerate the generator's full output space.  A
full-rank A enters N_sol only through its row space (A and G A have the same
solutions for invertible G, and each row space has the same number |GL_ell|
of full-rank bases), so by default A is enumerated as one reduced echelon
basis per row space, with equal weights.  ``reduce_row_space=False`` walks
every full-rank A instead; the two are compared in the tests.
"""

from __future__ import annotations

import itertools
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import numpy as np

from .errors import CapExceeded, ParameterError
from .exactnum import binomial, factorial, format_rational, rank_count, render_decimal
from .generators import Instance, PkpInstance, generate
from .linalg import FqMatrix, Permutation, _eliminate, all_permutations, left_kernel_basis, permute_rows, rank
from .params import ParameterSet
from .sampling import SeededRng, decode_row, sample_distinct_nonzero_rows_full_rank, sample_full_rank, sample_permutation

MAX_PERMUTATION_M = 12
MAX_EXHAUSTIVE_POINTS = 10**7
MAX_EIGEN_VECTORS = 10**7
MAX_CYCLE_IDENTITY_M = 8
MC_CHUNK = 500
Z_THRESHOLD = 4.0


# --- solution counting ---------------------------------------------------------


@dataclass(frozen=True)
class SolutionCount:
    n_sol: int
    enumerated: int
    contains_secret: Optional[bool]

    def as_dict(self) -> dict:
        return {"n_sol": self.n_sol, "enumerated": self.enumerated, "contains_secret": self.contains_secret}


def _check_cap(m: int, cap: int):
    if m > cap:
        raise CapExceeded(
            f"m = {m} exceeds the permutation enumeration cap {cap} "
            f"(would enumerate {m}! = {factorial(m)} permutations)",
            size=factorial(m),
            cap=cap,
        )


def _contains_secret(instance: Instance) -> Optional[bool]:
    if instance.secret is None:
        return None
    return instance.is_solution(instance.secret)


def _staircase(A: FqMatrix, C: FqMatrix):
    """Row-reduce [A | C] with A's columns reversed.

    Returns (GA columns, GC rows, last-support column of each row), or None
    when some row reads 0 = nonzero and the system has no solution.
    """
    q, ell, m = A.q, A.nrows, A.ncols
    aug = [list(reversed(a)) + list(c) for a, c in zip(A.rows, C.rows)]
    pivots = _eliminate(aug, q, m + C.ncols)
    for row, p in zip(aug, pivots):
        if p >= m:
            return None  # zero row of GA facing a nonzero target
    GA = [list(reversed(row[:m])) for row in aug]
    GC = [row[m:] for row in aug]
    last = [m - 1 - p for p in pivots] + [-1] * (ell - len(pivots))
    cols = [tuple(GA[t][j] for t in range(ell)) for j in range(m)]
    return cols, GC, last


def count_solutions(instance: Instance, cap: int = MAX_PERMUTATION_M, prune: bool = True) -> SolutionCount:
    """Count rho in S_m with A P(rho) B = C by enumerating S_m lexicographically.

    With ``prune`` the system is first brought to a form where each row of A
    stops at a distinct column; a prefix is abandoned as soon as a row whose
    support is fully assigned disagrees with its target.  ``prune=False``
    multiplies out every permutation.
    """
    m = instance.params.m
    _check_cap(m, cap)
    if not prune:
        n_sol = count_solutions_reference(instance)
    else:
        n_sol = _count_pruned(instance.A, instance.B, instance.target())
    return SolutionCount(n_sol, factorial(m), _contains_secret(instance))


def count_solutions_reference(instance: Instance) -> int:
    A, B, C = instance.A, instance.B, instance.target()
    return sum(1 for rho in all_permutations(B.nrows) if A @ permute_rows(rho, B) == C)


def _count_pruned(A: FqMatrix, B: FqMatrix, C: FqMatrix) -> int:
    q, m = A.q, A.ncols
    ell = A.nrows
    prepared = _staircase(A, C)
    if prepared is None:
        return 0
    cols, target, last = prepared
    checks = [[t for t in range(ell) if last[t] == j] for j in range(m)]
    # rows of GA that are entirely zero already matched their (zero) target
    brows = B.rows
    used = [False] * m
    count = 0

    def rec(j, S):
        nonlocal count
        if j == m:
            count += 1
            return
        col, chk = cols[j], checks[j]
        for v in range(m):
            if used[v]:
                continue
            b = brows[v]
            S2 = [[(s + c * x) % q for s, x in zip(srow, b)] if c else srow for srow, c in zip(S, col)]
            if any(S2[t] != target[t] for t in chk):
                continue
            used[v] = True
            rec(j + 1, S2)
            used[v] = False

    rec(0, [[0] * B.ncols for _ in range(ell)])
    return count


@lru_cache(maxsize=16)
def permutation_table(m: int) -> np.ndarray:
    """All of S_m as image rows, in lexicographic order."""
    table = np.array(list(itertools.permutations(range(m))), dtype=np.intp).reshape(-1, m)
    table.setflags(write=False)
    return table


def _dtype_for(q: int, m: int):
    return np.int64 if m * (q - 1) ** 2 < 2**62 else object


def count_solutions_batch(As: np.ndarray, Bs: np.ndarray, Cs: np.ndarray, q: int) -> np.ndarray:
    """Vectorized solution counts for a stack of instances.

    ``As`` is (s, ell, m), ``Bs`` (s, m, n), ``Cs`` (s, ell, n); returns (s,).
    """
    s, ell, m = As.shape
    n = Bs.shape[2]
    P = permutation_table(m)
    dt = _dtype_for(q, m)
    As, Bs, Cs = As.astype(dt), Bs.astype(dt), Cs.astype(dt)
    per = max(1, 4_000_000 // max(1, len(P) * m * n))
    out = np.empty(s, dtype=np.int64)
    for lo in range(0, s, per):
        hi = min(s, lo + per)
        PB = Bs[lo:hi][:, P, :]  # (b, m!, m, n): row i of P(rho) B is row rho(i) of B
        prod = np.einsum("alm,apmn->apln", As[lo:hi], PB) % q
        hit = (prod == Cs[lo:hi, None, :, :]).all(axis=(2, 3))
        out[lo:hi] = hit.sum(axis=1)
    return out


# --- exhaustive enumeration of generator outputs --------------------------------


def all_matrices(nrows: int, ncols: int, q: int):
    for flat in itertools.product(range(q), repeat=nrows * ncols):
        yield FqMatrix(tuple(flat[i * ncols:(i + 1) * ncols] for i in range(nrows)), q, ncols)


def full_rank_matrices(nrows: int, ncols: int, q: int) -> list[FqMatrix]:
    return [X for X in all_matrices(nrows, ncols, q) if rank(X) == min(nrows, ncols)]


@lru_cache(maxsize=256)
def echelon_bases(ell: int, d: int, q: int) -> tuple:
    """One reduced echelon ell x d basis for every ell-dimensional subspace of F_q^d."""
    out = []
    for pivots in itertools.combinations(range(d), ell):
        pset = set(pivots)
        free_slots = [(t, c) for t, p in enumerate(pivots) for c in range(p + 1, d) if c not in pset]
        for values in itertools.product(range(q), repeat=len(free_slots)):
            rows = [[0] * d for _ in range(ell)]
            for t, p in enumerate(pivots):
                rows[t][p] = 1
            for (t, c), v in zip(free_slots, values):
                rows[t][c] = v
            out.append(FqMatrix(tuple(map(tuple, rows)), q, d))
    return tuple(out)


def b_class(params: ParameterSet) -> list[FqMatrix]:
    """Every B the generator can emit: rank n, with distinct nonzero rows for star variants."""
    q, m, n = params.q, params.m, params.n
    if params.variant.star:
        out = []
        for values in itertools.permutations(range(1, q**n), m):
            X = FqMatrix(tuple(decode_row(v, n, q) for v in values), q, n)
            if rank(X) == n:
                out.append(X)
        return out
    return [X for X in all_matrices(m, n, q) if rank(X) == n]


def _b_class_size_bound(params: ParameterSet) -> int:
    q, m, n = params.q, params.m, params.n
    if params.variant.star:
        return math.perm(q**n - 1, m)
    return rank_count(m, n, n, q)


def exhaustive_size(params: ParameterSet, reduce_row_space: bool = True) -> int:
    """Weighted points visited by :func:`exhaustive_expectation` (an upper bound for star variants)."""
    q, ell, m, n = params.q, params.ell, params.m, params.n
    d = m - n if params.variant.homogeneous else m
    a = rank_count(ell, d, ell, q)
    if reduce_row_space:
        a //= rank_count(ell, ell, ell, q)
    return a * _b_class_size_bound(params) * factorial(m)


def _stack(mats) -> np.ndarray:
    return np.array([X.rows for X in mats], dtype=np.int64)


def exhaustive_expectation(params: ParameterSet, cap: int = MAX_EXHAUSTIVE_POINTS, reduce_row_space: bool = True) -> Fraction:
    """Exact mean of N_sol over the generator's whole output distribution."""
    params.validate(require_prime=True, warn_prime_power=False)
    size = exhaustive_size(params, reduce_row_space)
    if size > cap:
        raise CapExceeded(f"instance space of {params} has ~{size} weighted points, cap is {cap}", size=size, cap=cap)
    q, ell, m, n = params.q, params.ell, params.m, params.n
    P = permutation_table(m)
    total = 0
    if not params.variant.homogeneous:
        reps = echelon_bases(ell, m, q) if reduce_row_space else full_rank_matrices(ell, m, q)
        As = _stack(reps)
        Bs = b_class(params)
        for B in Bs:
            PB = B.to_numpy()[P]  # (m!, m, n)
            W = np.einsum("alm,pmn->apln", As, PB) % q
            W = W.reshape(len(reps), len(P), ell * n)
            # sum over secret pi of #{rho : A P(rho) B = A P(pi) B}
            eq = (W[:, :, None, :] == W[:, None, :, :]).all(axis=3)
            total += int(eq.sum())
        return Fraction(total, len(reps) * len(Bs) * len(P))
    d = m - n
    coeffs = echelon_bases(ell, d, q) if reduce_row_space else full_rank_matrices(ell, d, q)
    R = _stack(coeffs)  # (r, ell, d)
    Bs = b_class(params)
    for B in Bs:
        PB = B.to_numpy()[P]
        for pi in P:
            K = left_kernel_basis(permute_rows(Permutation(tuple(pi)), B)).to_numpy()  # (d, m)
            As = np.einsum("rld,dm->rlm", R, K) % q
            W = np.einsum("alm,pmn->apln", As, PB) % q
            total += int((W == 0).all(axis=(2, 3)).sum())
    return Fraction(total, len(coeffs) * len(Bs) * len(P))


def exhaustive_expectation_pkp_direct(params: ParameterSet, max_m: int = 3) -> Fraction:
    """Homogeneous variants only: for each (B, pi), average N_sol over every
    full-rank A with A P(pi) B = 0 found by scanning all ell x m matrices."""
    params.validate(require_prime=True, warn_prime_power=False)
    if not params.variant.homogeneous:
        raise ParameterError("direct conditional enumeration applies to pkp variants only", "variant")
    if params.m > max_m:
        raise CapExceeded(f"direct enumeration limited to m <= {max_m}", size=params.m, cap=max_m)
    q, ell, m = params.q, params.ell, params.m
    all_A = full_rank_matrices(ell, m, q)
    Bs = b_class(params)
    acc = Fraction(0)
    for B in Bs:
        for pi in all_permutations(m):
            PB = permute_rows(pi, B)
            admissible = [A for A in all_A if (A @ PB).is_zero()]
            counts = [count_solutions_reference(PkpInstance(params, A, B)) for A in admissible]
            acc += Fraction(sum(counts), len(counts))
    return acc / (len(Bs) * factorial(m))


def gen_pkp_rejection(params: ParameterSet, rng: random.Random, max_tries: int = 10**6) -> PkpInstance:
    """Homogeneous generator that redraws A until it annihilates P(pi) B.

    Reference only: acceptance is about q^(-ell n), hopeless beyond toy sizes.
    """
    params.validate(require_prime=True, warn_prime_power=False)
    q, ell, m, n = params.q, params.ell, params.m, params.n
    if params.variant.star:
        B = sample_distinct_nonzero_rows_full_rank(m, n, q, rng)
    else:
        B = sample_full_rank(n, m, q, rng).T
    pi = sample_permutation(m, rng)
    PB = permute_rows(pi, B)
    for _ in range(max_tries):
        A = sample_full_rank(ell, m, q, rng)
        if (A @ PB).is_zero():
            return PkpInstance(params, A, B, pi)
    raise CapExceeded(f"rejection loop gave up after {max_tries} draws")


# --- Monte Carlo ---------------------------------------------------------------


@dataclass(frozen=True)
class MonteCarloReport:
    params: ParameterSet
    samples: int
    seed: int
    total: int
    total_sq: int
    exact_reference: Optional[Fraction]

    @property
    def mean(self) -> Fraction:
        return Fraction(self.total, self.samples)

    @property
    def variance_estimate(self) -> Fraction:
        s = self.samples
        return Fraction(s * self.total_sq - self.total**2, s * (s - 1))

    @property
    def standard_error(self) -> float:
        return math.sqrt(self.variance_estimate / self.samples)

    @property
    def z_score(self) -> Optional[float]:
        if self.exact_reference is None:
            return None
        diff = self.mean - self.exact_reference
        if self.variance_estimate == 0:
            return 0.0 if diff == 0 else math.copysign(math.inf, diff)
        return float(diff) / self.standard_error

    @property
    def passed(self) -> Optional[bool]:
        z = self.z_score
        return None if z is None else abs(z) <= Z_THRESHOLD

    def as_dict(self, digits: int = 12) -> dict:
        ref = self.exact_reference
        z = self.z_score
        return {
            "variant": self.params.variant.value,
            "q": self.params.q,
            "ell": self.params.ell,
            "m": self.params.m,
            "n": self.params.n,
            "samples": self.samples,
            "seed": self.seed,
            "mean": format_rational(self.mean),
            "mean_decimal": render_decimal(self.mean, digits),
            "variance_estimate": format_rational(self.variance_estimate),
            "variance_decimal": render_decimal(self.variance_estimate, digits),
            "exact_reference": None if ref is None else format_rational(ref),
            "exact_reference_decimal": None if ref is None else render_decimal(ref, digits),
            "z_score": None if z is None else float(f"{z:.6g}"),
            "status": None if z is None else ("PASS" if self.passed else "FAIL"),
        }


def _mc_chunk(args) -> tuple[int, int]:
    params, seed, index, size = args
    rng = SeededRng(seed).spawn(index)
    insts = [generate(params, rng) for _ in range(size)]
    As = np.array([x.A.rows for x in insts], dtype=np.int64).reshape(size, params.ell, params.m)
    Bs = np.array([x.B.rows for x in insts], dtype=np.int64).reshape(size, params.m, params.n)
    Cs = np.array([x.target().rows for x in insts], dtype=np.int64).reshape(size, params.ell, params.n)
    counts = count_solutions_batch(As, Bs, Cs, params.q)
    return int(counts.sum()), int((counts.astype(object) ** 2).sum())


def monte_carlo_expectation(
    params: ParameterSet,
    samples: int,
    seed: int = 0,
    workers: int = 1,
    cap: int = MAX_PERMUTATION_M,
    exact_reference: Optional[Fraction] = None,
) -> MonteCarloReport:
    """Sample ``samples`` instances with the matching generator and average N_sol.

    Samples are drawn in fixed-size chunks, chunk i from ``SeededRng(seed).spawn(i)``,
    so the report does not depend on ``workers``.
    """
    if samples < 100:
        raise ParameterError(f"samples must be >= 100, got {samples}", "samples >= 100")
    params.validate(require_prime=True, warn_prime_power=False)
    _check_cap(params.m, cap)
    if exact_reference is None:
        from .expectation import expected

        try:
            exact_reference = expected(params)
        except ParameterError:
            exact_reference = None
    jobs = [(params, seed, i, min(MC_CHUNK, samples - lo)) for i, lo in enumerate(range(0, samples, MC_CHUNK))]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_mc_chunk, jobs))
    else:
        parts = [_mc_chunk(j) for j in jobs]
    total = sum(p[0] for p in parts)
    total_sq = sum(p[1] for p in parts)
    return MonteCarloReport(params, samples, seed, total, total_sq, exact_reference)


# --- eigenvector and cycle censuses --------------------------------------------


@lru_cache(maxsize=64)
def _nonzero_vectors(m: int, q: int, star: bool) -> np.ndarray:
    if q**m > MAX_EIGEN_VECTORS:
        raise CapExceeded(f"q^m = {q**m} exceeds the vector enumeration cap {MAX_EIGEN_VECTORS}", size=q**m, cap=MAX_EIGEN_VECTORS)
    X = np.array(list(itertools.product(range(q), repeat=m)), dtype=np.int64).reshape(-1, m)[1:]
    if star:
        ok = (X != 0).all(axis=1)
        srt = np.sort(X, axis=1)
        ok &= (np.diff(srt, axis=1) != 0).all(axis=1) if m > 1 else True
        X = X[ok]
    X.setflags(write=False)
    return X


def brute_E_sigma(sigma: Permutation, q: int, star: bool = False) -> int:
    """Count nonzero x with P(sigma) x = lambda x for some lambda != 0, by enumeration.

    With ``star`` only x with pairwise distinct nonzero entries are counted.
    """
    X = _nonzero_vectors(sigma.m, q, star)
    SX = X[:, list(sigma.images)]  # (P(sigma) x)_i = x_{sigma(i)}
    hit = np.zeros(len(X), dtype=bool)
    for lam in range(1, q):
        hit |= (SX == (lam * X) % q).all(axis=1)
    return int(hit.sum())


def brute_sum_E_sigma(m: int, q: int, star: bool = False) -> int:
    return sum(brute_E_sigma(s, q, star) for s in all_permutations(m))


def cycle_identity_sides(m: int, q: int, d: int, cap: int = MAX_CYCLE_IDENTITY_M) -> tuple[int, int]:
    """(sum over S_m of q^#{cycles with d | length}, m! C(floor((q+m-1)/d), floor(m/d)))."""
    if d < 1 or (q - 1) % d:
        raise ParameterError(f"d={d} must divide q - 1 = {q - 1}", "d | q - 1")
    if m > cap:
        raise CapExceeded(f"m = {m} exceeds the S_m enumeration cap {cap}", size=factorial(m), cap=cap)
    lhs = sum(q ** sum(1 for c in s.cycles if len(c) % d == 0) for s in all_permutations(m))
    rhs = factorial(m) * binomial((q + m - 1) // d, m // d)
    return lhs, rhs


def check_cycle_identity(m: int, q: int, d: int, cap: int = MAX_CYCLE_IDENTITY_M) -> bool:
    lhs, rhs = cycle_identity_sides(m, q, d, cap)
    return lhs == rhs


# --- probabilities by enumeration ----------------------------------------------


def prob_block_rank_census(ell: int, m1: int, m2: int, q: int) -> dict[int, Fraction]:
    """Distribution of rank(A1) over every full-rank A = (A1 | A2)."""
    counts: dict[int, int] = {}
    mats = full_rank_matrices(ell, m1 + m2, q)
    for A in mats:
        r = rank(FqMatrix(tuple(row[:m1] for row in A.rows), q, m1))
        counts[r] = counts.get(r, 0) + 1
    return {r: Fraction(c, len(mats)) for r, c in sorted(counts.items())}


def prob_zero_product_exhaustive(M: FqMatrix, ell: int, n: int, which: str) -> Fraction:
    """P[event] for a fixed M, averaging over all full-rank A (ell x m) and B (m' x n)."""
    q = M.q
    m, mprime = M.shape
    which = which.upper()
    As = full_rank_matrices(ell, m, q) if which in ("AM", "AMB") else [None]
    Bs = full_rank_matrices(mprime, n, q) if which in ("MB", "AMB") else [None]
    hits = 0
    for A in As:
        AM = A @ M if A is not None else M
        for B in Bs:
            prod = AM @ B if B is not None else AM
            hits += prod.is_zero()
    return Fraction(hits, len(As) * len(Bs))
