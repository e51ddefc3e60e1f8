import itertools
import math
from collections import Counter

import pytest

import pkpcount.sampling as sampling
from pkpcount.errors import ParameterError
from pkpcount.exactnum import rank_count
from pkpcount.linalg import FqMatrix, rank
from pkpcount.sampling import (
    SeededRng,
    decode_row,
    derive_seed,
    encode_row,
    sample_distinct_nonzero_rows_full_rank,
    sample_full_rank,
    sample_matrix,
    sample_permutation,
)

from _stats import chi_square_z, within_sigma


def test_seed_range():
    SeededRng(2**64 - 1)
    with pytest.raises(ParameterError):
        SeededRng(-1)
    with pytest.raises(ParameterError):
        SeededRng(2**64)


def test_spawn_is_pure():
    a, b = SeededRng(7), SeededRng(7)
    a.random()  # parent state must not matter
    assert a.spawn(3).random() == b.spawn(3).random()
    assert a.spawn(3).seed_value == derive_seed(7, 3)
    assert len({derive_seed(7, i) for i in range(1000)}) == 1000


def test_reproducible():
    def draw(seed):
        rng = SeededRng(seed)
        return (
            sample_permutation(9, rng),
            sample_full_rank(3, 5, 7, rng),
            sample_distinct_nonzero_rows_full_rank(4, 2, 3, rng),
        )

    assert draw(11) == draw(11)
    assert draw(11) != draw(12)


def test_permutation_uniform():
    rng = SeededRng(1)
    assert all(sample_permutation(1, rng).is_identity() for _ in range(10))
    n = 60000
    counts = Counter(sample_permutation(3, rng).images for _ in range(n))
    support = list(itertools.permutations(range(3)))
    assert not within_sigma(counts, support, n)


def test_full_rank_uniform_rows():
    rng = SeededRng(2)
    n = 30000
    counts = Counter(sample_full_rank(1, 2, 2, rng).rows for _ in range(n))
    support = [((0, 1),), ((1, 0),), ((1, 1),)]
    assert set(counts) == set(support)
    assert not within_sigma(counts, support, n)


def test_full_rank_uniform_gl2():
    rng = SeededRng(3)
    support = [
        m for m in (FqMatrix((e[:2], e[2:]), 2) for e in itertools.product(range(2), repeat=4)) if rank(m) == 2
    ]
    n = 10**4 * len(support)
    counts = Counter(sample_full_rank(2, 2, 2, rng) for _ in range(n))
    assert set(counts) <= set(support)
    assert not within_sigma(counts, support, n)


def test_full_rank_acceptance_rate(monkeypatch):
    draws = 0
    real = sampling.sample_matrix

    def counting(*args):
        nonlocal draws
        draws += 1
        return real(*args)

    monkeypatch.setattr(sampling, "sample_matrix", counting)
    rng = SeededRng(4)
    accepted = 0
    while draws < 10**5:
        sample_full_rank(2, 3, 2, rng)
        accepted += 1
    p = rank_count(2, 3, 2, 2) / 2**6
    assert abs(accepted - draws * p) <= 4 * math.sqrt(draws * p * (1 - p))


def test_full_rank_postcondition_and_errors():
    rng = SeededRng(5)
    for q in (2, 3, 5):
        for rows in range(1, 5):
            for _ in range(20):
                assert rank(sample_full_rank(rows, 4, q, rng)) == rows
    with pytest.raises(ParameterError):
        sample_full_rank(3, 2, 5, rng)
    with pytest.raises(ParameterError):
        sample_full_rank(1, 2, 4, rng)


def test_distinct_rows_uniform_triples():
    rng = SeededRng(6)
    n = 24000
    counts = Counter(sample_distinct_nonzero_rows_full_rank(3, 1, 5, rng).rows for _ in range(n))
    support = [tuple((x,) for x in t) for t in itertools.permutations(range(1, 5), 3)]
    assert len(support) == 24 and set(counts) == set(support)
    assert not within_sigma(counts, support, n)


def test_distinct_rows_rank_rejection_uniform():
    # q=3, m=n=2: 8*7 ordered pairs of distinct nonzero rows, 8 of them collinear
    rng = SeededRng(7)
    support = [
        (a, b)
        for a, b in itertools.permutations(itertools.product(range(3), repeat=2), 2)
        if any(a) and any(b) and rank(FqMatrix((a, b), 3)) == 2
    ]
    assert len(support) == 48
    n = 2000 * len(support)
    counts = Counter(sample_distinct_nonzero_rows_full_rank(2, 2, 3, rng).rows for _ in range(n))
    assert set(counts) == set(support)
    assert abs(chi_square_z(counts, support, n)) <= 4


def test_distinct_rows_postconditions():
    rng = SeededRng(8)
    for _ in range(200):
        B = sample_distinct_nonzero_rows_full_rank(3, 1, 7, rng)
        vals = [r[0] for r in B.rows]
        assert 0 not in vals and len(set(vals)) == 3 and rank(B) == 1
    # large q^n takes the set-rejection path inside random.sample
    B = sample_distinct_nonzero_rows_full_rank(50, 3, 101, rng)
    assert len(set(B.rows)) == 50 and rank(B) == 3
    with pytest.raises(ParameterError):
        sample_distinct_nonzero_rows_full_rank(7, 1, 7, rng)
    with pytest.raises(ParameterError):
        sample_distinct_nonzero_rows_full_rank(1, 2, 7, rng)


def test_row_codec():
    for v in range(27):
        assert encode_row(decode_row(v, 3, 3), 3) == v
    assert decode_row(5, 3, 2) == (1, 0, 1)


def test_sample_matrix_entries_uniform():
    rng = SeededRng(9)
    n = 20000
    counts = Counter(x for _ in range(n // 4) for r in sample_matrix(2, 2, 5, rng).rows for x in r)
    assert not within_sigma(counts, range(5), n)
