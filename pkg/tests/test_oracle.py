import itertools
from fractions import Fraction

import numpy as np
import pytest

from pkpcount.errors import CapExceeded, ParameterError
from pkpcount.expectation import expected, sum_E_sigma, sum_E_sigma_star
from pkpcount.generators import IpkpInstance, PkpInstance, generate
from pkpcount.linalg import FqMatrix, Permutation, all_permutations, permute_rows
from pkpcount.oracle import (
    brute_E_sigma,
    brute_sum_E_sigma,
    check_cycle_identity,
    count_solutions,
    count_solutions_batch,
    count_solutions_reference,
    cycle_identity_sides,
    echelon_bases,
    exhaustive_expectation,
    exhaustive_expectation_pkp_direct,
    exhaustive_size,
    monte_carlo_expectation,
)
from pkpcount.exactnum import rank_count
from pkpcount.params import ParameterSet
from pkpcount.sampling import SeededRng

P = ParameterSet


def _ipkp(q, A, B, C):
    A, B, C = FqMatrix(A, q), FqMatrix(B, q), FqMatrix(C, q)
    return IpkpInstance(P(q, A.nrows, A.ncols, B.ncols), A, B, C)


def test_hand_counts():
    # A = (1 1), b = (1, 0): both orderings give 1
    assert count_solutions(_ipkp(2, ((1, 1),), ((1,), (0,)), ((1,),))).n_sol == 2
    # A = (1 0): only the swap puts the 0 first
    res = count_solutions(_ipkp(2, ((1, 0),), ((1,), (0,)), ((0,),)))
    assert res.n_sol == 1 and res.enumerated == 2 and res.contains_secret is None


def test_cap_refusal():
    inst = generate(P(7, 2, 13, 1), SeededRng(0))
    with pytest.raises(CapExceeded) as info:
        count_solutions(inst)
    assert info.value.cap == 12
    with pytest.raises(CapExceeded):
        count_solutions(generate(P(7, 2, 6, 1), SeededRng(0)), cap=5)


CASES = [
    P(2, 1, 5, 1), P(3, 2, 5, 1), P(7, 2, 6, 1), P(2, 3, 6, 2), P(3, 1, 4, 3), P(5, 2, 5, 2),
    P(11, 2, 5, 1, "ipkp_star"), P(3, 1, 4, 2, "ipkp_star"),
    P(2, 1, 5, 1, "pkp"), P(3, 2, 6, 1, "pkp"), P(2, 2, 6, 2, "pkp"),
    P(7, 1, 5, 1, "pkp_star"), P(2, 1, 3, 2, "pkp_star"),
]


@pytest.mark.parametrize("params", CASES, ids=str)
def test_pruned_reference_batch_agree(params):
    rng = SeededRng(1)
    insts = [generate(params, rng) for _ in range(15)]
    pruned = [count_solutions(x).n_sol for x in insts]
    ref = [count_solutions(x, prune=False).n_sol for x in insts]
    As = np.array([x.A.rows for x in insts])
    Bs = np.array([x.B.rows for x in insts])
    Cs = np.array([x.target().rows for x in insts])
    batch = count_solutions_batch(As, Bs, Cs, params.q).tolist()
    assert pruned == ref == batch
    for x in insts:
        res = count_solutions(x)
        assert res.contains_secret is True and 1 <= res.n_sol <= res.enumerated


def test_pruned_on_unsolvable_and_random_targets():
    rng = SeededRng(2)
    q = 3
    for _ in range(40):
        m = rng.randrange(2, 6)
        ell = rng.randrange(1, m + 1)
        n = rng.randrange(1, 3)
        A = FqMatrix.reduce([[rng.randrange(q) for _ in range(m)] for _ in range(ell)], q)
        B = FqMatrix.reduce([[rng.randrange(q) for _ in range(n)] for _ in range(m)], q)
        C = FqMatrix.reduce([[rng.randrange(q) for _ in range(n)] for _ in range(ell)], q)
        inst = IpkpInstance(P(q, ell, m, n), A, B, C)  # invariants deliberately not enforced
        assert count_solutions(inst).n_sol == count_solutions_reference(inst)


@pytest.mark.parametrize("variant", ["ipkp", "pkp"])
def test_orbit_invariance(variant):
    params = P(3, 1, 3, 1, variant)
    rng = SeededRng(3)
    for _ in range(10):
        inst = generate(params, rng)
        base = count_solutions(inst).n_sol
        for tau in all_permutations(3):
            B2 = permute_rows(tau, inst.B)
            secret = inst.secret * tau.inverse()
            if variant == "ipkp":
                moved = IpkpInstance(params, inst.A, B2, inst.C, secret)
            else:
                moved = PkpInstance(params, inst.A, B2, secret)
            moved.check_invariants()
            res = count_solutions(moved)
            assert res.n_sol == base and res.contains_secret


def test_echelon_bases_count_subspaces():
    for q, ell, d in [(2, 1, 3), (3, 2, 3), (2, 2, 4), (5, 1, 2)]:
        reps = echelon_bases(ell, d, q)
        assert len(reps) == rank_count(ell, d, ell, q) // rank_count(ell, ell, ell, q)
        assert len(set(reps)) == len(reps)


TINY = [
    P(2, 1, 2, 1, "ipkp"), P(2, 1, 3, 1, "ipkp"), P(3, 1, 2, 1, "ipkp"), P(3, 1, 3, 1, "ipkp"),
    P(3, 2, 3, 1, "ipkp"), P(5, 1, 3, 1, "ipkp"),
    P(7, 1, 3, 1, "ipkp_star"), P(7, 2, 3, 1, "ipkp_star"), P(5, 1, 3, 1, "ipkp_star"),
    P(2, 1, 2, 1, "pkp"), P(3, 1, 2, 1, "pkp"), P(3, 1, 3, 1, "pkp"), P(5, 1, 3, 1, "pkp"),
    P(5, 1, 3, 1, "pkp_star"), P(7, 1, 3, 1, "pkp_star"), P(7, 2, 4, 1, "pkp_star"),
]

# exhaustive averages, frozen after checking them against the closed forms
FROZEN = {
    "ipkp(q=2, ell=1, m=2, n=1)": Fraction(14, 9),
    "ipkp(q=3, ell=1, m=3, n=1)": Fraction(555, 169),
    "ipkp_star(q=7, ell=1, m=3, n=1)": Fraction(97, 57),
    "pkp(q=2, ell=1, m=2, n=1)": Fraction(4, 3),
    "pkp_star(q=5, ell=1, m=3, n=1)": Fraction(11, 6),
}


@pytest.mark.parametrize("params", TINY, ids=str)
def test_exhaustive_equals_closed_form(params):
    value = exhaustive_expectation(params)
    assert value == expected(params)
    if str(params) in FROZEN:
        assert value == FROZEN[str(params)]


@pytest.mark.parametrize("params", [p for p in TINY if p.m <= 3 and p.q <= 5], ids=str)
def test_exhaustive_without_row_space_reduction(params):
    assert exhaustive_expectation(params, reduce_row_space=False) == exhaustive_expectation(params)


@pytest.mark.parametrize("params", [P(2, 1, 2, 1, "pkp"), P(3, 1, 3, 1, "pkp"), P(3, 1, 2, 1, "pkp"),
                                    P(5, 1, 3, 1, "pkp_star"), P(2, 1, 3, 2, "pkp_star")], ids=str)
def test_direct_conditional_enumeration(params):
    assert exhaustive_expectation_pkp_direct(params) == exhaustive_expectation(params)


def test_pkp_hand_enumeration():
    """q=2, ell=1, m=2: B in {(1,0), (0,1), (1,1)}, pi in S_2.

    For b = (1,0) or (0,1), P(pi) b is a unit vector and the only admissible A
    is the other unit row; exactly one of the two permutations works (N = 1).
    For b = (1,1), A = (1 1) and both permutations work (N = 2).
    Average over the 6 equally likely (b, pi): (4 * 1 + 2 * 2) / 6 = 4/3.
    """
    assert exhaustive_expectation(P(2, 1, 2, 1, "pkp")) == Fraction(4, 3)
    assert exhaustive_size(P(2, 1, 2, 1, "pkp")) == 6


def test_exhaustive_cap():
    with pytest.raises(CapExceeded) as info:
        exhaustive_expectation(P(11, 2, 5, 1))
    assert info.value.size > 10**7


def test_monte_carlo_contract():
    with pytest.raises(ParameterError):
        monte_carlo_expectation(P(5, 1, 3, 1), samples=0)
    a = monte_carlo_expectation(P(5, 1, 4, 1, "pkp"), samples=1200, seed=4)
    b = monte_carlo_expectation(P(5, 1, 4, 1, "pkp"), samples=1200, seed=4, workers=2)
    assert a == b
    assert a.mean == Fraction(a.total, 1200)
    assert a.exact_reference == expected(P(5, 1, 4, 1, "pkp"))
    assert a.as_dict()["status"] in ("PASS", "FAIL")
    assert monte_carlo_expectation(P(5, 1, 4, 1, "pkp"), samples=1200, seed=5) != a


def test_monte_carlo_small_agreement():
    rep = monte_carlo_expectation(P(5, 1, 3, 1), samples=3000, seed=6)
    assert rep.passed


def test_monte_carlo_matches_direct_loop():
    params = P(3, 1, 4, 1, "pkp")
    rep = monte_carlo_expectation(params, samples=700, seed=7)
    total = 0
    for i, size in [(0, 500), (1, 200)]:
        rng = SeededRng(7).spawn(i)
        total += sum(count_solutions(generate(params, rng)).n_sol for _ in range(size))
    assert rep.total == total


def test_brute_eigenvectors_examples():
    for q, m in [(2, 3), (3, 2), (5, 2)]:
        assert brute_E_sigma(Permutation.identity(m), q) == q**m - 1
    swap = Permutation((1, 0))
    assert brute_E_sigma(swap, 3) == 4
    assert brute_sum_E_sigma(2, 3, star=True) == 4 == sum_E_sigma_star(2, 3)
    assert brute_sum_E_sigma(2, 3) == 12 == sum_E_sigma(2, 3)


def test_brute_eigenvectors_by_hand():
    # independent loop for q=5, m=3
    q, m = 5, 3
    for sigma in all_permutations(m):
        count = 0
        for x in itertools.product(range(q), repeat=m):
            if not any(x):
                continue
            if any(all(x[sigma(i)] == lam * x[i] % q for i in range(m)) for lam in range(1, q)):
                count += 1
        assert brute_E_sigma(sigma, q) == count


def test_cycle_identity_examples():
    assert cycle_identity_sides(2, 3, 2) == (4, 4)
    assert check_cycle_identity(4, 5, 4)
    for q in (3, 5, 7):
        for m in range(1, 5):
            lhs, rhs = cycle_identity_sides(m, q, 1)
            assert lhs == rhs
    with pytest.raises(ParameterError):
        check_cycle_identity(3, 7, 4)
    with pytest.raises(CapExceeded):
        check_cycle_identity(9, 3, 1)
