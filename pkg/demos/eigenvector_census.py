"""
Eigenvectors of permutation matrices
====================================

The homogeneous formulas need the number of pairs (sigma, x) with x a
nonzero eigenvector of P(sigma). Here the closed forms are set against a
direct census.
"""

import numpy as np

from pkpcount import Permutation, brute_E_sigma, sum_E_sigma, sum_E_sigma_star
from pkpcount.linalg import all_permutations
from pkpcount.oracle import brute_sum_E_sigma, cycle_identity_sides

# one permutation: a 2-cycle and a fixed point over F_5
sigma = Permutation((1, 0, 2))
print("cycles:", sigma.cycles, " eigenvectors over F_5:", brute_E_sigma(sigma, 5))

# totals over S_m
print(" q  m   census  closed form")
for q in (3, 5, 7):
    for m in range(1, 5):
        print(f"{q:2d} {m:2d} {brute_sum_E_sigma(m, q):8d} {sum_E_sigma(m, q):12d}")

# distinct nonzero entries only
for q, m in [(5, 3), (7, 3), (7, 6)]:
    print(f"star q={q} m={m}: {brute_sum_E_sigma(m, q, star=True)} vs {sum_E_sigma_star(m, q)}")

# the counting identity behind the closed form, for each d | q - 1
for d in (1, 2, 3, 6):
    print("q=7, m=5, d =", d, cycle_identity_sides(5, 7, d))

# cycle counts of S_6, as a histogram
hist = np.bincount([s.num_cycles for s in all_permutations(6)])
print("permutations of 6 elements by cycle count:", hist[1:].tolist())
