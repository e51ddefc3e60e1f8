"""
Checking the closed forms by brute force
========================================

For tiny parameters the whole output distribution of a generator can be
enumerated, which gives the expectation as an exact fraction.
"""

from fractions import Fraction

from pkpcount import ParameterSet, expected
from pkpcount.oracle import exhaustive_expectation, exhaustive_size

cases = [
    ParameterSet(3, 1, 3, 1, "ipkp"),
    ParameterSet(7, 1, 3, 1, "ipkp_star"),
    ParameterSet(2, 1, 2, 1, "pkp"),
    ParameterSet(5, 1, 3, 1, "pkp_star"),
    ParameterSet(7, 2, 4, 1, "pkp_star"),
]

for p in cases:
    # weighted points visited; rank-ell A's are grouped by row space
    size = exhaustive_size(p)
    brute = exhaustive_expectation(p)
    print(f"{str(p):36s} points={size:>8d}  enumeration={brute}  formula={expected(p)}")

# The 4/3 case by hand: b is one of (1,0), (0,1), (1,1) and pi one of the
# two permutations. A unit vector b leaves exactly one admissible A and one
# solution; b = (1,1) forces A = (1 1) and both permutations solve it.
print("hand count:", Fraction(4 * 1 + 2 * 2, 6))
