"""
Exact expectation versus the m!/q^(ell n) estimate
==================================================

Two signature parameter sets where the classical estimate goes wrong in
opposite directions.
"""

from pkpcount import ParameterSet, expectation_report

# PERK-style inhomogeneous instance: the heuristic predicts ~1e-199 extra
# solutions, the exact count of extra solutions is about 2.89e-6.
perk = expectation_report(ParameterSet(q=1021, ell=35, m=79, n=3, variant="ipkp"), digits=3)
print(perk.text())
print()

# PKP-DSS-style homogeneous instance: the heuristic says 0.7 solutions in
# total, the exact expectation is above 5000 because b has repeated entries.
dss = expectation_report(ParameterSet(q=251, ell=41, m=69, n=1, variant="pkp"), digits=6)
print(dss.text())
print()

# Forcing distinct nonzero entries in b brings the count back down.
star = expectation_report(ParameterSet(q=251, ell=41, m=69, n=1, variant="pkp_star"), digits=6)
print("same parameters, distinct entries in b:", star.decimal(star.exact))
