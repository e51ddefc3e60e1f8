"""
Generating instances and counting their solutions
=================================================
"""

from pkpcount import ParameterSet, SeededRng, count_solutions, deserialize, generate, serialize

rng = SeededRng(7)
params = ParameterSet(q=5, ell=2, m=7, n=1, variant="pkp")
inst = generate(params, rng)

# the file format is plain JSON; the planted permutation is optional
text = serialize(inst, with_secret=True)
print(text)

again = deserialize(text)
res = count_solutions(again)
print("solutions:", res.n_sol, "of", res.enumerated, " secret among them:", res.contains_secret)

# a handful more, to see how N_sol spreads around its mean
counts = [count_solutions(generate(params, rng)).n_sol for _ in range(200)]
print("mean over 200 draws:", sum(counts) / len(counts), " max:", max(counts))
