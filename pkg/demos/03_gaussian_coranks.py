"""Coranks of Gaussian maps, computed from explicit matrices at two primes."""
# %%
from gaussmaps import CIType, corank_formula, corank_pair, corank_wedge
from gaussmaps.gaussmap import FormulaInapplicableError

# %% the wedge map on omega, for every type
for degs in [(2, 2, 2, 2), (2, 2, 3), (2, 3, 3), (2, 4), (3, 4), (4, 4)]:
    t = CIType(degs)
    rep = corank_wedge(t, seed=1)
    try:
        formula = corank_formula(t)
    except FormulaInapplicableError:
        formula = "n/a"
    print(f"{str(t):10} rank {rep.rank:4d} / {rep.target_dim:4d}  corank {rep.corank:2d}  formula {formula}  primes {rep.primes}")

# %% the second map omega x omega^2; only (2,4) has a cokernel
for degs in [(2, 2, 3), (2, 4), (3, 4)]:
    t = CIType(degs)
    rep = corank_pair(t, t.k, 2 * t.k, seed=1)
    print(f"{str(t):10} corank of (k,2k) map: {rep.corank}")

# %% a plane quartic: only three canonical sections, so the wedge map has rank <= 3
rep = corank_wedge(CIType((4,)), seed=1)
print("plane quartic", rep.rank, rep.target_dim, rep.corank)
