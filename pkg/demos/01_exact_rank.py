"""Exact rank over a 31-bit prime field.

Entries are int64 residues; products go through float64 BLAS on 16-bit
limbs, so nothing ever rounds.
"""
# %%
import numpy as np

from gaussmaps.exactlin import kernel_basis, matmul_mod, random_prime, rank, relative_rank, rref

rng = np.random.default_rng(0)
p = random_prime(rng)
print("prime", p)

# %% a rank-40 integer matrix, 200 x 120
m = rng.integers(-5, 6, (200, 40)) @ rng.integers(-5, 6, (40, 120))
print("rank mod p:", rank(m, p))

# %% the reduced echelon form has identity columns at the pivots
rows, pivots = rref(m, p)
print(rows.shape, np.array_equal(rows[:, pivots], np.eye(len(pivots), dtype=np.int64)))

# %% kernel rows really are annihilated
k = kernel_basis(m, p)
print("kernel dim", k.shape[0], "residual zero:", not matmul_mod(m, k.T, p).any())

# %% rank of a span modulo another span
a = np.array([[1, 0], [0, 1]])
print("dim <e1,e2> / <e1+e2> =", relative_rank(a, [[1, 1]], p))
