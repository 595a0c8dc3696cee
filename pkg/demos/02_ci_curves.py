"""Complete-intersection curves and their graded coordinate rings."""
# %%
import numpy as np

from gaussmaps.curves import CIType, ci_types, make_ci_curve
from gaussmaps.exactlin import random_prime

p = random_prime(np.random.default_rng(1))

# %% the six types, the K3 index r and genus g they model
for t, r, g in ci_types():
    print(f"{str(t):10} P^{t.g}  k={t.k}  deg={t.degree:3d}  genus={t.genus:3d}  (r,g)=({r},{g})")

# %% a random (2,4) curve in P^3: the quotient ring has the predicted Hilbert function
c = make_ci_curve(CIType((2, 4)), p, seed=5)
print([c.h0(m) for m in range(c.max_degree + 1)])
print([c.citype.hilbert(m) for m in range(c.max_degree + 1)])

# %% canonical sections: h0(O(k)) equals the genus
print("h0(omega) =", c.h0(c.k), "genus =", c.genus)

# %% standard monomials give the quotient basis in degree 2
print(c.piece(2).standard_monomials)
