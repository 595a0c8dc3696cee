"""From coranks to parameter counts and extendability verdicts."""
# %%
from gaussmaps import ledger

# %% threefold parameter counts from the stored coranks
for row in ledger.load_tables()["fano_threefolds"]["rows"]:
    r, g = row["r"], row["g"]
    tr = ledger.corank_row(r, g)
    f = ledger.fano_bound(r, g, tr.corank, tr.h0n2)
    print(f"(r,g)=({r},{g})  N={ledger.n_rg(r, g):3d}  f={f:5d}  family={row['parameters']:5d}  {row['variety']}")

# %% the same count in dimension n, at the maximal n(g)
for row in ledger.load_tables()["mukai_varieties"]["rows"]:
    r, g, n = row["r"], row["g"], row["n"]
    tr = ledger.corank_row(r, g)
    print(f"(r,g,n)=({r},{g},{n})  bound={ledger.mukai_bound(n, r, g, tr.corank, tr.h0n2)}  family={row['parameters']}")

# %% Zak: a canonical curve with corank c and no h0(N(-2)) is not (c+1)-extendable
for g in range(6, 11):
    tr = ledger.corank_row(1, g)
    print(g, ledger.zak_verdict(g, tr.corank, tr.h0n2))

# %% full verdicts
for args in [(2, 5), (5, 2), (3, 5), (1, 6, 7), (1, 8, 8), (1, 8, 9)]:
    e = ledger.classification_report(*args)
    print(args, e.verdict, e.notes)
