"""Dense linear algebra over prime fields.

Matrices are ``int64`` numpy arrays holding residues in ``[0, p)`` for a prime
``2**30 < p < 2**31``.  Products are formed in float64 after splitting entries
into 16-bit limbs, so every partial dot product stays below ``2**53`` and BLAS
can be used without losing exactness; reduction mod ``p`` happens once per
limb product.

Row reduction is blocked: a narrow column panel is eliminated with vectorised
row operations to discover its pivots, and the remaining columns are then
updated with one modular matrix product per panel.
"""

from __future__ import annotations

import numpy as np
import sympy

__all__ = [
    "DEFAULT_MAX_CELLS",
    "ShapeError",
    "SizingError",
    "check_prime",
    "random_prime",
    "as_fp",
    "matmul_mod",
    "inverse",
    "rref",
    "rank",
    "relative_rank",
    "kernel_basis",
]

DEFAULT_MAX_CELLS = 16_000_000
PRIME_LO = 2**30
PRIME_HI = 2**31

_PANEL = 64
_LIMB = 1 << 16
_KARATSUBA_CHUNK = 1 << 18


class SizingError(ValueError):
    """A matrix exceeds the configured cell limit."""


class ShapeError(ValueError):
    """Operands have incompatible shapes."""


def check_prime(p: int) -> int:
    """Validate that ``p`` is a prime in the supported 31-bit window."""
    p = int(p)
    if not PRIME_LO < p < PRIME_HI:
        raise ValueError(f"prime {p} outside ({PRIME_LO}, {PRIME_HI})")
    if not sympy.isprime(p):
        raise ValueError(f"{p} is not prime")
    return p


def random_prime(rng: np.random.Generator) -> int:
    """Draw a prime uniformly from the 31-bit window.

    Rejection sampling over odd integers, so each prime in the window is
    equally likely.
    """
    while True:
        n = int(rng.integers(PRIME_LO + 1, PRIME_HI)) | 1
        if n < PRIME_HI and sympy.isprime(n):
            return n


def as_fp(m, p: int) -> np.ndarray:
    """Return ``m`` as a 2-D ``int64`` array reduced mod ``p``."""
    a = np.asarray(m)
    if a.dtype.kind == "u":
        a = (a % np.uint64(p)).astype(np.int64)
    elif a.dtype.kind == "i":
        a = np.mod(a.astype(np.int64), p)
    elif a.dtype == object or a.size == 0:
        a = np.array([int(x) % p for x in a.ravel()], dtype=np.int64).reshape(a.shape)
    else:
        raise TypeError(f"expected integer entries, got {a.dtype}")
    if a.ndim == 1:
        a = a.reshape(1, -1) if a.size else a.reshape(0, 0)
    if a.ndim != 2:
        raise ShapeError(f"expected a matrix, got shape {a.shape}")
    return a


def _guard(rows: int, cols: int, max_cells: int | None) -> None:
    limit = DEFAULT_MAX_CELLS if max_cells is None else max_cells
    if rows * cols > limit:
        raise SizingError(f"{rows}x{cols} matrix exceeds limit of {limit} cells")


def _combine(hi: np.ndarray, lo: np.ndarray, p: int) -> np.ndarray:
    # hi * 2**16 + lo, both already reduced
    return (hi * _LIMB + lo) % p


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact ``a @ b mod p`` for reduced operands."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    n = a.shape[1]
    if n == 0 or a.shape[0] == 0 or b.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    if n <= 64:
        # full a against 16-bit limbs of b: n * 2**31 * 2**16 <= 2**53
        af = a.astype(np.float64)
        lo = (af @ (b & (_LIMB - 1)).astype(np.float64)).astype(np.int64) % p
        hi = (af @ (b >> 16).astype(np.float64)).astype(np.int64) % p
        return _combine(hi, lo, p)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for s in range(0, n, _KARATSUBA_CHUNK):
        out = (out + _karatsuba(a[:, s:s + _KARATSUBA_CHUNK], b[s:s + _KARATSUBA_CHUNK], p)) % p
    return out


def _karatsuba(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    a0 = (a & (_LIMB - 1)).astype(np.float64)
    a1 = (a >> 16).astype(np.float64)
    b0 = (b & (_LIMB - 1)).astype(np.float64)
    b1 = (b >> 16).astype(np.float64)
    lo = (a0 @ b0).astype(np.int64)
    hi = (a1 @ b1).astype(np.int64)
    mid = ((a0 + a1) @ (b0 + b1)).astype(np.int64) - lo - hi
    lo %= p
    hi %= p
    mid %= p
    shift32 = pow(2, 32, p)
    return ((hi * shift32) % p + (mid * _LIMB) % p + lo) % p


def inverse(m: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a small invertible square matrix mod ``p`` (unblocked Gauss-Jordan)."""
    k = m.shape[0]
    aug = np.concatenate([np.asarray(m, dtype=np.int64) % p, np.eye(k, dtype=np.int64)], axis=1)
    for j in range(k):
        nz = np.flatnonzero(aug[j:, j])
        if nz.size == 0:
            raise ValueError("matrix is singular mod p")
        i = j + int(nz[0])
        if i != j:
            aug[[i, j]] = aug[[j, i]]
        aug[j] = (aug[j] * pow(int(aug[j, j]), -1, p)) % p
        f = aug[:, j].copy()
        f[j] = 0
        aug = (aug - (f[:, None] * aug[j]) % p) % p
    return aug[:, k:]


def _panel_pivots(s: np.ndarray, p: int) -> tuple[list[int], list[int]]:
    """Pivot rows and pivot columns of a small panel, by plain elimination.

    Pivot column is the leftmost remaining nonzero column; pivot row is the
    first (lowest index) row with a nonzero entry there.
    """
    s = s.copy()
    alive = np.ones(s.shape[0], dtype=bool)
    prow: list[int] = []
    pcol: list[int] = []
    for j in range(s.shape[1]):
        idx = np.flatnonzero(alive & (s[:, j] != 0))
        if idx.size == 0:
            continue
        i = int(idx[0])
        alive[i] = False
        prow.append(i)
        pcol.append(j)
        rest = idx[1:]
        if rest.size:
            f = (s[rest, j] * pow(int(s[i, j]), -1, p)) % p
            s[rest] = (s[rest] - (f[:, None] * s[i]) % p) % p
    return prow, pcol


def _update(view: np.ndarray, f: np.ndarray, pivot_rows: np.ndarray, p: int) -> None:
    """``view -= f @ pivot_rows`` mod p, in place; ``f`` has at most 64 columns."""
    if view.shape[0] == 0:
        return
    ff = f.astype(np.float64)
    lo = (ff @ (pivot_rows & (_LIMB - 1)).astype(np.float64)).astype(np.int64)
    hi = (ff @ (pivot_rows >> 16).astype(np.float64)).astype(np.int64)
    hi %= p
    hi *= _LIMB
    hi += lo
    np.subtract(view, hi, out=view)
    np.remainder(view, p, out=view)


def _eliminate(a: np.ndarray, p: int, reduced: bool) -> list[int]:
    """In-place blocked elimination; returns pivot columns in row order.

    On exit the first ``len(pivots)`` rows hold an echelon basis (row ``i`` has
    a 1 in column ``pivots[i]`` and zeros in every other pivot column of the
    rows below it) and the remaining rows are zero.  With ``reduced`` each
    pivot column is cleared in every other row, and the rows come out sorted
    by pivot column, i.e. the reduced row echelon form.
    """
    nrows, ncols = a.shape
    r = 0
    pivots: list[int] = []
    c0 = 0
    window = 4 * _PANEL
    while c0 < ncols and r < nrows:
        c1 = min(c0 + _PANEL, ncols)
        panel = a[r:, c0:c1]
        live = np.flatnonzero(panel.any(axis=1))
        if live.size == 0:
            c0 = c1
            window = 4 * _PANEL
            continue
        cand = live[:window]
        prow, pcol = _panel_pivots(panel[cand], p)
        order = np.argsort(prow)
        rows = cand[np.asarray(prow)[order]] + r
        cols = np.asarray(pcol)[order] + c0
        k = len(rows)
        # rows are increasing and rows[t] >= r + t, so sequential swaps are safe
        for t, src in enumerate(rows):
            if src != r + t:
                a[[r + t, src]] = a[[src, r + t]]
        top = a[r:r + k, c0:]
        top[:] = matmul_mod(inverse(top[:, cols - c0], p), top, p)
        _update(a[r + k:, c0:], a[r + k:, cols], top, p)
        if reduced and r:
            _update(a[:r, c0:], a[:r, cols], top, p)
        pivots.extend(int(c) for c in cols)
        r += k
        if r < nrows and a[r:, c0:c1].any():
            # candidate window missed part of the panel rank; go again on the residual
            window *= 2
            continue
        c0 = c1
        window = 4 * _PANEL
    if reduced:
        order = np.argsort(pivots, kind="stable")
        a[:r] = a[:r][order]
        pivots = [pivots[i] for i in order]
    return pivots


def rref(m, p: int, *, max_cells: int | None = None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form.

    Returns the nonzero rows of the RREF (shape ``rank x cols``) and the list
    of pivot columns.
    """
    a = as_fp(m, p).copy()
    _guard(*a.shape, max_cells)
    pivots = _eliminate(a, p, reduced=True)
    return a[:len(pivots)], pivots


def rank(m, p: int, *, max_cells: int | None = None) -> int:
    """Row rank over GF(p)."""
    a = as_fp(m, p)
    _guard(*a.shape, max_cells)
    if a.shape[0] == 0 or a.shape[1] == 0:
        return 0
    # eliminating along the short side keeps the panel searches cheap
    a = (a.T if a.shape[0] < a.shape[1] else a).copy()
    return len(_eliminate(a, p, reduced=False))


def relative_rank(span_a, span_b, p: int, *, max_cells: int | None = None) -> int:
    """Dimension of the image of ``rowspace(span_a)`` in the quotient by ``rowspace(span_b)``."""
    a = as_fp(span_a, p)
    b = as_fp(span_b, p)
    if b.size == 0 and b.shape[1] != a.shape[1]:
        b = np.zeros((0, a.shape[1]), dtype=np.int64)
    if a.shape[1] != b.shape[1]:
        raise ShapeError(f"column mismatch: {a.shape[1]} vs {b.shape[1]}")
    both = np.concatenate([a, b], axis=0)
    return rank(both, p, max_cells=max_cells) - rank(b, p, max_cells=max_cells)


def kernel_basis(m, p: int, *, max_cells: int | None = None) -> np.ndarray:
    """Rows form a basis of the right null space ``{x : m @ x = 0}``."""
    a = as_fp(m, p)
    ncols = a.shape[1]
    red, piv = rref(a, p, max_cells=max_cells)
    free = np.setdiff1d(np.arange(ncols), piv)
    _guard(len(free), ncols, max_cells)
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    basis[np.arange(len(free)), free] = 1
    if piv:
        basis[:, piv] = (-red[:, free].T) % p
    return basis
