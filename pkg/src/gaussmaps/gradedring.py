"""Graded pieces of polynomial rings over GF(p) and of their quotients.

Monomials of each degree are listed in graded-lexicographic order with
``x0 > x1 > ...``, so ``x0**d`` has index 0 and ``x_n**d`` the last index.
A monomial is stored as its exponent vector; a :class:`Form` is a dense
coefficient vector over that list.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations_with_replacement
from math import comb

import numpy as np

from . import exactlin

__all__ = [
    "GradedRing",
    "Form",
    "QuotientPiece",
    "multiply",
    "partial_derivative",
    "ideal_piece",
    "hilbert_ci",
    "ci_numerator",
]


class GradedRing:
    """Monomial bases of ``k[x0, ..., x_{nvars-1}]`` degree by degree."""

    def __init__(self, nvars: int):
        if nvars < 1:
            raise ValueError("need at least one variable")
        self.nvars = nvars
        self._mons: dict[int, np.ndarray] = {}
        self._keys: dict[int, np.ndarray] = {}

    def __repr__(self) -> str:
        return f"GradedRing(nvars={self.nvars})"

    def __eq__(self, other) -> bool:
        return isinstance(other, GradedRing) and other.nvars == self.nvars

    def __hash__(self) -> int:
        return hash(("GradedRing", self.nvars))

    def dim(self, d: int) -> int:
        if d < 0:
            return 0
        return comb(self.nvars - 1 + d, d)

    def monomials(self, d: int) -> np.ndarray:
        """Exponent vectors of degree ``d``, shape ``(dim(d), nvars)``, grlex order."""
        if d not in self._mons:
            if d < 0:
                mons = np.zeros((0, self.nvars), dtype=np.int64)
            else:
                mons = np.zeros((self.dim(d), self.nvars), dtype=np.int64)
                for row, combo in enumerate(combinations_with_replacement(range(self.nvars), d)):
                    for v in combo:
                        mons[row, v] += 1
            mons.setflags(write=False)
            self._mons[d] = mons
            # base-(d+1) keys are strictly decreasing along the grlex list
            self._keys[d] = self._encode(mons, d)[::-1].copy()
        return self._mons[d]

    def _encode(self, exps: np.ndarray, d: int) -> np.ndarray:
        base = d + 1
        weights = base ** np.arange(self.nvars - 1, -1, -1, dtype=np.int64)
        return exps @ weights

    def index(self, exps) -> np.ndarray:
        """Indices of exponent vectors (all of one degree) in the grlex list."""
        exps = np.asarray(exps, dtype=np.int64)
        if exps.shape[-1] != self.nvars:
            raise ValueError(f"exponent vectors must have length {self.nvars}")
        if exps.size == 0:
            return np.zeros(exps.shape[:-1], dtype=np.int64)
        degs = exps.sum(axis=-1)
        d = int(degs.flat[0])
        if np.any(degs != d) or np.any(exps < 0):
            raise ValueError("exponent vectors must be nonnegative and of equal degree")
        self.monomials(d)
        keys = self._keys[d]
        pos = np.searchsorted(keys, self._encode(exps, d))
        return len(keys) - 1 - pos

    def variable(self, i: int, p: int) -> "Form":
        e = np.zeros(self.nvars, dtype=np.int64)
        e[i] = 1
        return Form.monomial(self, e, p)

    def one(self, p: int) -> "Form":
        return Form.monomial(self, np.zeros(self.nvars, dtype=np.int64), p)


@dataclass(frozen=True, eq=False)
class Form:
    """Homogeneous polynomial with coefficients in GF(p)."""

    ring: GradedRing
    degree: int
    coeffs: np.ndarray
    p: int

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=np.int64) % self.p
        if c.shape != (self.ring.dim(self.degree),):
            raise ValueError(
                f"degree {self.degree} needs {self.ring.dim(self.degree)} coefficients, got {c.shape}"
            )
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zero(cls, ring: GradedRing, degree: int, p: int) -> "Form":
        return cls(ring, degree, np.zeros(ring.dim(degree), dtype=np.int64), p)

    @classmethod
    def monomial(cls, ring: GradedRing, exps, p: int, coeff: int = 1) -> "Form":
        exps = np.asarray(exps, dtype=np.int64)
        d = int(exps.sum())
        c = np.zeros(ring.dim(d), dtype=np.int64)
        c[int(ring.index(exps))] = coeff % p
        return cls(ring, d, c, p)

    @classmethod
    def random(cls, ring: GradedRing, degree: int, p: int, rng: np.random.Generator) -> "Form":
        return cls(ring, degree, rng.integers(0, p, ring.dim(degree)), p)

    def terms(self) -> tuple[np.ndarray, np.ndarray]:
        """Exponent vectors and coefficients of the nonzero terms."""
        nz = np.flatnonzero(self.coeffs)
        return self.ring.monomials(self.degree)[nz], self.coeffs[nz]

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def _check(self, other: "Form") -> None:
        if other.ring != self.ring or other.p != self.p:
            raise ValueError("forms live in different rings")

    def __add__(self, other: "Form") -> "Form":
        self._check(other)
        if other.degree != self.degree:
            raise ValueError("can only add forms of equal degree")
        return Form(self.ring, self.degree, (self.coeffs + other.coeffs) % self.p, self.p)

    def __neg__(self) -> "Form":
        return Form(self.ring, self.degree, -self.coeffs, self.p)

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Form):
            return multiply(self, other)
        return Form(self.ring, self.degree, (self.coeffs * (int(other) % self.p)) % self.p, self.p)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Form)
            and other.ring == self.ring
            and other.p == self.p
            and other.degree == self.degree
            and np.array_equal(other.coeffs, self.coeffs)
        )

    def __repr__(self) -> str:
        exps, cs = self.terms()
        if not len(cs):
            return f"Form(0, degree={self.degree})"
        parts = []
        for e, c in zip(exps[:6], cs[:6]):
            mono = "*".join(f"x{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            parts.append(f"{c}*{mono}" if mono else str(c))
        more = " + ..." if len(cs) > 6 else ""
        return f"Form({' + '.join(parts)}{more})"


def multiply(f: Form, g: Form) -> Form:
    """Product of two forms; degrees add."""
    f._check(g)
    ring, p = f.ring, f.p
    d = f.degree + g.degree
    out = np.zeros(ring.dim(d), dtype=np.int64)
    ef, cf = f.terms()
    eg, cg = g.terms()
    if len(cf) and len(cg):
        idx = ring.index(ef[:, None, :] + eg[None, :, :]).ravel()
        prods = ((cf[:, None] * cg[None, :]) % p).ravel()
        np.add.at(out, idx, prods)
    return Form(ring, d, out % p, p)


def partial_derivative(f: Form, i: int) -> Form:
    """Derivative with respect to ``x_i``; degree drops by one.

    A degree-0 input yields the zero form of degree 0.
    """
    ring, p = f.ring, f.p
    if f.degree == 0:
        return Form.zero(ring, 0, p)
    exps, cs = f.terms()
    keep = exps[:, i] > 0
    out = np.zeros(ring.dim(f.degree - 1), dtype=np.int64)
    if keep.any():
        e = exps[keep].copy()
        c = (cs[keep] * e[:, i]) % p
        e[:, i] -= 1
        np.add.at(out, ring.index(e), c)
    return Form(ring, f.degree - 1, out % p, p)


@dataclass(frozen=True, eq=False)
class QuotientPiece:
    """Degree-``m`` pieces of an ideal ``I`` and of ``R/I``.

    ``echelon`` is the reduced row echelon basis of ``I_m`` in monomial
    coordinates, ``pivots`` its pivot monomials, and ``standard`` the
    remaining (standard) monomials, which are the chosen basis of ``(R/I)_m``.
    """

    ring: GradedRing
    degree: int
    p: int
    echelon: np.ndarray
    pivots: np.ndarray
    standard: np.ndarray = field(repr=False)

    @property
    def dim_ideal(self) -> int:
        return len(self.pivots)

    @property
    def dim(self) -> int:
        return len(self.standard)

    @cached_property
    def standard_monomials(self) -> np.ndarray:
        return self.ring.monomials(self.degree)[self.standard]

    @cached_property
    def normal_forms(self) -> np.ndarray:
        """Row ``j`` is the class of monomial ``j`` in standard coordinates."""
        nf = np.zeros((self.ring.dim(self.degree), self.dim), dtype=np.int64)
        nf[self.standard, np.arange(self.dim)] = 1
        if self.dim_ideal:
            nf[self.pivots] = (-self.echelon[:, self.standard]) % self.p
        nf.setflags(write=False)
        return nf

    def reduce(self, vectors: np.ndarray) -> np.ndarray:
        """Standard coordinates of monomial-coordinate vectors (rows)."""
        v = np.asarray(vectors, dtype=np.int64) % self.p
        if v.ndim == 1:
            return self.reduce(v[None, :])[0]
        out = v[:, self.standard].copy()
        if self.dim_ideal and self.dim:
            out = (out - exactlin.matmul_mod(v[:, self.pivots], self.echelon[:, self.standard], self.p)) % self.p
        return out

    def lift(self, coords: np.ndarray) -> np.ndarray:
        """Monomial-coordinate vectors of standard-coordinate classes."""
        c = np.asarray(coords, dtype=np.int64)
        out = np.zeros(c.shape[:-1] + (self.ring.dim(self.degree),), dtype=np.int64)
        out[..., self.standard] = c % self.p
        return out

    def contains(self, f: Form) -> bool:
        return f.degree == self.degree and not self.reduce(f.coeffs).any()


def macaulay_rows(ring: GradedRing, generators, m: int) -> np.ndarray:
    """Coefficient rows of ``mu * Q`` over all generators ``Q`` and monomials ``mu``."""
    blocks = []
    for q in generators:
        if q.degree > m:
            continue
        mults = ring.monomials(m - q.degree)
        exps, cs = q.terms()
        rows = np.zeros((len(mults), ring.dim(m)), dtype=np.int64)
        if len(cs):
            idx = ring.index(mults[:, None, :] + exps[None, :, :])
            rows[np.arange(len(mults))[:, None], idx] = cs[None, :]
        blocks.append(rows)
    if not blocks:
        return np.zeros((0, ring.dim(m)), dtype=np.int64)
    return np.concatenate(blocks, axis=0)


def ideal_piece(ring: GradedRing, generators, m: int, p: int, *, max_cells: int | None = None) -> QuotientPiece:
    """Echelon basis of ``I_m`` for the ideal generated by ``generators``."""
    for q in generators:
        if q.ring != ring or q.p != p:
            raise ValueError("generator from a different ring")
    rows = macaulay_rows(ring, generators, m)
    if rows.shape[0]:
        red, piv = exactlin.rref(rows, p, max_cells=max_cells)
    else:
        red, piv = rows, []
    pivots = np.asarray(piv, dtype=np.int64)
    standard = np.setdiff1d(np.arange(ring.dim(m)), pivots)
    red.setflags(write=False)
    return QuotientPiece(ring, m, p, red, pivots, standard)


def ci_numerator(degrees) -> np.ndarray:
    """Coefficients of ``prod_j (1 - t**d_j)``."""
    num = np.zeros(1, dtype=object)
    num[0] = 1
    for d in degrees:
        nxt = np.zeros(len(num) + d, dtype=object)
        nxt[: len(num)] += num
        nxt[d:] -= num
        num = nxt
    return num


def hilbert_ci(g: int, degrees, m: int) -> int:
    """Coefficient of ``t**m`` in ``prod_j (1 - t**d_j) / (1 - t)**(g+1)``.

    For a regular sequence of forms of these degrees in ``g + 1`` variables
    this is ``dim (R/I)_m``.  Negative ``m`` gives 0.
    """
    if m < 0:
        return 0
    num = ci_numerator(degrees)
    return int(sum(int(c) * comb(m - e + g, g) for e, c in enumerate(num) if e <= m and c))
