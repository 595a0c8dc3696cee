"""Gaussian maps on complete-intersection curves as explicit matrices.

Sections of ``Omega_P(m)|_C`` are represented through the Euler sequence as
``(g+1)``-tuples of classes in ``(R/I)_{m-1}``; the Gaussian image of a pair
``F, G`` is the tuple ``(F dG/dx_i - G dF/dx_i)_i``.  The kernel of the
restriction to ``Omega_C(m)`` is spanned by the conormal tuples
``c * (dQ_j/dx_i)_i``, so the rank of a Gaussian map is the dimension of the
span of its tuples modulo the conormal span.

Quotient classes are lifted to their standard monomials.  For monomials the
tuple has a single term per component, ``(b_i - a_i) x^(a+b-e_i)``, which is
what the matrix assembly uses.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from . import exactlin
from .curves import CICurve, CIType, make_ci_curve
from .gradedring import Form, partial_derivative

__all__ = [
    "CorankReport",
    "InstabilityError",
    "FormulaInapplicableError",
    "gaussian_tuple",
    "monomial_tuples",
    "conormal_rows",
    "euler_matrix",
    "wedge_rows",
    "pair_rows",
    "rows_from_lifts",
    "image_rank",
    "corank_wedge",
    "corank_pair",
    "corank_formula",
    "formula_report",
]

DEFAULT_RETRIES = 3
SCHEMA_VERSION = 1


class InstabilityError(RuntimeError):
    """No two primes agreed on the corank within the retry budget."""


class FormulaInapplicableError(ValueError):
    """The closed-form corank does not apply to this type."""


@dataclass(frozen=True)
class CorankReport:
    """Rank and corank of one Gaussian map, with the primes that produced them."""

    citype: CIType
    a: int
    b: int
    mode: str
    rank: int
    corank: int
    target_dim: int
    primes: tuple[int, ...] = ()
    seeds: tuple[int, ...] = ()
    coranks: tuple[int, ...] = ()
    retries: int = 0
    path: str = "matrix"
    notes: tuple[str, ...] = field(default=())

    def to_dict(self) -> dict:
        d = asdict(self)
        d["schema_version"] = SCHEMA_VERSION
        d["citype"] = self.citype.label
        d["g"] = self.citype.g
        d["k"] = self.citype.k
        for key in ("primes", "seeds", "coranks", "notes"):
            d[key] = list(d[key])
        return d


def gaussian_tuple(F: Form, G: Form, curve: CICurve) -> np.ndarray:
    """Classes of ``F dG/dx_i - G dF/dx_i`` in ``(R/I)_{a+b-1}``, shape ``(g+1, h)``."""
    m = F.degree + G.degree - 1
    piece = curve.piece(m)
    comps = []
    for i in range(curve.g + 1):
        comp = F * partial_derivative(G, i) - G * partial_derivative(F, i)
        comps.append(piece.reduce(comp.coeffs))
    return np.stack(comps)


def monomial_tuples(curve: CICurve, ea: np.ndarray, eb: np.ndarray) -> np.ndarray:
    """Flattened Gaussian tuples of monomial pairs ``(x^ea[r], x^eb[r])``."""
    ea = np.asarray(ea, dtype=np.int64)
    eb = np.asarray(eb, dtype=np.int64)
    p, ring = curve.p, curve.ring
    m = int(ea[0].sum() + eb[0].sum()) if len(ea) else 1
    nf = curve.piece(m - 1).normal_forms
    h = nf.shape[1]
    out = np.zeros((len(ea), (curve.g + 1) * h), dtype=np.int64)
    s = ea + eb
    for i in range(curve.g + 1):
        coef = (eb[:, i] - ea[:, i]) % p
        ok = np.flatnonzero((s[:, i] > 0) & (coef != 0))
        if ok.size == 0:
            continue
        e = s[ok].copy()
        e[:, i] -= 1
        out[ok, i * h:(i + 1) * h] = (coef[ok, None] * nf[ring.index(e)]) % p
    return out


def conormal_rows(curve: CICurve, m: int) -> np.ndarray:
    """Tuples ``c * (dQ_j/dx_i)_i`` for ``c`` over the standard basis of ``(R/I)_{m-d_j}``."""
    p, ring = curve.p, curve.ring
    n = curve.g + 1
    h = curve.h0(m - 1)
    blocks = []
    for q in curve.generators:
        if m - q.degree < 0:
            continue
        mults = curve.piece(m - q.degree).standard_monomials
        block = np.zeros((len(mults), n * h), dtype=np.int64)
        for i in range(n):
            dq = partial_derivative(q, i)
            exps, cs = dq.terms()
            raw = np.zeros((len(mults), ring.dim(m - 1)), dtype=np.int64)
            if len(cs):
                idx = ring.index(mults[:, None, :] + exps[None, :, :])
                raw[np.arange(len(mults))[:, None], idx] = cs[None, :]
            block[:, i * h:(i + 1) * h] = curve.piece(m - 1).reduce(raw)
        blocks.append(block)
    if not blocks:
        return np.zeros((0, n * h), dtype=np.int64)
    return np.concatenate(blocks, axis=0)


def euler_matrix(curve: CICurve, m: int) -> np.ndarray:
    """Matrix of the contraction ``(t_i) -> sum x_i t_i`` from tuples in degree ``m-1`` to ``(R/I)_m``."""
    std = curve.piece(m - 1).standard_monomials
    nf = curve.piece(m).normal_forms
    blocks = []
    for i in range(curve.g + 1):
        e = std.copy()
        e[:, i] += 1
        blocks.append(nf[curve.ring.index(e)])
    return np.concatenate(blocks, axis=0)


def wedge_rows(curve: CICurve, a: int) -> np.ndarray:
    """Gaussian tuples of ``s_i ^ s_j`` (``i < j``) over the standard basis of ``(R/I)_a``."""
    std = curve.piece(a).standard_monomials
    i, j = np.triu_indices(len(std), k=1)
    return monomial_tuples(curve, std[i], std[j])


def _tensor_basis(curve: CICurve, a: int, b: int) -> tuple[np.ndarray, np.ndarray]:
    sa = curve.piece(a).standard_monomials
    sb = curve.piece(b).standard_monomials
    return np.repeat(sa, len(sb), axis=0), np.tile(sb, (len(sa), 1))


def multiplication_matrix(curve: CICurve, a: int, b: int) -> np.ndarray:
    """Rows: standard tensors ``s (x) t``; columns: ``(R/I)_{a+b}`` coordinates of ``s t``."""
    ea, eb = _tensor_basis(curve, a, b)
    if not len(ea):
        return np.zeros((0, curve.h0(a + b)), dtype=np.int64)
    return curve.piece(a + b).normal_forms[curve.ring.index(ea + eb)]


def pair_rows(curve: CICurve, a: int, b: int, *, max_cells: int | None = None) -> np.ndarray:
    """Gaussian tuples of a basis of the kernel of ``(R/I)_a (x) (R/I)_b -> (R/I)_{a+b}``."""
    ea, eb = _tensor_basis(curve, a, b)
    mu = multiplication_matrix(curve, a, b)
    kernel = exactlin.kernel_basis(mu.T, curve.p, max_cells=max_cells)
    tuples = monomial_tuples(curve, ea, eb)
    return exactlin.matmul_mod(kernel, tuples, curve.p)


def rows_from_lifts(curve: CICurve, a: int, lifts: np.ndarray) -> np.ndarray:
    """Wedge-mode Gaussian tuples for arbitrary lifts of a basis of ``(R/I)_a``.

    ``lifts`` holds monomial coordinates in ``R_a``, one row per basis
    element.  The bilinear tuple map is tabulated on all monomial pairs and
    contracted against the lifts, so nothing assumes monomial lifts.
    """
    p = curve.p
    mons = curve.ring.monomials(a)
    lifts = np.asarray(lifts, dtype=np.int64) % p
    if lifts.shape[1] != len(mons):
        raise exactlin.ShapeError(f"lifts must have {len(mons)} columns")
    nmon = len(mons)
    u, v = np.divmod(np.arange(nmon * nmon), nmon)
    table = monomial_tuples(curve, mons[u], mons[v])
    width = table.shape[1]
    x = exactlin.matmul_mod(lifts, table.reshape(nmon, nmon * width), p).reshape(len(lifts), nmon, width)
    i, j = np.triu_indices(len(lifts), k=1)
    rows = np.zeros((len(i), width), dtype=np.int64)
    for s in range(len(lifts) - 1):
        sel = np.flatnonzero(i == s)
        rows[sel] = exactlin.matmul_mod(lifts[j[sel]], x[s], p)
    return rows


def image_rank(curve: CICurve, a: int, b: int, *, mode: str | None = None, max_cells: int | None = None) -> int:
    """Rank of the Gaussian map ``O(a), O(b)`` on ``curve`` at its prime.

    ``mode`` is ``"wedge"`` (requires ``a == b``) or ``"pair"``; the default
    is wedge when ``a == b``.
    """
    if a < 1 or b < 1:
        raise ValueError("twists must be >= 1")
    mode = mode or ("wedge" if a == b else "pair")
    if mode == "wedge":
        if a != b:
            raise ValueError("wedge mode needs a == b")
        rows = wedge_rows(curve, a)
    elif mode == "pair":
        rows = pair_rows(curve, a, b, max_cells=max_cells)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return exactlin.relative_rank(rows, conormal_rows(curve, a + b), curve.p, max_cells=max_cells)


def _validate_primes(primes) -> list[int]:
    primes = [exactlin.check_prime(p) for p in (primes or ())]
    if len(primes) > 2:
        raise ValueError("at most two explicit primes")
    if len(set(primes)) != len(primes):
        raise ValueError("explicit primes must be distinct")
    return primes


def _multi_prime(
    t: CIType,
    a: int,
    b: int,
    mode: str,
    *,
    seed: int,
    primes,
    retries: int,
    max_cells: int | None,
) -> CorankReport:
    explicit = _validate_primes(primes)
    rng = np.random.default_rng(seed)
    target = t.hilbert(t.k + a + b)
    top = max(4 * t.k, a + b)
    used: list[int] = []
    seeds: list[int] = []
    coranks: list[int] = []
    for attempt in range(2 + retries):
        if attempt < len(explicit):
            p = explicit[attempt]
        else:
            p = exactlin.random_prime(rng)
            while p in used or p in explicit:
                p = exactlin.random_prime(rng)
        curve_seed = int(rng.integers(2**62))
        curve = make_ci_curve(t, p, curve_seed, max_degree=top, max_cells=max_cells)
        coranks.append(target - image_rank(curve, a, b, mode=mode, max_cells=max_cells))
        used.append(p)
        seeds.append(curve_seed)
        agreed = sorted(c for c in set(coranks) if coranks.count(c) >= 2)
        if agreed:
            corank = agreed[0]
            return CorankReport(
                citype=t, a=a, b=b, mode=mode, rank=target - corank, corank=corank,
                target_dim=target, primes=tuple(used), seeds=tuple(seeds),
                coranks=tuple(coranks), retries=attempt - 1, path="matrix",
            )
    raise InstabilityError(f"type {t}, ({a},{b}): coranks {coranks} at primes {used} never agreed")


def corank_wedge(
    t: CIType,
    *,
    seed: int = 0,
    primes=None,
    retries: int = DEFAULT_RETRIES,
    max_cells: int | None = None,
) -> CorankReport:
    """Corank of ``Phi_omega`` (``a = b = k``), agreed at two independent primes."""
    return _multi_prime(t, t.k, t.k, "wedge", seed=seed, primes=primes, retries=retries, max_cells=max_cells)


def corank_pair(
    t: CIType,
    a: int,
    b: int,
    *,
    seed: int = 0,
    primes=None,
    retries: int = DEFAULT_RETRIES,
    max_cells: int | None = None,
) -> CorankReport:
    """Corank of ``Phi_{O(a),O(b)}`` on the multiplication kernel, two agreeing primes."""
    if a < 1 or b < 1:
        raise ValueError("twists must be >= 1")
    return _multi_prime(t, a, b, "pair", seed=seed, primes=primes, retries=retries, max_cells=max_cells)


def corank_formula(t: CIType) -> int:
    """``sum_j h0(O_C(d_j - k))``, valid when ``k >= 2`` and ``2k != d_j`` for all ``j``."""
    if t.k < 2:
        raise FormulaInapplicableError(f"type {t}: needs k >= 2, has k = {t.k}; use the matrix path")
    bad = [d for d in t.degrees if d == 2 * t.k]
    if bad:
        raise FormulaInapplicableError(f"type {t}: 2k = {2 * t.k} equals a generator degree; use the matrix path")
    return sum(t.hilbert(d - t.k) for d in t.degrees)


def formula_report(t: CIType) -> CorankReport:
    corank = corank_formula(t)
    target = t.hilbert(3 * t.k)
    return CorankReport(
        citype=t, a=t.k, b=t.k, mode="wedge", rank=target - corank, corank=corank,
        target_dim=target, path="formula",
    )
