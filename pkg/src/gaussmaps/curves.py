"""Complete-intersection curve models over prime fields.

A curve of type ``(d_1, ..., d_{g-1})`` in ``P^g`` is modelled by its graded
coordinate ring ``R/I`` with ``I`` generated by random forms of those degrees.
The draw is accepted only if ``dim (R/I)_m`` matches the complete-intersection
Hilbert function for every ``0 <= m <= 4k``, which certifies that the forms
form a regular sequence through that range.  Smoothness is assumed (a generic
draw over a 31-bit field), not checked.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import exactlin
from .gradedring import Form, GradedRing, QuotientPiece, hilbert_ci, ideal_piece

__all__ = [
    "CIType",
    "CICurve",
    "InvalidTypeError",
    "DegenerateDrawError",
    "make_ci_curve",
    "ci_types",
]

DEFAULT_DRAWS = 3


class InvalidTypeError(ValueError):
    """Degree tuple does not describe a canonical complete-intersection curve."""


class DegenerateDrawError(RuntimeError):
    """Random generators failed the regular-sequence check on every draw."""


@dataclass(frozen=True)
class CIType:
    """Degrees ``(d_1, ..., d_{g-1})`` of a complete intersection curve in ``P^g``."""

    degrees: tuple[int, ...]

    def __post_init__(self):
        degs = tuple(int(d) for d in self.degrees)
        object.__setattr__(self, "degrees", degs)
        if not degs:
            raise InvalidTypeError("need at least one degree")
        if any(d < 2 for d in degs):
            raise InvalidTypeError(f"degrees must be >= 2, got {degs}")
        if self.k < 1:
            raise InvalidTypeError(f"type {degs} has canonical twist k = {self.k} < 1")

    @classmethod
    def parse(cls, text: str) -> "CIType":
        try:
            degs = tuple(int(x) for x in text.replace("(", "").replace(")", "").split(",") if x.strip())
        except ValueError as exc:
            raise InvalidTypeError(f"cannot parse type {text!r}") from exc
        return cls(degs)

    @property
    def g(self) -> int:
        """Ambient projective dimension."""
        return len(self.degrees) + 1

    @property
    def k(self) -> int:
        """Twist with ``omega_C = O_C(k)``."""
        return sum(self.degrees) - self.g - 1

    @property
    def degree(self) -> int:
        return int(np.prod(self.degrees))

    @property
    def genus(self) -> int:
        return 1 + self.degree * self.k // 2

    def hilbert(self, m: int) -> int:
        return hilbert_ci(self.g, self.degrees, m)

    @property
    def label(self) -> str:
        return ",".join(map(str, self.degrees))

    def __str__(self) -> str:
        return "(" + self.label + ")"


@dataclass(frozen=True, eq=False)
class CICurve:
    """Graded model of a random complete intersection with cached quotient pieces."""

    citype: CIType
    p: int
    seed: int
    ring: GradedRing
    generators: tuple[Form, ...]
    pieces: tuple[QuotientPiece, ...]
    draws: int = 1

    @property
    def g(self) -> int:
        return self.citype.g

    @property
    def k(self) -> int:
        return self.citype.k

    @property
    def degree(self) -> int:
        return self.citype.degree

    @property
    def genus(self) -> int:
        return self.citype.genus

    @property
    def max_degree(self) -> int:
        return len(self.pieces) - 1

    def piece(self, m: int) -> QuotientPiece:
        if m < 0 or m > self.max_degree:
            raise ValueError(f"degree {m} not cached (0..{self.max_degree})")
        return self.pieces[m]

    def h0(self, m: int) -> int:
        """``h^0(O_C(m))``; zero for negative ``m``."""
        return 0 if m < 0 else self.piece(m).dim

    def invariants(self) -> dict:
        return {"degree": self.degree, "genus": self.genus, "k": self.k, "g": self.g}


def _draw_generators(t: CIType, ring: GradedRing, p: int, rng: np.random.Generator) -> tuple[Form, ...]:
    return tuple(Form.random(ring, d, p, rng) for d in t.degrees)


def make_ci_curve(
    t: CIType,
    p: int,
    seed: int,
    *,
    max_draws: int = DEFAULT_DRAWS,
    max_degree: int | None = None,
    max_cells: int | None = None,
) -> CICurve:
    """Draw a random complete intersection of type ``t`` over GF(p).

    Quotient pieces are cached for degrees ``0..4k`` (or ``max_degree``).
    Raises :class:`DegenerateDrawError` if ``max_draws`` draws in a row fail
    the Hilbert check.
    """
    if not isinstance(t, CIType):
        t = CIType(tuple(t))
    exactlin.check_prime(p)
    top = 4 * t.k if max_degree is None else max_degree
    return _build(t, int(p), int(seed), max_draws, top, max_cells)


@lru_cache(maxsize=32)
def _build(t: CIType, p: int, seed: int, max_draws: int, top: int, max_cells: int | None) -> CICurve:
    ring = GradedRing(t.g + 1)
    rng = np.random.default_rng([seed, p])
    for draw in range(1, max_draws + 1):
        gens = _draw_generators(t, ring, p, rng)
        pieces = []
        for m in range(top + 1):
            piece = ideal_piece(ring, gens, m, p, max_cells=max_cells)
            if piece.dim != t.hilbert(m):
                break
            pieces.append(piece)
        else:
            return CICurve(t, p, seed, ring, gens, tuple(pieces), draw)
    raise DegenerateDrawError(f"type {t}: {max_draws} draws failed the regular-sequence check (p={p})")


_CI_TYPES = (
    ((2, 2, 2, 2), 2, 5),
    ((2, 2, 3), 2, 4),
    ((2, 3, 3), 3, 4),
    ((2, 4), 2, 3),
    ((3, 4), 3, 3),
    ((4, 4), 4, 3),
)


def ci_types() -> list[tuple[CIType, int, int]]:
    """The six complete-intersection types with their K3 index ``r`` and genus ``g``."""
    return [(CIType(d), r, g) for d, r, g in _CI_TYPES]
