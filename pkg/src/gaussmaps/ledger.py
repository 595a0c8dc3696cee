"""Parameter counts, Hilbert-scheme bounds and extendability verdicts.

Everything here is closed-form integer arithmetic over the published
constants shipped in ``tables.json``, plus the classification rules for Fano
threefolds of index ``r > 1`` and for Mukai varieties of dimension ``n >= 4``.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from importlib import resources
from math import comb

__all__ = [
    "LedgerEntry",
    "TableRow",
    "NotApplicableError",
    "INCONCLUSIVE",
    "load_tables",
    "corank_rows",
    "corank_row",
    "n_rg",
    "k3_hilbert_dim",
    "fano_bound",
    "mukai_bound",
    "zak_verdict",
    "classification_report",
    "UNIQUE",
    "EMPTY_NOT_EXTENDABLE",
    "EMPTY_NUMERICAL",
    "EMPTY_NO_SMOOTH",
    "OUTSIDE",
]

INCONCLUSIVE = "inconclusive"

UNIQUE = "unique component, examples dense"
EMPTY_NOT_EXTENDABLE = "empty (no examples + not extendable)"
EMPTY_NUMERICAL = "empty (numerical obstruction)"
EMPTY_NO_SMOOTH = "empty (no smooth extension)"
OUTSIDE = "outside classified range"


class NotApplicableError(ValueError):
    """Zak's criterion needs codimension at least two."""


@lru_cache(maxsize=1)
def load_tables() -> dict:
    """The embedded dataset (parsed ``tables.json``)."""
    text = resources.files("gaussmaps").joinpath("tables.json").read_text()
    return json.loads(text)


def _matches(bound, value: int) -> bool:
    if isinstance(bound, dict):
        return value >= bound["min"]
    return value == bound


def _fmt_range(bound) -> str:
    return f">={bound['min']}" if isinstance(bound, dict) else str(bound)


@dataclass(frozen=True)
class TableRow:
    """One row of the corank table.

    ``corank`` / ``h0n2`` hold the value used in arithmetic; ``*_kind`` says
    whether the published entry is an equality (``"value"``), an upper bound
    (``"bound"``) or absent (``None``).
    """

    r: str
    g: str
    corank: int
    corank_kind: str
    h0n2: int | None
    h0n2_kind: str | None
    cone_bound: int | None
    hyp_S: str
    hyp_C: str
    h0n2_note: str | None = None
    corank_note: str | None = None


def _row(raw: dict) -> TableRow:
    h = raw["h0n2"]
    if h is None:
        h0n2, kind, note = None, None, None
    elif "value" in h:
        h0n2, kind, note = h["value"], "value", None
    else:
        h0n2, kind, note = h["derived"], "bound", h["derived_from"]
    return TableRow(
        r=_fmt_range(raw["r"]),
        g=_fmt_range(raw["g"]),
        corank=raw["corank"]["value"],
        corank_kind="value",
        h0n2=h0n2,
        h0n2_kind=kind,
        cone_bound=raw["cone_bound"],
        hyp_S=raw["hyp_S"],
        hyp_C=raw["hyp_C"],
        h0n2_note=note,
        corank_note=raw["corank"].get("source"),
    )


def corank_rows() -> list[TableRow]:
    return [_row(raw) for raw in load_tables()["corank_table"]["rows"]]


def corank_row(r: int, g: int) -> TableRow | None:
    """First table row covering ``(r, g)``, or ``None``.

    For ``(3, 2)`` this is the general curve; for ``r = 1, g >= 13`` the row
    with general hypotheses.
    """
    for raw in load_tables()["corank_table"]["rows"]:
        if _matches(raw["r"], r) and _matches(raw["g"], g):
            return _row(raw)
    return None


def _lookup(name: str, **keys) -> dict | None:
    for row in load_tables()[name]["rows"]:
        if all(row[k] == v for k, v in keys.items()):
            return row
    return None


def n_rg(r: int, g: int) -> int:
    """Projective dimension ``N = 1 + r^2 (g - 1)`` of the embedded K3 surface."""
    if r < 1 or g < 2:
        raise ValueError("need r >= 1 and g >= 2")
    return 1 + r * r * (g - 1)


def k3_hilbert_dim(N: int) -> int:
    """Dimension ``18 + (N + 1)^2`` of the Hilbert scheme of the K3 surfaces in ``P^N``."""
    if N < 2:
        raise ValueError("need N >= 2")
    return 18 + (N + 1) ** 2


def fano_bound(r: int, g: int, corank: int, h0n2: int) -> int:
    """Upper bound ``N^2 + 3N + 19 + corank + 2 h0n2`` on the threefold tangent space."""
    if corank < 0 or h0n2 < 0:
        raise ValueError("corank and h0n2 must be nonnegative")
    N = n_rg(r, g)
    return N * N + 3 * N + 19 + corank + 2 * h0n2


def mukai_bound(n: int, r: int, g: int, corank: int, h0n2: int) -> int:
    """Tangent-space bound at the iterated cone for an ``n``-fold; equals :func:`fano_bound` at ``n = 3``."""
    if n < 3:
        raise ValueError("need n >= 3")
    if corank < 0 or h0n2 < 0:
        raise ValueError("corank and h0n2 must be nonnegative")
    N = n_rg(r, g)
    return N * N + n * N + 19 + (n - 2) * corank + (3 * n - 7 + comb(n - 3, 2)) * h0n2


def zak_verdict(N: int, corank: int, h0n2: int) -> int | str:
    """Smallest ``k`` for which a canonical curve of genus ``N`` is provably not ``k``-extendable.

    With ``h0(N_C(-1)) = N + corank`` and ``m = N - 1`` the criterion
    ``h0(N_C(-1)) <= m + k`` holds from ``k = corank + 1`` on, provided
    ``h0(N_C(-2)) = 0``; otherwise nothing follows.
    """
    if N <= 3:
        raise NotApplicableError(f"genus {N} canonical curve has codimension < 2")
    if h0n2 > 0:
        return INCONCLUSIVE
    return corank + 1


@dataclass(frozen=True)
class LedgerEntry:
    r: int
    g: int
    n: int
    N: int
    corank: int | None
    h0n2: int | None
    f_value: int | None
    bound_value: int | None
    hilbert_k3_dim: int
    verdict: str
    zak: int | str | None = None
    table_corank: int | None = None
    table_parameters: int | None = None
    provenance: dict = field(default_factory=dict)
    hypotheses: dict = field(default_factory=dict)
    notes: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        d = asdict(self)
        d["notes"] = list(self.notes)
        return d


def _verdict(r: int, g: int, n: int, row: TableRow | None, notes: list[str]) -> str:
    corank = row.corank if row else None
    h0n2 = row.h0n2 if row else None
    zak_empty = corank is not None and h0n2 == 0 and n >= corank + 2
    if n == 3:
        if r == 1:
            notes.append("index-one (prime) Fano threefolds are classified separately")
            return OUTSIDE
        if _lookup("fano_threefolds", r=r, g=g):
            return UNIQUE
        if g == 2 or (r, g) == (3, 3):
            notes.append("degree d = 2(g-1)/r is not an integer, or O(2D) is not very ample on the double plane")
            return EMPTY_NUMERICAL
        if zak_empty:
            if r == 2:
                notes.append("only the Picard-number-one locus is shown empty")
            if r == 3:
                notes.append("assumes the surface section is non trigonal")
            return EMPTY_NOT_EXTENDABLE
        return OUTSIDE
    if r == 1 and g < 6:
        notes.append("r = 1, g <= 5: complete intersections, not covered")
        return OUTSIDE
    mukai = _lookup("mukai_varieties", r=r, g=g)
    if mukai:
        if n <= mukai["n"]:
            return UNIQUE
        if (r, g) == (1, 6):
            notes.append("quadric sections of cones over G(1,4) extend infinitely often, but never smoothly past n = 6")
            return EMPTY_NO_SMOOTH
        return EMPTY_NOT_EXTENDABLE if zak_empty else OUTSIDE
    if g == 2 or (r, g) == (3, 3):
        notes.append("already empty in dimension three")
        return EMPTY_NUMERICAL
    if (r, g) in ((2, 3), (2, 4)):
        notes.append("degree count 2^n Delta^n = deg C forces n <= 3")
        return EMPTY_NUMERICAL
    if zak_empty:
        if (r, g) == (2, 6) or (r == 3 and g >= 5):
            notes.append("assumes the surface section is non trigonal")
        return EMPTY_NOT_EXTENDABLE
    return OUTSIDE


def classification_report(r: int, g: int, n: int | None = None, *, computed=None) -> LedgerEntry:
    """Assemble the numerical classification data for ``X^n_{r,g}`` (``n`` defaults to 3).

    ``computed`` may be a wedge-mode corank report from the matrix path; its
    value then replaces the table corank in the bounds, and the provenance
    records the primes.
    """
    if r < 1 or g < 2:
        raise ValueError("need r >= 1 and g >= 2")
    n = 3 if n is None else n
    if n < 3:
        raise ValueError("need n >= 3")
    N = n_rg(r, g)
    row = corank_row(r, g)
    notes: list[str] = []
    provenance: dict = {}
    corank = h0n2 = None
    if row is not None:
        corank = row.corank
        provenance["corank"] = "table" + (f" ({row.corank_note})" if row.corank_note else "")
        h0n2 = row.h0n2
        if row.h0n2_kind == "bound":
            provenance["h0n2"] = f"derived: {row.h0n2_note}; published only as <= {row.h0n2}"
        elif row.h0n2_kind == "value":
            provenance["h0n2"] = "table"
        else:
            provenance["h0n2"] = "absent from table"
    if computed is not None:
        corank = computed.corank
        provenance["corank"] = f"computed ({computed.path}, primes {list(computed.primes)})"
    f_value = bound = zak = None
    if corank is not None and h0n2 is not None:
        f_value = fano_bound(r, g, corank, h0n2)
        bound = f_value if n == 3 else mukai_bound(n, r, g, corank, h0n2)
        if N > 3:
            zak = zak_verdict(N, corank, h0n2)
    fano = _lookup("fano_threefolds", r=r, g=g)
    mukai = _lookup("mukai_varieties", r=r, g=g)
    params = None
    if n == 3 and fano:
        params = fano["parameters"]
    elif mukai and n == mukai["n"]:
        params = mukai["parameters"]
    verdict = _verdict(r, g, n, row, notes)
    hypotheses = {}
    if row is not None:
        hypotheses = {"S": row.hyp_S, "C": row.hyp_C}
        if row.hyp_S not in ("any smooth",) or row.hyp_C not in ("any smooth",):
            notes.append(f"hypotheses not checkable here: S {row.hyp_S}, C {row.hyp_C}")
    return LedgerEntry(
        r=r, g=g, n=n, N=N, corank=corank, h0n2=h0n2, f_value=f_value, bound_value=bound,
        hilbert_k3_dim=k3_hilbert_dim(N), verdict=verdict, zak=zak,
        table_corank=row.corank if row else None, table_parameters=params,
        provenance=provenance, hypotheses=hypotheses, notes=tuple(notes),
    )
