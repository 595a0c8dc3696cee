import json

import pytest

from gaussmaps import ledger
from gaussmaps.ledger import (
    EMPTY_NO_SMOOTH,
    EMPTY_NOT_EXTENDABLE,
    EMPTY_NUMERICAL,
    INCONCLUSIVE,
    OUTSIDE,
    UNIQUE,
    NotApplicableError,
    classification_report,
    corank_row,
    fano_bound,
    k3_hilbert_dim,
    mukai_bound,
    n_rg,
    zak_verdict,
)


def test_n_rg():
    assert n_rg(2, 3) == 9
    assert n_rg(1, 2) == 2
    assert (n_rg(4, 3), n_rg(3, 4), n_rg(2, 6)) == (33, 28, 21)
    with pytest.raises(ValueError):
        n_rg(0, 3)


def test_k3_hilbert_dim_and_chain():
    assert k3_hilbert_dim(9) == 118
    assert k3_hilbert_dim(2) == 27
    # Hilbert scheme of the K3 plus (N + corank) plus 2 h0(N(-2))
    assert 118 + (9 + 10) + 2 * 1 == fano_bound(2, 3, 10, 1) == 139


@pytest.mark.parametrize(
    "args,want",
    [((2, 4, 7, 0), 234), ((2, 5, 4, 0), 363), ((2, 6, 2, 0), 525), ((3, 4, 2, 0), 889), ((4, 3, 2, 0), 1209), ((2, 3, 10, 1), 139)],
)
def test_fano_bound(args, want):
    assert fano_bound(*args) == want


@pytest.mark.parametrize(
    "args,want",
    [((8, 1, 8, 7, 0), 189), ((10, 1, 7, 9, 0), 210), ((6, 1, 9, 5, 0), 174), ((5, 1, 10, 4, 0), 181), ((6, 1, 6, 10, 1), 145), ((5, 2, 5, 4, 0), 405)],
)
def test_mukai_bound(args, want):
    assert mukai_bound(*args) == want


def test_mukai_reduces_to_fano_on_all_rows():
    for row in ledger.load_tables()["corank_table"]["rows"]:
        r = row["r"] if isinstance(row["r"], int) else row["r"]["min"]
        g = row["g"] if isinstance(row["g"], int) else row["g"]["min"]
        tr = corank_row(r, g)
        if tr.h0n2 is None:
            continue
        assert mukai_bound(3, r, g, tr.corank, tr.h0n2) == fano_bound(r, g, tr.corank, tr.h0n2)


def test_zak_examples():
    assert zak_verdict(n_rg(4, 2), 1, 0) == 2
    assert zak_verdict(7, 9, 0) == 10
    assert zak_verdict(6, 10, 1) == INCONCLUSIVE
    with pytest.raises(NotApplicableError):
        zak_verdict(3, 1, 0)


@pytest.mark.parametrize("corank", range(0, 12))
def test_zak_monotone(corank):
    # criterion h0(N_C(-1)) = N + corank <= (N - 1) + k holds exactly for k >= corank + 1
    N = 20
    nu = zak_verdict(N, corank, 0)
    for k in range(1, 15):
        assert (N + corank <= N - 1 + k) == (k >= nu)


def test_table_rows_transcribed():
    rows = ledger.corank_rows()
    assert len(rows) == 25
    assert corank_row(2, 2).corank == 13
    assert corank_row(3, 2).corank == 10
    assert corank_row(4, 2).corank == 1 and corank_row(7, 9).corank == 1
    assert corank_row(1, 6).h0n2_kind == "bound"
    assert corank_row(2, 3).h0n2_kind == "bound" and corank_row(2, 3).h0n2 == 1
    assert corank_row(2, 2).h0n2 is None
    assert corank_row(1, 20).corank == 1


def test_classification_examples():
    e = classification_report(2, 5)
    assert e.verdict == UNIQUE and e.f_value == 363 and e.bound_value == e.f_value
    assert classification_report(5, 2).verdict.startswith("empty")
    e = classification_report(1, 6, 7)
    assert e.verdict == EMPTY_NO_SMOOTH and e.zak == INCONCLUSIVE
    assert classification_report(2, 6).N == 21


@pytest.mark.parametrize(
    "args,verdict",
    [
        ((4, 3), UNIQUE),
        ((3, 4), UNIQUE),
        ((2, 3), UNIQUE),
        ((2, 2), EMPTY_NUMERICAL),
        ((3, 3), EMPTY_NUMERICAL),
        ((2, 7), EMPTY_NOT_EXTENDABLE),
        ((3, 5), EMPTY_NOT_EXTENDABLE),
        ((6, 4), EMPTY_NOT_EXTENDABLE),
        ((1, 8, 8), UNIQUE),
        ((1, 8, 9), EMPTY_NOT_EXTENDABLE),
        ((1, 7, 10), UNIQUE),
        ((1, 7, 11), EMPTY_NOT_EXTENDABLE),
        ((2, 5, 6), EMPTY_NOT_EXTENDABLE),
        ((2, 4, 4), EMPTY_NUMERICAL),
        ((1, 12, 4), EMPTY_NOT_EXTENDABLE),
        ((1, 15, 4), EMPTY_NOT_EXTENDABLE),
        ((1, 8), OUTSIDE),
        ((1, 4, 5), OUTSIDE),
    ],
)
def test_verdicts(args, verdict):
    assert classification_report(*args).verdict == verdict


def test_provenance_and_hypotheses():
    e = classification_report(2, 3)
    assert "derived" in e.provenance["h0n2"]
    e = classification_report(3, 5)
    assert e.hypotheses["S"] == "non trigonal"
    assert any("trigonal" in n for n in e.notes)


def test_absent_is_not_zero():
    e = classification_report(2, 2)
    assert e.h0n2 is None and e.f_value is None
    assert e.provenance["h0n2"] == "absent from table"


def test_entry_invariants():
    for r in range(1, 6):
        for g in range(2, 12):
            for n in (3, 5):
                e = classification_report(r, g, n)
                assert e.N == 1 + r * r * (g - 1)
                if n == 3:
                    assert e.bound_value == e.f_value
                json.dumps(e.to_dict())


def test_computed_corank_is_carried():
    from gaussmaps.gaussmap import formula_report
    from gaussmaps.curves import CIType

    rep = formula_report(CIType((2, 2, 3)))
    e = classification_report(2, 4, computed=rep)
    assert e.corank == 7 and e.f_value == 234
    assert e.provenance["corank"].startswith("computed")


def test_dataset_versioned():
    t = ledger.load_tables()
    assert t["schema_version"] == 1 and "dataset_version" in t
