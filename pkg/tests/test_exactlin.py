import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import GF
from sympy.polys.matrices import DomainMatrix

from gaussmaps import exactlin
from gaussmaps.exactlin import (
    ShapeError,
    SizingError,
    check_prime,
    inverse,
    kernel_basis,
    matmul_mod,
    random_prime,
    rank,
    relative_rank,
    rref,
)

P = 2147483629
P2 = 1622570441


def oracle_rank(m, p):
    m = np.asarray(m) % p
    if m.size == 0:
        return 0
    return DomainMatrix.from_list(m.tolist(), GF(p)).rank()


def oracle_rref(m, p):
    r, pivots = DomainMatrix.from_list((np.asarray(m) % p).tolist(), GF(p)).rref()
    rows = np.array([[int(x) % p for x in row] for row in r.to_list()], dtype=np.int64)
    return rows[: len(pivots)], list(pivots)


def small_matrices(max_side=12):
    return st.integers(1, max_side).flatmap(
        lambda r: st.integers(1, max_side).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(-50, 50), min_size=c, max_size=c), min_size=r, max_size=r
            )
        )
    )


def test_check_prime():
    assert check_prime(P) == P
    with pytest.raises(ValueError):
        check_prime(P + 1)
    with pytest.raises(ValueError):
        check_prime(10007)


def test_random_prime_range_and_determinism():
    a = [random_prime(np.random.default_rng(3)) for _ in range(2)]
    assert a[0] == a[1]
    assert 2**30 < a[0] < 2**31
    check_prime(a[0])


def test_rank_examples():
    assert rank(np.eye(5, dtype=np.int64), 10007) == 5
    assert rank(np.zeros((3, 7), dtype=np.int64), 10007) == 0
    assert rank([[1, 2, 3], [2, 4, 6], [0, 1, 1]], 10007) == 2


def test_relative_rank_examples():
    a = np.array([[1, 0], [0, 1]])
    assert relative_rank(a, a, P) == 0
    assert relative_rank(a, np.zeros((0, 2), dtype=np.int64), P) == 2
    assert relative_rank(a, [[1, 1]], P) == 1
    with pytest.raises(ShapeError):
        relative_rank(a, [[1, 1, 1]], P)


def test_kernel_examples():
    assert kernel_basis(np.eye(4, dtype=np.int64), P).shape == (0, 4)
    assert kernel_basis(np.zeros((2, 3), dtype=np.int64), P).shape[0] == 3
    k = kernel_basis([[1, 1]], P)
    assert k.shape == (1, 2)
    assert (k[0, 0] * (P - 1) - k[0, 1]) % P == 0


def test_sizing_guard():
    with pytest.raises(SizingError):
        rank(np.ones((100, 100), dtype=np.int64), P, max_cells=1000)


def test_matmul_against_object_arithmetic():
    rng = np.random.default_rng(0)
    for inner in (1, 7, 64, 65, 300):
        a = rng.integers(0, P, (9, inner))
        b = rng.integers(0, P, (inner, 11))
        exact = (a.astype(object) @ b.astype(object)) % P
        assert np.array_equal(matmul_mod(a, b, P), exact.astype(np.int64))


def test_inverse_roundtrip():
    rng = np.random.default_rng(1)
    m = rng.integers(0, P, (40, 40))
    assert np.array_equal(matmul_mod(m, inverse(m, P), P), np.eye(40, dtype=np.int64))


@settings(max_examples=60, deadline=None)
@given(small_matrices())
def test_rank_matches_oracle(m):
    for p in (10007, P):
        assert rank(m, p) == oracle_rank(m, p)


@settings(max_examples=40, deadline=None)
@given(small_matrices(), st.integers(0, 2**32))
def test_properties(m, seed):
    m = np.array(m, dtype=np.int64) % P
    r = rank(m, P)
    assert r <= min(m.shape)
    assert rank(m[np.random.default_rng(seed).permutation(len(m))], P) == r
    assert r + kernel_basis(m, P).shape[0] == m.shape[1]
    k = kernel_basis(m, P)
    assert not matmul_mod(m, k.T, P).any()
    half = len(m) // 2
    a, b = m[:half], m[half:]
    assert rank(np.vstack([a, b]), P) >= max(rank(a, P), rank(b, P))
    assert relative_rank(a, b, P) <= rank(a, P)


@settings(max_examples=40, deadline=None)
@given(small_matrices())
def test_rref_matches_oracle(m):
    rows, pivots = rref(m, 10007)
    want_rows, want_pivots = oracle_rref(m, 10007)
    assert list(pivots) == want_pivots
    assert np.array_equal(rows, want_rows)


@pytest.mark.parametrize("shape,rk", [((300, 200), 150), ((150, 400), 120), ((513, 513), 500)])
def test_blocked_elimination_low_rank(shape, rk):
    rng = np.random.default_rng(shape[0])
    m = rng.integers(-9, 10, (shape[0], rk)) @ rng.integers(-9, 10, (rk, shape[1]))
    assert rank(m, P) == rk
    assert rank(m, P2) == rk
    rows, pivots = rref(m, P)
    assert len(pivots) == rk
    assert np.array_equal(rows[:, pivots], np.eye(rk, dtype=np.int64))
    # row space is preserved
    assert relative_rank(m, rows, P) == 0


def test_sparse_structured_pivots():
    m = np.zeros((200, 150), dtype=np.int64)
    idx = np.random.default_rng(5).permutation(150)[:90]
    m[np.arange(90) * 2, idx] = 3
    assert rank(m, P) == 90
    assert rank(m, P) == oracle_rank(m, P)


def test_input_not_mutated():
    m = np.arange(30, dtype=np.int64).reshape(5, 6)
    before = m.copy()
    rank(m, P)
    rref(m, P)
    kernel_basis(m, P)
    assert np.array_equal(m, before)


def test_default_cells():
    assert exactlin.DEFAULT_MAX_CELLS == 16_000_000
