from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cdlab import f2


def random_matrix(rng, rows, cols, density=0.4):
    return f2.BitMatrix.from_rows((rng.random((rows, cols)) < density).astype(int).tolist(), cols)


def dense_rank_mod2(a: np.ndarray) -> int:
    a = a.copy() % 2
    r = 0
    for c in range(a.shape[1]):
        pivot = next((i for i in range(r, a.shape[0]) if a[i, c]), None)
        if pivot is None:
            continue
        a[[r, pivot]] = a[[pivot, r]]
        for i in range(a.shape[0]):
            if i != r and a[i, c]:
                a[i] ^= a[r]
        r += 1
    return r


def test_bits_roundtrip():
    assert f2.bits_to_int([1, 0, 1]) == 0b101
    assert f2.int_to_bits(0b101, 4) == [1, 0, 1, 0]
    assert f2.popcount(0b1011) == 3


def test_identity_and_zero_rank():
    assert f2.rank(f2.BitMatrix.identity(5)) == 5
    assert f2.rank(f2.BitMatrix.zeros(3, 4)) == 0
    assert f2.kernel_basis(f2.BitMatrix.identity(3)) == []


def test_rank_two_by_two_over_gf2():
    # [[1,1],[1,1]] has rank 1; over the rationals [[1,1],[1,-1]] would be 2
    assert f2.rank(f2.BitMatrix.from_rows([[1, 1], [1, 1]])) == 1


def test_rank_matches_dense_elimination():
    rng = np.random.default_rng(3)
    for _ in range(200):
        r, c = rng.integers(1, 9, 2)
        m = random_matrix(rng, r, c)
        assert f2.rank(m) == dense_rank_mod2(np.array(m.to_lists()))


def test_rank_is_invariant_under_permutation():
    rng = np.random.default_rng(5)
    m = random_matrix(rng, 6, 7)
    p = m.permuted(rng.permutation(6).tolist(), rng.permutation(7).tolist())
    assert f2.rank(p) == f2.rank(m)
    assert f2.rank(m.transpose()) == f2.rank(m)


def test_kernel_vectors_are_in_kernel_and_independent():
    rng = np.random.default_rng(9)
    for _ in range(100):
        m = random_matrix(rng, 5, 8)
        ker = f2.kernel_basis(m)
        assert len(ker) == m.cols - f2.rank(m)
        assert all(m.matvec(v) == 0 for v in ker)
        assert f2.span_rank(ker) == len(ker)


def test_solve_returns_solution_or_none():
    rng = np.random.default_rng(11)
    for _ in range(100):
        m = random_matrix(rng, 6, 4)
        x = int(rng.integers(0, 16))
        b = m.matvec(x)
        sol = f2.solve(m, b)
        assert sol is not None and m.matvec(sol) == b
    m = f2.BitMatrix.from_rows([[1, 0], [1, 0]])
    assert f2.solve(m, 0b01) is None


def test_solve_rejects_wrong_length():
    m = f2.BitMatrix.identity(2)
    with pytest.raises(ValueError):
        f2.solve(m, 0b100)
    with pytest.raises(ValueError):
        f2.solve(m, 0b1, length=3)


def test_matmul_associates_with_matvec():
    rng = np.random.default_rng(2)
    a, b = random_matrix(rng, 4, 5), random_matrix(rng, 5, 3)
    for x in range(8):
        assert a.matmul(b).matvec(x) == a.matvec(b.matvec(x))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(0, 1), min_size=6, max_size=6), min_size=1, max_size=6))
def test_rank_nullity(rows):
    m = f2.BitMatrix.from_rows(rows, 6)
    assert f2.rank(m) + len(f2.kernel_basis(m)) == 6
