from __future__ import annotations

import itertools

import pytest

from cdlab import simplicial
from cdlab.simplicial import Cochain, CochainError, OrderedSimplicialComplex


def test_triangle_boundary_circle():
    c = OrderedSimplicialComplex.from_maximal([(0, 1), (1, 2), (0, 2)])
    assert c.betti() == [1, 1]
    assert c.validate() == []


def test_tetrahedron_boundary_is_a_sphere():
    c = OrderedSimplicialComplex.from_maximal(itertools.combinations(range(4), 3))
    assert c.betti() == [1, 0, 1]
    assert c.euler_characteristic() == 2


@pytest.mark.parametrize("n", [3, 4, 5])
def test_surfaces(n):
    for surface in (simplicial.klein_bottle(n), simplicial.torus(n)):
        c = surface.complex
        assert c.betti() == [1, 2, 1]
        assert c.euler_characteristic() == 0
        assert len(c.of_dim(2)) == 2 * n * n
        assert simplicial.is_cycle(c, surface.loop_u)
        assert simplicial.is_cycle(c, surface.loop_v)
        assert simplicial.is_cycle(c, surface.fundamental_class)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_klein_cup_squares(n):
    k = simplicial.klein_bottle(n)
    w = simplicial.restricted_W(k)
    assert (w.pair(k.loop_u), w.pair(k.loop_v)) == (1, 0)
    assert simplicial.cup_square_pairing(k, w) == 1
    assert simplicial.cup_square_pairing(k, simplicial.solve_cocycle(k, 0, 1)) == 0
    assert simplicial.cup_square_pairing(k, simplicial.solve_cocycle(k, 1, 1)) == 1


@pytest.mark.parametrize("n", [3, 4])
def test_torus_cup_squares_vanish(n):
    t = simplicial.torus(n)
    for a, b in [(1, 0), (0, 1), (1, 1)]:
        assert simplicial.cup_square_pairing(t, simplicial.solve_cocycle(t, a, b)) == 0


def test_cup_square_depends_only_on_class():
    k = simplicial.klein_bottle(4)
    w = simplicial.restricted_W(k)
    for v in k.complex.of_dim(0)[:5]:
        shifted = w + simplicial.coboundary(k.complex, Cochain.of(0, [v]))
        assert simplicial.cup_square_pairing(k, shifted) == 1


def test_coboundary_squares_to_zero_and_leibniz():
    c = simplicial.klein_bottle(3).complex
    basis = simplicial.cocycle_basis(c, 1)
    for v in c.of_dim(0)[:4]:
        x = Cochain.of(0, [v])
        assert simplicial.coboundary(c, simplicial.coboundary(c, x)).is_zero()
        for y in basis[:3]:
            # d(x u y) = dx u y when dy = 0
            assert simplicial.coboundary(c, simplicial.cup(c, x, y)) == simplicial.cup(
                c, simplicial.coboundary(c, x), y
            )


def test_cup_degree_overflow():
    c = simplicial.klein_bottle(3).complex
    x = Cochain.of(2, [c.of_dim(2)[0]])
    with pytest.raises(CochainError):
        simplicial.cup(c, x, Cochain.of(1, [c.of_dim(1)[0]]))


def test_truncated_polynomials():
    assert simplicial.truncated_poly_cube([1, 1, 1], 3, 3) == [1, 1, 0, 1]
    assert simplicial.truncated_poly_cube([1, 1, 1], -3, 2) == [1, 1, 1]
    # independent check: expand the cube by repeated multiplication mod 2
    a = [1, 1, 1]
    prod = [1]
    for _ in range(3):
        out = [0] * (len(prod) + len(a) - 1)
        for i, x in enumerate(prod):
            for j, y in enumerate(a):
                out[i + j] ^= x & y
        prod = out
    assert prod[:4] == [1, 1, 0, 1]
