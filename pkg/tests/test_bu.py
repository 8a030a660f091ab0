from __future__ import annotations

import math

import numpy as np
import pytest

from cdlab.analytic import borsuk_ulam
from cdlab.analytic.borsuk_ulam import Parity
from cdlab.analytic.roots import antiperiodic_roots
from cdlab.analytic.trig import TrigPolynomial, cos, sin


def test_known_pair_has_three_roots():
    res = borsuk_ulam.bu_roots(cos(), TrigPolynomial.sin_k(2))
    assert res.parity is Parity.ODD
    assert np.allclose([r.phi for r in res.roots], [0.0, math.pi / 4, 3 * math.pi / 4], atol=1e-8)


def test_determinant_closed_form():
    # h = 2 sin phi - 2 sin 3phi for (cos, sin 2phi)
    h = borsuk_ulam.bu_determinant_poly(cos(), TrigPolynomial.sin_k(2))
    assert h.same_coefficients(TrigPolynomial(0.0, [0, 0, 0], [2.0, 0.0, -2.0]))


def test_determinant_is_antiperiodic():
    rng = np.random.default_rng(0)
    for _ in range(20):
        f, g = borsuk_ulam.random_pair(rng)
        h = borsuk_ulam.bu_determinant_poly(f, g)
        assert h.shifted_by_pi().same_coefficients(-h)


def test_kernel_direction_kills_both_derivatives():
    rng = np.random.default_rng(1)
    f, g = borsuk_ulam.random_pair(rng)
    for r in borsuk_ulam.bu_roots(f, g).roots:
        lam, mu = r.direction.lam, r.direction.mu
        d = (lam * f + mu * g) if hasattr(f, "__rmul__") else (f * lam + g * mu)
        dd = d.derivative()
        assert abs(dd(r.phi)) < 1e-8 and abs(dd(r.phi + math.pi)) < 1e-8
        assert math.isclose(math.hypot(lam, mu), 1.0)


def test_degenerate_inputs():
    assert borsuk_ulam.bu_parity(cos(), sin()) is Parity.DEGENERATE
    assert borsuk_ulam.bu_parity(TrigPolynomial.constant(1.0), TrigPolynomial.constant(2.0)) is Parity.DEGENERATE
    assert borsuk_ulam.bu_parity(cos(), cos()) is Parity.DEGENERATE


def test_random_pairs_are_odd():
    rng = np.random.default_rng(7)
    counts = {p: 0 for p in Parity}
    for _ in range(200):
        counts[borsuk_ulam.bu_parity(*borsuk_ulam.random_pair(rng))] += 1
    assert counts[Parity.EVEN] == 0
    assert counts[Parity.ODD] >= 190


def test_too_few_samples_rejected():
    with pytest.raises(ValueError):
        borsuk_ulam.bu_roots(cos(), TrigPolynomial.sin_k(2), samples=4)


def test_antiperiodic_roots_of_sin():
    scan = antiperiodic_roots(TrigPolynomial.sin_k(3), 64, 1e-12, 1e-12)
    assert not scan.degenerate
    assert np.allclose(scan.roots, [0, math.pi / 3, 2 * math.pi / 3], atol=1e-10)


def test_touching_root_is_degenerate():
    # sin * cos^2 is antiperiodic and touches zero at pi/2 without changing sign
    h = sin() * cos() * cos()
    scan = antiperiodic_roots(h, 64, 1e-12, 1e-12)
    assert scan.degenerate
