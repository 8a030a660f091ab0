from __future__ import annotations

import json

from cdlab import chains
from cdlab.chains import Chain
from cdlab.complexes import cd1_complex, cd2_complex, fixture_text, load_fixture


def test_cd2_counts_and_ranks():
    c = cd2_complex().complex
    assert c.counts() == [1, 5, 10, 9, 3]
    assert chains.boundary_ranks(c)[1:5] == [0, 4, 5, 3]


def test_cd2_is_valid_and_has_expected_betti():
    c = cd2_complex().complex
    assert chains.validate(c) == []
    assert chains.betti(c) == [1, 1, 1, 1, 0]
    assert chains.betti_bruteforce(c) == [1, 1, 1, 1, 0]
    assert chains.euler_characteristic(c) == 0


def test_cd2_named_generators():
    bundle = cd2_complex()
    c, named = bundle.complex, bundle.distinguished_chains
    assert c.boundary_chain(named["c_inf"]) == named["Gamma_inf"] + named["Theta_inf"]
    assert chains.homologous(c, named["Gamma_inf"], named["Theta_inf"])
    assert not chains.is_boundary(c, named["Gamma_inf"])
    assert not chains.is_boundary(c, named["C_inf"])
    e = named["e_inf_sum"]
    assert chains.is_cycle(c, e) and not chains.is_boundary(c, e)
    # each of the two e-cells alone is not a cycle
    assert not chains.is_cycle(c, Chain.of(2, ["ep_inf"]))
    assert not chains.is_cycle(c, Chain.of(2, ["em_inf"]))


def test_cd1():
    bundle = cd1_complex()
    c = bundle.complex
    assert chains.betti(c) == [1, 1, 0]
    (h1,) = chains.homology_basis(c, 1)
    assert chains.homologous(c, h1, bundle.distinguished_chains["L_cd1"])


def test_dropping_a_term_from_a_higher_cell_is_detected():
    # faces of 2-cells land in 1-cycles here, so only cells of dimension >= 3 are probed
    base = cd2_complex().complex
    for cell, faces in base.boundary.items():
        if base.dim_of(cell) < 3:
            continue
        for face in faces:
            broken = base.with_boundary(cell, set(faces) - {face})
            assert chains.validate(broken), (cell, face)


def test_fixtures_match_tables():
    assert chains.complex_to_json(load_fixture("cd2")) == chains.complex_to_json(cd2_complex().complex)
    assert chains.complex_to_json(load_fixture("cd1")) == chains.complex_to_json(cd1_complex().complex)
    data = json.loads(fixture_text("cd2"))
    assert set(data) >= {"cells", "boundary"}
