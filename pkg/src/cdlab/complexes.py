"""The cell complexes of the closures of CD_1 and CD_2.

Cell names are ASCII transliterations of the printed symbols:

    e+ / e-            ep / em
    X_inf              X_inf   (A_inf, ..., e+_inf -> ep_inf, ...)
    Greek letters      Gamma, Delta, Xi, Theta
    aleph              aleph

The same data ships as ``data/cd1.json`` and ``data/cd2.json``; the test
suite checks that the fixtures and the tables below agree.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Mapping

from cdlab.chains import Chain, ChainComplex, complex_from_json

SYMBOLS = {
    "ep": "e^+",
    "em": "e^-",
    "A_inf": "A_∞",
    "B_inf": "B_∞",
    "C_inf": "C_∞",
    "Gamma": "Γ",
    "Delta": "Δ",
    "Xi": "Ξ",
    "Theta": "Θ",
    "a_inf": "a_∞",
    "b_inf": "b_∞",
    "c_inf": "c_∞",
    "d_inf": "d_∞",
    "ep_inf": "e^+_∞",
    "em_inf": "e^-_∞",
    "aleph": "ℵ",
    "Gamma_inf": "Γ_∞",
    "Delta_inf": "Δ_∞",
    "Xi_inf": "Ξ_∞",
    "Theta_inf": "Θ_∞",
    "aleph_inf": "ℵ_∞",
}


@dataclass(frozen=True)
class NamedComplexBundle:
    complex: ChainComplex
    distinguished_chains: Mapping[str, Chain]

    def __post_init__(self):
        for key, chain in self.distinguished_chains.items():
            self.complex.to_vector(chain)


CD1_CELLS = {
    2: ["M"],
    1: ["L", "S"],
    0: ["P"],
}

# M: chords avoiding the marked point; L: chords through it;
# S: f'(phi) = 0 away from the marked point; P: f'(marked) = 0.
CD1_BOUNDARY = {
    "M": ["S"],
    "L": [],
    "S": [],
}

CD2_CELLS = {
    4: ["A", "B", "C"],
    3: ["a", "b", "c", "d", "ep", "em", "A_inf", "B_inf", "C_inf"],
    2: ["Gamma", "Delta", "Xi", "Theta", "a_inf", "b_inf", "c_inf", "d_inf", "ep_inf", "em_inf"],
    1: ["aleph", "Gamma_inf", "Delta_inf", "Xi_inf", "Theta_inf"],
    0: ["aleph_inf"],
}

CD2_BOUNDARY = {
    "A": ["a", "b", "d", "A_inf", "B_inf"],
    "B": ["c", "B_inf", "A_inf", "em"],
    "C": ["d", "ep"],
    "a": ["Gamma", "Delta", "a_inf", "c_inf"],
    "b": ["c_inf", "Xi", "Gamma", "b_inf"],
    "c": ["b_inf", "Xi", "Delta", "a_inf", "Theta"],
    "d": ["Xi", "Delta"],
    "ep": ["Delta", "Xi"],
    "em": ["Delta", "Xi", "Theta"],
    "Gamma": ["aleph"],
    "Delta": ["Delta_inf", "Xi_inf", "aleph"],
    "Xi": ["Xi_inf", "Delta_inf", "aleph"],
    "Theta": [],
    "aleph": [],
    "A_inf": ["c_inf", "a_inf", "em_inf"],
    "B_inf": ["b_inf", "c_inf", "em_inf"],
    "C_inf": [],
    "a_inf": ["Gamma_inf", "Delta_inf", "Xi_inf", "Theta_inf"],
    "b_inf": ["Xi_inf", "Delta_inf", "Gamma_inf", "Theta_inf"],
    "c_inf": ["Gamma_inf", "Theta_inf"],
    "d_inf": ["Delta_inf"],
    "ep_inf": ["Delta_inf", "Xi_inf"],
    "em_inf": ["Delta_inf", "Xi_inf"],
    "Gamma_inf": [],
    "Delta_inf": [],
    "Xi_inf": [],
    "Theta_inf": [],
}


def cd1_complex() -> NamedComplexBundle:
    c = ChainComplex.build(CD1_CELLS, CD1_BOUNDARY, name="CD1-bar")
    return NamedComplexBundle(c, {"L_cd1": Chain.of(1, ["L"])})


def cd2_complex() -> NamedComplexBundle:
    c = ChainComplex.build(CD2_CELLS, CD2_BOUNDARY, name="CD2-bar")
    return NamedComplexBundle(
        c,
        {
            "C_inf": Chain.of(3, ["C_inf"]),
            "e_inf_sum": Chain.of(2, ["ep_inf", "em_inf"]),
            "Gamma_inf": Chain.of(1, ["Gamma_inf"]),
            "Theta_inf": Chain.of(1, ["Theta_inf"]),
            "c_inf": Chain.of(2, ["c_inf"]),
        },
    )


def fixture_text(name: str) -> str:
    """Raw contents of a shipped fixture (``"cd1"`` or ``"cd2"``)."""
    return resources.files("cdlab.data").joinpath(f"{name}.json").read_text()


def fixture_path(name: str):
    return resources.files("cdlab.data").joinpath(f"{name}.json")


def load_fixture(name: str) -> ChainComplex:
    return complex_from_json(json.loads(fixture_text(name)))


def verify_report(settings=None, only=None):
    """Run the verification report; see :mod:`cdlab.report`."""
    from cdlab import report

    return report.verify_report(settings, only)
