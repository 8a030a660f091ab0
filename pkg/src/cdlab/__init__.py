"""Mod 2 homology, cup products and analytic checks for varieties of chord diagrams."""

__version__ = "0.1.0"
