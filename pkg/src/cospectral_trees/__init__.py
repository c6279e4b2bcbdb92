"""Exact characteristic functions of equilateral quantum trees, gluing
formulas, and searches for cospectral trees and equal-M vertex pairs."""

from .polynomials import DivisionInexact, IntPoly
from .spectral import CharFn, CharPair, PendantMode, ProblemSpec, RootCondition, char_fn, char_pair
from .trees import RootedTree, Tree, attach, canon_code, enumerate_trees

__version__ = "0.1.0"

__all__ = [
    "CharFn", "CharPair", "DivisionInexact", "IntPoly", "PendantMode", "ProblemSpec", "RootCondition",
    "RootedTree", "Tree", "attach", "canon_code", "char_fn", "char_pair", "enumerate_trees",
]
