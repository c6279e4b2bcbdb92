"""Characteristic functions of rooted equilateral trees.

A characteristic function is stored as ``CharFn(e, P)`` meaning
``s(lam, l) ** e * P(c(lam, l))`` up to a nonzero constant.  ``P`` is
``det(z*D - A)`` over the vertices that do not carry a Dirichlet condition,
and ``e = |Dirichlet vertices| - 1``.  With this sign convention the leading
coefficient of ``P`` is the product of the kept degrees (positive).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .polynomials import (
    ZERO,
    count_real_roots,
    real_roots_with_multiplicity,
    squarefree_part,
    IntPoly,
    det_poly_matrix,
    exact_div,
    from_json as poly_from_json,
    primitive_normalize,
    to_json as poly_to_json,
    to_text as poly_to_text,
)
from .trees import RootedTree, Tree, TreeError, attach, path, pendants, star


class ExponentMismatch(ValueError):
    """Two characteristic functions with different s-exponents were added."""


class PreconditionError(ValueError):
    pass


class RootCondition(enum.Enum):
    NEUMANN = "neumann"
    DIRICHLET = "dirichlet"


class PendantMode(enum.Enum):
    DIRICHLET = "dirichlet"
    NEUMANN = "neumann"


@dataclass(frozen=True)
class ProblemSpec:
    root_condition: RootCondition = RootCondition.NEUMANN
    pendant_mode: PendantMode = PendantMode.DIRICHLET


NEUMANN_ROOT = ProblemSpec(RootCondition.NEUMANN, PendantMode.DIRICHLET)
DIRICHLET_ROOT = ProblemSpec(RootCondition.DIRICHLET, PendantMode.DIRICHLET)


@dataclass(frozen=True)
class CharFn:
    e: int
    P: IntPoly

    def __mul__(self, other: "CharFn") -> "CharFn":
        return mul(self, other)

    def __add__(self, other: "CharFn") -> "CharFn":
        return add(self, other)

    def __sub__(self, other: "CharFn") -> "CharFn":
        return add(self, CharFn(other.e, -other.P))

    def __str__(self) -> str:
        return f"s^{self.e} * ({poly_to_text(self.P)})"

    def normalized(self) -> "CharFn":
        return CharFn(self.e, primitive_normalize(self.P))

    def to_dict(self) -> dict:
        return {"s_exp": self.e, "poly": poly_to_json(self.P)}

    @classmethod
    def from_dict(cls, data: dict) -> "CharFn":
        if not isinstance(data, dict):
            raise ValueError("CharFn JSON must be an object")
        for key in ("s_exp", "poly"):
            if key not in data:
                raise ValueError(f"CharFn JSON is missing field '{key}'")
        e = data["s_exp"]
        if not isinstance(e, int) or isinstance(e, bool):
            raise ValueError(f"field 's_exp' must be an integer, got {e!r}")
        if not isinstance(data["poly"], list):
            raise ValueError("field 'poly' must be a list of integer coefficients")
        return cls(e, poly_from_json(data["poly"]))


@dataclass(frozen=True)
class CharPair:
    neumann: CharFn
    dirichlet: CharFn


def mul(f: CharFn, g: CharFn) -> CharFn:
    return CharFn(f.e + g.e, f.P * g.P)


def add(f: CharFn, g: CharFn) -> CharFn:
    if f.e != g.e:
        raise ExponentMismatch(f"cannot add s^{f.e}*(...) and s^{g.e}*(...)")
    return CharFn(f.e, f.P + g.P)


def dirichlet_set(rt: RootedTree, spec: ProblemSpec) -> set[int]:
    out = set()
    if spec.pendant_mode is PendantMode.DIRICHLET:
        out = pendants(rt.tree) - {rt.root}
    if spec.root_condition is RootCondition.DIRICHLET:
        out.add(rt.root)
    return out


def pencil(t: Tree, keep: list[int]) -> list[list[IntPoly]]:
    """``z*D - A`` restricted to the vertices in ``keep`` (in that order)."""
    pos = {v: i for i, v in enumerate(keep)}
    m = len(keep)
    M = [[ZERO] * m for _ in range(m)]
    neg = IntPoly.const(-1)
    for i, v in enumerate(keep):
        M[i][i] = IntPoly((0, len(t.adj[v])))
        for w in t.adj[v]:
            j = pos.get(w)
            if j is not None:
                M[i][j] = neg
    return M


def _char_fn_from_set(t: Tree, dset: set[int]) -> CharFn:
    keep = [v for v in range(t.n) if v not in dset]
    return CharFn(len(dset) - 1, det_poly_matrix(pencil(t, keep)))


def char_fn(rt: RootedTree, spec: ProblemSpec = NEUMANN_ROOT) -> CharFn:
    """Characteristic function of the problem on ``rt`` given by ``spec``."""
    if rt.tree.n < 2:
        raise TreeError("characteristic functions need at least one edge")
    return _char_fn_from_set(rt.tree, dirichlet_set(rt, spec))


def char_pair(rt: RootedTree, pendant_mode: PendantMode = PendantMode.DIRICHLET) -> CharPair:
    return CharPair(
        char_fn(rt, ProblemSpec(RootCondition.NEUMANN, pendant_mode)),
        char_fn(rt, ProblemSpec(RootCondition.DIRICHLET, pendant_mode)),
    )


def tree_char_fn(t: Tree, pendant_mode: PendantMode = PendantMode.DIRICHLET) -> CharFn:
    """Root-free problem: every pendant carries the pendant condition."""
    if t.n < 2:
        raise TreeError("characteristic functions need at least one edge")
    dset = pendants(t) if pendant_mode is PendantMode.DIRICHLET else set()
    return _char_fn_from_set(t, dset)


def combine_at_root(pair1: CharPair, pair2: CharPair) -> CharPair:
    """Pair of the tree obtained by gluing two rooted trees at their roots."""
    n = pair1.neumann * pair2.dirichlet + pair1.dirichlet * pair2.neumann
    return CharPair(n, pair1.dirichlet * pair2.dirichlet)


def attach_char_fn(base_pair: CharPair, attached_pair: CharPair) -> CharFn:
    """Neumann characteristic function of the merged tree, from the pairs of
    the base (rooted at the gluing vertex) and of the attached tree."""
    return attached_pair.neumann * base_pair.dirichlet + attached_pair.dirichlet * base_pair.neumann


def recover_dirichlet_charfn(merged: CharFn, base_neumann: CharFn, attached_pair: CharPair) -> CharFn:
    """Invert attach_char_fn for the base Dirichlet function.

    Raises DivisionInexact when ``merged`` did not come from these inputs.
    """
    rest = merged - attached_pair.dirichlet * base_neumann
    divisor = attached_pair.neumann
    if rest.P.is_zero():
        return CharFn(rest.e - divisor.e, ZERO)
    return CharFn(rest.e - divisor.e, exact_div(rest.P, divisor.P))


def cospectral(f: CharFn, g: CharFn) -> bool:
    if f.e != g.e:
        return False
    if f.P.is_zero() or g.P.is_zero():
        return f.P == g.P
    return primitive_normalize(f.P) == primitive_normalize(g.P)


def lemma32_constant(d0: int, d1: int, d2: int) -> Fraction:
    """Ratio of the leading terms after gluing a root of degree ``d0`` onto
    vertices of degrees ``d1`` and ``d2``."""
    return Fraction((d1 + d0) * d2, d1 * (d2 + d0))


def lemma32_check(f1: CharFn, f2: CharFn, degrees: tuple[int, int, int]) -> dict:
    """Check ``P1 = C * P2`` and that ``C`` matches the degree formula.

    ``degrees`` is ``(d(v0), d(v1), d(v2))`` measured before gluing.
    """
    if not cospectral(f1, f2):
        raise PreconditionError("lemma32_check needs cospectral inputs")
    d0, d1, d2 = degrees
    C = Fraction(f1.P.lead, f2.P.lead)
    exact = all(Fraction(a) == C * b for a, b in zip(f1.P.coeffs, f2.P.coeffs))
    formula = lemma32_constant(d0, d1, d2)
    return {
        "holds": exact and C == formula,
        "C": C,
        "C_formula": formula,
        "identical": f1 == f2,
        "equal_degrees": d1 == d2,
    }


def m_equivalent(t0: Tree, v1: int, v2: int, pendant_mode: PendantMode = PendantMode.DIRICHLET) -> bool:
    """Same Dirichlet characteristic function at both roots and equal degree.

    The Neumann members agree automatically when the root condition is the
    standard one at both vertices.
    """
    t0._check(v1)
    t0._check(v2)
    if v1 == v2:
        raise ValueError("m_equivalent needs two distinct vertices")
    if t0.degree(v1) != t0.degree(v2):
        return False
    spec = ProblemSpec(RootCondition.DIRICHLET, pendant_mode)
    return char_fn(RootedTree(t0, v1), spec) == char_fn(RootedTree(t0, v2), spec)


# --- invariants ----------------------------------------------------------


def roots_in_unit_interval(P: IntPoly) -> bool:
    """All roots of ``P`` are real and lie in ``[-1, 1]``."""
    if P.degree < 1:
        return True
    inside = count_real_roots(P, -1, 1) + (1 if P(-1) == 0 else 0)
    return inside == squarefree_part(P).degree


def parity_ok(P: IntPoly) -> bool:
    d = P.degree
    return P.reflect() == (P if d % 2 == 0 else -P)


def leading_is_degree_product(t: Tree, dset: set[int], f: CharFn) -> bool:
    """Leading coefficient equals the product of the degrees of the vertices
    outside the Dirichlet set ``dset``."""
    prod = 1
    for v in range(t.n):
        if v not in dset:
            prod *= len(t.adj[v])
    return f.P.degree == t.n - len(dset) and f.P.lead == prod


def interlaces(neumann: IntPoly, dirichlet: IntPoly, tol: float = 1e-9) -> bool:
    """Roots of ``dirichlet`` (one fewer) interlace those of ``neumann``."""
    x = [r for r, m in real_roots_with_multiplicity(neumann) for _ in range(m)]
    y = [r for r, m in real_roots_with_multiplicity(dirichlet) for _ in range(m)]
    if len(y) != len(x) - 1:
        return False
    return all(x[i] - tol <= y[i] <= x[i + 1] + tol for i in range(len(y)))


# --- standard attachment family -------------------------------------------

P2_LEAF = RootedTree(path(2), 0)
P3_LEAF = RootedTree(path(3), 0)
P4_LEAF = RootedTree(path(4), 0)
STAR3_LEAF = RootedTree(star(4), 1)
STAR3_CENTER = RootedTree(star(4), 0)

DEFAULT_FAMILY: tuple[RootedTree, ...] = (P2_LEAF, P3_LEAF, P4_LEAF, STAR3_LEAF, STAR3_CENTER)


def merged_char_fn(t0: Tree, v: int, attached: RootedTree, pendant_mode: PendantMode = PendantMode.DIRICHLET) -> CharFn:
    """Direct route: build the glued tree and take its Neumann function at
    the glued vertex."""
    merged = attach(t0, v, attached)
    return char_fn(RootedTree(merged, v), ProblemSpec(RootCondition.NEUMANN, pendant_mode))


__all__ = [
    "CharFn", "CharPair", "ExponentMismatch", "PendantMode", "PreconditionError", "ProblemSpec",
    "RootCondition", "add", "attach_char_fn", "char_fn", "char_pair", "combine_at_root", "cospectral",
    "lemma32_check", "lemma32_constant", "m_equivalent", "merged_char_fn", "mul",
    "recover_dirichlet_charfn", "tree_char_fn",
]
