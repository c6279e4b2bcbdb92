"""Exact univariate polynomials over the integers.

Polynomials are dense, ascending-degree tuples of Python ints, so there is
no overflow no matter how large the degree products of a tree get.  The
variable is written ``z`` throughout; in the spectral layer it stands for
``c(lambda, l)``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


class DivisionInexact(ArithmeticError):
    """Raised when a polynomial division leaves a remainder."""


class IntPoly:
    """Dense integer polynomial with canonical (trailing-zero free) storage."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[int, ...] = tuple(c)

    @classmethod
    def _raw(cls, coeffs: tuple[int, ...]) -> "IntPoly":
        # caller guarantees canonical form
        p = object.__new__(cls)
        p.coeffs = coeffs
        return p

    @classmethod
    def const(cls, k: int) -> "IntPoly":
        return cls((k,))

    @classmethod
    def monomial(cls, k: int, power: int) -> "IntPoly":
        return cls([0] * power + [k])

    @property
    def degree(self) -> int | float:
        """Degree; the zero polynomial has degree ``-inf``."""
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == IntPoly.const(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        return to_text(self)

    def __neg__(self) -> "IntPoly":
        return IntPoly._raw(tuple(-x for x in self.coeffs))

    def __add__(self, other: "IntPoly | int") -> "IntPoly":
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        res = list(a)
        for i, x in enumerate(b):
            res[i] += x
        return IntPoly(res)

    __radd__ = __add__

    def __sub__(self, other: "IntPoly | int") -> "IntPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other: int) -> "IntPoly":
        return _coerce(other) - self

    def __mul__(self, other: "IntPoly | int") -> "IntPoly":
        if isinstance(other, int):
            return scale(self, other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly._raw(())
        res = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    res[i + j] += x * y
        return IntPoly._raw(tuple(res))

    __rmul__ = __mul__

    def __call__(self, x):
        """Horner evaluation; works for ints, Fractions, floats and arrays."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPoly":
        return IntPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def reflect(self) -> "IntPoly":
        """Return ``p(-z)``."""
        return IntPoly._raw(tuple(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)))


def _coerce(x: "IntPoly | int") -> IntPoly:
    if isinstance(x, IntPoly):
        return x
    if isinstance(x, int):
        return IntPoly.const(x)
    raise TypeError(f"cannot use {type(x).__name__} as IntPoly")


ZERO = IntPoly()
ONE = IntPoly.const(1)
Z = IntPoly((0, 1))


def add(a: IntPoly, b: IntPoly) -> IntPoly:
    return a + b


def sub(a: IntPoly, b: IntPoly) -> IntPoly:
    return a - b


def mul(a: IntPoly, b: IntPoly) -> IntPoly:
    return a * b


def scale(a: IntPoly, k: int) -> IntPoly:
    if k == 0:
        return ZERO
    return IntPoly._raw(tuple(k * c for c in a.coeffs))


def divmod_poly(a: IntPoly, b: IntPoly) -> tuple[IntPoly, IntPoly]:
    """Integer long division.  Raises DivisionInexact if a quotient
    coefficient is not an integer."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a.coeffs)
    db = len(b.coeffs) - 1
    lb = b.lead
    if len(rem) - 1 < db:
        return ZERO, a
    q = [0] * (len(rem) - db)
    bc = b.coeffs
    for k in range(len(rem) - 1 - db, -1, -1):
        top = rem[k + db]
        if top == 0:
            continue
        c, r = divmod(top, lb)
        if r:
            raise DivisionInexact(f"leading coefficient {top} not divisible by {lb}")
        q[k] = c
        for j, y in enumerate(bc):
            rem[k + j] -= c * y
    return IntPoly(q), IntPoly(rem)


def exact_div(a: IntPoly, b: IntPoly) -> IntPoly:
    """Return ``q`` with ``a == b * q`` exactly, else raise DivisionInexact."""
    q, r = divmod_poly(a, b)
    if r:
        raise DivisionInexact(f"{to_text(a)} is not divisible by {to_text(b)}")
    return q


def primitive_normalize(a: IntPoly) -> IntPoly:
    """Divide out the content and make the leading coefficient positive."""
    if a.is_zero():
        raise ValueError("primitive part of the zero polynomial is undefined")
    g = a.content()
    if a.lead < 0:
        g = -g
    return IntPoly._raw(tuple(c // g for c in a.coeffs))


# --- determinants ---------------------------------------------------------


def det_poly_matrix(M: Sequence[Sequence[IntPoly | int]]) -> IntPoly:
    """Fraction-free (Bareiss) determinant over Z[z].

    Every intermediate division is exact in the polynomial ring, so the
    result carries no rounding of any kind.
    """
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("det_poly_matrix needs a square matrix")
    if n == 0:
        return ONE
    A = [[_coerce(x) for x in row] for row in M]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if A[k][k].is_zero():
            for i in range(k + 1, n):
                if not A[i][k].is_zero():
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return ZERO
        pivot = A[k][k]
        rk = A[k]
        for i in range(k + 1, n):
            ri = A[i]
            aik = ri[k]
            for j in range(k + 1, n):
                num = pivot * ri[j]
                if not aik.is_zero() and not rk[j].is_zero():
                    num = num - aik * rk[j]
                ri[j] = num if prev is ONE else exact_div(num, prev)
            ri[k] = ZERO
        prev = pivot
    det = A[n - 1][n - 1]
    return -det if sign < 0 else det


# --- text / json ----------------------------------------------------------


def to_text(a: IntPoly) -> str:
    """Report form ``c0 + c1*z + c2*z^2 + ...`` (zero terms skipped)."""
    if a.is_zero():
        return "0"
    parts = []
    for i, c in enumerate(a.coeffs):
        if c == 0:
            continue
        if i == 0:
            term = str(c)
        elif i == 1:
            term = f"{c}*z"
        else:
            term = f"{c}*z^{i}"
        parts.append(term)
    out = parts[0]
    for t in parts[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


def to_json(a: IntPoly) -> list[str]:
    return [str(c) for c in a.coeffs]


def from_json(data: Sequence[str | int]) -> IntPoly:
    out = []
    for x in data:
        if isinstance(x, bool) or not isinstance(x, (int, str)):
            raise ValueError(f"polynomial coefficient {x!r} is not an integer")
        out.append(int(x))
    return IntPoly(out)


# --- real roots -----------------------------------------------------------


def _frac_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    rem = list(a)
    db = len(b) - 1
    if len(rem) - 1 < db:
        return [], rem
    q = [Fraction(0)] * (len(rem) - db)
    for k in range(len(rem) - 1 - db, -1, -1):
        c = rem[k + db] / b[-1]
        q[k] = c
        if c:
            for j, y in enumerate(b):
                rem[k + j] -= c * y
    while rem and rem[-1] == 0:
        rem.pop()
    return q, rem


def _to_int_primitive(c: list[Fraction]) -> IntPoly:
    den = 1
    for x in c:
        den = den * x.denominator // gcd(den, x.denominator)
    return primitive_normalize(IntPoly(int(x * den) for x in c))


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive, positive-leading gcd over Q[z]."""
    if a.is_zero():
        return primitive_normalize(b) if b else ZERO
    if b.is_zero():
        return primitive_normalize(a)
    x = [Fraction(c) for c in primitive_normalize(a).coeffs]
    y = [Fraction(c) for c in primitive_normalize(b).coeffs]
    while y:
        _, r = _frac_divmod(x, y)
        x, y = y, r
        if y:
            y = [Fraction(c) for c in _to_int_primitive(y).coeffs]
    return _to_int_primitive(x)


def squarefree_decomposition(a: IntPoly) -> list[tuple[IntPoly, int]]:
    """Write ``a ~ prod f_m ** m`` with square-free, pairwise coprime,
    primitive ``f_m``.  Constant factors are dropped."""
    if a.is_zero():
        raise ValueError("square-free decomposition of the zero polynomial")
    if a.degree < 1:
        return []
    g = poly_gcd(a, a.derivative())
    w = _prim_div(a, g)
    y = g
    m = 1
    out: list[tuple[IntPoly, int]] = []
    while w.degree > 0:
        h = poly_gcd(w, y)
        f = _prim_div(w, h)
        if f.degree > 0:
            out.append((f, m))
        w = h
        y = _prim_div(y, h)
        m += 1
    return out


def _prim_div(a: IntPoly, b: IntPoly) -> IntPoly:
    """Exact quotient over Q, returned as a primitive integer polynomial."""
    q, r = _frac_divmod([Fraction(x) for x in a.coeffs], [Fraction(x) for x in b.coeffs])
    if r:
        raise DivisionInexact("non-exact division in square-free decomposition")
    return _to_int_primitive(q)


def squarefree_part(a: IntPoly) -> IntPoly:
    out = ONE
    for f, _ in squarefree_decomposition(a):
        out = out * f
    return out


def sturm_sequence(a: IntPoly) -> list[IntPoly]:
    """Sturm chain of ``a``; each member is kept primitive up to a positive
    factor so signs are preserved."""
    seq = [a, a.derivative()]
    while seq[-1].degree > 0:
        x = [Fraction(c) for c in seq[-2].coeffs]
        y = [Fraction(c) for c in seq[-1].coeffs]
        _, r = _frac_divmod(x, y)
        if not r:
            break
        r = [-c for c in r]
        den = 1
        for c in r:
            den = den * c.denominator // gcd(den, c.denominator)
        ip = IntPoly(int(c * den) for c in r)
        g = ip.content()
        seq.append(IntPoly(c // g for c in ip.coeffs))
    return seq


def _sign_changes(values: Iterable) -> int:
    last = 0
    changes = 0
    for v in values:
        if v == 0:
            continue
        s = 1 if v > 0 else -1
        if last and s != last:
            changes += 1
        last = s
    return changes


def _var_at(seq: list[IntPoly], x) -> int:
    return _sign_changes(p(x) for p in seq)


def root_bound(a: IntPoly) -> Fraction:
    """Cauchy bound: every real root lies in ``(-B, B)``."""
    if a.degree < 1:
        return Fraction(1)
    lead = abs(a.lead)
    return 1 + Fraction(max(abs(c) for c in a.coeffs[:-1]), lead)


def count_real_roots(a: IntPoly, lo, hi) -> int:
    """Number of distinct real roots in the half-open interval ``(lo, hi]``."""
    if a.is_zero():
        raise ValueError("root count of the zero polynomial")
    lo, hi = Fraction(lo), Fraction(hi)
    if a.degree < 1 or lo >= hi:
        return 0
    seq = sturm_sequence(squarefree_part(a))
    return _var_at(seq, lo) - _var_at(seq, hi)


def isolate_real_roots(a: IntPoly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals ``(lo, hi]`` each holding exactly one distinct real
    root, sorted ascending.  Multiplicities come from real_roots_with_multiplicity."""
    if a.is_zero():
        raise ValueError("root isolation of the zero polynomial")
    if a.degree < 1:
        return []
    sqf = squarefree_part(a)
    seq = sturm_sequence(sqf)
    B = root_bound(sqf)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-B, B, _var_at(seq, -B), _var_at(seq, B))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        n = vlo - vhi
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        vmid = _var_at(seq, mid)
        stack.append((lo, mid, vlo, vmid))
        stack.append((mid, hi, vmid, vhi))
    out.sort()
    return out


def refine_root(a: IntPoly, lo: Fraction, hi: Fraction, tol: float = 1e-12) -> float:
    """Bisect a square-free ``a`` on an isolating interval ``(lo, hi]``."""
    if a(hi) == 0:
        return float(hi)
    # one simple root strictly inside, so the sign just right of lo is the
    # opposite of the sign at hi (a(lo) itself may vanish)
    slo = not a(hi) > 0
    lo, hi = Fraction(lo), Fraction(hi)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        v = a(mid)
        if v == 0:
            return float(mid)
        if (v > 0) == slo:
            lo = mid
        else:
            hi = mid
    return float((lo + hi) / 2)


def real_roots_with_multiplicity(a: IntPoly, tol: float = 1e-12) -> list[tuple[float, int]]:
    """Sorted ``(root, multiplicity)`` pairs for all real roots of ``a``."""
    out: list[tuple[float, int]] = []
    for f, m in squarefree_decomposition(a):
        for lo, hi in isolate_real_roots(f):
            out.append((refine_root(f, lo, hi, tol), m))
    out.sort()
    return out
