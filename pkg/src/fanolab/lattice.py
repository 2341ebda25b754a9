"""Lattice primitives: vectors in Z^2, unimodular maps, affine expressions
over named parameters, and exact linear solving."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Hashable, Iterable, Mapping, Union

from .errors import FanoError

Point = tuple[int, int]
Scalar = Union[int, Fraction]


def det(u: Point, v: Point) -> int:
    return u[0] * v[1] - u[1] * v[0]


def dot(u: Point, v: Point) -> int:
    return u[0] * v[0] + u[1] * v[1]


def sub(u: Point, v: Point) -> Point:
    return (u[0] - v[0], u[1] - v[1])


def add(u: Point, v: Point) -> Point:
    return (u[0] + v[0], u[1] + v[1])


def scale(k: int, u: Point) -> Point:
    return (k * u[0], k * u[1])


def primitive_part(v: Point) -> tuple[Point, int]:
    """Split v into (primitive vector, lattice length)."""
    x, y = v
    g = gcd(x, y)
    if g == 0:
        raise FanoError("ZERO_VECTOR", "zero vector has no primitive part")
    return (x // g, y // g), g


def is_primitive(v: Point) -> bool:
    return gcd(v[0], v[1]) == 1


def cone_type(u: Point, v: Point) -> tuple[int, int]:
    """Type (r, a) of the cone spanned by primitive rays u, v.

    The cone is 1/r(1,a) when (v + a*u)/r is a lattice point; r = |det(u, v)|.
    Swapping the rays replaces a by its inverse mod r, so the lexicographically
    smaller of the two pairs is returned.
    """
    if not (is_primitive(u) and is_primitive(v)):
        raise FanoError("NONPRIMITIVE_RAY", f"rays must be primitive: {u}, {v}")
    r = abs(det(u, v))
    if r == 0:
        raise FanoError("DEPENDENT_RAYS", f"rays are linearly dependent: {u}, {v}")
    if r == 1:
        return (1, 0)

    def search(s: Point, t: Point) -> int:
        # lattice points of the half-open parallelogram are (t + a*s)/r, 0 <= a < r
        for a in range(1, r):
            x, y = add(t, scale(a, s))
            if x % r == 0 and y % r == 0:
                return a
        raise AssertionError("no lattice point in fundamental parallelogram")

    return min((r, search(u, v)), (r, search(v, u)))


@dataclass(frozen=True)
class UnimodularMap:
    """Linear automorphism [[a, b], [c, d]] of Z^2; no translation part."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if abs(self.a * self.d - self.b * self.c) != 1:
            raise FanoError("NOT_UNIMODULAR", f"determinant of {self} is not +-1")

    def __call__(self, p: Point) -> Point:
        return (self.a * p[0] + self.b * p[1], self.c * p[0] + self.d * p[1])

    def __matmul__(self, other: "UnimodularMap") -> "UnimodularMap":
        return UnimodularMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "UnimodularMap":
        D = self.a * self.d - self.b * self.c
        return UnimodularMap(D * self.d, -D * self.b, -D * self.c, D * self.a)

    def dual(self, u: Point) -> Point:
        """Pull back a covector so that <dual(u) | self(p)> = <u | p>."""
        inv = self.inverse()
        return (u[0] * inv.a + u[1] * inv.c, u[0] * inv.b + u[1] * inv.d)


@dataclass(frozen=True)
class AffineExpression:
    """constant + sum(coeff * param); zero coefficients are never stored."""

    constant: Fraction = Fraction(0)
    terms: tuple[tuple[Hashable, Fraction], ...] = ()

    @staticmethod
    def build(constant: Scalar = 0, terms: Mapping[Hashable, Scalar] | None = None) -> "AffineExpression":
        clean = {k: Fraction(c) for k, c in (terms or {}).items() if c != 0}
        return AffineExpression(Fraction(constant), tuple(sorted(clean.items(), key=_key)))

    @staticmethod
    def param(name: Hashable) -> "AffineExpression":
        return AffineExpression.build(0, {name: 1})

    @staticmethod
    def lift(x: "AffineExpression | Scalar") -> "AffineExpression":
        return x if isinstance(x, AffineExpression) else AffineExpression.build(x)

    @property
    def coeffs(self) -> dict[Hashable, Fraction]:
        return dict(self.terms)

    def params(self) -> set:
        return {k for k, _ in self.terms}

    def is_constant(self) -> bool:
        return not self.terms

    def is_zero(self) -> bool:
        return not self.terms and self.constant == 0

    def __add__(self, other):
        other = AffineExpression.lift(other)
        merged = self.coeffs
        for k, c in other.terms:
            merged[k] = merged.get(k, 0) + c
        return AffineExpression.build(self.constant + other.constant, merged)

    __radd__ = __add__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-AffineExpression.lift(other))

    def __rsub__(self, other):
        return AffineExpression.lift(other) - self

    def __mul__(self, k):
        if isinstance(k, AffineExpression):
            if k.is_constant():
                k = k.constant
            elif self.is_constant():
                return k * self.constant
            else:
                raise FanoError("NONLINEAR", "product of two non-constant affine expressions")
        return AffineExpression.build(self.constant * k, {p: c * k for p, c in self.terms})

    __rmul__ = __mul__

    def __truediv__(self, k: Scalar):
        return self * (Fraction(1) / Fraction(k))

    def substitute(self, values: Mapping[Hashable, "AffineExpression | Scalar"]) -> "AffineExpression":
        out = AffineExpression.build(self.constant)
        for p, c in self.terms:
            out = out + (AffineExpression.lift(values[p]) * c if p in values else AffineExpression.param(p) * c)
        return out

    def evaluate(self, values: Mapping[Hashable, Scalar]) -> Fraction:
        res = self.substitute(values)
        if not res.is_constant():
            raise FanoError("UNBOUND_PARAMETER", f"free parameters remain: {sorted(res.params(), key=_key)}")
        return res.constant

    def __str__(self):
        parts = [str(p) if c == 1 else f"{c}*{p}" for p, c in self.terms]
        if self.constant or not parts:
            parts.append(str(self.constant))
        return " + ".join(parts)


def _key(item):
    k = item[0] if isinstance(item, tuple) else item
    return (type(k).__name__, k)


class _Inconsistent:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INCONSISTENT"

    def __bool__(self):
        return False


INCONSISTENT = _Inconsistent()


def solve_linear_system(equations: Iterable[AffineExpression]):
    """Solve expr == 0 for every expr by Gaussian elimination over Q.

    Pivots on the lowest parameter id of each reduced equation. Returns a map
    pivot -> expression in the remaining free parameters, or INCONSISTENT.
    """
    solved: dict[Hashable, AffineExpression] = {}
    for eq in equations:
        eq = eq.substitute(solved)
        if eq.is_constant():
            if eq.constant != 0:
                return INCONSISTENT
            continue
        pivot, c = min(eq.terms, key=_key)
        value = (AffineExpression.param(pivot) * c - eq) / c
        solved = {p: e.substitute({pivot: value}) for p, e in solved.items()}
        solved[pivot] = value
    return dict(sorted(solved.items(), key=_key))
