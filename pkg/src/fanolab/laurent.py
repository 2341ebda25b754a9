"""Laurent polynomials in two variables with rational or affine-symbolic
coefficients: slices, mutability, cluster mutation and standard MMLPs."""
from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb
from typing import Mapping, Union

from .cones import decompose_edge, r_cone_interior_points
from .errors import FanoError
from .lattice import AffineExpression, INCONSISTENT, Point, UnimodularMap, solve_linear_system
from .mutation import MutationData, available_mutations, mutate_polygon, slice_frame
from .polygon import FanoPolygon, convex_hull, interior_lattice_points, validate

Coeff = Union[Fraction, AffineExpression]
Factor = tuple[Fraction, Fraction]  # (gamma, eta) meaning gamma + eta * x^F

STANDARD_FACTOR: Factor = (Fraction(1), Fraction(1))


def _is_zero(c) -> bool:
    return c.is_zero() if isinstance(c, AffineExpression) else c == 0


def _norm(c) -> Coeff:
    if isinstance(c, AffineExpression):
        return c.constant if c.is_constant() else c
    return Fraction(c)


class LaurentPolynomial:
    """Finite sum of c * x^i y^j; zero coefficients are dropped."""

    def __init__(self, terms: Mapping[Point, Coeff] | None = None):
        self.terms: dict[Point, Coeff] = {}
        for e, c in (terms or {}).items():
            c = _norm(c)
            if not _is_zero(c):
                self.terms[(int(e[0]), int(e[1]))] = c

    @classmethod
    def monomials(cls, *exps: Point) -> "LaurentPolynomial":
        return cls({e: 1 for e in exps})

    def __eq__(self, other):
        return isinstance(other, LaurentPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"{type(self).__name__}({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self.terms.items()):
            mono = "*".join(s for s in (_pow("x", i), _pow("y", j)) if s)
            parts.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(parts)

    def __add__(self, other: "LaurentPolynomial"):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return type(self)(out)

    def __mul__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return type(self)({e: c * other for e, c in self.terms.items()})
        out: dict[Point, Coeff] = {}
        for (a, b), c in self.terms.items():
            for (x, y), d in other.terms.items():
                key = (a + x, b + y)
                out[key] = out.get(key, 0) + c * d
        return type(self)(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = LaurentPolynomial({(0, 0): 1})
        for _ in range(n):
            out = out * self
        return out

    def support(self) -> list[Point]:
        return sorted(self.terms)

    def constant_term(self) -> Coeff:
        return self.terms.get((0, 0), Fraction(0))

    def is_symbolic(self) -> bool:
        return any(isinstance(c, AffineExpression) for c in self.terms.values())

    def params(self) -> set:
        out = set()
        for c in self.terms.values():
            if isinstance(c, AffineExpression):
                out |= c.params()
        return out

    def transform(self, U: UnimodularMap) -> "LaurentPolynomial":
        return type(self)({U(e): c for e, c in self.terms.items()})

    def substitute(self, values) -> "LaurentPolynomial":
        out = {}
        for e, c in self.terms.items():
            out[e] = c.substitute(values) if isinstance(c, AffineExpression) else c
        return type(self)(out)

    def evaluate(self, values) -> "LaurentPolynomial":
        """Numeric polynomial after assigning every parameter."""
        return LaurentPolynomial(
            {e: c.evaluate(values) if isinstance(c, AffineExpression) else c for e, c in self.terms.items()}
        )

    def to_json(self) -> list:
        if self.is_symbolic():
            raise FanoError("SYMBOLIC", "use SymbolicLaurentPolynomial.to_json")
        return [{"exp": list(e), "coeff": _q(c)} for e, c in sorted(self.terms.items())]

    @staticmethod
    def from_json(obj) -> "LaurentPolynomial":
        if isinstance(obj, str):
            obj = json.loads(obj)
        if isinstance(obj, dict) and "params" in obj:
            return SymbolicLaurentPolynomial.from_json(obj)
        try:
            return LaurentPolynomial({tuple(t["exp"]): Fraction(str(t["coeff"])) for t in obj})
        except (KeyError, TypeError, ValueError) as exc:
            raise FanoError("BAD_INPUT", f"expected [{{'exp': [i, j], 'coeff': 'p/q'}}, ...]: {exc}") from exc


class SymbolicLaurentPolynomial(LaurentPolynomial):
    """Coefficients are affine expressions in named parameters."""

    def __init__(self, terms=None, params=None):
        super().__init__(terms)
        self.param_order = list(params) if params is not None else sorted(self.params(), key=str)

    def __mul__(self, other):
        res = super().__mul__(other)
        res.param_order = self.param_order
        return res

    def free_params(self) -> list:
        live = self.params()
        return [p for p in self.param_order if p in live]

    def to_json(self) -> dict:
        names = {p: param_name(p) for p in self.free_params()}
        terms = []
        for e, c in sorted(self.terms.items()):
            c = AffineExpression.lift(c)
            terms.append(
                {"exp": list(e), "coeff": {"const": _q(c.constant), "lin": {names[p]: _q(v) for p, v in c.terms}}}
            )
        return {"params": list(names.values()), "terms": terms}

    @staticmethod
    def from_json(obj) -> "SymbolicLaurentPolynomial":
        terms = {}
        for t in obj["terms"]:
            c = t["coeff"]
            if isinstance(c, dict):
                c = AffineExpression.build(Fraction(c["const"]), {k: Fraction(v) for k, v in c.get("lin", {}).items()})
            else:
                c = Fraction(str(c))
            terms[tuple(t["exp"])] = c
        return SymbolicLaurentPolynomial(terms, obj["params"])


@dataclass(frozen=True, order=True)
class Param:
    """Coefficient parameter at exponent (i, j); rank 1 marks R-cone interior points."""

    rank: int
    i: int
    j: int

    def __str__(self):
        return f"a[{self.i},{self.j}]"


def param_name(p) -> str:
    return str(p)


def _q(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _pow(v: str, n: int) -> str:
    return "" if n == 0 else v if n == 1 else f"{v}^{n}"


def newton_polygon(f: LaurentPolynomial) -> FanoPolygon:
    pts = f.support()
    try:
        return validate(convex_hull(pts))
    except FanoError as exc:
        raise FanoError("NOT_FANO", f"Newton polygon is not Fano ({exc.code})") from exc


# --- slices -----------------------------------------------------------------

def _frame(u: Point, F: Point | None) -> UnimodularMap:
    return slice_frame(u, F if F is not None else (-u[1], u[0]))


def slice(f: LaurentPolynomial, u: Point, r: int, F: Point | None = None) -> dict[int, Coeff]:
    """Terms of f at height r for u, keyed by the exponent along F (default: u rotated)."""
    M = _frame(u, F)
    out = {}
    for e, c in f.terms.items():
        s, h = M(e)
        if h == r:
            out[s] = c
    return out


def _divide(poly: dict[int, Coeff], gamma: Fraction, eta: Fraction, times: int):
    """Divide by (gamma + eta*s)^times; returns quotient and the list of remainders."""
    rems = []
    for _ in range(times):
        if not poly:
            return {}, rems
        lo, hi = min(poly), max(poly)
        q: dict[int, Coeff] = {}
        carry = Fraction(0)
        # synthetic division from the top degree down
        for s in range(hi, lo, -1):
            cur = poly.get(s, 0) - carry * gamma
            q[s - 1] = cur / eta
            carry = q[s - 1]
        rems.append(poly.get(lo, 0) - carry * gamma)
        poly = {s: c for s, c in q.items() if not _is_zero(_norm(c))}
    return poly, rems


def _multiply(poly: dict[int, Coeff], gamma: Fraction, eta: Fraction, times: int):
    for _ in range(times):
        out: dict[int, Coeff] = {}
        for s, c in poly.items():
            out[s] = out.get(s, 0) + c * gamma
            out[s + 1] = out.get(s + 1, 0) + c * eta
        poly = out
    return poly


def _height_range(f: LaurentPolynomial, M: UnimodularMap):
    hs = [M(e)[1] for e in f.terms]
    return (min(hs), max(hs)) if hs else (0, -1)


def divisibility_remainders(f: LaurentPolynomial, data: MutationData, factor: Factor = STANDARD_FACTOR) -> list:
    """Remainders that must vanish for f to be mutable with (data, factor)."""
    gamma, eta = map(Fraction, factor)
    if gamma == 0 or eta == 0:
        raise FanoError("INVALID_DATA", "factor must have both coefficients nonzero")
    M = slice_frame(data.u, data.F)
    _, top = _height_range(f, M)
    rems = []
    for r in range(1, top + 1):
        _, rr = _divide(slice(f, data.u, r, data.F), gamma, eta, r)
        rems += rr
    return rems


def is_mutable(f: LaurentPolynomial, data: MutationData, factor: Factor = STANDARD_FACTOR) -> bool:
    return all(_is_zero(_norm(c)) for c in divisibility_remainders(f, data, factor))


def mutate_laurent(f: LaurentPolynomial, data: MutationData, factor: Factor = STANDARD_FACTOR) -> LaurentPolynomial:
    """Cluster mutation: the slice at height r is multiplied by (gamma + eta*x^F)^(-r)."""
    gamma, eta = map(Fraction, factor)
    M = slice_frame(data.u, data.F)
    Minv = M.inverse()
    lo, hi = _height_range(f, M)
    out: dict[Point, Coeff] = {}
    for r in range(lo, hi + 1):
        poly = slice(f, data.u, r, data.F)
        if r > 0:
            poly, rems = _divide(poly, gamma, eta, r)
            if not all(_is_zero(_norm(c)) for c in rems):
                raise FanoError("NOT_MUTABLE", f"slice at height {r} is not divisible by the factor^{r}")
        elif r < 0:
            poly = _multiply(poly, gamma, eta, -r)
        for s, c in poly.items():
            out[Minv((s, r))] = c
    res = type(f)(out)
    if isinstance(f, SymbolicLaurentPolynomial):
        res.param_order = f.param_order
    return res


# --- standard maximally mutable polynomials ---------------------------------

class EdgeMode(str, Enum):
    BINOMIAL = "binomial"
    T_BINOMIAL = "t-binomial"


def edge_coefficients(h: int, w: int, mode: EdgeMode) -> list[int]:
    """Coefficients along an edge from its tail, R-cone (if any) at the tail end."""
    if mode == EdgeMode.BINOMIAL:
        return [comb(w, j) for j in range(w + 1)]
    k, e = divmod(w, h)
    # the R-part contributes 1 + x^e, whose interior coefficients vanish
    poly = _multiply({0: Fraction(1)}, Fraction(1), Fraction(1), k * h)
    if e:
        shifted = {s + e: c for s, c in poly.items()}
        poly = {s: poly.get(s, 0) + shifted.get(s, 0) for s in set(poly) | set(shifted)}
    return [int(poly.get(j, 0)) for j in range(w + 1)]


@dataclass
class MMLPResult:
    f: SymbolicLaurentPolynomial
    stabilized: bool
    stable_depth: int  # last depth at which the constraint space changed
    depth_explored: int
    constraints: int

    @property
    def free_params(self) -> list:
        return self.f.free_params()


def _param_id(p: Point, r_points: set) -> Param:
    # parameters at R-cone interior points sort last so they are the ones left free
    return Param(1 if p in r_points else 0, p[0], p[1])


def standard_mmlp(
    P: FanoPolygon, edge_mode: EdgeMode | str = EdgeMode.BINOMIAL, closure_depth: int = 3
) -> MMLPResult:
    """Zero constant term, prescribed edge coefficients, and divisibility by
    (1+x^F)^r imposed over the mutation graph up to `closure_depth` arrows."""
    mode = EdgeMode(edge_mode)
    r_points = set(r_cone_interior_points(P))
    terms: dict[Point, Coeff] = {}
    for E in P.edges:
        for pt, c in zip(E.points(), edge_coefficients(E.height, E.width, mode)):
            terms[pt] = Fraction(c)
    params = []
    for p in interior_lattice_points(P):
        if p == (0, 0):
            continue
        pid = _param_id(p, r_points)
        params.append(pid)
        terms[p] = AffineExpression.param(pid)
    params.sort()
    f0 = SymbolicLaurentPolynomial(terms, params)

    equations: list[AffineExpression] = []
    solution: dict = {}
    level = [(P, f0)]
    seen = {P.vertices}
    stable_depth, depth = 0, 0
    for depth in range(closure_depth + 1):
        new_eqs = []
        for Q, f in level:
            f = f.substitute(solution)
            for data in available_mutations(Q):
                new_eqs += [AffineExpression.lift(c) for c in divisibility_remainders(f, data)]
        new_eqs = [e.substitute(solution) for e in new_eqs]
        new_eqs = [e for e in new_eqs if not e.is_zero()]
        if new_eqs:
            equations += new_eqs
            sol = solve_linear_system(equations)
            if sol is INCONSISTENT:
                raise FanoError("INCONSISTENT", "no polynomial satisfies the mutability constraints")
            solution = sol
            stable_depth = depth
        if depth == closure_depth:
            break
        nxt = []
        for Q, f in level:
            f = f.substitute(solution)
            for data in available_mutations(Q):
                Q2 = mutate_polygon(Q, data).raw
                if Q2.vertices in seen:
                    continue
                seen.add(Q2.vertices)
                nxt.append((Q2, mutate_laurent(f, data)))
        level = nxt
        if not level:
            break
    f = f0.substitute(solution)
    return MMLPResult(f, stable_depth < depth or not level, stable_depth, depth, len(equations))


@dataclass(frozen=True)
class FactorAssignment:
    """Per edge index, one factor (gamma, eta) per T-cone on that edge."""

    factors: tuple[tuple[Factor, ...], ...]

    @staticmethod
    def standard(P: FanoPolygon) -> "FactorAssignment":
        return FactorAssignment(tuple(tuple(STANDARD_FACTOR for _ in range(decompose_edge(E).k)) for E in P.edges))


def k_eff(P: FanoPolygon, assignment: FactorAssignment | None = None) -> int:
    """Number of distinct multiple points: T-cones on one edge sharing a factor coincide."""
    assignment = assignment or FactorAssignment.standard(P)
    if len(assignment.factors) != len(P.edges):
        raise FanoError("BAD_INPUT", "assignment must list factors for every edge")
    total = 0
    for E, facs in zip(P.edges, assignment.factors):
        k = decompose_edge(E).k
        if len(facs) != k:
            raise FanoError("BAD_INPUT", f"edge {E.tail}->{E.head} has {k} T-cones, got {len(facs)} factors")
        if any(Fraction(g) == 0 or Fraction(e) == 0 for g, e in facs):
            raise FanoError("BAD_INPUT", "factor coefficients must be nonzero")
        total += len({Fraction(e) / Fraction(g) for g, e in facs})
    return total
