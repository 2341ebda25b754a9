"""Period sequences, differential operators in nabla = t d/dt, recurrence
guessing, and the degree / ramification predictions for 1/3(1,1) baskets."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .errors import FanoError
from .polygon import FanoPolygon, convex_hull

MODULUS = (1 << 61) - 1


# --- period sequences -------------------------------------------------------

def period_sequence(f, N: int) -> list[Fraction]:
    """c_k = constant term of f^k for k = 0..N."""
    if N < 0:
        raise ValueError("N must be non-negative")
    terms = {e: Fraction(c) for e, c in f.terms.items()}
    if not terms:
        return [Fraction(1)] + [Fraction(0)] * N
    # scale to integer coefficients: c_k(f) = c_k(D f) / D^k
    D = lcm(*(c.denominator for c in terms.values()))
    g = {e: int(c * D) for e, c in terms.items()}
    hull = convex_hull(g)
    ineqs = _hull_inequalities(hull)

    out = [Fraction(1)]
    cur = {(0, 0): 1}
    for k in range(1, N + 1):
        nxt: dict = {}
        left = N - k
        for (a, b), c in cur.items():
            for (x, y), d in g.items():
                e = (a + x, b + y)
                nxt[e] = nxt.get(e, 0) + c * d
        # keep only exponents whose negatives are still reachable in the remaining steps
        cur = {e: c for e, c in nxt.items() if c and _reachable((-e[0], -e[1]), left, ineqs)}
        out.append(Fraction(cur.get((0, 0), 0), D**k))
    return out


def _hull_inequalities(hull):
    if len(hull) < 3:
        return None
    out = []
    for i, p in enumerate(hull):
        q = hull[(i + 1) % len(hull)]
        n = (p[1] - q[1], q[0] - p[0])  # inward for a ccw hull
        out.append((n, n[0] * p[0] + n[1] * p[1]))
    return out


def _reachable(e, m: int, ineqs) -> bool:
    if ineqs is None:
        return True
    return all(n[0] * e[0] + n[1] * e[1] >= m * c for n, c in ineqs)


# --- operators --------------------------------------------------------------

@dataclass(frozen=True)
class DifferentialOperator:
    """sum_i p_i(t) nabla^i with coeffs[i][j] the coefficient of t^j nabla^i."""

    coeffs: tuple[tuple[Fraction, ...], ...]

    @staticmethod
    def build(coeffs: Sequence[Sequence]) -> "DifferentialOperator":
        rows = [tuple(Fraction(c) for c in row) for row in coeffs]
        while rows and not any(rows[-1]):
            rows.pop()
        width = max((len(r) for r in rows), default=0)
        return DifferentialOperator(tuple(r + (Fraction(0),) * (width - len(r)) for r in rows))

    @staticmethod
    def from_t_polys(by_t: dict[int, Sequence]) -> "DifferentialOperator":
        """Build from {t-power: [nabla^0, nabla^1, ...] coefficients}."""
        order = max(len(v) for v in by_t.values()) - 1
        deg = max(by_t)
        rows = [[0] * (deg + 1) for _ in range(order + 1)]
        for j, poly in by_t.items():
            for i, c in enumerate(poly):
                rows[i][j] += c
        return DifferentialOperator.build(rows)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def degree(self) -> int:
        return max((j for row in self.coeffs for j, c in enumerate(row) if c), default=0)

    def normalized(self) -> "DifferentialOperator":
        """Coprime integer coefficients, lowest t-term of the top nabla-coefficient positive."""
        flat = [c for row in self.coeffs for c in row if c]
        if not flat:
            return self
        den = lcm(*(c.denominator for c in flat))
        ints = [int(c * den) for c in flat]
        g = 0
        for x in ints:
            g = gcd(g, x)
        lead = next(c for c in self.coeffs[-1] if c)
        s = 1 if lead > 0 else -1
        scale = Fraction(s * den, g)
        return DifferentialOperator.build([[c * scale for c in row] for row in self.coeffs])

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [[_q(c) for c in row] for row in self.coeffs]}

    @staticmethod
    def from_json(obj: dict) -> "DifferentialOperator":
        try:
            return DifferentialOperator.build([[Fraction(str(c)) for c in row] for row in obj["coeffs"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise FanoError("BAD_INPUT", f"expected {{'order': n, 'coeffs': [[...], ...]}}: {exc}") from exc


def _q(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def apply_operator(L: DifferentialOperator, seq: Sequence) -> list[Fraction]:
    """Coefficients r_0..r_N of L applied to sum c_n t^n; every entry is exact."""
    c = [Fraction(x) for x in seq]
    out = []
    for m in range(len(c)):
        acc = Fraction(0)
        for i, row in enumerate(L.coeffs):
            for j, a in enumerate(row):
                if a and j <= m:
                    acc += a * (m - j) ** i * c[m - j]
        out.append(acc)
    return out


def _rows(c: Sequence, order: int, degree: int, mod: int | None = None):
    cols = [(i, j) for i in range(order + 1) for j in range(degree + 1)]
    rows = []
    for m in range(len(c)):
        row = []
        for i, j in cols:
            v = (m - j) ** i * c[m - j] if j <= m else 0
            row.append(v % mod if mod else v)
        rows.append(row)
    return cols, rows


def _rank_mod(rows, ncols: int, p: int) -> int:
    rows = [r[:] for r in rows]
    rank = 0
    for col in range(ncols):
        piv = next((k for k in range(rank, len(rows)) if rows[k][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for k in range(len(rows)):
            if k != rank and rows[k][col]:
                f = rows[k][col]
                rows[k] = [(x - f * y) % p for x, y in zip(rows[k], rows[rank])]
        rank += 1
    return rank


def nullspace(rows: list[list], ncols: int) -> list[list[Fraction]]:
    """Exact rational nullspace basis via reduced row echelon form."""
    A = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = next((k for k in range(rank, len(A)) if A[k][col]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = 1 / A[rank][col]
        A[rank] = [x * inv for x in A[rank]]
        for k in range(len(A)):
            if k != rank and A[k][col]:
                f = A[k][col]
                A[k] = [x - f * y for x, y in zip(A[k], A[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -A[r][fc]
        basis.append(v)
    return basis


def guess_operator(seq: Sequence, max_order: int, max_degree: int, margin: int = 5) -> DifferentialOperator | None:
    """Smallest (order, then degree) operator annihilating the series within truncation.

    Returns None when nothing fits inside the bounds.
    """
    c = [Fraction(x) for x in seq]
    den = lcm(*(x.denominator for x in c)) if c else 1
    # rescaling the sequence by a constant does not change annihilators
    ci = [int(x * den) for x in c]
    for order in range(max_order + 1):
        for degree in range(max_degree + 1):
            ncols = (order + 1) * (degree + 1)
            if len(ci) < ncols + margin:
                raise FanoError(
                    "SEQUENCE_TOO_SHORT", f"need at least {ncols + margin} terms for order {order}, degree {degree}"
                )
            _, mrows = _rows(ci, order, degree, MODULUS)
            if _rank_mod(mrows, ncols, MODULUS) == ncols:
                continue
            cols, rows = _rows(ci, order, degree)
            basis = nullspace(rows, ncols)
            if not basis:
                continue
            v = basis[0]
            mat = [[Fraction(0)] * (degree + 1) for _ in range(order + 1)]
            for (i, j), x in zip(cols, v):
                mat[i][j] = x
            L = DifferentialOperator.build(mat)
            if L.order == order:
                return L.normalized()
    return None


# --- predictions for 1/3(1,1) baskets -------------------------------------------

@dataclass(frozen=True)
class Prediction:
    g: int
    rf: int
    degree: int
    delta: int
    trivial_point_lower_bound: int
    k_eff: int
    n: int

    def to_json(self) -> dict:
        return dict(self.__dict__)


def trivial_point_bound(g: int, rf: int, delta: int) -> int:
    return g * g + g - 2 + (2 * g - delta) * rf


def rf_from_formula(g: int, degree: int, eigenspace_dims: Sequence[int], delta: int) -> int:
    """rf = 2g(d - 1) - delta - sum(E_i)."""
    return 2 * g * (degree - 1) - delta - sum(eigenspace_dims)


def degree_formula(g: int, rf: int) -> int:
    return g * g + 3 * g - 1 + 2 * g * rf


def predict(P: FanoPolygon, assignment=None) -> Prediction:
    """Degree and ramification predicted for the operator of an MMLP on P.

    Only defined for baskets made of 1/3(1,1) cones; anything else raises
    OUT_OF_SCOPE_BASKET carrying the extrapolated degree for reference.
    """
    from .cones import singularity_content
    from .genus import mutable_genus
    from .laurent import k_eff
    from .monodromy import assemble_monodromy

    content = singularity_content(P)
    g = mutable_genus(P)
    ke = k_eff(P, assignment)
    n = len(content.basket)
    rf = n + ke - 3
    if any((b.r, b.a) != (3, 1) for b in content.basket):
        raise FanoError(
            "OUT_OF_SCOPE_BASKET",
            f"basket {[str(b) for b in content.basket]} is not made of 1/3(1,1) cones; "
            f"extrapolated degree would be {degree_formula(g, rf)}",
            extrapolated_degree=degree_formula(g, rf),
        )
    B = assemble_monodromy(P).beta_coefficient
    delta = 1 if B != 0 else 2
    return Prediction(g, rf, degree_formula(g, rf), delta, trivial_point_bound(g, rf, delta), ke, n)
