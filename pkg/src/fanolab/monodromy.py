"""Integral monodromy at t = 0: local blocks for R-cones, global assembly,
recovery of singularity content, and eigenvalues via cyclotomic factors.

Matrices are stored column-wise: entries[i][j] is the coefficient of basis
vector i in the image of basis vector j. Every basis starts with the relative
cycle alpha and the vanishing cycle beta.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Sequence

from .cones import BasketEntry, SingularityContent, decompose_edge
from .errors import FanoError
from .hj import A_sigma, power_selection
from .polygon import FanoPolygon, anticanonical_degree

ALPHA = "α"
BETA = "β"

Matrix = tuple[tuple[Fraction, ...], ...]


# --- small exact matrix helpers ------------------------------------------------

def _identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def _matmul(A, B) -> list[list[Fraction]]:
    n, m, p = len(A), len(B), len(B[0]) if B else 0
    out = [[Fraction(0)] * p for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for k in range(m):
            a = Ai[k]
            if a:
                Bk = B[k]
                row = out[i]
                for j in range(p):
                    if Bk[j]:
                        row[j] += a * Bk[j]
    return out


def _matpow(A, e: int) -> list[list[Fraction]]:
    out = _identity(len(A))
    base = [list(r) for r in A]
    while e:
        if e & 1:
            out = _matmul(out, base)
        base = _matmul(base, base)
        e >>= 1
    return out


def _freeze(A) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in A)


def _q(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _order(A, bound: int) -> int | None:
    """Least n in [1, bound] with A^n = I, else None."""
    I = _identity(len(A))
    cur = [list(r) for r in A]
    for n in range(1, bound + 1):
        if cur == I:
            return n
        cur = _matmul(cur, A)
    return None


# --- local blocks --------------------------------------------------------------

@dataclass(frozen=True)
class LocalBlock:
    """Local monodromy on one R-cone.

    `matrix` acts on (beta, cycles...); the image of alpha is
    alpha + alpha_beta * beta + sum(alpha_cycles[i] * cycle_i).
    `ambiguity_set` lists the alpha cycle vectors of every admissible labeling
    when the block is not determined by (h, w) alone.
    """

    r: int
    a: int
    height: int
    width: int
    power: int
    labels: tuple[str, ...]
    matrix: Matrix
    alpha_beta: Fraction
    alpha_cycles: tuple[int, ...]
    ambiguity_set: tuple[tuple[int, ...], ...] = ()

    @property
    def size(self) -> int:
        return len(self.labels)

    def full(self) -> list[list[Fraction]]:
        """Matrix on (alpha, beta, cycles...)."""
        n = self.size
        out = [[Fraction(0)] * (n + 2) for _ in range(n + 2)]
        out[0][0] = Fraction(1)
        out[1][0] = self.alpha_beta
        for i, c in enumerate(self.alpha_cycles):
            out[i + 2][0] = Fraction(c)
        for i in range(n + 1):
            for j in range(n + 1):
                out[i + 1][j + 1] = self.matrix[i][j]
        return out

    @property
    def m(self) -> Fraction:
        """A(sigma) plus the local beta-coefficient; an integer for a correct power."""
        return A_sigma(self.r, self.a) + self.alpha_beta

    def to_json(self) -> dict:
        return {
            "type": [self.r, self.a],
            "height": self.height,
            "width": self.width,
            "power": self.power,
            "labels": list(self.labels),
            "matrix": [[_q(x) for x in row] for row in self.matrix],
            "alpha_beta": _q(self.alpha_beta),
            "alpha_cycles": list(self.alpha_cycles),
            "ambiguity_set": [list(v) for v in self.ambiguity_set],
        }


def _from_full(full, r, a, h, w, p, labels, ambiguity=()) -> LocalBlock:
    if not 1 <= p < h:
        raise FanoError("INVALID_POWER", f"power must lie in [1, {h - 1}], got {p}")
    M = _matpow(full, p)
    cycles = []
    for i in range(2, len(M)):
        x = M[i][0]
        if x.denominator != 1:
            raise FanoError("NON_INTEGRAL", f"alpha image has non-integral cycle coefficient {x}")
        cycles.append(int(x))
    sub = [row[1:] for row in M[1:]]
    return LocalBlock(r, a, h, w, p, tuple(labels), _freeze(sub), M[1][0], tuple(cycles), tuple(ambiguity))


def _width1_full(r: int) -> list[list[Fraction]]:
    """omega_r on (alpha, beta, c_1..c_{r-1})."""
    n = r + 1
    M = [[Fraction(0)] * n for _ in range(n)]
    M[0][0] = Fraction(1)
    M[1][1] = Fraction(1)
    # alpha -> alpha + (1 - 2/r) beta - (c_2 + ... + c_{r-1})
    M[1][0] = 1 - Fraction(2, r)
    for i in range(2, r):
        M[i + 1][0] = Fraction(-1)
    for i in range(1, r - 1):
        M[i + 2][i + 1] = Fraction(1)
    # c_{r-1} -> beta - sum c_i
    last = r
    M[1][last] = Fraction(1)
    for i in range(1, r):
        M[i + 1][last] = Fraction(-1)
    return M


def block_one_third() -> LocalBlock:
    """1/3(1,1): a1 -> a2, a2 -> beta - a1 - a2, alpha -> alpha + beta/3 - a2."""
    return _from_full(_width1_full(3), 3, 1, 3, 1, 1, ("a1", "a2"))


def block_one_quarter() -> LocalBlock:
    """1/4(1,1): a_i -> -a_i, alpha -> alpha + beta - a1 - a2."""
    full = [[Fraction(x) for x in row] for row in (
        (1, 0, 0, 0),
        (1, 1, 0, 0),
        (-1, 0, -1, 0),
        (-1, 0, 0, -1),
    )]
    return _from_full(full, 4, 1, 2, 2, 1, ("a1", "a2"))


def block_width1(r: int, p: int, a: int = 0) -> LocalBlock:
    """p-th power of omega_r on (beta, c_1..c_{r-1}) for a width-one cone of height r."""
    if r < 3 or r % 2 == 0:
        raise FanoError("INVALID_CONE_TYPE", f"width-one blocks need odd r >= 3, got {r}")
    return _from_full(_width1_full(r), r, a, r, 1, p, tuple(f"c{i}" for i in range(1, r)))


def enumerate_labelings(h: int, w: int) -> list[tuple[int, ...]]:
    """Edge labels of the second 2hw-gon half, read anticlockwise from position 0.

    Position s carries an edge of class (-1 - s) mod w; class 0 is pinned with
    c_w at position w-1 and c_hw last. Inside each class the labels advance by w
    every w steps, and c_{i+1} may never sit directly clockwise of c_i.
    """
    if w < 2 or h < 2:
        raise FanoError("INVALID_CONE_TYPE", f"labelings need h >= 2 and w >= 2, got ({h}, {w})")
    n = h * w
    out = []
    for rot in product(range(h), repeat=w - 1):
        lab = [0] * n
        for s in range(n):
            cls = (-1 - s) % w
            q = s // w
            if cls == 0:
                lab[s] = w * (q + 1)
            else:
                lab[s] = cls + w * ((q + rot[cls - 1]) % h)
        if all(lab[s - 1] % n != (lab[s] % n) + 1 and not (lab[s] == n and lab[s - 1] == 1) for s in range(n)):
            out.append(tuple(lab))
    return sorted(out)


def _express(chain: Sequence[int], h: int, w: int) -> tuple[Fraction, list[Fraction]]:
    """Write a closed chain in c_1..c_hw as y*beta + sum x_j e_j, j <= (h-1)w."""
    n, m = h * w, (h - 1) * w
    # columns: beta, e_1..e_m; rows: c_1..c_n
    rows = []
    for i in range(1, n + 1):
        row = [Fraction(1)]
        for j in range(1, m + 1):
            row.append(Fraction(int((i - j) % n < w)))
        row.append(Fraction(chain[i - 1]))
        rows.append(row)
    ncols = m + 1
    rank = 0
    pivots = []
    for col in range(ncols):
        piv = next((k for k in range(rank, n) if rows[k][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        for k in range(n):
            if k != rank and rows[k][col]:
                f = rows[k][col]
                rows[k] = [x - f * y for x, y in zip(rows[k], rows[rank])]
        pivots.append(col)
        rank += 1
    if any(rows[k][-1] for k in range(rank, n)):
        raise FanoError("INCONSISTENT", "chain is not a combination of beta and the e-cycles")
    sol = [Fraction(0)] * ncols
    for k, col in enumerate(pivots):
        sol[col] = rows[k][-1]
    return sol[0], sol[1:]


def _general_full(h: int, w: int, labeling: Sequence[int]) -> list[list[Fraction]]:
    n, m = h * w, (h - 1) * w
    size = m + 2
    M = [[Fraction(0)] * size for _ in range(size)]
    M[0][0] = Fraction(1)
    M[1][1] = Fraction(1)

    def e_chain(j: int) -> list[int]:
        v = [0] * n
        for k in range(w):
            v[(j - 1 + k) % n] = 1
        return v

    for j in range(1, m + 1):
        y, x = _express(e_chain(j + w), h, w)
        M[1][j + 1] = y
        for i, c in enumerate(x):
            M[i + 2][j + 1] = c
    # alpha -> alpha + (1 - 2/h) beta + c_w + sum c_[i] - sum_{k=1}^{h-1} e_{kw}
    chain = [0] * n
    chain[w - 1] += 1
    for s in range(w - 1):
        chain[labeling[s] - 1] += 1
    y, x = _express(chain, h, w)
    M[1][0] = 1 - Fraction(2, h) + y
    for i, c in enumerate(x):
        M[i + 2][0] = c
    for k in range(1, h):
        M[k * w + 1][0] -= 1
    return M


def block_general(h: int, w: int, labeling: Sequence[int] | None = None, p: int = 1, r: int = 0, a: int = 0) -> LocalBlock:
    """p-th power of the rotation by 1/h on the genus (h-1)w/2 model with w >= 2.

    Uses the first admissible labeling when none is given; the alpha cycle
    vectors of all labelings are kept in `ambiguity_set`.
    """
    labelings = enumerate_labelings(h, w)
    if not labelings:
        raise FanoError("UNSUPPORTED_CONE", f"no admissible labeling for h={h}, w={w}")
    chosen = tuple(labeling) if labeling is not None else labelings[0]
    if chosen not in labelings:
        raise FanoError("INVALID_LABELING", f"{list(chosen)} is not admissible for h={h}, w={w}")
    labels = tuple(f"e{j}" for j in range(1, (h - 1) * w + 1))
    alternatives = []
    for lab in labelings:
        alternatives.append(_from_full(_general_full(h, w, lab), r, a, h, w, p, labels).alpha_cycles)
    block = _from_full(_general_full(h, w, chosen), r, a, h, w, p, labels, alternatives if len(labelings) > 1 else ())
    return block


def block_for(entry: BasketEntry) -> LocalBlock:
    """Local block of a basket entry with the power fixed by integrality."""
    r, a, h, w = entry.r, entry.a, entry.height, entry.width
    p = power_selection(r, a, h)
    if (r, a, h, w) == (3, 1, 3, 1):
        return block_one_third()
    if w == 1:
        return block_width1(r, p, a)
    if w >= 2 and h >= 3:
        return block_general(h, w, None, p, r, a)
    raise FanoError("UNSUPPORTED_CONE", f"no local block for {entry}")


# --- global assembly -----------------------------------------------------------

@dataclass(frozen=True)
class MonodromyMatrix:
    basis: tuple[str, ...]
    entries: Matrix

    @property
    def beta_coefficient(self) -> Fraction:
        """beta-coefficient of the image of alpha."""
        return self.entries[1][0]

    @property
    def size(self) -> int:
        return len(self.basis)

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.entries for x in row)

    def image(self, label: str) -> dict[str, Fraction]:
        j = self.basis.index(label)
        return {self.basis[i]: self.entries[i][j] for i in range(self.size) if self.entries[i][j]}

    def to_json(self) -> dict:
        return {"basis": list(self.basis), "matrix": [[_q(x) for x in row] for row in self.entries]}

    @staticmethod
    def from_json(obj: dict) -> "MonodromyMatrix":
        try:
            basis = tuple(str(b) for b in obj["basis"])
            entries = _freeze([[Fraction(str(x)) for x in row] for row in obj["matrix"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise FanoError("BAD_INPUT", f"expected {{'basis': [...], 'matrix': [[...]]}}: {exc}") from exc
        if len(entries) != len(basis) or any(len(row) != len(basis) for row in entries):
            raise FanoError("BAD_INPUT", "matrix must be square and match the basis length")
        return MonodromyMatrix(basis, entries)


def local_blocks(P: FanoPolygon) -> list[tuple[int, LocalBlock]]:
    """(edge index, block) for every R-cone, sorted by (h, w, r, a, edge index)."""
    out = []
    for i, E in enumerate(P.edges):
        rc = decompose_edge(E).r_cone
        if rc is None:
            continue
        entry = BasketEntry(rc.r, rc.a, E.height, rc.width)
        out.append((i, block_for(entry)))
    out.sort(key=lambda t: (t[1].height, t[1].width, t[1].r, t[1].a, t[0]))
    return out


def assemble_monodromy(P: FanoPolygon) -> MonodromyMatrix:
    """alpha -> alpha - K^2 beta composed with every local R-cone block."""
    blocks = [b for _, b in local_blocks(P)]
    n = 2 + sum(b.size for b in blocks)
    M = _identity(n)
    B = -anticanonical_degree(P) + sum((b.alpha_beta for b in blocks), Fraction(0))
    if B.denominator != 1:
        raise FanoError("NON_INTEGRAL", f"beta-coefficient of the alpha image is {B}")
    M[1][0] = B
    basis = [ALPHA, BETA]
    off = 2
    for j, b in enumerate(blocks, start=1):
        basis.extend(f"{lab}^{j}" for lab in b.labels)
        for i, c in enumerate(b.alpha_cycles):
            M[off + i][0] = Fraction(c)
        for i in range(b.size):
            M[1][off + i] = b.matrix[0][i + 1]
            for k in range(b.size):
                M[off + k][off + i] = b.matrix[k + 1][i + 1]
        off += b.size
    out = MonodromyMatrix(tuple(basis), _freeze(M))
    if not out.is_integral():
        raise FanoError("NON_INTEGRAL", "assembled monodromy has non-integral entries")
    return out


# --- recovery ------------------------------------------------------------------

def _candidate_types(h: int, w: int) -> list[tuple[int, int]]:
    r = h * w
    seen = set()
    out = []
    for a in range(1, r):
        if gcd(a, r) != 1 or gcd(r, a + 1) != w:
            continue
        t = min(a, pow(a, -1, r))
        if t not in seen:
            seen.add(t)
            out.append((r, t))
    return out


def _components(M: Matrix, n: int) -> list[list[int]]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(2, n):
        for j in range(2, n):
            if M[i][j]:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(2, n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def recover_content(M: MonodromyMatrix) -> SingularityContent:
    """Singularity content read back from an assembled monodromy matrix.

    Each cycle block fixes its order h and size (h-1)w; the cone type is the
    candidate of that height and width whose block reproduces the matrix.
    """
    E, n = M.entries, M.size
    if n < 2 or E[0][0] != 1 or any(E[0][j] for j in range(1, n)):
        raise FanoError("UNRECOGNIZED_BLOCK", "alpha must only appear in its own image")
    if any(E[i][1] != (1 if i == 1 else 0) for i in range(n)):
        raise FanoError("UNRECOGNIZED_BLOCK", "beta must be fixed")
    basket = []
    m_total = Fraction(0)
    for comp in _components(E, n):
        size = len(comp)
        sub = [[E[1][1]] + [E[1][j] for j in comp]] + [[E[i][1]] + [E[i][j] for j in comp] for i in comp]
        alpha_cycles = tuple(E[i][0] for i in comp)
        h = _order(sub, 4 * size + 4)
        if h is None or h < 2 or size % (h - 1):
            raise FanoError("UNRECOGNIZED_BLOCK", f"block on {[M.basis[i] for i in comp]} has no finite order")
        w = size // (h - 1)
        matches = []
        for r, a in _candidate_types(h, w):
            try:
                blk = block_for(BasketEntry(r, a, h, w))
            except FanoError:
                continue
            if _freeze(sub) == blk.matrix and alpha_cycles == tuple(Fraction(c) for c in blk.alpha_cycles):
                matches.append(blk)
        if not matches:
            raise FanoError("UNRECOGNIZED_BLOCK", f"no cone of height {h} and width {w} gives this block")
        # several types may share a power; the first (smallest a) is reported
        blk = matches[0]
        basket.append(BasketEntry(blk.r, blk.a, h, w))
        m_total += blk.m
    k = 12 + M.beta_coefficient - m_total
    if k.denominator != 1:
        raise FanoError("UNRECOGNIZED_BLOCK", f"recovered T-cone count {k} is not an integer")
    return SingularityContent(int(k), tuple(sorted(basket)))


def matching_types(M: MonodromyMatrix) -> list[list[tuple[int, int]]]:
    """Per cycle block, every cone type whose block reproduces it."""
    E, n = M.entries, M.size
    out = []
    for comp in _components(E, n):
        size = len(comp)
        sub = [[E[1][1]] + [E[1][j] for j in comp]] + [[E[i][1]] + [E[i][j] for j in comp] for i in comp]
        alpha_cycles = tuple(E[i][0] for i in comp)
        h = _order(sub, 4 * size + 4)
        if h is None or h < 2 or size % (h - 1):
            out.append([])
            continue
        w = size // (h - 1)
        found = []
        for r, a in _candidate_types(h, w):
            try:
                blk = block_for(BasketEntry(r, a, h, w))
            except FanoError:
                continue
            if _freeze(sub) == blk.matrix and alpha_cycles == tuple(Fraction(c) for c in blk.alpha_cycles):
                found.append((r, a))
        out.append(found)
    return out


# --- eigenvalues ---------------------------------------------------------------

def characteristic_polynomial(A) -> list[Fraction]:
    """Coefficients of det(x I - A), constant term first (Faddeev-LeVerrier)."""
    n = len(A)
    A = [[Fraction(x) for x in row] for row in A]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = [[Fraction(0)] * n for _ in range(n)]
    c = Fraction(1)
    for k in range(1, n + 1):
        Mk = _matmul(A, Mk)
        for i in range(n):
            Mk[i][i] += c
        AM = _matmul(A, Mk)
        c = -sum(AM[i][i] for i in range(n)) / k
        coeffs[n - k] = c
    return coeffs


def _polydivmod(num: list, den: list) -> tuple[list, list]:
    num = list(num)
    if len(num) < len(den):
        return [Fraction(0)], num
    q = [Fraction(0)] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(q) - 1, -1, -1):
        coef = num[i + len(den) - 1] / lead
        q[i] = coef
        if coef:
            for j, d in enumerate(den):
                num[i + j] -= coef * d
    rem = num[: len(den) - 1]
    while len(rem) > 1 and rem[-1] == 0:
        rem.pop()
    return q, rem


def cyclotomic(n: int) -> list[Fraction]:
    """Phi_n, constant term first."""
    poly = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _polydivmod(poly, cyclotomic(d))
            assert not any(rem)
    return poly


def eigenvalue_multiset(M: MonodromyMatrix) -> dict:
    """Roots of unity by order with multiplicity; any other factor is reported as residual."""
    poly = characteristic_polynomial(M.entries)
    n = len(poly) - 1
    counts: dict[int, int] = {}
    for order in range(1, 4 * n * n + 2):
        phi = cyclotomic(order)
        if len(phi) - 1 > len(poly) - 1:
            continue
        while len(poly) > 1:
            q, rem = _polydivmod(poly, phi)
            if any(rem):
                break
            counts[order] = counts.get(order, 0) + 1
            poly = q
        if len(poly) == 1:
            break
    return {
        "roots_of_unity": [{"order": k, "multiplicity": v, "degree": len(cyclotomic(k)) - 1} for k, v in sorted(counts.items())],
        "residual": [_q(c) for c in poly] if len(poly) > 1 else [],
        "characteristic_polynomial": [_q(c) for c in characteristic_polynomial(M.entries)],
    }
