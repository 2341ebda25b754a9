"""Hirzebruch-Jung data of cyclic quotient cones and the degree bookkeeping
built on it: vertex contributions, A(sigma), local powers and m(sigma)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable

from .cones import BasketEntry, SingularityContent
from .errors import FanoError


def hj_expand(r: int, a: int) -> list[int]:
    """Digits b_i >= 2 with r/a = b_1 - 1/(b_2 - 1/(... - 1/b_k))."""
    if not (0 < a < r) or gcd(r, a) != 1:
        raise FanoError("INVALID_CONE_TYPE", f"need 0 < a < r coprime, got ({r}, {a})")
    out = []
    num, den = r, a
    while den:
        b = -(-num // den)  # ceiling
        out.append(b)
        num, den = den, b * den - num
    return out


def hj_evaluate(b: Iterable[int]) -> Fraction:
    b = list(b)
    val = Fraction(b[-1])
    for x in reversed(b[:-1]):
        val = x - 1 / val
    return val


@dataclass(frozen=True)
class HJData:
    r: int
    a: int
    b: tuple[int, ...]
    s: tuple[int, ...]  # s_0 .. s_{k+1}
    t: tuple[int, ...]  # t_0 .. t_{k+1}

    @property
    def k(self) -> int:
        return len(self.b)

    @property
    def d(self) -> tuple[Fraction, ...]:
        """d_1 .. d_k."""
        return tuple(Fraction(self.s[i] + self.t[i], self.r) - 1 for i in range(1, self.k + 1))


@lru_cache(maxsize=None)
def hj_data(r: int, a: int) -> HJData:
    b = hj_expand(r, a)
    return st_sequences(r, a, b)


def st_sequences(r: int, a: int, b: list[int]) -> HJData:
    k = len(b)
    s = [0, 1]
    for i in range(1, k + 1):
        s.append(b[i - 1] * s[i] - s[i - 1])
    t = [0] * (k + 2)
    t[k] = 1
    for i in range(k, 0, -1):
        t[i - 1] = b[i - 1] * t[i] - t[i + 1]
    if s[k + 1] != r or t[0] != r:
        raise FanoError("INCONSISTENT", f"s/t recursion for ({r},{a}) does not close up")
    return HJData(r, a, tuple(b), tuple(s), tuple(t))


def multiplicities(m0: int, mk1: int, hj: HJData) -> list[int]:
    """Multiplicities m_0 .. m_{k+1} along the resolution chain of a vertex cone."""
    out = []
    for i in range(hj.k + 2):
        q, rem = divmod(hj.t[i] * m0 + hj.s[i] * mk1, hj.r)
        if rem:
            raise FanoError("INCONSISTENT", f"multiplicity m_{i} is not an integer")
        out.append(q)
    return out


def smooth_multiplicities(m0: int, mk1: int) -> list[int]:
    return [m0, mk1]


def vertex_contribution(h_left: int, h_right: int, r: int) -> Fraction:
    return Fraction(r, h_left * h_right)


def A_sigma(r: int, a: int) -> Fraction:
    """A(sigma) for a cone of type 1/r(1,a); 1 for primitive T-cones."""
    if r == 1:
        return Fraction(1)
    hj = hj_data(r, a)
    d, b = hj.d, hj.b
    quad = sum(d[i] ** 2 * b[i] for i in range(hj.k))
    cross = sum(d[i] * d[i + 1] for i in range(hj.k - 1))
    return hj.k + 1 - quad + 2 * cross


def degree_via_content(content: SingularityContent) -> Fraction:
    return 12 - content.k - sum((A_sigma(b.r, b.a) for b in content.basket), Fraction(0))


def power_selection(r: int, a: int, h: int) -> int:
    """Least p in [1, h-1] making A(sigma) + 1 - 2p/h integral."""
    A = A_sigma(r, a)
    for p in range(1, h):
        if (A + 1 - Fraction(2 * p, h)).denominator == 1:
            return p
    raise FanoError("NO_POWER", f"no local power fits 1/{r}(1,{a}) at height {h}")


def m_sigma(r: int, a: int, h: int | None = None) -> int:
    """Integer correction A(sigma) + 1 - 2p/h; h defaults to r (width-one cones)."""
    h = r if h is None else h
    p = power_selection(r, a, h)
    val = A_sigma(r, a) + 1 - Fraction(2 * p, h)
    assert val.denominator == 1
    return int(val)


def basket_m(entry: BasketEntry) -> int:
    return m_sigma(entry.r, entry.a, entry.height)
