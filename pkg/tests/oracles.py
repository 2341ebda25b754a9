"""Independent reference computations used only by the tests."""
from fractions import Fraction
from itertools import product


def shoelace(vertices) -> Fraction:
    n = len(vertices)
    twice = sum(vertices[i][0] * vertices[(i + 1) % n][1] - vertices[(i + 1) % n][0] * vertices[i][1] for i in range(n))
    return Fraction(abs(twice), 2)


def dual_volume(P) -> Fraction:
    """Normalized area of {u : <u, v> >= -1 for all v in P}, built from the edge inequalities."""
    verts = []
    for E in P.edges:
        # the edge {<n, x> = -h} dualizes to the vertex n / h
        verts.append((Fraction(E.normal[0], E.height), Fraction(E.normal[1], E.height)))
    return 2 * shoelace(verts)


def brute_points(vertices):
    """Lattice points of the hull by half-plane tests over the bounding box."""
    n = len(vertices)
    xs = [v[0] for v in vertices]
    ys = [v[1] for v in vertices]
    inside, boundary = [], []
    for x, y in product(range(min(xs), max(xs) + 1), range(min(ys), max(ys) + 1)):
        sides = []
        for i in range(n):
            (ax, ay), (bx, by) = vertices[i], vertices[(i + 1) % n]
            sides.append((bx - ax) * (y - ay) - (by - ay) * (x - ax))
        if all(s > 0 for s in sides):
            inside.append((x, y))
        elif all(s >= 0 for s in sides):
            boundary.append((x, y))
    return inside, boundary


def continued_fraction_value(b) -> Fraction:
    val = Fraction(b[-1])
    for x in reversed(b[:-1]):
        val = x - 1 / val
    return val


def multinomial_period(m: int) -> int:
    from math import factorial

    return factorial(3 * m) // factorial(m) ** 3
