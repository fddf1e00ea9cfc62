"""Rational polytopes: facets, the Delzant condition and interior lattice points."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations, product
from typing import Iterable, Sequence

from .symcalc import linalg
from .symcalc.forms import PolyForm, PolyMap, pullback
from .symcalc.poly import PolyFn

Point = tuple[Fraction, ...]


class PolytopeError(ValueError):
    pass


class DegeneratePolytopeError(PolytopeError):
    """The vertices do not span a full-dimensional polytope."""


class NotDelzantError(PolytopeError):
    def __init__(self, violations: Sequence[Point]):
        self.violations = list(violations)
        pts = ", ".join(_fmt_point(v) for v in self.violations)
        super().__init__(f"polytope is not Delzant; violating vertices: {pts}")


@dataclass(frozen=True)
class Facet:
    """Half-space <normal, x> >= offset with a primitive integer inward normal."""

    normal: tuple[int, ...]
    offset: Fraction

    def value(self, x: Sequence) -> Fraction:
        return sum((a * b for a, b in zip(self.normal, x)), Fraction(0))

    def contains(self, x: Sequence) -> bool:
        return self.value(x) >= self.offset

    def on_boundary(self, x: Sequence) -> bool:
        return self.value(x) == self.offset


@dataclass(frozen=True)
class LatticePoint:
    coordinates: tuple[int, ...]
    interior: bool = True


def _fmt_point(p: Sequence) -> str:
    return "(" + ", ".join(str(c) for c in p) + ")"


def _primitive(vec: Sequence[Fraction]) -> tuple[int, ...]:
    vec = [Fraction(v) for v in vec]
    lcm = reduce(lambda acc, v: acc * v.denominator // math.gcd(acc, v.denominator), vec, 1)
    ints = [int(v * lcm) for v in vec]
    g = reduce(math.gcd, (abs(i) for i in ints), 0)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(i // g for i in ints)


def _as_point(p: Iterable) -> Point:
    return tuple(Fraction(c) for c in p)


def _affine_rank(points: Sequence[Point]) -> int:
    if len(points) < 2:
        return 0
    base = points[0]
    return linalg.rank([[a - b for a, b in zip(p, base)] for p in points[1:]])


def _hull_facets(points: Sequence[Point], n: int) -> list[Facet]:
    """Supporting hyperplanes through n affinely independent points."""
    facets: dict[tuple[tuple[int, ...], Fraction], Facet] = {}
    for subset in combinations(points, n):
        base = subset[0]
        diffs = [[a - b for a, b in zip(p, base)] for p in subset[1:]]
        if diffs:
            if linalg.rank(diffs) != n - 1:
                continue
            null = linalg.nullspace(diffs)
        else:
            null = linalg.nullspace([], ncols=n)
        if len(null) != 1:
            continue
        normal = _primitive([c.real_value() for c in null[0]])
        level = sum((a * b for a, b in zip(normal, base)), Fraction(0))
        values = [sum((a * b for a, b in zip(normal, p)), Fraction(0)) for p in points]
        if all(v >= level for v in values):
            f = Facet(normal, level)
        elif all(v <= level for v in values):
            f = Facet(tuple(-c for c in normal), -level)
        else:
            continue
        facets[(f.normal, f.offset)] = f
    return sorted(facets.values(), key=lambda f: (f.normal, f.offset))


class DelzantPolytope:
    """A full-dimensional rational polytope given by its vertices.

    Facets are computed for dimensions 1 to 3; for higher dimensions they must
    be supplied as (normal, offset) pairs meaning <normal, x> >= offset.
    """

    def __init__(self, vertices: Iterable[Iterable], facets: Iterable | None = None):
        pts = sorted(set(_as_point(v) for v in vertices))
        if not pts:
            raise DegeneratePolytopeError("no vertices given")
        n = len(pts[0])
        if n == 0 or any(len(p) != n for p in pts):
            raise DegeneratePolytopeError("vertices must share a positive dimension")
        if _affine_rank(pts) != n:
            raise DegeneratePolytopeError(f"vertices span less than {n} dimensions")
        self.dimension = n
        if facets is None:
            if n > 3:
                raise PolytopeError("facets must be supplied explicitly in dimension >= 4")
            self.facets = tuple(_hull_facets(pts, n))
        else:
            fs = []
            for item in facets:
                if isinstance(item, Facet):
                    fs.append(item)
                    continue
                normal, offset = item
                prim = _primitive(normal)
                scale = Fraction(prim[0]) / Fraction(normal[0]) if normal[0] else None
                if scale is None:
                    idx = next(i for i, c in enumerate(normal) if c)
                    scale = Fraction(prim[idx]) / Fraction(normal[idx])
                fs.append(Facet(prim, Fraction(offset) * scale))
            self.facets = tuple(sorted(set(fs), key=lambda f: (f.normal, f.offset)))
            for p in pts:
                if not all(f.contains(p) for f in self.facets):
                    raise PolytopeError(f"vertex {_fmt_point(p)} violates the supplied facets")
        # keep only the extreme points
        self.vertices: tuple[Point, ...] = tuple(
            p for p in pts if self._incidence_rank(p) == n
        )

    def _incident(self, p: Point) -> list[Facet]:
        return [f for f in self.facets if f.on_boundary(p)]

    def _incidence_rank(self, p: Point) -> int:
        inc = self._incident(p)
        return linalg.rank([list(f.normal) for f in inc]) if inc else 0

    def __repr__(self):
        return f"DelzantPolytope({[_fmt_point(v) for v in self.vertices]})"

    def __eq__(self, other):
        if not isinstance(other, DelzantPolytope):
            return NotImplemented
        return self.vertices == other.vertices and self.facets == other.facets

    def __hash__(self):
        return hash((self.vertices, self.facets))

    def contains(self, x: Sequence, strict: bool = False) -> bool:
        if strict:
            return all(f.value(x) > f.offset for f in self.facets)
        return all(f.contains(x) for f in self.facets)

    def bounding_box(self) -> tuple[Point, Point]:
        lo = tuple(min(v[i] for v in self.vertices) for i in range(self.dimension))
        hi = tuple(max(v[i] for v in self.vertices) for i in range(self.dimension))
        return lo, hi

    def edge_directions(self, vertex: Sequence) -> list[tuple[int, ...]] | None:
        """Primitive integer edge directions at a simple vertex; None if not simple."""
        v = _as_point(vertex)
        inc = self._incident(v)
        n = self.dimension
        if len(inc) != n:
            return None
        dirs = []
        for skip in range(n):
            others = [list(f.normal) for i, f in enumerate(inc) if i != skip]
            null = linalg.nullspace(others, ncols=n) if others else linalg.nullspace([], ncols=n)
            if len(null) != 1:
                return None
            d = _primitive([c.real_value() for c in null[0]])
            if sum(a * b for a, b in zip(inc[skip].normal, d)) < 0:
                d = tuple(-c for c in d)
            dirs.append(d)
        return dirs

    def transform(self, matrix: Sequence[Sequence[int]], shift: Sequence[int] | None = None) -> DelzantPolytope:
        """Image under x -> U x + c; U must be unimodular."""
        n = self.dimension
        u = [[Fraction(x) for x in row] for row in matrix]
        d = linalg.det(u)
        if d not in (1, -1):
            raise ValueError("transform matrix must be unimodular")
        c = [Fraction(x) for x in (shift or [0] * n)]
        verts = [
            tuple(sum((u[i][j] * v[j] for j in range(n)), Fraction(0)) + c[i] for i in range(n))
            for v in self.vertices
        ]
        # <nu, x> >= o  becomes  <U^{-T} nu, y> >= o + <U^{-T} nu, c>
        uinv_t = linalg.transpose(linalg.inverse(u))
        facets = []
        for f in self.facets:
            nu = [sum((uinv_t[i][j].real_value() * f.normal[j] for j in range(n)), Fraction(0)) for i in range(n)]
            facets.append((nu, f.offset + sum((a * b for a, b in zip(nu, c)), Fraction(0))))
        return DelzantPolytope(verts, facets)

    def product(self, other: DelzantPolytope) -> DelzantPolytope:
        n, m = self.dimension, other.dimension
        verts = [a + b for a in self.vertices for b in other.vertices]
        facets = [(f.normal + (0,) * m, f.offset) for f in self.facets]
        facets += [((0,) * n + g.normal, g.offset) for g in other.facets]
        return DelzantPolytope(verts, facets)

    def polygon_order(self) -> list[Point]:
        """Vertices of a polygon in boundary order (dimension 2 only)."""
        if self.dimension != 2:
            raise PolytopeError("boundary order is defined for polygons only")
        remaining = list(self.vertices)
        order = [remaining.pop(0)]
        while remaining:
            cur = order[-1]
            shared = [
                w for w in remaining
                if any(f.on_boundary(cur) and f.on_boundary(w) for f in self.facets)
            ]
            nxt = min(shared) if len(order) == 1 else shared[0]
            order.append(nxt)
            remaining.remove(nxt)
        return order


@dataclass(frozen=True)
class DelzantReport:
    ok: bool
    violations: tuple[Point, ...]


def validate_delzant(P: DelzantPolytope) -> DelzantReport:
    """Check that at every vertex the primitive edge directions form a Z^n basis."""
    bad = []
    for v in P.vertices:
        dirs = P.edge_directions(v)
        if dirs is None or linalg.det(dirs) not in (1, -1):
            bad.append(v)
    return DelzantReport(not bad, tuple(bad))


def _strict_scan(P: DelzantPolytope, base: Point) -> list[tuple[int, ...]]:
    """Integer m with base + m strictly inside P, in lexicographic order."""
    n = P.dimension
    # <nu, m> > o - <nu, base>; the left side is an integer
    bounds = []
    for f in P.facets:
        rhs = f.offset - f.value(base)
        bounds.append((f.normal, math.floor(rhs) + 1))
    lo, hi = P.bounding_box()
    ranges = [
        range(math.ceil(lo[i] - base[i]), math.floor(hi[i] - base[i]) + 1) for i in range(n - 1)
    ]
    last_lo = math.ceil(lo[n - 1] - base[n - 1])
    last_hi = math.floor(hi[n - 1] - base[n - 1])
    out = []
    for head in product(*ranges):
        a, b = last_lo, last_hi
        feasible = True
        for normal, need in bounds:
            partial = sum(x * y for x, y in zip(normal[:-1], head))
            coef = normal[-1]
            rest = need - partial
            if coef > 0:
                a = max(a, -((-rest) // coef))
            elif coef < 0:
                b = min(b, (-rest) // (-coef))
            elif rest > 0:
                feasible = False
                break
        if feasible:
            out.extend(head + (y,) for y in range(a, b + 1))
    return out


def interior_lattice_points(P: DelzantPolytope) -> list[LatticePoint]:
    zero = (Fraction(0),) * P.dimension
    return [LatticePoint(m, True) for m in _strict_scan(P, zero)]


def discrete_cotangent_orbit(P: DelzantPolytope, basepoint: Sequence) -> list[Point]:
    """(basepoint + Z^n) intersected with the interior of P, lexicographically sorted."""
    base = _as_point(basepoint)
    if len(base) != P.dimension:
        raise ValueError("basepoint dimension does not match the polytope")
    return [tuple(b + m for b, m in zip(base, ms)) for ms in _strict_scan(P, base)]


@dataclass(frozen=True)
class DiscreteAction:
    """Z^n acting on R^n by translation, lifted to the cotangent bundle."""

    basepoint: Point

    def orbit_in(self, P: DelzantPolytope) -> list[Point]:
        return discrete_cotangent_orbit(P, self.basepoint)

    def coordinates(self) -> tuple[str, ...]:
        n = len(self.basepoint)
        return tuple(f"q{i}" for i in range(1, n + 1)) + tuple(f"p{i}" for i in range(1, n + 1))

    def lift(self, m: Sequence[int]) -> PolyMap:
        """(q, p) -> (q + m, p)."""
        v = self.coordinates()
        n = len(self.basepoint)
        if len(m) != n:
            raise ValueError("translation vector has the wrong dimension")
        gens = PolyFn.gens(v)
        comps = tuple(gens[i] + m[i] for i in range(n)) + tuple(gens[n:])
        return PolyMap(v, v, comps)

    def liouville_form(self) -> PolyForm:
        v = self.coordinates()
        n = len(self.basepoint)
        gens = PolyFn.gens(v)
        return PolyForm(v, 1, {(i,): gens[n + i] for i in range(n)})

    def preserves_liouville(self, m: Sequence[int]) -> bool:
        lam = self.liouville_form()
        return pullback(self.lift(m), lam) == lam
