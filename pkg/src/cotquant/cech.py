"""Čech cohomology of the sheaf of flat sections on a prequantized cylinder band.

The band ``I x S^1`` is covered by ``k >= 3`` angular rectangles ``U_0, ..., U_{k-1}``.
Consecutive rectangles overlap; the last overlap ``(k-1, 0)`` is where the
angle coordinate jumps by ``2 pi``. A flat section on ``U_i`` is
``a_i(t) exp(i t theta)``, so restricting from ``U_0`` to the jump overlap
multiplies its amplitude by the unit ``u = exp(-2 pi i t)``. That unit is kept
as a formal variable; ``u = 1`` exactly when ``t`` is an integer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Sequence

from .symcalc import linalg
from .symcalc.poly import PolyFn
from .symcalc.scalar import I, ONE, QI, ZERO

COEFF_VARS = ("t", "u")
DEFAULT_DEGREE = 8
# stand-in for exp(-2 pi i t) at a rational t with 4t not integral: a point of
# the unit circle other than 1 in Q(i)
GENERIC_UNIT = QI(Fraction(3, 5), Fraction(4, 5))


@dataclass(frozen=True)
class Band:
    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if not self.a < self.b:
            raise ValueError(f"band needs a < b, got ({self.a}, {self.b})")

    def integers(self) -> list[int]:
        """Integers strictly inside (a, b)."""
        lo = math.floor(self.a) + 1
        hi = math.ceil(self.b) - 1
        return list(range(lo, hi + 1))

    def __contains__(self, t) -> bool:
        return self.a < t < self.b


@dataclass(frozen=True)
class CechBandComplex:
    band: Band
    k: int = 3

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 3:
            raise ValueError(f"cover size must be an integer >= 3, got {self.k!r}")

    @property
    def intersections(self) -> list[tuple[int, int]]:
        return [(i, i + 1) for i in range(self.k - 1)] + [(self.k - 1, 0)]

    @property
    def jump_index(self) -> int:
        return self.k - 1

    @property
    def triple_intersections(self) -> list[tuple[int, int, int]]:
        # thin angular rectangles meet only pairwise
        return []


@dataclass(frozen=True)
class Cochain:
    degree: int
    coefficients: tuple[PolyFn, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(self.coefficients))
        for c in self.coefficients:
            if c.variables != COEFF_VARS:
                raise ValueError(f"cochain coefficients must be polynomials in {COEFF_VARS}")

    @classmethod
    def from_amplitudes(cls, degree: int, amplitudes: Sequence) -> Cochain:
        coeffs = []
        for a in amplitudes:
            if isinstance(a, PolyFn):
                coeffs.append(a.embed(COEFF_VARS))
            else:
                coeffs.append(PolyFn.const(COEFF_VARS, a))
        return cls(degree, tuple(coeffs))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coefficients)


def coboundary(cx: CechBandComplex, alpha: Cochain) -> Cochain:
    """delta alpha; on the jump overlap the wrapped amplitude carries the unit u."""
    if alpha.degree == 1:
        return Cochain(2, ())
    if alpha.degree != 0:
        raise ValueError(f"no cochains of degree {alpha.degree}")
    if len(alpha.coefficients) != cx.k:
        raise ValueError(f"need {cx.k} amplitudes, got {len(alpha.coefficients)}")
    a = alpha.coefficients
    u = PolyFn.var(COEFF_VARS, "u")
    out = []
    for idx, (i, j) in enumerate(cx.intersections):
        if idx == cx.jump_index:
            out.append(u * a[j] - a[i])
        else:
            out.append(a[j] - a[i])
    return Cochain(1, tuple(out))


def coboundary_matrix(cx: CechBandComplex, u) -> list[list]:
    """Matrix of delta (rows: overlaps, columns: cover sets) at a value of u.

    ``u`` may be a scalar or a polynomial.
    """
    zero = u * 0
    rows = []
    for idx, (i, j) in enumerate(cx.intersections):
        row = [zero] * cx.k
        row[i] = row[i] - 1
        row[j] = row[j] + (u if idx == cx.jump_index else 1)
        rows.append(row)
    return rows


def coboundary_determinant(cx: CechBandComplex) -> PolyFn:
    """det of the coboundary matrix as a polynomial in u, by interpolation at k+1 nodes."""
    return _determinant(cx.k)


@lru_cache(maxsize=None)
def _determinant(k: int) -> PolyFn:
    cx = CechBandComplex(Band(0, 1), k)
    nodes = list(range(k + 1))
    values = [linalg.det(coboundary_matrix(cx, QI(x))) for x in nodes]
    uvar = ("u",)
    u = PolyFn.var(uvar, "u")
    result = PolyFn.zero(uvar)
    for i, xi in enumerate(nodes):
        basis = PolyFn.const(uvar, values[i])
        for j, xj in enumerate(nodes):
            if j != i:
                basis = basis * (u - xj) / (xi - xj)
        result = result + basis
    return result


def _rational_roots(p: PolyFn) -> list[Fraction]:
    """Rational roots of a univariate polynomial with rational coefficients."""
    coeffs = {e[0]: QI.coerce(c).real_value() for e, c in p.terms.items()}
    if not coeffs:
        raise ValueError("zero polynomial has every root")
    low = min(coeffs)
    deg = max(coeffs)
    lcm = 1
    for c in coeffs.values():
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = {e - low: int(c * lcm) for e, c in coeffs.items()}
    roots = {Fraction(0)} if low else set()
    lead, const = ints[deg - low], ints.get(0, 0)
    if not const:
        return sorted(roots)

    def divisors(n: int) -> list[int]:
        n = abs(n)
        return [d for d in range(1, n + 1) if n % d == 0]

    for pnum in divisors(const):
        for q in divisors(lead):
            for cand in (Fraction(pnum, q), Fraction(-pnum, q)):
                if sum(Fraction(c) * cand**e for e, c in ints.items()) == 0:
                    roots.add(cand)
    return sorted(roots)


def unit_value(t: Fraction) -> QI | None:
    """exp(-2 pi i t) when it lies in Q(i) (4t integral), else None."""
    t = Fraction(t)
    if (4 * t).denominator != 1:
        return None
    return [ONE, -I, -ONE, I][int(4 * t) % 4]


@dataclass(frozen=True)
class CohomologyResult:
    h0: int
    h1: int
    bs_leaves: tuple[int, ...]


def cohomology_dimensions(cx: CechBandComplex) -> CohomologyResult:
    """Dimensions of H^0 and H^1 together with the Bohr-Sommerfeld integers.

    H^0 is the kernel of delta over functions of t; it vanishes because the
    determinant is a nonzero polynomial in u. H^1 collects, at every t where
    the determinant vanishes, the corank of delta there.
    """
    det = coboundary_determinant(cx)
    if det.is_zero():
        raise ArithmeticError("coboundary is singular for every u")
    h0 = 0
    roots = _rational_roots(det)
    # |u| = 1, so only roots of modulus one matter; u = 1 means t is an integer
    unit_roots = [r for r in roots if abs(r) == 1]
    if any(r != 1 for r in unit_roots):
        raise ArithmeticError(f"unexpected unit root of the coboundary determinant: {unit_roots}")
    bs: list[int] = []
    h1 = 0
    if 1 in unit_roots:
        corank = cx.k - linalg.rank(coboundary_matrix(cx, ONE))
        for m in cx.band.integers():
            bs.append(m)
            h1 += corank
    return CohomologyResult(h0, h1, tuple(bs))


# local solvability --------------------------------------------------------


@dataclass(frozen=True)
class SolvabilityResult:
    t: Fraction
    dimension: int
    image_rank: int
    codimension: int
    image_equals_functional_kernel: bool


def _mul_matrix(unit_jet: Sequence[QI], n: int) -> list[list[QI]]:
    """Matrix of multiplication by a jet in Q(i)[s]/(s^n)."""
    return [[unit_jet[r - c] if 0 <= r - c < len(unit_jet) else ZERO for c in range(n)] for r in range(n)]


def local_solvability(
    cx: CechBandComplex,
    t0,
    degree: int = DEFAULT_DEGREE,
    unit_slope: Sequence | None = None,
) -> SolvabilityResult:
    """Image of delta on cochains of polynomial germs of degree <= ``degree`` at t0.

    Germs are truncated in s = t - t0. Near t0 the unit is modelled as
    ``u = u(t0) + s * v(s)`` where ``v`` is a unit; the image only depends on
    the ideal generated by ``u - 1``, so any unit ``v`` gives the same answer.
    ``unit_slope`` lists the coefficients of ``v`` (default ``[-1]``).

    At an integer the image is compared to the kernel of the cyclic-sum
    functional ``b -> sum_i b_i(t0)``; elsewhere to the whole space.
    """
    t0 = Fraction(t0)
    n = degree + 1
    k = cx.k
    u0 = unit_value(t0)
    if u0 is None:
        u0 = GENERIC_UNIT
    slope = [QI.coerce(c) for c in (unit_slope or [-1])]
    if not slope[0]:
        raise ValueError("unit_slope must have a nonzero constant term")
    jet = [u0] + slope[: n - 1]
    mult_u = _mul_matrix(jet, n)
    eye = linalg.identity(n)
    size = k * n
    mat = [[ZERO] * size for _ in range(size)]
    for idx, (i, j) in enumerate(cx.intersections):
        right = mult_u if idx == cx.jump_index else eye
        for r in range(n):
            for c in range(n):
                if right[r][c]:
                    mat[idx * n + r][j * n + c] = mat[idx * n + r][j * n + c] + right[r][c]
            mat[idx * n + r][i * n + r] = mat[idx * n + r][i * n + r] - 1
    img_rank = linalg.rank(mat)
    integral = t0.denominator == 1
    if integral:
        # functional picks the constant term of every overlap coefficient
        functional = [ONE if col % n == 0 else ZERO for col in range(size)]
        columns = linalg.transpose(mat)
        inside = all(sum((f * x for f, x in zip(functional, col)), ZERO) == 0 for col in columns)
        target = size - 1
    else:
        inside = True
        target = size
    return SolvabilityResult(
        t=t0,
        dimension=size,
        image_rank=img_rank,
        codimension=size - img_rank,
        image_equals_functional_kernel=inside and img_rank == target,
    )


# flat sections ------------------------------------------------------------

SECTION_VARS = ("t", "theta")


def flat_section_residual(phase: PolyFn, amplitude: PolyFn) -> PolyFn:
    """(d/dtheta - i t) applied to a * exp(i c), divided by exp(i c).

    Both inputs are polynomials in (t, theta).
    """
    for p in (phase, amplitude):
        if p.variables != SECTION_VARS:
            raise ValueError(f"expected polynomials in {SECTION_VARS}")
    t = PolyFn.var(SECTION_VARS, "t")
    return amplitude.diff("theta") + amplitude * (phase.diff("theta") - t) * I


@dataclass(frozen=True)
class Holonomy:
    trivial: bool
    phase: Fraction


def holonomy(t0) -> Holonomy:
    """Holonomy of exp(i t0 theta) around the circle: trivial iff t0 is an integer."""
    t0 = Fraction(t0)
    phase = t0 - math.floor(t0)
    return Holonomy(phase == 0, phase)
