"""Quantization reports under the toric, old and new models.

Inventories record what each model needs to know about a compact integrable
system: regular Bohr-Sommerfeld fibers, focus-focus fibers with their node
counts and BS flags, and hyperbolic points.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field, replace

from .polytope import DelzantPolytope, NotDelzantError, interior_lattice_points, validate_delzant


class QuantizationError(ValueError):
    pass


class UnsupportedHyperbolicMultiplicity(QuantizationError):
    """Refusal: the finite model is only established for k_h <= 1."""

    def __init__(self, k_h: int):
        self.k_h = k_h
        super().__init__(
            f"refused: k_h = {k_h}; the finite model is proved only for Williamson types "
            "with at most one hyperbolic block (the general case is conjectural)"
        )


class InfiniteSummandKind(enum.Enum):
    TAYLOR_SERIES = "TaylorSeries"
    SMOOTH_LINE_FUNCTIONS = "SmoothLineFunctions"

    @property
    def symbol(self) -> str:
        return "ℂ^ℕ" if self is InfiniteSummandKind.TAYLOR_SERIES else "C^∞(ℝ;ℂ)"


@dataclass(frozen=True)
class FocusFiber:
    nodes: int = 1
    is_bs: bool = True
    compact_fiber: bool = True

    def __post_init__(self):
        if not isinstance(self.nodes, int) or self.nodes < 1:
            raise ValueError(f"a focus-focus fiber has at least one node, got {self.nodes!r}")


@dataclass(frozen=True)
class FiberInventory:
    n: int
    compact: bool = True
    n_r: int = 0
    focus_fibers: tuple[FocusFiber, ...] = ()
    hyperbolic_points: int = 0
    k_h: int | None = None
    elliptic_corners: int = 0

    def __post_init__(self):
        object.__setattr__(self, "focus_fibers", tuple(self.focus_fibers))
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"half-dimension must be a positive integer, got {self.n!r}")
        for name in ("n_r", "hyperbolic_points", "elliptic_corners"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 0:
                raise ValueError(f"{name} must be a nonnegative integer, got {value!r}")
        if self.focus_fibers and self.n < 2:
            raise ValueError("focus-focus fibers need n >= 2")
        if self.k_h is None:
            object.__setattr__(self, "k_h", 1 if self.hyperbolic_points else 0)
        if not isinstance(self.k_h, int) or not 0 <= self.k_h <= self.n:
            raise ValueError(f"k_h must lie in 0..n, got {self.k_h!r}")
        if self.hyperbolic_points and self.k_h == 0:
            raise ValueError("hyperbolic points present but k_h = 0")

    @property
    def bs_focus_count(self) -> int:
        return sum(1 for f in self.focus_fibers if f.is_bs)

    def is_saturated_focus_neighbourhood(self) -> bool:
        return (
            self.n == 2
            and len(self.focus_fibers) == 1
            and self.n_r == 0
            and self.hyperbolic_points == 0
        )


@dataclass(frozen=True)
class InfiniteSummand:
    kind: InfiniteSummandKind
    multiplicity: int


@dataclass(frozen=True)
class QuantizationReport:
    model: str
    degree: int
    finite_dim: int
    infinite_summands: tuple[InfiniteSummand, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "infinite_summands", tuple(self.infinite_summands))
        if self.model not in ("toric", "old", "new"):
            raise ValueError(f"unknown model {self.model!r}")
        if self.model != "old" and self.infinite_summands:
            raise ValueError(f"the {self.model} model has no infinite summands")

    def multiplicity(self, kind: InfiniteSummandKind) -> int:
        return sum(s.multiplicity for s in self.infinite_summands if s.kind is kind)

    @property
    def is_finite(self) -> bool:
        return not any(s.multiplicity for s in self.infinite_summands)

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "degree": self.degree,
            "finite_dim": self.finite_dim,
            "infinite": [{"kind": s.kind.value, "mult": s.multiplicity} for s in self.infinite_summands],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> QuantizationReport:
        return cls(
            model=data["model"],
            degree=int(data["degree"]),
            finite_dim=int(data["finite_dim"]),
            infinite_summands=tuple(
                InfiniteSummand(InfiniteSummandKind(s["kind"]), int(s["mult"])) for s in data["infinite"]
            ),
        )

    @classmethod
    def from_json(cls, text: str) -> QuantizationReport:
        return cls.from_dict(json.loads(text))

    def render_text(self) -> str:
        parts = []
        if self.finite_dim or self.is_finite:
            parts.append(f"ℂ^{self.finite_dim}")
        for s in self.infinite_summands:
            if s.multiplicity:
                parts.append(f"({s.kind.symbol})^{s.multiplicity}")
        if parts == ["ℂ^0"]:
            return "0"
        return " ⊕ ".join(parts)


def _check_compactness(inv: FiberInventory):
    if not inv.compact and not inv.is_saturated_focus_neighbourhood():
        raise QuantizationError(
            "non-compact inventories are only supported for a saturated focus-focus neighbourhood"
        )


def quantize_toric(P: DelzantPolytope) -> QuantizationReport:
    report = validate_delzant(P)
    if not report.ok:
        raise NotDelzantError(report.violations)
    return QuantizationReport("toric", P.dimension, len(interior_lattice_points(P)))


def quantize_old(inv: FiberInventory) -> QuantizationReport:
    """Infinite-dimensional model: Taylor series at hyperbolic points, smooth
    functions of one variable along Bohr-Sommerfeld focus-focus fibers."""
    _check_compactness(inv)
    if inv.n == 1:
        summands = []
        if inv.hyperbolic_points:
            summands.append(InfiniteSummand(InfiniteSummandKind.TAYLOR_SERIES, 2 * inv.hyperbolic_points))
        return QuantizationReport("old", 1, inv.n_r, tuple(summands))
    if inv.n == 2:
        if inv.hyperbolic_points or inv.k_h:
            raise QuantizationError("the old model covers hyperbolic points only in dimension 2 (n = 1)")
        mult = sum(
            f.nodes if f.compact_fiber else f.nodes - 1 for f in inv.focus_fibers if f.is_bs
        )
        summands = (InfiniteSummand(InfiniteSummandKind.SMOOTH_LINE_FUNCTIONS, mult),) if mult else ()
        return QuantizationReport("old", 2, inv.n_r, summands)
    raise QuantizationError(f"the old model is implemented for n = 1 and n = 2, got n = {inv.n}")


def quantize_new(inv: FiberInventory) -> QuantizationReport:
    """Finite model: one line per Bohr-Sommerfeld fiber, regular or focus-focus."""
    if inv.k_h >= 2:
        raise UnsupportedHyperbolicMultiplicity(inv.k_h)
    _check_compactness(inv)
    # hyperbolic points contribute nothing; node counts do not matter
    return QuantizationReport("new", inv.n, inv.n_r + inv.bs_focus_count)


def nodal_trade(inv: FiberInventory, traded_vertices: int, bs: bool = True) -> FiberInventory:
    """Replace elliptic-elliptic corners by single-node focus-focus fibers."""
    if not isinstance(traded_vertices, int) or traded_vertices < 0:
        raise ValueError("number of traded vertices must be a nonnegative integer")
    if traded_vertices == 0:
        return inv
    if traded_vertices > inv.elliptic_corners:
        raise QuantizationError(
            f"cannot trade {traded_vertices} corners; only {inv.elliptic_corners} available"
        )
    if inv.n != 2:
        raise QuantizationError("nodal trades are defined for n = 2")
    new = tuple(FocusFiber(1, bs, True) for _ in range(traded_vertices))
    return replace(
        inv,
        focus_fibers=inv.focus_fibers + new,
        elliptic_corners=inv.elliptic_corners - traded_vertices,
    )


def symplectic_sum(a: FiberInventory, b: FiberInventory, seam_regular_bs: int) -> FiberInventory:
    """Glue two n = 2 inventories along their boundary tori.

    ``seam_regular_bs`` counts the regular Bohr-Sommerfeld fibers created along
    the gluing region.
    """
    if a.n != 2 or b.n != 2:
        raise QuantizationError("symplectic sums are implemented for n = 2")
    return FiberInventory(
        n=2,
        compact=True,
        n_r=a.n_r + b.n_r + seam_regular_bs,
        focus_fibers=a.focus_fibers + b.focus_fibers,
        hyperbolic_points=a.hyperbolic_points + b.hyperbolic_points,
        k_h=max(a.k_h, b.k_h),
        elliptic_corners=a.elliptic_corners + b.elliptic_corners,
    )


# per copy of the toric blow-up of CP^2 at 9 points
K3_PIECE_CORNERS = 12
K3_PIECE_REGULAR_BS = 7
K3_SEAM_REGULAR_BS = 12


def build_k3_inventory() -> FiberInventory:
    """Two traded toric pieces summed along their boundary: 26 regular and 24
    focus-focus Bohr-Sommerfeld fibers."""
    piece = FiberInventory(n=2, compact=True, n_r=K3_PIECE_REGULAR_BS, elliptic_corners=K3_PIECE_CORNERS)
    traded = nodal_trade(piece, K3_PIECE_CORNERS, bs=True)
    return symplectic_sum(traded, traded, K3_SEAM_REGULAR_BS)


def kahler_dimension_k3(c1_squared: int) -> int:
    """Riemann-Roch count c_1(L)^2 / 2 + 2 on a K3 surface."""
    if not isinstance(c1_squared, int) or c1_squared < 0 or c1_squared % 2:
        raise ValueError(f"c_1(L)^2 must be a nonnegative even integer, got {c1_squared!r}")
    return c1_squared // 2 + 2


def inventory_from_polytope(P: DelzantPolytope) -> FiberInventory:
    """Inventory of the toric manifold of a Delzant polytope: interior lattice
    points are its regular BS fibers, vertices of a polygon its corners."""
    report = validate_delzant(P)
    if not report.ok:
        raise NotDelzantError(report.violations)
    return FiberInventory(
        n=P.dimension,
        compact=True,
        n_r=len(interior_lattice_points(P)),
        elliptic_corners=len(P.vertices) if P.dimension == 2 else 0,
    )
