"""Williamson blocks, their classification, cotangent lifts and connection forms.

Conventions used throughout:

* A block on ``(x, y)`` carries ``omega = dx ^ dy``; Hamiltonian fields solve
  ``i_X omega = -dh``.
* The focus-focus block lives on ``(x1, x2, y1, y2)`` with
  ``omega = dx1 ^ dy1 + dx2 ^ dy2``.
* Product systems on ``2n`` coordinates use ``(x1, ..., xn, y1, ..., yn)`` and
  order blocks regular, elliptic, hyperbolic, focus-focus.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .symcalc import linalg
from .symcalc.formal import ExpTrig
from .symcalc.forms import (
    PolyField,
    PolyForm,
    PolyMap,
    exterior_derivative,
    hamiltonian_vector_field,
    interior_product,
    poisson_bracket,
    pullback,
)
from .symcalc.poly import PolyFn
from .symcalc.scalar import I, QI


class NormalFormError(ValueError):
    pass


class DegenerateSingularityError(NormalFormError):
    """The quadratic part does not define a non-degenerate singularity."""


class NonCommutingError(NormalFormError):
    """The quadratic functions are not in involution."""


class DecompositionError(NormalFormError):
    """A four-dimensional input is non-degenerate but not a focus-focus block."""

    def __init__(self, message: str, pattern: str):
        super().__init__(message)
        self.pattern = pattern


class BlockKind(enum.Enum):
    REGULAR = "Regular"
    ELLIPTIC = "Elliptic"
    HYPERBOLIC = "Hyperbolic"
    FOCUS_FOCUS = "FocusFocus"

    @property
    def dimension(self) -> int:
        return 4 if self is BlockKind.FOCUS_FOCUS else 2


_BLOCK_ORDER = (BlockKind.REGULAR, BlockKind.ELLIPTIC, BlockKind.HYPERBOLIC, BlockKind.FOCUS_FOCUS)


@dataclass(frozen=True)
class WilliamsonType:
    """Rank ``k`` and the block multiplicities of a singular point.

    If ``n`` is given it must satisfy ``k + k_e + k_h + 2 k_f = n``.
    """

    k: int = 0
    k_e: int = 0
    k_h: int = 0
    k_f: int = 0
    n: int | None = None

    def __post_init__(self):
        for name in ("k", "k_e", "k_h", "k_f"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 0:
                raise ValueError(f"{name} must be a nonnegative integer, got {value!r}")
        total = self.k + self.k_e + self.k_h + 2 * self.k_f
        if self.n is None:
            object.__setattr__(self, "n", total)
        elif self.n != total:
            raise ValueError(
                f"inconsistent Williamson type: k + k_e + k_h + 2k_f = {total}, declared n = {self.n}"
            )
        if self.n == 0:
            raise ValueError("empty Williamson type")

    @property
    def blocks(self) -> tuple[BlockKind, ...]:
        counts = (self.k, self.k_e, self.k_h, self.k_f)
        return tuple(kind for kind, c in zip(_BLOCK_ORDER, counts) for _ in range(c))


def all_williamson_types(max_n: int) -> list[WilliamsonType]:
    """Every Williamson type with 1 <= n <= max_n."""
    out = []
    for k, ke, kh, kf in product(range(max_n + 1), repeat=4):
        n = k + ke + kh + 2 * kf
        if 1 <= n <= max_n:
            out.append(WilliamsonType(k, ke, kh, kf))
    return out


@dataclass(frozen=True, eq=False)
class ProductSystem:
    blocks: tuple[BlockKind, ...]
    variables: tuple[str, ...]
    moment_map: tuple[PolyFn, ...]
    symplectic_form: PolyForm

    @property
    def n(self) -> int:
        return len(self.variables) // 2

    @property
    def williamson_type(self) -> WilliamsonType:
        c = {kind: self.blocks.count(kind) for kind in BlockKind}
        return WilliamsonType(
            c[BlockKind.REGULAR], c[BlockKind.ELLIPTIC], c[BlockKind.HYPERBOLIC], c[BlockKind.FOCUS_FOCUS]
        )

    def brackets(self) -> dict[tuple[int, int], PolyFn]:
        return {
            (i, j): poisson_bracket(self.moment_map[i], self.moment_map[j], self.symplectic_form)
            for i, j in combinations(range(len(self.moment_map)), 2)
        }

    def is_involutive(self) -> bool:
        return all(b.is_zero() for b in self.brackets().values())

    def hamiltonian_fields(self) -> tuple[PolyField, ...]:
        return tuple(hamiltonian_vector_field(f, self.symplectic_form) for f in self.moment_map)


def _block_functions(kind: BlockKind, xs: Sequence[PolyFn], ys: Sequence[PolyFn]) -> list[PolyFn]:
    if kind is BlockKind.REGULAR:
        return [xs[0]]
    if kind is BlockKind.ELLIPTIC:
        return [xs[0] ** 2 + ys[0] ** 2]
    if kind is BlockKind.HYPERBOLIC:
        return [xs[0] * ys[0]]
    x1, x2 = xs
    y1, y2 = ys
    return [x1 * y2 - x2 * y1, x1 * y1 + x2 * y2]


def block_moment_map(kind: BlockKind) -> ProductSystem:
    """The model moment map of a single block with its standard symplectic form."""
    kind = BlockKind(kind)
    if kind is BlockKind.FOCUS_FOCUS:
        variables = ("x1", "x2", "y1", "y2")
        pairs = [("x1", "y1"), ("x2", "y2")]
        gens = PolyFn.gens(variables)
        xs, ys = gens[:2], gens[2:]
    else:
        variables = ("x", "y")
        pairs = [("x", "y")]
        x, y = PolyFn.gens(variables)
        xs, ys = [x], [y]
    return ProductSystem(
        (kind,),
        variables,
        tuple(_block_functions(kind, xs, ys)),
        PolyForm.darboux(variables, pairs),
    )


def product_coordinates(n: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(1, n + 1)) + tuple(f"y{i}" for i in range(1, n + 1))


def compose_blocks(wt: WilliamsonType) -> ProductSystem:
    """Product of model blocks; involutivity is checked before returning."""
    n = wt.n
    variables = product_coordinates(n)
    gens = PolyFn.gens(variables)
    xs, ys = gens[:n], gens[n:]
    funcs: list[PolyFn] = []
    slot = 0
    for kind in wt.blocks:
        width = 2 if kind is BlockKind.FOCUS_FOCUS else 1
        funcs.extend(_block_functions(kind, xs[slot:slot + width], ys[slot:slot + width]))
        slot += width
    omega = PolyForm.darboux(variables, [(f"x{i}", f"y{i}") for i in range(1, n + 1)])
    system = ProductSystem(wt.blocks, variables, tuple(funcs), omega)
    if not system.is_involutive():
        raise NonCommutingError("composed moment map is not involutive")
    return system


# classification ---------------------------------------------------------


def linear_part(field: PolyField) -> list[list[QI]]:
    """Matrix of a linear vector field: row i holds the coefficients of component i."""
    n = len(field.variables)
    mat = []
    for comp in field.components:
        if not comp.is_homogeneous(1):
            raise NormalFormError("vector field is not linear")
        row = []
        for j in range(n):
            exps = tuple(1 if i == j else 0 for i in range(n))
            row.append(QI.coerce(comp.coefficient(exps)))
        mat.append(row)
    return mat


def hamiltonian_matrix(f: PolyFn, omega: PolyForm) -> list[list[QI]]:
    """The linear operator omega^{-1} d^2 f of a homogeneous quadratic."""
    if not f.is_homogeneous(2) or f.is_zero():
        raise NormalFormError(f"expected a homogeneous quadratic, got {f}")
    return linear_part(hamiltonian_vector_field(f, omega))


def _real(q: QI) -> Fraction:
    if not q.is_real:
        raise NormalFormError("classification needs real quadratics")
    return q.re


def _even_charpoly(mat: list[list[QI]]) -> tuple[Fraction, Fraction]:
    """(p, q) with det(lambda - A) = lambda^4 + p lambda^2 + q for a 4x4 Hamiltonian A."""
    c = [_real(v) for v in linalg.charpoly(mat)]
    if c[1] or c[3]:
        raise NormalFormError("characteristic polynomial of a Hamiltonian matrix must be even")
    return c[2], c[4]


def williamson_classify(quadratics: Sequence[PolyFn], omega: PolyForm) -> list[BlockKind]:
    """Classify a block-aligned non-degenerate singularity.

    Dimension 2 takes one quadratic, dimension 4 takes two. Raises
    DegenerateSingularityError, NonCommutingError, or DecompositionError for a
    four-dimensional non-degenerate input that splits as ee, hh or eh.
    """
    quadratics = list(quadratics)
    dim = len(omega.variables)
    if dim == 2:
        if len(quadratics) != 1:
            raise NormalFormError("a 2-dimensional block takes exactly one quadratic")
        a = hamiltonian_matrix(quadratics[0], omega)
        # trace vanishes, so the characteristic polynomial is lambda^2 + det A
        cp = linalg.charpoly(a)
        if cp[1]:
            raise NormalFormError("Hamiltonian matrix has nonzero trace")
        c = _real(cp[2])
        if c > 0:
            return [BlockKind.ELLIPTIC]
        if c < 0:
            return [BlockKind.HYPERBOLIC]
        raise DegenerateSingularityError(f"{quadratics[0]} is degenerate: characteristic polynomial lambda^2")
    if dim == 4:
        if len(quadratics) != 2:
            raise NormalFormError("a 4-dimensional block takes exactly two quadratics")
        f1, f2 = quadratics
        if not poisson_bracket(f1, f2, omega).is_zero():
            raise NonCommutingError("the two quadratics do not Poisson-commute")
        a1 = hamiltonian_matrix(f1, omega)
        a2 = hamiltonian_matrix(f2, omega)
        flat = [[x for row in m for x in row] for m in (a1, a2)]
        if linalg.rank(flat) < 2:
            raise DegenerateSingularityError("the two quadratics are linearly dependent")
        for s, t in product(range(1, 10), repeat=2):
            comb = [[a1[i][j] * s + a2[i][j] * t for j in range(4)] for i in range(4)]
            p, q = _even_charpoly(comb)
            disc = p * p - 4 * q
            if q == 0 or disc == 0:
                continue
            if disc < 0:
                return [BlockKind.FOCUS_FOCUS]
            if q < 0:
                pattern = "eh"
            elif p > 0:
                pattern = "ee"
            else:
                pattern = "hh"
            raise DecompositionError(
                f"non-degenerate but of type {pattern}: not a single focus-focus block; "
                "split into 2-dimensional blocks before classifying",
                pattern,
            )
        raise DegenerateSingularityError("no regular element: the quadratics do not span a Cartan subalgebra")
    raise NormalFormError(f"only block-aligned inputs of dimension 2 or 4 are supported, got {dim}")


# cotangent lifts --------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LiftedFamily:
    """A linear (plus translation) family of maps on a cotangent space.

    ``matrix[i][j]`` and ``offset[i]`` are elements of the formal exp/trig
    algebra in ``parameters``. ``base`` and ``fiber`` index the position and
    momentum coordinates; they are empty when the family is given only in a
    symplectic chart.
    """

    name: str
    variables: tuple[str, ...]
    parameters: tuple[str, ...]
    matrix: tuple[tuple[ExpTrig, ...], ...]
    offset: tuple[ExpTrig, ...]
    base: tuple[int, ...]
    fiber: tuple[int, ...]
    symplectic_form: PolyForm
    liouville_form: PolyForm | None
    hamiltonians: dict = field(default_factory=dict)

    @property
    def dimension(self) -> int:
        return len(self.variables)

    def components(self) -> tuple[PolyFn, ...]:
        """Image coordinates as polynomials with exp/trig coefficients."""
        gens = PolyFn.gens(self.variables)
        out = []
        for row, off in zip(self.matrix, self.offset):
            comp = PolyFn.const(self.variables, off)
            for entry, g in zip(row, gens):
                if entry:
                    comp = comp + g * entry
            out.append(comp)
        return tuple(out)

    def as_map(self) -> PolyMap:
        return PolyMap(self.variables, self.variables, self.components())

    def is_identity_at_zero(self) -> bool:
        n = self.dimension
        return all(
            self.matrix[i][j].at_zero() == (1 if i == j else 0) for i in range(n) for j in range(n)
        ) and all(o.at_zero() == 0 for o in self.offset)

    def fiber_is_inverse_transpose(self) -> bool:
        """Block structure check: base and fiber decouple and B^T F = I."""
        if not self.base:
            raise NormalFormError(f"{self.name} has no base/fiber splitting")
        for i in self.base:
            if any(self.matrix[i][j] for j in self.fiber):
                return False
            if any(self.offset[j] for j in self.fiber):
                return False
        for i in self.fiber:
            if any(self.matrix[i][j] for j in self.base):
                return False
        b = [[self.matrix[i][j] for j in self.base] for i in self.base]
        f = [[self.matrix[i][j] for j in self.fiber] for i in self.fiber]
        m = len(self.base)
        for r in range(m):
            for c in range(m):
                entry = ExpTrig.const(0)
                for k in range(m):
                    entry = entry + b[k][r] * f[k][c]
                if entry != (1 if r == c else 0):
                    return False
        return True

    def preserves_liouville(self) -> bool:
        if self.liouville_form is None:
            raise NormalFormError(f"{self.name} has no Liouville form")
        return pullback(self.as_map(), self.liouville_form) == self.liouville_form

    def preserves_symplectic_form(self) -> bool:
        return pullback(self.as_map(), self.symplectic_form) == self.symplectic_form


def _et(x) -> ExpTrig:
    return x if isinstance(x, ExpTrig) else ExpTrig.const(x)


def _family(name, variables, parameters, matrix, offset, base, fiber, omega, liouville, hamiltonians):
    n = len(variables)
    matrix = tuple(tuple(_et(x) for x in row) for row in matrix)
    offset = tuple(_et(x) for x in (offset or [0] * n))
    return LiftedFamily(
        name, tuple(variables), tuple(parameters), matrix, offset, tuple(base), tuple(fiber),
        omega, liouville, dict(hamiltonians),
    )


def _lin(variables, coeffs: dict[str, object]) -> PolyFn:
    out = PolyFn.zero(variables)
    for name, c in coeffs.items():
        out = out + PolyFn.var(variables, name) * c
    return out


def _hyperbolic_lift(t: str = "t") -> LiftedFamily:
    v = ("x", "y")
    x, y = PolyFn.gens(v)
    return _family(
        "hyperbolic", v, [t],
        [[ExpTrig.exp(t, -1), 0], [0, ExpTrig.exp(t, 1)]], None, [0], [1],
        PolyForm.d(v, "x", "y"), PolyForm(v, 1, {(0,): y}), {t: x * y},
    )


def _elliptic_complex_lift(t: str = "t") -> LiftedFamily:
    v = ("z", "zbar")
    z, zb = PolyFn.gens(v)
    return _family(
        "elliptic", v, [t],
        [[ExpTrig.expi(t, 1), 0], [0, ExpTrig.expi(t, -1)]], None, [0], [1],
        PolyForm.d(v, "z", "zbar") * (I / 2), PolyForm(v, 1, {(0,): zb}), {t: z * zb / 2},
    )


def _elliptic_real_lift(t: str = "t") -> LiftedFamily:
    v = ("x", "y")
    x, y = PolyFn.gens(v)
    c, s = ExpTrig.cos(t), ExpTrig.sin(t)
    return _family(
        "elliptic-real", v, [t],
        [[c, -s], [s, c]], None, [], [],
        PolyForm.d(v, "x", "y"), None, {t: (x * x + y * y) / 2},
    )


def _focus_lift(theta: str = "theta", t: str = "t") -> LiftedFamily:
    v = ("x1", "x2", "y1", "y2")
    x1, x2, y1, y2 = PolyFn.gens(v)
    c, s = ExpTrig.cos(theta), ExpTrig.sin(theta)
    em, ep = ExpTrig.exp(t, -1), ExpTrig.exp(t, 1)
    mat = [
        [em * c, em * s, 0, 0],
        [-em * s, em * c, 0, 0],
        [0, 0, ep * c, ep * s],
        [0, 0, -ep * s, ep * c],
    ]
    return _family(
        "focus-focus", v, [theta, t], mat, None, [0, 1], [2, 3],
        PolyForm.darboux(v, [("x1", "y1"), ("x2", "y2")]),
        PolyForm(v, 1, {(0,): y1, (1,): y2}),
        {theta: x1 * y2 - x2 * y1, t: x1 * y1 + x2 * y2},
    )


def _regular_lift(t: str = "t") -> LiftedFamily:
    v = ("x", "y")
    x, _ = PolyFn.gens(v)
    return _family(
        "regular", v, [t], [[1, 0], [0, 1]], [0, ExpTrig.param(t)], [1], [0],
        PolyForm.d(v, "x", "y"), PolyForm(v, 1, {(1,): x}), {t: x},
    )


def _translation_lift(c: str = "c") -> LiftedFamily:
    v = ("q", "p")
    _, p = PolyFn.gens(v)
    return _family(
        "translation", v, [c], [[1, 0], [0, 1]], [ExpTrig.param(c), 0], [0], [1],
        PolyForm.d(v, "q", "p"), PolyForm(v, 1, {(0,): p}), {c: -p},
    )


def _rotation_lift(axis: str = "z", t: str = "t") -> LiftedFamily:
    v = ("q1", "q2", "q3", "p1", "p2", "p3")
    gens = PolyFn.gens(v)
    q, p = gens[:3], gens[3:]
    # rotation in the (a, b) coordinate plane, fixing the axis
    a, b = {"x": (1, 2), "y": (2, 0), "z": (0, 1)}[axis]
    c, s = ExpTrig.cos(t), ExpTrig.sin(t)
    rot = [[ExpTrig.const(1 if i == j else 0) for j in range(3)] for i in range(3)]
    rot[a][a], rot[a][b], rot[b][a], rot[b][b] = c, -s, s, c
    zero = ExpTrig.const(0)
    mat = [row + [zero] * 3 for row in rot] + [[zero] * 3 + row for row in rot]
    return _family(
        f"rotation-{axis}", v, [t], mat, None, [0, 1, 2], [3, 4, 5],
        PolyForm.darboux(v, [("q1", "p1"), ("q2", "p2"), ("q3", "p3")]),
        PolyForm(v, 1, {(i,): p[i] for i in range(3)}),
        {t: q[b] * p[a] - q[a] * p[b]},
    )


_LIFTS = {
    "hyperbolic": _hyperbolic_lift,
    "rho_h": _hyperbolic_lift,
    "elliptic": _elliptic_complex_lift,
    "rho_e": _elliptic_complex_lift,
    "elliptic-real": _elliptic_real_lift,
    "focus-focus": _focus_lift,
    "rho_f": _focus_lift,
    "regular": _regular_lift,
    "translation": _translation_lift,
    "rotation": _rotation_lift,
}


def cotangent_lift(action: str, **kwargs) -> LiftedFamily:
    """The lifted family of a named model action.

    Supported names: hyperbolic (rho_h), elliptic (rho_e, on z and zbar),
    elliptic-real, focus-focus (rho_f), regular, translation, rotation.
    """
    try:
        builder = _LIFTS[action]
    except KeyError:
        raise NormalFormError(
            f"unsupported action {action!r}; choose from {', '.join(sorted(_LIFTS))}"
        ) from None
    return builder(**kwargs)


def infinitesimal_generator(fam: LiftedFamily, parameter: str) -> PolyField:
    """Derivative at the identity along ``parameter``, entry by entry."""
    if parameter not in fam.parameters:
        raise NormalFormError(f"{fam.name} has no parameter {parameter!r}")
    v = fam.variables
    gens = PolyFn.gens(v)
    comps = []
    for row, off in zip(fam.matrix, fam.offset):
        comp = PolyFn.const(v, off.derivative_at_zero(parameter))
        for entry, g in zip(row, gens):
            d = entry.derivative_at_zero(parameter)
            if d:
                comp = comp + g * d
        comps.append(comp)
    return PolyField(v, tuple(comps))


def cotangent_momentum(fam: LiftedFamily, parameter: str) -> PolyFn:
    """-<p, xi(q)> for the base generator xi; generates the lift for sum dq ^ dp."""
    gen = infinitesimal_generator(fam, parameter)
    if not fam.base:
        raise NormalFormError(f"{fam.name} has no base/fiber splitting")
    out = PolyFn.zero(fam.variables)
    for qi, pi in zip(fam.base, fam.fiber):
        out = out - PolyFn.var(fam.variables, fam.variables[pi]) * gen.components[qi]
    return out


def lift_matches_hamiltonians(fam: LiftedFamily) -> dict[str, bool]:
    """For each parameter: does the generator equal the Hamiltonian field?"""
    return {
        param: infinitesimal_generator(fam, param) == hamiltonian_vector_field(h, fam.symplectic_form)
        for param, h in fam.hamiltonians.items()
    }


def product_lift(wt: WilliamsonType) -> LiftedFamily:
    """Block-diagonal family on the product coordinates of ``compose_blocks(wt)``.

    Elliptic blocks rotate (x_i, y_i); their stored Hamiltonian is half the
    block moment function.
    """
    n = wt.n
    variables = product_coordinates(n)
    dim = 2 * n
    zero = ExpTrig.const(0)
    mat = [[zero] * dim for _ in range(dim)]
    offset = [zero] * dim
    params: list[str] = []
    hams: dict[str, PolyFn] = {}
    system = compose_blocks(wt)
    fn_index = 0
    slot = 0
    for b, kind in enumerate(wt.blocks, start=1):
        xi, yi = slot, n + slot
        if kind is BlockKind.FOCUS_FOCUS:
            th, t = f"theta{b}", f"t{b}"
            sub = _focus_lift(th, t)
            idx = [slot, slot + 1, n + slot, n + slot + 1]
            for r in range(4):
                for c in range(4):
                    mat[idx[r]][idx[c]] = sub.matrix[r][c]
            params += [th, t]
            hams[th] = system.moment_map[fn_index]
            hams[t] = system.moment_map[fn_index + 1]
            fn_index += 2
            slot += 2
            continue
        t = f"t{b}"
        params.append(t)
        f = system.moment_map[fn_index]
        if kind is BlockKind.REGULAR:
            mat[xi][xi] = mat[yi][yi] = ExpTrig.const(1)
            offset[yi] = ExpTrig.param(t)
            hams[t] = f
        elif kind is BlockKind.ELLIPTIC:
            c, s = ExpTrig.cos(t), ExpTrig.sin(t)
            mat[xi][xi], mat[xi][yi], mat[yi][xi], mat[yi][yi] = c, -s, s, c
            hams[t] = f / 2
        else:
            mat[xi][xi] = ExpTrig.exp(t, -1)
            mat[yi][yi] = ExpTrig.exp(t, 1)
            hams[t] = f
        fn_index += 1
        slot += 1
    return _family(
        f"product{tuple(k.value for k in wt.blocks)}", variables, params, mat, offset, [], [],
        system.symplectic_form, None, hams,
    )


# connection one-forms ------------------------------------------------------


_CHARTS = {
    # kind: (first coordinate p, second coordinate q)
    BlockKind.REGULAR: ("x", "y"),
    BlockKind.ELLIPTIC: ("s", "theta"),
    BlockKind.HYPERBOLIC: ("h", "b"),
}


@dataclass(frozen=True, eq=False)
class ConnectionForm:
    """Theta on the distinguished chart (p, q) of a block, with omega = dp ^ dq
    and moment coordinate f = p."""

    kind: BlockKind
    variables: tuple[str, str]
    form: PolyForm
    symplectic_form: PolyForm
    moment: PolyFn

    def conditions(self) -> dict[str, bool]:
        p, q = self.variables
        return {
            "d_theta_is_omega": exterior_derivative(self.form) == self.symplectic_form,
            "contract_first_vanishes": interior_product(
                PolyField.coordinate(self.variables, p), self.form
            ).is_zero(),
            "contract_second_is_moment": interior_product(
                PolyField.coordinate(self.variables, q), self.form
            ).as_function()
            == self.moment,
        }


def connection_one_form(kind: BlockKind) -> ConnectionForm:
    """Solve i_{d/dp} Theta = 0 and i_{d/dq} Theta = f for a 1-form, then check d Theta = omega."""
    kind = BlockKind(kind)
    if kind not in _CHARTS:
        raise NormalFormError("connection forms are only defined for regular, elliptic and hyperbolic blocks")
    p, q = _CHARTS[kind]
    v = (p, q)
    f = PolyFn.var(v, p)
    # Theta = A dp + B dq; the two contraction conditions force A = 0 and B = f
    theta = PolyForm(v, 1, {(1,): f})
    omega = PolyForm.d(v, p, q)
    result = ConnectionForm(kind, v, theta, omega, f)
    failed = [name for name, ok in result.conditions().items() if not ok]
    if failed:
        raise NormalFormError(f"connection form fails {failed}")
    return result
