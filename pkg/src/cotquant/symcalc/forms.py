"""Differential forms, vector fields and polynomial maps with polynomial coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg
from .formal import ExpTrig
from .poly import PolyFn, poly_sum
from .scalar import QI

_SCALARS = (int, Fraction, QI, ExpTrig)


class DegenerateFormError(ValueError):
    """The 2-form is not a constant non-degenerate (Darboux-type) form."""


def _canonical(indices: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sort an index tuple; return (sign, sorted) or (0, ()) on a repeat."""
    idx = list(indices)
    sign = 1
    # insertion sort keeps track of the permutation parity
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    if any(idx[i] == idx[i + 1] for i in range(len(idx) - 1)):
        return 0, ()
    return sign, tuple(idx)


class PolyForm:
    """A differential form of fixed degree with polynomial coefficients.

    Components are keyed by strictly increasing index tuples; keys given in
    another order are sorted at construction with the permutation sign.
    """

    __slots__ = ("variables", "degree", "_components")

    def __init__(
        self,
        variables: Sequence[str],
        degree: int,
        components: Mapping[Sequence[int], PolyFn] | None = None,
    ):
        self.variables = tuple(variables)
        self.degree = degree
        n = len(self.variables)
        acc: dict[tuple[int, ...], PolyFn] = {}
        for key, coeff in (components or {}).items():
            key = tuple(key)
            if len(key) != degree:
                raise ValueError(f"index tuple {key} does not have degree {degree}")
            if any(not 0 <= k < n for k in key):
                raise ValueError(f"index tuple {key} out of range for {n} variables")
            if not isinstance(coeff, PolyFn):
                coeff = PolyFn.const(self.variables, coeff)
            if coeff.variables != self.variables:
                raise ValueError("component lives on a different coordinate list")
            sign, ckey = _canonical(key)
            if sign == 0:
                continue
            coeff = coeff if sign > 0 else -coeff
            acc[ckey] = acc[ckey] + coeff if ckey in acc else coeff
        self._components = {k: v for k, v in acc.items() if v}

    # constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str], degree: int) -> PolyForm:
        return cls(variables, degree)

    @classmethod
    def function(cls, f: PolyFn) -> PolyForm:
        """A polynomial viewed as a 0-form."""
        return cls(f.variables, 0, {(): f})

    @classmethod
    def d(cls, variables: Sequence[str], *names: str) -> PolyForm:
        """The basis form d(names[0]) ^ d(names[1]) ^ ..."""
        variables = tuple(variables)
        idx = tuple(variables.index(n) for n in names)
        return cls(variables, len(idx), {idx: PolyFn.const(variables, 1)})

    @classmethod
    def darboux(cls, variables: Sequence[str], pairs: Sequence[tuple[str, str]]) -> PolyForm:
        """Sum of dq ^ dp over the given (q, p) name pairs."""
        form = cls.zero(variables, 2)
        for q, p in pairs:
            form = form + cls.d(variables, q, p)
        return form

    # access ---------------------------------------------------------------

    @property
    def components(self) -> Mapping[tuple[int, ...], PolyFn]:
        return dict(self._components)

    def component(self, *names: str) -> PolyFn:
        """Coefficient of d(names...), with the sign of the requested order."""
        idx = [self.variables.index(n) for n in names]
        sign, key = _canonical(idx)
        c = self._components.get(key, PolyFn.zero(self.variables))
        return c if sign >= 0 else -c

    def is_zero(self) -> bool:
        return not self._components

    def __bool__(self):
        return bool(self._components)

    def as_function(self) -> PolyFn:
        if self.degree != 0:
            raise ValueError("only 0-forms convert to functions")
        return self._components.get((), PolyFn.zero(self.variables))

    # arithmetic -----------------------------------------------------------

    def _check(self, other: PolyForm):
        if other.variables != self.variables:
            raise ValueError(f"coordinate mismatch: {self.variables} vs {other.variables}")
        if other.degree != self.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other):
        if not isinstance(other, PolyForm):
            return NotImplemented
        self._check(other)
        acc = dict(self._components)
        for k, v in other._components.items():
            acc[k] = acc[k] + v if k in acc else v
        return PolyForm(self.variables, self.degree, acc)

    def __neg__(self):
        return PolyForm(self.variables, self.degree, {k: -v for k, v in self._components.items()})

    def __sub__(self, other):
        if not isinstance(other, PolyForm):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, PolyFn):
            if other.variables != self.variables:
                raise ValueError("coordinate mismatch")
        elif not isinstance(other, _SCALARS):
            return NotImplemented
        return PolyForm(self.variables, self.degree, {k: v * other for k, v in self._components.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, PolyForm):
            return NotImplemented
        return (
            self.variables == other.variables
            and self.degree == other.degree
            and self._components == other._components
        )

    def __hash__(self):
        return hash((self.variables, self.degree, frozenset(self._components.items())))

    def __repr__(self):
        return f"PolyForm({self})"

    def __str__(self):
        if not self._components:
            return "0"
        parts = []
        for key in sorted(self._components):
            basis = "^".join(f"d{self.variables[i]}" for i in key)
            coeff = self._components[key]
            text = str(coeff)
            if not basis:
                parts.append(text)
            elif text == "1":
                parts.append(basis)
            elif len(coeff.terms) == 1:
                parts.append(f"{text} {basis}")
            else:
                parts.append(f"({text}) {basis}")
        return " + ".join(parts)


def wedge(a: PolyForm, b: PolyForm) -> PolyForm:
    if a.variables != b.variables:
        raise ValueError(f"coordinate mismatch: {a.variables} vs {b.variables}")
    acc: dict[tuple[int, ...], PolyFn] = {}
    for ka, va in a._components.items():
        for kb, vb in b._components.items():
            sign, key = _canonical(ka + kb)
            if sign == 0:
                continue
            term = va * vb
            if sign < 0:
                term = -term
            acc[key] = acc[key] + term if key in acc else term
    return PolyForm(a.variables, a.degree + b.degree, acc)


@dataclass(frozen=True, eq=False)
class PolyField:
    """A vector field: one polynomial component per coordinate."""

    variables: tuple[str, ...]
    components: tuple[PolyFn, ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "components", tuple(self.components))
        if len(self.components) != len(self.variables):
            raise ValueError(
                f"{len(self.components)} components for {len(self.variables)} coordinates"
            )
        for c in self.components:
            if c.variables != self.variables:
                raise ValueError("field component on a different coordinate list")

    @classmethod
    def from_exprs(cls, variables: Sequence[str], comps: Sequence) -> PolyField:
        variables = tuple(variables)
        return cls(
            variables,
            tuple(c if isinstance(c, PolyFn) else PolyFn.const(variables, c) for c in comps),
        )

    @classmethod
    def zero(cls, variables: Sequence[str]) -> PolyField:
        variables = tuple(variables)
        return cls(variables, tuple(PolyFn.zero(variables) for _ in variables))

    @classmethod
    def coordinate(cls, variables: Sequence[str], name: str) -> PolyField:
        """The constant field d/d(name)."""
        variables = tuple(variables)
        return cls(
            variables,
            tuple(PolyFn.const(variables, 1 if v == name else 0) for v in variables),
        )

    def __getitem__(self, name: str) -> PolyFn:
        return self.components[self.variables.index(name)]

    def as_dict(self) -> dict[str, PolyFn]:
        return dict(zip(self.variables, self.components))

    def __add__(self, other):
        if not isinstance(other, PolyField):
            return NotImplemented
        if other.variables != self.variables:
            raise ValueError("coordinate mismatch")
        return PolyField(self.variables, tuple(a + b for a, b in zip(self.components, other.components)))

    def __neg__(self):
        return PolyField(self.variables, tuple(-c for c in self.components))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (PolyFn,) + _SCALARS):
            return PolyField(self.variables, tuple(c * other for c in self.components))
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, PolyField):
            return NotImplemented
        return self.variables == other.variables and self.components == other.components

    def __hash__(self):
        return hash((self.variables, self.components))

    def apply(self, f: PolyFn) -> PolyFn:
        """Directional derivative X(f)."""
        if f.variables != self.variables:
            raise ValueError("coordinate mismatch")
        return poly_sum((c * f.diff(i) for i, c in enumerate(self.components) if c), self.variables)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"


@dataclass(frozen=True, eq=False)
class PolyMap:
    """A polynomial map: ``components[i]`` is target coordinate i as a
    polynomial on the source coordinates."""

    source: tuple[str, ...]
    target: tuple[str, ...]
    components: tuple[PolyFn, ...]

    def __post_init__(self):
        object.__setattr__(self, "source", tuple(self.source))
        object.__setattr__(self, "target", tuple(self.target))
        object.__setattr__(self, "components", tuple(self.components))
        if len(self.components) != len(self.target):
            raise ValueError(
                f"{len(self.components)} components for {len(self.target)} target coordinates"
            )
        for c in self.components:
            if c.variables != self.source:
                raise ValueError("map component not on the source coordinates")

    @classmethod
    def identity(cls, variables: Sequence[str]) -> PolyMap:
        variables = tuple(variables)
        return cls(variables, variables, PolyFn.gens(variables))

    def compose(self, inner: PolyMap) -> PolyMap:
        """``self o inner``: apply ``inner`` first."""
        if inner.target != self.source:
            raise ValueError("cannot compose: inner target is not outer source")
        return PolyMap(inner.source, self.target, tuple(c.compose(inner.components) for c in self.components))

    def __eq__(self, other):
        if not isinstance(other, PolyMap):
            return NotImplemented
        return (self.source, self.target, self.components) == (other.source, other.target, other.components)

    def __hash__(self):
        return hash((self.source, self.target, self.components))


# operations -----------------------------------------------------------------


def exterior_derivative(form: PolyForm) -> PolyForm:
    """d of a form; a top-degree input gives the empty form of degree n+1."""
    n = len(form.variables)
    if form.degree >= n:
        return PolyForm(form.variables, form.degree + 1)
    acc: dict[tuple[int, ...], PolyFn] = {}
    for key, coeff in form._components.items():
        for j in range(n):
            if j in key:
                continue
            dc = coeff.diff(j)
            if not dc:
                continue
            sign, ckey = _canonical((j,) + key)
            term = dc if sign > 0 else -dc
            acc[ckey] = acc[ckey] + term if ckey in acc else term
    return PolyForm(form.variables, form.degree + 1, acc)


def interior_product(field: PolyField, form: PolyForm) -> PolyForm:
    if field.variables != form.variables:
        raise ValueError(f"coordinate mismatch: {field.variables} vs {form.variables}")
    if form.degree < 1:
        raise ValueError("interior product needs a form of degree >= 1")
    acc: dict[tuple[int, ...], PolyFn] = {}
    for key, coeff in form._components.items():
        for r, idx in enumerate(key):
            comp = field.components[idx]
            if not comp:
                continue
            term = comp * coeff
            if r % 2:
                term = -term
            rest = key[:r] + key[r + 1:]
            acc[rest] = acc[rest] + term if rest in acc else term
    return PolyForm(form.variables, form.degree - 1, acc)


def evaluate_2form(omega: PolyForm, u: PolyField, v: PolyField) -> PolyFn:
    """omega(u, v) as a polynomial."""
    if omega.degree != 2:
        raise ValueError("expected a 2-form")
    return interior_product(v, interior_product(u, omega)).as_function()


def _constant_matrix(omega: PolyForm) -> list[list[QI]]:
    if omega.degree != 2:
        raise DegenerateFormError(f"expected a 2-form, got degree {omega.degree}")
    n = len(omega.variables)
    mat = [[QI(0)] * n for _ in range(n)]
    for (i, j), c in omega._components.items():
        if not c.is_constant():
            raise DegenerateFormError("symplectic form must have constant coefficients")
        val = c.constant_value()
        if not isinstance(val, QI):
            raise DegenerateFormError("symplectic form must have scalar coefficients")
        mat[i][j] = val
        mat[j][i] = -val
    return mat


def hamiltonian_vector_field(h: PolyFn, omega: PolyForm) -> PolyField:
    """The unique X with i_X omega = -dh, for a constant non-degenerate omega."""
    if h.variables != omega.variables:
        raise ValueError(f"coordinate mismatch: {h.variables} vs {omega.variables}")
    mat = _constant_matrix(omega)
    try:
        inv = linalg.inverse(mat)
    except ZeroDivisionError:
        raise DegenerateFormError("symplectic form is degenerate") from None
    # (i_X omega)_j = sum_i X^i W_ij = -dh_j  =>  X = W^{-1} grad h  (W antisymmetric)
    grad = h.gradient()
    comps = []
    for i in range(len(h.variables)):
        comps.append(poly_sum((g * inv[i][j] for j, g in enumerate(grad) if inv[i][j]), h.variables))
    field = PolyField(h.variables, tuple(comps))
    check = interior_product(field, omega) + exterior_derivative(PolyForm.function(h))
    assert check.is_zero(), "Hamiltonian field failed i_X omega = -dh"
    return field


def poisson_bracket(f: PolyFn, g: PolyFn, omega: PolyForm) -> PolyFn:
    """{f, g} = omega(X_f, X_g)."""
    return evaluate_2form(omega, hamiltonian_vector_field(f, omega), hamiltonian_vector_field(g, omega))


def pullback(phi: PolyMap | Sequence[PolyFn], form: PolyForm) -> PolyForm:
    """phi^* form. ``phi`` may be a bare sequence of components over the form's coordinates."""
    if not isinstance(phi, PolyMap):
        comps = tuple(phi)
        if not comps:
            raise ValueError("empty map")
        phi = PolyMap(comps[0].variables, form.variables, comps)
    if phi.target != form.variables:
        raise ValueError(
            f"dimension/coordinate mismatch: map target {phi.target} vs form {form.variables}"
        )
    src = phi.source
    differentials: dict[int, PolyForm] = {}

    def dphi(i: int) -> PolyForm:
        if i not in differentials:
            differentials[i] = exterior_derivative(PolyForm.function(phi.components[i]))
        return differentials[i]

    result = PolyForm.zero(src, form.degree)
    for key, coeff in form._components.items():
        piece = PolyForm.function(coeff.compose(phi.components))
        for i in key:
            piece = wedge(piece, dphi(i))
        result = result + piece
    return result
