"""Sparse multivariate polynomials with exact coefficients.

Coefficients are :class:`~cotquant.symcalc.scalar.QI` by default. Any ring
element supporting ``+``, ``*``, ``==`` and truthiness can be used instead;
:class:`~cotquant.symcalc.formal.ExpTrig` is used that way for group-parameter
dependent maps.
"""

from __future__ import annotations

from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .formal import ExpTrig
from .scalar import ONE, QI, ZERO

_SCALARS = (int, Fraction, QI, ExpTrig)


def _coerce(c):
    if isinstance(c, (int, Fraction)):
        return QI.coerce(c)
    return c


def _add_into(acc: dict, key, value):
    if key in acc:
        s = acc[key] + value
        if s:
            acc[key] = s
        else:
            del acc[key]
    elif value:
        acc[key] = value


class PolyFn:
    """A polynomial over an ordered tuple of named coordinates.

    ``terms`` maps exponent tuples (one exponent per variable) to nonzero
    coefficients. Binary operations require identical variable tuples.
    """

    __slots__ = ("variables", "_terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple, object] | None = None):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean: dict = {}
        if terms:
            for exps, c in terms.items():
                exps = tuple(exps)
                if len(exps) != n:
                    raise ValueError(f"exponent {exps} does not match {n} variables")
                if any(e < 0 for e in exps):
                    raise ValueError(f"negative exponent in {exps}")
                _add_into(clean, exps, _coerce(c))
        self._terms = clean
        self._hash = None

    @classmethod
    def _from_clean(cls, variables: tuple, terms: dict) -> PolyFn:
        obj = object.__new__(cls)
        obj.variables = variables
        obj._terms = terms
        obj._hash = None
        return obj

    # constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str]) -> PolyFn:
        return cls._from_clean(tuple(variables), {})

    @classmethod
    def const(cls, variables: Sequence[str], value) -> PolyFn:
        variables = tuple(variables)
        value = _coerce(value)
        terms = {(0,) * len(variables): value} if value else {}
        return cls._from_clean(variables, terms)

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> PolyFn:
        variables = tuple(variables)
        try:
            idx = variables.index(name)
        except ValueError:
            raise ValueError(f"unknown variable {name!r}; have {variables}") from None
        exps = tuple(1 if i == idx else 0 for i in range(len(variables)))
        return cls._from_clean(variables, {exps: ONE})

    @classmethod
    def gens(cls, variables: Sequence[str]) -> tuple[PolyFn, ...]:
        """All coordinate functions, in order."""
        return tuple(cls.var(variables, v) for v in variables)

    # basic access ---------------------------------------------------------

    @property
    def terms(self) -> Mapping[tuple, object]:
        return MappingProxyType(self._terms)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def total_degree(self) -> int:
        """Largest total degree of a term; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self, degree: int) -> bool:
        return all(sum(e) == degree for e in self._terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self):
        """The coefficient of the constant term (zero if absent)."""
        return self._terms.get((0,) * self.nvars, ZERO)

    def coefficient(self, exps: Sequence[int]):
        return self._terms.get(tuple(exps), ZERO)

    # arithmetic -----------------------------------------------------------

    def _lift(self, other) -> PolyFn | None:
        if isinstance(other, PolyFn):
            if other.variables != self.variables:
                raise ValueError(
                    f"coordinate mismatch: {self.variables} vs {other.variables}"
                )
            return other
        if isinstance(other, _SCALARS):
            return PolyFn.const(self.variables, other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        acc = dict(self._terms)
        for k, v in other._terms.items():
            _add_into(acc, k, v)
        return PolyFn._from_clean(self.variables, acc)

    __radd__ = __add__

    def __neg__(self):
        return PolyFn._from_clean(self.variables, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            other = _coerce(other)
            if not other:
                return PolyFn.zero(self.variables)
            acc: dict = {}
            for k, v in self._terms.items():
                _add_into(acc, k, v * other)
            return PolyFn._from_clean(self.variables, acc)
        if not isinstance(other, PolyFn):
            return NotImplemented
        other = self._lift(other)
        acc = {}
        for k1, v1 in self._terms.items():
            for k2, v2 in other._terms.items():
                _add_into(acc, tuple(a + b for a, b in zip(k1, k2)), v1 * v2)
        return PolyFn._from_clean(self.variables, acc)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, QI)):
            return self * QI.coerce(other).inverse()
        return NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = PolyFn.const(self.variables, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, PolyFn):
            return self.variables == other.variables and self._terms == other._terms
        if isinstance(other, (int, Fraction, QI)):
            return self._terms == PolyFn.const(self.variables, other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self._terms.items())))
        return self._hash

    # calculus and substitution -------------------------------------------

    def _index(self, var: str | int) -> int:
        if isinstance(var, int):
            return var
        try:
            return self.variables.index(var)
        except ValueError:
            raise ValueError(f"unknown variable {var!r}; have {self.variables}") from None

    def diff(self, var: str | int) -> PolyFn:
        i = self._index(var)
        acc: dict = {}
        for k, v in self._terms.items():
            e = k[i]
            if e:
                nk = k[:i] + (e - 1,) + k[i + 1:]
                _add_into(acc, nk, v * e)
        return PolyFn._from_clean(self.variables, acc)

    def gradient(self) -> tuple[PolyFn, ...]:
        return tuple(self.diff(i) for i in range(self.nvars))

    def compose(self, substitutions: Sequence[PolyFn]) -> PolyFn:
        """Substitute ``substitutions[i]`` for the i-th variable.

        The result lives on the substitutions' common variable tuple.
        """
        if len(substitutions) != self.nvars:
            raise ValueError(
                f"need {self.nvars} substitutions, got {len(substitutions)}"
            )
        if not substitutions:
            raise ValueError("cannot compose a polynomial in zero variables")
        target = substitutions[0].variables
        for s in substitutions:
            if s.variables != target:
                raise ValueError("substitutions must share one coordinate list")
        powers: list[dict[int, PolyFn]] = [
            {0: PolyFn.const(target, 1), 1: s} for s in substitutions
        ]

        def power(i: int, e: int) -> PolyFn:
            cache = powers[i]
            if e not in cache:
                cache[e] = power(i, e - 1) * substitutions[i]
            return cache[e]

        acc: dict = {}
        for k, v in self._terms.items():
            term = PolyFn.const(target, v)
            for i, e in enumerate(k):
                if e:
                    term = term * power(i, e)
            for tk, tv in term._terms.items():
                _add_into(acc, tk, tv)
        return PolyFn._from_clean(target, acc)

    def evaluate(self, values: Sequence | Mapping[str, object]):
        """Evaluate at a point given as a sequence or a name -> value mapping."""
        if isinstance(values, Mapping):
            values = [values[v] for v in self.variables]
        if len(values) != self.nvars:
            raise ValueError(f"need {self.nvars} values, got {len(values)}")
        vals = [_coerce(v) for v in values]
        total = ZERO
        for k, c in self._terms.items():
            term = c
            for v, e in zip(vals, k):
                if e:
                    term = term * v**e
            total = total + term
        return total

    def partial_evaluate(self, assignments: Mapping[str, object]) -> PolyFn:
        """Fix some variables to values; the variable tuple is unchanged."""
        idx = {self._index(name): _coerce(val) for name, val in assignments.items()}
        acc: dict = {}
        for k, c in self._terms.items():
            coeff = c
            nk = list(k)
            for i, val in idx.items():
                if k[i]:
                    coeff = coeff * val ** k[i]
                    nk[i] = 0
            _add_into(acc, tuple(nk), coeff)
        return PolyFn._from_clean(self.variables, acc)

    def embed(self, variables: Sequence[str], mapping: Mapping[str, str] | None = None) -> PolyFn:
        """Re-express on a larger coordinate list.

        ``mapping`` sends each old variable name to a new one (identity by
        default). Variables of the target not hit by the mapping get exponent 0.
        """
        variables = tuple(variables)
        mapping = mapping or {v: v for v in self.variables}
        positions = []
        for v in self.variables:
            target = mapping.get(v, v)
            if target not in variables:
                raise ValueError(f"variable {target!r} not in {variables}")
            positions.append(variables.index(target))
        acc: dict = {}
        for k, c in self._terms.items():
            nk = [0] * len(variables)
            for pos, e in zip(positions, k):
                nk[pos] += e
            _add_into(acc, tuple(nk), c)
        return PolyFn._from_clean(variables, acc)

    def map_coefficients(self, fn) -> PolyFn:
        acc: dict = {}
        for k, c in self._terms.items():
            _add_into(acc, k, _coerce(fn(c)))
        return PolyFn._from_clean(self.variables, acc)

    # display --------------------------------------------------------------

    def __repr__(self):
        return f"PolyFn({self.variables}, {self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for k in sorted(self._terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
            c = self._terms[k]
            mono = "*".join(
                (v if e == 1 else f"{v}^{e}") for v, e in zip(self.variables, k) if e
            )
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        text = " + ".join(parts)
        return text.replace("+ -", "- ")


def poly_sum(items: Iterable[PolyFn], variables: Sequence[str]) -> PolyFn:
    acc: dict = {}
    variables = tuple(variables)
    for p in items:
        if p.variables != variables:
            raise ValueError(f"coordinate mismatch: {p.variables} vs {variables}")
        for k, v in p._terms.items():
            _add_into(acc, k, v)
    return PolyFn._from_clean(variables, acc)
