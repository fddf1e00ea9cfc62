"""Formal algebra of one-parameter group entries.

Elements are Q(i)-linear combinations of products, per parameter ``t``, of

    t**a * exp(k*t) * cos(t)**c * sin(t)**s        (a, s >= 0, k in Z, c in {0, 1})

The relations exp(k t) exp(l t) = exp((k+l) t) and cos^2 = 1 - sin^2 are built
into the normal form, so equality is a term-map comparison. A fixed group
element is represented by the parameter left symbolic: ``exp(t)`` and
``exp(-t)`` then form the opaque unit pair (a, a^-1) with a*a^-1 = 1.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .scalar import I, ONE, QI, ZERO

# derivative at 0 and value at 0 of each generator
DERIVATIVE_AT_ZERO = {"t": 1, "exp(t)": 1, "exp(-t)": -1, "cos": 0, "sin": 1}
VALUE_AT_ZERO = {"t": 0, "exp(t)": 1, "exp(-t)": 1, "cos": 1, "sin": 0}

# a factor is (a, k, c, s); a monomial is a sorted tuple of (param, factor)


def _reduce_factor(a: int, k: int, c: int, s: int) -> list[tuple[tuple[int, int, int, int], int]]:
    """Rewrite cos**c with c <= 1 using cos^2 = 1 - sin^2."""
    out = [((a, k, c, s), 1)]
    while any(f[2] >= 2 for f, _ in out):
        nxt = []
        for (fa, fk, fc, fs), sign in out:
            if fc >= 2:
                nxt.append(((fa, fk, fc - 2, fs), sign))
                nxt.append(((fa, fk, fc - 2, fs + 2), -sign))
            else:
                nxt.append(((fa, fk, fc, fs), sign))
        out = nxt
    return out


def _mul_monomials(m1: tuple, m2: tuple) -> dict[tuple, int]:
    merged: dict[str, tuple[int, int, int, int]] = dict(m1)
    for p, (a, k, c, s) in m2:
        if p in merged:
            a0, k0, c0, s0 = merged[p]
            merged[p] = (a0 + a, k0 + k, c0 + c, s0 + s)
        else:
            merged[p] = (a, k, c, s)
    params = sorted(merged)
    options = [_reduce_factor(*merged[p]) for p in params]
    result: dict[tuple, int] = {}
    for combo in product(*options):
        sign = 1
        mono = []
        for p, (factor, sg) in zip(params, combo):
            sign *= sg
            if factor != (0, 0, 0, 0):
                mono.append((p, factor))
        key = tuple(mono)
        result[key] = result.get(key, 0) + sign
    return {k: v for k, v in result.items() if v}


def _factor_value0(a: int, k: int, c: int, s: int) -> int:
    return 1 if a == 0 and s == 0 else 0


def _factor_deriv0(a: int, k: int, c: int, s: int) -> int:
    # product rule on the generator table; t and sin vanish at 0
    vanishing = a + s
    if vanishing == 0:
        return k * DERIVATIVE_AT_ZERO["exp(t)"] + c * DERIVATIVE_AT_ZERO["cos"]
    if vanishing == 1:
        return DERIVATIVE_AT_ZERO["t"] if a else DERIVATIVE_AT_ZERO["sin"]
    return 0


class ExpTrig:
    """Immutable element of the formal exp/trig algebra over Q(i)."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: dict | None = None):
        clean = {}
        for mono, c in (terms or {}).items():
            c = QI.coerce(c)
            if c:
                clean[mono] = clean.get(mono, ZERO) + c
        self._terms = {m: c for m, c in clean.items() if c}
        self._hash = None

    # constructors ---------------------------------------------------------

    @classmethod
    def const(cls, value) -> ExpTrig:
        return cls({(): value})

    @classmethod
    def param(cls, name: str) -> ExpTrig:
        """The parameter itself, e.g. a translation amount."""
        return cls({((name, (1, 0, 0, 0)),): ONE})

    @classmethod
    def exp(cls, name: str, k: int = 1) -> ExpTrig:
        if k == 0:
            return cls.const(1)
        return cls({((name, (0, k, 0, 0)),): ONE})

    @classmethod
    def cos(cls, name: str) -> ExpTrig:
        return cls({((name, (0, 0, 1, 0)),): ONE})

    @classmethod
    def sin(cls, name: str) -> ExpTrig:
        return cls({((name, (0, 0, 0, 1)),): ONE})

    @classmethod
    def expi(cls, name: str, sign: int = 1) -> ExpTrig:
        """exp(sign * i * t) = cos t + sign * i sin t."""
        return cls.cos(name) + cls.sin(name) * (I * sign)

    # arithmetic -----------------------------------------------------------

    @staticmethod
    def _wrap(other):
        if isinstance(other, ExpTrig):
            return other
        if isinstance(other, (int, Fraction, QI)):
            return ExpTrig.const(other)
        return None

    def __add__(self, other):
        other = self._wrap(other)
        if other is None:
            return NotImplemented
        acc = dict(self._terms)
        for m, c in other._terms.items():
            acc[m] = acc.get(m, ZERO) + c
        return ExpTrig(acc)

    __radd__ = __add__

    def __neg__(self):
        return ExpTrig({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._wrap(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._wrap(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QI)):
            c = QI.coerce(other)
            return ExpTrig({m: v * c for m, v in self._terms.items()})
        if not isinstance(other, ExpTrig):
            return NotImplemented
        acc: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                cc = c1 * c2
                for m, mult in _mul_monomials(m1, m2).items():
                    acc[m] = acc.get(m, ZERO) + cc * mult
        return ExpTrig(acc)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = ExpTrig.const(1)
        for _ in range(exponent):
            result = result * self
        return result

    # evaluation at the identity ------------------------------------------

    def parameters(self) -> set[str]:
        return {p for m in self._terms for p, _ in m}

    def at_zero(self) -> QI:
        """Value with every parameter set to 0."""
        total = ZERO
        for mono, c in self._terms.items():
            v = 1
            for _, f in mono:
                v *= _factor_value0(*f)
            if v:
                total = total + c
        return total

    def derivative_at_zero(self, name: str) -> QI:
        """d/d(name) at the point where every parameter is 0."""
        total = ZERO
        for mono, c in self._terms.items():
            d = 0
            rest = 1
            for p, f in mono:
                if p == name:
                    d = _factor_deriv0(*f)
                else:
                    rest *= _factor_value0(*f)
            if d and rest:
                total = total + c * d
        return total

    def is_constant(self) -> bool:
        return all(m == () for m in self._terms)

    def constant_value(self) -> QI:
        return self._terms.get((), ZERO)

    # comparison -----------------------------------------------------------

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        other = self._wrap(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"ExpTrig({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for mono in sorted(self._terms, key=repr):
            c = self._terms[mono]
            factors = []
            for p, (a, k, cc, s) in mono:
                if a:
                    factors.append(p if a == 1 else f"{p}^{a}")
                if k:
                    factors.append(f"exp({p})" if k == 1 else f"exp({k}*{p})")
                if cc:
                    factors.append(f"cos({p})")
                if s:
                    factors.append(f"sin({p})" if s == 1 else f"sin({p})^{s}")
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")
