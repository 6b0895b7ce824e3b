"""Exact truncated power series in ``z`` and ``w = (w_1, ..., w_M)``.

Coefficients are :class:`fractions.Fraction` values, normalized eagerly, so
equality of two series is plain equality of their term maps.  Two types are
provided:

* :class:`WSeries` -- a series in the ``w`` variables, truncated at total
  degree ``order``.
* :class:`ZWSeries` -- ``sum_k g_k(w) z**k`` with ``k <= z_order`` and every
  ``g_k`` truncated at total ``w``-degree ``w_order``.

A multi-index is a plain tuple of non-negative ints, one entry per declared
``w`` variable.  Values are immutable once built; all operations return new
objects.  Binary operations require identical variable lists and truncate to
the smaller of the two operands' orders.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from numbers import Rational
from types import MappingProxyType
from typing import Callable, Iterable, Mapping, Sequence

from .errors import DomainError, RangeError, StructureError

Rat = Fraction
MultiIndex = tuple


def as_rat(value) -> Fraction:
    """Coerce ``value`` to an exact rational, refusing floats."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"exact rational expected, got {type(value).__name__}")


def degree(alpha: MultiIndex) -> int:
    return sum(alpha)


def graded_lex_key(alpha: MultiIndex):
    """Total degree first, then lexicographic with the first variable largest."""
    return (sum(alpha), tuple(-a for a in alpha))


def multi_indices(nvars: int, max_degree: int, min_degree: int = 0):
    """All multi-indices of length ``nvars`` with ``min_degree <= |alpha| <= max_degree``,
    in graded lexicographic order."""
    out = []
    for d in range(min_degree, max_degree + 1):
        out.extend(sorted(_compositions(nvars, d), reverse=True))
    return out


def _compositions(nvars, total):
    if nvars == 0:
        if total == 0:
            yield ()
        return
    if nvars == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(nvars - 1, total - first):
            yield (first,) + rest


def _add_index(a, b):
    return tuple([x + y for x, y in zip(a, b)])


def _check_vars(a, b):
    if a.variables != b.variables:
        raise StructureError(
            f"variable lists differ: {list(a.variables)} vs {list(b.variables)}"
        )


# ---------------------------------------------------------------------------
# WSeries


class WSeries:
    __slots__ = ("variables", "order", "_terms")

    def __init__(self, variables: Sequence[str], order: int, terms=None):
        if order < 0:
            raise ValueError("order must be non-negative")
        self.variables = tuple(variables)
        self.order = int(order)
        nv = len(self.variables)
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for alpha, c in items:
                alpha = tuple(int(a) for a in alpha)
                if len(alpha) != nv or min(alpha, default=0) < 0:
                    raise StructureError(f"bad multi-index {alpha} for {nv} variables")
                if sum(alpha) > self.order:
                    continue
                c = as_rat(c)
                if c:
                    clean[alpha] = clean.get(alpha, 0) + c
            clean = {k: v for k, v in clean.items() if v}
        self._terms = clean

    @classmethod
    def _raw(cls, variables, order, terms):
        obj = cls.__new__(cls)
        obj.variables = variables
        obj.order = order
        obj._terms = terms
        return obj

    # constructors -----------------------------------------------------
    @classmethod
    def zero(cls, variables=("w",), order=0):
        return cls(variables, order)

    @classmethod
    def constant(cls, c, variables=("w",), order=0):
        return cls(variables, order, {(0,) * len(tuple(variables)): c})

    @classmethod
    def one(cls, variables=("w",), order=0):
        return cls.constant(1, variables, order)

    @classmethod
    def variable(cls, name, variables=("w",), order=1):
        variables = tuple(variables)
        alpha = tuple(1 if v == name else 0 for v in variables)
        if sum(alpha) != 1:
            raise StructureError(f"unknown variable {name!r}")
        return cls(variables, order, {alpha: 1})

    @classmethod
    def from_coefficients(cls, coeffs, var="w"):
        """Univariate series ``sum_n coeffs[n] * var**n`` with order ``len(coeffs) - 1``."""
        coeffs = list(coeffs)
        return cls((var,), len(coeffs) - 1, {(n,): c for n, c in enumerate(coeffs)})

    # access -----------------------------------------------------------
    @property
    def terms(self) -> Mapping[MultiIndex, Fraction]:
        return MappingProxyType(self._terms)

    def coeff(self, alpha) -> Fraction:
        alpha = self._index(alpha)
        if sum(alpha) > self.order:
            raise RangeError(f"|alpha| = {sum(alpha)} exceeds order {self.order}")
        return self._terms.get(alpha, Fraction(0))

    def __getitem__(self, alpha) -> Fraction:
        return self.coeff(alpha)

    def _index(self, alpha):
        if isinstance(alpha, int):
            alpha = (alpha,)
        alpha = tuple(alpha)
        if len(alpha) != len(self.variables):
            raise StructureError(f"multi-index {alpha} has wrong length")
        return alpha

    def coefficients(self):
        """Dense coefficient list of a univariate series, index = power."""
        if len(self.variables) != 1:
            raise StructureError("coefficients() needs a univariate series")
        return [self._terms.get((n,), Fraction(0)) for n in range(self.order + 1)]

    def items(self):
        """Terms in graded lexicographic order."""
        return sorted(self._terms.items(), key=lambda kv: graded_lex_key(kv[0]))

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * len(self.variables), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def valuation(self):
        """Smallest total degree carrying a nonzero coefficient (None for 0)."""
        return min((sum(a) for a in self._terms), default=None)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    def truncate(self, order: int) -> WSeries:
        order = min(order, self.order)
        return WSeries._raw(
            self.variables, order, {a: c for a, c in self._terms.items() if sum(a) <= order}
        )

    def with_order(self, order: int) -> WSeries:
        """Same terms, declared at another order (raising treats missing terms as 0)."""
        return WSeries(self.variables, order, self._terms)

    # arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, WSeries):
            _check_vars(self, other)
            return other
        if isinstance(other, (int, Rational)):
            return WSeries.constant(other, self.variables, self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        order = min(self.order, other.order)
        out = {a: c for a, c in self._terms.items() if sum(a) <= order}
        for a, c in other._terms.items():
            if sum(a) <= order:
                v = out.get(a, 0) + c
                if v:
                    out[a] = v
                else:
                    out.pop(a, None)
        return WSeries._raw(self.variables, order, out)

    __radd__ = __add__

    def __neg__(self):
        return WSeries._raw(self.variables, self.order, {a: -c for a, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            c = as_rat(other)
            if not c:
                return WSeries._raw(self.variables, self.order, {})
            return WSeries._raw(self.variables, self.order, {a: v * c for a, v in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        order = min(self.order, other.order)
        return WSeries._raw(self.variables, order, _mul_w(self._terms, other._terms, order))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            c = as_rat(other)
            if not c:
                raise DomainError("division by zero")
            return self * (1 / c)
        if isinstance(other, WSeries):
            return self * reciprocal(other)
        return NotImplemented

    def __pow__(self, m: int):
        return _power(self, m, WSeries.one(self.variables, self.order))

    def __eq__(self, other):
        if isinstance(other, WSeries):
            return (
                self.variables == other.variables
                and self.order == other.order
                and self._terms == other._terms
            )
        if isinstance(other, (int, Rational)):
            return self == WSeries.constant(other, self.variables, self.order)
        return NotImplemented

    def __hash__(self):
        return hash((self.variables, self.order, frozenset(self._terms.items())))

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"WSeries({format_wseries(self)}, order={self.order})"

    def evaluate(self, point):
        """Numeric value of the truncated polynomial at ``point`` (one value per variable)."""
        if not isinstance(point, (list, tuple)):
            point = (point,)
        total = 0
        for a, c in self._terms.items():
            term = complex(c) if isinstance(point[0], complex) else float(c)
            for x, e in zip(point, a):
                if e:
                    term *= x**e
            total += term
        return total


def _mul_w(ta, tb, order):
    out = {}
    bl = sorted(((sum(b), b, c) for b, c in tb.items()), key=lambda t: t[0])
    for a, ca in ta.items():
        room = order - sum(a)
        if room < 0:
            continue
        for db, b, cb in bl:
            if db > room:
                break
            key = _add_index(a, b)
            out[key] = out.get(key, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


# ---------------------------------------------------------------------------
# ZWSeries


class ZWSeries:
    """``sum_k g_k(w) z**k`` truncated at ``z_order`` in ``z`` and ``w_order`` in ``w``.

    Internally the term map is keyed by ``(k, alpha)``.
    """

    __slots__ = ("variables", "z_order", "w_order", "_terms")

    def __init__(self, variables: Sequence[str], z_order: int, w_order: int, terms=None):
        if z_order < 0 or w_order < 0:
            raise ValueError("orders must be non-negative")
        self.variables = tuple(variables)
        if "z" in self.variables:
            raise StructureError("'z' is reserved and cannot be a w-variable")
        self.z_order = int(z_order)
        self.w_order = int(w_order)
        nv = len(self.variables)
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for (k, alpha), c in items:
                k = int(k)
                alpha = tuple(int(a) for a in alpha)
                if len(alpha) != nv or k < 0 or min(alpha, default=0) < 0:
                    raise StructureError(f"bad index ({k}, {alpha}) for {nv} variables")
                if k > self.z_order or sum(alpha) > self.w_order:
                    continue
                c = as_rat(c)
                if c:
                    clean[(k, alpha)] = clean.get((k, alpha), 0) + c
            clean = {key: v for key, v in clean.items() if v}
        self._terms = clean

    @classmethod
    def _raw(cls, variables, z_order, w_order, terms):
        obj = cls.__new__(cls)
        obj.variables = variables
        obj.z_order = z_order
        obj.w_order = w_order
        obj._terms = terms
        return obj

    # constructors -----------------------------------------------------
    @classmethod
    def zero(cls, variables=("w",), z_order=0, w_order=0):
        return cls(variables, z_order, w_order)

    @classmethod
    def constant(cls, c, variables=("w",), z_order=0, w_order=0):
        return cls(variables, z_order, w_order, {(0, (0,) * len(tuple(variables))): c})

    @classmethod
    def one(cls, variables=("w",), z_order=0, w_order=0):
        return cls.constant(1, variables, z_order, w_order)

    @classmethod
    def z(cls, variables=("w",), z_order=1, w_order=0):
        return cls(variables, z_order, w_order, {(1, (0,) * len(tuple(variables))): 1})

    @classmethod
    def w(cls, name="w", variables=("w",), z_order=0, w_order=1):
        variables = tuple(variables)
        alpha = tuple(1 if v == name else 0 for v in variables)
        if sum(alpha) != 1:
            raise StructureError(f"unknown variable {name!r}")
        return cls(variables, z_order, w_order, {(0, alpha): 1})

    @classmethod
    def from_wseries(cls, s: WSeries, z_order=0) -> ZWSeries:
        return cls._raw(s.variables, z_order, s.order, {(0, a): c for a, c in s._terms.items()})

    @classmethod
    def from_coeffs(cls, coeffs: Mapping[int, WSeries], z_order=None, variables=None, w_order=None):
        """Build ``sum_k coeffs[k] z**k`` from per-power ``WSeries``."""
        coeffs = dict(coeffs)
        if variables is None:
            variables = next(iter(coeffs.values())).variables
        if w_order is None:
            w_order = min(s.order for s in coeffs.values())
        if z_order is None:
            z_order = max(coeffs, default=0)
        terms = {}
        for k, s in coeffs.items():
            if s.variables != tuple(variables):
                raise StructureError("coefficient series use different variables")
            for a, c in s._terms.items():
                terms[(k, a)] = c
        return cls(variables, z_order, w_order, terms)

    @classmethod
    def from_z_coefficients(cls, coeffs, variables=()):
        """A ``w``-free series ``sum_k coeffs[k] z**k``."""
        coeffs = list(coeffs)
        zero = (0,) * len(tuple(variables))
        return cls(variables, len(coeffs) - 1, 0, {(k, zero): c for k, c in enumerate(coeffs)})

    # access -----------------------------------------------------------
    @property
    def terms(self) -> Mapping[tuple, Fraction]:
        return MappingProxyType(self._terms)

    @property
    def coeffs(self) -> dict:
        """``{k: g_k}`` for every ``k`` with a nonzero ``g_k``."""
        grouped = {}
        for (k, a), c in self._terms.items():
            grouped.setdefault(k, {})[a] = c
        return {
            k: WSeries._raw(self.variables, self.w_order, grouped[k]) for k in sorted(grouped)
        }

    def z_coeff(self, k: int) -> WSeries:
        """``g_k(w)``, the coefficient of ``z**k``."""
        if k < 0 or k > self.z_order:
            raise RangeError(f"z-exponent {k} outside 0..{self.z_order}")
        return WSeries._raw(
            self.variables, self.w_order, {a: c for (j, a), c in self._terms.items() if j == k}
        )

    def coeff(self, k: int, alpha) -> Fraction:
        if isinstance(alpha, int):
            alpha = (alpha,)
        alpha = tuple(alpha)
        if len(alpha) != len(self.variables):
            raise StructureError(f"multi-index {alpha} has wrong length")
        if k < 0 or k > self.z_order or sum(alpha) > self.w_order:
            raise RangeError(
                f"index (z^{k}, w^{list(alpha)}) outside orders ({self.z_order}, {self.w_order})"
            )
        return self._terms.get((k, alpha), Fraction(0))

    def items(self):
        """Terms sorted by ``(k, lexicographic alpha)``."""
        return sorted(self._terms.items())

    def constant_term(self) -> Fraction:
        return self._terms.get((0, (0,) * len(self.variables)), Fraction(0))

    def dz_at_origin(self) -> Fraction:
        return self._terms.get((1, (0,) * len(self.variables)), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def z_degree(self):
        return max((k for k, _ in self._terms), default=-1)

    def depends_on_w(self) -> bool:
        return any(sum(a) for _, a in self._terms)

    def has_w_factor(self) -> bool:
        """True when ``G(z, 0)`` vanishes identically."""
        return all(sum(a) > 0 for _, a in self._terms)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    def truncate(self, z_order=None, w_order=None) -> ZWSeries:
        zo = self.z_order if z_order is None else min(z_order, self.z_order)
        wo = self.w_order if w_order is None else min(w_order, self.w_order)
        return ZWSeries._raw(
            self.variables,
            zo,
            wo,
            {(k, a): c for (k, a), c in self._terms.items() if k <= zo and sum(a) <= wo},
        )

    def with_orders(self, z_order=None, w_order=None) -> ZWSeries:
        """Re-declare the truncation orders; raising them treats absent terms as zero."""
        zo = self.z_order if z_order is None else z_order
        wo = self.w_order if w_order is None else w_order
        return ZWSeries(self.variables, zo, wo, self._terms)

    # arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, ZWSeries):
            _check_vars(self, other)
            return other
        if isinstance(other, WSeries):
            _check_vars(self, other)
            return ZWSeries.from_wseries(other, self.z_order)
        if isinstance(other, (int, Rational)):
            return ZWSeries.constant(other, self.variables, self.z_order, self.w_order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        zo = min(self.z_order, other.z_order)
        wo = min(self.w_order, other.w_order)
        out = {
            key: c for key, c in self._terms.items() if key[0] <= zo and sum(key[1]) <= wo
        }
        for key, c in other._terms.items():
            if key[0] <= zo and sum(key[1]) <= wo:
                v = out.get(key, 0) + c
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return ZWSeries._raw(self.variables, zo, wo, out)

    __radd__ = __add__

    def __neg__(self):
        return ZWSeries._raw(
            self.variables, self.z_order, self.w_order, {k: -c for k, c in self._terms.items()}
        )

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            c = as_rat(other)
            if not c:
                return ZWSeries._raw(self.variables, self.z_order, self.w_order, {})
            return ZWSeries._raw(
                self.variables,
                self.z_order,
                self.w_order,
                {k: v * c for k, v in self._terms.items()},
            )
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        zo = min(self.z_order, other.z_order)
        wo = min(self.w_order, other.w_order)
        return ZWSeries._raw(self.variables, zo, wo, _mul_zw(self._terms, other._terms, zo, wo))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            c = as_rat(other)
            if not c:
                raise DomainError("division by zero")
            return self * (1 / c)
        if isinstance(other, (ZWSeries, WSeries)):
            return self * reciprocal(self._coerce(other))
        return NotImplemented

    def __pow__(self, m: int):
        return _power(self, m, ZWSeries.one(self.variables, self.z_order, self.w_order))

    def __eq__(self, other):
        if isinstance(other, ZWSeries):
            return (
                self.variables == other.variables
                and self.z_order == other.z_order
                and self.w_order == other.w_order
                and self._terms == other._terms
            )
        if isinstance(other, (int, Rational)):
            return self == ZWSeries.constant(other, self.variables, self.z_order, self.w_order)
        return NotImplemented

    def __hash__(self):
        return hash((self.variables, self.z_order, self.w_order, frozenset(self._terms.items())))

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"ZWSeries({format_zwseries(self)}, z_order={self.z_order}, w_order={self.w_order})"

    # calculus ---------------------------------------------------------
    def d_dz(self) -> ZWSeries:
        out = {(k - 1, a): k * c for (k, a), c in self._terms.items() if k > 0}
        return ZWSeries._raw(self.variables, max(self.z_order - 1, 0), self.w_order, out)

    def mul_z(self, shift: int = 1) -> ZWSeries:
        """Multiply by ``z**shift``; the z-order grows by ``shift``."""
        out = {(k + shift, a): c for (k, a), c in self._terms.items()}
        return ZWSeries._raw(self.variables, self.z_order + shift, self.w_order, out)

    def div_z(self) -> ZWSeries:
        """Exact division by ``z``; requires ``g_0 = 0``."""
        if any(k == 0 for k, _ in self._terms):
            raise DomainError("series is not divisible by z (nonzero z^0 coefficient)")
        out = {(k - 1, a): c for (k, a), c in self._terms.items()}
        return ZWSeries._raw(self.variables, max(self.z_order - 1, 0), self.w_order, out)

    def substitute_z(self, s: WSeries) -> WSeries:
        return substitute_z(self, s)


def _mul_zw(ta, tb, zo, wo):
    out = {}
    bl = sorted(((k, b, sum(b), c) for (k, b), c in tb.items()), key=lambda t: t[0])
    for (ka, a), ca in ta.items():
        zr = zo - ka
        wr = wo - sum(a)
        if zr < 0 or wr < 0:
            continue
        for kb, b, db, cb in bl:
            if kb > zr:
                break
            if db > wr:
                continue
            key = (ka + kb, _add_index(a, b))
            out[key] = out.get(key, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


def _power(x, m, one):
    if not isinstance(m, int) or m < 0:
        raise DomainError("exponent must be a non-negative integer")
    result = one
    base = x
    while m:
        if m & 1:
            result = result * base
        m >>= 1
        if m:
            base = base * base
    return result


# ---------------------------------------------------------------------------
# module-level operations


def add(a, b):
    return a + b


def mul(a, b):
    return a * b


def power(a, m: int):
    return a**m


def d_dz(a: ZWSeries) -> ZWSeries:
    return a.d_dz()


def coeff(a: ZWSeries, k: int, alpha) -> Fraction:
    return a.coeff(k, alpha)


def product_z_coeff(a: ZWSeries, b: ZWSeries, k: int) -> WSeries:
    """``[z**k] (a * b)`` without forming the full product."""
    _check_vars(a, b)
    wo = min(a.w_order, b.w_order)
    ga = {}
    for (j, al), c in a._terms.items():
        if j <= k:
            ga.setdefault(j, {})[al] = c
    gb = {}
    for (j, al), c in b._terms.items():
        if j <= k:
            gb.setdefault(j, {})[al] = c
    out = {}
    for j, ta in ga.items():
        tb = gb.get(k - j)
        if tb is None:
            continue
        for al, v in _mul_w(ta, tb, wo).items():
            out[al] = out.get(al, 0) + v
    return WSeries._raw(a.variables, wo, {al: v for al, v in out.items() if v})


def substitute_z(a: ZWSeries, s: WSeries) -> WSeries:
    """``sum_k g_k(w) s(w)**k`` to order ``min(a.w_order, s.order)``."""
    _check_vars(a, s)
    if s.constant_term():
        raise DomainError("substituted series must have zero constant term")
    order = min(a.w_order, s.order)
    s = s.truncate(order)
    coeffs = a.coeffs
    if not coeffs:
        return WSeries(a.variables, order)
    # degree of s**k is at least k, so powers beyond the order vanish
    top = min(max(coeffs), order)
    result = WSeries(a.variables, order)
    for k in range(top, -1, -1):
        result = result * s
        g = coeffs.get(k)
        if g is not None:
            result = result + g.truncate(order)
    return result


def _elementary(u, coefficient: Callable[[int], Fraction], nmax: int):
    """``sum_{k=0}^{nmax} coefficient(k) * u**k`` for ``u`` with zero constant term."""
    result = u * 0 + coefficient(0)
    p = None
    for k in range(1, nmax + 1):
        p = u if p is None else p * u
        if p.is_zero():
            break
        c = coefficient(k)
        if c:
            result = result + p * c
    return result


def _max_power(s):
    if isinstance(s, WSeries):
        return s.order
    return s.z_order + s.w_order


def exp_series(s):
    """``exp(s)`` for a series with zero constant term."""
    if s.constant_term():
        raise DomainError("exp needs an argument with zero constant term")
    return _elementary(s, lambda k: Fraction(1, math.factorial(k)), _max_power(s))


def log_series(s):
    """``log(s)`` for a series with constant term 1."""
    if s.constant_term() != 1:
        raise DomainError("log needs an argument with constant term 1")
    u = s - 1
    return _elementary(
        u, lambda k: Fraction((-1) ** (k + 1), k) if k else Fraction(0), _max_power(s)
    )


def reciprocal(s):
    """``1/s`` for a series with nonzero constant term."""
    c0 = s.constant_term()
    if not c0:
        raise DomainError("reciprocal needs a nonzero constant term")
    inv = 1 / c0
    u = s * inv - 1
    return _elementary(u, lambda k: inv * (-1) ** k, _max_power(s))


# ---------------------------------------------------------------------------
# text forms


def format_rat(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def _monomial(variables, alpha):
    parts = []
    for v, e in zip(variables, alpha):
        if e == 1:
            parts.append(v)
        elif e:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def _format_terms(pairs):
    if not pairs:
        return "0"
    out = []
    for mono, c in pairs:
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if mono and a == 1:
            body = mono
        elif mono:
            body = f"{a}*{mono}"
        else:
            body = str(a)
        out.append((sign, body))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


def format_wseries(s: WSeries) -> str:
    return _format_terms([(_monomial(s.variables, a), c) for a, c in s.items()])


def format_zwseries(s: ZWSeries) -> str:
    pairs = []
    for (k, a), c in sorted(s._terms.items(), key=lambda kv: (kv[0][0], graded_lex_key(kv[0][1]))):
        mono = _monomial(("z",) + s.variables, (k,) + a)
        pairs.append((mono, c))
    return _format_terms(pairs)


def _as_zw(s):
    if isinstance(s, WSeries):
        return ZWSeries.from_wseries(s, 0)
    return s


def to_records(s) -> list:
    """Header record followed by one record per term, sorted by ``(z, alpha)``."""
    zw = _as_zw(s)
    records = [{"vars": list(zw.variables), "zOrder": zw.z_order, "wOrder": zw.w_order}]
    for (k, a), c in zw.items():
        records.append(
            {"z": k, "w": list(a), "num": str(c.numerator), "den": str(c.denominator)}
        )
    return records


def dumps(s) -> str:
    """Line-oriented serialization: one JSON object per line."""
    return "".join(json.dumps(r, separators=(",", ":")) + "\n" for r in to_records(s))


def loads(text: str) -> ZWSeries:
    lines = [json.loads(line) for line in text.splitlines() if line.strip()]
    if not lines:
        raise ValueError("empty series document")
    head, body = lines[0], lines[1:]
    terms = {
        (r["z"], tuple(r["w"])): Fraction(int(r["num"]), int(r["den"])) for r in body
    }
    return ZWSeries(head["vars"], head["zOrder"], head["wOrder"], terms)


def canonical_lines(s) -> list:
    """``w^[alpha] z^k : num/den`` lines in graded-lex order."""
    zw = _as_zw(s)
    rows = sorted(zw._terms.items(), key=lambda kv: (graded_lex_key(kv[0][1]), kv[0][0]))
    return [
        f"w^[{','.join(map(str, a))}] z^{k} : {format_rat(c)}" for (k, a), c in rows
    ]


def csv_lines(s) -> list:
    zw = _as_zw(s)
    header = ",".join(["z", *zw.variables, "num", "den"])
    rows = sorted(zw._terms.items(), key=lambda kv: (graded_lex_key(kv[0][1]), kv[0][0]))
    return [header] + [
        ",".join([str(k), *map(str, a), str(c.numerator), str(c.denominator)])
        for (k, a), c in rows
    ]
