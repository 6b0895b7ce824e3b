"""Classical Lagrange inversion for a single series ``f(z)`` with ``f(0) = 0``.

With ``g(z) = z / f(z)`` the reverse series is

    f^{-1}(w) = sum_m  w^m / m * [z^(m-1)] g(z)^m

and, for a second series ``h``, ``h(f^{-1}(w))`` has two equivalent expansions
(:func:`revert_compose` and :func:`revert_compose_alt`).

All inputs are ``w``-free :class:`~implicit_series.series.ZWSeries`; a series is
treated as exact through its declared ``z_order`` and zero beyond it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .series import WSeries, ZWSeries, product_z_coeff, reciprocal


@dataclass(frozen=True)
class RevertibleSeries:
    f: ZWSeries

    def __post_init__(self):
        f = self.f
        if f.depends_on_w():
            raise DomainError("series to revert must not depend on w")
        if f.constant_term():
            raise DomainError("series to revert must vanish at z = 0")
        if not f.dz_at_origin():
            raise DomainError("linear coefficient a1 is zero; series is not revertible")

    @property
    def a1(self) -> Fraction:
        return self.f.dz_at_origin()


def _z_only(s: ZWSeries, z_order: int) -> ZWSeries:
    """Drop the (absent) w-dependence and re-declare at ``z_order``."""
    if s.depends_on_w():
        raise DomainError("expected a series in z alone")
    terms = {(k, ()): c for (k, _), c in s.terms.items()}
    return ZWSeries((), z_order, 0, terms)


def _kernel(f, order):
    """``g = z/f`` truncated at ``z**(order-1)`` as a w-free series."""
    if not isinstance(f, RevertibleSeries):
        f = RevertibleSeries(f)
    base = _z_only(f.f, order)
    return reciprocal(base.div_z()).truncate(z_order=max(order - 1, 0))


def revert(f, order: int, var: str = "w") -> WSeries:
    """Compositional inverse of ``f`` to order ``order``."""
    if order < 0:
        raise ValueError("order must be non-negative")
    g = _kernel(f, order)
    out = {}
    power = None
    for m in range(1, order + 1):
        power = g if power is None else power * g
        c = power.coeff(m - 1, ())
        if c:
            out[(m,)] = c / m
    return WSeries((var,), order, out)


def revert_compose(f, h: ZWSeries, order: int, var: str = "w") -> WSeries:
    """``h(f^{-1}(w))`` via ``h(0) + sum_m w^m/m [z^(m-1)] h'(z) g(z)^m``."""
    g = _kernel(f, order)
    h = _z_only(h, max(order, h.z_order))
    dh = h.d_dz()
    out = {(0,): h.constant_term()}
    power = None
    for m in range(1, order + 1):
        power = g if power is None else power * g
        c = product_z_coeff(dh, power, m - 1).constant_term()
        if c:
            out[(m,)] = c / m
    return WSeries((var,), order, out)


def revert_compose_alt(f, h: ZWSeries, order: int, var: str = "w") -> WSeries:
    """``h(f^{-1}(w))`` via ``h(0) + sum_m w^m [z^m] h(z) (g^m - z g' g^(m-1))``.

    Only integer multiples of coefficients of ``g`` appear, no ``1/m``.
    """
    # the top coefficient of g cancels between g^m and z g' g^(m-1)
    g = _kernel(f, order).with_orders(z_order=order)
    h = _z_only(h, max(order, h.z_order))
    zdg = g.d_dz().mul_z()
    out = {(0,): h.constant_term()}
    prev = ZWSeries.one((), order, 0)
    for m in range(1, order + 1):
        cur = prev * g
        c = product_z_coeff(h, cur, m) - product_z_coeff(h, zdg * prev, m)
        c = c.constant_term()
        if c:
            out[(m,)] = c
        prev = cur
    return WSeries((var,), order, out)
