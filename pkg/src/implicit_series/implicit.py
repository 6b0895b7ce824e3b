"""Formal-power-series solutions of ``z = G(z, w)`` and ``F(z, w) = 0``.

Given ``G`` with ``G(0,0) = 0`` the unique series ``phi(w)`` with zero constant
term and ``phi = G(phi, w)`` is produced by several independent routes:

``solve_finite``
    ``[w^a] phi = sum_{m=1}^{2|a|-1} 1/m [z^(m-1) w^a] G^m``; needs
    ``(dG/dz)(0,0) = 0``.
``solve_finite_integer``
    ``[w^a] phi = sum_{m=1}^{2|a|} [z^m w^a] (G^m - z G_z G^(m-1))``; no
    divisions, so integer ``G`` gives integer ``phi``.
``solve_contraction``
    the infinite sums for ``|(dG/dz)(0,0)| < 1``, summed in floating point and
    checked against the exact normalized route.
``solve_by_recurrence``
    undetermined coefficients, one total degree at a time.  It shares no code
    with the closed forms and serves as their oracle.

When ``G(z, 0)`` vanishes identically every factor of ``G`` carries a power of
``w`` and the sums stop at ``m = |a|``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import ConditionError, ConvergenceError, DomainError, SingularError
from .series import (
    WSeries,
    ZWSeries,
    multi_indices,
    product_z_coeff,
    substitute_z,
)

log = logging.getLogger(__name__)

VARIANTS = ("finite", "integer", "contraction", "recurrence")


@dataclass
class ImplicitProblem:
    """The equation ``z = G(z, w)`` to be solved through total ``w``-degree ``order``."""

    G: ZWSeries
    order: int = None
    _powers: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.order is None:
            self.order = self.G.w_order
        if self.order < 0:
            raise ValueError("order must be non-negative")
        if self.G.w_order < self.order:
            raise DomainError(
                f"G is truncated at w-degree {self.G.w_order}, below the requested order {self.order}"
            )
        if self.G.z_order < self.order:
            raise DomainError(
                f"G is truncated at z^{self.G.z_order}; order {self.order} needs terms through z^{self.order}"
            )
        self.G = self.G.truncate(w_order=self.order)

    @property
    def b10(self) -> Fraction:
        return self.G.dz_at_origin()

    @property
    def g00(self) -> Fraction:
        return self.G.constant_term()

    @property
    def variables(self):
        return self.G.variables

    def powers(self, upto: int, z_order: int) -> list:
        """``[G^0, G^1, ..., G^upto]`` truncated at ``z**z_order``; cached."""
        cached = self._powers.get(z_order)
        if cached is None:
            G = self.G.with_orders(z_order=z_order)
            cached = [ZWSeries.one(self.variables, z_order, self.order), G]
            self._powers[z_order] = cached
        G = cached[1]
        while len(cached) <= upto:
            cached.append(cached[-1] * G)
        return cached[: upto + 1]


@dataclass
class SolveReport:
    phi: WSeries
    variant: str
    m_ranges: dict = field(default_factory=dict)
    composed: WSeries = None
    numeric: dict = None
    terms_used: dict = None
    max_deviation: float = None
    tolerance: float = None

    @property
    def agrees(self):
        if self.max_deviation is None:
            return True
        return self.max_deviation <= self.tolerance


# ---------------------------------------------------------------------------
# transforms


def gamma_transform(F: ZWSeries, gamma: ZWSeries) -> ZWSeries:
    """``G = z - gamma * F``, turning ``F = 0`` into the fixed-point form."""
    if F.constant_term():
        raise DomainError("F(0,0) must vanish")
    if not gamma.constant_term():
        raise DomainError("gamma(0,0) must be nonzero")
    prod = gamma * F
    z = ZWSeries.z(prod.variables, prod.z_order, prod.w_order)
    G = z - prod
    b10 = G.dz_at_origin()
    log.debug("gamma_transform: (dG/dz)(0,0) = %s", b10)
    return G


def normalize(G: ZWSeries) -> ZWSeries:
    """``(G - b10 z) / (1 - b10)``, which has ``(dG/dz)(0,0) = 0`` and the same fixed point."""
    b10 = G.dz_at_origin()
    if b10 == 1:
        raise SingularError("(dG/dz)(0,0) = 1: the fixed-point problem is singular")
    if b10 == 0:
        return G
    z = ZWSeries.z(G.variables, G.z_order, G.w_order)
    return (G - z * b10) * (1 / (1 - b10))


# ---------------------------------------------------------------------------
# closed forms


def _check_origin(p: ImplicitProblem):
    if p.g00:
        raise DomainError(f"G(0,0) = {p.g00}; every solver needs G(0,0) = 0")


def _require_normalized(p: ImplicitProblem, variant: str):
    _check_origin(p)
    if p.b10:
        raise ConditionError(
            f"variant '{variant}' needs (dG/dz)(0,0) = 0 but it is {p.b10}; "
            "apply normalize(G) first or use the 'contraction'/'recurrence' variant"
        )


def term_bound(p: ImplicitProblem, degree: int, variant: str = "finite") -> int:
    """Largest ``m`` that can contribute to a coefficient of total degree ``degree``."""
    if degree <= 0:
        return 0
    if p.G.has_w_factor():
        return degree
    return 2 * degree - 1 if variant == "finite" else 2 * degree


def _prepare_H(p: ImplicitProblem, H, z_order):
    if H is None:
        return ZWSeries.z(p.variables, z_order, p.order)
    if H.variables != p.variables:
        raise DomainError("H and G use different variables")
    if H.w_order < p.order or H.z_order < p.order:
        raise DomainError(
            f"H is truncated at (z^{H.z_order}, w-degree {H.w_order}); order {p.order} needs both >= {p.order}"
        )
    return H.with_orders(z_order=max(z_order, p.order), w_order=p.order)


def _lagrange_sum(p: ImplicitProblem, H, variant: str, extra_terms: int = 0):
    """Coefficientwise finite sums; each ``[w^a]`` only collects ``m <= bound(|a|)``."""
    N = p.order
    top = term_bound(p, N, variant) + extra_terms
    z_need = top if variant == "integer" else max(top - 1, 0)
    # H' must reach z^(top-1), so H itself needs z^top
    H = _prepare_H(p, H, top)
    powers = p.powers(top, z_need)
    integral = variant == "integer" and p.G.is_integral() and H.is_integral()

    acc = dict(H.z_coeff(0).truncate(N).terms)
    limits = {d: term_bound(p, d, variant) + extra_terms for d in range(N + 1)}
    if variant == "finite":
        dH = H.d_dz()
    else:
        HGz = H * powers[1].d_dz()
    for m in range(1, top + 1):
        if variant == "finite":
            contrib = product_z_coeff(dH, powers[m], m - 1)
            scale = Fraction(1, m)
        else:
            contrib = product_z_coeff(H, powers[m], m) - product_z_coeff(HGz, powers[m - 1], m - 1)
            scale = 1
            if integral and not contrib.is_integral():
                raise ArithmeticError("division-free sum produced a non-integer term")
        for alpha, c in contrib.terms.items():
            if m <= limits[sum(alpha)]:
                v = acc.get(alpha, 0) + c * scale
                if v:
                    acc[alpha] = v
                else:
                    acc.pop(alpha)
    ranges = {d: (1, limits[d]) for d in range(1, N + 1)}
    return WSeries(p.variables, N, acc), ranges


def solve_finite(p: ImplicitProblem, H: ZWSeries = None, extra_terms: int = 0) -> SolveReport:
    """Rational finite-sum solution; requires ``(dG/dz)(0,0) = 0``."""
    _require_normalized(p, "finite")
    phi, ranges = _lagrange_sum(p, None, "finite", extra_terms)
    report = SolveReport(phi, "finite", ranges)
    if H is not None:
        report.composed, _ = _lagrange_sum(p, H, "finite", extra_terms)
    return report


def solve_finite_integer(p: ImplicitProblem, H: ZWSeries = None, extra_terms: int = 0) -> SolveReport:
    """Division-free finite-sum solution; requires ``(dG/dz)(0,0) = 0``."""
    _require_normalized(p, "integer")
    phi, ranges = _lagrange_sum(p, None, "integer", extra_terms)
    report = SolveReport(phi, "integer", ranges)
    if H is not None:
        report.composed, _ = _lagrange_sum(p, H, "integer", extra_terms)
    return report


def solve_by_recurrence(p: ImplicitProblem) -> WSeries:
    """Undetermined coefficients: ``phi = (1-b10)^-1 [G(phi, w) - b10 phi]`` degree by degree."""
    _check_origin(p)
    b10 = p.b10
    if b10 == 1:
        raise SingularError("(dG/dz)(0,0) = 1: 1 - b10 is not invertible")
    inv = 1 / (1 - b10)
    G = p.G
    rest = G - ZWSeries.z(G.variables, G.z_order, G.w_order) * b10
    phi = WSeries(p.variables, 0)
    for d in range(1, p.order + 1):
        # degree-d coefficients of the right side only see degrees < d of phi
        phi = substitute_z(rest.truncate(w_order=d), phi.with_order(d)) * inv
    return phi.with_order(p.order)


def compose_H(p: ImplicitProblem, H: ZWSeries, variant: str = "finite") -> WSeries:
    """``H(phi(w), w)`` through total degree ``p.order``."""
    if variant == "finite":
        return solve_finite(p, H).composed
    if variant == "integer":
        return solve_finite_integer(p, H).composed
    if variant == "recurrence":
        phi = solve_by_recurrence(p)
        H = _prepare_H(p, H, p.order)
        return substitute_z(H, phi)
    if variant == "contraction":
        _check_origin(p)
        if abs(p.b10) >= 1:
            raise ConditionError(f"|(dG/dz)(0,0)| = {abs(p.b10)} >= 1; the series need not converge")
        return solve_finite(ImplicitProblem(normalize(p.G), p.order), H).composed
    raise ValueError(f"unknown variant {variant!r}; choose from {VARIANTS}")


# ---------------------------------------------------------------------------
# infinite sums in floating point


class _DenseFloat:
    """``G`` as a dense float array indexed by (z-power, w multi-index)."""

    def __init__(self, variables, order):
        self.index = {a: i for i, a in enumerate(multi_indices(len(variables), order))}
        self.alphas = list(self.index)
        table = []
        for a, i in self.index.items():
            for b, j in self.index.items():
                s = tuple(x + y for x, y in zip(a, b))
                k = self.index.get(s)
                if k is not None:
                    table.append((i, j, k))
        self.table = table

    def array(self, s: ZWSeries, z_len):
        A = np.zeros((z_len, len(self.index)))
        for (k, a), c in s.terms.items():
            if k < z_len:
                A[k, self.index[a]] = float(c)
        return A

    def mul(self, A, B):
        z_len = A.shape[0]
        C = np.zeros_like(A)
        a_cols = np.flatnonzero(np.any(A, axis=0))
        b_cols = set(np.flatnonzero(np.any(B, axis=0)).tolist())
        a_set = set(a_cols.tolist())
        for i, j, k in self.table:
            if i in a_set and j in b_cols:
                C[:, k] += np.convolve(A[:, i], B[:, j])[:z_len]
        return C


def _float_partial_sums(p: ImplicitProblem, tol: float, m_cap: int = 1 << 14):
    b10 = abs(float(p.b10))
    dense = _DenseFloat(p.variables, p.order)
    targets = [a for a in dense.alphas if sum(a) >= 1]
    M = 64
    while M <= m_cap:
        G = dense.array(p.G.with_orders(z_order=M), M)
        sums = dict.fromkeys(targets, 0.0)
        biggest = dict.fromkeys(targets, 0.0)
        used = {}
        P = None
        for m in range(1, M + 1):
            P = G if P is None else dense.mul(P, G)
            for a in targets:
                if a in used:
                    continue
                t = P[m - 1, dense.index[a]] / m
                sums[a] += t
                biggest[a] = max(biggest[a], abs(t))
                c = 2 * sum(a) - 1
                # the terms are |b10|^m times a polynomial of degree < c in m
                if m >= c and b10 ** (m - c) * math.comb(m, c) * biggest[a] < tol:
                    used[a] = m
            if len(used) == len(targets):
                return sums, used
        log.debug("partial sums not settled by m = %d; doubling", M)
        M *= 2
    raise ConvergenceError(f"partial sums did not meet tolerance {tol:g} within {m_cap} terms")


def _relative_gap(value, exact):
    exact = float(exact)
    return abs(value - exact) / max(1.0, abs(exact))


def solve_contraction(p: ImplicitProblem, tol_exponent: int = -12) -> SolveReport:
    """Exact normalized solution plus floating partial sums of the infinite series.

    Each ``[w^a]`` series is summed until
    ``|b10|^(m-c) * C(m, c) * max_j |t_j| < 10**tol_exponent`` with ``c = 2|a| - 1``.
    The report carries both routes and their largest gap, measured relative to
    ``max(1, |exact|)``.
    """
    _check_origin(p)
    if abs(p.b10) >= 1:
        raise ConditionError(
            f"|(dG/dz)(0,0)| = {abs(p.b10)} >= 1: the series sum_m G^m/m diverges in general"
        )
    tol = 10.0**tol_exponent
    exact = solve_finite(ImplicitProblem(normalize(p.G), p.order))
    sums, used = _float_partial_sums(p, tol)
    deviation = max(
        (_relative_gap(v, exact.phi.terms.get(a, 0)) for a, v in sums.items()), default=0.0
    )
    return SolveReport(
        exact.phi,
        "contraction",
        exact.m_ranges,
        numeric=sums,
        terms_used=used,
        max_deviation=deviation,
        tolerance=tol,
    )


def solve(p: ImplicitProblem, variant: str = "finite", **kwargs) -> SolveReport:
    if variant == "finite":
        return solve_finite(p, **kwargs)
    if variant == "integer":
        return solve_finite_integer(p, **kwargs)
    if variant == "contraction":
        return solve_contraction(p, **kwargs)
    if variant == "recurrence":
        return SolveReport(solve_by_recurrence(p), "recurrence")
    raise ValueError(f"unknown variant {variant!r}; choose from {VARIANTS}")


# ---------------------------------------------------------------------------
# the auxiliary t-parameter check


def _interpolate(xs, ys):
    """Coefficients (low to high) of the polynomial through the points, exactly."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        # poly = poly * (t - xs[i]) + coef[i]
        shifted = [Fraction(0)] + poly[:-1]
        poly = [s - xs[i] * q for s, q in zip(shifted, poly)]
        poly[0] += coef[i]
    return poly


def gessel_check(p: ImplicitProblem, alpha) -> bool:
    """Check ``[w^a] phi`` through the auxiliary equation ``z = t G(z, w)``.

    ``[w^a] Phi(w, t)`` is obtained by the recurrence at several rational ``t``
    (none equal to 1) and interpolated.  The result must be a polynomial of
    degree at most ``2|a| - 1`` whose ``t^m`` coefficient is
    ``1/m [z^(m-1) w^a] G^m`` and whose value at ``t = 1`` is the
    :func:`solve_finite` coefficient.
    """
    _require_normalized(p, "finite")
    alpha = tuple(alpha) if not isinstance(alpha, int) else (alpha,)
    d = sum(alpha)
    if d > p.order:
        raise DomainError(f"|alpha| = {d} exceeds the problem order {p.order}")
    target = solve_finite(p).phi.coeff(alpha)
    if d == 0:
        return target == 0
    top = 2 * d - 1
    ts = [Fraction(j + 2) for j in range(top + 2)]
    values = [
        solve_by_recurrence(ImplicitProblem(p.G.truncate(w_order=d) * t, d)).coeff(alpha)
        for t in ts
    ]
    poly = _interpolate(ts, values)
    if poly[0] != 0 or poly[-1] != 0:
        return False
    powers = p.powers(top, top - 1)
    for m in range(1, top + 1):
        expected = powers[m].coeff(m - 1, alpha) / m if m - 1 <= powers[m].z_order else 0
        if poly[m] != expected:
            return False
    return sum(poly) == target
