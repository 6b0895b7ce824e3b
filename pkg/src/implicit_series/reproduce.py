"""Worked examples: rooted trees and the root of the deformed exponential.

Rooted trees
    ``T(w) = sum m^(m-1) w^m / m!`` solves ``z e^(-z) = w``.  Writing this as
    ``z = w + z (1 - e^(-z))`` and expanding by powers of ``G`` groups the terms
    into polynomials ``P_m(w)`` with Stirling-number coefficients.

The function ``F(x, w) = sum_n x^n / n! w^(n(n-1)/2)``
    Its root ``x_0(w)`` near ``-1`` is found from ``z = G(z, w)`` with
    ``x = -1 - z``, ``G = sum_{n>=2} (-1-z)^n / n! w^(n(n-1)/2)``.  Since every
    term of ``G`` carries a factor ``w``, the finite sums stop at ``m = n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .expr import elaborate
from .implicit import ImplicitProblem, solve_finite
from .lagrange import revert
from .series import WSeries

F = Fraction

# ---------------------------------------------------------------------------
# golden values, w^1 .. w^12 (sequences: indices 1 .. 20)

X0_COEFFS = (
    F(1, 2), F(1, 2), F(11, 24), F(11, 24), F(7, 16), F(7, 16),
    F(493, 1152), F(163, 384), F(323, 768), F(1603, 3840),
    F(57283, 138240), F(170921, 414720),
)
LOG_X0_COEFFS = (
    F(1, 2), F(3, 8), F(1, 4), F(41, 192), F(13, 80), F(85, 576),
    F(83, 672), F(227, 2048), F(2065, 20736), F(4157, 46080),
    F(6953, 84480), F(252449, 3317760),
)
# b_n in -1/x_0 = 1 - sum b_n w^n
B_COEFFS = (
    F(1, 2), F(1, 4), F(1, 12), F(1, 16), F(1, 48), F(7, 288),
    F(1, 96), F(7, 768), F(49, 6912), F(113, 23040),
    F(17, 4608), F(293, 92160),
)
C_PRIME = (
    1, 1, 2, 5, 20, 85, 490, 3185, 23520, 199605, 1901130,
    19767825, 223783560, 2806408605, 37447860450, 540137222625,
    8284392916800, 135996789453525, 2363554355812650, 43437044503677825,
)
D_PRIME = (
    1, 2, 5, 18, 77, 420, 2625, 19110, 158025, 1457820, 14872725,
    166645710, 2032946685, 26754868140, 379216422585, 5747274883350,
    92854338001425, 1591646029073100, 28870013167120125, 552364292787857550,
)
E_PRIME = (
    1, 2, 5, 14, 53, 232, 1289, 8290, 61177, 515000, 4855477,
    50364514, 571176005, 7098726832, 94733907025, 1361980060802,
    20893741105009, 342071315736280, 5936899039448717, 108967039136950450,
)


# ---------------------------------------------------------------------------
# rooted trees


class StirlingTable:
    """Stirling subset numbers ``S(n, k)`` for ``n, k <= cap``."""

    def __init__(self, cap: int):
        self.cap = cap
        rows = [[1] + [0] * cap]
        for n in range(1, cap + 1):
            prev = rows[-1]
            rows.append([0] + [k * prev[k] + prev[k - 1] for k in range(1, cap + 1)])
        self._rows = rows

    def __call__(self, n: int, k: int) -> int:
        if n < 0 or k < 0:
            return 0
        if n > self.cap or k > self.cap:
            raise IndexError(f"S({n}, {k}) is beyond the table cap {self.cap}")
        return self._rows[n][k]


def tree_series(order: int) -> WSeries:
    """``T(w)``, the reverse of ``z e^(-z)``, checked against ``m^(m-1)/m!``."""
    if order < 1:
        raise ValueError("order must be at least 1")
    f = elaborate("z*exp(-z)", order, 0, ())
    T = revert(f, order)
    for m in range(1, order + 1):
        expected = F(m ** (m - 1), math.factorial(m))
        if T.coeff((m,)) != expected:
            raise ArithmeticError(f"[w^{m}] T = {T.coeff((m,))}, expected {expected}")
    return T


def yuzhakov_P(m: int, stirling: StirlingTable = None) -> WSeries:
    """The ``m``-th term ``(1/m) [z^(m-1)] (w + z(1 - e^(-z)))^m`` in closed form."""
    if m < 1:
        raise ValueError("m must be at least 1")
    S = stirling or StirlingTable(m)
    terms = {}
    for k in range((m + 2) // 2, m + 1):
        c = F(math.factorial(m - 1), math.factorial(k) * math.factorial(k - 1)) * S(k - 1, m - k)
        if c:
            terms[(k,)] = c if (m - 1) % 2 == 0 else -c
    return WSeries(("w",), m, terms)


def yuzhakov_sum(N: int) -> WSeries:
    """``sum_{m=1}^{2N-1} P_m`` truncated at ``w^N``."""
    S = StirlingTable(2 * N)
    total = WSeries(("w",), N)
    for m in range(1, 2 * N):
        # P_m is an exact polynomial, so re-declaring its order is safe
        total = total + yuzhakov_P(m, S).truncate(N).with_order(N)
    return total


# ---------------------------------------------------------------------------
# the root x_0(w)


def sokal_G(order: int):
    return elaborate("sokalF(-1-z, w) + z", order, order, ("w",))


@lru_cache(maxsize=4)
def _sokal_problem(order: int) -> ImplicitProblem:
    return ImplicitProblem(sokal_G(order), order)


def _compose(order: int, H_text: str) -> WSeries:
    p = _sokal_problem(order)
    H = elaborate(H_text, order, order, ("w",))
    return solve_finite(p, H).composed


def sokal_x0(order: int) -> WSeries:
    """``-x_0(w) = 1 + sum a_n w^n``."""
    return _compose(order, "1 + z")


def sokal_log_x0(order: int) -> WSeries:
    """``log(-x_0(w))``."""
    return _compose(order, "log(1 + z)")


def sokal_inv_x0(order: int) -> WSeries:
    """``-1/x_0(w) = 1 - sum b_n w^n``."""
    return _compose(order, "1/(1 + z)")


def _coeff_list(s: WSeries, N: int, sign=1):
    return [sign * s.coeff((n,)) for n in range(1, N + 1)]


@dataclass
class SequenceReport:
    a: list
    b: list
    c_prime: list
    d_prime: list
    e_prime: list
    renewal_ok: bool
    observations: dict = field(default_factory=dict)


def _as_integer(q: Fraction, label: str) -> int:
    if q.denominator != 1:
        raise ArithmeticError(f"{label} = {q} is not an integer")
    return q.numerator


def sokal_sequences(N: int) -> SequenceReport:
    """The sequences ``c'``, ``d'``, ``e'`` and the renewal identity through ``N``."""
    if not 1 <= N <= 30:
        raise ValueError("N must lie in 1..30")
    a = [F(1)] + _coeff_list(sokal_x0(N), N)
    b = [F(0)] + _coeff_list(sokal_inv_x0(N), N, sign=-1)
    # A(w) B(w) = 1 with A = 1 + sum a_n w^n, B = 1 - sum b_n w^n
    renewal_ok = all(a[n] == sum(b[k] * a[n - k] for k in range(1, n + 1)) for n in range(1, N + 1))

    c_prime, d_prime, e_prime = [], [], []
    c, d, e = F(1), F(0), F(0)
    for n in range(1, N + 1):
        c -= b[n]
        d += n * b[n]
        e += F(1, math.factorial(n - 1)) - n * b[n]
        c_prime.append(_as_integer(2 * math.factorial(n) * c, f"c'_{n}"))
        d_prime.append(_as_integer(2 * math.factorial(n - 1) * d, f"d'_{n}"))
        e_prime.append(_as_integer(2 * math.factorial(n - 1) * e, f"e'_{n}"))
    observations = {
        "a_N": float(a[N]),
        "exp(-1)": math.exp(-1),
        "sum n b_n": float(d),
        "e": math.e,
    }
    return SequenceReport(a[1:], b[1:], c_prime, d_prime, e_prime, renewal_ok, observations)


@dataclass
class NonnegativityReport:
    N: int
    violations: dict

    @property
    def holds(self) -> bool:
        return not any(self.violations.values())


def nonnegativity_report(N: int) -> NonnegativityReport:
    """Indices ``n <= N`` where ``a_n``, ``[w^n] log(-x_0)`` or ``b_n`` is negative."""
    if N <= 0:
        return NonnegativityReport(0, {"a": [], "log": [], "b": []})
    series = {
        "a": _coeff_list(sokal_x0(N), N),
        "log": _coeff_list(sokal_log_x0(N), N),
        "b": _coeff_list(sokal_inv_x0(N), N, sign=-1),
    }
    violations = {k: [n for n, c in enumerate(v, 1) if c < 0] for k, v in series.items()}
    return NonnegativityReport(N, violations)


# ---------------------------------------------------------------------------
# report


@dataclass(frozen=True)
class Row:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")


def _first_mismatch(got, want):
    for i, (g, w) in enumerate(zip(got, want), 1):
        if g != w:
            return f"index {i}: got {g}, expected {w}"
    if len(got) != len(want):
        return f"length {len(got)} != {len(want)}"
    return ""


def golden_report(order: int = 12, sequence_length: int = 20, tree_order: int = 20) -> list:
    """One :class:`Row` per golden table."""
    rows = []

    def table(name, got, want):
        want = list(want)[: len(got)]
        miss = _first_mismatch(got, want)
        rows.append(Row(name, not miss, miss or f"{len(got)} values"))

    table("x0 series", _coeff_list(sokal_x0(order), order), X0_COEFFS)
    table("log(-x0) series", _coeff_list(sokal_log_x0(order), order), LOG_X0_COEFFS)
    table("-1/x0 series", _coeff_list(sokal_inv_x0(order), order, sign=-1), B_COEFFS)

    seq = sokal_sequences(sequence_length)
    table("c' sequence", seq.c_prime, C_PRIME)
    table("d' sequence", seq.d_prime, D_PRIME)
    table("e' sequence", seq.e_prime, E_PRIME)
    rows.append(Row("renewal identity", seq.renewal_ok))

    try:
        tree_series(tree_order)
        rows.append(Row("rooted-tree series", True, f"m^(m-1)/m! through m = {tree_order}"))
    except ArithmeticError as exc:
        rows.append(Row("rooted-tree series", False, str(exc)))
    N = min(order, 12)
    ok = yuzhakov_sum(N) == tree_series(N)
    rows.append(Row("Stirling-form partial sums", ok, f"through w^{N}"))

    nn = nonnegativity_report(order)
    rows.append(Row("nonnegativity", nn.holds, f"n <= {order}"))
    obs = seq.observations
    rows.append(Row(
        "observation (not asserted)", True,
        f"a_{sequence_length} = {obs['a_N']:.6f} vs 1/e = {obs['exp(-1)']:.6f}; "
        f"sum n b_n = {obs['sum n b_n']:.6f} vs e = {obs['e']:.6f}",
    ))
    return rows
