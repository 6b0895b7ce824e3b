"""Universal Lagrange inversion over indeterminates ``g_0, g_1, ...``.

The solution of ``phi = sum_n g_n phi^n`` has

    [g_0^k0 g_1^k1 ...] phi^l = l (sum k - 1)! / prod k_n!    if sum (n-1) k_n = -l

and this number counts unlabeled plane forests with ``l`` trees and ``k_n``
vertices of out-degree ``n``.  The forest enumerator here is the brute-force
check of that count.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import ResourceError
from .series import WSeries, ZWSeries, multi_indices, product_z_coeff

DEFAULT_VERTEX_CAP = 8


@dataclass(frozen=True)
class ForestType:
    """Out-degree type ``(k_0, k_1, ..., k_D)`` of an ``ell``-component forest."""

    ell: int
    k: tuple

    def __post_init__(self):
        k = tuple(int(x) for x in self.k)
        while k and k[-1] == 0:
            k = k[:-1]
        object.__setattr__(self, "k", k)

    @property
    def vertices(self) -> int:
        return sum(self.k)

    @property
    def admissible(self) -> bool:
        return self.ell >= 1 and sum((n - 1) * kn for n, kn in enumerate(self.k)) == -self.ell


def universal_coeff(t: ForestType) -> int:
    if not t.admissible:
        return 0
    total = t.vertices
    num = t.ell * math.factorial(total - 1)
    den = math.prod(math.factorial(kn) for kn in t.k)
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"non-integral universal coefficient for {t}")
    return q


def universal_coeff_multinomial(t: ForestType) -> int:
    """The same number written as ``sum_i (1 - i) * multinomial(sum k - 1; k - e_i)``.

    Every summand is an integer, so this form shows integrality directly.
    """
    if not t.admissible:
        return 0
    total = t.vertices
    result = 0
    for i, ki in enumerate(t.k):
        if ki == 0 or i == 1:
            continue
        reduced = list(t.k)
        reduced[i] -= 1
        result += (1 - i) * _multinomial(reduced)
    return result


def _multinomial(parts) -> int:
    out, acc = 1, 0
    for p in parts:
        acc += p
        out *= math.comb(acc, p)
    return out


def admissible_extensions(ell: int, k0: int, k1: int) -> list:
    """All ``(k_2, k_3, ...)`` completing ``(k0, k1)`` to an admissible type.

    The constraint ``k0 = ell + sum_{n>=2} (n-1) k_n`` makes these the
    partitions of ``k0 - ell`` with part ``n - 1`` used ``k_n`` times.
    """
    budget = k0 - ell
    if budget < 0:
        return []
    out = []

    def rec(part, remaining, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        if part > remaining:
            return
        for mult in range(remaining // part + 1):
            rec(part + 1, remaining - mult * part, acc + [mult])

    rec(1, budget, [])
    cleaned = set()
    for ext in out:
        ext = list(ext)
        while ext and ext[-1] == 0:
            ext.pop()
        cleaned.add(tuple(ext))
    return sorted(cleaned)


# ---------------------------------------------------------------------------
# plane forests


def type_of(forest, ell=None) -> ForestType:
    """Type of a forest given as a tuple of trees; a tree is the tuple of its subtrees."""
    counts = Counter()
    stack = list(forest)
    while stack:
        node = stack.pop()
        counts[len(node)] += 1
        stack.extend(node)
    D = max(counts, default=0)
    return ForestType(len(forest) if ell is None else ell, tuple(counts[n] for n in range(D + 1)))


@lru_cache(maxsize=None)
def plane_trees(n: int) -> tuple:
    """All plane trees with ``n`` vertices: a root followed by an ordered forest."""
    if n < 1:
        return ()
    out = []
    for d in range(n):
        out.extend(plane_forests(d, n - 1))
    return tuple(out)


@lru_cache(maxsize=None)
def plane_forests(ell: int, n: int) -> tuple:
    """All ordered forests of ``ell`` plane trees with ``n`` vertices in total."""
    if ell == 0:
        return ((),) if n == 0 else ()
    out = []
    for first in range(1, n - ell + 2):
        for tree in plane_trees(first):
            for rest in plane_forests(ell - 1, n - first):
                out.append((tree,) + rest)
    return tuple(out)


def enumerate_forests(ell: int, vertices: int, cap: int = DEFAULT_VERTEX_CAP) -> Counter:
    """Counts of ``ell``-component plane forests on ``vertices`` vertices, by type."""
    if vertices > cap:
        raise ResourceError(f"{vertices} vertices exceeds the enumeration cap {cap}")
    return Counter(type_of(f, ell) for f in plane_forests(ell, vertices))


def universal_table(ell_max: int, vertex_max: int) -> list:
    """``(ell, k, coefficient)`` rows for every admissible type, by vertex count."""
    rows = []
    for v in range(1, vertex_max + 1):
        for ell in range(1, ell_max + 1):
            for k in _types_with_vertices(ell, v):
                t = ForestType(ell, k)
                rows.append((ell, t.k, universal_coeff(t)))
    return rows


def _types_with_vertices(ell, v):
    out = set()
    for k0 in range(ell, v + 1):
        for ext in admissible_extensions(ell, k0, 0):
            k1 = v - k0 - sum(ext)
            if k1 >= 0:
                out.add((k0, k1) + ext)
    return sorted(out)


# ---------------------------------------------------------------------------
# the two series forms


def g_names(D: int) -> tuple:
    return tuple(f"g{n}" for n in range(D + 1))


def _generic_G(max_degree: int, ell: int):
    D = max(max_degree - ell, 1)
    names = g_names(D)
    terms = {}
    for n in range(D + 1):
        alpha = tuple(1 if i == n else 0 for i in range(D + 1))
        terms[(n, alpha)] = 1
    return names, terms


def universal_series_alt(ell: int, max_degree: int) -> WSeries:
    """``phi^ell`` through total g-degree ``max_degree`` without divisions:
    ``sum_m [z^(m-ell)] G^(m-1) * sum_n (1-n) g_n z^n``."""
    names, terms = _generic_G(max_degree, ell)
    zo = max(max_degree - ell, 0)
    G = ZWSeries(names, zo, max_degree, terms)
    L = ZWSeries(names, zo, max_degree, {(n, a): 1 - n for (n, a) in terms})
    out = WSeries(names, max_degree)
    power = ZWSeries.one(names, zo, max_degree)
    for m in range(1, max_degree + 1):
        if 0 <= m - ell <= zo:
            out = out + product_z_coeff(power, L, m - ell)
        power = power * G
    return out


def universal_series_rational(ell: int, max_degree: int) -> WSeries:
    """``phi^ell`` through total g-degree ``max_degree``: ``sum_m ell/m [z^(m-ell)] G^m``."""
    names, terms = _generic_G(max_degree, ell)
    zo = max(max_degree - ell, 0)
    G = ZWSeries(names, zo, max_degree, terms)
    out = WSeries(names, max_degree)
    power = ZWSeries.one(names, zo, max_degree)
    for m in range(1, max_degree + 1):
        power = power * G
        if 0 <= m - ell <= zo:
            out = out + power.z_coeff(m - ell) * Fraction(ell, m)
    return out


def universal_series_closed(ell: int, max_degree: int) -> WSeries:
    """The same polynomial assembled from :func:`universal_coeff`."""
    D = max(max_degree - ell, 1)
    names = g_names(D)
    terms = {}
    for k in multi_indices(D + 1, max_degree, 1):
        c = universal_coeff(ForestType(ell, k))
        if c:
            terms[k] = c
    return WSeries(names, max_degree, terms)


def substitute_g(poly: WSeries, gs) -> WSeries:
    """Replace ``g_n`` by the series ``gs[n]`` in a polynomial over ``g_0, g_1, ...``."""
    gs = list(gs)
    if not gs:
        raise ValueError("need at least one substituted series")
    variables, order = gs[0].variables, min(s.order for s in gs)
    zero = WSeries(variables, order)
    cache = {}

    def pw(n, e):
        key = (n, e)
        if key not in cache:
            base = gs[n] if n < len(gs) else zero
            cache[key] = base**e
        return cache[key]

    out = zero
    for k, c in poly.terms.items():
        term = WSeries.constant(c, variables, order)
        for n, e in enumerate(k):
            if e:
                term = term * pw(n, e)
                if term.is_zero():
                    break
        out = out + term
    return out
