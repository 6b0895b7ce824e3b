import math

import pytest

from implicit_series import (
    ForestType,
    ImplicitProblem,
    ResourceError,
    WSeries,
    elaborate,
    enumerate_forests,
    solve_finite,
    universal_coeff,
)
from implicit_series.series import multi_indices
from implicit_series.universal import (
    admissible_extensions,
    plane_trees,
    substitute_g,
    type_of,
    universal_coeff_multinomial,
    universal_series_alt,
    universal_series_closed,
    universal_series_rational,
    universal_table,
)


@pytest.mark.parametrize(
    "ell, k, expected",
    [(1, (1,), 1), (1, (2, 0, 1), 1), (1, (3, 0, 2), 2), (2, (2,), 1), (2, (2, 0, 0), 1), (1, (2, 0, 0), 0), (1, (1, 1, 1), 0)],
)
def test_closed_form(ell, k, expected):
    assert universal_coeff(ForestType(ell, k)) == expected


def test_trailing_zeros_dropped():
    assert ForestType(1, (2, 0, 1, 0, 0)).k == (2, 0, 1)


def test_catalan_count_of_plane_trees():
    assert [len(plane_trees(n)) for n in range(1, 9)] == [math.comb(2 * n - 2, n - 1) // n for n in range(1, 9)]


def test_type_of():
    cherry = (((), ()),)
    assert type_of(cherry) == ForestType(1, (2, 0, 1))


@pytest.mark.parametrize(
    "ell, V, expected",
    [
        (1, 1, {ForestType(1, (1,)): 1}),
        (1, 3, {ForestType(1, (2, 0, 1)): 1, ForestType(1, (1, 2)): 1}),
        (2, 2, {ForestType(2, (2,)): 1}),
    ],
)
def test_enumeration_examples(ell, V, expected):
    assert dict(enumerate_forests(ell, V)) == expected


def test_enumeration_cap():
    with pytest.raises(ResourceError):
        enumerate_forests(1, 9)


@pytest.mark.parametrize("ell", [1, 2, 3])
@pytest.mark.parametrize("V", range(1, 8))
def test_enumeration_matches_closed_form(ell, V):
    counts = enumerate_forests(ell, V)
    for t, n in counts.items():
        assert t.admissible
        assert universal_coeff(t) == n
    # every admissible type on V vertices actually occurs
    listed = {ForestType(e, k) for e, k, _ in universal_table(3, 7) if e == ell and sum(k) == V}
    assert listed == set(counts)


def test_integrality_via_multinomials():
    for ell in (1, 2, 3):
        for k in multi_indices(8, 12, 1):
            t = ForestType(ell, k)
            if t.admissible:
                assert universal_coeff(t) == universal_coeff_multinomial(t)


@pytest.mark.parametrize("ell", [1, 2])
@pytest.mark.parametrize("k0", range(0, 7))
def test_finitely_many_extensions(ell, k0):
    exts = admissible_extensions(ell, k0, 0)
    brute = set()
    # (n - 1) k_n <= k0 bounds every entry
    for k in multi_indices(max(k0, 1), k0):
        t = ForestType(ell, (k0, 0) + k)
        if t.admissible:
            brute.add(t.k[2:])
    assert set(exts) == brute


def test_table_rows_sorted_by_vertices():
    rows = universal_table(2, 5)
    vertices = [sum(k) for _, k, _ in rows]
    assert vertices == sorted(vertices)


class TestSeriesForms:
    @pytest.mark.parametrize("ell", [1, 2, 3])
    def test_three_forms_agree(self, ell):
        alt = universal_series_alt(ell, 5)
        assert alt == universal_series_rational(ell, 5)
        assert alt == universal_series_closed(ell, 5)

    def test_leading_terms(self):
        assert universal_series_alt(2, 2).coeff((2, 0)) == 1
        one = universal_series_alt(1, 3)
        assert one.variables == ("g0", "g1", "g2")
        assert one.coeff((1, 0, 0)) == 1
        assert one.coeff((2, 0, 1)) == 1

    @pytest.mark.parametrize("ell", [1, 2])
    def test_substitution_reproduces_solver(self, ell):
        N = 5
        G = elaborate("w + z^2 - z^3*w + 2*z^2*w", N, N)
        gs = [G.z_coeff(n) for n in range(N + 1)]
        poly = universal_series_alt(ell, 2 * N)
        via_g = substitute_g(poly, gs)
        phi = solve_finite(ImplicitProblem(G, N)).phi
        assert via_g == (phi**ell).with_order(N)
        assert isinstance(via_g, WSeries)
