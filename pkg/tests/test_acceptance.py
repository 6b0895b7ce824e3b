"""The ten acceptance criteria, one test each.

Every test records a ``PASS``/``FAIL`` line (shown in pytest's terminal summary
and printed when this file is run as a script).  Runtime budgets are part of
the verdict.
"""

import math
import random
import time
from fractions import Fraction

from helpers import random_G, random_revertible, random_z_series
from implicit_series import (
    ConditionError,
    ImplicitProblem,
    WSeries,
    elaborate,
    enumerate_forests,
    gessel_check,
    normalize,
    revert,
    revert_compose,
    revert_compose_alt,
    solve_by_recurrence,
    solve_contraction,
    solve_finite,
    solve_finite_integer,
    substitute_z,
    universal_coeff,
)
from implicit_series import reproduce
from implicit_series.analytic import (
    AnalyticProblem,
    check_rouche,
    contour_coefficients,
    fixed_point_iterate,
    select_radius,
)
from implicit_series.series import ZWSeries, multi_indices

RESULTS = {}


def _verdict(number, title, check, budget=None):
    start = time.perf_counter()
    try:
        ok, detail = check()
    except Exception as exc:  # a crash is a failure of the criterion, reported as such
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    if budget is not None and elapsed > budget:
        ok, detail = False, f"{detail}; took {elapsed:.1f}s > {budget}s"
    line = f"{'PASS' if ok else 'FAIL'} [{number:2d}] {title}: {detail} ({elapsed:.2f}s)"
    RESULTS[number] = line
    print(line)
    assert ok, line


def _sokal_fresh():
    reproduce._sokal_problem.cache_clear()


# --- 1 ---------------------------------------------------------------------


def check_golden_series():
    _sokal_fresh()
    N = 12
    a = reproduce.sokal_x0(N)
    lg = reproduce.sokal_log_x0(N)
    inv = reproduce.sokal_inv_x0(N)
    got = (
        [a.coeff((n,)) for n in range(1, N + 1)],
        [lg.coeff((n,)) for n in range(1, N + 1)],
        [-inv.coeff((n,)) for n in range(1, N + 1)],
    )
    want = (list(reproduce.X0_COEFFS), list(reproduce.LOG_X0_COEFFS), list(reproduce.B_COEFFS))
    heads = (a.constant_term(), lg.constant_term(), inv.constant_term()) == (1, 0, 1)
    names = ("-x0", "log(-x0)", "-1/x0")
    bad = [n for n, g, w in zip(names, got, want) if g != w]
    return heads and not bad, "36 coefficients equal" if heads and not bad else f"mismatch in {bad}"


def test_1_golden_series():
    _verdict(1, "golden series for x0, log(-x0), -1/x0 through w^12", check_golden_series, budget=5)


# --- 2 ---------------------------------------------------------------------


def check_sequences():
    _sokal_fresh()
    report = reproduce.sokal_sequences(20)
    ok = (
        report.c_prime == list(reproduce.C_PRIME)
        and report.d_prime == list(reproduce.D_PRIME)
        and report.e_prime == list(reproduce.E_PRIME)
        and all(isinstance(x, int) for x in report.c_prime + report.d_prime + report.e_prime)
    )
    return ok, f"c', d', e' for N <= 20 {'match' if ok else 'differ'}; renewal identity {report.renewal_ok}"


def test_2_integer_sequences():
    _verdict(2, "integer sequences c', d', e'", check_sequences, budget=30)


# --- 3 ---------------------------------------------------------------------


def check_trees():
    T = revert(elaborate("z*exp(-z)", 20, 0, ()), 20)
    exact = all(T.coeff((m,)) == Fraction(m ** (m - 1), math.factorial(m)) for m in range(1, 21))
    sums = [reproduce.yuzhakov_sum(N) == T.truncate(N) for N in range(1, 13)]
    return exact and all(sums), f"m^(m-1)/m! for m <= 20: {exact}; Stirling sums N <= 12: {sum(sums)}/12"


def test_3_rooted_trees():
    _verdict(3, "rooted-tree inversion and Stirling-form partial sums", check_trees)


# --- 4 ---------------------------------------------------------------------


def check_forests():
    types = 0
    for ell in (1, 2, 3):
        for V in range(1, 8):
            for t, n in enumerate_forests(ell, V).items():
                types += 1
                if universal_coeff(t) != n:
                    return False, f"{t}: {n} forests vs formula {universal_coeff(t)}"
    return True, f"{types} forest types agree"


def test_4_universal_coefficients():
    _verdict(4, "plane-forest counts equal universal coefficients", check_forests, budget=10)


# --- 5 ---------------------------------------------------------------------


def check_cross_variant():
    rng = random.Random(20240501)
    nontrivial = 0
    for i in range(200):
        G, N = random_G(rng)
        p = ImplicitProblem(G, N)
        a = solve_finite(p).phi
        if a != solve_finite_integer(p).phi or a != solve_by_recurrence(p):
            return False, f"case {i}: variants disagree"
        if substitute_z(p.G, a) != a:
            return False, f"case {i}: fixed-point identity fails"
        nontrivial += len(a.terms) > 1
    return True, f"200 problems ({nontrivial} with several terms) agree and satisfy phi = G(phi, w)"


def test_5_cross_variant_equivalence():
    _verdict(5, "finite = integer = recurrence on random G", check_cross_variant)


# --- 6 ---------------------------------------------------------------------


def check_gessel():
    rng = random.Random(424242)
    count = 0
    for i in range(50):
        G, N = random_G(rng, order=5)
        p = ImplicitProblem(G, N)
        for alpha in multi_indices(len(G.variables), 5):
            count += 1
            if not gessel_check(p, alpha):
                return False, f"problem {i}, alpha {alpha}"
    return True, f"{count} (G, alpha) pairs"


def test_6_gessel_consistency():
    _verdict(6, "t-parameter polynomial agrees with the finite sum", check_gessel)


# --- 7 ---------------------------------------------------------------------


def check_lagrange_forms():
    rng = random.Random(99)
    for i in range(100):
        order = rng.randint(1, 10)
        f = random_revertible(rng, order)
        h = random_z_series(rng, order)
        if revert_compose(f, h, order) != revert_compose_alt(f, h, order):
            return False, f"case {i} (order {order})"
    return True, "100 random (f, h) pairs"


def test_7_lagrange_forms():
    _verdict(7, "standard and alternate composition forms agree", check_lagrange_forms)


# --- 8 ---------------------------------------------------------------------


def check_analytic():
    G = elaborate("w + z*(1 - exp(-z))", 30, 1)
    H = ZWSeries.z(("w",), 30, 1)
    T = revert(elaborate("z*exp(-z)", 40, 0, ()), 40)
    worst, margins = 0.0, []
    for w in (0.05, 0.1, 0.2):
        p = select_radius(AnalyticProblem(G, w))
        margin = check_rouche(p).min_margin
        margins.append(margin)
        if margin <= 0:
            return False, f"no positive margin at w = {w}"
        values = [
            fixed_point_iterate(p).value,
            contour_coefficients(p, H, 0).value,
            float(T.evaluate((Fraction(w),))),
        ]
        gaps = [abs(x - y) for i, x in enumerate(values) for y in values[i + 1 :]]
        worst = max(worst, *gaps)
    return worst < 1e-9, f"largest pairwise gap {worst:.1e}; margins {', '.join(f'{m:.3g}' for m in margins)}"


def test_8_analytic_agreement():
    _verdict(8, "iteration, contour integral and exact partial sum agree", check_analytic, budget=5)


# --- 9 ---------------------------------------------------------------------


def check_normalization():
    beta = WSeries.from_coefficients([0, 1, -2, Fraction(1, 3), 0, 5]).with_order(5)
    G = ZWSeries.from_wseries(beta, 5) + ZWSeries.z(("w",), 5, 5) * Fraction(1, 2)
    phi = solve_finite(ImplicitProblem(normalize(G), 5)).phi
    exact = phi == beta * 2
    refused = []
    for alpha in (1, -1, Fraction(3, 2), 2, Fraction(-5, 4)):
        H = ZWSeries.from_wseries(beta, 5) + ZWSeries.z(("w",), 5, 5) * alpha
        try:
            solve_contraction(ImplicitProblem(H, 5))
        except ConditionError:
            refused.append(alpha)
    converges = solve_contraction(ImplicitProblem(G, 5)).agrees
    ok = exact and len(refused) == 5 and converges
    return ok, f"phi = beta/(1 - 1/2): {exact}; refused {len(refused)}/5 with |alpha| >= 1; alpha = 1/2 sums agree: {converges}"


def test_9_normalization_boundary():
    _verdict(9, "normalization and the |b10| < 1 boundary", check_normalization)


# --- 10 --------------------------------------------------------------------


def check_nonnegativity():
    _sokal_fresh()
    report = reproduce.nonnegativity_report(30)
    return report.holds, f"violations {report.violations}"


def test_10_nonnegativity():
    _verdict(10, "a_n, log-coefficients and b_n nonnegative for n <= 30", check_nonnegativity, budget=120)


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                pass
