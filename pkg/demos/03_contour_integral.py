"""
The fixed point as a contour integral
=====================================

For numeric w the solution is the unique zero of z - G(z, w) inside a circle
where |G| < |z|.  A trapezoid rule on that circle recovers it to machine
precision, and so does plain iteration.
"""

# %%
import numpy as np

from implicit_series import ZWSeries, elaborate
from implicit_series.analytic import (
    AnalyticProblem,
    check_rouche,
    contour_coefficients,
    fixed_point_iterate,
    select_radius,
)
from implicit_series.reproduce import tree_series

G = elaborate("w + z*(1 - exp(-z))", 30, 1)
H = ZWSeries.z(("w",), 30, 1)
T = tree_series(40)

# %%
# The default radius 0.5 is too large at w = 0.2; a smaller circle works.
for w in (0.05, 0.1, 0.2):
    p = select_radius(AnalyticProblem(G, w))
    fp = fixed_point_iterate(p)
    contour = contour_coefficients(p, H, 0).value
    exact = T.evaluate((w,))
    print(
        f"w={w:<5} rho={p.rho:.4f} margin={check_rouche(p).min_margin:.4f} "
        f"iter={fp.value.real:.15f} contour={contour.real:.15f} series={exact:.15f}"
    )

# %%
# Per-m terms: the m-th term is (1/m) [z^(m-1)] G^m, evaluated numerically.
p = select_radius(AnalyticProblem(G, 0.1))
r = contour_coefficients(p, H, 60)
gaps = np.abs(np.asarray(r.partial_sums) - r.value)
for m in (10, 20, 30, 40, 50, 60):
    print(f"after {m:2d} terms the gap is {gaps[m]:.1e}")
