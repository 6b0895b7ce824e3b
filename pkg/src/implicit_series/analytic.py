"""Floating-point checks of the analytic fixed-point theorem at concrete ``w``.

``G`` is taken to be the polynomial obtained from its truncated series and is
evaluated in complex double precision.  Three things can be done with it:

* sample the Rouché condition ``|G(z, w)| < |z|`` on the circle ``|z| = rho``;
* find the fixed point ``phi(w)`` by iterating ``z -> G(z, w)``;
* recover ``H(phi(w), w)`` as the contour integral of
  ``H (1 - G_z) / (z - G)`` by the trapezoid rule, together with the
  individual terms of its expansion in powers of ``G / z``.
"""

from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass

import numpy as np

from .errors import ConditionError, ConvergenceError, SingularError
from .series import ZWSeries

log = logging.getLogger(__name__)

DEFAULT_RHO = 0.5
MAX_ITERATIONS = 10_000
SINGULAR_GAP = 1e-12


@dataclass(frozen=True)
class AnalyticProblem:
    G: ZWSeries
    w: tuple
    rho: float = DEFAULT_RHO
    q_points: int = 256
    iter_tol: float = 1e-14

    def __post_init__(self):
        w = self.w
        if np.isscalar(w):
            w = (w,)
        w = tuple(complex(x) for x in w)
        if len(w) != len(self.G.variables):
            raise ValueError(
                f"w point has {len(w)} components, G has {len(self.G.variables)} variables"
            )
        object.__setattr__(self, "w", w)
        if not self.rho > 0:
            raise ValueError("rho must be positive")
        q = self.q_points
        if q < 16 or q & (q - 1):
            raise ValueError("q_points must be a power of two and at least 16")
        if not self.iter_tol > 0:
            raise ValueError("iter_tol must be positive")

    def circle(self) -> np.ndarray:
        theta = 2 * np.pi * np.arange(self.q_points) / self.q_points
        return self.rho * np.exp(1j * theta)


@dataclass(frozen=True)
class RoucheReport:
    min_margin: float
    rho: float

    @property
    def satisfied(self) -> bool:
        return self.min_margin > 0


@dataclass(frozen=True)
class FixedPoint:
    value: complex
    residual: float
    iterations: int


@dataclass(frozen=True)
class ContourResult:
    value: complex
    terms: np.ndarray

    @property
    def partial_sums(self) -> np.ndarray:
        return np.cumsum(self.terms)


def z_polynomial(s: ZWSeries, w) -> np.ndarray:
    """Complex coefficients ``c_k = g_k(w)`` of ``s`` at the point ``w``."""
    w = np.asarray(w, dtype=complex).reshape(-1)
    coeffs = np.zeros(s.z_order + 1, dtype=complex)
    for (k, alpha), c in s.terms.items():
        coeffs[k] += float(c) * np.prod(w ** np.asarray(alpha)) if alpha else float(c)
    return coeffs


def _evaluator(s: ZWSeries, w):
    coeffs = z_polynomial(s, w)[::-1]
    return lambda z: np.polyval(coeffs, z)


def check_rouche(p: AnalyticProblem) -> RoucheReport:
    """Smallest ``rho - |G(zeta, w)|`` over the sample points on ``|zeta| = rho``."""
    G = _evaluator(p.G, p.w)
    margin = float(np.min(p.rho - np.abs(G(p.circle()))))
    return RoucheReport(margin, p.rho)


def select_radius(p: AnalyticProblem, start: float = DEFAULT_RHO, steps: int = 24) -> AnalyticProblem:
    """Pick ``rho`` from ``start * 2**(-j/4)``, ``j = 0..steps``.

    Among radii with a positive margin the one with the largest ``margin / rho``
    is kept, since that ratio controls how fast the contour expansion converges.
    """
    best = None
    for j in range(steps + 1):
        cand = dataclasses.replace(p, rho=start * 2.0 ** (-j / 4))
        report = check_rouche(cand)
        if report.satisfied:
            score = report.min_margin / cand.rho
            if best is None or score > best[0]:
                best = (score, cand)
    if best is None:
        raise ConditionError(
            f"no radius in [{start * 2.0 ** (-steps / 4):.3g}, {start}] satisfies |G| < |z| on the circle"
        )
    log.debug("selected rho = %g (relative margin %.3g)", best[1].rho, best[0])
    return best[1]


def fixed_point_iterate(p: AnalyticProblem, z0: complex = 0j, max_iter: int = MAX_ITERATIONS) -> FixedPoint:
    G = _evaluator(p.G, p.w)
    z = complex(z0)
    for n in range(1, max_iter + 1):
        with np.errstate(over="ignore", invalid="ignore"):
            nxt = complex(G(z))
        if not np.isfinite(nxt):
            raise ConvergenceError(f"iteration diverged after {n} steps", residual=float("inf"))
        step = abs(nxt - z)
        z = nxt
        if step < p.iter_tol:
            return FixedPoint(z, abs(z - complex(G(z))), n)
    raise ConvergenceError(
        f"no convergence within {max_iter} iterations", residual=abs(z - complex(G(z)))
    )


def contour_coefficients(p: AnalyticProblem, H: ZWSeries, m_max: int) -> ContourResult:
    """``H(phi(w), w)`` by the trapezoid rule, plus terms ``m = 0..m_max`` of its
    expansion ``sum_m mean(H (1 - G_z) (G/zeta)^m)`` over the circle."""
    report = check_rouche(p)
    if not report.satisfied:
        raise ConditionError(
            f"Rouché condition fails on |z| = {p.rho} (margin {report.min_margin:.3g})"
        )
    zeta = p.circle()
    G = _evaluator(p.G, p.w)(zeta)
    dG = _evaluator(p.G.d_dz(), p.w)(zeta)
    Hv = _evaluator(H, p.w)(zeta)
    gap = zeta - G
    if np.min(np.abs(gap)) < SINGULAR_GAP:
        raise SingularError("zeta - G(zeta, w) nearly vanishes on the contour")
    weight = Hv * (1 - dG)
    # (1/2 pi i) * contour integral of f dzeta = mean of f * zeta over the circle
    value = complex(np.mean(weight * zeta / gap))
    ratio = G / zeta
    terms = np.empty(m_max + 1, dtype=complex)
    current = weight.astype(complex)
    for m in range(m_max + 1):
        terms[m] = np.mean(current)
        current = current * ratio
    return ContourResult(value, terms)
