"""Exact power-series solutions of implicit equations ``z = G(z, w)``.

Series carry exact rational coefficients and an explicit truncation order.
The main entry points are :func:`solve` for the fixed-point problem,
:func:`revert` for one-variable inversion and :mod:`implicit_series.analytic`
for floating-point checks at concrete ``w``.
"""

from .errors import (
    ConditionError,
    ConvergenceError,
    DomainError,
    ParseError,
    RangeError,
    ResourceError,
    SeriesError,
    SingularError,
    StructureError,
)
from .expr import elaborate, parse, to_text
from .implicit import (
    VARIANTS,
    ImplicitProblem,
    SolveReport,
    compose_H,
    gamma_transform,
    gessel_check,
    normalize,
    solve,
    solve_by_recurrence,
    solve_contraction,
    solve_finite,
    solve_finite_integer,
)
from .lagrange import RevertibleSeries, revert, revert_compose, revert_compose_alt
from .series import (
    WSeries,
    ZWSeries,
    canonical_lines,
    dumps,
    exp_series,
    loads,
    log_series,
    reciprocal,
    substitute_z,
)
from .universal import ForestType, enumerate_forests, universal_coeff

__version__ = "0.1.0"
