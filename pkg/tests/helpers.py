"""Seeded generators of random admissible inputs shared by the test modules."""

import random
from fractions import Fraction

from implicit_series import ZWSeries
from implicit_series.series import multi_indices


def random_G(rng: random.Random, nvars=None, order=None, max_terms=6, coeff_range=3, b10=0):
    """Integer-coefficient ``G`` with ``G(0,0) = 0`` and ``(dG/dz)(0,0) = b10``."""
    nvars = nvars or rng.choice((1, 1, 2))
    order = order or rng.randint(1, 8 if nvars == 1 else 5)
    variables = ("w",) if nvars == 1 else ("u", "v")
    terms = {}
    w_monos = [a for a in multi_indices(nvars, order) if sum(a) >= 1]
    # at least one pure-w term, otherwise phi is identically zero
    seed = rng.choice([a for a in w_monos if sum(a) == 1] if rng.random() < 0.8 else w_monos)
    terms[(0, seed)] = rng.choice([c for c in range(-coeff_range, coeff_range + 1) if c])
    zero = (0,) * nvars
    if rng.random() < 0.7:
        terms[(rng.randint(2, max(2, min(order, 4))), zero)] = rng.choice((-2, -1, 1, 1, 2))
    for _ in range(rng.randint(1, max_terms)):
        k = rng.randint(0, order)
        alpha = rng.choice(list(multi_indices(nvars, order - 1 if k else order)))
        if k <= 1 and alpha == zero:
            continue
        terms[(k, alpha)] = rng.randint(-coeff_range, coeff_range)
    if b10:
        terms[(1, (0,) * nvars)] = Fraction(b10)
    return ZWSeries(variables, order, order, terms), order


def random_z_series(rng: random.Random, order, constant=None, linear=None, coeff_range=4):
    coeffs = [rng.randint(-coeff_range, coeff_range) for _ in range(order + 1)]
    if constant is not None:
        coeffs[0] = constant
    if linear is not None:
        coeffs[1] = linear
    return ZWSeries.from_z_coefficients(coeffs)


def random_revertible(rng: random.Random, order):
    a1 = rng.choice([-2, -1, 1, 2, 3])
    return random_z_series(rng, order, constant=0, linear=a1)
