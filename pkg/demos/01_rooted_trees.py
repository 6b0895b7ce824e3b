"""
Counting rooted trees by reversing a series
===========================================

The exponential generating function T(w) of labelled rooted trees solves
T = w * exp(T).  Equivalently T is the compositional inverse of z * exp(-z).
"""

# %%
# Reverse f(z) = z exp(-z) with exact rational arithmetic.
import math
from fractions import Fraction

from implicit_series import ImplicitProblem, elaborate, revert, solve

T = revert(elaborate("z*exp(-z)", 10, 0, ()), 10)
for m in range(1, 11):
    print(m, T.coeff((m,)), Fraction(m ** (m - 1), math.factorial(m)))

# %%
# The same series as the fixed point of z = w + z(1 - exp(-z)).
G = elaborate("w + z*(1 - exp(-z))", 10, 10)
phi = solve(ImplicitProblem(G, 10)).phi
print("fixed-point route agrees:", phi == T)

# %%
# Multiplying by m! recovers the integer counts m^(m-1).
print([int(T.coeff((m,)) * math.factorial(m)) for m in range(1, 11)])
