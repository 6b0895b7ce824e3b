"""
Universal coefficients from plane forests
=========================================

The coefficient of g_0^l g_1^k1 g_2^k2 ... in phi^l is a count of plane
forests with l trees and k_j vertices of out-degree j.  Here the closed
formula is checked against brute-force enumeration.
"""

# %%
from implicit_series import ForestType, enumerate_forests, universal_coeff

for ell in (1, 2, 3):
    for V in range(1, 6):
        counts = enumerate_forests(ell, V)
        agree = all(universal_coeff(t) == n for t, n in counts.items())
        print(f"l={ell} V={V}: {len(counts):3d} types, {sum(counts.values()):5d} forests, agree={agree}")

# %%
# Binary trees with 3 internal nodes are Catalan(3) = 5.
print(universal_coeff(ForestType(1, (4, 0, 3))))
