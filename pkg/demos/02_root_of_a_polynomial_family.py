"""
The leading root of a partition-function family
===============================================

Solve z = sokalF(-1 - z, w) + z for the root x0(w) = -1 - z(w) and look at
three derived series.  Everything is exact.
"""

# %%
from implicit_series import reproduce

N = 12
a = reproduce.sokal_x0(N)
print("-x0      :", [str(a.coeff((n,))) for n in range(N + 1)])

# %%
# log(-x0) and -1/x0 come from the same problem with different H(z).
lg = reproduce.sokal_log_x0(N)
inv = reproduce.sokal_inv_x0(N)
print("log(-x0) :", [str(lg.coeff((n,))) for n in range(1, N + 1)])
print("b_n      :", [str(-inv.coeff((n,))) for n in range(1, N + 1)])

# %%
# Scaled by factorials the coefficients become integer sequences.
report = reproduce.sokal_sequences(15)
print("c'", report.c_prime)
print("d'", report.d_prime)
print("e'", report.e_prime)
print("renewal identity holds:", report.renewal_ok)

# %%
# None of the three series has a negative coefficient through n = 30.
print(reproduce.nonnegativity_report(30))
