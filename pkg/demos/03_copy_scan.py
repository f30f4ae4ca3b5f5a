"""
Error probability with many copies
==================================

The optimal error probability for n copies decays like exp(-n xi).  This
script tabulates the exact value up to n = 10 against the finite-n upper
bound and shows the rate approaching xi from above.
"""
import math

from qchernoff import copy_scan
from qchernoff.states import PriorPair, random_density

rho0 = random_density(2, seed=21)
rho1 = random_density(2, seed=22)

# %%
scan = copy_scan(rho0, rho1, PriorPair(0.5, 0.5), n_max=10)
print(f"xi = {scan.xi_qcb:.6f}  (s* = {scan.s_star:.4f})\n")
print(" n   P_e            bound          rate      rate - xi   log(2)/n")
for row in scan.rows:
    print(f"{row.n:2d}   {row.p_err:.6e}   {row.theorem1_bound:.6e}   {row.rate:.6f}  "
          f"{row.rate - scan.xi_qcb:.6f}    {math.log(2) / row.n:.6f}")

# %% the exponent does not depend on the priors, the prefactor does
skewed = copy_scan(rho0, rho1, PriorPair(0.1, 0.9), n_max=10)
print(f"\npriors (0.1, 0.9): P_e(10) = {skewed.rows[-1].p_err:.6e}, rate(10) = {skewed.rows[-1].rate:.6f}")
