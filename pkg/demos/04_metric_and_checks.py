"""
Local geometry and randomised inequality checks
===============================================

The Chernoff metric gives 1 - Q between nearby states to second order.
The verify module tests the underlying operator inequalities on random
inputs.
"""
import numpy as np

from qchernoff import chernoff_metric, run_all
from qchernoff.measures import metric_finite_difference
from qchernoff.states import random_density, random_perturbation

# %% second-order agreement: the relative error shrinks in step with eps
rho = random_density(2, seed=31)
direction = random_perturbation(2, 1.0, seed=32)
for eps in (1e-1, 1e-2, 1e-3):
    drho = eps * direction
    ds2 = chernoff_metric(rho, drho)
    fd = metric_finite_difference(rho, drho)
    print(f"eps = {eps:.0e}   ds2 = {ds2:.6e}   1 - Q = {fd:.6e}   rel err = {abs(ds2 - fd) / ds2:.2e}")

# %% closed form at the maximally mixed qubit
print("\nds2(I/2, eps X) / eps^2 =", chernoff_metric(np.eye(2) / 2, 1e-3 * np.array([[0, 1], [1, 0]])) / 1e-6)

# %% a quick pass over every registered check
for report in run_all(seed=0, trials=50):
    print(report.format_line())
