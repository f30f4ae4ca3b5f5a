"""
The curve s -> Tr[rho^s sigma^(1-s)]
=====================================

Tabulate the curve, locate its minimum, and look at the Hellinger arc
point where the two relative entropies balance.
"""
import numpy as np

from qchernoff import chernoff, hellinger_arc, q_s
from qchernoff.states import random_density

rho = random_density(2, seed=11)
sigma = random_density(2, seed=12)

# %% the curve is convex, equal to 1 at both ends for full-rank states
for s in np.linspace(0, 1, 11):
    print(f"s = {s:.1f}   Tr = {q_s(rho, sigma, s):.8f}")

# %% its minimum
res = chernoff(rho, sigma)
print(f"\nminimum {res.q_value:.10f} at s* = {res.s_star:.10f} ({res.evaluations} evaluations)")

# %% at s* the arc point is equidistant from both states in relative entropy
for s in (0.25, res.s_star, 0.75):
    pt = hellinger_arc(rho, sigma, s)
    print(f"s = {s:.4f}  S(tau||rho) = {pt.rel_ent_to_rho:.8f}  S(tau||sigma) = {pt.rel_ent_to_sigma:.8f}")

# %% a pure state pins the minimum to the boundary
psi = np.array([0.6, 0.8])
pure = np.outer(psi, psi)
res = chernoff(pure, sigma)
print(f"\npure rho: s* = {res.s_star}, Q = {res.q_value:.10f}, <psi|sigma|psi> = {(psi @ sigma @ psi).real:.10f}")
