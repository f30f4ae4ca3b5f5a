"""
Single-copy distinguishability of two qubit states
===================================================

Compare the Chernoff quantity with the trace distance, the fidelity and
the Helstrom error for one random pair.
"""
import numpy as np

from qchernoff import chernoff, fidelity, helstrom, relative_entropy, trace_distance
from qchernoff.states import random_density

np.set_printoptions(precision=4, suppress=True)

# %% two random full-rank qubit states
rho = random_density(2, seed=1)
sigma = random_density(2, seed=2)
print("rho =\n", rho)
print("sigma =\n", sigma)

# %% Chernoff quantity and exponent
res = chernoff(rho, sigma)
print(f"Q = {res.q_value:.6f} at s* = {res.s_star:.6f}, xi = {res.exponent:.6f}")

# %% the other measures
T = trace_distance(rho, sigma)
F = fidelity(rho, sigma)
print(f"T = {T:.6f}  F = {F:.6f}")
print(f"S(rho||sigma) = {relative_entropy(rho, sigma):.6f}")

# 1 - Q <= T <= sqrt(1 - Q^2), and Q <= F
Q = res.q_value
print(f"{1 - Q:.6f} <= {T:.6f} <= {np.sqrt(1 - Q**2):.6f};  Q <= F: {Q <= F}")

# %% the optimal single-shot measurement
hel = helstrom(rho, sigma)
print(f"Helstrom error = {hel.p_error:.6f}, projector rank {hel.rank}")
print("E1 =\n", hel.e1)
