"""Quantum Chernoff bound: error exponents and distinguishability measures
for pairs of quantum states, exact n-copy discrimination, and randomised
checks of the underlying trace inequalities."""

from .channels import (
    QuantumChannel,
    apply_channel,
    attach_ancilla,
    partial_trace,
    random_channel,
)
from .errors import QCBError
from .linalg import (
    eig_hermitian,
    frac_power,
    jordan_positive_part,
    kron,
    matrix_log_on_support,
    trace_norm,
)
from .measures import (
    ChernoffResult,
    HellingerArcPoint,
    HelstromResult,
    chernoff,
    chernoff_metric,
    classical_chernoff,
    fidelity,
    hellinger_arc,
    helstrom,
    q_s,
    relative_entropy,
    trace_distance,
)
from .multicopy import CopyScanResult, copy_scan, p_err_n, tensor_power
from .states import (
    PriorPair,
    density_from_matrix,
    random_density,
    random_perturbation,
    random_unitary,
)
from .verify import VerificationReport, run_all

__version__ = "0.1.0"
