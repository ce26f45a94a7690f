"""Exact and simulated no-k-gon probabilities for independently sampled stick lengths."""

from .errors import ContractViolation, DomainError
from .exact_sequences import (
    SequenceSpec,
    fibonacci,
    fibonorial,
    kbonacci,
    p_cannot_ngon,
    p_no_quadrilateral,
    p_no_triangle,
    tribonacci,
)
from .polytope_oracle import grid_volume_estimate, probability_oracle, substitution_coefficients
from .spacings_integrator import CoeffState, KGonQuery, coefficient_trace, init_state, probability, step

__version__ = "0.1.0"
