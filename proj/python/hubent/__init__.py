"""Block entanglement of the half-filled extended Hubbard chain."""

from ._core import (
    block_entropy,
    derivative_scan,
    free_fermion_ground_energy,
    ground_state,
    local_weights,
    momentum_scan,
    perturbation_energies,
    ps_crossover_U,
    ps_rank,
    psd_local_entropy,
    reference_entropy,
    reference_pattern,
    run_point,
    scaling_fit,
    validate,
)

__all__ = [
    "block_entropy",
    "derivative_scan",
    "free_fermion_ground_energy",
    "ground_state",
    "local_weights",
    "momentum_scan",
    "perturbation_energies",
    "ps_crossover_U",
    "ps_rank",
    "psd_local_entropy",
    "reference_entropy",
    "reference_pattern",
    "run_point",
    "scaling_fit",
    "validate",
]
