"""Lindblad TR-EPR simulator for radical-triplet systems."""

from ._core import (
    CoupledBasis,
    ModelKind,
    ModelParams,
    Protocol,
    SpectrumConfig,
    SpinOps,
    baseline_params,
    build_hamiltonian,
    build_spin_hamiltonian,
    chi_nonstationary,
    couple_to_total_spin,
    epr_sweep,
    evolve_protocol,
    initial_state,
    jump_channels,
    kubo_closed,
    liouvillian_matrix,
    mk_to_rad_per_ns,
    preset_names,
    run_preset,
    space_dimensions,
    spin_matrices,
    trepr_surface,
    uniform_field_grid,
)

__all__ = [
    "CoupledBasis",
    "ModelKind",
    "ModelParams",
    "Protocol",
    "SpectrumConfig",
    "SpinOps",
    "baseline_params",
    "build_hamiltonian",
    "build_spin_hamiltonian",
    "chi_nonstationary",
    "couple_to_total_spin",
    "epr_sweep",
    "evolve_protocol",
    "initial_state",
    "jump_channels",
    "kubo_closed",
    "liouvillian_matrix",
    "mk_to_rad_per_ns",
    "preset_names",
    "run_preset",
    "space_dimensions",
    "spin_matrices",
    "trepr_surface",
    "uniform_field_grid",
]
