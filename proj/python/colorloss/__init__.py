"""Qubit-loss reconstruction and threshold estimation for 2D color codes."""

from colorloss._core import (
    IoError,
    Lattice,
    ProtocolError,
    ValidationError,
    build_lattice,
    derive_seed,
    fit_exponent,
    fit_fraction,
    fit_threshold,
    lattice_from_json,
    reconstruct,
    run_trials,
    sample_critical_rate,
    sample_losses,
    survives,
    sweep,
)

__all__ = [
    "IoError",
    "Lattice",
    "ProtocolError",
    "ValidationError",
    "build_lattice",
    "derive_seed",
    "fit_exponent",
    "fit_fraction",
    "fit_threshold",
    "lattice_from_json",
    "reconstruct",
    "run_trials",
    "sample_critical_rate",
    "sample_losses",
    "survives",
    "sweep",
]
