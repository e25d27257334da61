//! Unitary switching dynamics of the two-quantum-dot spin inverter.
//!
//! Two electrons on two tunnel-coupled dots (A and B) are described by a
//! two-site Hubbard model with hopping `v`, on-site repulsion `u` and a local
//! Zeeman field `h_a` on dot A. The system starts in the zero-field ground
//! state; the field is switched on at `t = 0` and the state is propagated
//! exactly through the eigen-decomposition of the field-on Hamiltonian.
//!
//! Energies are measured in the same unit as `v` and times in units of
//! `ħ / energy`, so `ħ = 1` throughout. The [`units`] module converts results
//! back to seconds and Tesla.

#![allow(clippy::needless_range_loop)]

pub mod analytic;
pub mod cli;
pub mod eigen;
pub mod error;
pub mod evolution;
pub mod golden;
pub mod model;
pub mod switching;
pub mod units;

pub use analytic::{AnalyticU0, HeisenbergAsymptotics, SingletBlock};
pub use eigen::{diagonalize, ground_state, EigenSystem};
pub use error::{Error, Result};
pub use evolution::{
    evolve, evolve_direct, probabilities, project, spin_projections, Probabilities, SpectralState,
    SpinObservables, StateVector,
};
pub use model::{build_hamiltonian, BasisState, HamiltonianMatrix, ModelParams, BASIS, DIM};
pub use switching::{
    error_probability, find_t0, optimize_field, sweep_field, ScanOptions, SweepEntry,
    SwitchingReport,
};
pub use units::{to_physical, PhysicalUnits};
