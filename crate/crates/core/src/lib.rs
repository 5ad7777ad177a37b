//! Tripartite entanglement of three dipole-coupled two-level atoms, each
//! leaking into its own Lorentzian reservoir.
//!
//! The single-excitation dynamics reduce to a 4×4 linear system for the atomic
//! amplitudes and one pseudomode ([`dynamics`]). From the amplitudes the
//! reduced three-atom state is assembled, mixed with white noise, and its
//! bipartite and tripartite negativities computed ([`entanglement`]).
//! [`harness`] turns parameter sets into CSV tables.

pub mod dynamics;
pub mod eigen;
pub mod entanglement;
pub mod error;
pub mod expm;
pub mod harness;
pub mod linalg;
pub mod quadrature;
pub mod spectral;
pub mod system;

pub use num_complex::Complex64 as C64;

pub use dynamics::{
    build_generator, evolve_resolvent, evolve_stepper, leaked_population, Generator, SolveInfo,
    Trajectory,
};
pub use eigen::hermitian_eigenvalues;
pub use entanglement::{
    assemble_rho, bipartite_negativity, closed_form_negativities, partial_transpose,
    tripartite_negativity, werner_mix, Atom, ClosedFormInputs, DensityMatrix, NegativityRecord,
};
pub use error::{Error, Result};
pub use expm::{ExpPath, Propagator};
pub use harness::{
    detect_esd, expand_preset, parse_config, run, write_csv, PresetId, RunConfig, Solver, Sweep,
    SweepVariable, Table,
};
pub use linalg::SquareMatrix;
pub use spectral::{correlation_function, coupling_regime, lorentzian_density, CouplingRegime};
pub use system::{
    dipole_coupling, validate, AmplitudeState, DipoleGeometry, InitialState, SystemParams,
};
