//! Oscillator representation of the diffeomorphism generators on truncated
//! Fock windows.

pub mod aux;
pub mod basis;
pub mod generators;
pub mod hamiltonian;
pub mod matrix;
pub mod operator;
pub mod probe;
pub mod realization;
pub mod sr;
pub mod state;
pub mod superconformal;

pub use aux::{AuxConfig, AuxConstants};
pub use basis::{enumerate_basis, Basis, Window};
pub use generators::{
    commutator_defect, ext_density, ext_operator, generator_matrix, generator_operator, required_margin,
    temporal_generator, DefectResult,
};
pub use matrix::{residual_summary, Exec, WindowMatrix};
pub use operator::{mode_matrix, Field, FieldOperator, Word};
pub use probe::{central_charge_probe, ProbeResult, TemporalFamily, VirasoroFamily};
pub use state::{FockState, Kind, Label, ModeSpace};
pub use realization::{verify_realization, ModeFamily, PairFailure, RealizationReport};
pub use superconformal::{verify_superconformal, SuperconformalFamily};
pub use hamiltonian::{contact_generator, hamiltonian_ext, hamiltonian_generator};
pub use sr::{ext_both_forms, ext_via_kernels, r_matrix, r_operator, s_matrix, s_operator};
