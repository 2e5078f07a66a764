//! Functions, vector fields and brackets on `(N+1|M)`-dimensional superspace.

pub mod dimension;
pub mod dsl;
pub mod field;
pub mod function;
pub mod jets;
pub mod smearing;
pub mod symplectic;

pub use dimension::{koszul, Parity, SuperDimension, Var};
pub use dsl::{parse_field, parse_function, parse_named_field, parse_named_function};
pub use field::{divergence, lie_bracket, SuperVectorField};
pub use function::{Monomial, SuperFunction};
pub use jets::{tilde_components, verify_lemma34, Lemma34Report};
pub use smearing::{lie_derivative_smearing, SmearingTensor};
pub use symplectic::{
    contact_bracket, contact_field, delta, euler_field, hamiltonian_field, poisson_bracket, z_derivative,
    SymplecticData,
};
