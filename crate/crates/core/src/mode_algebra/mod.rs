//! Abstract graded current algebras with polynomial structure functions.

pub mod builtins;
pub mod contact;
pub mod format;
pub mod poly;
pub mod spec;
pub mod xsc;

pub use builtins::{builtin_spec, kmgl, km, scalg, virasoro, BUILTIN_NAMES};
pub use poly::Poly;
pub use spec::{verify_graded_skewness, verify_super_jacobi, IdentityReport, ModeAlgebraSpec, Target};
pub use xsc::{xsc, xsc_parameters, XscParameters};
