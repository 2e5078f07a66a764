//! Current algebras over trajectories and their S_1-valued extension.

pub mod algebra;
pub mod currents;

pub use algebra::{FiniteSuperalgebra, Violation};
pub use currents::{
    cocycle_margin, cocycle_operator, current_operator, gauge_cocycle_defect, intertwine_check, intertwine_margin,
    map_bracket, CurrentConfig, CurrentMap, GaugeResult,
};
