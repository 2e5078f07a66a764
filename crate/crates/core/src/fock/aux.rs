//! Auxiliary modules for the Virasoro field `L(t)` and the current `T(t)`.

use super::operator::{Field, FieldOperator};
use super::state::ModeSpace;
use crate::error::{Error, Result};
use crate::graded_symbolic::{Parity, SuperDimension, SuperFunction};
use crate::scalar::Gq;
use std::fmt;
use std::str::FromStr;

/// `Trivial` has `L = T = 0`. `Oscillator` realizes `L(t) = -:dq^a p_a:`
/// on extra oscillator pairs; `T` stays zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum AuxConfig {
    #[default]
    Trivial,
    Oscillator { bosons: usize, fermions: usize },
}

/// Aux constants `(c, k1, k2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AuxConstants {
    pub c: Gq,
    pub k1: Gq,
    pub k2: Gq,
}

impl AuxConfig {
    /// Values the realization is expected to have; the probe measures `c`.
    pub fn declared(&self) -> AuxConstants {
        let c = match *self {
            AuxConfig::Trivial => Gq::ZERO,
            AuxConfig::Oscillator { bosons, fermions } => Gq::int(2 * (bosons as i128 - fermions as i128)),
        };
        AuxConstants { c, k1: Gq::ZERO, k2: Gq::ZERO }
    }

    /// Trajectory slots followed by the aux oscillator slots.
    pub fn space(&self, dim: SuperDimension) -> ModeSpace {
        let mut s = ModeSpace::new(dim);
        if let AuxConfig::Oscillator { bosons, fermions } = *self {
            for _ in 0..bosons {
                s.push_aux(Parity::Even);
            }
            for _ in 0..fermions {
                s.push_aux(Parity::Odd);
            }
        }
        s
    }

    fn aux_slots(&self, space: &ModeSpace) -> std::ops::RangeInclusive<usize> {
        let first = space.dim.len();
        first..=space.dim.len() - 1 + space.aux.len()
    }

    /// `int dt f(q(t)) L(t)`.
    pub fn smeared_l(&self, f: &SuperFunction, space: &ModeSpace) -> Result<FieldOperator> {
        let mut out = FieldOperator::zero();
        if f.is_zero() {
            return Ok(out);
        }
        if let AuxConfig::Oscillator { .. } = self {
            for a in self.aux_slots(space) {
                out.extend(FieldOperator::from_function(f, -Gq::ONE, 0, &[], &[Field::Qd(a), Field::PLess(a)])?);
                let s = if space.is_odd(a) { Gq::ONE } else { -Gq::ONE };
                out.extend(FieldOperator::from_function(f, s, 0, &[], &[Field::PGreater(a), Field::Qd(a)])?);
            }
        }
        Ok(out)
    }
}

impl FromStr for AuxConfig {
    type Err = Error;
    fn from_str(s: &str) -> Result<AuxConfig> {
        if s == "trivial" {
            return Ok(AuxConfig::Trivial);
        }
        let spec = s
            .strip_prefix("oscillator:")
            .ok_or_else(|| Error::AuxMissing(format!("unknown aux realization `{s}`")))?;
        let parts: Vec<&str> = spec.split(',').collect();
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| Error::AuxMissing(format!("bad oscillator spec `{spec}`")));
        match parts[..] {
            [b] => Ok(AuxConfig::Oscillator { bosons: parse(b)?, fermions: 0 }),
            [b, f] => Ok(AuxConfig::Oscillator { bosons: parse(b)?, fermions: parse(f)? }),
            _ => Err(Error::AuxMissing(format!("bad oscillator spec `{spec}`"))),
        }
    }
}

impl fmt::Display for AuxConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AuxConfig::Trivial => write!(f, "trivial"),
            AuxConfig::Oscillator { bosons, fermions } => write!(f, "oscillator:{bosons},{fermions}"),
        }
    }
}
