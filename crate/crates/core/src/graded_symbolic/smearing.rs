//! Lie derivative acting on smearing tensors `f^{tau_1..tau_q}_{sigma_1..sigma_p}`.

use super::dimension::{Parity, SuperDimension};
use super::field::{divergence, SuperVectorField};
use super::function::SuperFunction;
use crate::error::{Error, Result};
use crate::scalar::{Gq, Rat};
use std::collections::BTreeMap;

/// Index tuple `(upper taus, lower sigmas)`.
pub type TensorIndex = (Vec<usize>, Vec<usize>);

/// Smearing tensor with `q` upper and `p` lower indices. A component with
/// indices `I` has parity `parity + sum deg I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmearingTensor {
    pub dim: SuperDimension,
    pub upper_rank: usize,
    pub lower_rank: usize,
    pub parity: Parity,
    components: BTreeMap<TensorIndex, SuperFunction>,
}

impl SmearingTensor {
    pub fn new(dim: SuperDimension, upper_rank: usize, lower_rank: usize, parity: Parity) -> SmearingTensor {
        SmearingTensor { dim, upper_rank, lower_rank, parity, components: BTreeMap::new() }
    }

    pub fn scalar(f: SuperFunction) -> Result<SmearingTensor> {
        let mut t = SmearingTensor::new(f.dim(), 0, 0, f.parity_or_even()?);
        t.set(vec![], vec![], f)?;
        Ok(t)
    }

    pub fn set(&mut self, upper: Vec<usize>, lower: Vec<usize>, f: SuperFunction) -> Result<()> {
        if upper.len() != self.upper_rank || lower.len() != self.lower_rank {
            return Err(Error::RankMismatch(format!(
                "expected ({}, {}) indices, got ({}, {})",
                self.upper_rank,
                self.lower_rank,
                upper.len(),
                lower.len()
            )));
        }
        if let Some(&bad) = upper.iter().chain(&lower).find(|&&i| !self.dim.is_valid(i)) {
            return Err(Error::InvalidIndex { index: bad, dim: self.dim.to_string() });
        }
        if !f.is_zero() {
            let expect = upper.iter().chain(&lower).fold(self.parity, |p, &i| p + self.dim.deg(i));
            if f.parity() != Some(expect) {
                return Err(Error::Parity(format!("component {upper:?}{lower:?} must be {expect}")));
            }
        }
        if f.is_zero() {
            self.components.remove(&(upper, lower));
        } else {
            self.components.insert((upper, lower), f);
        }
        Ok(())
    }

    pub fn get(&self, upper: &[usize], lower: &[usize]) -> SuperFunction {
        self.components
            .get(&(upper.to_vec(), lower.to_vec()))
            .cloned()
            .unwrap_or_else(|| SuperFunction::zero(self.dim))
    }

    pub fn components(&self) -> impl Iterator<Item = (&TensorIndex, &SuperFunction)> {
        self.components.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    fn all_indices(&self) -> Vec<TensorIndex> {
        let n = self.dim.len();
        let total = self.upper_rank + self.lower_rank;
        let mut out = Vec::new();
        let mut cur = vec![0usize; total];
        loop {
            out.push((cur[..self.upper_rank].to_vec(), cur[self.upper_rank..].to_vec()));
            let mut k = total;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                cur[k] += 1;
                if cur[k] < n {
                    break;
                }
                cur[k] = 0;
            }
        }
    }
}

fn bit(p: Parity) -> u32 {
    p.bit() as u32
}

fn lie_homogeneous(xi: &SuperVectorField, f: &SmearingTensor, kappa: Rat) -> SmearingTensor {
    let d = f.dim;
    let xp = bit(xi.parity().unwrap());
    let fp = bit(f.parity);
    let deg = |i: usize| bit(d.deg(i));
    let div = divergence(xi);
    let weight = Gq::real(Rat::ONE - kappa);
    let mut out = SmearingTensor::new(d, f.upper_rank, f.lower_rank, f.parity + xi.parity().unwrap());
    for (taus, sigmas) in f.all_indices() {
        let mut acc = xi.apply(&f.get(&taus, &sigmas));
        acc += &(&div * &f.get(&taus, &sigmas)).scale(weight);
        let tau_sum: u32 = taus.iter().map(|&t| deg(t)).sum();
        for i in 0..sigmas.len() {
            let tail: u32 = sigmas[i + 1..].iter().map(|&s| deg(s)).sum();
            for mu in d.indices() {
                let mut s2 = sigmas.clone();
                s2[i] = mu;
                let comp = f.get(&taus, &s2);
                if comp.is_zero() {
                    continue;
                }
                let e = (fp + tau_sum + tail) * (deg(mu) + deg(sigmas[i])) + xp * deg(sigmas[i]);
                let term = &xi.component(mu).derive(sigmas[i]) * &comp;
                acc += &term.scale(Gq::sign(e % 2 == 1));
            }
        }
        for j in 0..taus.len() {
            let tail: u32 = taus[j + 1..].iter().map(|&t| deg(t)).sum();
            for mu in d.indices() {
                let mut t2 = taus.clone();
                t2[j] = mu;
                let comp = f.get(&t2, &sigmas);
                if comp.is_zero() {
                    continue;
                }
                let e = (fp + tail + deg(mu)) * (deg(mu) + deg(taus[j])) + xp * deg(mu);
                let term = &xi.component(taus[j]).derive(mu) * &comp;
                acc += &term.scale(-Gq::sign(e % 2 == 1));
            }
        }
        if !acc.is_zero() {
            out.components.insert((taus, sigmas), acc);
        }
    }
    out
}

/// Dual action `l_xi f` on a smearing tensor for densities of weight `kappa`.
pub fn lie_derivative_smearing(
    xi: &SuperVectorField,
    f: &SmearingTensor,
    kappa: Rat,
) -> Result<SmearingTensor> {
    if xi.dim() != f.dim {
        return Err(Error::DimensionMismatch(xi.dim().to_string(), f.dim.to_string()));
    }
    let (even, odd) = xi.split_parity();
    let mut parts = Vec::new();
    for part in [even, odd] {
        if !part.is_zero() {
            parts.push(lie_homogeneous(&part, f, kappa));
        }
    }
    match parts.len() {
        0 => Ok(SmearingTensor::new(f.dim, f.upper_rank, f.lower_rank, f.parity)),
        1 => Ok(parts.pop().unwrap()),
        _ => Err(Error::Parity("mixed-parity field acting on a tensor".into())),
    }
}
