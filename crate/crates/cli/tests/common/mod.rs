//! Seeded random inputs shared by the integration targets.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use superfock::graded_symbolic::{Parity, SuperDimension, SuperFunction, SuperVectorField, Var};
use superfock::scalar::Gq;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Nonzero rational with small numerator and denominator.
pub fn small_rational(r: &mut impl Rng) -> Gq {
    let num = r.gen_range(-4i128..=4);
    let den = r.gen_range(1i128..=3);
    Gq::frac(if num == 0 { 1 } else { num }, den)
}

/// `small_rational`, times `i` a quarter of the time.
pub fn small_gaussian(r: &mut impl Rng) -> Gq {
    let q = small_rational(r);
    if r.gen_bool(0.25) {
        q * Gq::I
    } else {
        q
    }
}

/// Random monomial of spatial degree at most `degree` and the given parity,
/// times `t^k` (if `time_poly`) or `exp(imt)` with `|m| <= bandwidth`.
fn monomial(r: &mut impl Rng, d: SuperDimension, parity: Parity, degree: u32, bandwidth: i64, time_poly: bool) -> SuperFunction {
    loop {
        let mut f = if time_poly {
            let mut f = SuperFunction::one(d);
            for _ in 0..r.gen_range(0..=1) {
                f = &f * &SuperFunction::var(d, Var::Coord(0));
            }
            f
        } else {
            SuperFunction::fourier(d, r.gen_range(-bandwidth..=bandwidth))
        };
        for _ in 0..r.gen_range(0..=degree) {
            let mu = r.gen_range(1..d.len());
            f = &f * &SuperFunction::coord(d, mu);
        }
        if !f.is_zero() && f.parity() == Some(parity) {
            return f.scale(small_gaussian(r));
        }
    }
}

pub struct FieldGen {
    pub dim: SuperDimension,
    pub degree: u32,
    pub bandwidth: i64,
    pub time_poly: bool,
    /// Terms per component, at most.
    pub terms: usize,
}

impl FieldGen {
    /// A field of homogeneous parity `parity`.
    pub fn field(&self, r: &mut impl Rng, parity: Parity) -> SuperVectorField {
        loop {
            let comps: Vec<SuperFunction> = self
                .dim
                .indices()
                .map(|mu| {
                    let want = parity + self.dim.deg(mu);
                    let mut f = SuperFunction::zero(self.dim);
                    if r.gen_bool(0.7) {
                        for _ in 0..r.gen_range(1..=self.terms) {
                            f += &monomial(r, self.dim, want, self.degree, self.bandwidth, self.time_poly);
                        }
                    }
                    f
                })
                .collect();
            let xi = SuperVectorField::new(self.dim, comps).expect("components match the dimension");
            if !xi.is_zero() {
                return xi;
            }
        }
    }

    pub fn any_parity(&self, r: &mut impl Rng) -> SuperVectorField {
        let p = if r.gen_bool(0.5) { Parity::Odd } else { Parity::Even };
        self.field(r, p)
    }
}
