//! Smeared currents `J_X = int dt X_a(q(t)) J^a(t)` over trajectories.
//!
//! The level-`k` abelian currents are realized on one extra boson pair per
//! generator as `J_m = P_m + (k m / 2) Q_m`, i.e. `J(t) = p(t) + (ik/2tau) dq(t)`.
//! Those pairs also carry `L(t) = -:dq p:`, under which `J` is a weight-one
//! primary, so the diffeomorphism generators act on the currents.

use super::algebra::FiniteSuperalgebra;
use crate::error::{Error, Result};
use crate::fock::aux::AuxConfig;
use crate::fock::basis::{enumerate_basis, Window};
use crate::fock::generators::generator_matrix;
use crate::fock::matrix::WindowMatrix;
use crate::fock::operator::{Field, FieldOperator};
use crate::fock::sr::s_operator;
use crate::graded_symbolic::{Parity, SmearingTensor, SuperDimension, SuperFunction, SuperVectorField};
use crate::scalar::Gq;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurrentConfig {
    pub algebra: FiniteSuperalgebra,
    pub level: Gq,
}

/// Component `X_a` for each generator `a`.
pub type CurrentMap = Vec<SuperFunction>;

impl CurrentConfig {
    pub fn new(algebra: FiniteSuperalgebra, level: Gq) -> Result<CurrentConfig> {
        algebra.check()?;
        let n = algebra.dim();
        let identity = (0..n).all(|a| (0..n).all(|b| algebra.delta(a, b) == if a == b { Gq::ONE } else { Gq::ZERO }));
        if !algebra.is_abelian() || algebra.parities.iter().any(|p| p.is_odd()) || !identity {
            return Err(Error::Invalid(format!(
                "{}: only even abelian currents with unit metric have an oscillator realization",
                algebra.name
            )));
        }
        Ok(CurrentConfig { algebra, level })
    }

    /// Aux realization carrying the currents.
    pub fn aux(&self) -> AuxConfig {
        AuxConfig::Oscillator { bosons: self.algebra.dim(), fermions: 0 }
    }

    fn slot(&self, dim: SuperDimension, a: usize) -> usize {
        dim.len() + a
    }

    fn check_map(&self, x: &CurrentMap) -> Result<Parity> {
        if x.len() != self.algebra.dim() {
            return Err(Error::DimensionMismatch(self.algebra.dim().to_string(), x.len().to_string()));
        }
        let mut parity = None;
        for (a, f) in x.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let p = f.parity_or_even()? + self.algebra.parities[a];
            if parity.is_some_and(|q| q != p) {
                return Err(Error::Parity("current map components of mixed parity".into()));
            }
            parity = Some(p);
        }
        Ok(parity.unwrap_or(Parity::Even))
    }
}

/// `J_X`.
pub fn current_operator(x: &CurrentMap, cfg: &CurrentConfig) -> Result<FieldOperator> {
    let parity = cfg.check_map(x)?;
    let mut op = FieldOperator::zero();
    for (a, f) in x.iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        let s = cfg.slot(f.dim(), a);
        op.extend(FieldOperator::from_function(f, Gq::ONE, 0, &[], &[Field::P(s)])?);
        let c = Gq::I * cfg.level * Gq::frac(1, 2);
        op.extend(FieldOperator::from_function(f, c, -1, &[], &[Field::Qd(s)])?);
    }
    op.parity = Some(parity);
    Ok(op)
}

/// `[X, Y]_c = (-)^{a(Y+b)} i f^{ab}_c X_a Y_b`.
pub fn map_bracket(x: &CurrentMap, y: &CurrentMap, cfg: &CurrentConfig) -> Result<CurrentMap> {
    let g = &cfg.algebra;
    let yp = cfg.check_map(y)?.is_odd();
    cfg.check_map(x)?;
    let d = x.first().map(|f| f.dim()).ok_or_else(|| Error::Invalid("empty current map".into()))?;
    let mut out = vec![SuperFunction::zero(d); g.dim()];
    for ((a, b, c), f) in &g.structure {
        let odd = |i: usize| g.parities[i].is_odd();
        let s = Gq::sign(odd(*a) && (yp ^ odd(*b)));
        out[*c] += &(&x[*a] * &y[*b]).scale(s * Gq::I * *f);
    }
    Ok(out)
}

/// `-k int S_1^mu d_mu X_a Y_b delta^{ab} (-)^{a(Y+b)}`, using
/// `int S_1^v h_v = (1/2 pi i) int dt dq^v h_v(q)`.
pub fn cocycle_operator(x: &CurrentMap, y: &CurrentMap, cfg: &CurrentConfig) -> Result<FieldOperator> {
    let g = &cfg.algebra;
    let px = cfg.check_map(x)?;
    let py = cfg.check_map(y)?;
    let d = x[0].dim();
    let mut density = SuperFunction::zero(d);
    for ((a, b), m) in &g.metric {
        let s = Gq::sign(g.parities[*a].is_odd() && (py.is_odd() ^ g.parities[*b].is_odd()));
        density += &(&x[*a].v_grad() * &y[*b]).scale(s * *m);
    }
    let mut op = FieldOperator::from_function(&density, Gq::I * cfg.level, -1, &[], &[])?;
    op.parity = Some(px + py);
    Ok(op)
}

fn map_bandwidth(x: &CurrentMap) -> u64 {
    x.iter().map(SuperFunction::bandwidth).max().unwrap_or(0)
}

fn map_degree(x: &CurrentMap) -> u32 {
    x.iter().map(SuperFunction::spatial_degree).max().unwrap_or(0)
}

#[derive(Clone, Debug)]
pub struct GaugeResult {
    /// `[J_X, J_Y} - J_{[X,Y]}` on the inner window.
    pub defect: WindowMatrix,
    pub cocycle: WindowMatrix,
    /// `[J_X, S_1(h)]` for the probe one-forms.
    pub s1_commutators: Vec<WindowMatrix>,
}

impl GaugeResult {
    pub fn holds(&self) -> bool {
        self.defect == self.cocycle && self.s1_commutators.iter().all(WindowMatrix::is_zero)
    }
}

fn probe_one_forms(d: SuperDimension) -> Result<Vec<SmearingTensor>> {
    let mut out = Vec::new();
    for nu in d.indices() {
        for m in [-1, 1] {
            let mut h = SmearingTensor::new(d, 0, 1, Parity::Even);
            let mut f = SuperFunction::fourier(d, m);
            if nu > 0 {
                f = &f * &SuperFunction::coord(d, nu);
            }
            h.set(vec![], vec![nu], f)?;
            out.push(h);
        }
    }
    Ok(out)
}

/// Widening needed for `[J_X, J_Y}`; the extra unit covers the current itself.
pub fn cocycle_margin(x: &CurrentMap, y: &CurrentMap) -> Window {
    Window::new((map_bandwidth(x) + map_bandwidth(y)) as i64 + 1, map_degree(x) + map_degree(y) + 1)
}

/// Widening needed for `[L_xi, J_Y}`.
pub fn intertwine_margin(xi: &SuperVectorField, y: &CurrentMap) -> Window {
    Window::new((xi.bandwidth() + map_bandwidth(y)) as i64 + 1, xi.spatial_degree() + map_degree(y) + 1)
}

fn check_margin(required: Window, margin: Window) -> Result<()> {
    if !margin.covers(required) {
        return Err(Error::InsufficientMargin(format!("margin {margin} is below the required {required}")));
    }
    Ok(())
}

pub fn gauge_cocycle_defect(
    x: &CurrentMap,
    y: &CurrentMap,
    cfg: &CurrentConfig,
    inner: Window,
    margin: Window,
) -> Result<GaugeResult> {
    let d = x.first().map(|f| f.dim()).ok_or_else(|| Error::Invalid("empty current map".into()))?;
    check_margin(cocycle_margin(x, y), margin)?;
    let basis = Arc::new(enumerate_basis(&cfg.aux().space(d), inner.widen(margin)));
    let inner_b = Arc::new(basis.restrict(inner));
    let jx = current_operator(x, cfg)?.matrix(&basis)?;
    let jy = current_operator(y, cfg)?.matrix(&basis)?;
    let comm = jx.graded_commutator(&jy)?.restrict(inner)?;
    let jb = current_operator(&map_bracket(x, y, cfg)?, cfg)?.matrix(&inner_b)?;
    let defect = comm.sub(&jb)?;
    let cocycle = cocycle_operator(x, y, cfg)?.matrix(&inner_b)?;
    let mut s1_commutators = Vec::new();
    for h in probe_one_forms(d)? {
        let s = s_operator(&h)?.matrix(&basis)?;
        s1_commutators.push(jx.graded_commutator(&s)?.restrict(inner)?);
    }
    Ok(GaugeResult { defect, cocycle, s1_commutators })
}

/// `([L_xi, J_Y}, J_{xi Y})` on the inner window.
pub fn intertwine_check(
    xi: &SuperVectorField,
    y: &CurrentMap,
    cfg: &CurrentConfig,
    inner: Window,
    margin: Window,
) -> Result<(WindowMatrix, WindowMatrix)> {
    let d = xi.dim();
    check_margin(intertwine_margin(xi, y), margin)?;
    let aux = cfg.aux();
    let basis = Arc::new(enumerate_basis(&aux.space(d), inner.widen(margin)));
    let inner_b = Arc::new(basis.restrict(inner));
    let l = generator_matrix(xi, &aux, &basis)?;
    let j = current_operator(y, cfg)?.matrix(&basis)?;
    let comm = l.graded_commutator(&j)?.restrict(inner)?;
    let xy: CurrentMap = y.iter().map(|f| xi.apply(f)).collect();
    let want = current_operator(&xy, cfg)?.matrix(&inner_b)?;
    Ok((comm, want))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded_symbolic::{parse_field, parse_function};

    fn map(d: SuperDimension, src: &[&str]) -> CurrentMap {
        src.iter().map(|s| parse_function(s, d).unwrap()).collect()
    }

    fn u1(k: i128) -> CurrentConfig {
        CurrentConfig::new(FiniteSuperalgebra::u1(), Gq::int(k)).unwrap()
    }

    fn holds(d: SuperDimension, x: &[&str], y: &[&str], cfg: &CurrentConfig) -> GaugeResult {
        let (x, y) = (map(d, x), map(d, y));
        let r = gauge_cocycle_defect(&x, &y, cfg, Window::new(2, 1), cocycle_margin(&x, &y)).unwrap();
        assert_eq!(r.defect, r.cocycle, "{x:?} {y:?}: {}", residual_summary(&r.defect.sub(&r.cocycle).unwrap(), 3));
        assert!(r.s1_commutators.iter().all(WindowMatrix::is_zero));
        r
    }

    use crate::fock::matrix::residual_summary;

    #[test]
    fn fourier_modes_give_level_times_mode() {
        let d = SuperDimension::new(1, 0);
        for m in 1..=2 {
            let x = format!("exp(i*{m}*t)");
            let y = format!("exp(i*-{m}*t)");
            let r = holds(d, &[&x], &[&y], &u1(3));
            let id = WindowMatrix::identity(r.cocycle.basis.clone());
            assert_eq!(r.cocycle, id.scale(Gq::int(-3 * m as i128)));
        }
    }

    #[test]
    fn cocycle_holds_with_spatial_dependence() {
        let d = SuperDimension::new(1, 0);
        let r = holds(d, &["x1"], &["x1"], &u1(2));
        assert!(r.cocycle.is_zero());
        let r = holds(d, &["exp(i*1*t)*x1"], &["exp(i*-1*t)*x1^2"], &u1(2));
        assert!(!r.cocycle.is_zero());
        holds(SuperDimension::new(1, 1), &["exp(i*1*t)*th1"], &["exp(i*-1*t)*x1*th1"], &u1(1));
    }

    #[test]
    fn level_zero_currents_commute() {
        let d = SuperDimension::new(1, 0);
        let r = holds(d, &["exp(i*1*t)*x1"], &["exp(i*-1*t)"], &u1(0));
        assert!(r.defect.is_zero());
    }

    #[test]
    fn cocycle_is_linear_in_level() {
        let d = SuperDimension::new(1, 0);
        let one = holds(d, &["exp(i*1*t)*x1"], &["exp(i*-1*t)*x1"], &u1(1)).cocycle;
        let five = holds(d, &["exp(i*1*t)*x1"], &["exp(i*-1*t)*x1"], &u1(5)).cocycle;
        assert!(!one.is_zero());
        assert_eq!(five, one.scale(Gq::int(5)));
    }

    #[test]
    fn two_generators_are_independent() {
        let d = SuperDimension::new(1, 0);
        let cfg = CurrentConfig::new(FiniteSuperalgebra::abelian(2), Gq::ONE).unwrap();
        let r = holds(d, &["exp(i*1*t)", "0"], &["0", "exp(i*-1*t)"], &cfg);
        assert!(r.cocycle.is_zero() && r.defect.is_zero());
    }

    #[test]
    fn diffeomorphisms_intertwine_currents() {
        let cases = [
            ((1, 0), "d1", "x1"),
            ((1, 0), "exp(i*1*t)*x1*d1", "exp(i*-1*t)*x1"),
            ((1, 0), "-i*exp(i*1*t)*d0", "exp(i*-2*t)*x1"),
            ((1, 0), "-i*exp(i*-1*t)*d0", "exp(i*1*t)"),
            ((1, 1), "x1*dth1", "exp(i*1*t)*x1*th1"),
        ];
        for ((b, f), xi, y) in cases {
            let d = SuperDimension::new(b, f);
            let xi = parse_field(xi, d).unwrap();
            let y = map(d, &[y]);
            let (lhs, rhs) = intertwine_check(&xi, &y, &u1(2), Window::new(2, 1), intertwine_margin(&xi, &y)).unwrap();
            assert!(!lhs.is_zero(), "{xi}: trivial");
            assert_eq!(lhs, rhs, "{xi}: {}", residual_summary(&lhs.sub(&rhs).unwrap(), 3));
        }
    }

    #[test]
    fn non_abelian_algebra_is_refused() {
        assert!(CurrentConfig::new(FiniteSuperalgebra::gl(2, 0), Gq::ONE).is_err());
    }

    #[test]
    fn under_margin_is_refused() {
        let d = SuperDimension::new(1, 0);
        let x = map(d, &["exp(i*2*t)*x1"]);
        let e = gauge_cocycle_defect(&x, &x, &u1(1), Window::new(2, 1), Window::new(1, 1)).unwrap_err();
        assert!(matches!(e, Error::InsufficientMargin(_)));
    }
}
