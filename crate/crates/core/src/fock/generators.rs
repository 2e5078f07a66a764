//! Normal-ordered diffeomorphism generators and their extension.

use super::aux::AuxConfig;
use super::basis::{enumerate_basis, Basis, Window};
use super::matrix::WindowMatrix;
use super::operator::{Field, FieldOperator};
use crate::error::{Error, Result};
use crate::graded_symbolic::{divergence, lie_bracket, tilde_components, Parity, SuperFunction, SuperVectorField};
use crate::scalar::Gq;
use std::sync::Arc;

/// `L_xi = int :xi~^i p_i: + xi^0 L + (d xi) T`, with
/// `:F p: = F p^< + (-)^{F p} p^> F`.
pub fn generator_operator(xi: &SuperVectorField, aux: &AuxConfig) -> Result<FieldOperator> {
    let d = xi.dim();
    let parity = xi.checked_parity()?;
    for c in xi.components() {
        if c.has_time_polynomial() {
            return Err(Error::NonPeriodic(c.to_string()));
        }
        if c.jet_order() > 0 {
            return Err(Error::Invalid(format!("vector field component {c} depends on jets")));
        }
    }
    let space = aux.space(d);
    let mut op = FieldOperator { words: Vec::new(), parity: Some(parity) };
    let tilde = tilde_components(xi);
    for i in d.spatial() {
        let (even, odd) = tilde[i].split_parity();
        for (part, p) in [(even, Parity::Even), (odd, Parity::Odd)] {
            if part.is_zero() {
                continue;
            }
            op.extend(FieldOperator::from_function(&part, Gq::ONE, 0, &[], &[Field::PLess(i)])?);
            let s = Gq::sign(p.is_odd() && d.is_fermionic(i));
            op.extend(FieldOperator::from_function(&part, s, 0, &[Field::PGreater(i)], &[])?);
        }
    }
    op.extend(aux.smeared_l(xi.component(0), &space)?);
    op.parity = Some(parity);
    Ok(op)
}

pub fn generator_matrix(xi: &SuperVectorField, aux: &AuxConfig, basis: &Arc<Basis>) -> Result<WindowMatrix> {
    generator_operator(xi, aux)?.matrix(basis)
}

/// Jet density of the extension, without the overall `1/(2 pi i) int dt`.
pub fn ext_density(xi: &SuperVectorField, eta: &SuperVectorField, aux: &AuxConfig) -> Result<SuperFunction> {
    let d = xi.dim();
    let px = xi.checked_parity()?;
    let pe = eta.checked_parity()?;
    let k = aux.declared();
    let cc = (k.c + Gq::int(2 * d.super_dimension_spatial() as i128)) / Gq::int(12);
    let dot = |f: &SuperFunction| f.v_grad();
    let ddot = |f: &SuperFunction| f.v_grad().total_dt();
    let (x0, e0) = (xi.component(0), eta.component(0));
    let (divx, dive) = (divergence(xi), divergence(eta));
    let mut out = SuperFunction::zero(d);
    for nu in d.indices() {
        let s = Gq::sign((px.is_odd() ^ pe.is_odd() ^ d.is_fermionic(nu)) && d.is_fermionic(nu));
        for mu in d.indices() {
            let t1 = &dot(&xi.component(mu).derive(nu)) * &eta.component(nu).derive(mu);
            out += &t1.scale(s * (Gq::ONE + k.k1));
        }
        let t3 = &x0.derive(nu) * &dot(&dot(eta.component(nu)));
        out += &t3.scale(s);
    }
    out += &(&dot(&divx) * &dive).scale(k.k2);
    for mu in d.indices() {
        out -= &(&dot(&dot(xi.component(mu))) * &e0.derive(mu));
    }
    out -= &(&dot(x0) * &dot(&dot(e0)));
    out += &(&dot(&dot(x0)) * &dot(e0));
    let half = Gq::frac(1, 2);
    out += &(&dot(&divx) * &dot(e0)).scale(half);
    out -= &(&dot(x0) * &dot(&dive)).scale(half);
    out -= &(&ddot(x0)? * &dot(e0)).scale(Gq::int(2) - cc);
    out -= &(&dot(x0) * e0).scale(cc);
    let i_half = Gq::I * half;
    out += &(&(&divx * &dot(e0)) - &(&dot(x0) * &dive)).scale(i_half);
    Ok(out)
}

/// `ext(xi, eta) = (1/(2 pi i)) int dt density`.
pub fn ext_operator(xi: &SuperVectorField, eta: &SuperVectorField, aux: &AuxConfig) -> Result<FieldOperator> {
    let density = ext_density(xi, eta, aux)?;
    let mut op = FieldOperator::from_function(&density, -Gq::I, -1, &[], &[])?;
    op.parity = Some(xi.checked_parity()? + eta.checked_parity()?);
    Ok(op)
}

pub fn ext_operator_matrix(
    xi: &SuperVectorField,
    eta: &SuperVectorField,
    aux: &AuxConfig,
    basis: &Arc<Basis>,
) -> Result<WindowMatrix> {
    ext_operator(xi, eta, aux)?.matrix(basis)
}

/// Window on which products of operators shifting `(E, D)` by at most the
/// margin are exact when restricted back to `inner`.
pub fn required_margin(xi: &SuperVectorField, eta: &SuperVectorField) -> Window {
    let deg = |v: &SuperVectorField| v.spatial_degree();
    Window::new((xi.bandwidth() + eta.bandwidth()) as i64, deg(xi) + deg(eta))
}

/// `[L_xi, L_eta} - L_{[xi, eta]}` on `inner`, computed on `inner + margin`.
#[derive(Clone, Debug)]
pub struct DefectResult {
    pub defect: WindowMatrix,
    pub ext: WindowMatrix,
    pub outer: Window,
}

impl DefectResult {
    pub fn residual(&self) -> Result<WindowMatrix> {
        self.defect.sub(&self.ext)
    }
}

fn check_margin(required: Window, margin: Window) -> Result<()> {
    if !margin.covers(required) {
        return Err(Error::InsufficientMargin(format!("margin {margin} is below the required {required}")));
    }
    Ok(())
}

pub fn commutator_defect(
    xi: &SuperVectorField,
    eta: &SuperVectorField,
    aux: &AuxConfig,
    inner: Window,
    margin: Window,
) -> Result<DefectResult> {
    if xi.dim() != eta.dim() {
        return Err(Error::DimensionMismatch(xi.dim().to_string(), eta.dim().to_string()));
    }
    check_margin(required_margin(xi, eta), margin)?;
    let outer = inner.widen(margin);
    let basis = Arc::new(enumerate_basis(&aux.space(xi.dim()), outer));
    let lx = generator_matrix(xi, aux, &basis)?;
    let le = generator_matrix(eta, aux, &basis)?;
    let comm = lx.graded_commutator(&le)?.restrict(inner)?;
    let bracket = lie_bracket(xi, eta)?;
    let inner_basis = Arc::new(basis.restrict(inner));
    let lb = generator_matrix(&bracket, aux, &inner_basis)?;
    let defect = comm.sub(&lb)?;
    let ext = ext_operator_matrix(xi, eta, aux, &inner_basis)?;
    Ok(DefectResult { defect, ext, outer })
}

/// `-i L_xi` for `xi = exp(imt) d_0`, the temporal Virasoro generator.
pub fn temporal_generator(dim: crate::graded_symbolic::SuperDimension, m: i64) -> SuperVectorField {
    SuperVectorField::single(0, SuperFunction::fourier(dim, m).scale(-Gq::I))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::matrix::residual_summary;
    use crate::fock::operator::mode_matrix;
    use crate::fock::state::Kind;
    use crate::graded_symbolic::{parse_field, SuperDimension};

    fn field(s: &str, d: SuperDimension) -> SuperVectorField {
        parse_field(s, d).unwrap()
    }

    #[test]
    fn canonical_relations() {
        for d in [SuperDimension::new(1, 0), SuperDimension::new(0, 1)] {
            let space = AuxConfig::Trivial.space(d);
            let outer = Arc::new(enumerate_basis(&space, Window::new(4, 3)));
            for m in -2i64..=2 {
                for n in -2i64..=2 {
                    let p = mode_matrix(&outer, Kind::P, 1, m);
                    let q = mode_matrix(&outer, Kind::Q, 1, n);
                    let c = p.graded_commutator(&q).unwrap().restrict(Window::new(2, 1)).unwrap();
                    let want = if m + n == 0 { WindowMatrix::identity(c.basis.clone()) } else { WindowMatrix::zero(c.basis.clone()) };
                    let want = want.shift_tau(c.tau_power);
                    assert_eq!(c, want, "{d} m={m} n={n}");
                }
            }
        }
    }

    #[test]
    fn master_identity_small() {
        let d = SuperDimension::new(1, 0);
        let cases = [
            ("exp(i*t)*x1*d1", "exp(i*-1*t)*x1*d1"),
            ("exp(i*2*t)*d0", "exp(i*-2*t)*d0"),
            ("exp(i*3*t)*d0", "exp(i*-3*t)*d0"),
            ("exp(i*2*t)*x1*d0", "exp(i*-1*t)*x1*d1"),
            ("exp(i*t)*x1*d0", "exp(i*-2*t)*x1*d0"),
        ];
        for (a, b) in cases {
            let (xi, eta) = (field(a, d), field(b, d));
            let r = commutator_defect(&xi, &eta, &AuxConfig::Trivial, Window::new(3, 2), required_margin(&xi, &eta)).unwrap();
            let res = r.residual().unwrap();
            assert!(!r.defect.is_zero(), "{a}, {b}: trivial defect");
            assert!(res.is_zero(), "{a}, {b}: {}\ndefect {}\next {}", residual_summary(&res, 6), r.defect, r.ext);
        }
    }

    fn check(d: SuperDimension, aux: AuxConfig, inner: Window, a: &str, b: &str) {
        let (xi, eta) = (field(a, d), field(b, d));
        let r = commutator_defect(&xi, &eta, &aux, inner, required_margin(&xi, &eta)).unwrap();
        let res = r.residual().unwrap();
        assert!(res.is_zero(), "{d} {aux} {a}, {b}: {}", residual_summary(&res, 6));
    }

    #[test]
    fn master_identity_super() {
        let d = SuperDimension::new(1, 1);
        let w = Window::new(2, 1);
        check(d, AuxConfig::Trivial, w, "exp(i*t)*th1*d1", "exp(i*-1*t)*x1*dth1");
        check(d, AuxConfig::Trivial, w, "exp(i*t)*th1*d0", "exp(i*-2*t)*th1*d0");
        check(d, AuxConfig::Trivial, w, "exp(i*t)*th1*dth1", "exp(i*-1*t)*x1*th1*dth1");
        check(d, AuxConfig::Trivial, w, "exp(i*2*t)*d0 + th1*dth1", "exp(i*-2*t)*d0");
        check(d, AuxConfig::Trivial, w, "exp(i*t)*dth1", "exp(i*-1*t)*th1*d0");
        let d = SuperDimension::new(0, 2);
        check(d, AuxConfig::Trivial, w, "exp(i*t)*th1*dth2", "exp(i*-1*t)*th2*th1*d0");
    }

    #[test]
    fn master_identity_with_aux() {
        let d = SuperDimension::new(1, 0);
        let w = Window::new(2, 1);
        for aux in [AuxConfig::Oscillator { bosons: 1, fermions: 0 }, AuxConfig::Oscillator { bosons: 0, fermions: 1 }] {
            check(d, aux, w, "exp(i*2*t)*d0", "exp(i*-2*t)*d0");
            check(d, aux, w, "exp(i*t)*x1*d0", "exp(i*-2*t)*d1");
        }
    }

    #[test]
    fn translation_annihilates_vacuum() {
        let d = SuperDimension::new(1, 1);
        let b = Arc::new(enumerate_basis(&AuxConfig::Trivial.space(d), Window::new(2, 2)));
        for x in ["d1", "dth1"] {
            let m = generator_matrix(&field(x, d), &AuxConfig::Trivial, &b).unwrap();
            assert!(m.column(0).is_empty(), "{x}");
            assert!(!m.is_zero(), "{x}");
        }
    }

    fn mode_law(d: SuperDimension, x: &str, dotted: bool) {
        let xi = field(x, d);
        let aux = AuxConfig::Trivial;
        let inner = Window::new(2, 1);
        let outer = Arc::new(enumerate_basis(&aux.space(d), inner.widen(Window::new(xi.bandwidth() as i64 + 2, xi.spatial_degree() + 1))));
        let inner_b = Arc::new(outer.restrict(inner));
        let l = generator_matrix(&xi, &aux, &outer).unwrap();
        let tilde = tilde_components(&xi);
        for nu in d.spatial() {
            for n in -2i64..=2 {
                let f = if dotted { Field::Qd(nu) } else { Field::Q(nu) };
                let w = crate::fock::operator::Word { coeff: Gq::ONE, tau: -1, fourier: n, factors: vec![f] };
                let q = FieldOperator { words: vec![w], parity: Some(d.deg(nu)) };
                let lhs = l.graded_commutator(&q.matrix(&outer).unwrap()).unwrap().restrict(inner).unwrap();
                let density = if dotted { tilde[nu].total_dt().unwrap() } else { tilde[nu].clone() };
                let mut rhs = FieldOperator::from_function(&density.shift_fourier(n), Gq::ONE, -1, &[], &[]).unwrap();
                rhs.parity = Some(xi.checked_parity().unwrap() + d.deg(nu));
                assert_eq!(lhs, rhs.matrix(&inner_b).unwrap(), "{x}, component {nu}, mode {n}");
            }
        }
    }

    #[test]
    fn position_transforms_by_tilde_field() {
        mode_law(SuperDimension::new(1, 0), "exp(i*t)*x1^2*d1 + exp(i*-1*t)*x1*d0", false);
        mode_law(SuperDimension::new(1, 1), "exp(i*t)*th1*d1 + x1*th1*d0 + exp(i*2*t)*dth1", false);
        mode_law(SuperDimension::new(0, 1), "exp(i*t)*th1*dth1 + exp(i*-1*t)*d0", false);
    }

    #[test]
    fn velocity_transforms_by_time_derivative() {
        mode_law(SuperDimension::new(1, 0), "exp(i*t)*x1^2*d1 + exp(i*-1*t)*x1*d0", true);
        mode_law(SuperDimension::new(1, 1), "exp(i*t)*th1*d1 + x1*th1*d0", true);
    }

    #[test]
    fn extension_is_graded_antisymmetric() {
        let pairs = [((1, 0), "exp(i*t)*x1^2*d0", "exp(i*-2*t)*x1*d1"), ((1, 1), "exp(i*t)*th1*d0", "exp(i*-1*t)*x1*th1*d0")];
        for ((n, m), a, b) in pairs {
            let d = SuperDimension::new(n, m);
            let (xi, eta) = (field(a, d), field(b, d));
            let basis = Arc::new(enumerate_basis(&AuxConfig::Trivial.space(d), Window::new(3, 2)));
            let e1 = ext_operator_matrix(&xi, &eta, &AuxConfig::Trivial, &basis).unwrap();
            let e2 = ext_operator_matrix(&eta, &xi, &AuxConfig::Trivial, &basis).unwrap();
            let s = Gq::sign(!(xi.checked_parity().unwrap().is_odd() && eta.checked_parity().unwrap().is_odd()));
            assert!(!e1.is_zero());
            assert_eq!(e2, e1.scale(s), "{a}, {b}");
        }
    }

    #[test]
    fn words_shift_energy_by_fourier_modes() {
        let d = SuperDimension::new(1, 1);
        let xi = field("exp(i*2*t)*x1*th1*d1 + exp(i*-1*t)*th1*d0 + x1^2*dth1", d);
        let support = [2, -1, 0];
        let op = generator_operator(&xi, &AuxConfig::Oscillator { bosons: 1, fermions: 1 }).unwrap();
        assert!(op.words.iter().all(|w| support.contains(&w.fourier)));
        let b = Arc::new(enumerate_basis(&op_space(d), Window::new(3, 2)));
        let m = op.matrix(&b).unwrap();
        for (r, c, _) in m.entries() {
            let shift = b.states()[r].energy() - b.states()[c].energy();
            assert!(support.contains(&shift));
        }
    }

    fn op_space(d: SuperDimension) -> crate::fock::state::ModeSpace {
        AuxConfig::Oscillator { bosons: 1, fermions: 1 }.space(d)
    }

    #[test]
    fn under_margin_is_refused() {
        let d = SuperDimension::new(1, 0);
        let (xi, eta) = (field("exp(i*t)*d1", d), field("exp(i*-1*t)*x1*d1", d));
        let err = commutator_defect(&xi, &eta, &AuxConfig::Trivial, Window::new(3, 2), Window::new(1, 1)).unwrap_err();
        assert!(matches!(err, Error::InsufficientMargin(_)));
        assert!(commutator_defect(&xi, &eta, &AuxConfig::Trivial, Window::new(3, 2), Window::new(2, 1)).is_ok());
    }
}
