//! The velocity operators `S_n(h)`, `R_n(g, h)` and the extension written
//! through their kernels.

use super::aux::AuxConfig;
use super::basis::Basis;
use super::generators::ext_operator;
use super::matrix::WindowMatrix;
use super::operator::{Field, FieldOperator};
use crate::error::{Error, Result};
use crate::graded_symbolic::{divergence, Parity, SmearingTensor, SuperDimension, SuperFunction, SuperVectorField};
use crate::scalar::Gq;
use std::sync::Arc;

fn odd(d: &SuperDimension, i: usize) -> bool {
    d.is_fermionic(i)
}

/// Koszul sign of reordering `idx` by `perm` (`out[k] = idx[perm[k]]`).
fn permutation_sign(d: &SuperDimension, idx: &[usize], perm: &[usize]) -> bool {
    let mut neg = false;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] && odd(d, idx[perm[a]]) && odd(d, idx[perm[b]]) {
                neg = !neg;
            }
        }
    }
    neg
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

/// Checks `h_{..a b..} = (-)^{ab} h_{..b a..}` over the lower indices
/// after the first `skip`.
pub fn check_graded_symmetric(h: &SmearingTensor, skip: usize) -> Result<()> {
    let d = h.dim;
    for ((_, lower), f) in h.components() {
        for k in skip..lower.len().saturating_sub(1) {
            let mut sw = lower.clone();
            sw.swap(k, k + 1);
            let s = Gq::sign(odd(&d, lower[k]) && odd(&d, lower[k + 1]));
            if &h.get(&[], &sw).scale(s) != f {
                return Err(Error::NotSymmetric(format!("component {lower:?} vs {sw:?}")));
            }
        }
    }
    Ok(())
}

/// Graded symmetrization of the lower indices after the first `skip`.
pub fn graded_symmetrize(h: &SmearingTensor, skip: usize) -> Result<SmearingTensor> {
    let d = h.dim;
    let n = h.lower_rank - skip;
    let perms = permutations(n);
    let weight = Gq::int(perms.len() as i128).recip();
    let mut acc: std::collections::BTreeMap<Vec<usize>, SuperFunction> = Default::default();
    for ((_, lower), f) in h.components() {
        let tail = &lower[skip..];
        for p in &perms {
            // The component at `tail` feeds the permuted slot.
            let mut target = lower[..skip].to_vec();
            target.extend(p.iter().map(|&k| tail[k]));
            let s = Gq::sign(permutation_sign(&d, tail, p));
            let e = acc.entry(target).or_insert_with(|| SuperFunction::zero(d));
            *e += &f.scale(s * weight);
        }
    }
    let mut out = SmearingTensor::new(d, 0, h.lower_rank, h.parity);
    for (k, f) in acc {
        out.set(vec![], k, f)?;
    }
    Ok(out)
}

fn velocity_factors(idx: &[usize]) -> Vec<Field> {
    idx.iter().filter(|&&i| i != 0).map(|&i| Field::Qd(i)).collect()
}

fn check_smearing(h: &SmearingTensor) -> Result<()> {
    if h.upper_rank != 0 {
        return Err(Error::RankMismatch("smearing tensors carry lower indices only".into()));
    }
    for (_, f) in h.components() {
        if f.jet_order() > 0 {
            return Err(Error::Invalid(format!("smearing component {f} depends on jets")));
        }
    }
    Ok(())
}

/// `S_n(h) = -(1/2 pi i) int dt dq^{v_1}..dq^{v_n} h_{v_1..v_n}(q)`, `n = rank h`.
pub fn s_operator(h: &SmearingTensor) -> Result<FieldOperator> {
    check_smearing(h)?;
    check_graded_symmetric(h, 0)?;
    let mut op = FieldOperator::zero();
    for ((_, lower), f) in h.components() {
        op.extend(FieldOperator::from_function(f, Gq::I, -1, &velocity_factors(lower), &[])?);
    }
    op.parity = Some(h.parity);
    Ok(op)
}

/// `R_n(G) = -(1/2 pi i) int dt ddq^mu dq^{v_1}..dq^{v_n} G_{mu|v_1..v_n}(q)`;
/// `G` has rank `n + 1` and is symmetric after its first index.
pub fn r_operator(g: &SmearingTensor) -> Result<FieldOperator> {
    check_smearing(g)?;
    if g.lower_rank == 0 {
        return Err(Error::RankMismatch("R needs at least one index".into()));
    }
    check_graded_symmetric(g, 1)?;
    let mut op = FieldOperator::zero();
    for ((_, lower), f) in g.components() {
        // q^0 = t has no acceleration.
        if lower[0] == 0 {
            continue;
        }
        let mut fields = vec![Field::Qdd(lower[0])];
        fields.extend(velocity_factors(&lower[1..]));
        op.extend(FieldOperator::from_function(f, Gq::I, -1, &fields, &[])?);
    }
    op.parity = Some(g.parity);
    Ok(op)
}

/// `G_{mu|v..} = g_mu h_{v..}`.
pub fn tensor_product(g: &SmearingTensor, h: &SmearingTensor) -> Result<SmearingTensor> {
    let mut out = SmearingTensor::new(g.dim, 0, g.lower_rank + h.lower_rank, g.parity + h.parity);
    for ((_, a), f) in g.components() {
        for ((_, b), k) in h.components() {
            let mut idx = a.clone();
            idx.extend(b);
            out.set(vec![], idx, f * k)?;
        }
    }
    Ok(out)
}

pub fn s_matrix(h: &SmearingTensor, basis: &Arc<Basis>) -> Result<WindowMatrix> {
    s_operator(h)?.matrix(basis)
}

pub fn r_matrix(g: &SmearingTensor, basis: &Arc<Basis>) -> Result<WindowMatrix> {
    r_operator(g)?.matrix(basis)
}

fn bit(b: bool) -> u32 {
    u32::from(b)
}

struct Kernels {
    s1: SmearingTensor,
    s2: SmearingTensor,
    s3: SmearingTensor,
    r1: SmearingTensor,
}

impl Kernels {
    fn add(t: &mut SmearingTensor, idx: Vec<usize>, f: SuperFunction) -> Result<()> {
        if f.is_zero() {
            return Ok(());
        }
        let cur = t.get(&[], &idx);
        t.set(vec![], idx, &cur + &f)
    }
}

/// Smearing tensors of the kernel form of `ext(xi, eta)`, before
/// symmetrization: `ext = int (S_1 h1 + S_2 h2 + S_3 h3 + R_1 G)`.
fn kernels(xi: &SuperVectorField, eta: &SuperVectorField, aux: &AuxConfig) -> Result<Kernels> {
    let d = xi.dim();
    let (px, pe) = (xi.checked_parity()?, eta.checked_parity()?);
    let (xb, eb) = (bit(px.is_odd()), bit(pe.is_odd()));
    let k = aux.declared();
    let cc = (k.c + Gq::int(2 * d.super_dimension_spatial() as i128)) / Gq::int(12);
    let g = |i: usize| bit(d.is_fermionic(i));
    let sgn = |e: u32| Gq::sign(e % 2 == 1);
    let (x0, e0) = (xi.component(0), eta.component(0));
    let (divx, dive) = (divergence(xi), divergence(eta));
    let parity = px + pe;
    let mut ks = Kernels {
        s1: SmearingTensor::new(d, 0, 1, parity),
        s2: SmearingTensor::new(d, 0, 2, parity),
        s3: SmearingTensor::new(d, 0, 3, parity),
        r1: SmearingTensor::new(d, 0, 2, parity),
    };
    let two_minus = Gq::int(2) - cc;
    let half = Gq::frac(1, 2);
    for r in d.indices() {
        let mut h = SuperFunction::zero(d);
        for nu in d.indices() {
            let s = sgn((xb + eb + g(nu)) * g(nu));
            for mu in d.indices() {
                h += &(&xi.component(mu).derive(nu).derive(r) * &eta.component(nu).derive(mu)).scale(s * (Gq::ONE + k.k1));
            }
        }
        h += &(&divx.derive(r) * &dive).scale(k.k2);
        h -= &(&x0.derive(r) * e0).scale(cc);
        let i_half = Gq::I * half;
        h += &(&divx * &e0.derive(r)).scale(i_half * sgn(xb * g(r)));
        h -= &(&x0.derive(r) * &dive).scale(i_half);
        Kernels::add(&mut ks.s1, vec![r], h)?;
        for s in d.indices() {
            let mut h = SuperFunction::zero(d);
            for nu in d.indices() {
                let e = (xb + eb + g(nu)) * g(nu) + g(r) * (g(nu) + xb) + g(s) * (g(nu) + xb + g(r));
                h += &(&x0.derive(nu) * &eta.component(nu).derive(s).derive(r)).scale(sgn(e));
            }
            for mu in d.indices() {
                h -= &(&xi.component(mu).derive(s).derive(r) * &e0.derive(mu)).scale(sgn(g(s) * g(r)));
            }
            let e = sgn(g(s) * (g(r) + xb));
            h += &(&divx.derive(r) * &e0.derive(s)).scale(half * e);
            h -= &(&x0.derive(r) * &dive.derive(s)).scale(half * e);
            Kernels::add(&mut ks.s2, vec![r, s], h)?;
            let gr = (&x0.derive(r) * &e0.derive(s)).scale(-two_minus * e);
            Kernels::add(&mut ks.r1, vec![r, s], gr)?;
            for t in d.indices() {
                let mut h = SuperFunction::zero(d);
                let e1 = g(r) * xb + g(t) * (g(s) + xb + g(r));
                h -= &(&x0.derive(s) * &e0.derive(t).derive(r)).scale(sgn(e1));
                let e2 = g(s) * g(r) + g(t) * (g(r) + g(s) + xb);
                h += &(&x0.derive(s).derive(r) * &e0.derive(t)).scale(sgn(e2) * (Gq::ONE - two_minus));
                Kernels::add(&mut ks.s3, vec![r, s, t], h)?;
            }
        }
    }
    Ok(ks)
}

/// Jet density `sum v^{i_1}..v^{i_n} h_{i_1..}` of a kernel tensor (`v^0 = 1`),
/// with an acceleration in front when `accel` is set.
fn kernel_density(h: &SmearingTensor, accel: bool) -> SuperFunction {
    let d = h.dim;
    let mut out = SuperFunction::zero(d);
    for ((_, lower), f) in h.components() {
        let mut term = SuperFunction::one(d);
        for (k, &i) in lower.iter().enumerate() {
            if accel && k == 0 {
                if i == 0 {
                    term = SuperFunction::zero(d);
                    break;
                }
                term = &term * &SuperFunction::acceleration(d, i);
            } else if i != 0 {
                term = &term * &SuperFunction::velocity(d, i);
            }
        }
        out += &(&term * f);
    }
    out
}

/// The full kernel form as a jet density, comparable with `ext_density`.
pub fn ext_kernel_density(xi: &SuperVectorField, eta: &SuperVectorField, aux: &AuxConfig) -> Result<SuperFunction> {
    let ks = kernels(xi, eta, aux)?;
    let mut out = kernel_density(&ks.s1, false);
    out += &kernel_density(&ks.s2, false);
    out += &kernel_density(&ks.s3, false);
    out += &kernel_density(&ks.r1, true);
    Ok(out)
}

/// Lie derivative of a one-form,
/// `(L_xi h)_s = d_s xi^v h_v + (-)^{xi s} xi^r d_r h_s`.
pub fn one_form_lie(xi: &SuperVectorField, h: &SmearingTensor) -> Result<SmearingTensor> {
    let d = h.dim;
    if h.lower_rank != 1 || h.upper_rank != 0 {
        return Err(Error::RankMismatch("one-form expected".into()));
    }
    let px = xi.checked_parity()?;
    let mut out = SmearingTensor::new(d, 0, 1, h.parity + px);
    for s in d.indices() {
        let mut f = SuperFunction::zero(d);
        for nu in d.indices() {
            f += &(&xi.component(nu).derive(s) * &h.get(&[], &[nu]));
        }
        f += &xi.apply(&h.get(&[], &[s])).scale(Gq::sign(px.is_odd() && d.is_fermionic(s)));
        out.set(vec![], vec![s], f)?;
    }
    Ok(out)
}

/// `ext(xi, eta)` assembled from `S_1, S_2, S_3, R_1`; with
/// `int S_n^{..} h_{..} = -S_n(h)`.
pub fn ext_via_kernels(xi: &SuperVectorField, eta: &SuperVectorField, aux: &AuxConfig) -> Result<FieldOperator> {
    let ks = kernels(xi, eta, aux)?;
    let mut op = FieldOperator::zero();
    for t in [&ks.s1, &ks.s2, &ks.s3] {
        op.extend(s_operator(&graded_symmetrize(t, 0)?)?);
    }
    op.extend(r_operator(&ks.r1)?);
    let mut op = op.scale(-Gq::ONE);
    op.parity = Some(xi.checked_parity()? + eta.checked_parity()?);
    Ok(op)
}

/// Both forms of the extension as matrices on `basis`.
pub fn ext_both_forms(
    xi: &SuperVectorField,
    eta: &SuperVectorField,
    aux: &AuxConfig,
    basis: &Arc<Basis>,
) -> Result<(WindowMatrix, WindowMatrix)> {
    let direct = ext_operator(xi, eta, aux)?.matrix(basis)?;
    let kernel = ext_via_kernels(xi, eta, aux)?.matrix(basis)?;
    Ok((direct, kernel))
}

/// `h'_{0 v..}` symmetrized so that `S_{n+1}(h') = S_n(h)`.
pub fn prepend_time_index(h: &SmearingTensor) -> Result<SmearingTensor> {
    let mut e0 = SmearingTensor::new(h.dim, 0, 1, Parity::Even);
    e0.set(vec![], vec![0], SuperFunction::one(h.dim))?;
    graded_symmetrize(&tensor_product(&e0, h)?, 0)
}

/// One-form `df` with `(df)_v = d_v f`.
pub fn exterior_derivative(f: &SuperFunction) -> Result<SmearingTensor> {
    let d = f.dim();
    let mut h = SmearingTensor::new(d, 0, 1, f.parity_or_even()?);
    for nu in d.indices() {
        h.set(vec![], vec![nu], f.derive(nu))?;
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::basis::{enumerate_basis, Window};
    use crate::graded_symbolic::{parse_field, parse_function};

    fn basis(d: SuperDimension, w: Window) -> Arc<Basis> {
        Arc::new(enumerate_basis(&AuxConfig::Trivial.space(d), w))
    }

    fn one_form(d: SuperDimension, comps: &[&str]) -> SmearingTensor {
        let fs: Vec<SuperFunction> = comps.iter().map(|c| parse_function(c, d).unwrap()).collect();
        let p = fs.iter().zip(d.indices()).find_map(|(f, i)| f.parity().map(|p| p + d.deg(i))).unwrap();
        let mut h = SmearingTensor::new(d, 0, 1, p);
        for (i, f) in fs.into_iter().enumerate() {
            h.set(vec![], vec![i], f).unwrap();
        }
        h
    }

    #[test]
    fn densities_agree_symbolically() {
        let d = SuperDimension::new(1, 1);
        let xi = parse_field("exp(i*t)*th1*x1*d0 + x1^2*dth1", d).unwrap();
        let eta = parse_field("exp(i*-2*t)*th1*d1 + exp(i*t)*x1*th1*d0", d).unwrap();
        let aux = AuxConfig::Oscillator { bosons: 1, fermions: 2 };
        let direct = crate::fock::generators::ext_density(&xi, &eta, &aux).unwrap();
        assert_eq!(direct, ext_kernel_density(&xi, &eta, &aux).unwrap());
    }

    #[test]
    fn time_component_of_s1() {
        let d = SuperDimension::new(1, 0);
        let b = basis(d, Window::new(2, 1));
        let h = one_form(d, &["1", "0"]);
        let want = WindowMatrix::identity(b.clone()).scale(Gq::I);
        assert_eq!(s_matrix(&h, &b).unwrap(), want);
    }

    #[test]
    fn subsidiary_conditions() {
        let d = SuperDimension::new(1, 1);
        let b = basis(d, Window::new(3, 2));
        let h = one_form(d, &["exp(i*t)*x1", "exp(i*-1*t)*x1^2", "th1"]);
        let h2 = prepend_time_index(&h).unwrap();
        assert_eq!(s_matrix(&h2, &b).unwrap(), s_matrix(&h, &b).unwrap());
        let h3 = prepend_time_index(&h2).unwrap();
        assert_eq!(s_matrix(&h3, &b).unwrap(), s_matrix(&h, &b).unwrap());
        let mut g = SmearingTensor::new(d, 0, 1, Parity::Even);
        g.set(vec![], vec![0], SuperFunction::one(d)).unwrap();
        let r = r_matrix(&tensor_product(&g, &h).unwrap(), &b).unwrap();
        assert!(r.is_zero());
        let exact = exterior_derivative(&parse_function("exp(i*t)*x1^2*th1 + exp(i*-2*t)*x1*th1", d).unwrap()).unwrap();
        assert!(s_matrix(&exact, &b).unwrap().is_zero());
    }

    #[test]
    fn asymmetric_tensor_rejected() {
        let d = SuperDimension::new(1, 0);
        let mut h = SmearingTensor::new(d, 0, 2, Parity::Even);
        h.set(vec![], vec![0, 1], SuperFunction::coord(d, 1)).unwrap();
        assert!(matches!(s_operator(&h), Err(Error::NotSymmetric(_))));
    }

    #[test]
    fn s1_transforms_as_one_form() {
        let cases = [
            ((1, 0), "exp(i*t)*x1*d1", vec!["exp(i*-1*t)*x1", "x1^2"]),
            ((1, 0), "exp(i*2*t)*d0", vec!["0", "exp(i*-1*t)*x1"]),
            ((1, 1), "exp(i*t)*th1*d1 + x1*dth1", vec!["exp(i*-1*t)*x1", "x1^2", "th1"]),
            ((0, 1), "exp(i*t)*dth1", vec!["exp(i*-1*t)*th1", "1"]),
        ];
        for ((n, m), x, comps) in cases {
            let d = SuperDimension::new(n, m);
            let xi = parse_field(x, d).unwrap();
            let h = one_form(d, &comps);
            let inner = Window::new(2, 1);
            let outer = Arc::new(enumerate_basis(&AuxConfig::Trivial.space(d), inner.widen(Window::new(2, 3))));
            let l = crate::fock::generators::generator_matrix(&xi, &AuxConfig::Trivial, &outer).unwrap();
            let s = s_matrix(&h, &outer).unwrap();
            let lhs = l.graded_commutator(&s).unwrap().restrict(inner).unwrap();
            let rhs = s_matrix(&one_form_lie(&xi, &h).unwrap(), &Arc::new(outer.restrict(inner))).unwrap();
            assert!(!lhs.is_zero(), "{x}");
            assert_eq!(lhs, rhs, "{x}");
        }
    }

    #[test]
    fn kernel_form_matches_direct() {
        let cases = [
            ((1, 0), "exp(i*t)*x1*d1", "exp(i*-1*t)*x1*d1"),
            ((1, 0), "exp(i*2*t)*d0", "exp(i*-2*t)*d0"),
            ((1, 0), "exp(i*2*t)*x1*d0", "exp(i*-1*t)*x1^2*d1"),
            ((1, 0), "exp(i*t)*x1^2*d0", "exp(i*-2*t)*x1*d0 + d1"),
            ((0, 1), "exp(i*t)*th1*d0", "exp(i*-2*t)*th1*dth1"),
            ((0, 1), "exp(i*2*t)*d0 + exp(i*t)*th1*dth1", "exp(i*-1*t)*th1*d0"),
            ((0, 1), "exp(i*2*t)*th1*d0", "exp(i*-1*t)*th1*d0 + exp(i*-1*t)*dth1"),
            ((1, 1), "exp(i*t)*th1*x1*d0", "exp(i*-1*t)*th1*d0 + x1*dth1"),
            ((1, 1), "exp(i*t)*th1*dth1 + x1*d0", "exp(i*-1*t)*x1*th1*d1"),
        ];
        for ((n, m), a, b) in cases {
            let d = SuperDimension::new(n, m);
            let (xi, eta) = (parse_field(a, d).unwrap(), parse_field(b, d).unwrap());
            let (direct, kernel) = ext_both_forms(&xi, &eta, &AuxConfig::Trivial, &basis(d, Window::new(3, 2))).unwrap();
            assert!(!direct.is_zero(), "{a}, {b}");
            assert_eq!(direct, kernel, "{a}, {b}\n{}", direct.sub(&kernel).unwrap());
        }
    }
}
