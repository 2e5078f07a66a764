//! Poisson and contact structures with constant coefficients.

use super::dimension::{Parity, SuperDimension};
use super::field::SuperVectorField;
use super::function::SuperFunction;
use crate::error::{Error, Result};
use crate::scalar::Gq;

/// Constant Darboux data `omega^{mu nu}`, `omega_{sigma tau}` and the
/// optional contact direction `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticData {
    pub dim: SuperDimension,
    pub omega_upper: Vec<Vec<Gq>>,
    pub omega_lower: Vec<Vec<Gq>>,
    pub z_upper: Option<Vec<Gq>>,
    pub z_lower: Option<Vec<Gq>>,
}

fn square(n: usize) -> Vec<Vec<Gq>> {
    vec![vec![Gq::ZERO; n]; n]
}

impl SymplecticData {
    /// Data from upper entries `(mu, nu, value)`; lower entries are solved from
    /// `omega^{mu rho} omega_{rho nu} = (-)^mu delta^mu_nu` on the support.
    pub fn from_upper(dim: SuperDimension, entries: &[(usize, usize, Gq)]) -> Result<SymplecticData> {
        let n = dim.len();
        let mut up = square(n);
        for &(mu, nu, v) in entries {
            if mu >= n || nu >= n {
                return Err(Error::InvalidIndex { index: mu.max(nu), dim: dim.to_string() });
            }
            up[mu][nu] = v;
        }
        let lower = invert_on_support(dim, &up)?;
        Ok(SymplecticData { dim, omega_upper: up, omega_lower: lower, z_upper: None, z_lower: None })
    }

    /// `omega^{11} = i` on `(1|1)`.
    pub fn k11() -> SymplecticData {
        SymplecticData::from_upper(SuperDimension::new(0, 1), &[(1, 1, Gq::I)]).unwrap()
    }

    /// `omega^{12} = omega^{21} = i` on `(1|2)`; the second entry is forced by
    /// graded symmetry of an odd-odd block.
    pub fn k12() -> SymplecticData {
        let d = SuperDimension::new(0, 2);
        SymplecticData::from_upper(d, &[(1, 2, Gq::I), (2, 1, Gq::I)]).unwrap()
    }

    /// Bosonic Darboux pairs `omega^{2k-1, 2k} = 1`, `omega^{2k, 2k-1} = -1`.
    pub fn bosonic_darboux(pairs: usize) -> SymplecticData {
        let d = SuperDimension::new(2 * pairs, 0);
        let mut e = Vec::new();
        for k in 1..=pairs {
            e.push((2 * k - 1, 2 * k, Gq::ONE));
            e.push((2 * k, 2 * k - 1, -Gq::ONE));
        }
        SymplecticData::from_upper(d, &e).unwrap()
    }

    pub fn with_z(mut self, z_upper: Vec<Gq>, z_lower: Vec<Gq>) -> Result<SymplecticData> {
        self.z_upper = Some(z_upper);
        self.z_lower = Some(z_lower);
        self.validate()?;
        Ok(self)
    }

    fn z_up(&self) -> Vec<Gq> {
        self.z_upper.clone().unwrap_or_else(|| unit(self.dim.len(), 0))
    }

    fn z_low(&self) -> Vec<Gq> {
        self.z_lower.clone().unwrap_or_else(|| unit(self.dim.len(), 0))
    }

    /// Checks skewness, the inverse relations on the support and the
    /// conditions on `z`.
    pub fn validate(&self) -> Result<()> {
        let d = self.dim;
        let n = d.len();
        for s in 0..n {
            for t in 0..n {
                let both_odd = d.deg(s).is_odd() && d.deg(t).is_odd();
                if self.omega_lower[t][s] != -(self.omega_lower[s][t] * Gq::sign(both_odd)) {
                    return Err(Error::Invalid(format!("omega_lower not graded skew at ({s},{t})")));
                }
            }
        }
        let support = self.support();
        for &mu in &support {
            for &nu in &support {
                let mut acc = Gq::ZERO;
                for &r in &support {
                    acc += self.omega_upper[mu][r] * self.omega_lower[r][nu];
                }
                let expect = if mu == nu { Gq::sign(d.deg(mu).is_odd()) } else { Gq::ZERO };
                if acc != expect {
                    return Err(Error::Invalid(format!("omega inverse relation fails at ({mu},{nu})")));
                }
            }
        }
        if self.z_upper.is_some() || self.z_lower.is_some() {
            let (zu, zl) = (self.z_up(), self.z_low());
            let dot = (0..n).fold(Gq::ZERO, |acc, m| acc + zl[m] * zu[m]);
            if dot != Gq::ONE {
                return Err(Error::Invalid("z_mu z^mu != 1".into()));
            }
            for nu in 0..n {
                let s = (0..n).fold(Gq::ZERO, |acc, m| acc + zl[m] * self.omega_upper[m][nu]);
                if !s.is_zero() {
                    return Err(Error::Invalid("z_mu omega^{mu nu} != 0".into()));
                }
            }
            if (0..n).any(|m| d.deg(m).is_odd() && !(zu[m].is_zero() && zl[m].is_zero())) {
                return Err(Error::Invalid("z must be bosonic".into()));
            }
        }
        Ok(())
    }

    /// Indices on which `omega^{..}` has a nonzero row or column.
    pub fn support(&self) -> Vec<usize> {
        let n = self.dim.len();
        (0..n)
            .filter(|&m| (0..n).any(|k| !self.omega_upper[m][k].is_zero() || !self.omega_upper[k][m].is_zero()))
            .collect()
    }
}

fn unit(n: usize, k: usize) -> Vec<Gq> {
    let mut v = vec![Gq::ZERO; n];
    v[k] = Gq::ONE;
    v
}

/// Solves `W L = S` with `S = diag((-)^mu)` on the support by Gaussian
/// elimination over Q(i).
fn invert_on_support(dim: SuperDimension, up: &[Vec<Gq>]) -> Result<Vec<Vec<Gq>>> {
    let n = dim.len();
    let sup: Vec<usize> = (0..n)
        .filter(|&m| (0..n).any(|k| !up[m][k].is_zero() || !up[k][m].is_zero()))
        .collect();
    let k = sup.len();
    let mut a: Vec<Vec<Gq>> = (0..k)
        .map(|i| {
            let mut row: Vec<Gq> = sup.iter().map(|&j| up[sup[i]][j]).collect();
            row.extend((0..k).map(|j| if i == j { Gq::sign(dim.deg(sup[i]).is_odd()) } else { Gq::ZERO }));
            row
        })
        .collect();
    for col in 0..k {
        let piv = (col..k)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::Invalid("omega is singular on its support".into()))?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x = *x * inv;
        }
        let pivot = a[col].clone();
        for (r, row) in a.iter_mut().enumerate().take(k) {
            let f = row[col];
            if r != col && !f.is_zero() {
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= f * *p;
                }
            }
        }
    }
    let mut low = square(n);
    for (i, &si) in sup.iter().enumerate() {
        for (j, &sj) in sup.iter().enumerate() {
            low[si][sj] = a[i][k + j];
        }
    }
    Ok(low)
}

fn par(f: &SuperFunction) -> Parity {
    f.parity().unwrap_or(Parity::Even)
}

/// Applies `op` to each parity part of `f` and `g` and sums.
fn bilinear(
    f: &SuperFunction,
    g: &SuperFunction,
    op: impl Fn(&SuperFunction, &SuperFunction) -> SuperFunction,
) -> SuperFunction {
    let (fe, fo) = f.split_parity();
    let (ge, go) = g.split_parity();
    let mut out = SuperFunction::zero(f.dim());
    for a in [&fe, &fo] {
        for b in [&ge, &go] {
            if !a.is_zero() && !b.is_zero() {
                out += &op(a, b);
            }
        }
    }
    out
}

/// `{f, g} = (-)^(f mu + nu) d_mu f omega^{mu nu} d_nu g`.
pub fn poisson_bracket(f: &SuperFunction, g: &SuperFunction, w: &SymplecticData) -> SuperFunction {
    bilinear(f, g, |f, g| {
        let d = w.dim;
        let fp = par(f).is_odd();
        let mut out = SuperFunction::zero(d);
        for mu in d.indices() {
            let df = f.derive(mu);
            if df.is_zero() {
                continue;
            }
            for nu in d.indices() {
                let o = w.omega_upper[mu][nu];
                if o.is_zero() {
                    continue;
                }
                let neg = (fp && d.deg(mu).is_odd()) ^ d.deg(nu).is_odd();
                out += &(&df * &g.derive(nu)).scale(o * Gq::sign(neg));
            }
        }
        out
    })
}

/// `H_f = (-)^(f mu + nu) d_mu f omega^{mu nu} d_nu`.
pub fn hamiltonian_field(f: &SuperFunction, w: &SymplecticData) -> SuperVectorField {
    let d = w.dim;
    let (fe, fo) = f.split_parity();
    let mut comps = vec![SuperFunction::zero(d); d.len()];
    for part in [fe, fo] {
        if part.is_zero() {
            continue;
        }
        let fp = par(&part).is_odd();
        for mu in d.indices() {
            let df = part.derive(mu);
            if df.is_zero() {
                continue;
            }
            for (nu, comp) in comps.iter_mut().enumerate() {
                let o = w.omega_upper[mu][nu];
                if !o.is_zero() {
                    let neg = (fp && d.deg(mu).is_odd()) ^ d.deg(nu).is_odd();
                    *comp += &df.scale(o * Gq::sign(neg));
                }
            }
        }
    }
    SuperVectorField::new(d, comps).unwrap()
}

/// `z^mu d_mu f`; plain `d_0 f` without `z`.
pub fn z_derivative(f: &SuperFunction, w: &SymplecticData) -> SuperFunction {
    let zu = w.z_up();
    let mut out = SuperFunction::zero(f.dim());
    for (mu, z) in zu.iter().enumerate() {
        if !z.is_zero() {
            out += &f.derive(mu).scale(*z);
        }
    }
    out
}

/// Components of the Euler field `E^nu = x^nu - (z_mu x^mu) z^nu`.
pub fn euler_field(w: &SymplecticData) -> SuperVectorField {
    let d = w.dim;
    let (zu, zl) = (w.z_up(), w.z_low());
    let mut zx = SuperFunction::zero(d);
    for (mu, z) in zl.iter().enumerate() {
        if !z.is_zero() {
            zx += &SuperFunction::coord(d, mu).scale(*z);
        }
    }
    let comps = d
        .indices()
        .map(|nu| &SuperFunction::coord(d, nu) - &zx.scale(zu[nu]))
        .collect();
    SuperVectorField::new(d, comps).unwrap()
}

/// `Delta f = 2 f - E f`.
pub fn delta(f: &SuperFunction, w: &SymplecticData) -> SuperFunction {
    &f.scale(Gq::int(2)) - &euler_field(w).apply(f)
}

/// `{f, g}_K = Delta(f) z.d g - z.d f Delta(g) - {f, g}`.
pub fn contact_bracket(f: &SuperFunction, g: &SuperFunction, w: &SymplecticData) -> SuperFunction {
    let a = &delta(f, w) * &z_derivative(g, w);
    let b = &z_derivative(f, w) * &delta(g, w);
    &(&a - &b) - &poisson_bracket(f, g, w)
}

/// `K_f = Delta(f) z.d - H_f + (z.d f) E`.
pub fn contact_field(f: &SuperFunction, w: &SymplecticData) -> SuperVectorField {
    let d = w.dim;
    let zu = w.z_up();
    let df = delta(f, w);
    let zf = z_derivative(f, w);
    let h = hamiltonian_field(f, w);
    let e = euler_field(w);
    let comps = d
        .indices()
        .map(|nu| {
            let mut c = df.scale(zu[nu]);
            c = &c - h.component(nu);
            c += &(&zf * e.component(nu));
            c
        })
        .collect();
    SuperVectorField::new(d, comps).unwrap()
}
