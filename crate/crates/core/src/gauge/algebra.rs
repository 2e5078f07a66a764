//! Finite-dimensional Lie superalgebras `[J^a, J^b} = i f^{ab}_c J^c` with an
//! invariant graded-symmetric metric `delta^{ab}`.

use crate::error::{Error, Result};
use crate::graded_symbolic::Parity;
use crate::scalar::Gq;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSuperalgebra {
    pub name: String,
    pub names: Vec<String>,
    pub parities: Vec<Parity>,
    /// `(a, b, c) -> f^{ab}_c`.
    pub structure: BTreeMap<(usize, usize, usize), Gq>,
    /// `(a, b) -> delta^{ab}`.
    pub metric: BTreeMap<(usize, usize), Gq>,
}

/// Violated identity with the index triple (or pair) where it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub identity: &'static str,
    pub indices: Vec<usize>,
    pub residual: Gq,
}

impl FiniteSuperalgebra {
    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn f(&self, a: usize, b: usize, c: usize) -> Gq {
        self.structure.get(&(a, b, c)).copied().unwrap_or(Gq::ZERO)
    }

    pub fn delta(&self, a: usize, b: usize) -> Gq {
        self.metric.get(&(a, b)).copied().unwrap_or(Gq::ZERO)
    }

    fn odd(&self, a: usize) -> bool {
        self.parities[a].is_odd()
    }

    fn sgn(&self, a: usize, b: usize) -> Gq {
        Gq::sign(self.odd(a) && self.odd(b))
    }

    /// One even generator, abelian, `delta = 1`.
    pub fn u1() -> FiniteSuperalgebra {
        FiniteSuperalgebra {
            name: "u1".into(),
            names: vec!["J".into()],
            parities: vec![Parity::Even],
            structure: BTreeMap::new(),
            metric: BTreeMap::from([((0, 0), Gq::ONE)]),
        }
    }

    /// `u(1)^r` with `delta^{ab}` the identity.
    pub fn abelian(r: usize) -> FiniteSuperalgebra {
        FiniteSuperalgebra {
            name: format!("u1^{r}"),
            names: (1..=r).map(|a| format!("J{a}")).collect(),
            parities: vec![Parity::Even; r],
            structure: BTreeMap::new(),
            metric: (0..r).map(|a| ((a, a), Gq::ONE)).collect(),
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.values().all(Gq::is_zero)
    }

    /// `gl(p|q)` in the matrix-unit basis `E_ij`, with metric `str(E_ij E_kl)`.
    pub fn gl(p: usize, q: usize) -> FiniteSuperalgebra {
        let n = p + q;
        let deg = |i: usize| i >= p;
        let idx = |i: usize, j: usize| i * n + j;
        let mut names = Vec::new();
        let mut parities = Vec::new();
        for i in 0..n {
            for j in 0..n {
                names.push(format!("E{}{}", i + 1, j + 1));
                parities.push(Parity::from_bool(deg(i) ^ deg(j)));
            }
        }
        let mut structure = BTreeMap::new();
        let mut metric = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        // [E_ij, E_kl} = delta_jk E_il - (-)^{|ij||kl|} delta_li E_kj, and
                        // [J^a, J^b} = i f^{ab}_c J^c gives f = -i * coefficient.
                        let s = Gq::sign((deg(i) ^ deg(j)) && (deg(k) ^ deg(l)));
                        let mut add = |c: usize, v: Gq| {
                            let e = structure.entry((idx(i, j), idx(k, l), c)).or_insert(Gq::ZERO);
                            *e += v * -Gq::I;
                        };
                        if j == k {
                            add(idx(i, l), Gq::ONE);
                        }
                        if l == i {
                            add(idx(k, j), -s);
                        }
                        if j == k && l == i {
                            // str(E_ii) = (-)^i
                            metric.insert((idx(i, j), idx(k, l)), Gq::sign(deg(i)));
                        }
                    }
                }
            }
        }
        structure.retain(|_, v: &mut Gq| !v.is_zero());
        FiniteSuperalgebra { name: format!("gl({p}|{q})"), names, parities, structure, metric }
    }

    /// Graded antisymmetry, parity selection, super-Jacobi, metric symmetry and
    /// metric invariance; returns every violation found.
    pub fn verify(&self) -> Vec<Violation> {
        let n = self.dim();
        let mut out = Vec::new();
        let mut push = |identity, indices: Vec<usize>, residual: Gq| {
            if !residual.is_zero() {
                out.push(Violation { identity, indices, residual });
            }
        };
        for a in 0..n {
            for b in 0..n {
                let r = self.delta(b, a) - self.sgn(a, b) * self.delta(a, b);
                push("metric symmetry", vec![a, b], r);
                for c in 0..n {
                    let r = self.f(b, a, c) + self.sgn(a, b) * self.f(a, b, c);
                    push("antisymmetry", vec![a, b, c], r);
                    if self.odd(a) ^ self.odd(b) ^ self.odd(c) {
                        push("parity", vec![a, b, c], self.f(a, b, c));
                    }
                    let (mut inv1, mut inv2, mut inv3) = (Gq::ZERO, Gq::ZERO, Gq::ZERO);
                    for d in 0..n {
                        inv1 += self.sgn(a, c) * self.delta(a, d) * self.f(b, c, d);
                        inv2 += self.sgn(a, b) * self.delta(b, d) * self.f(c, a, d);
                        inv3 += self.sgn(b, c) * self.delta(c, d) * self.f(a, b, d);
                    }
                    for e in 0..n {
                        let mut jac = Gq::ZERO;
                        for d in 0..n {
                            jac += self.sgn(a, c) * self.f(b, c, d) * self.f(a, d, e)
                                + self.sgn(a, b) * self.f(c, a, d) * self.f(b, d, e)
                                + self.sgn(b, c) * self.f(a, b, d) * self.f(c, d, e);
                        }
                        push("super-Jacobi", vec![a, b, c, e], jac);
                    }
                    push("metric invariance", vec![a, b, c], inv1 - inv2);
                    push("metric invariance", vec![a, b, c], inv2 - inv3);
                }
            }
        }
        out
    }

    pub fn check(&self) -> Result<()> {
        match self.verify().first() {
            None => Ok(()),
            Some(v) => Err(Error::Invalid(format!("{} fails {} at {:?}", self.name, v.identity, v.indices))),
        }
    }
}
