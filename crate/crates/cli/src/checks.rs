//! One runner per subcommand, each returning its records.

use crate::args::{Common, CurrentArgs, Fock, Gauge, LevelArgs, Modealg, PairArgs, SpecArgs};
use crate::report::Record;
use std::path::Path;
use superfock::error::{Error, Result};
use superfock::fock::{
    central_charge_probe, commutator_defect, enumerate_basis, ext_both_forms, generator_matrix, required_margin,
    residual_summary, verify_superconformal, AuxConfig, SuperconformalFamily, TemporalFamily, Window,
};
use superfock::fock::superconformal::require_dimension;
use superfock::gauge::{
    cocycle_margin, gauge_cocycle_defect, intertwine_check, intertwine_margin, CurrentConfig, CurrentMap,
    FiniteSuperalgebra,
};
use superfock::graded_symbolic::{parse_field, parse_function, SuperDimension};
use superfock::mode_algebra::builtins::{finite_algebra, Params};
use superfock::mode_algebra::format::parse_spec;
use superfock::mode_algebra::xsc::{apply_redefinition, extract_scalg, xsc_redefinition};
use superfock::mode_algebra::{
    builtin_spec, verify_graded_skewness, verify_super_jacobi, xsc, xsc_parameters, IdentityReport, ModeAlgebraSpec,
};
use superfock::scalar::{Gq, Rat};
use std::sync::Arc;

const SHOWN: usize = 3;

pub fn rational(s: &str, what: &str) -> Result<Gq> {
    s.parse::<Rat>().map(Gq::from).map_err(|e| Error::Invalid(format!("{what}: {e}")))
}

fn pair(s: &str, what: &str) -> Result<(i64, i64)> {
    let bad = || Error::Invalid(format!("{what} must be `a,b`, got `{s}`"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn window(s: &str, what: &str) -> Result<Window> {
    let (e, d) = pair(s, what)?;
    let d = u32::try_from(d).map_err(|_| Error::Invalid(format!("{what}: negative degree")))?;
    Ok(Window::new(e, d))
}

/// Flags shared by the Fock and gauge subcommands, with defaults applied.
#[derive(Clone, Copy, Debug)]
pub struct Setting {
    pub dim: SuperDimension,
    pub window: Window,
    pub margin: Option<Window>,
    pub aux: AuxConfig,
}

impl Setting {
    pub fn resolve(c: &Common) -> Result<Setting> {
        let dim = match &c.dim {
            Some(s) => {
                let (n, m) = pair(s, "--dim")?;
                let n = usize::try_from(n).map_err(|_| Error::Invalid("--dim: negative".into()))?;
                let m = usize::try_from(m).map_err(|_| Error::Invalid("--dim: negative".into()))?;
                if 3 * m > 64 {
                    return Err(Error::Invalid("--dim: at most 21 fermionic directions".into()));
                }
                SuperDimension::new(n, m)
            }
            None => SuperDimension::new(1, 0),
        };
        Ok(Setting {
            dim,
            window: c.window.as_deref().map(|s| window(s, "--window")).transpose()?.unwrap_or(Window::new(2, 1)),
            margin: c.margin.as_deref().map(|s| window(s, "--margin")).transpose()?,
            aux: c.aux.as_deref().unwrap_or("trivial").parse()?,
        })
    }
}

fn identity_record(r: &IdentityReport, spec: &ModeAlgebraSpec) -> Record {
    let residual = if r.holds() {
        "0".to_string()
    } else {
        let shown: Vec<String> = r.failures.iter().take(SHOWN).map(|f| f.to_string()).collect();
        format!("{} failing locations; {}", r.failures.len(), shown.join("; "))
    };
    Record::new(format!("{} {}", r.identity, spec.name), r.identity.clone())
        .verdict(residual)
        .constant("checked", r.checked)
}

fn load_spec(a: &SpecArgs) -> Result<ModeAlgebraSpec> {
    if Path::new(&a.spec).is_file() {
        if a.c.is_some() || !a.params.is_empty() {
            return Err(Error::Invalid("parameters apply to builtins only; set them in the spec file".into()));
        }
        let text = std::fs::read_to_string(&a.spec).map_err(|e| Error::Invalid(format!("{}: {e}", a.spec)))?;
        return parse_spec(&text);
    }
    let mut params = Params::new();
    if let Some(c) = &a.c {
        params.insert("c".into(), rational(c, "--c")?);
    }
    for kv in &a.params {
        let (k, v) = kv.split_once('=').ok_or_else(|| Error::Invalid(format!("--param `{kv}` is not key=value")))?;
        params.insert(k.trim().to_string(), rational(v, k)?);
    }
    builtin_spec(&a.spec, &params, a.algebra.as_deref())
}

pub fn jacobi(a: &SpecArgs) -> Result<Vec<Record>> {
    let spec = load_spec(a)?;
    Ok(vec![
        identity_record(&verify_graded_skewness(&spec), &spec),
        identity_record(&verify_super_jacobi(&spec), &spec),
    ])
}

fn levels(a: &LevelArgs) -> Result<(Gq, Gq, Gq)> {
    Ok((rational(&a.c, "--c")?, rational(&a.k1, "--k1")?, rational(&a.k2, "--k2")?))
}

pub fn modealg(cmd: &Modealg) -> Result<Vec<Record>> {
    match cmd {
        Modealg::Verify(a) => {
            let spec = load_spec(a)?;
            let mut out = jacobi(a)?;
            out.insert(0, Record::new(format!("table {}", spec.name), "spec").constant("generators", spec.generators().len()));
            Ok(out)
        }
        Modealg::Params(a) => {
            let (c, k1, k2) = levels(a)?;
            let p = xsc_parameters(c, k1, k2);
            let mut r = Record::new("xsc parameters", "trajectory realization on (1|1)");
            for (k, v) in p.named() {
                r = r.constant(k, v);
            }
            Ok(vec![r.verdict(if p.constraint_defect().is_zero() { "0".to_string() } else { p.constraint_defect().to_string() })])
        }
        Modealg::Redefine(a) => {
            let (c, k1, k2) = levels(a)?;
            let p = xsc_parameters(c, k1, k2);
            let spec = xsc(&p);
            let shifted = apply_redefinition(&spec, &xsc_redefinition(&spec, &p)?)?;
            let (a_val, a_prime, bad) = extract_scalg(&shifted)?;
            let twelve_a = Gq::int(12) * a_val;
            let predicted = Gq::int(-11) + Gq::int(9) * k1 + Gq::int(3) * k2 + c;
            let mut residual: Vec<String> = bad.into_iter().take(SHOWN).collect();
            if twelve_a != predicted {
                residual.push(format!("12a = {twelve_a}, predicted {predicted}"));
            }
            let residual = if residual.is_empty() { "0".to_string() } else { residual.join("; ") };
            Ok(vec![Record::new("redefinition to scalg", "central charge 12a")
                .verdict(residual)
                .constant("a", a_val)
                .constant("a'", a_prime)
                .constant("12a", twelve_a)])
        }
    }
}

fn field(s: &str, d: SuperDimension) -> Result<superfock::graded_symbolic::SuperVectorField> {
    parse_field(s, d)
}

fn margin_for(given: Option<Window>, required: Window) -> Window {
    given.unwrap_or(required)
}

pub fn fock(cmd: &Fock, s: &Setting) -> Result<Vec<Record>> {
    match cmd {
        Fock::Basis => {
            let b = enumerate_basis(&s.aux.space(s.dim), s.window);
            let mut r = Record::new(format!("basis {} on {}", s.dim, s.window), "Fock window").constant("states", b.len());
            for (k, st) in b.states().iter().enumerate().take(64) {
                r = r.constant(&format!("state{k:03}"), st);
            }
            Ok(vec![r])
        }
        Fock::Generator { xi } => {
            let xi = field(xi, s.dim)?;
            let b = Arc::new(enumerate_basis(&s.aux.space(s.dim), s.window));
            let m = generator_matrix(&xi, &s.aux, &b)?;
            Ok(vec![Record::new(format!("generator {xi}"), "L_xi")
                .constant("dimension", b.len())
                .constant("nonzero", m.nnz())
                .constant("entries", residual_summary(&m, 8))])
        }
        Fock::Ext(PairArgs { xi, eta }) => {
            let (xi, eta) = (field(xi, s.dim)?, field(eta, s.dim)?);
            let margin = margin_for(s.margin, required_margin(&xi, &eta));
            let r = commutator_defect(&xi, &eta, &s.aux, s.window, margin)?;
            let res = r.residual()?;
            Ok(vec![Record::new(format!("ext {xi} , {eta}"), "extension of the generator bracket")
                .verdict(residual_summary(&res, SHOWN))
                .constant("defect_nonzero", r.defect.nnz())
                .constant("outer", r.outer)])
        }
        Fock::CentralCharge => {
            let p = central_charge_probe(&TemporalFamily { dim: s.dim, aux: s.aux })?;
            let k = s.aux.declared();
            let (n, m) = (s.dim.n_bosonic_spatial as i128, s.dim.m_fermionic as i128);
            let expected = k.c + Gq::int(2 * (n - m)) + Gq::int(12) * (k.k1 + k.k2);
            let residual = if p.c == expected { "0".to_string() } else { format!("c = {}, expected {expected}", p.c) };
            Ok(vec![Record::new(format!("temporal central charge {}", s.dim), "c_Temp")
                .verdict(residual)
                .constant("c", p.c)
                .constant("h0", p.h0)])
        }
        Fock::Superconformal { range } => {
            require_dimension(s.dim)?;
            let fam = SuperconformalFamily::new(s.aux);
            let params = fam.expected_parameters();
            let r = verify_superconformal(s.aux, &params, *range, s.window)?;
            let shown: Vec<String> =
                r.failures.iter().take(SHOWN).map(|f| format!("[{}_{}, {}_{}}}: {}", f.a, f.m, f.b, f.n, f.residual)).collect();
            let residual = if r.holds() { "0".to_string() } else { format!("{} failing brackets; {}", r.failures.len(), shown.join("; ")) };
            let mut rec = Record::new(format!("superconformal family, |m|,|n| <= {range}"), "extended superconformal brackets")
                .verdict(residual)
                .constant("checked", r.checked);
            for (k, v) in params.named() {
                rec = rec.constant(k, v);
            }
            Ok(vec![rec])
        }
        Fock::Sr(PairArgs { xi, eta }) => {
            let (xi, eta) = (field(xi, s.dim)?, field(eta, s.dim)?);
            let b = Arc::new(enumerate_basis(&s.aux.space(s.dim), s.window));
            let (direct, kernel) = ext_both_forms(&xi, &eta, &s.aux, &b)?;
            Ok(vec![Record::new(format!("kernel form {xi} , {eta}"), "extension via S and R kernels")
                .verdict(residual_summary(&direct.sub(&kernel)?, SHOWN))
                .constant("ext_nonzero", direct.nnz())])
        }
    }
}

fn algebra(name: &str) -> Result<FiniteSuperalgebra> {
    if let Some(r) = name.strip_prefix("u1^") {
        let r = r.parse().map_err(|_| Error::Invalid(format!("bad rank in `{name}`")))?;
        return Ok(FiniteSuperalgebra::abelian(r));
    }
    finite_algebra(name)
}

fn current_map(s: &str, d: SuperDimension) -> Result<CurrentMap> {
    s.split(';').map(|f| parse_function(f.trim(), d)).collect()
}

fn config(a: &CurrentArgs) -> Result<CurrentConfig> {
    CurrentConfig::new(algebra(&a.algebra)?, rational(&a.level, "--level")?)
}

pub fn gauge(cmd: &Gauge, s: &Setting) -> Result<Vec<Record>> {
    match cmd {
        Gauge::Verify { algebra: name } => {
            let g = algebra(name)?;
            let v = g.verify();
            let shown: Vec<String> = v.iter().take(SHOWN).map(|v| format!("{} at {:?}: {}", v.identity, v.indices, v.residual)).collect();
            let residual = if v.is_empty() { "0".to_string() } else { format!("{} violations; {}", v.len(), shown.join("; ")) };
            Ok(vec![Record::new(format!("finite algebra {}", g.name), "super-Jacobi and metric invariance")
                .verdict(residual)
                .constant("dimension", g.dim())])
        }
        Gauge::Cocycle { current, x, y } => {
            let cfg = config(current)?;
            let (x, y) = (current_map(x, s.dim)?, current_map(y, s.dim)?);
            let r = gauge_cocycle_defect(&x, &y, &cfg, s.window, margin_for(s.margin, cocycle_margin(&x, &y)))?;
            let mut residual = residual_summary(&r.defect.sub(&r.cocycle)?, SHOWN);
            let s1 = r.s1_commutators.iter().filter(|m| !m.is_zero()).count();
            if s1 > 0 {
                residual = format!("{residual}; {s1} S_1 commutators nonzero");
            }
            Ok(vec![Record::new("current cocycle", "[J_X, J_Y} - J_[X,Y] = k S_1 pairing")
                .verdict(residual)
                .constant("level", cfg.level)
                .constant("cocycle_nonzero", r.cocycle.nnz())])
        }
        Gauge::Intertwine { current, xi, y } => {
            let cfg = config(current)?;
            let xi = field(xi, s.dim)?;
            let y = current_map(y, s.dim)?;
            let (lhs, rhs) = intertwine_check(&xi, &y, &cfg, s.window, margin_for(s.margin, intertwine_margin(&xi, &y)))?;
            Ok(vec![Record::new(format!("intertwining {xi}"), "[L_xi, J_Y} = J_{xi Y}")
                .verdict(residual_summary(&lhs.sub(&rhs)?, SHOWN))
                .constant("nonzero", lhs.nnz())])
        }
    }
}
