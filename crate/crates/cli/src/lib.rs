//! JSON job runner behind the `padic-spectral` binary.
//!
//! Every command takes one JSON document and returns one JSON document
//! tagged with [`SCHEMA`]. Scalars travel as decimal strings; integers are
//! accepted on input as well.

use clap::ValueEnum;
use serde_json::{json, Map, Value};

use padic_spectral::audit::{run_suites, SuiteReport};
use padic_spectral::ff::{FpMatrix, DEFAULT_SEED};
use padic_spectral::glnp::{build_generators, decompose_fp, decompose_zp};
use padic_spectral::gm::{
    bezout_idempotents, haar_volume, orthogonality_test, principal_exponent,
    principal_exponent_poly, profinite_volume, teich_factor, LaurentPoly, UnitPolynomial,
};
use padic_spectral::linalg::{spectral_seminorm, Matrix, Norm, PadicMatrix, SpectralSeminorm};
use padic_spectral::padic::{Epsilon, PadicScalar, UnramScalar, Zp};
use padic_spectral::par::Execution;
use padic_spectral::poly::ZpPoly;
use padic_spectral::quantum::{
    evolve, measure, probability, spectrum_shift_model, torus_check, EvolutionPair, ExpDomain,
    WaveFunction,
};
use padic_spectral::unitary::{
    classify, jordan_decompose, power_zp, projection_functors, spectrum_table, teichmuller_spectral,
};
use padic_spectral::PadicError;

pub const SCHEMA: &str = "padic-spectral/v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Classify,
    Jordan,
    Spectral,
    GaloisAct,
    PowerZp,
    Projection,
    SpectrumTable,
    Orthogonal,
    Idempotents,
    TeichFactor,
    PrincipalExponent,
    ShiftSum,
    ProjectMod,
    Volume,
    DecomposeFp,
    DecomposeZp,
    Probability,
    Measure,
    Evolve,
    ShiftModel,
    Torus,
    Seminorm,
    Audit,
}

impl Command {
    pub fn name(self) -> String {
        self.to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default()
    }
}

/// Failure of a job, split by exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JobError {
    /// Exit 2.
    Invalid { kind: String, message: String },
    /// Exit 3.
    Precondition { kind: String, message: String },
}

impl JobError {
    fn invalid(message: impl Into<String>) -> JobError {
        JobError::Invalid {
            kind: "invalid_input".into(),
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            JobError::Invalid { .. } => 2,
            JobError::Precondition { .. } => 3,
        }
    }

    pub fn to_json(&self) -> Value {
        let (kind, message) = match self {
            JobError::Invalid { kind, message } | JobError::Precondition { kind, message } => {
                (kind, message)
            }
        };
        json!({"schema": SCHEMA, "error": {"kind": kind, "message": message}})
    }
}

impl From<PadicError> for JobError {
    fn from(e: PadicError) -> JobError {
        let kind = e.kind().to_string();
        let message = e.to_string();
        if e.is_precondition() {
            JobError::Precondition { kind, message }
        } else {
            JobError::Invalid { kind, message }
        }
    }
}

type JobResult<T> = std::result::Result<T, JobError>;

/// Typed access to the input document.
struct Doc<'a> {
    obj: &'a Map<String, Value>,
}

impl<'a> Doc<'a> {
    fn new(v: &'a Value) -> JobResult<Doc<'a>> {
        v.as_object()
            .map(|obj| Doc { obj })
            .ok_or_else(|| JobError::invalid("input must be a JSON object"))
    }

    fn get(&self, key: &str) -> JobResult<&'a Value> {
        self.obj
            .get(key)
            .ok_or_else(|| JobError::invalid(format!("missing field {key:?}")))
    }

    fn opt(&self, key: &str) -> Option<&'a Value> {
        self.obj.get(key).filter(|v| !v.is_null())
    }

    fn u64(&self, key: &str) -> JobResult<u64> {
        as_u64(self.get(key)?, key)
    }

    fn u64_or(&self, key: &str, default: u64) -> JobResult<u64> {
        self.opt(key).map_or(Ok(default), |v| as_u64(v, key))
    }

    fn i64(&self, key: &str) -> JobResult<i64> {
        as_i64(self.get(key)?, key)
    }

    fn bool_or(&self, key: &str, default: bool) -> JobResult<bool> {
        match self.opt(key) {
            None => Ok(default),
            Some(v) => v
                .as_bool()
                .ok_or_else(|| JobError::invalid(format!("{key:?} must be a boolean"))),
        }
    }

    fn ring(&self) -> JobResult<Zp> {
        let p = self.u64("p")?;
        let k = self.u64("K")?;
        let k = u32::try_from(k).map_err(|_| JobError::invalid("K is too large"))?;
        Ok(Zp::new(p, k)?)
    }

    /// Precision j, as a positive integer or the symbol ONE_MINUS.
    fn epsilon(&self, key: &str, ring: &Zp) -> JobResult<u32> {
        let v = self.opt(key);
        let eps = match v {
            None => return Ok(ring.precision()),
            Some(Value::String(s)) => Epsilon::parse(s)?,
            Some(other) => Epsilon::Power(
                u32::try_from(as_u64(other, key)?).map_err(|_| JobError::invalid("j too large"))?,
            ),
        };
        Ok(eps.precision())
    }

    fn scalar(&self, key: &str, ring: &Zp) -> JobResult<PadicScalar> {
        scalar(self.get(key)?, ring)
    }

    fn matrix(&self, key: &str, ring: &Zp) -> JobResult<PadicMatrix> {
        matrix(self.get(key)?, ring)
    }

    fn poly(&self, key: &str, ring: &Zp) -> JobResult<UnitPolynomial> {
        unit_poly(self.get(key)?, ring)
    }
}

fn as_u64(v: &Value, key: &str) -> JobResult<u64> {
    v.as_u64()
        .or_else(|| v.as_str().and_then(|s| s.trim().parse().ok()))
        .ok_or_else(|| JobError::invalid(format!("{key:?} must be a non-negative integer")))
}

fn as_i64(v: &Value, key: &str) -> JobResult<i64> {
    v.as_i64()
        .or_else(|| v.as_str().and_then(|s| s.trim().parse().ok()))
        .ok_or_else(|| JobError::invalid(format!("{key:?} must be an integer")))
}

pub fn scalar(v: &Value, ring: &Zp) -> JobResult<PadicScalar> {
    match v {
        Value::String(s) => Ok(ring.parse(s)?),
        Value::Number(n) => Ok(ring.parse(&n.to_string())?),
        _ => Err(JobError::invalid(format!("scalar expected, got {v}"))),
    }
}

fn array<'a>(v: &'a Value, what: &str) -> JobResult<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| JobError::invalid(format!("{what} must be an array")))
}

pub fn vector(v: &Value, ring: &Zp) -> JobResult<Vec<PadicScalar>> {
    array(v, "vector")?
        .iter()
        .map(|x| scalar(x, ring))
        .collect()
}

/// Square matrix as an array of rows, or the headed form produced on output.
pub fn matrix(v: &Value, ring: &Zp) -> JobResult<PadicMatrix> {
    let v = match v.as_object() {
        None => v,
        Some(obj) => {
            for (key, want) in [("p", ring.p()), ("K", ring.precision() as u64), ("m", 1)] {
                if let Some(x) = obj.get(key) {
                    if as_u64(x, key)? != want {
                        return Err(JobError::invalid(format!(
                            "matrix header {key} = {x} disagrees with the job"
                        )));
                    }
                }
            }
            obj.get("entries")
                .ok_or_else(|| JobError::invalid("matrix object needs \"entries\""))?
        }
    };
    let rows = array(v, "matrix")?
        .iter()
        .map(|r| vector(r, ring))
        .collect::<JobResult<Vec<_>>>()?;
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows.len()) {
        return Err(JobError::invalid("matrix must be square and non-empty"));
    }
    Ok(Matrix::from_rows(rows)?)
}

/// Either a coefficient list (low degree first) or {"low": k, "coeffs": [...]}.
fn laurent(v: &Value, ring: &Zp) -> JobResult<LaurentPoly> {
    if let Some(obj) = v.as_object() {
        if let Some(terms) = obj.get("terms") {
            let pairs = array(terms, "terms")?
                .iter()
                .map(|t| {
                    let pair = array(t, "term")?;
                    if pair.len() != 2 {
                        return Err(JobError::invalid("term must be [exponent, coefficient]"));
                    }
                    Ok((as_i64(&pair[0], "exponent")?, scalar(&pair[1], ring)?))
                })
                .collect::<JobResult<Vec<_>>>()?;
            return Ok(LaurentPoly::new(ring, pairs));
        }
        let low = obj.get("low").map_or(Ok(0), |x| as_i64(x, "low"))?;
        let coeffs = vector(
            obj.get("coeffs")
                .ok_or_else(|| JobError::invalid("polynomial needs \"coeffs\" or \"terms\""))?,
            ring,
        )?;
        return Ok(LaurentPoly::from_poly(&ZpPoly::new(ring, coeffs)).shift(low));
    }
    Ok(LaurentPoly::from_poly(&ZpPoly::new(ring, vector(v, ring)?)))
}

fn unit_poly(v: &Value, ring: &Zp) -> JobResult<UnitPolynomial> {
    Ok(UnitPolynomial::new(&laurent(v, ring)?)?)
}

pub fn scalar_json(x: &PadicScalar) -> Value {
    Value::String(x.to_string())
}

/// Row-major scalar strings with a (p, K, n, m) header.
pub fn matrix_json(m: &PadicMatrix) -> Value {
    json!({
        "p": m.ring().p(),
        "K": m.ring().precision(),
        "n": m.n(),
        "m": 1,
        "entries": m.to_strings(),
    })
}

/// Entries are coefficient lists in the extension basis.
fn unram_matrix_json(m: &Matrix<UnramScalar>, p: u64, k: u32, degree: usize) -> Value {
    let entries: Vec<Vec<Vec<String>>> = m
        .rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_strings()).collect())
        .collect();
    json!({"p": p, "K": k, "n": m.n(), "m": degree, "entries": entries})
}

fn poly_json(f: &ZpPoly) -> Value {
    json!(f.to_strings())
}

fn norm_json(n: &Norm) -> Value {
    json!({"display": n.to_string(), "valuation": n.valuation, "floor": n.is_floor()})
}

fn fp_matrix_json(m: &FpMatrix) -> Value {
    let n = m.n();
    let entries: Vec<Vec<String>> = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j).to_string()).collect())
        .collect();
    json!({"p": m.p(), "K": 1, "n": n, "m": 1, "entries": entries})
}

fn suite_json(r: &SuiteReport) -> Value {
    json!({
        "name": r.name,
        "cases": r.cases,
        "failures": r.failures,
        "passed": r.passed(),
        "detail": r.detail,
    })
}

/// Runs one job. `seed` drives every randomized subroutine.
pub fn run(cmd: Command, input: &Value, seed: u64) -> JobResult<Value> {
    let d = Doc::new(input)?;
    let result = dispatch(cmd, &d, seed)?;
    let mut out = Map::new();
    out.insert("schema".into(), json!(SCHEMA));
    out.insert("command".into(), json!(cmd.name()));
    out.insert("result".into(), result);
    Ok(Value::Object(out))
}

fn dispatch(cmd: Command, d: &Doc, seed: u64) -> JobResult<Value> {
    use Command::*;
    match cmd {
        Classify => {
            let r = d.ring()?;
            let c = classify(&d.matrix("matrix", &r)?)?;
            Ok(json!({
                "class": c.class.as_str(),
                "is_teichmuller": c.is_teichmuller,
                "is_continuous": c.is_continuous,
                "limit": matrix_json(&c.limit),
                "steps": c.steps,
            }))
        }
        Jordan => {
            let r = d.ring()?;
            let j = jordan_decompose(&d.matrix("matrix", &r)?)?;
            Ok(json!({
                "semisimple": matrix_json(&j.semisimple),
                "unipotent": matrix_json(&j.unipotent),
                "exponent": j.exponent.to_string(),
            }))
        }
        Spectral => {
            let r = d.ring()?;
            let s = teichmuller_spectral(&d.matrix("matrix", &r)?, seed)?;
            let audit = s.audit();
            let eig: Vec<Value> = s
                .eigenvalues
                .iter()
                .zip(&s.projectors)
                .enumerate()
                .map(|(i, (l, pi))| {
                    json!({
                        "eigenvalue": l.to_strings(),
                        "projector": unram_matrix_json(pi, r.p(), r.precision(), s.field.degree()),
                        "frobenius_image": s.frobenius_successor(i),
                    })
                })
                .collect();
            let orbits: Vec<Value> = s
                .orbits
                .iter()
                .map(|o| json!({"residue_factor": o.residue_factor.coeffs(), "members": o.members}))
                .collect();
            Ok(json!({
                "field": {"degree": s.field.degree(), "modulus_id": s.field.modulus_id()},
                "spectrum": eig,
                "orbits": orbits,
                "audit": {
                    "sum_is_identity": audit.sum_is_identity,
                    "idempotent": audit.idempotent,
                    "orthogonal": audit.orthogonal,
                    "reconstructs": audit.reconstructs,
                    "frobenius_equivariant": audit.frobenius_equivariant,
                },
            }))
        }
        GaloisAct => {
            let r = d.ring()?;
            let s = teichmuller_spectral(&d.matrix("matrix", &r)?, seed)?;
            let k = d.u64("k")?;
            Ok(json!({"matrix": matrix_json(&s.galois_act(k)?)}))
        }
        PowerZp => {
            let r = d.ring()?;
            let u = d.matrix("matrix", &r)?;
            Ok(json!({"matrix": matrix_json(&power_zp(&u, &d.scalar("t", &r)?)?)}))
        }
        Projection => {
            let r = d.ring()?;
            let j = d.epsilon("j", &r)?;
            let pf = projection_functors(&d.matrix("matrix", &r)?, j, &d.poly("f", &r)?)?;
            Ok(json!({
                "kernel_basis": pf.kernel_basis.iter().map(|v| v.iter().map(scalar_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "divisors": pf.structure.divisors,
                "free_rank": pf.structure.free_rank,
                "kernel_log_size": pf.structure.kernel_log_size,
                "precision": j,
            }))
        }
        SpectrumTable => {
            let r = d.ring()?;
            let js = match d.opt("js") {
                None => (1..=r.precision()).collect(),
                Some(v) => array(v, "js")?
                    .iter()
                    .map(|x| as_u64(x, "js").map(|j| j as u32))
                    .collect::<JobResult<Vec<u32>>>()?,
            };
            let t = spectrum_table(&d.matrix("matrix", &r)?, &js, seed)?;
            Ok(serde_json::to_value(&t).expect("serializable"))
        }
        Orthogonal => {
            let r = d.ring()?;
            let j = d.epsilon("j", &r)?;
            let o = orthogonality_test(&d.poly("f", &r)?, &d.poly("g", &r)?, j)?;
            Ok(json!({
                "orthogonal": o.orthogonal,
                "resultant": scalar_json(&o.resultant),
                "resultant_valuation": o.resultant.valuation(),
                "k": poly_json(&o.k),
                "l": poly_json(&o.l),
            }))
        }
        Idempotents => {
            let r = d.ring()?;
            let j = d.epsilon("j", &r)?;
            let (f, g) = (d.poly("f", &r)?, d.poly("g", &r)?);
            let idem = bezout_idempotents(&f, &g, j)?;
            let audit = idem.audit(&f, &g)?;
            Ok(json!({
                "p1": poly_json(&idem.p1),
                "p2": poly_json(&idem.p2),
                "k": poly_json(&idem.k),
                "l": poly_json(&idem.l),
                "modulus": poly_json(&idem.modulus),
                "audit": serde_json::to_value(audit).expect("serializable"),
                "all_hold": audit.all(),
            }))
        }
        TeichFactor => {
            let r = d.ring()?;
            let j = d.epsilon("j", &r)?;
            let tf = teich_factor(&d.poly("f", &r)?, j, seed)?;
            let factors: Vec<Value> = tf
                .factors
                .iter()
                .map(|f| json!({"label": serde_json::to_value(&f.label).expect("serializable"), "factor": poly_json(&f.factor)}))
                .collect();
            Ok(json!({
                "precision": tf.precision,
                "unit": scalar_json(&tf.unit),
                "shift": tf.shift,
                "factors": factors,
            }))
        }
        PrincipalExponent => {
            let r = d.ring()?;
            let j = d.epsilon("j", &r)?;
            let e = if d.opt("matrix").is_some() {
                principal_exponent(&d.matrix("matrix", &r)?, j)?
            } else {
                principal_exponent_poly(&d.poly("f", &r)?, j)?
            };
            Ok(json!({
                "n": e.n.to_string(),
                "residual_order": e.residual_order.to_string(),
                "l": e.l,
                "precision": e.precision,
            }))
        }
        ShiftSum => {
            let r = d.ring()?;
            let f = laurent(d.get("f")?, &r)?;
            let v = f.shift_sum(d.i64("c")?, d.i64("d")?)?;
            Ok(json!({"value": scalar_json(&v)}))
        }
        ProjectMod => {
            let r = d.ring()?;
            let f = laurent(d.get("f")?, &r)?;
            let v = f.project_mod(d.i64("d")?)?;
            Ok(json!({"components": v.iter().map(scalar_json).collect::<Vec<_>>()}))
        }
        Volume => {
            let v = if let Some(q) = d.opt("quotient_order") {
                profinite_volume(as_u64(q, "quotient_order")?)?
            } else {
                haar_volume(d.i64("c")?, d.i64("d")?)?
            };
            Ok(json!({"volume": v.to_string()}))
        }
        DecomposeFp => {
            let p = d.u64("p")?;
            let r = Zp::new(p, 1)?;
            let u = d.matrix("matrix", &r)?;
            let gens = build_generators(u.n(), p)?;
            let res = decompose_fp(&gens, &u.to_fp())?;
            Ok(json!({
                "word": res.word.exponents(),
                "t": fp_matrix_json(&res.t),
                "n": fp_matrix_json(&res.n),
                "modulus_ids": gens.modulus_ids,
            }))
        }
        DecomposeZp => {
            let r = d.ring()?;
            let res = decompose_zp(&d.matrix("matrix", &r)?)?;
            Ok(json!({
                "word": res.word.exponents(),
                "t": matrix_json(&res.t),
                "n": matrix_json(&res.n),
                "t_is_teichmuller": res.t_is_teichmuller,
            }))
        }
        Probability => {
            let r = d.ring()?;
            let ps = array(d.get("projectors")?, "projectors")?
                .iter()
                .map(|m| matrix(m, &r))
                .collect::<JobResult<Vec<_>>>()?;
            let psi = WaveFunction::new(vector(d.get("psi")?, &r)?)?;
            let pr = probability(&ps, &psi)?;
            Ok(json!({
                "parts": pr.parts.iter().map(norm_json).collect::<Vec<_>>(),
                "total": norm_json(&pr.total),
            }))
        }
        Measure => {
            let r = d.ring()?;
            let psi = WaveFunction::new(vector(d.get("psi")?, &r)?)?;
            let m = measure(&psi, &d.matrix("projector", &r)?)?;
            Ok(json!({
                "state": m.state.entries().iter().map(scalar_json).collect::<Vec<_>>(),
                "norm": norm_json(&m.norm),
            }))
        }
        Evolve => {
            let r = d.ring()?;
            let pair = EvolutionPair::new(d.matrix("h", &r)?, d.matrix("u", &r)?)?;
            let psi = WaveFunction::new(vector(d.get("psi")?, &r)?)?;
            let domain = if d.bool_or("widened", false)? {
                ExpDomain::Widened
            } else {
                ExpDomain::Strict
            };
            let out = evolve(&pair, &psi, d.i64("k")?, &d.scalar("t", &r)?, domain)?;
            Ok(json!({
                "state": out.state.entries().iter().map(scalar_json).collect::<Vec<_>>(),
                "norm": norm_json(&out.state.norm()),
                "norm_preserved": out.norm_preserved,
            }))
        }
        ShiftModel => {
            let p = d.u64("p")?;
            let k = d.u64("K")? as u32;
            let m = spectrum_shift_model(d.u64("size")? as usize, p, k)?;
            Ok(json!({
                "x": matrix_json(&m.x),
                "u": matrix_json(&m.u),
                "a_plus": matrix_json(&m.a_plus),
                "a_minus": matrix_json(&m.a_minus),
                "h": matrix_json(&m.h),
                "audit": {
                    "shift_relation": m.audit.shift_relation,
                    "commutator": m.audit.commutator,
                    "u_unitary": m.audit.u_unitary,
                    "u_continuous": m.audit.u_continuous,
                    "annihilates_constant": m.audit.annihilates_constant,
                },
            }))
        }
        Torus => {
            let r = d.ring()?;
            let bound = d.u64_or("bound", 4)? as u32;
            let c = torus_check(&d.matrix("u", &r)?, &d.matrix("v", &r)?, bound)?;
            Ok(json!({
                "xi": scalar_json(&c.xi),
                "power_relation": c.power_relation,
                "near_commutative": c.near_commutative,
                "bound": c.bound,
            }))
        }
        Seminorm => {
            let r = d.ring()?;
            let k_max = d.u64_or("k_max", 16)? as u32;
            let s = spectral_seminorm(&d.matrix("matrix", &r)?, k_max);
            Ok(match s {
                SpectralSeminorm::Zero { nilpotent_power } => {
                    json!({"value": s.to_string(), "nilpotent_power": nilpotent_power})
                }
                SpectralSeminorm::Value {
                    exponent,
                    attained_at,
                    ..
                } => json!({
                    "value": s.to_string(),
                    "exponent": [exponent.0, exponent.1],
                    "attained_at": attained_at,
                }),
            })
        }
        Audit => {
            let names = match d.opt("suites") {
                None => Vec::new(),
                Some(v) => array(v, "suites")?
                    .iter()
                    .map(|s| {
                        s.as_str()
                            .map(str::to_string)
                            .ok_or_else(|| JobError::invalid("suite names must be strings"))
                    })
                    .collect::<JobResult<Vec<_>>>()?,
            };
            let exec = if d.bool_or("sequential", false)? {
                Execution::Sequential
            } else {
                Execution::Parallel
            };
            let reports = run_suites(&names, exec, seed)?;
            Ok(json!({
                "suites": reports.iter().map(suite_json).collect::<Vec<_>>(),
                "passed": reports.iter().all(SuiteReport::passed),
            }))
        }
    }
}

/// Seed from the document, the command line, or the fixed default.
pub fn resolve_seed(input: &Value, cli: Option<u64>) -> JobResult<u64> {
    match input.get("seed") {
        Some(v) if !v.is_null() => as_u64(v, "seed"),
        _ => Ok(cli.unwrap_or(DEFAULT_SEED)),
    }
}
