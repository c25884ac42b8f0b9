//! Verification suites behind the `superlie` binary.
//!
//! [`run`] executes one suite and returns a [`Report`]; the report JSON has
//! the shape `{command, algebra, inputs, results, timing}` where each result is
//! `{check, pass, witness?, values?}`. All numbers are exact: rationals are
//! `[num, den]` pairs and torus coordinates are `[re_num, re_den, im_num, im_den]`.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};
use superlie::complex::{check_eigenspace_brackets, complexify, nijenhuis_report, realify, validate_j, JStructure};
use superlie::json::gaussian_to_json;
use superlie::pbw::project_to_cartan;
use superlie::radial::{build_radial, cartan_leading_in_weights, check_gamma_oracle, extract_p, gamma_field_ratio};
use superlie::sampling;
use superlie::{
    build_gl, AlgebraDefinition, EnvelopingAlgebra, GlAlgebra, LieSuperalgebra, QuadraticForm, SmashAlgebra,
    TorusElement,
};

/// Environment variable overriding the default degree cap.
pub const DEGREE_CAP_ENV: &str = "SUPERLIE_DEGREE_CAP";
pub const DEFAULT_DEGREE_CAP: usize = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error in {path}: line {line}, column {column}: {message}")]
    Parse { path: String, line: usize, column: usize, message: String },
    #[error("unsupported algebra: {0}")]
    UnsupportedAlgebra(String),
    #[error("{failed} check(s) failed")]
    CheckFailed { failed: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Library(#[from] superlie::Error),
    #[error("i/o error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::CheckFailed { .. } => 1,
            _ => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Build,
    CheckJacobi,
    Casimir,
    HopfCheck,
    JstructCheck,
    GammaCheck,
    Radial,
    Complexify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Build => "build",
            Command::CheckJacobi => "check-jacobi",
            Command::Casimir => "casimir",
            Command::HopfCheck => "hopf-check",
            Command::JstructCheck => "jstruct-check",
            Command::GammaCheck => "gamma-check",
            Command::Radial => "radial",
            Command::Complexify => "complexify",
        }
    }
}

/// Where the algebra comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraSpec {
    /// `gl:m,n`
    Gl { m: usize, n: usize },
    /// `realgl:m,n`, the realification of gl(m|n) with multiplication by `i` as `J`.
    RealGl { m: usize, n: usize },
    File(PathBuf),
}

impl FromStr for AlgebraSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let unsupported = || CliError::UnsupportedAlgebra(s.to_string());
        let (kind, dims) = s.split_once(':').ok_or_else(unsupported)?;
        let (m, n) = dims.split_once(',').ok_or_else(unsupported)?;
        let m: usize = m.trim().parse().map_err(|_| unsupported())?;
        let n: usize = n.trim().parse().map_err(|_| unsupported())?;
        if m == 0 || n == 0 {
            return Err(unsupported());
        }
        match kind.trim() {
            "gl" => Ok(AlgebraSpec::Gl { m, n }),
            "realgl" => Ok(AlgebraSpec::RealGl { m, n }),
            _ => Err(unsupported()),
        }
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraSpec::Gl { m, n } => write!(f, "gl:{m},{n}"),
            AlgebraSpec::RealGl { m, n } => write!(f, "realgl:{m},{n}"),
            AlgebraSpec::File(p) => write!(f, "{}", p.display()),
        }
    }
}

/// Either a number of seeded random samples or an explicit list.
#[derive(Clone, Debug, PartialEq)]
pub enum Sampled<T> {
    Count(usize),
    List(Vec<T>),
}

impl<T> Sampled<T> {
    fn parse_with(s: &str, item: impl Fn(&Value) -> Result<T, String>) -> Result<Self, CliError> {
        if let Ok(n) = s.trim().parse::<usize>() {
            return Ok(Sampled::Count(n));
        }
        let v: Value = serde_json::from_str(s).map_err(|e| CliError::InvalidArgument(format!("{s:?}: {e}")))?;
        let items = v.as_array().ok_or_else(|| CliError::InvalidArgument(format!("{s:?}: expected a list")))?;
        items
            .iter()
            .map(|x| item(x).map_err(CliError::InvalidArgument))
            .collect::<Result<Vec<_>, _>>()
            .map(Sampled::List)
    }
}

impl FromStr for Sampled<TorusElement> {
    type Err = CliError;

    /// A count, or a JSON list of points `[[re_num, re_den, im_num, im_den], ...]`.
    fn from_str(s: &str) -> Result<Self, CliError> {
        Sampled::parse_with(s, |v| TorusElement::from_json(v).map_err(|e| e.to_string()))
    }
}

impl FromStr for Sampled<Vec<i32>> {
    type Err = CliError;

    /// A count, or a JSON list of integer weights.
    fn from_str(s: &str) -> Result<Self, CliError> {
        Sampled::parse_with(s, |v| serde_json::from_value(v.clone()).map_err(|e| e.to_string()))
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub algebra: AlgebraSpec,
    pub samples: usize,
    pub seed: u64,
    pub degree_cap: usize,
    pub points: Sampled<TorusElement>,
    pub weights: Sampled<Vec<i32>>,
    /// Order of the Casimir (2) or Gelfand invariant.
    pub order: usize,
    pub check_central: bool,
    /// Generator names spanning the ideal quotiented out by `complexify`.
    pub ideal: Vec<String>,
    /// Include the algebra definition in the `build` report.
    pub dump: bool,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command, algebra: AlgebraSpec) -> Self {
        RunConfig {
            command,
            algebra,
            samples: 100,
            seed: 0,
            degree_cap: DEFAULT_DEGREE_CAP,
            points: Sampled::Count(20),
            weights: Sampled::Count(12),
            order: 2,
            check_central: false,
            ideal: Vec::new(),
            dump: false,
            output: None,
        }
    }
}

/// One entry of `results`.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub check: String,
    pub pass: bool,
    pub witness: Option<Value>,
    pub values: Option<Value>,
}

impl CheckResult {
    fn new(check: &str, pass: bool) -> Self {
        CheckResult { check: check.to_string(), pass, witness: None, values: None }
    }

    fn witness(mut self, w: Option<Value>) -> Self {
        self.witness = w;
        self
    }

    fn values(mut self, v: Value) -> Self {
        self.values = Some(v);
        self
    }

    fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("check".into(), json!(self.check));
        m.insert("pass".into(), json!(self.pass));
        if let Some(w) = &self.witness {
            m.insert("witness".into(), w.clone());
        }
        if let Some(v) = &self.values {
            m.insert("values".into(), v.clone());
        }
        Value::Object(m)
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: Command,
    pub algebra: String,
    pub inputs: Value,
    pub results: Vec<CheckResult>,
    pub elapsed_ms: u128,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }

    pub fn failed(&self) -> usize {
        self.results.iter().filter(|r| !r.pass).count()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command.name(),
            "algebra": self.algebra,
            "inputs": self.inputs,
            "results": self.results.iter().map(CheckResult::to_json).collect::<Vec<_>>(),
            "timing": {"elapsed_ms": self.elapsed_ms as u64},
        })
    }

    /// The report JSON with the timing field removed.
    pub fn without_timing(&self) -> Value {
        let mut v = self.to_json();
        v.as_object_mut().unwrap().remove("timing");
        v
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
        s.push('\n');
        s
    }
}

struct Loaded {
    algebra: LieSuperalgebra,
    form: Option<QuadraticForm>,
    j: Option<JStructure>,
    gl: Option<GlAlgebra>,
}

fn load(spec: &AlgebraSpec) -> Result<Loaded, CliError> {
    match spec {
        AlgebraSpec::Gl { m, n } => {
            let gl = build_gl(*m, *n)?;
            Ok(Loaded { algebra: gl.algebra.clone(), form: Some(gl.form.clone()), j: None, gl: Some(gl) })
        }
        AlgebraSpec::RealGl { m, n } => {
            let gl = build_gl(*m, *n)?;
            let (real, j) = realify(&gl.algebra);
            Ok(Loaded { algebra: real, form: None, j: Some(j), gl: None })
        }
        AlgebraSpec::File(path) => {
            let shown = path.display().to_string();
            let text =
                std::fs::read_to_string(path).map_err(|source| CliError::Io { path: shown.clone(), source })?;
            let def = AlgebraDefinition::from_json_str(&text).map_err(|e| match e {
                superlie::Error::Parse { line, column, message } => {
                    CliError::Parse { path: shown.clone(), line, column, message }
                }
                other => CliError::Library(other),
            })?;
            let j = def.j.map(JStructure::new).transpose()?;
            Ok(Loaded { algebra: def.algebra, form: def.form, j, gl: None })
        }
    }
}

fn require_gl<'a>(loaded: &'a Loaded, spec: &AlgebraSpec, what: &str) -> Result<&'a GlAlgebra, CliError> {
    loaded
        .gl
        .as_ref()
        .ok_or_else(|| CliError::UnsupportedAlgebra(format!("{what} needs a gl:m,n builder, got {spec}")))
}

fn names(g: &LieSuperalgebra, idx: &[usize]) -> Value {
    json!(idx.iter().map(|&i| g.name(i)).collect::<Vec<_>>())
}

fn vector_json(v: &[superlie::GaussianRational]) -> Value {
    Value::Array(v.iter().map(gaussian_to_json).collect())
}

fn structure_checks(loaded: &Loaded, out: &mut Vec<CheckResult>) -> Result<(), CliError> {
    let g = &loaded.algebra;
    let anti = g.check_antisymmetry();
    out.push(CheckResult::new("super_antisymmetry", anti.pass).witness(anti.witness.map(|(i, j)| names(g, &[i, j]))));
    let par = g.check_parity();
    out.push(CheckResult::new("parity", par.pass).witness(par.witness.map(|(i, j)| names(g, &[i, j]))));
    out.push(jacobi_result(g));
    if let Some(form) = &loaded.form {
        let r = form.check(g)?;
        out.push(CheckResult::new("form_even", r.even.pass).witness(r.even.witness.map(|(i, j)| names(g, &[i, j]))));
        out.push(
            CheckResult::new("form_supersymmetric", r.supersymmetric.pass)
                .witness(r.supersymmetric.witness.map(|(i, j)| names(g, &[i, j]))),
        );
        out.push(CheckResult::new("form_invariant", r.invariant.is_none()).witness(r.invariant.map(|(i, j, k)| names(g, &[i, j, k]))));
        out.push(CheckResult::new("form_nondegenerate", r.nondegenerate));
    }
    if let Some(gl) = &loaded.gl {
        let r = gl.roots.check(g);
        out.push(
            CheckResult::new("root_decomposition", r.pass())
                .witness(r.eigen.map(|(h, x)| names(g, &[h, x])))
                .values(json!({"symmetric": r.symmetric, "covers_basis": r.covers_basis})),
        );
    }
    Ok(())
}

fn jacobi_result(g: &LieSuperalgebra) -> CheckResult {
    let r = g.check_jacobi();
    CheckResult::new("jacobi", r.pass)
        .witness(r.witness.map(|w| {
            json!({"triple": [w.names.0, w.names.1, w.names.2], "value": vector_json(&w.value)})
        }))
        .values(json!({"triples_checked": r.triples_checked}))
}

fn run_build(config: &RunConfig, loaded: &Loaded) -> Result<Vec<CheckResult>, CliError> {
    let g = &loaded.algebra;
    let mut out = Vec::new();
    let (even, odd) = g.super_dim();
    let mut values = json!({"dim": [even, odd]});
    if config.dump {
        let def = AlgebraDefinition {
            algebra: g.clone(),
            form: loaded.form.clone(),
            j: loaded.j.as_ref().map(|j| j.matrix().clone()),
        };
        values["definition"] = def.to_json();
    }
    out.push(CheckResult::new("built", true).values(values));
    structure_checks(loaded, &mut out)?;
    Ok(out)
}

fn run_casimir(config: &RunConfig, loaded: &Loaded) -> Result<Vec<CheckResult>, CliError> {
    let g = &loaded.algebra;
    let env = EnvelopingAlgebra::new(g);
    if config.order == 0 || config.order > config.degree_cap {
        return Err(CliError::InvalidArgument(format!(
            "order {} outside 1..={} (raise --degree-cap or {DEGREE_CAP_ENV})",
            config.order, config.degree_cap
        )));
    }
    let (name, element) = if config.order == 2 && loaded.form.is_some() {
        ("casimir2", env.casimir2(loaded.form.as_ref().unwrap())?)
    } else {
        let gl = require_gl(loaded, &config.algebra, "Gelfand invariants")?;
        match env.gelfand_invariant(gl, config.order) {
            Ok(c) => ("gelfand", c),
            Err(superlie::Error::NotCentral { witness }) => {
                return Ok(vec![CheckResult::new("gelfand", false).witness(Some(json!({"generator": witness})))]);
            }
            Err(e) => return Err(e.into()),
        }
    };
    let mut values = json!({"order": config.order, "element": element.to_json(g)});
    if let Some(gl) = &loaded.gl {
        values["cartan_projection"] = project_to_cartan(&element, &gl.roots).to_json();
    }
    let mut out = vec![CheckResult::new(name, true).values(values)];
    if config.check_central {
        let r = env.is_central(&element);
        out.push(CheckResult::new("central", r.pass).witness(
            r.witness.map(|(i, c)| json!({"generator": g.name(i), "supercommutator": c.to_json(g)})),
        ));
    }
    Ok(out)
}

fn run_hopf(config: &RunConfig, loaded: &Loaded) -> Result<Vec<CheckResult>, CliError> {
    let gl = require_gl(loaded, &config.algebra, "hopf-check")?;
    let h = SmashAlgebra::new(&gl.algebra, &gl.roots)?;
    let report = h.check_hopf_axioms(config.samples, config.seed);
    Ok(report
        .axioms
        .iter()
        .map(|a| {
            CheckResult::new(a.name, a.pass)
                .witness(a.witness.clone().map(Value::String))
                .values(json!({"checked": a.checked}))
        })
        .collect())
}

fn run_jstruct(config: &RunConfig, loaded: &Loaded) -> Result<Vec<CheckResult>, CliError> {
    let g = &loaded.algebra;
    let j = loaded.j.as_ref().ok_or_else(|| {
        CliError::UnsupportedAlgebra(format!("{} has no complex structure; use realgl:m,n or a file with J", config.algebra))
    })?;
    let mut out = Vec::new();
    let v = validate_j(g, j)?;
    out.push(
        CheckResult::new("validate_j", v.pass())
            .witness(v.linearity_witness.map(|(x, y)| names(g, &[x, y])))
            .values(json!({"square_is_minus_identity": v.square_is_minus_identity, "parity_preserving": v.parity_preserving})),
    );
    if !(v.square_is_minus_identity && v.parity_preserving) {
        return Ok(out);
    }
    let n = nijenhuis_report(g, j)?;
    out.push(
        CheckResult::new("nijenhuis", n.pass())
            .witness(n.witness.map(|(x, y, val)| json!({"pair": names(g, &[x, y]), "value": vector_json(&val)})))
            .values(json!({"pairs_checked": n.pairs_checked})),
    );
    let e = check_eigenspace_brackets(g, j)?;
    out.push(
        CheckResult::new("eigenspace_brackets", e.pass())
            .witness(e.witness.map(|(x, y, val)| json!({"pair": [x, y], "value": vector_json(&val)})))
            .values(json!({"pairs_checked": e.pairs_checked, "j_linear": e.j_linear})),
    );
    Ok(out)
}

fn run_gamma(config: &RunConfig, loaded: &Loaded) -> Result<Vec<CheckResult>, CliError> {
    let gl = require_gl(loaded, &config.algebra, "gamma-check")?;
    let h = SmashAlgebra::new(&gl.algebra, &gl.roots)?;
    let points = match &config.points {
        Sampled::List(p) => p.clone(),
        Sampled::Count(n) => {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            (0..*n).map(|_| sampling::random_generic_point(&mut rng, &gl.roots)).collect()
        }
    };
    if let Some(p) = points.iter().find(|p| p.rank() != gl.roots.rank()) {
        return Err(CliError::InvalidArgument(format!("point {p} has rank {}, expected {}", p.rank(), gl.roots.rank())));
    }
    let report = check_gamma_oracle(&h, &gl.form, &points)?;
    let opt = |z: &Option<superlie::GaussianRational>| z.as_ref().map_or(Value::Null, gaussian_to_json);
    let samples: Vec<Value> = report
        .points
        .iter()
        .map(|p| {
            let mut v = json!({"point": p.point.to_json(), "closed_form": opt(&p.closed_form), "oracle": opt(&p.oracle)});
            if let Some(n) = &p.notice {
                v["notice"] = json!(n);
            }
            v
        })
        .collect();
    let first_bad = report.points.iter().find(|p| match (&p.closed_form, &p.oracle, report.sign) {
        (Some(c), Some(o), Some(s)) => *c != o * &superlie::GaussianRational::from_int(s),
        _ => false,
    });
    let mut out = vec![CheckResult::new("gamma_oracle", report.pass)
        .witness(first_bad.map(|p| p.point.to_json()))
        .values(json!({"sign": report.sign, "points": samples}))];
    let ratio = gamma_field_ratio(&h, &gl.form)?;
    let pass = ratio.as_ref().is_some_and(|r| {
        *r == superlie::GaussianRational::from_int(1) || *r == superlie::GaussianRational::from_int(-1)
    });
    out.push(CheckResult::new("gamma_field_identity", pass).values(json!({"ratio": opt(&ratio)})));
    Ok(out)
}

fn run_radial(config: &RunConfig, loaded: &Loaded) -> Result<Vec<CheckResult>, CliError> {
    let gl = require_gl(loaded, &config.algebra, "radial")?;
    let op = match build_radial(&gl.roots, &gl.form) {
        Ok(op) => op,
        Err(e @ (superlie::Error::NotEigenfunction(_) | superlie::Error::NotAScalarSquare)) => {
            return Ok(vec![CheckResult::new("eigenfunction", false).witness(Some(json!(e.to_string())))]);
        }
        Err(e) => return Err(e.into()),
    };
    let mut out = vec![CheckResult::new("eigenfunction", true).values(json!({
        "j": op.j.to_string(),
        "j_squared_over_gamma": gaussian_to_json(&op.j_scalar),
        "laplacian": op.lambda.coeffs().iter().map(gaussian_to_json).collect::<Vec<_>>(),
        "c": gaussian_to_json(&op.eigenvalue_c),
    }))];
    let weights = match &config.weights {
        Sampled::List(w) => w.clone(),
        Sampled::Count(n) => {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            sampling::random_weights(&mut rng, gl.roots.rank(), *n, 3)
        }
    };
    let fit = match extract_p(&op, &weights) {
        Ok(fit) => fit,
        Err(e @ superlie::Error::NotConstantCoefficient { .. }) => {
            out.push(CheckResult::new("constant_coefficient", false).witness(Some(json!(e.to_string()))));
            return Ok(out);
        }
        Err(e) => return Err(e.into()),
    };
    out.push(CheckResult::new("constant_coefficient", true).values(json!({
        "weights": weights,
        "p_values": fit.values.iter().map(|(_, p)| gaussian_to_json(p)).collect::<Vec<_>>(),
    })));
    out.push(CheckResult::new("polynomial_fit", fit.consistent).values(json!({"p": fit.polynomial.to_json()})));
    let env = EnvelopingAlgebra::new(&gl.algebra);
    let c2 = env.casimir2(&gl.form)?;
    let expected = cartan_leading_in_weights(&project_to_cartan(&c2, &gl.roots));
    let got = fit.polynomial.leading_part();
    out.push(
        CheckResult::new("leading_term", got == expected)
            .values(json!({"fitted": got.to_json(), "casimir": expected.to_json()})),
    );
    Ok(out)
}

fn run_complexify(config: &RunConfig, loaded: &Loaded) -> Result<Vec<CheckResult>, CliError> {
    let g = &loaded.algebra;
    let mut ideal = Vec::new();
    for name in &config.ideal {
        let i = g
            .index_of(name)
            .ok_or_else(|| CliError::InvalidArgument(format!("unknown generator {name:?} in --ideal")))?;
        ideal.push(i);
    }
    match complexify(g, &ideal) {
        Ok(pair) => {
            let dim = pair.base.dim();
            let mut out = vec![CheckResult::new("complexify", true).values(json!({
                "real_dim": g.dim(),
                "quotient_ideal": pair.quotient_ideal,
                "complex_dim": dim,
                "real_dim_after": 2 * dim,
            }))];
            out.push(jacobi_result(&pair.base));
            Ok(out)
        }
        Err(e @ (superlie::Error::NotAnIdeal(_) | superlie::Error::NonRealStructure)) => {
            Ok(vec![CheckResult::new("complexify", false).witness(Some(json!(e.to_string())))])
        }
        Err(e) => Err(e.into()),
    }
}

fn inputs_json(config: &RunConfig) -> Value {
    let mut m = Map::new();
    m.insert("seed".into(), json!(config.seed));
    m.insert("degree_cap".into(), json!(config.degree_cap));
    match config.command {
        Command::Casimir => {
            m.insert("order".into(), json!(config.order));
            m.insert("check_central".into(), json!(config.check_central));
        }
        Command::HopfCheck => {
            m.insert("samples".into(), json!(config.samples));
        }
        Command::GammaCheck => {
            let points = match &config.points {
                Sampled::Count(n) => json!(n),
                Sampled::List(p) => json!(p.iter().map(TorusElement::to_json).collect::<Vec<_>>()),
            };
            m.insert("points".into(), points);
        }
        Command::Radial => {
            let weights = match &config.weights {
                Sampled::Count(n) => json!(n),
                Sampled::List(w) => json!(w),
            };
            m.insert("weights".into(), weights);
        }
        Command::Complexify => {
            m.insert("ideal".into(), json!(config.ideal));
        }
        Command::Build => {
            m.insert("dump".into(), json!(config.dump));
        }
        Command::CheckJacobi | Command::JstructCheck => {}
    }
    Value::Object(m)
}

/// Runs the configured suite. Failing checks are reported in the returned
/// [`Report`], not as an error.
pub fn run(config: &RunConfig) -> Result<Report, CliError> {
    let start = Instant::now();
    let loaded = load(&config.algebra)?;
    let results = match config.command {
        Command::Build => run_build(config, &loaded)?,
        Command::CheckJacobi => vec![jacobi_result(&loaded.algebra)],
        Command::Casimir => run_casimir(config, &loaded)?,
        Command::HopfCheck => run_hopf(config, &loaded)?,
        Command::JstructCheck => run_jstruct(config, &loaded)?,
        Command::GammaCheck => run_gamma(config, &loaded)?,
        Command::Radial => run_radial(config, &loaded)?,
        Command::Complexify => run_complexify(config, &loaded)?,
    };
    Ok(Report {
        command: config.command,
        algebra: config.algebra.to_string(),
        inputs: inputs_json(config),
        results,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Runs the suite, writes the report to the configured output (standard
/// output if none), and maps failing checks to [`CliError::CheckFailed`].
pub fn execute(config: &RunConfig) -> Result<Report, CliError> {
    let report = run(config)?;
    let text = report.render();
    match &config.output {
        Some(path) => std::fs::write(path, &text)
            .map_err(|source| CliError::Io { path: path.display().to_string(), source })?,
        None => print!("{text}"),
    }
    if report.pass() {
        Ok(report)
    } else {
        Err(CliError::CheckFailed { failed: report.failed() })
    }
}
