//! The batch jobs behind each mode, with step-labelled errors and an
//! exact run log.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use modeq_core::eliminate::{
    factor_bivariate, factor_bivariate_full, factor_univariate, resultant_z, select_modular_factor,
    singular_moduli, squarefree_bivariate, strip_content, symmetry, CandidateReport, EliminateError, FactorList,
    SingularModuliReport, SymmetryRelation,
};
use modeq_core::exactalg::rational::DisplayRational;
use modeq_core::exactalg::{BiPoly, BigRational, UniPoly};
use modeq_core::heckeforms::{
    dimension, hecke_transfer, power_sums, seed_weight, EigenTransferMap, HeckeError, HeckeTable,
};
use modeq_core::schwarzian::{build_q, frobenius_series, indicial_exponents, validate_accessory, CurveData};
use modeq_core::symmetric::{build_psi, newton_to_elementary, reverse_psi};
use num_traits::{One, Signed};

use crate::config::{mode_name, ConfigError, JobConfig, Mode};
use crate::formats::{
    parse_curve, parse_eigenmap, parse_hecke_table, parse_phi, symmetry_label, write_hecke_table, write_phi,
    write_singular_moduli, FormatError, PhiFile, PHI_VARS,
};

/// Pipeline steps. The labels follow the usual outline of the method;
/// `(g)` is the factorization of the resultant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    SeedForm,
    BaseHecke,
    Eigenforms,
    TargetHecke,
    Psi,
    Resultant,
    Factor,
    Select,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Step::SeedForm => "(a) seed form",
            Step::BaseHecke => "(b) T_p0 matrices",
            Step::Eigenforms => "(c) eigenvalue maps",
            Step::TargetHecke => "(d) T_p matrices and power sums",
            Step::Psi => "(e) Newton identities and Psi",
            Step::Resultant => "(f) resultant",
            Step::Factor => "(g) factorization",
            Step::Select => "(h) selection",
        };
        f.write_str(s)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {message}", path.display())]
    Io { path: PathBuf, message: String },
    #[error("{}: {source}", path.display())]
    Format { path: PathBuf, source: FormatError },
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{}: accessory relations fail:\n{report}", path.display())]
    Accessory { path: PathBuf, report: String },
    #[error("{}: {source}", path.display())]
    Hecke { path: PathBuf, source: HeckeError },
    #[error("{}: {message}", path.display())]
    Mismatch { path: PathBuf, message: String },
    #[error("step {step}: {message}")]
    Pipeline { step: Step, message: String },
    #[error("step {}: {message}", Step::Select)]
    Ambiguous { message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Pipeline { .. } => 3,
            CliError::Ambiguous { .. } => 4,
            _ => 2,
        }
    }
}

fn pipeline(step: Step) -> impl Fn(&dyn fmt::Display) -> CliError {
    move |e| CliError::Pipeline { step, message: e.to_string() }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io { path: path.to_path_buf(), message: e.to_string() })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io { path: path.to_path_buf(), message: e.to_string() })
}

fn parse_file<T>(path: &Path, parse: fn(&str) -> Result<T, FormatError>) -> Result<T, CliError> {
    parse(&read(path)?).map_err(|source| CliError::Format { path: path.to_path_buf(), source })
}

/// Exact record of a run, one entry per line.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunLog {
    pub lines: Vec<String>,
}

impl RunLog {
    fn push(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    fn block(&mut self, title: impl Into<String>, body: &str) {
        self.push(title);
        for l in body.lines() {
            self.push(format!("  {l}"));
        }
    }

    pub fn render(&self) -> String {
        let mut s = self.lines.join("\n");
        s.push('\n');
        s
    }
}

/// Validated inputs of a job.
#[derive(Debug, Clone)]
pub struct Inputs {
    pub curve: CurveData,
    pub tables: Vec<HeckeTable>,
    pub eigenmap: Option<EigenTransferMap>,
}

/// Reads and cross-checks the curve, Hecke tables and eigenvalue map.
pub fn parse_inputs(config: &JobConfig) -> Result<Inputs, CliError> {
    let curve_path = config.curve.as_deref().ok_or(ConfigError::MissingInput { mode: mode_name(config.mode), flag: "curve" })?;
    let curve = parse_file(curve_path, parse_curve)?;
    let report = validate_accessory(&curve);
    if !report.is_valid() {
        return Err(CliError::Accessory { path: curve_path.to_path_buf(), report: report.to_string() });
    }
    if let (Some(p), Some(d)) = (config.prime, curve.discriminant) {
        if d % p == 0 {
            return Err(ConfigError::PrimeDividesDiscriminant { prime: p, discriminant: d, curve: curve.name.clone() }.into());
        }
    }
    let mut tables = Vec::new();
    for path in &config.hecke {
        let table = parse_file(path, parse_hecke_table)?;
        table.validate(&curve).map_err(|source| CliError::Hecke { path: path.clone(), source })?;
        tables.push(table);
    }
    let eigenmap = match &config.eigenmap {
        None => None,
        Some(path) => {
            let map = parse_file(path, parse_eigenmap)?;
            map.validate(&curve).map_err(|source| CliError::Hecke { path: path.clone(), source })?;
            let mismatch = |message: String| CliError::Mismatch { path: path.clone(), message };
            if let Some(p0) = config.base_prime.filter(|&p0| p0 != map.base()) {
                return Err(mismatch(format!("base prime {} but --base-prime {p0}", map.base())));
            }
            if let Some(p) = config.prime.filter(|&p| p != map.target()) {
                return Err(mismatch(format!("target prime {} but --prime {p}", map.target())));
            }
            Some(map)
        }
    };
    Ok(Inputs { curve, tables, eigenmap })
}

fn weights(k: u32, p: u64) -> impl Iterator<Item = u32> {
    (1..=p as u32 + 1).map(move |m| k * m)
}

/// The T_p table at weights `k, 2k, …, (p+1)k`, transferred from T_{p0}
/// when an eigenvalue map is given and checked against any supplied T_p
/// table.
fn target_table(inputs: &Inputs, p: u64, k: u32, log: &mut RunLog) -> Result<HeckeTable, CliError> {
    let direct = inputs.tables.iter().find(|t| t.prime() == p);
    let Some(map) = &inputs.eigenmap else {
        let direct = direct.ok_or_else(|| CliError::Pipeline {
            step: Step::TargetHecke,
            message: format!("no T_{p} table and no eigenvalue map"),
        })?;
        log.push(format!("step {}: using the supplied T_{p} table", Step::TargetHecke));
        return Ok(direct.clone());
    };
    let p0 = map.base();
    let base = inputs.tables.iter().find(|t| t.prime() == p0).ok_or_else(|| CliError::Pipeline {
        step: Step::BaseHecke,
        message: format!("no T_{p0} table supplied"),
    })?;
    let mut out = HeckeTable::new(p);
    for w in weights(k, p) {
        let a = base.get(w).map_err(|e| pipeline(Step::BaseHecke)(&e))?;
        let g = map.get(w).map_err(|e| pipeline(Step::Eigenforms)(&e))?;
        let b = hecke_transfer(a, g, w).map_err(|e| pipeline(Step::TargetHecke)(&e))?;
        log.block(format!("step {}: T_{p} at weight {w} = g(T_{p0}), g(a) = {g}", Step::TargetHecke), &b.to_string());
        out.insert(w, b);
    }
    if let Some(direct) = direct {
        for w in weights(k, p) {
            if let Ok(given) = direct.get(w) {
                if given != out.get(w).expect("inserted") {
                    return Err(CliError::Pipeline {
                        step: Step::TargetHecke,
                        message: format!("transferred T_{p} at weight {w} differs from the supplied table"),
                    });
                }
            }
        }
        log.push(format!("step {}: transferred T_{p} agrees with the supplied table", Step::TargetHecke));
    }
    Ok(out)
}

fn describe_factors(fl: &FactorList<BiPoly>) -> Vec<String> {
    fl.factors
        .iter()
        .map(|(f, m)| {
            format!(
                "bidegree ({}, {}) multiplicity {m}: {f}",
                f.degree_first().unwrap_or(0),
                f.degree_second().unwrap_or(0)
            )
        })
        .collect()
}

fn describe_diagonal(c: &CandidateReport) -> String {
    let degrees: Vec<String> = c.diagonal.factors.iter().map(|(f, m)| format!("{}^{m}", f.degree().unwrap_or(0))).collect();
    format!(
        "factor of bidegree ({}, {}): diagonal factor degrees [{}], linear split {}, hints {}",
        c.factor.degree_first().unwrap_or(0),
        c.factor.degree_second().unwrap_or(0),
        degrees.join(", "),
        c.linear_split,
        c.hints_satisfied
    )
}

#[derive(Debug, Clone)]
pub struct ModeqOutcome {
    pub phi: PhiFile,
    pub report: SingularModuliReport,
    pub symmetry: SymmetryRelation,
    /// Irreducible factors of the resultant's core.
    pub factors: FactorList<BiPoly>,
    pub candidates: Vec<CandidateReport>,
    pub log: RunLog,
}

/// Steps (a)–(h): seed form, Hecke transfer, power sums, Ψ, resultant,
/// factorization and selection.
pub fn run_modeq(config: &JobConfig) -> Result<ModeqOutcome, CliError> {
    let inputs = parse_inputs(config)?;
    let curve = &inputs.curve;
    let p = config.prime.expect("validated");
    let mut log = RunLog::default();
    log.push(format!("curve {} with {} elliptic points, p = {p}", curve.name, curve.points().len()));

    let k = match config.seed_weight {
        Some(k) => k,
        None => seed_weight(curve).map_err(|e| pipeline(Step::SeedForm)(&e))?,
    };
    let d = dimension(curve, k).map_err(|e| pipeline(Step::SeedForm)(&e))?;
    if d < 1 {
        return Err(CliError::Pipeline { step: Step::SeedForm, message: format!("no forms of weight {k}") });
    }
    log.push(format!("step {}: weight {k}, dimension {d}, F = f_{{{k},{d}}}", Step::SeedForm));

    let table = target_table(&inputs, p, k, &mut log)?;
    let sums = power_sums(curve, p, k, &table).map_err(|e| pipeline(Step::TargetHecke)(&e))?;
    for (m, s) in sums.sums.iter().enumerate() {
        log.push(format!("step {}: sum (F_j/F)^{} = {s}", Step::TargetHecke, m + 1));
    }

    let sym = newton_to_elementary(&sums.sums, p);
    for (m, e) in sym.elementary.iter().enumerate().skip(1) {
        log.push(format!("step {}: e_{m} = {e}", Step::Psi));
    }
    let psi = build_psi(&sym);
    log.push(format!("step {}: Psi(z, x) = psi(z, x) / D(x) with D(x) = {}", Step::Psi, psi.denominator));
    for (i, c) in psi.numerator.coeffs_in_first().iter().enumerate().rev() {
        log.push(format!("step {}: coefficient of z^{i}: {c}", Step::Psi));
    }

    let reversed = reverse_psi(&psi);
    let res = resultant_z(&psi.numerator, &reversed).map_err(|e| pipeline(Step::Resultant)(&e))?;
    log.push(format!(
        "step {}: R(x, y) has bidegree ({}, {}) and {} terms",
        Step::Resultant,
        res.degree_first().unwrap_or(0),
        res.degree_second().unwrap_or(0),
        res.terms().count()
    ));
    log.block(format!("step {}: R(x, y) =", Step::Resultant), &res.to_string());

    let split = strip_content(&res);
    log.push(format!("step {}: integer content {}", Step::Factor, DisplayRational(&split.integer)));
    log.push(format!("step {}: content in x alone {}", Step::Factor, split.first_content));
    log.push(format!("step {}: content in y alone {}", Step::Factor, split.second_content));
    let mut factors: Vec<(BiPoly, usize)> = Vec::new();
    for (part, m) in squarefree_bivariate(&split.core) {
        let fl = factor_bivariate(&part).map_err(|e| pipeline(Step::Factor)(&e))?;
        factors.extend(fl.factors.into_iter().map(|(f, _)| (f, m)));
    }
    let factors = FactorList { content: BigRational::one(), factors };
    log.push(format!("step {}: {} irreducible factors of the core", Step::Factor, factors.factors.len()));
    for line in describe_factors(&factors) {
        log.push(format!("step {}: {line}", Step::Factor));
    }

    let selection = match select_modular_factor(&factors, p, &curve.name, config.cm_hints.as_deref()) {
        Ok(s) => s,
        Err(EliminateError::Ambiguous(n)) => {
            return Err(CliError::Ambiguous {
                message: format!("{n} factors have linearly split diagonals; supply --cm-hints"),
            })
        }
        Err(e) => return Err(pipeline(Step::Select)(&e)),
    };
    for c in &selection.candidates {
        log.push(format!("step {}: {}", Step::Select, describe_diagonal(c)));
    }
    let phi = selection.modular.phi.clone();
    let report = singular_moduli(&phi);
    let relation = symmetry(&phi);
    log.push(format!("step {}: selected Phi_{p} of bidegree ({}, {})", Step::Select, phi.degree_first().unwrap_or(0), phi.degree_second().unwrap_or(0)));
    log.push(format!("step {}: Phi(x, y) and Phi(y, x) are {}", Step::Select, symmetry_label(relation)));
    Ok(ModeqOutcome {
        phi: PhiFile { prime: p, curve: curve.name.clone(), phi },
        report,
        symmetry: relation,
        factors,
        candidates: selection.candidates,
        log,
    })
}

/// T_p tables for every weight of the eigenvalue map.
pub fn run_transfer(config: &JobConfig) -> Result<(HeckeTable, RunLog), CliError> {
    let inputs = parse_inputs(config)?;
    let map = inputs.eigenmap.as_ref().expect("validated");
    let base = inputs.tables.iter().find(|t| t.prime() == map.base()).ok_or_else(|| CliError::Pipeline {
        step: Step::BaseHecke,
        message: format!("no T_{} table supplied", map.base()),
    })?;
    let mut log = RunLog::default();
    let mut out = HeckeTable::new(map.target());
    for (w, g) in map.iter() {
        let a = base.get(w).map_err(|e| pipeline(Step::BaseHecke)(&e))?;
        let b = hecke_transfer(a, g, w).map_err(|e| pipeline(Step::TargetHecke)(&e))?;
        log.push(format!("weight {w}: characteristic polynomial of T_{} is {}", map.target(), b.charpoly('x')));
        out.insert(w, b);
    }
    Ok((out, log))
}

/// Frobenius expansions at a finite elliptic point, for one exponent or
/// for both.
pub fn run_series(config: &JobConfig) -> Result<String, CliError> {
    let inputs = parse_inputs(config)?;
    let point = config.point.as_ref().expect("validated");
    let ode = build_q(&inputs.curve).map_err(|e| CliError::Config(ConfigError::BadValue { flag: "curve", message: e.to_string() }))?;
    let bad_point = |e: &dyn fmt::Display| ConfigError::BadValue { flag: "point", message: e.to_string() };
    let order = inputs
        .curve
        .point_at(point)
        .ok_or_else(|| bad_point(&format!("t = {} is not a finite elliptic point", DisplayRational(point))))?
        .order;
    let (r1, r2) = indicial_exponents(order).map_err(|e| bad_point(&e))?;
    let branches = match &config.branch {
        Some(b) => vec![b.clone()],
        None => vec![r1, r2],
    };
    let mut out = format!("Q(t) = {}\n", ode.q());
    for b in branches {
        let f = frobenius_series(&ode, point, &b, config.order).map_err(|e| CliError::Config(ConfigError::BadValue {
            flag: "branch",
            message: e.to_string(),
        }))?;
        out.push_str(&format!("t = {} e = {order} exponent {}: {f}\n", DisplayRational(point), DisplayRational(&b)));
    }
    Ok(out)
}

/// One finding of verify mode; `passed` is `None` for informational lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: Option<bool>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub leading_in_y: FactorList<UniPoly>,
    pub diagonal: SingularModuliReport,
}

impl VerifyReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed != Some(false))
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = match c.passed {
                Some(true) => "PASS",
                Some(false) => "FAIL",
                None => "INFO",
            };
            writeln!(f, "{status} {}: {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

fn factored(fl: &FactorList<UniPoly>) -> String {
    let mut s = DisplayRational(&fl.content).to_string();
    for (g, m) in &fl.factors {
        s.push_str(&format!(" * ({g})"));
        if *m > 1 {
            s.push_str(&format!("^{m}"));
        }
    }
    s
}

/// Primitivity, degree, irreducibility and diagonal checks on a Φ file.
pub fn verify_phi(file: &PhiFile) -> VerifyReport {
    let phi = &file.phi;
    let mut checks = Vec::new();
    let (content, _) = phi.primitive_part();
    checks.push(Check {
        name: "primitive",
        passed: Some(content.is_integer() && content.abs().is_one()),
        detail: format!("content {}", DisplayRational(&content)),
    });
    let dy = phi.degree_second().unwrap_or(0);
    checks.push(Check {
        name: "degree",
        passed: Some(dy as u64 == file.prime + 1),
        detail: format!("deg_y = {dy}, p + 1 = {}", file.prime + 1),
    });
    let irreducible = factor_bivariate_full(phi);
    let (passed, detail) = match &irreducible {
        Ok(fl) if fl.factors.len() == 1 && fl.factors[0].1 == 1 => (true, "one factor".to_string()),
        Ok(fl) => (false, describe_factors(fl).join("; ")),
        Err(e) => (false, e.to_string()),
    };
    checks.push(Check { name: "irreducible", passed: Some(passed), detail });
    let lead = phi.coeffs_in_second().pop().unwrap_or_else(|| UniPoly::zero(PHI_VARS.0));
    let leading_in_y = factor_univariate(&lead);
    checks.push(Check { name: "leading coefficient in y", passed: None, detail: factored(&leading_in_y) });
    let diagonal = singular_moduli(phi);
    let nonlinear: Vec<String> = diagonal
        .entries
        .iter()
        .filter(|e| e.factor.degree() != Some(1))
        .map(|e| format!("degree {} norm {}", e.factor.degree().unwrap_or(0), DisplayRational(&e.norm)))
        .collect();
    checks.push(Check {
        name: "diagonal splits",
        passed: Some(nonlinear.is_empty() && !diagonal.entries.is_empty()),
        detail: if nonlinear.is_empty() {
            format!("{} linear factors", diagonal.entries.len())
        } else {
            format!("nonlinear factors: {}", nonlinear.join(", "))
        },
    });
    checks.push(Check { name: "symmetry", passed: None, detail: symmetry_label(symmetry(phi)).to_string() });
    VerifyReport { checks, leading_in_y, diagonal }
}

pub fn run_verify(config: &JobConfig) -> Result<VerifyReport, CliError> {
    let path = config.phi.as_deref().expect("validated");
    let file = parse_file(path, parse_phi)?;
    if let Some(p) = config.prime.filter(|&p| p != file.prime) {
        return Err(CliError::Mismatch { path: path.to_path_buf(), message: format!("file has p = {} but --prime {p}", file.prime) });
    }
    Ok(verify_phi(&file))
}

pub fn run_singular_moduli(config: &JobConfig) -> Result<SingularModuliReport, CliError> {
    let path = config.phi.as_deref().expect("validated");
    let file = parse_file(path, parse_phi)?;
    Ok(singular_moduli(&file.phi))
}

/// Text written to the output and to the log by one run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rendered {
    pub output: String,
    /// Secondary output, written next to `--out` with a `.moduli` suffix.
    pub report: Option<String>,
    pub log: String,
}

/// Runs the configured mode and renders its results.
pub fn render(config: &JobConfig) -> Result<Rendered, CliError> {
    Ok(match config.mode {
        Mode::Modeq => {
            let o = run_modeq(config)?;
            Rendered { output: write_phi(&o.phi), report: Some(write_singular_moduli(&o.report)), log: o.log.render() }
        }
        Mode::Transfer => {
            let (table, log) = run_transfer(config)?;
            Rendered { output: write_hecke_table(&table), report: None, log: log.render() }
        }
        Mode::Series => Rendered { output: run_series(config)?, report: None, log: String::new() },
        Mode::Verify => Rendered { output: run_verify(config)?.to_string(), report: None, log: String::new() },
        Mode::SingularModuli => {
            Rendered { output: write_singular_moduli(&run_singular_moduli(config)?), report: None, log: String::new() }
        }
    })
}

fn moduli_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".moduli");
    PathBuf::from(s)
}

/// Runs a job and writes its output, report and log to their destinations.
pub fn execute(config: &JobConfig) -> Result<(), CliError> {
    let r = render(config)?;
    match &config.out {
        Some(path) => {
            write(path, &r.output)?;
            if let Some(report) = &r.report {
                write(&moduli_path(path), report)?;
            }
        }
        None => {
            print!("{}", r.output);
            if let Some(report) = &r.report {
                print!("{report}");
            }
        }
    }
    if !r.log.is_empty() {
        match &config.log {
            Some(path) => write(path, &r.log)?,
            None => eprint!("{}", r.log),
        }
    }
    Ok(())
}
