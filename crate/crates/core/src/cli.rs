//! Batch front end: run configuration, experiments and their artifacts.
//!
//! A run reads a TOML [`RunConfig`], executes one [`Experiment`], writes its
//! CSV tables and `report.json` to the output directory and maps the outcome
//! to an exit status.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dist::Side;
use crate::dynamics::{
    classical_flow, concentration_probability, evolve, evolve_expansion, hamiltonian_embedding_check,
    ClassicalState, EvolutionConfig, LinearField,
};
use crate::eigen::{
    residue_f_psi_closed_form, residue_f_psi_pairing, residue_psi_closed_form, residue_psi_pairing,
    ModelParams, ResidueContour,
};
use crate::error::{Error, Result};
use crate::hardy::{self, hardy_diagnostic, sample_energy_pairing, Classification, HalfPlane, PairingFamily};
use crate::quad::{centered_grid, QuadratureConfig};
use crate::report::{
    self, fmt_f, Check, Comparison, CsvTable, Environment, Finding, HardyEntry, TargetSource,
    VerificationReport,
};
use crate::spectral::{
    moment_expand, reconstruct_continuum, reconstruct_continuum_fourier, taylor_expand, ReconstructionConfig,
};
use crate::testfn::{TestFunction, TestFunctionSpec, DEFAULT_MAX_ORDER};
use crate::verify::{self, SuiteOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Experiment {
    #[default]
    Verify,
    Expand,
    Evolve,
    Reconstruct,
    Residues,
    Hardy,
    Classical,
}

impl Experiment {
    pub const ALL: [Experiment; 7] = [
        Experiment::Verify,
        Experiment::Expand,
        Experiment::Evolve,
        Experiment::Reconstruct,
        Experiment::Residues,
        Experiment::Hardy,
        Experiment::Classical,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::Verify => "verify",
            Experiment::Expand => "expand",
            Experiment::Evolve => "evolve",
            Experiment::Reconstruct => "reconstruct",
            Experiment::Residues => "residues",
            Experiment::Hardy => "hardy",
            Experiment::Classical => "classical",
        }
    }

    pub fn parse(name: &str) -> std::result::Result<Experiment, RunError> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == name)
            .ok_or_else(|| {
                let known: Vec<&str> = Experiment::ALL.iter().map(|e| e.name()).collect();
                RunError::Config(format!(
                    "unknown experiment `{name}` (expected one of {})",
                    known.join(", ")
                ))
            })
    }
}

/// A test function given a name in the configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedFunction {
    pub name: String,
    #[serde(flatten)]
    pub spec: TestFunctionSpec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpansionBasis {
    /// Taylor coefficients on the monomial family (entire functions).
    Plus,
    /// Moment coefficients on the delta-derivative family (compact support).
    Minus,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExpandParams {
    pub function: String,
    pub basis: ExpansionBasis,
    pub n: usize,
}

impl Default for ExpandParams {
    fn default() -> Self {
        ExpandParams {
            function: "bump_1_2".into(),
            basis: ExpansionBasis::Minus,
            n: 10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvolveParams {
    pub function: String,
    pub times: Vec<f64>,
    pub n: usize,
    pub epsilon: f64,
    pub enforce_semigroup: bool,
}

impl Default for EvolveParams {
    fn default() -> Self {
        EvolveParams {
            function: "bump_1_2".into(),
            times: vec![0.0, 0.5, 1.0, 2.0, 3.0],
            n: 10,
            epsilon: 0.1,
            enforce_semigroup: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ReconstructParams {
    pub function: String,
    pub e_max: f64,
    pub e_nodes: usize,
    pub x_samples: Vec<f64>,
    pub tolerance: f64,
}

impl Default for ReconstructParams {
    fn default() -> Self {
        ReconstructParams {
            function: "bump_1_2".into(),
            e_max: 120.0,
            e_nodes: 1440,
            x_samples: verify::RECONSTRUCTION_SAMPLES.to_vec(),
            tolerance: 1e-4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ResiduesParams {
    pub function: String,
    pub n_max: usize,
    pub radius_over_gamma: f64,
}

impl Default for ResiduesParams {
    fn default() -> Self {
        ResiduesParams {
            function: "rich_gaussian".into(),
            n_max: 5,
            radius_over_gamma: 0.25,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HardyParams {
    pub functions: Vec<String>,
    pub samples: usize,
    pub e_half_width: f64,
}

impl Default for HardyParams {
    fn default() -> Self {
        HardyParams {
            functions: vec!["bump_1_2".into(), "gauss_1_0".into()],
            samples: verify::HARDY_SAMPLES,
            e_half_width: verify::HARDY_HALF_WIDTH,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClassicalParams {
    pub x0: f64,
    pub p0: f64,
    pub t: f64,
    /// RK4 steps for the embedding check.
    pub steps: usize,
    /// Rows of the exact-flow table, including both ends.
    pub samples: usize,
}

impl Default for ClassicalParams {
    fn default() -> Self {
        ClassicalParams {
            x0: 1.0,
            p0: 1.0,
            t: 1.0,
            steps: 1000,
            samples: 11,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub gamma: f64,
    pub experiment: Experiment,
    pub seed: u64,
    pub quadrature: QuadratureConfig,
    pub functions: Vec<NamedFunction>,
    pub expand: ExpandParams,
    pub evolve: EvolveParams,
    pub reconstruct: ReconstructParams,
    pub residues: ResiduesParams,
    pub hardy: HardyParams,
    pub classical: ClassicalParams,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            gamma: 1.0,
            experiment: Experiment::Verify,
            seed: 0,
            quadrature: QuadratureConfig::default(),
            functions: Vec::new(),
            expand: ExpandParams::default(),
            evolve: EvolveParams::default(),
            reconstruct: ReconstructParams::default(),
            residues: ResiduesParams::default(),
            hardy: HardyParams::default(),
            classical: ClassicalParams::default(),
        }
    }
}

/// Functions available to every configuration without declaring them.
pub fn builtin_functions() -> Vec<NamedFunction> {
    use TestFunctionSpec::*;
    let bump = |lo, hi| Bump {
        lo,
        hi,
        amplitude: 1.0,
    };
    let gauss = |sigma, k| GaussHermite { sigma, k };
    let named = |name: &str, spec| NamedFunction {
        name: name.into(),
        spec,
    };
    vec![
        named("bump_1_2", bump(1.0, 2.0)),
        named("bump_m1_1", bump(-1.0, 1.0)),
        named("bump_03_08", bump(0.3, 0.8)),
        named("gauss_1_0", gauss(1.0, 0)),
        named("gauss_07_1", gauss(0.7, 1)),
        named("gauss_13_2", gauss(1.3, 2)),
        named(
            "rich_gaussian",
            Sum {
                terms: vec![gauss(1.0, 0), gauss(0.7, 1), gauss(1.3, 2)],
            },
        ),
        named(
            "fourier_bump_m1_1",
            FourierOfBump {
                lo: -1.0,
                hi: 1.0,
                amplitude: 1.0,
            },
        ),
    ]
}

impl RunConfig {
    pub fn from_toml(text: &str) -> std::result::Result<RunConfig, RunError> {
        toml::from_str(text).map_err(|e| RunError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> std::result::Result<RunConfig, RunError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| RunError::Config(format!("cannot read {}: {e}", path.display())))?;
        RunConfig::from_toml(&text).map_err(|e| match e {
            RunError::Config(m) => RunError::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    /// Declared functions shadow built-ins of the same name.
    pub fn function_table(&self) -> BTreeMap<String, TestFunctionSpec> {
        let mut table: BTreeMap<String, TestFunctionSpec> = builtin_functions()
            .into_iter()
            .map(|f| (f.name, f.spec))
            .collect();
        for f in &self.functions {
            table.insert(f.name.clone(), f.spec.clone());
        }
        table
    }

    pub fn validate(&self) -> std::result::Result<(), RunError> {
        let bad = |field: &str, why: String| Err(RunError::Config(format!("`{field}`: {why}")));
        if !(self.gamma > 0.0 && self.gamma.is_finite()) {
            return bad("gamma", format!("must be positive, got {}", self.gamma));
        }
        self.quadrature
            .validate()
            .map_err(|e| RunError::Config(format!("`quadrature`: {e}")))?;
        let mut seen = std::collections::BTreeSet::new();
        for f in &self.functions {
            if !seen.insert(&f.name) {
                return bad("functions", format!("duplicate name `{}`", f.name));
            }
            f.spec
                .build(&self.quadrature)
                .map_err(|e| RunError::Config(format!("`functions.{}`: {e}", f.name)))?;
        }
        let table = self.function_table();
        let resolve = |field: &str, name: &str| {
            if table.contains_key(name) {
                Ok(())
            } else {
                bad(field, format!("unknown function `{name}`"))
            }
        };
        match self.experiment {
            Experiment::Verify => {}
            Experiment::Expand => {
                resolve("expand.function", &self.expand.function)?;
                if self.expand.n >= DEFAULT_MAX_ORDER {
                    return bad("expand.n", format!("must be below {DEFAULT_MAX_ORDER}"));
                }
            }
            Experiment::Evolve => {
                let e = &self.evolve;
                resolve("evolve.function", &e.function)?;
                if e.times.is_empty() || e.times.iter().any(|t| !t.is_finite()) {
                    return bad("evolve.times", "needs at least one finite time".into());
                }
                if e.n >= DEFAULT_MAX_ORDER {
                    return bad("evolve.n", format!("must be below {DEFAULT_MAX_ORDER}"));
                }
                if !(e.epsilon > 0.0) {
                    return bad("evolve.epsilon", "must be positive".into());
                }
            }
            Experiment::Reconstruct => {
                let r = &self.reconstruct;
                resolve("reconstruct.function", &r.function)?;
                self.reconstruction_config()
                    .validate()
                    .map_err(|e| RunError::Config(format!("`reconstruct`: {e}")))?;
                if !(r.tolerance > 0.0) {
                    return bad("reconstruct.tolerance", "must be positive".into());
                }
            }
            Experiment::Residues => {
                let r = &self.residues;
                resolve("residues.function", &r.function)?;
                if !(r.radius_over_gamma > 0.0 && r.radius_over_gamma < 0.5) {
                    return bad(
                        "residues.radius_over_gamma",
                        "must lie in (0, 0.5) so the contour isolates one pole".into(),
                    );
                }
                if r.n_max >= DEFAULT_MAX_ORDER {
                    return bad("residues.n_max", format!("must be below {DEFAULT_MAX_ORDER}"));
                }
            }
            Experiment::Hardy => {
                let h = &self.hardy;
                if h.functions.is_empty() {
                    return bad("hardy.functions", "needs at least one function".into());
                }
                for f in &h.functions {
                    resolve("hardy.functions", f)?;
                }
                if h.samples < hardy::MIN_SAMPLES {
                    return bad("hardy.samples", format!("needs at least {}", hardy::MIN_SAMPLES));
                }
                if !(h.e_half_width > 0.0) {
                    return bad("hardy.e_half_width", "must be positive".into());
                }
            }
            Experiment::Classical => {
                let c = &self.classical;
                if c.steps == 0 || c.samples < 2 || !c.t.is_finite() {
                    return bad(
                        "classical",
                        "needs a finite t, steps >= 1 and samples >= 2".into(),
                    );
                }
            }
        }
        Ok(())
    }

    fn reconstruction_config(&self) -> ReconstructionConfig {
        let r = &self.reconstruct;
        ReconstructionConfig {
            e_max: r.e_max,
            e_nodes: r.e_nodes,
            x_samples: r.x_samples.clone(),
            tail_tolerance: None,
        }
    }

    fn function(&self, name: &str) -> Result<TestFunction> {
        let table = self.function_table();
        let spec = table
            .get(name)
            .ok_or_else(|| Error::Config(format!("unknown function `{name}`")))?;
        Ok(spec.build(&self.quadrature)?.with_description(name))
    }

    fn params(&self) -> Result<ModelParams> {
        ModelParams::new(self.gamma)
    }
}

/// Command-line overrides applied on top of the configuration file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunOptions {
    pub experiment: Option<Experiment>,
    pub out: PathBuf,
    pub seed: Option<u64>,
    pub jobs: Option<usize>,
    pub tolerance_scale: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RunError {
    Config(String),
    Runtime(Error),
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Config(m) => write!(f, "configuration error: {m}"),
            RunError::Runtime(e) => write!(f, "runtime error: {e}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Runtime(e)
    }
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 2,
            RunError::Runtime(_) => 3,
        }
    }
}

/// Exit status of a completed run: 0 when every check passed, 1 otherwise.
pub fn exit_code(report: &VerificationReport) -> i32 {
    if report.all_passed() {
        0
    } else {
        1
    }
}

/// Named CSV tables produced by an experiment.
#[derive(Debug, Clone, Default)]
pub struct Artifacts {
    pub tables: Vec<(String, String)>,
    pub checks: Vec<Check>,
    pub findings: Vec<Finding>,
    pub hardy: Vec<HardyEntry>,
}

impl Artifacts {
    fn table(&mut self, name: &str, csv: String) {
        self.tables.push((name.into(), csv));
    }
}

/// Executes the configured experiment and writes its artifacts to `opts.out`.
pub fn run(config: &RunConfig, opts: &RunOptions) -> std::result::Result<VerificationReport, RunError> {
    let mut config = config.clone();
    if let Some(e) = opts.experiment {
        config.experiment = e;
    }
    if let Some(s) = opts.seed {
        config.seed = s;
    }
    if !(opts.tolerance_scale > 0.0 && opts.tolerance_scale.is_finite()) {
        return Err(RunError::Config(format!(
            "`--tolerance-scale` must be positive, got {}",
            opts.tolerance_scale
        )));
    }
    config.validate()?;
    let jobs = opts.jobs.unwrap_or_else(rayon::current_num_threads);
    if jobs == 0 {
        return Err(RunError::Config("`--jobs` must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| RunError::Config(format!("cannot start {jobs} worker threads: {e}")))?;
    let artifacts = pool.install(|| execute(&config))?;

    let environment = Environment {
        version: env!("CARGO_PKG_VERSION").into(),
        seed: config.seed,
        jobs,
        tolerance_scale: opts.tolerance_scale,
        timestamp: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
    };
    let report = VerificationReport::assemble(
        config.experiment.name(),
        &artifacts.checks,
        artifacts.findings,
        artifacts.hardy,
        environment,
    );
    for (name, csv) in &artifacts.tables {
        report::write_file(&opts.out, name, csv)?;
    }
    report::write_file(&opts.out, "checks.csv", &report.checks_csv())?;
    report::write_file(&opts.out, "report.json", &report.to_json()?)?;
    Ok(report)
}

/// Runs the experiment without touching the file system.
pub fn execute(config: &RunConfig) -> Result<Artifacts> {
    let name = config.experiment.name();
    let out = match config.experiment {
        Experiment::Verify => run_verify(config),
        Experiment::Expand => run_expand(config),
        Experiment::Evolve => run_evolve(config),
        Experiment::Reconstruct => run_reconstruct(config),
        Experiment::Residues => run_residues(config),
        Experiment::Hardy => run_hardy(config),
        Experiment::Classical => run_classical(config),
    };
    out.map_err(|e| e.context(name))
}

fn run_verify(config: &RunConfig) -> Result<Artifacts> {
    let outcome = verify::run_suite(&SuiteOptions {
        seed: config.seed,
        quadrature: config.quadrature,
    })?;
    let mut a = Artifacts {
        checks: outcome.checks,
        findings: outcome.findings,
        hardy: outcome.hardy,
        ..Default::default()
    };
    a.table("hardy.csv", hardy_table(&a.hardy));
    Ok(a)
}

fn complex_cells(z: Complex64) -> [String; 2] {
    [fmt_f(z.re), fmt_f(z.im)]
}

fn run_expand(config: &RunConfig) -> Result<Artifacts> {
    let p = config.params()?;
    let e = &config.expand;
    let phi = config.function(&e.function)?;
    let expansion = match e.basis {
        ExpansionBasis::Plus => taylor_expand(&phi, e.n, &p)?,
        ExpansionBasis::Minus => moment_expand(&phi, e.n, &p, &config.quadrature)?,
    };
    let mut t = CsvTable::new(&["n", "re", "im"]);
    for (n, cn) in expansion.coeffs.iter().enumerate() {
        let [re, im] = complex_cells(*cn);
        t.row(&[n.to_string(), re, im]);
    }
    let mut a = Artifacts::default();
    a.table("expansion.csv", t.finish());
    Ok(a)
}

/// Decay table of moment-basis coefficients under the evolution.
///
/// Columns: `t, n, abs_c, ratio, expected`, where `abs_c = |c_n(t)|` is
/// recomputed from the evolved function and `expected = e^{-γ(n+1/2)t}`.
pub fn emit_decay_table(
    phi: &TestFunction,
    t_grid: &[f64],
    n: usize,
    p: &ModelParams,
    cfg: &QuadratureConfig,
) -> Result<String> {
    let mut t = CsvTable::new(&["t", "n", "abs_c", "ratio", "expected"]);
    for (_, rows) in decay_rows(phi, t_grid, n, p, cfg)? {
        for r in rows {
            t.row(&[
                fmt_f(r.t),
                r.n.to_string(),
                fmt_f(r.abs_c),
                fmt_f(r.ratio),
                fmt_f(r.expected),
            ]);
        }
    }
    Ok(t.finish())
}

struct DecayRow {
    t: f64,
    n: usize,
    abs_c: f64,
    ratio: f64,
    expected: f64,
}

fn decay_rows(
    phi: &TestFunction,
    t_grid: &[f64],
    n: usize,
    p: &ModelParams,
    cfg: &QuadratureConfig,
) -> Result<Vec<(f64, Vec<DecayRow>)>> {
    let c0 = moment_expand(phi, n, p, cfg)?;
    t_grid
        .iter()
        .map(|&t| {
            let ct = moment_expand(&evolve(phi, t, p)?, n, p, cfg)?;
            let rows = (0..=n)
                .map(|k| DecayRow {
                    t,
                    n: k,
                    abs_c: ct.coeffs[k].norm(),
                    ratio: ct.coeffs[k].norm() / c0.coeffs[k].norm(),
                    expected: (-p.gamma * (k as f64 + 0.5) * t).exp(),
                })
                .collect();
            Ok((t, rows))
        })
        .collect()
}

fn run_evolve(config: &RunConfig) -> Result<Artifacts> {
    let p = config.params()?;
    let cfg = &config.quadrature;
    let e = &config.evolve;
    let phi = config.function(&e.function)?;
    let mut a = Artifacts::default();

    let base = moment_expand(&phi, e.n, &p, cfg)?;
    let mut decay = CsvTable::new(&["t", "n", "abs_c", "ratio", "expected"]);
    for (t, rows) in decay_rows(&phi, &e.times, e.n, &p, cfg)? {
        let law = evolve_expansion(
            &base,
            &EvolutionConfig {
                t,
                enforce_semigroup: e.enforce_semigroup,
            },
        )?;
        for r in rows {
            decay.row(&[
                fmt_f(r.t),
                r.n.to_string(),
                fmt_f(r.abs_c),
                fmt_f(r.ratio),
                fmt_f(r.expected),
            ]);
            if r.ratio.is_finite() {
                a.checks.push(Check::real(
                    format!("evolve.decay_ratio.t{:+.3}.n{:02}", r.t, r.n),
                    "moment coefficients decay with the imaginary parts of the resonances",
                    r.expected,
                    TargetSource::ClosedForm,
                    r.ratio,
                    1e-10,
                    Comparison::Relative,
                ));
            }
            a.checks.push(
                Check::real(
                    format!("evolve.semigroup_law.t{:+.3}.n{:02}", r.t, r.n),
                    "semigroup on expansions matches the expansion of the evolved function",
                    r.abs_c,
                    TargetSource::IndependentRoute,
                    law.coeffs[r.n].norm(),
                    1e-10,
                    Comparison::Relative,
                )
                .with_floor(1e-12 * base.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)),
            );
        }
    }
    a.table("decay.csv", decay.finish());

    let n0 = phi.norm_squared(cfg)?;
    let mut conc = CsvTable::new(&["t", "concentration", "norm_squared"]);
    for &t in &e.times {
        let c = concentration_probability(&phi, t, e.epsilon, &p, cfg)?;
        let nt = evolve(&phi, t, &p)?.norm_squared(cfg)?;
        conc.row_f(&[t, c, nt]);
        a.checks.push(Check::real(
            format!("evolve.norm.t{t:+.3}"),
            "dilation evolution preserves the norm",
            n0,
            TargetSource::IndependentRoute,
            nt,
            1e-10,
            Comparison::Relative,
        ));
    }
    a.table("concentration.csv", conc.finish());
    Ok(a)
}

fn run_reconstruct(config: &RunConfig) -> Result<Artifacts> {
    let p = config.params()?;
    let cfg = &config.quadrature;
    let r = &config.reconstruct;
    let phi = config.function(&r.function)?;
    let rc = config.reconstruction_config();
    let direct = reconstruct_continuum(&phi, &rc, &p, cfg)?;
    let fourier = reconstruct_continuum_fourier(&phi, &rc, &p, cfg)?;
    let mut a = Artifacts::default();
    let mut t = CsvTable::new(&[
        "x",
        "method",
        "re",
        "im",
        "target_re",
        "target_im",
        "abs_err",
        "tail_estimate",
    ]);
    for (method, samples) in [("direct", &direct), ("fourier", &fourier)] {
        for s in samples {
            let v: Complex64 = s.value.into();
            let target = phi.eval(s.x);
            let [re, im] = complex_cells(v);
            let [tre, tim] = complex_cells(target);
            t.row(&[
                fmt_f(s.x),
                method.into(),
                re,
                im,
                tre,
                tim,
                fmt_f((v - target).norm()),
                fmt_f(s.tail_estimate),
            ]);
            a.checks.push(Check::new(
                format!("reconstruct.{method}.x{:+.4}", s.x),
                "continuum eigenfunction expansion reconstructs the function",
                target,
                TargetSource::IndependentRoute,
                v,
                r.tolerance,
                Comparison::Absolute,
            ));
        }
    }
    a.table("reconstruction.csv", t.finish());
    Ok(a)
}

fn run_residues(config: &RunConfig) -> Result<Artifacts> {
    let p = config.params()?;
    let cfg = &config.quadrature;
    let r = &config.residues;
    let phi = config.function(&r.function)?;
    let contour = ResidueContour {
        radius_over_gamma: r.radius_over_gamma,
        ..ResidueContour::default()
    };
    let mut a = Artifacts::default();
    let mut t = CsvTable::new(&[
        "family",
        "branch",
        "n",
        "contour_re",
        "contour_im",
        "closed_re",
        "closed_im",
        "abs_err",
    ]);
    for family in ["psi", "fpsi"] {
        for branch in [Side::Plus, Side::Minus] {
            let b = match branch {
                Side::Plus => "plus",
                Side::Minus => "minus",
            };
            for n in 0..=r.n_max {
                let (contour_value, closed) = if family == "psi" {
                    (
                        residue_psi_pairing(&phi, n, branch, &p, &contour, cfg)?,
                        residue_psi_closed_form(&phi, n, branch, &p)?,
                    )
                } else {
                    (
                        residue_f_psi_pairing(&phi, n, branch, &p, &contour, cfg)?,
                        residue_f_psi_closed_form(&phi, n, branch, &p, cfg)?,
                    )
                };
                let [cre, cim] = complex_cells(contour_value);
                let [kre, kim] = complex_cells(closed);
                t.row(&[
                    family.into(),
                    b.into(),
                    n.to_string(),
                    cre,
                    cim,
                    kre,
                    kim,
                    fmt_f((contour_value - closed).norm()),
                ]);
                a.checks.push(
                    Check::new(
                        format!("residues.{family}.{b}.n{n}"),
                        "contour residue at a complex eigenvalue matches the closed form",
                        closed,
                        TargetSource::ClosedForm,
                        contour_value,
                        1e-8,
                        Comparison::Relative,
                    )
                    .with_floor(1e-12),
                );
            }
        }
    }
    a.table("residues.csv", t.finish());
    Ok(a)
}

fn classification_name(c: Classification) -> &'static str {
    match c {
        Classification::UpperLikely => "upper_likely",
        Classification::LowerLikely => "lower_likely",
        Classification::Neither => "neither",
        Classification::Inconclusive => "inconclusive",
    }
}

fn hardy_table(entries: &[HardyEntry]) -> String {
    let mut t = CsvTable::new(&[
        "function",
        "family",
        "branch",
        "classification",
        "halfline_mass_ratio",
        "decay_fit_upper",
        "decay_fit_lower",
    ]);
    for e in entries {
        t.row(&[
            e.function.clone(),
            match e.family {
                PairingFamily::Psi => "psi".into(),
                PairingFamily::FPsi => "fpsi".into(),
            },
            match e.branch {
                Side::Plus => "plus".into(),
                Side::Minus => "minus".into(),
            },
            classification_name(e.report.classification).into(),
            fmt_f(e.report.halfline_mass_ratio),
            fmt_f(e.report.decay_fit_upper),
            fmt_f(e.report.decay_fit_lower),
        ]);
    }
    t.finish()
}

fn run_hardy(config: &RunConfig) -> Result<Artifacts> {
    let p = config.params()?;
    let cfg = &config.quadrature;
    let h = &config.hardy;
    let spacing = 2.0 * h.e_half_width / h.samples as f64;
    let grid = centered_grid(h.samples, spacing);
    let mut a = Artifacts::default();
    for name in &h.functions {
        let phi = config.function(name)?;
        for branch in [Side::Plus, Side::Minus] {
            let mut verdicts = Vec::new();
            for (family, half) in [
                (PairingFamily::Psi, HalfPlane::Lower),
                (PairingFamily::FPsi, HalfPlane::Upper),
            ] {
                let s = sample_energy_pairing(&phi, family, branch, &grid, &p, cfg)?;
                if s.iter().all(|z| z.norm() == 0.0) {
                    continue;
                }
                let report = hardy_diagnostic(&s, spacing, half)?;
                verdicts.push((family, report.classification));
                a.hardy.push(HardyEntry {
                    function: name.clone(),
                    family,
                    branch,
                    report,
                });
            }
            let both = verdicts.contains(&(PairingFamily::Psi, Classification::LowerLikely))
                && verdicts.contains(&(PairingFamily::FPsi, Classification::UpperLikely));
            let b = match branch {
                Side::Plus => "plus",
                Side::Minus => "minus",
            };
            a.checks.push(Check::real(
                format!("hardy.never_both.{name}.{b}"),
                "no function is in both Hardy-type classes",
                0.0,
                TargetSource::Exact,
                if both { 1.0 } else { 0.0 },
                0.0,
                Comparison::Absolute,
            ));
        }
    }
    a.table("hardy.csv", hardy_table(&a.hardy));
    Ok(a)
}

fn run_classical(config: &RunConfig) -> Result<Artifacts> {
    let p = config.params()?;
    let c = &config.classical;
    let mut a = Artifacts::default();
    let s0 = ClassicalState { x: c.x0, p: c.p0 };
    let mut flow = CsvTable::new(&["t", "x", "p"]);
    for k in 0..c.samples {
        let t = c.t * k as f64 / (c.samples - 1) as f64;
        let s = classical_flow(&s0, t, &p);
        flow.row_f(&[t, s.x, s.p]);
    }
    a.table("classical.csv", flow.finish());

    let r = hamiltonian_embedding_check(&LinearField::damping(&p), &[c.x0], &[c.p0], c.t, c.steps)?;
    let mut emb = CsvTable::new(&["t", "x_hamiltonian", "p_hamiltonian", "x_direct", "energy"]);
    let mut deviation: f64 = 0.0;
    for (j, t) in r.times.iter().enumerate() {
        emb.row_f(&[
            *t,
            r.x_hamiltonian[j][0],
            r.p_hamiltonian[j][0],
            r.x_direct[j][0],
            r.energy[j],
        ]);
        deviation = deviation.max((r.x_hamiltonian[j][0] - classical_flow(&s0, *t, &p).x).abs());
    }
    a.table("embedding.csv", emb.finish());
    a.checks.push(Check::real(
        "classical.embedding.trajectory",
        "the embedded Hamiltonian flow reproduces exponential damping",
        0.0,
        TargetSource::ClosedForm,
        deviation,
        1e-8,
        Comparison::Absolute,
    ));
    a.checks.push(Check::real(
        "classical.embedding.energy",
        "the embedding Hamiltonian is conserved",
        0.0,
        TargetSource::Exact,
        r.energy_drift,
        1e-8,
        Comparison::Absolute,
    ));
    Ok(a)
}
