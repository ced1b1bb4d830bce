//! Command-line front end: argument types, task runners and report rendering.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use hopfchi::families::build_unchecked;
use hopfchi::hochschild::{cocycles, cohomology};
use hopfchi::precartier::{expected_dims, solve_infinitesimal, Classifier, Expected};
use hopfchi::quantize::evaluate_quantization;
use hopfchi::quasitriangular::{
    candidate_count, conjugation_identities_h8, is_triangular, registered_r, rswap_identities_en, verify_qtr,
};
use hopfchi::{build, build_r, ClassificationReport, Error, FamilyKind, FamilySpec, FieldSpec, HopfData, RSpec};

/// Exit status for a run whose results disagree with expectations.
pub const EXIT_MISMATCH: i32 = 1;
/// Exit status for unusable input.
pub const EXIT_CONFIG: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "hopfchi",
    version,
    about = "Infinitesimal R-matrices, Cartier structures and cobar cohomology of small Hopf algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a family, check the Hopf axioms and list its basis.
    Build(Common),
    /// Check the Hopf axioms and, with --r, the R-matrix axioms and identity suites.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        r: Option<String>,
    },
    /// Solve for infinitesimal R-matrices and Cartier structures.
    Classify {
        #[command(flatten)]
        common: Common,
        /// An R-matrix spec, or `enumerate` for every registered one. Without it only the R-free bound is computed.
        #[arg(long)]
        r: Option<String>,
        /// Skip Z², B² and H².
        #[arg(long)]
        no_cohomology: bool,
        /// JSON file with a replacement expected-dimension table.
        #[arg(long)]
        expected: Option<PathBuf>,
    },
    /// Cobar cohomology in degrees 1 and 2.
    Cohomology(Common),
    /// Check R·exp(ħχ) for the given χ, or for every basis vector of the solution space.
    Quantize {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        r: String,
        #[arg(long)]
        chi: Option<String>,
    },
    /// List the R-matrices used by `--r enumerate`.
    EnumerateR(Common),
    /// Parse an element or tensor and print it in canonical form.
    Parse {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        expr: String,
    },
    /// Run every entry of a JSON run configuration, concurrently.
    Batch {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// e.g. `en:2`, `h8`, `ac2n:3`, `h2n2:3`, `radford:2,2`, `ac4dual`, `group:2,2`.
    #[arg(long)]
    pub family: String,
    /// `rational`, `cyclotomic:<m>` or `prime:<p>`; defaults to the smallest field the family (and R) needs.
    #[arg(long)]
    pub field: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Table,
}

/// Failure to produce a result at all.
#[derive(Debug)]
pub struct CliError {
    pub status: i32,
    pub message: String,
}

impl CliError {
    fn config(message: impl Into<String>) -> Self {
        CliError {
            status: EXIT_CONFIG,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse(_)
            | Error::InvalidField(_)
            | Error::OrderUnavailable { .. }
            | Error::FamilyMismatch(_)
            | Error::WrongFamily { .. }
            | Error::UnsupportedFamily(_)
            | Error::UnsupportedDegree(_)
            | Error::CharacteristicConflict(_)
            | Error::Range(_) => EXIT_CONFIG,
            _ => EXIT_MISMATCH,
        };
        CliError {
            status,
            message: e.to_string(),
        }
    }
}

/// A finished command: the rendered output and whether everything matched.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub value: Value,
    pub ok: bool,
    pub table: Option<String>,
}

impl Outcome {
    pub fn status(&self) -> i32 {
        if self.ok {
            0
        } else {
            EXIT_MISMATCH
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.value).expect("serialisable") + "\n",
            Format::Table => self.table.clone().unwrap_or_else(|| flatten(&self.value)),
        }
    }
}

fn flatten(v: &Value) -> String {
    fn go(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    let p = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    go(&p, x, out);
                }
            }
            Value::Array(a) => {
                for (i, x) in a.iter().enumerate() {
                    go(&format!("{prefix}[{i}]"), x, out);
                }
                if a.is_empty() {
                    let _ = writeln!(out, "{prefix}: []");
                }
            }
            other => {
                let _ = writeln!(out, "{prefix}: {other}");
            }
        }
    }
    let mut out = String::new();
    go("", v, &mut out);
    out
}

fn wants_zeta8(kind: &FamilyKind, r: Option<&str>) -> bool {
    kind.is_h8_like() && r.is_some_and(|r| r.trim() == "enumerate" || r.trim().starts_with("h8omega"))
}

/// Resolves the field: explicit `--field`, else the family's default, widened to
/// contain ζ8 when H8's `R_ω` will be needed.
pub fn family_spec(family: &str, field: Option<&str>, r: Option<&str>) -> Result<FamilySpec, CliError> {
    let kind: FamilyKind = family.parse()?;
    let field = match field {
        Some(f) => f.parse::<FieldSpec>()?,
        None => {
            let mut orders = kind.root_orders();
            if wants_zeta8(&kind, r) {
                orders.push(8);
            }
            FieldSpec::for_orders(&orders)
        }
    };
    Ok(FamilySpec::new(kind, field))
}

fn load(family: &str, field: Option<&str>, r: Option<&str>) -> Result<HopfData, CliError> {
    Ok(build(&family_spec(family, field, r)?)?)
}

/// `None` for no R, every registered R for `enumerate`, else the parsed spec.
fn resolve_r(h: &HopfData, r: Option<&str>) -> Result<Option<Vec<RSpec>>, CliError> {
    match r.map(str::trim) {
        None => Ok(None),
        Some("enumerate") => Ok(Some(registered_r(h)?)),
        Some(s) => Ok(Some(vec![s.parse::<RSpec>()?])),
    }
}

fn header(h: &HopfData) -> (String, String) {
    (
        h.family().map_or("unnamed".into(), ToString::to_string),
        h.field().to_string(),
    )
}

pub fn task_build(h: &HopfData) -> Outcome {
    let rep = h.verify_hopf();
    let (family, field) = header(h);
    let value = json!({
        "family": family,
        "field": field,
        "dim": h.dim(),
        "generators": h.generator_names(),
        "basis": h.words(),
        "hopf": rep,
    });
    Outcome {
        value,
        ok: rep.passed(),
        table: None,
    }
}

pub fn task_verify(h: &HopfData, rs: &[RSpec]) -> Result<Outcome, CliError> {
    let hopf = h.verify_hopf();
    let mut ok = hopf.passed();
    let mut rows = Vec::new();
    for spec in rs {
        let r = build_r(h, spec)?;
        let mut rep = verify_qtr(h, &r);
        if let Some(FamilyKind::En(_)) = h.family() {
            rep.extend(rswap_identities_en(h, &r)?);
        }
        ok &= rep.passed();
        let triangular = rep.passed() && is_triangular(h, &r);
        rows.push(json!({ "r": spec.to_string(), "passed": rep.passed(), "triangular": triangular, "checks": rep }));
    }
    let mut value = json!({ "family": header(h).0, "field": header(h).1, "hopf": hopf, "r": rows });
    if h.family().is_some_and(FamilyKind::is_h8_like) && h.field().has_root(8) {
        let ids = conjugation_identities_h8(h)?;
        // `conj_z` carries the -2e_xy sign, which does not hold; `conj_z_plus`
        // is the form that is required.
        let required_ok = ids.checks.iter().filter(|c| c.name != "conj_z").all(|c| c.passed());
        ok &= required_ok;
        value["h8_identities"] = json!(ids);
    }
    Ok(Outcome { value, ok, table: None })
}

fn classify_table(reports: &[ClassificationReport]) -> String {
    let mut out = String::new();
    let cell = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
    let _ = writeln!(
        out,
        "{:<10} {:<34} {:>10} {:>7} {:>5} {:>4} {:>4} {:>4}  match",
        "family", "r", "precartier", "cartier", "rfree", "z2", "b2", "h2"
    );
    for r in reports {
        let _ = writeln!(
            out,
            "{:<10} {:<34} {:>10} {:>7} {:>5} {:>4} {:>4} {:>4}  {}{}",
            r.family,
            r.r.clone().unwrap_or_else(|| "-".into()),
            cell(r.dims.precartier),
            cell(r.dims.cartier),
            r.dims.rfree,
            cell(r.dims.z2),
            cell(r.dims.b2),
            cell(r.dims.h2),
            if r.flags.matches_paper_theorem { "yes" } else { "NO" },
            if r.flags.paper_partial { " (partial)" } else { "" },
        );
        for m in &r.mismatches {
            let _ = writeln!(out, "    {m}");
        }
    }
    out
}

pub fn task_classify(
    h: &HopfData,
    rs: Option<Vec<RSpec>>,
    with_cohomology: bool,
    expected: Option<&[Expected]>,
    single: bool,
) -> Result<Outcome, CliError> {
    let mut c = Classifier::new(h);
    if !with_cohomology {
        c = c.without_cohomology();
    }
    let mut reports = match &rs {
        None => vec![c.classify(None)?],
        Some(list) => list
            .iter()
            .map(|s| c.classify(Some(s)))
            .collect::<Result<Vec<_>, _>>()?,
    };
    if let Some(table) = expected {
        for r in &mut reports {
            r.apply_expected(table.to_vec());
        }
    }
    let ok = reports.iter().all(|r| r.flags.matches_paper_theorem);
    let table = Some(classify_table(&reports));
    let value = if single && reports.len() == 1 {
        json!(reports[0])
    } else {
        json!(reports)
    };
    Ok(Outcome { value, ok, table })
}

pub fn task_cohomology(h: &HopfData) -> Result<Outcome, CliError> {
    let z1 = cocycles(h, 1)?;
    let prim = h.primitives();
    let c2 = cohomology(h, 2)?;
    let (family, field) = header(h);
    let mut value = json!({
        "family": family,
        "field": field,
        "z1": z1.dim(),
        "b1": 0,
        "h1": z1.dim(),
        "primitives": prim.dim(),
        "z2": c2.z.dim(),
        "b2": c2.b.dim(),
        "h2": c2.h_dim(),
    });
    let mut mismatches = Vec::new();
    if z1 != prim {
        mismatches.push("Z¹ differs from the primitive elements".to_string());
    }
    if let Some(kind) = h.family() {
        for e in expected_dims(kind, None) {
            if let Some(v) = value.get(&e.quantity).and_then(Value::as_u64) {
                if v as usize != e.value {
                    mismatches.push(format!(
                        "{}: expected {}, computed {v} ({})",
                        e.quantity, e.value, e.statement
                    ));
                }
            }
        }
    }
    let ok = mismatches.is_empty();
    value["mismatches"] = json!(mismatches);
    Ok(Outcome { value, ok, table: None })
}

pub fn task_quantize(h: &HopfData, rs: &[RSpec], chi: Option<&str>) -> Result<Outcome, CliError> {
    let mut ok = true;
    let mut rows = Vec::new();
    for spec in rs {
        let r = build_r(h, spec)?;
        let chis = match chi {
            Some(text) => vec![h.parse::<2>(text)?],
            None => solve_infinitesimal(h, &r)?
                .basis()
                .iter()
                .map(|v| h.tensor_from_vec::<2>(v.clone()))
                .collect::<Result<Vec<_>, _>>()?,
        };
        for c in chis {
            let rep = evaluate_quantization(h, &r, &c)?;
            ok &= rep.passed();
            rows.push(json!({
                "r": spec.to_string(),
                "chi": h.format(&c),
                "nilpotency": rep.nilpotency,
                "hypotheses_hold": rep.hypotheses_hold(),
                "passed": rep.passed(),
                "hypotheses": rep.hypotheses,
                "checks": rep.checks,
            }));
        }
    }
    let (family, field) = header(h);
    Ok(Outcome {
        value: json!({ "family": family, "field": field, "results": rows }),
        ok,
        table: None,
    })
}

pub fn task_enumerate(h: &HopfData) -> Result<Outcome, CliError> {
    let specs = registered_r(h)?;
    let mut rows = Vec::new();
    let mut ok = true;
    for s in &specs {
        let r = build_r(h, s)?;
        let passed = verify_qtr(h, &r).passed();
        ok &= passed;
        rows.push(
            json!({ "r": s.to_string(), "quasitriangular": passed, "triangular": passed && is_triangular(h, &r) }),
        );
    }
    let (family, field) = header(h);
    let mut value = json!({ "family": family, "field": field, "count": specs.len(), "r": rows });
    if let Some(FamilyKind::H2n2(n)) = h.family() {
        value["candidates"] = json!(candidate_count(*n));
    }
    Ok(Outcome { value, ok, table: None })
}

pub fn task_parse(h: &HopfData, expr: &str) -> Result<Outcome, CliError> {
    let p = h.parse_any(expr)?;
    let text = if p.arity == 0 {
        p.coeffs.coeff(0).to_string()
    } else {
        h.format_raw(&p.coeffs, p.arity)
    };
    Ok(Outcome {
        value: json!({ "arity": p.arity, "value": text }),
        ok: true,
        table: Some(text + "\n"),
    })
}

/// One entry of a batch configuration.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub family: String,
    #[serde(default)]
    pub field: Option<String>,
    #[serde(default)]
    pub r: Option<String>,
    pub tasks: Vec<Task>,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    Verify,
    Classify,
    Cohomology,
    Quantize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BatchConfig {
    pub runs: Vec<RunConfig>,
}

/// Runs the tasks of one configuration in order.
pub fn run_config(cfg: &RunConfig) -> Result<Outcome, CliError> {
    if cfg.tasks.is_empty() {
        return Err(CliError::config(format!("{}: no tasks", cfg.family)));
    }
    let h = load(&cfg.family, cfg.field.as_deref(), cfg.r.as_deref())?;
    let rs = resolve_r(&h, cfg.r.as_deref())?;
    let mut value = serde_json::Map::new();
    let mut ok = true;
    let mut tables = String::new();
    for t in &cfg.tasks {
        let (name, out) = match t {
            Task::Verify => ("verify", task_verify(&h, rs.as_deref().unwrap_or(&[]))?),
            Task::Classify => ("classify", task_classify(&h, rs.clone(), true, None, false)?),
            Task::Cohomology => ("cohomology", task_cohomology(&h)?),
            Task::Quantize => {
                let list = rs
                    .as_deref()
                    .ok_or_else(|| CliError::config("quantize needs an R-matrix"))?;
                ("quantize", task_quantize(&h, list, None)?)
            }
        };
        ok &= out.ok;
        let _ = writeln!(tables, "== {name}\n{}", out.render(Format::Table));
        value.insert(name.into(), out.value);
    }
    let value = json!({ "family": cfg.family, "r": cfg.r, "ok": ok, "results": Value::Object(value) });
    Ok(Outcome {
        value,
        ok,
        table: Some(tables),
    })
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).map_err(|e| CliError::config(format!("{}: {e}", dir.display())))?;
            }
            std::fs::write(p, text).map_err(|e| CliError::config(format!("{}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::config(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::config(format!("{}: {e}", path.display())))
}

/// Executes a command, writes its output, and returns the exit status.
pub fn run(cli: Cli) -> Result<i32, CliError> {
    let (outcome, common) = match cli.command {
        Command::Build(c) => {
            let h = build_unchecked(&family_spec(&c.family, c.field.as_deref(), None)?)?;
            (task_build(&h), c)
        }
        Command::Verify { common: c, r } => {
            let spec = family_spec(&c.family, c.field.as_deref(), r.as_deref())?;
            let h = build_unchecked(&spec)?;
            let rs = resolve_r(&h, r.as_deref())?.unwrap_or_default();
            (task_verify(&h, &rs)?, c)
        }
        Command::Classify {
            common: c,
            r,
            no_cohomology,
            expected,
        } => {
            let table: Option<Vec<Expected>> = expected.as_deref().map(read_json).transpose()?;
            let h = load(&c.family, c.field.as_deref(), r.as_deref())?;
            let single = r.as_deref().map(str::trim) != Some("enumerate");
            let rs = resolve_r(&h, r.as_deref())?;
            (task_classify(&h, rs, !no_cohomology, table.as_deref(), single)?, c)
        }
        Command::Cohomology(c) => {
            let h = load(&c.family, c.field.as_deref(), None)?;
            (task_cohomology(&h)?, c)
        }
        Command::Quantize { common: c, r, chi } => {
            let h = load(&c.family, c.field.as_deref(), Some(&r))?;
            let rs = resolve_r(&h, Some(&r))?.unwrap_or_default();
            (task_quantize(&h, &rs, chi.as_deref())?, c)
        }
        Command::EnumerateR(c) => {
            let h = load(&c.family, c.field.as_deref(), Some("enumerate"))?;
            (task_enumerate(&h)?, c)
        }
        Command::Parse { common: c, expr } => {
            let h = load(&c.family, c.field.as_deref(), None)?;
            (task_parse(&h, &expr)?, c)
        }
        Command::Batch { config } => return run_batch(&config),
    };
    write_output(common.out.as_deref(), &outcome.render(common.format))?;
    Ok(outcome.status())
}

/// Runs every configuration concurrently; each writes its own output file
/// (or stdout, in configuration order). The status is the worst of all runs.
pub fn run_batch(path: &Path) -> Result<i32, CliError> {
    let cfg: BatchConfig = read_json(path)?;
    if cfg.runs.is_empty() {
        return Err(CliError::config("batch configuration has no runs"));
    }
    let results: Vec<Result<Outcome, CliError>> = cfg.runs.par_iter().map(run_config).collect();
    let mut status = 0;
    for (run, res) in cfg.runs.iter().zip(results) {
        match res {
            Ok(out) => {
                write_output(run.output.as_deref(), &out.render(run.format))?;
                status = status.max(out.status());
                eprintln!("{}: {}", run.family, if out.ok { "ok" } else { "MISMATCH" });
            }
            Err(e) => {
                eprintln!("{}: error: {}", run.family, e.message);
                status = status.max(e.status);
            }
        }
    }
    Ok(status)
}
