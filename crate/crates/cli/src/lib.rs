//! Command-line front end. [`run`] parses arguments, executes one command and
//! returns the exit code together with the text to print.

pub mod corpus;
mod table;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};
use twistor_core::algebra::{format_scalar, Orientation, Scalar};
use twistor_core::homotopy::minimal_model;
use twistor_core::intersect::{intersection_matrix, intersection_report, self_intersection};
use twistor_core::manifold::{
    builtin, parse_manifold, parse_manifold_lenient, validate_file,
    validate_orientation_compatible, Check, FourManifoldData, ManifoldFile, SixManifold,
    ValidationReport,
};
use twistor_core::twistor::{
    ahs_as_acs, ahs_chern_numbers, ahs_total_chern, closed_form_gate, twistor_relation4_lift,
    twistor_relation6, twistor_relation6_unchecked, TwistorRing,
};
use twistor_core::{Error, ErrorCode};

use corpus::{run_corpus, Mutation, Tag};
use table::Table;

pub const EXIT_OK: i32 = 0;
pub const EXIT_COMPUTATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "twistor",
    version,
    about = "Cohomology, Chern numbers and intersection numbers of twistor spaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Load a manifold and run every consistency check.
    Validate {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
        /// Also require (σ, χ) to admit an orientation-compatible almost
        /// complex structure (4-manifolds).
        #[arg(long)]
        require_acs: bool,
    },
    /// Print the presentation of the twistor cohomology ring.
    TwistorRing {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
        /// Almost complex structure (6-manifolds); defaults to `std`, else the first.
        #[arg(long)]
        acs: Option<String>,
        /// Spin-c lift (4-manifolds); defaults to the first.
        #[arg(long)]
        spinc: Option<String>,
        #[arg(long, default_value = "+", value_parser = parse_sign, allow_hyphen_values = true)]
        sign: Orientation,
    },
    /// Chern classes and numbers of the canonical structure on Z±(M).
    ChernAhs {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
        /// Only this orientation; both by default.
        #[arg(long, value_parser = parse_sign, allow_hyphen_values = true)]
        sign: Option<Orientation>,
        /// Reverse the orientation of M first (drops ring data).
        #[arg(long)]
        reverse: bool,
        /// Connected sum with this many copies of CP2 (drops ring data).
        #[arg(long)]
        blowups: Option<u32>,
    },
    /// Self-intersection numbers of sections.
    SelfIntersect {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
        /// Structures to report; all by default.
        #[arg(long)]
        acs: Vec<String>,
        /// For a 4-manifold: use the twistor space Z±(M).
        #[arg(long, default_value = "+", value_parser = parse_sign, allow_hyphen_values = true)]
        sign: Orientation,
    },
    /// Pairwise intersection numbers, checked against the ring oracle.
    Intersect {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
        /// Two structures give one number; otherwise the matrix is printed.
        #[arg(long)]
        acs: Vec<String>,
        #[arg(long, default_value = "+", value_parser = parse_sign, allow_hyphen_values = true)]
        sign: Orientation,
    },
    /// Minimal model and fundamental group of the component of J.
    Model {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
        #[arg(long)]
        acs: Vec<String>,
        #[arg(long, default_value = "+", value_parser = parse_sign, allow_hyphen_values = true)]
        sign: Orientation,
    },
    /// Run the regression corpus.
    Reproduce {
        #[arg(long)]
        json: bool,
        /// Only print failing rows.
        #[arg(long)]
        failures_only: bool,
    },
}

#[derive(Debug, Clone, Args)]
pub struct Source {
    /// Builtin manifold name.
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    pub builtin: Option<String>,
    /// Manifold description file.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Genus parameter for gS3xS3 and gS2xS4.
    #[arg(long)]
    pub g: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub k_min: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub k_max: Option<i64>,
    /// Parameter of K3xS2.
    #[arg(long)]
    pub m: Option<i64>,
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    /// Emit a JSON document instead of text.
    #[arg(long)]
    pub json: bool,
    /// Treat failed validators as fatal (default).
    #[arg(long, overrides_with = "no_strict")]
    pub strict: bool,
    /// Report failed validators but continue.
    #[arg(long, overrides_with = "strict")]
    pub no_strict: bool,
}

impl Output {
    fn strict(&self) -> bool {
        !self.no_strict
    }
}

fn parse_sign(s: &str) -> Result<Orientation, String> {
    s.parse::<Orientation>().map_err(|e| e.message)
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: String,
    message: String,
    exit: i32,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: e.code.to_string(),
            exit: if e.code.is_input_error() {
                EXIT_INPUT
            } else {
                EXIT_COMPUTATION
            },
            message: match e.location {
                Some(loc) => format!("{}:{}: {}", loc.line, loc.column, e.message),
                None => e.message,
            },
        }
    }
}

/// The successful part of a command: text, JSON result and metadata.
struct Report {
    text: String,
    manifold: Value,
    acs: Vec<String>,
    result: Value,
    checks: Vec<Value>,
    provenance: Vec<Value>,
    exit: i32,
}

impl Report {
    fn new(text: String, manifold: &str, result: Value) -> Self {
        Report {
            text,
            manifold: Value::String(manifold.to_string()),
            acs: Vec::new(),
            result,
            checks: Vec::new(),
            provenance: Vec::new(),
            exit: EXIT_OK,
        }
    }

    fn provenance(mut self, quantity: &str, formula: &str, tag: Tag) -> Self {
        self.provenance.push(json!({
            "quantity": quantity,
            "formula": formula,
            "tag": tag.as_str(),
        }));
        self
    }
}

fn check_json(c: &Check) -> Value {
    json!({
        "id": c.id,
        "passed": c.passed,
        "code": if c.passed { Value::Null } else { json!(c.code.as_str()) },
        "detail": c.detail,
        "proxy": c.proxy,
    })
}

fn int_json(v: &BigInt) -> Value {
    match i64::try_from(v) {
        Ok(n) => json!(n),
        Err(_) => json!(v.to_string()),
    }
}

fn scalar_json(s: &Scalar) -> Value {
    if s.is_integer() {
        int_json(&s.to_integer())
    } else {
        json!(format_scalar(s))
    }
}

fn builtin_params(name: &str, s: &Source) -> Result<Vec<i64>, Failure> {
    let k_range = |lo: i64, hi: i64| match (s.k_min, s.k_max) {
        (None, None) => Vec::new(),
        (a, b) => vec![a.unwrap_or(lo), b.unwrap_or(hi)],
    };
    Ok(match name {
        "gS3xS3" => vec![s.g.ok_or_else(|| Failure::from(missing("--g")))?],
        "gS2xS4" => {
            let mut p = vec![s.g.ok_or_else(|| Failure::from(missing("--g")))?];
            p.extend(k_range(-2, 2));
            p
        }
        "CP3" => k_range(-5, 5),
        "K3xS2" => s.m.map(|m| vec![m]).unwrap_or_default(),
        _ => Vec::new(),
    })
}

fn missing(flag: &str) -> Error {
    Error::new(
        ErrorCode::InvalidParams,
        format!("this builtin needs {flag}"),
    )
}

/// Loads the manifold named by `source`. Under `strict`, any failed check is
/// an error; otherwise failed checks are returned for reporting.
fn load(source: &Source, strict: bool) -> Result<(ManifoldFile, ValidationReport), Failure> {
    if let Some(name) = &source.builtin {
        let file = builtin(name, &builtin_params(name, source)?)?;
        let report = validate_file(&file)?;
        if strict {
            report.clone().into_result()?;
        }
        return Ok((file, report));
    }
    let path = source.file.as_ref().expect("clap requires a source");
    let text = std::fs::read_to_string(path).map_err(|e| Failure {
        code: "io".into(),
        message: format!("{}: {e}", path.display()),
        exit: EXIT_INPUT,
    })?;
    if strict {
        let file = parse_manifold(&text)?;
        let report = validate_file(&file)?;
        Ok((file, report))
    } else {
        Ok(parse_manifold_lenient(&text)?)
    }
}

/// A 6-manifold to work on: the manifold itself, or the twistor space of a
/// 4-manifold.
fn six_of(file: &ManifoldFile, sign: Orientation) -> Result<SixManifold, Failure> {
    match file {
        ManifoldFile::Six(m) => Ok(m.clone()),
        ManifoldFile::Four(m) => Ok(ahs_as_acs(m, sign)?),
    }
}

fn selected<'a>(m: &'a SixManifold, requested: &'a [String]) -> Vec<&'a str> {
    if requested.is_empty() {
        m.acs_names()
    } else {
        requested.iter().map(String::as_str).collect()
    }
}

fn validate_cmd(source: &Source, require_acs: bool) -> Result<Report, Failure> {
    let (file, mut report) = load(source, false)?;
    if require_acs {
        let four = file.four()?;
        report.extend(validate_orientation_compatible(four));
    }
    let mut t = Table::new(["check", "status", "detail"]);
    for c in &report.checks {
        let status = match (c.passed, c.proxy) {
            (true, false) => "pass".to_string(),
            (true, true) => "pass (proxy)".to_string(),
            (false, _) => format!("FAIL {}", c.code),
        };
        t.row([c.id.clone(), status, c.detail.clone()]);
    }
    let passed = report.passed();
    let mut text = t.render();
    text.push_str(if passed { "valid\n" } else { "invalid\n" });
    let mut out = Report::new(text, file.name(), json!({ "passed": passed })).provenance(
        "checks",
        "χ, p1 = c1² - 2c2, χ + σ ≡ 0 mod 4",
        Tag::Published,
    );
    out.checks = report.checks.iter().map(check_json).collect();
    if !passed {
        out.exit = EXIT_INPUT;
    }
    Ok(out)
}

fn ring_report(ring: &TwistorRing, name: &str) -> Report {
    let coefficients: serde_json::Map<String, Value> = ring
        .relation()
        .iter()
        .enumerate()
        .rev()
        .map(|(i, r)| (format!("t^{i}"), json!(r.to_string())))
        .collect();
    let mut text = format!("H*(Z{}({name})) = H*({name})[t] / ({ring})\n", ring.sign());
    text.push_str(&format!(
        "module basis: 1 .. t^{}\n",
        ring.module_rank() - 1
    ));
    text.push_str(&format!("from: {}\n", ring.source));
    Report::new(
        text,
        name,
        json!({
            "relation": ring.to_string(),
            "sign": ring.sign().symbol(),
            "module_rank": ring.module_rank(),
            "coefficients": coefficients,
            "source": ring.source,
        }),
    )
}

fn twistor_ring_cmd(
    source: &Source,
    output: &Output,
    acs: Option<&str>,
    spinc: Option<&str>,
    sign: Orientation,
) -> Result<Report, Failure> {
    let (file, validation) = load(source, output.strict())?;
    let mut report = match &file {
        ManifoldFile::Six(m) => {
            let names = m.acs_names();
            let fallback = names
                .iter()
                .find(|n| **n == "std")
                .or(names.first())
                .copied();
            let name = acs.or(fallback).ok_or_else(|| {
                Error::new(
                    ErrorCode::UnknownAcs,
                    format!("`{}` declares no structure", m.name),
                )
            })?;
            let j = m.acs(name)?;
            let ring = if output.strict() {
                twistor_relation6(j, sign)?
            } else {
                twistor_relation6_unchecked(j, sign)?
            };
            let mut r = ring_report(&ring, &m.name).provenance(
                "relation",
                "t^4 + 2c1 t^3 + (c1² + c2) t^2 + (c1c2 ∓ c3) t",
                Tag::Published,
            );
            r.acs.push(name.to_string());
            r
        }
        ManifoldFile::Four(m) => {
            m.require_ring()?;
            let lift = spinc
                .or_else(|| m.lifts.first().map(|l| l.name.as_str()))
                .ok_or_else(|| {
                    Error::new(
                        ErrorCode::UnknownSpinLift,
                        format!("`{}` declares no spin-c lift", m.name),
                    )
                })?;
            let ring = twistor_relation4_lift(m, lift, sign)?;
            ring_report(&ring, &m.name).provenance(
                "relation",
                "t^2 + α t - (p1 ± 2e - α²)/4",
                Tag::Published,
            )
        }
    };
    report.checks = validation.checks.iter().map(check_json).collect();
    Ok(report)
}

fn chern_ahs_cmd(
    source: &Source,
    output: &Output,
    sign: Option<Orientation>,
    reverse: bool,
    blowups: Option<u32>,
) -> Result<Report, Failure> {
    let (file, validation) = load(source, output.strict())?;
    let mut m: FourManifoldData = file.four()?.clone();
    if reverse {
        m = m.reverse();
    }
    if let Some(k) = blowups {
        let cp2 = FourManifoldData::numeric("CP2", 1, 3);
        m = m.connected_sum_copies(&cp2, k);
    }
    let signs = match sign {
        Some(s) => vec![s],
        None => vec![Orientation::Positive, Orientation::Negative],
    };
    if !m.is_ring_mode() {
        closed_form_gate()?;
    }
    let mut t = Table::new([
        "space", "c1", "c2", "c3", "∫c1³", "∫c1c2", "∫c3", "self-int",
    ]);
    let mut rows = Vec::new();
    for s in signs {
        let (classes, numbers) = if m.is_ring_mode() {
            let p = ahs_total_chern(&m, s)?;
            (
                Some([p.c1.to_string(), p.c2.to_string(), p.c3.to_string()]),
                p.numbers,
            )
        } else {
            (None, ahs_chern_numbers(&m, s))
        };
        let self_int = &numbers.c1c2 - &numbers.c3;
        let c1_cubed = numbers.c1_cubed.clone().unwrap_or_default();
        let [c1, c2, c3] = classes
            .clone()
            .unwrap_or_else(|| ["-".into(), "-".into(), "-".into()]);
        t.row([
            format!("Z{s}({})", m.name),
            c1,
            c2,
            c3,
            format_scalar(&c1_cubed),
            format_scalar(&numbers.c1c2),
            format_scalar(&numbers.c3),
            format_scalar(&self_int),
        ]);
        let mut row = json!({
            "sign": s.symbol(),
            "c1_cubed": scalar_json(&c1_cubed),
            "c1c2": scalar_json(&numbers.c1c2),
            "c3": scalar_json(&numbers.c3),
            "self_intersection": scalar_json(&self_int),
        });
        if let Some([c1, c2, c3]) = classes {
            row["classes"] = json!({ "c1": c1, "c2": c2, "c3": c3 });
        }
        rows.push(row);
    }
    let mut report = Report::new(
        t.render(),
        &m.name,
        json!({ "signature": m.signature, "euler": m.euler, "spaces": rows }),
    )
    .provenance("c1c2", "12(χ ± σ)", Tag::Published)
    .provenance("c3", "2χ", Tag::Published)
    .provenance(
        "c1_cubed",
        "32χ ± 48σ, checked against the ring engine",
        Tag::Derived,
    )
    .provenance("self_intersection", "∫(c1c2 - c3)", Tag::Published);
    report.checks = validation.checks.iter().map(check_json).collect();
    Ok(report)
}

fn self_intersect_cmd(
    source: &Source,
    output: &Output,
    acs: &[String],
    sign: Orientation,
) -> Result<Report, Failure> {
    let (file, validation) = load(source, output.strict())?;
    let m = six_of(&file, sign)?;
    let names = selected(&m, acs);
    let mut values = Vec::new();
    for name in &names {
        values.push(self_intersection(&m, name)?);
    }
    let text = if values.len() == 1 {
        format!("{}\n", values[0])
    } else {
        let mut t = Table::new(["acs", "self-intersection"]);
        for (n, v) in names.iter().zip(&values) {
            t.row([n.to_string(), v.to_string()]);
        }
        t.render()
    };
    let result: Vec<Value> = names
        .iter()
        .zip(&values)
        .map(|(n, v)| json!({ "acs": n, "value": int_json(v) }))
        .collect();
    let mut report = Report::new(text, &m.name, Value::Array(result)).provenance(
        "self_intersection",
        "∫(c1c2 - c3)",
        Tag::Published,
    );
    report.acs = names.iter().map(|s| s.to_string()).collect();
    report.checks = validation.checks.iter().map(check_json).collect();
    Ok(report)
}

fn intersect_cmd(
    source: &Source,
    output: &Output,
    acs: &[String],
    sign: Orientation,
) -> Result<Report, Failure> {
    let (file, validation) = load(source, output.strict())?;
    let m = six_of(&file, sign)?;
    let names = selected(&m, acs);
    let mut report = if names.len() == 2 {
        let r = intersection_report(&m, names[0], names[1])?;
        let value = r
            .value()
            .ok_or_else(|| Error::new(ErrorCode::NonIntegralResult, r.to_string()))?;
        Report::new(
            format!("{value}\n"),
            &m.name,
            json!({
                "value": int_json(&value),
                "closed_form": scalar_json(&r.closed_form),
                "oracle": scalar_json(&r.oracle),
                "agree": r.agree,
                "integral": r.integral,
            }),
        )
    } else {
        let matrix = intersection_matrix(&m, &names)?;
        let mut header = vec![String::new()];
        header.extend(names.iter().map(|s| s.to_string()));
        let mut t = Table::new(header);
        for (n, row) in names.iter().zip(&matrix) {
            let mut cells = vec![n.to_string()];
            cells.extend(row.iter().map(ToString::to_string));
            t.row(cells);
        }
        let rows: Vec<Value> = matrix
            .iter()
            .map(|r| Value::Array(r.iter().map(int_json).collect()))
            .collect();
        Report::new(t.render(), &m.name, json!({ "matrix": rows }))
    };
    report = report
        .provenance(
            "intersection",
            "∫[(c1³ + c1²c1' - c1c1'² - c1'³)/8 + (c1c2' + c1'c2')/2 - c3]",
            Tag::Published,
        )
        .provenance("oracle", "PD(J)·PD(J') in the Z+ ring of J", Tag::Derived);
    report.acs = names.iter().map(|s| s.to_string()).collect();
    report.checks = validation.checks.iter().map(check_json).collect();
    Ok(report)
}

fn model_cmd(
    source: &Source,
    output: &Output,
    acs: &[String],
    sign: Orientation,
) -> Result<Report, Failure> {
    let (file, validation) = load(source, output.strict())?;
    let m = six_of(&file, sign)?;
    let names = selected(&m, acs);
    let mut models = Vec::new();
    for name in &names {
        models.push(minimal_model(&m, name)?);
    }
    let text = if models.len() == 1 {
        format!("{}\n", models[0])
    } else {
        let mut t = Table::new(["acs", "model"]);
        for r in &models {
            t.row([r.acs.clone(), r.to_string()]);
        }
        t.render()
    };
    let result: Vec<Value> = models
        .iter()
        .map(|r| {
            json!({
                "acs": r.acs,
                "generators": r.generators.iter()
                    .map(|(d, n)| json!({ "degree": d, "multiplicity": n }))
                    .collect::<Vec<_>>(),
                "differential": "zero",
                "formal": r.formal,
                "pi1_order": int_json(&r.pi1.order),
                "pi1_infinite": r.pi1.infinite,
                "text": r.to_string(),
            })
        })
        .collect();
    let mut report = Report::new(text, &m.name, Value::Array(result))
        .provenance("model", "Λ(z7, z5^b2, z4^b3, z3^b2), d = 0", Tag::Published)
        .provenance("pi1_order", "|∫(c1c2 - c3)|", Tag::Published);
    report.acs = names.iter().map(|s| s.to_string()).collect();
    report.checks = validation.checks.iter().map(check_json).collect();
    Ok(report)
}

/// Renders the corpus outcome; exit code 3 on any mismatch.
pub fn reproduce(mutation: &Mutation, json_out: bool, failures_only: bool) -> Outcome {
    let rows = run_corpus(mutation);
    let failed = rows.iter().filter(|r| !r.passed).count();
    let code = if failed == 0 { EXIT_OK } else { EXIT_MISMATCH };
    let stdout = if json_out {
        let doc = json!({
            "command": "reproduce",
            "manifold": Value::Null,
            "acs": [],
            "result": { "rows": rows.len(), "passed": rows.len() - failed, "failed": failed },
            "checks": rows.iter().filter(|r| !failures_only || !r.passed).map(|r| json!({
                "id": format!("{}: {}", r.criterion, r.id),
                "passed": r.passed,
                "code": if r.passed { Value::Null } else { json!("reproduction-mismatch") },
                "expected": r.expected,
                "actual": r.actual,
            })).collect::<Vec<_>>(),
            "provenance": rows.iter().filter(|r| !failures_only || !r.passed).map(|r| json!({
                "id": format!("{}: {}", r.criterion, r.id),
                "tag": r.tag.as_str(),
            })).collect::<Vec<_>>(),
        });
        pretty(&doc)
    } else {
        let mut t = Table::new(["#", "case", "expected", "actual", "source", "status"]);
        for r in rows.iter().filter(|r| !failures_only || !r.passed) {
            t.row([
                r.criterion.to_string(),
                r.id.clone(),
                r.expected.clone(),
                r.actual.clone(),
                r.tag.as_str().to_string(),
                if r.passed { "PASS" } else { "FAIL" }.to_string(),
            ]);
        }
        let mut s = t.render();
        s.push_str(&format!(
            "{} rows: {} passed, {} failed\n",
            rows.len(),
            rows.len() - failed,
            failed
        ));
        s
    };
    Outcome {
        code,
        stdout,
        stderr: String::new(),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::TwistorRing { .. } => "twistor-ring",
        Command::ChernAhs { .. } => "chern-ahs",
        Command::SelfIntersect { .. } => "self-intersect",
        Command::Intersect { .. } => "intersect",
        Command::Model { .. } => "model",
        Command::Reproduce { .. } => "reproduce",
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome {
                        code: EXIT_OK,
                        stdout: text,
                        stderr: String::new(),
                    }
                }
                _ => Outcome {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let name = command_name(&cli.command);
    let (result, json_out) = match &cli.command {
        Command::Reproduce {
            json,
            failures_only,
        } => {
            return reproduce(&Mutation::default(), *json, *failures_only);
        }
        Command::Validate {
            source,
            output,
            require_acs,
        } => (validate_cmd(source, *require_acs), output.json),
        Command::TwistorRing {
            source,
            output,
            acs,
            spinc,
            sign,
        } => (
            twistor_ring_cmd(source, output, acs.as_deref(), spinc.as_deref(), *sign),
            output.json,
        ),
        Command::ChernAhs {
            source,
            output,
            sign,
            reverse,
            blowups,
        } => (
            chern_ahs_cmd(source, output, *sign, *reverse, *blowups),
            output.json,
        ),
        Command::SelfIntersect {
            source,
            output,
            acs,
            sign,
        } => (self_intersect_cmd(source, output, acs, *sign), output.json),
        Command::Intersect {
            source,
            output,
            acs,
            sign,
        } => (intersect_cmd(source, output, acs, *sign), output.json),
        Command::Model {
            source,
            output,
            acs,
            sign,
        } => (model_cmd(source, output, acs, *sign), output.json),
    };
    match result {
        Ok(r) => {
            let stdout = if json_out {
                pretty(&json!({
                    "command": name,
                    "manifold": r.manifold,
                    "acs": r.acs,
                    "result": r.result,
                    "checks": r.checks,
                    "provenance": r.provenance,
                }))
            } else {
                r.text
            };
            Outcome {
                code: r.exit,
                stdout,
                stderr: String::new(),
            }
        }
        Err(f) => {
            if json_out {
                let doc = json!({
                    "command": name,
                    "manifold": Value::Null,
                    "acs": [],
                    "result": Value::Null,
                    "checks": [{
                        "id": "error",
                        "passed": false,
                        "code": f.code,
                        "detail": f.message,
                        "proxy": false,
                    }],
                    "provenance": [],
                });
                Outcome {
                    code: f.exit,
                    stdout: pretty(&doc),
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code: f.exit,
                    stdout: String::new(),
                    stderr: format!("error[{}]: {}\n", f.code, f.message),
                }
            }
        }
    }
}
