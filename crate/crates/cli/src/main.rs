//! Command-line surface over the resonance and torsion library.
//!
//! One subcommand per result family; every command reads flow data either
//! from a JSON file (`--spec`) or a named built-in example (`--example`),
//! and reports either an aligned table or line-delimited JSON records
//! (`--format machine`). Exit codes: 0 on success or a passing check, 1
//! when a verified identity fails its tolerance, 2 on input errors.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C64;
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

use ruelle::complexes::{
    complex_cohomology, model_complex, torsion_closed_form, torsion_determinant, BasedComplex,
    CMat,
};
use ruelle::flow::{
    builtin_example, builtin_names, builtin_summary, load_spec, parse_spec, save_spec,
    validate_spec, FlowSpec,
};
use ruelle::rational::parse_rational;
use ruelle::report::{render_table_with_columns, Record};
use ruelle::specfun::PrecisionPolicy;
use ruelle::spectrum::{koszul_homology, koszul_homology_seeded, morse_report, resonances};
use ruelle::trace::{fuller_identity_check, TestFunction};
use ruelle::zeta::{
    big_z_rs, regularized_torsion, regularized_torsion_via_zero_values, torsion_function,
    torsion_function_spectral, z_rs_closed_form, zeta_flat, zeta_rs, zeta_v, zeta_v_residue,
    MonodromyConvention, ZetaFlatMethod,
};
use ruelle::Error;

#[derive(Parser)]
#[command(
    name = "ruelle",
    version,
    about = "Resonances, torsions, and zeta functions of Morse-Smale flow data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format for report rows.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Direct terms in Euler-Maclaurin sums (overrides RT_PRECISION_TERMS).
    #[arg(long, global = true, value_name = "N")]
    em_terms: Option<usize>,
    /// Euler-Maclaurin correction order (1..=14).
    #[arg(long, global = true, value_name = "N")]
    em_order: Option<usize>,
    /// Relative tail tolerance for series truncation.
    #[arg(long, global = true, value_name = "TOL")]
    series_tol: Option<f64>,
    /// Tolerance for identity comparisons.
    #[arg(long, global = true, value_name = "TOL")]
    compare_tol: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a flow data file against every validation rule.
    Validate {
        #[command(flatten)]
        source: Source,
    },
    /// Enumerate resonance lines in a frequency window.
    Spectrum {
        #[command(flatten)]
        source: Source,
        /// Frequency window half-width, a rational like 3/2.
        #[arg(long, value_name = "RAT")]
        window: String,
        /// Emit flat rows for this cochain degree only.
        #[arg(long, value_name = "K")]
        degree: Option<usize>,
    },
    /// Evaluate the Morse inequalities against the Betti numbers.
    Morse {
        #[command(flatten)]
        source: Source,
    },
    /// Koszul homology dimensions per degree.
    Koszul {
        #[command(flatten)]
        source: Source,
        /// Use the seeded deformation of the contraction map.
        #[arg(long, value_name = "SEED")]
        seed: Option<u64>,
    },
    /// Torsion of the model complex at a frequency, determinant vs closed form.
    Torsion {
        #[command(flatten)]
        source: Source,
        /// Frequency nu, a rational like 1/12.
        #[arg(long, value_name = "RAT")]
        nu: String,
        /// First seed for the triangular base change.
        #[arg(long, default_value_t = 0, value_name = "SEED")]
        seed: u64,
        /// Number of consecutive seeds to run.
        #[arg(long, default_value_t = 1, value_name = "N")]
        trials: u64,
        /// Emit the based complex itself (labels and matrices) instead.
        #[arg(long)]
        dump_complex: bool,
    },
    /// Dynamical zeta function: value, residue, regularized torsion.
    Zeta {
        #[command(flatten)]
        source: Source,
        /// Evaluate zeta_V at this point, a complex literal like 2+0.5i.
        #[arg(long, value_name = "S")]
        s: Option<String>,
    },
    /// Spectral zeta family at a point z of the right half plane.
    Zfun {
        #[command(flatten)]
        source: Source,
        /// Spectral parameter z, a complex literal like 1+0i.
        #[arg(long, value_name = "Z")]
        at: String,
        /// Exponent s for the zeta evaluations that need one.
        #[arg(long, value_name = "S")]
        s: Option<String>,
        /// Which quantities to evaluate.
        #[arg(long, value_enum, default_value_t = What::All)]
        what: What,
        /// Route selection where two evaluations exist.
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        /// Monodromy convention for the orbit products.
        #[arg(long, value_enum, default_value_t = Convention::Inverse)]
        convention: Convention,
    },
    /// Verify the trace identity against a Gaussian test function.
    Fuller {
        #[command(flatten)]
        source: Source,
        /// Center of the Gaussian bump.
        #[arg(long, value_name = "T0")]
        t0: f64,
        /// Width of the Gaussian bump.
        #[arg(long, value_name = "SIGMA")]
        sigma: f64,
        /// Spectral frequency cutoff, a rational.
        #[arg(long, value_name = "RAT")]
        cutoff: String,
        /// Geometric horizon: traversals are summed up to this time.
        #[arg(long, value_name = "T")]
        horizon: f64,
        /// Monodromy convention for the orbit holonomy traces.
        #[arg(long, value_enum, default_value_t = Convention::Inverse)]
        convention: Convention,
    },
    /// List built-in examples, or print one as a flow data document.
    Examples {
        /// Print this example's JSON document instead of the list.
        #[arg(long, value_name = "NAME")]
        name: Option<String>,
    },
}

#[derive(Args)]
struct Source {
    /// Flow data JSON file.
    #[arg(long, value_name = "FILE", conflicts_with = "example")]
    spec: Option<PathBuf>,
    /// Built-in example name (see `examples`).
    #[arg(long, value_name = "NAME")]
    example: Option<String>,
}

impl Source {
    fn load(&self) -> Result<FlowSpec, Error> {
        match (&self.spec, &self.example) {
            (Some(path), None) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    Error::parse(format!("cannot read {}: {e}", path.display()))
                })?;
                load_spec(&text)
            }
            (None, Some(name)) => builtin_example(name),
            _ => Err(Error::parse("exactly one of --spec or --example is required")),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Machine,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Convention {
    Inverse,
    Direct,
}

impl From<Convention> for MonodromyConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::Inverse => MonodromyConvention::Inverse,
            Convention::Direct => MonodromyConvention::Direct,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Spectral,
    Geometric,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum What {
    /// Regularized spectral determinant.
    Zrs,
    /// Closed-form orbit product for the determinant.
    Closed,
    /// Spectral zeta value at (s, z).
    Zeta,
    /// Flat-trace zeta at (s, z).
    Flat,
    /// Torsion function at z.
    Torsion,
    /// Everything applicable to the given flags.
    All,
}

/// Finished command output: rows plus the verdict of any checks run.
struct Report {
    columns: Vec<String>,
    records: Vec<Record>,
    ok: bool,
}

impl Report {
    fn new(columns: &[&str]) -> Self {
        Report::with_columns(columns.iter().map(|c| c.to_string()).collect())
    }

    fn with_columns(columns: Vec<String>) -> Self {
        Report {
            columns,
            records: Vec::new(),
            ok: true,
        }
    }

    fn push(&mut self, record: Record) {
        self.records.push(record);
    }
}

enum Output {
    Report(Report),
    /// Verbatim text, identical in both formats (document emission).
    Text(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let policy = match build_policy(&cli) {
        Ok(p) => p,
        Err(e) => return input_error(e),
    };
    match run(&cli.command, &policy) {
        Ok(Output::Text(text)) => {
            write_stdout(&text);
            ExitCode::from(0)
        }
        Ok(Output::Report(report)) => {
            emit(&report, cli.format);
            ExitCode::from(if report.ok { 0 } else { 1 })
        }
        Err(e) => match e {
            // A numerical failure is a failed check on otherwise good
            // input; everything else is an input problem.
            Error::Numerical(_) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
            _ => input_error(e),
        },
    }
}

fn input_error(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(2)
}

fn build_policy(cli: &Cli) -> Result<PrecisionPolicy, Error> {
    let mut policy = PrecisionPolicy::default();
    if let Ok(text) = std::env::var("RT_PRECISION_TERMS") {
        policy.em_terms = text.parse().map_err(|_| {
            Error::parse(format!("RT_PRECISION_TERMS must be an integer, got {text:?}"))
        })?;
    }
    if let Some(n) = cli.em_terms {
        policy.em_terms = n;
    }
    if let Some(n) = cli.em_order {
        policy.em_order = n;
    }
    if let Some(t) = cli.series_tol {
        policy.series_tol = t;
    }
    if let Some(t) = cli.compare_tol {
        policy.compare_tol = t;
    }
    Ok(policy)
}

/// Write to stdout in one shot, quietly tolerating a closed pipe (the
/// reader downstream decided it had seen enough).
fn write_stdout(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().write_all(text.as_bytes());
}

fn emit(report: &Report, format: Format) {
    match format {
        Format::Table => {
            write_stdout(&render_table_with_columns(&report.columns, &report.records));
        }
        Format::Machine => {
            let mut text = String::new();
            for record in &report.records {
                text.push_str(&record.machine_line());
                text.push('\n');
            }
            write_stdout(&text);
        }
    }
}

fn run(command: &Command, policy: &PrecisionPolicy) -> Result<Output, Error> {
    match command {
        Command::Validate { source } => validate_command(source),
        Command::Spectrum {
            source,
            window,
            degree,
        } => spectrum_command(source, window, *degree),
        Command::Morse { source } => morse_command(source),
        Command::Koszul { source, seed } => koszul_command(source, *seed),
        Command::Torsion {
            source,
            nu,
            seed,
            trials,
            dump_complex,
        } => torsion_command(source, nu, *seed, *trials, *dump_complex, policy),
        Command::Zeta { source, s } => zeta_command(source, s.as_deref(), policy),
        Command::Zfun {
            source,
            at,
            s,
            what,
            method,
            convention,
        } => zfun_command(source, at, s.as_deref(), *what, *method, (*convention).into(), policy),
        Command::Fuller {
            source,
            t0,
            sigma,
            cutoff,
            horizon,
            convention,
        } => fuller_command(source, *t0, *sigma, cutoff, *horizon, (*convention).into(), policy),
        Command::Examples { name } => examples_command(name.as_deref()),
    }
}

fn validate_command(source: &Source) -> Result<Output, Error> {
    // Parse without the validation short-circuit so every rule can be
    // reported; builtins skip the parse step.
    let spec = match (&source.spec, &source.example) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::parse(format!("cannot read {}: {e}", path.display())))?;
            parse_spec(&text)?
        }
        (None, Some(name)) => builtin_example(name)?,
        _ => return Err(Error::parse("exactly one of --spec or --example is required")),
    };
    let outcome = validate_spec(&spec);
    let mut report = Report::new(&["rule", "ok", "detail"]);
    for check in &outcome.checks {
        report.push(
            Record::new()
                .push("rule", check.rule)
                .push("ok", check.ok)
                .push("detail", check.detail.as_str()),
        );
    }
    report.ok = outcome.is_valid();
    Ok(Output::Report(report))
}

fn spectrum_command(source: &Source, window: &str, degree: Option<usize>) -> Result<Output, Error> {
    let spec = source.load()?;
    let window = parse_rational(window)?;
    let lines = resonances(&spec, &window)?;
    let n = spec.manifold_dim;

    if let Some(k) = degree {
        if k > n {
            return Err(Error::domain(format!(
                "degree {k} exceeds the manifold dimension {n}"
            )));
        }
        let mut report = Report::new(&["nu", "nu_num", "nu_den", "degree", "dim", "kernel_dim", "contributors"]);
        for line in &lines {
            let contributors = line.contributors[k]
                .iter()
                .map(|c| c.label())
                .collect::<Vec<_>>()
                .join(" ");
            report.push(
                Record::new()
                    .push("nu", line.frequency.clone())
                    .push("nu_num", line.frequency.numer().to_string())
                    .push("nu_den", line.frequency.denom().to_string())
                    .push("degree", k)
                    .push("dim", line.per_degree_dim[k])
                    .push("kernel_dim", line.per_degree_kernel_dim[k])
                    .push("contributors", contributors),
            );
        }
        return Ok(Output::Report(report));
    }

    // One row per resonance line; per-degree data inline.
    let mut columns: Vec<String> = vec!["nu".to_string()];
    for k in 0..=n {
        columns.push(format!("dim{k}"));
    }
    for k in 0..=n {
        columns.push(format!("ker{k}"));
    }
    columns.push("states".to_string());
    let mut records = Vec::new();
    for line in &lines {
        let mut record = Record::new().push("nu", line.frequency.clone());
        for k in 0..=n {
            record = record.push(&format!("dim{k}"), line.per_degree_dim[k]);
        }
        for k in 0..=n {
            record = record.push(&format!("ker{k}"), line.per_degree_kernel_dim[k]);
        }
        records.push(record.push("states", line.total_dim()));
    }
    let mut report = Report::with_columns(columns);
    report.records = records;
    Ok(Output::Report(report))
}

fn morse_command(source: &Source) -> Result<Output, Error> {
    let spec = source.load()?;
    let outcome = morse_report(&spec)?;
    let mut report = Report::new(&["degree", "lhs", "rhs", "relation", "holds"]);
    let top = spec.manifold_dim;
    for row in &outcome.rows {
        report.push(
            Record::new()
                .push("degree", row.degree)
                .push("lhs", row.lhs)
                .push("rhs", row.rhs)
                .push("relation", if row.degree == top { "eq" } else { "ge" })
                .push("holds", row.holds),
        );
    }
    report.ok = outcome.pass;
    Ok(Output::Report(report))
}

fn koszul_command(source: &Source, seed: Option<u64>) -> Result<Output, Error> {
    let spec = source.load()?;
    let homology = match seed {
        Some(s) => koszul_homology_seeded(&spec, s)?,
        None => koszul_homology(&spec)?,
    };
    let mut report = Report::new(&["degree", "homology", "expected", "ok"]);
    for (k, &h) in homology.iter().enumerate() {
        let expected = spec.bundle.rank * spec.fixed_count(k);
        let ok = h == expected;
        report.ok &= ok;
        report.push(
            Record::new()
                .push("degree", k)
                .push("homology", h)
                .push("expected", expected)
                .push("ok", ok),
        );
    }
    Ok(Output::Report(report))
}

fn torsion_command(
    source: &Source,
    nu: &str,
    seed: u64,
    trials: u64,
    dump_complex: bool,
    policy: &PrecisionPolicy,
) -> Result<Output, Error> {
    let spec = source.load()?;
    let nu = parse_rational(nu)?;
    if trials == 0 {
        return Err(Error::domain("trials must be at least 1"));
    }

    if dump_complex {
        let cx = model_complex(&spec, &nu, seed)?;
        return Ok(Output::Report(dump_complex_report(&cx)));
    }

    let closed = torsion_closed_form(&spec, &nu)?;
    let mut report = Report::new(&["seed", "torsion", "closed_form", "deviation", "ok"]);
    for s in seed..seed + trials {
        let cx = model_complex(&spec, &nu, s)?;
        let det = torsion_determinant(&cx)?;
        let deviation = (det.value - closed.value).abs();
        let ok = deviation <= policy.compare_tol;
        report.ok &= ok;
        report.push(
            Record::new()
                .push("seed", s as i64)
                .push("torsion", det.value)
                .push("closed_form", closed.value)
                .push("deviation", deviation)
                .push("ok", ok),
        );
    }
    Ok(Output::Report(report))
}

fn matrix_json(m: &CMat) -> serde_json::Value {
    let rows: Vec<serde_json::Value> = (0..m.nrows())
        .map(|r| {
            let row: Vec<serde_json::Value> =
                (0..m.ncols()).map(|c| json!([m[(r, c)].re, m[(r, c)].im])).collect();
            json!(row)
        })
        .collect();
    json!(rows)
}

fn dump_complex_report(cx: &BasedComplex) -> Report {
    let mut report = Report::new(&["degree", "dim", "labels", "differential", "contraction"]);
    let cohomology = complex_cohomology(cx);
    for (k, labels) in cx.labels.iter().enumerate() {
        let label_list: Vec<String> = labels.iter().map(|l| l.text()).collect();
        let differential = cx
            .differentials
            .get(k)
            .map(matrix_json)
            .unwrap_or_else(|| json!([]));
        let contraction = match &cx.contraction {
            Some(r) if k >= 1 => r
                .get(k - 1)
                .map(matrix_json)
                .unwrap_or_else(|| json!([])),
            _ => json!([]),
        };
        report.push(
            Record::new()
                .push("degree", k)
                .push("dim", labels.len())
                .push("labels", json!(label_list))
                .push("differential", differential)
                .push("contraction", contraction),
        );
    }
    report.ok = cohomology.dims.iter().all(|&d| d == 0) || cx.off_line;
    report
}

fn zeta_command(source: &Source, s: Option<&str>, policy: &PrecisionPolicy) -> Result<Output, Error> {
    let spec = source.load()?;
    let mut report = Report::new(&["quantity", "value", "deviation", "ok"]);

    if let Some(text) = s {
        let s = parse_complex(text)?;
        let value = zeta_v(&spec, s, policy)?;
        report.push(
            Record::new()
                .push("quantity", "zeta_v")
                .push("value", value),
        );
    }

    report.push(
        Record::new()
            .push("quantity", "residue_at_1")
            .push("value", zeta_v_residue(&spec)),
    );

    let closed = regularized_torsion(&spec);
    let via = regularized_torsion_via_zero_values(&spec, policy)?;
    let deviation = (closed.log_value - via.log_value).abs();
    let ok = deviation <= policy.compare_tol;
    report.ok &= ok;
    report.push(
        Record::new()
            .push("quantity", "regularized_torsion")
            .push("value", closed.value),
    );
    report.push(
        Record::new()
            .push("quantity", "regularized_torsion_parity")
            .push("value", closed.parity_value),
    );
    report.push(
        Record::new()
            .push("quantity", "zero_value_cross_check")
            .push("value", via.value)
            .push("deviation", deviation)
            .push("ok", ok),
    );
    Ok(Output::Report(report))
}

fn zfun_command(
    source: &Source,
    at: &str,
    s: Option<&str>,
    what: What,
    method: Method,
    convention: MonodromyConvention,
    policy: &PrecisionPolicy,
) -> Result<Output, Error> {
    let spec = source.load()?;
    let z = parse_complex(at)?;
    let s = s.map(parse_complex).transpose()?;
    let mut report = Report::new(&["quantity", "value", "deviation", "ok"]);

    let need = |flag: What| what == flag || what == What::All;
    let require_s = |name: &str| {
        s.ok_or_else(|| Error::domain(format!("--what {name} needs an exponent: pass --s")))
    };

    let mut spectral_det = None;
    if need(What::Zrs) {
        let v = big_z_rs(&spec, z, policy)?;
        spectral_det = Some(v);
        report.push(Record::new().push("quantity", "z_rs_spectral").push("value", v));
    }
    if need(What::Closed) {
        let v = z_rs_closed_form(&spec, z, convention)?;
        report.push(Record::new().push("quantity", "z_rs_closed").push("value", v));
        if let Some(sv) = spectral_det {
            let deviation = (sv - v).norm();
            let ok = deviation <= policy.compare_tol;
            report.ok &= ok;
            report.push(
                Record::new()
                    .push("quantity", "z_rs_agreement")
                    .push("deviation", deviation)
                    .push("ok", ok),
            );
        }
    }
    if what == What::Zeta || (what == What::All && s.is_some()) {
        let s = require_s("zeta")?;
        let v = zeta_rs(&spec, s, z, policy)?;
        report.push(Record::new().push("quantity", "zeta_rs").push("value", v));
    }
    if need(What::Flat) {
        // In --what all mode the flat zeta needs s; skip quietly if absent.
        if what == What::Flat || s.is_some() {
            let s = require_s("flat")?;
            let mut spectral = None;
            if method != Method::Geometric {
                let v = zeta_flat(&spec, s, z, ZetaFlatMethod::Spectral, convention, policy)?;
                spectral = Some(v);
                report.push(Record::new().push("quantity", "zeta_flat_spectral").push("value", v));
            }
            if method != Method::Spectral {
                let v = zeta_flat(&spec, s, z, ZetaFlatMethod::Geometric, convention, policy)?;
                report.push(Record::new().push("quantity", "zeta_flat_geometric").push("value", v));
                if let Some(sv) = spectral {
                    let deviation = (sv - v).norm();
                    let ok = deviation <= policy.compare_tol;
                    report.ok &= ok;
                    report.push(
                        Record::new()
                            .push("quantity", "zeta_flat_agreement")
                            .push("deviation", deviation)
                            .push("ok", ok),
                    );
                }
            }
        }
    }
    if need(What::Torsion) {
        let product = torsion_function(&spec, z, convention)?;
        report.push(
            Record::new()
                .push("quantity", "torsion_function")
                .push("value", product)
                .push("modulus", product.norm()),
        );
        if method == Method::Both || method == Method::Spectral {
            let v = torsion_function_spectral(&spec, z, policy)?;
            report.push(
                Record::new()
                    .push("quantity", "torsion_function_spectral")
                    .push("value", v),
            );
            if method == Method::Both {
                let deviation = (v - product).norm();
                let ok = deviation <= policy.compare_tol;
                report.ok &= ok;
                report.push(
                    Record::new()
                        .push("quantity", "torsion_function_agreement")
                        .push("deviation", deviation)
                        .push("ok", ok),
                );
            }
        }
    }
    Ok(Output::Report(report))
}

fn fuller_command(
    source: &Source,
    t0: f64,
    sigma: f64,
    cutoff: &str,
    horizon: f64,
    convention: MonodromyConvention,
    policy: &PrecisionPolicy,
) -> Result<Output, Error> {
    let spec = source.load()?;
    let phi = TestFunction::new(t0, sigma)?;
    let cutoff = parse_rational(cutoff)?;
    let outcome = fuller_identity_check(&spec, &phi, &cutoff, horizon, convention, policy)?;
    let mut report = Report::new(&["side", "value", "bound", "difference", "allowed", "pass"]);
    report.push(
        Record::new()
            .push("side", "chi")
            .push("value", C64::new(spec.chi() as f64, 0.0)),
    );
    report.push(
        Record::new()
            .push("side", "geometric")
            .push("value", outcome.geometric.value)
            .push("bound", outcome.geometric.truncation_bound),
    );
    report.push(
        Record::new()
            .push("side", "spectral")
            .push("value", outcome.spectral.value)
            .push("bound", outcome.spectral.truncation_bound),
    );
    report.push(
        Record::new()
            .push("side", "comparison")
            .push("difference", outcome.difference)
            .push("allowed", outcome.allowed)
            .push("pass", outcome.pass),
    );
    report.ok = outcome.pass;
    Ok(Output::Report(report))
}

fn examples_command(name: Option<&str>) -> Result<Output, Error> {
    match name {
        Some(name) => {
            let spec = builtin_example(name)?;
            Ok(Output::Text(save_spec(&spec)))
        }
        None => {
            let mut report = Report::new(&["name", "summary"]);
            for name in builtin_names() {
                report.push(
                    Record::new()
                        .push("name", *name)
                        .push("summary", builtin_summary(name).unwrap_or_default()),
                );
            }
            Ok(Output::Report(report))
        }
    }
}

/// Parse a complex literal: `x`, `yi`, or `x+yi` / `x-yi` with decimal
/// parts (exponents allowed).
fn parse_complex(text: &str) -> Result<C64, Error> {
    let bad = || Error::parse(format!("bad complex literal {text:?} (want x+yi)"));
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(bad());
    }
    let parse_part = |part: &str, unit: bool| -> Result<f64, Error> {
        match part {
            "" | "+" if unit => Ok(1.0),
            "-" if unit => Ok(-1.0),
            _ => part.parse::<f64>().map_err(|_| bad()),
        }
    };
    match t.strip_suffix('i') {
        None => Ok(C64::new(parse_part(&t, false)?, 0.0)),
        Some(body) => {
            // Split at the last +/- that is not a leading sign and not
            // part of an exponent.
            let bytes = body.as_bytes();
            let mut split = None;
            for i in (1..bytes.len()).rev() {
                let b = bytes[i];
                if (b == b'+' || b == b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
                    split = Some(i);
                    break;
                }
            }
            match split {
                Some(i) => {
                    let re = parse_part(&body[..i], false)?;
                    let im = parse_part(&body[i..], true)?;
                    Ok(C64::new(re, im))
                }
                None => Ok(C64::new(0.0, parse_part(body, true)?)),
            }
        }
    }
}
