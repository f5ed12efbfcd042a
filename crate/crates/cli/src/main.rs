//! `liespec`: spectra, representation counts, exponents and numerical checks
//! from the command line.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on a usage
//! error. Every artifact starts with a provenance record (a `#` line for
//! CSV, a `provenance` key for JSON) and contains no timestamps, so equal
//! invocations give byte-identical output.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use liespec::exponents::{self, Exponent};
use liespec::fourier_verify::{self, Suite, SuiteConfig};
use liespec::root_systems::RootSystemRecord;
use liespec::spectrum::{self, EnumerationConfig};
use liespec::sum_of_squares::{self, Backend, Variant};
use liespec::{build_root_system, Error, FamilyLabel, GroupFamily};
use num_bigint::BigUint;
use serde_json::{json, Value};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "liespec", version, about = "Laplace spectra of compact simple Lie groups and related counts")]
struct Cli {
    /// Worker threads for parallel kernels. Output does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Constants b and R0 per family (seven default rows).
    Table1(Table1Args),
    /// Eigenvalue numerators R <= R_max with weights and multiplicities.
    Spectrum(SpectrumArgs),
    /// Check N_R <= r_m(R + R0) for every R <= R_max.
    Count(CountArgs),
    /// Representation counts r_s(R) of sums of s squares.
    Rsk(RskArgs),
    /// Strichartz exponents over a (p, q) grid.
    Exponents(ExponentsArgs),
    /// Time-side numerical verification suites (JSON report).
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    /// Family label A, B, C, D, E8, F4 or G2 (also accepts e.g. A2).
    #[arg(long)]
    family: String,
    /// Rank; required for A to D.
    #[arg(long)]
    rank: Option<usize>,
}

#[derive(Args, Debug)]
struct Table1Args {
    /// Restrict to one family.
    #[arg(long)]
    family: Option<String>,
    #[arg(long, requires = "family")]
    rank: Option<usize>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct SpectrumArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Largest eigenvalue numerator R.
    #[arg(long)]
    rmax: u64,
    /// Search-node budget before giving up.
    #[arg(long, default_value_t = 200_000_000)]
    node_budget: u64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct CountArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    rmax: u64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct RskArgs {
    /// Number of squares.
    #[arg(long)]
    s: usize,
    #[arg(long)]
    rmax: u64,
    /// all (tuples in Z^s) or positive.
    #[arg(long, default_value = "all")]
    variant: String,
    /// brute, theta or divisor.
    #[arg(long, default_value = "theta")]
    backend: String,
    /// Run every applicable backend and compare.
    #[arg(long)]
    cross_check: bool,
    /// Report the growth envelope over [--rlo, --rmax] instead of the table.
    #[arg(long)]
    growth: bool,
    /// Lower end of the growth range.
    #[arg(long, requires = "growth")]
    rlo: Option<u64>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct ExponentsArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Comma-separated rationals, e.g. 2,5/2,4.
    #[arg(long)]
    p_grid: Option<String>,
    /// Comma-separated rationals or inf.
    #[arg(long)]
    q_grid: Option<String>,
    /// Keep only pairs with q <= p.
    #[arg(long)]
    classical: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// orthogonality, parseval, wainger, minkowski or all.
    #[arg(long)]
    suite: String,
    #[arg(long, default_value_t = fourier_verify::DEFAULT_SEED)]
    seed: u64,
    /// Random samples (suite default when omitted).
    #[arg(long)]
    samples: Option<usize>,
    /// Pass threshold (suite default when omitted).
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Failure modes mapped onto exit codes.
enum Failure {
    Usage(String),
    Verification(String),
}

impl Failure {
    fn flag(flag: &str, err: impl std::fmt::Display) -> Self {
        Failure::Usage(format!("{flag}: {err}"))
    }
}

fn library(err: Error) -> Failure {
    match err {
        Error::InternalInconsistency(_) => Failure::Verification(err.to_string()),
        other => Failure::Usage(other.to_string()),
    }
}

type CliResult<T> = Result<T, Failure>;

/// Artifact text plus whether every embedded check passed.
struct Artifact {
    text: String,
    pass: bool,
}

fn parse_family(label: &str, rank: Option<usize>) -> CliResult<GroupFamily> {
    let trimmed = label.trim();
    let parsed = trimmed.parse::<FamilyLabel>();
    let (label, rank) = match parsed {
        Ok(l) => (l, rank),
        Err(Error::UnsupportedFamily(_)) => return Err(Failure::flag("--family", parsed.unwrap_err())),
        Err(err) => {
            // shorthand such as A2 or D5
            let (head, tail) = trimmed.split_at(trimmed.len().min(1));
            match (head.parse::<FamilyLabel>(), tail.parse::<usize>()) {
                (Ok(l), Ok(r)) if l.fixed_rank().is_none() => {
                    if rank.is_some_and(|x| x != r) {
                        return Err(Failure::flag("--rank", format!("conflicts with --family {trimmed}")));
                    }
                    (l, Some(r))
                }
                _ => return Err(Failure::flag("--family", err)),
            }
        }
    };
    GroupFamily::with_optional_rank(label, rank).map_err(|e| match e {
        Error::InvalidRank { .. } | Error::InvalidArgument(_) => Failure::flag("--rank", e),
        other => Failure::flag("--family", other),
    })
}

fn provenance(command: &str, config: &[(&str, String)]) -> Value {
    let config: serde_json::Map<String, Value> = config
        .iter()
        .map(|(k, v)| (k.to_string(), Value::String(v.clone())))
        .collect();
    json!({ "tool": "liespec", "version": VERSION, "command": command, "config": config })
}

fn csv_header(command: &str, config: &[(&str, String)]) -> String {
    let mut line = format!("# liespec {VERSION} {command}");
    for (k, v) in config {
        let _ = write!(line, " {k}={v}");
    }
    line.push('\n');
    line
}

fn with_provenance(mut body: Value, command: &str, config: &[(&str, String)]) -> String {
    if let Value::Object(map) = &mut body {
        map.insert("provenance".into(), provenance(command, config));
    }
    let mut text = serde_json::to_string_pretty(&body).expect("JSON values always serialise");
    text.push('\n');
    text
}

fn table1(args: &Table1Args) -> CliResult<Artifact> {
    let families = match &args.family {
        Some(f) => vec![parse_family(f, args.rank)?],
        None => vec![
            GroupFamily::a(2).expect("valid"),
            GroupFamily::b(2).expect("valid"),
            GroupFamily::c(3).expect("valid"),
            GroupFamily::d(4).expect("valid"),
            GroupFamily::e8(),
            GroupFamily::f4(),
            GroupFamily::g2(),
        ],
    };
    let systems = families
        .iter()
        .map(|&f| build_root_system(f).map_err(library))
        .collect::<CliResult<Vec<_>>>()?;
    let config = vec![
        (
            "families",
            families.iter().map(ToString::to_string).collect::<Vec<_>>().join(";"),
        ),
        ("format", args.out.format.name().to_string()),
    ];
    let text = match args.out.format {
        Format::Csv => {
            let mut out = csv_header("table1", &config);
            out.push_str("family,rank,group,b,R0\n");
            for rs in &systems {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    rs.family.label(),
                    rs.rank(),
                    rs.family.group_name(),
                    rs.b_table,
                    rs.r0
                );
            }
            out
        }
        Format::Json => {
            let rows: Vec<RootSystemRecord> = systems.iter().map(RootSystemRecord::from).collect();
            with_provenance(json!({ "rows": rows }), "table1", &config)
        }
    };
    Ok(Artifact { text, pass: true })
}

fn spectrum_cmd(args: &SpectrumArgs) -> CliResult<Artifact> {
    let family = parse_family(&args.family.family, args.family.rank)?;
    let rs = build_root_system(family).map_err(library)?;
    let cfg = EnumerationConfig {
        node_budget: args.node_budget,
        ..Default::default()
    };
    let table = spectrum::enumerate_spectrum(&rs, args.rmax, &cfg).map_err(library)?;
    let config = vec![
        ("family", family.to_string()),
        ("rmax", args.rmax.to_string()),
        ("node_budget", args.node_budget.to_string()),
        ("format", args.out.format.name().to_string()),
    ];
    let text = match args.out.format {
        Format::Csv => csv_header("spectrum", &config) + &table.to_csv(),
        Format::Json => with_provenance(table.to_json_value(), "spectrum", &config),
    };
    Ok(Artifact { text, pass: true })
}

fn count_cmd(args: &CountArgs) -> CliResult<Artifact> {
    let family = parse_family(&args.family.family, args.family.rank)?;
    let rs = build_root_system(family).map_err(library)?;
    let m = rs.matrix_a.len();
    let r0 = rs.r0 as u64;
    let table = spectrum::enumerate_spectrum(
        &rs,
        args.rmax,
        &EnumerationConfig {
            with_dimensions: false,
            ..Default::default()
        },
    )
    .map_err(library)?;
    let counts = sum_of_squares::count_theta(m, args.rmax + r0, Variant::AllIntegers).map_err(library)?;
    let rows: Vec<(u64, usize, &BigUint)> = table
        .records
        .iter()
        .map(|rec| (rec.r, rec.n_r, &counts.counts[(rec.r + r0) as usize]))
        .collect();
    let violations: Vec<u64> = rows
        .iter()
        .filter(|(_, n, bound)| BigUint::from(*n) > **bound)
        .map(|(r, _, _)| *r)
        .collect();
    let pass = violations.is_empty();
    let config = vec![
        ("family", family.to_string()),
        ("rmax", args.rmax.to_string()),
        ("m", m.to_string()),
        ("R0", r0.to_string()),
        ("format", args.out.format.name().to_string()),
    ];
    let text = match args.out.format {
        Format::Csv => {
            let mut out = csv_header("count", &config);
            out.push_str("R,N_R,r_m(R+R0),ok\n");
            for (r, n, bound) in &rows {
                let ok = BigUint::from(*n) <= **bound;
                let _ = writeln!(out, "{r},{n},{bound},{ok}");
            }
            out
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|(r, n, bound)| {
                    json!({ "R": r, "N_R": n, "bound": Value::Number(bound.to_string().parse().expect("integer")) })
                })
                .collect();
            with_provenance(
                json!({ "family": family.to_string(), "rows": rows, "pass": pass, "violations": violations }),
                "count",
                &config,
            )
        }
    };
    if !pass {
        eprintln!("count: N_R exceeds r_{m}(R + R0) at R = {violations:?}");
    }
    Ok(Artifact { text, pass })
}

fn rsk_cmd(args: &RskArgs) -> CliResult<Artifact> {
    let variant: Variant = args.variant.parse().map_err(|e| Failure::flag("--variant", e))?;
    let backend: Backend = args.backend.parse().map_err(|e| Failure::flag("--backend", e))?;
    if args.s == 0 {
        return Err(Failure::flag("--s", "must be at least 1"));
    }
    if args.growth {
        return growth_cmd(args);
    }
    if !backend.supports(args.s, variant) {
        return Err(Failure::flag(
            "--backend",
            format!("{backend} does not support s = {}, variant {variant}", args.s),
        ));
    }
    let table = sum_of_squares::count(args.s, args.rmax, variant, backend).map_err(library)?;
    let mut cross = None;
    if args.cross_check {
        let mut agree = true;
        let mut used = vec![backend.to_string()];
        let mut first_mismatch = None;
        for other in Backend::ALL {
            if other == backend || !other.supports(args.s, variant) {
                continue;
            }
            let t = sum_of_squares::count(args.s, args.rmax, variant, other).map_err(library)?;
            used.push(other.to_string());
            if let Some(r) = table.first_mismatch(&t) {
                agree = false;
                first_mismatch.get_or_insert((other.to_string(), r));
            }
        }
        cross = Some((used, agree, first_mismatch));
    }
    let pass = cross.as_ref().is_none_or(|c| c.1);
    let config = vec![
        ("s", args.s.to_string()),
        ("rmax", args.rmax.to_string()),
        ("variant", variant.to_string()),
        ("backend", backend.to_string()),
        ("cross_check", args.cross_check.to_string()),
        ("format", args.out.format.name().to_string()),
    ];
    let text = match args.out.format {
        Format::Csv => {
            let mut out = csv_header("rsk", &config);
            if let Some((used, agree, mismatch)) = &cross {
                let verdict = match mismatch {
                    None => "agree".to_string(),
                    Some((b, r)) => format!("{b} differs at R={r}"),
                };
                let _ = writeln!(out, "# cross-check {}: {verdict}", used.join(";"));
                debug_assert_eq!(*agree, mismatch.is_none());
            }
            out + &table.to_csv()
        }
        Format::Json => {
            let counts: Vec<Value> = table
                .counts
                .iter()
                .map(|c| Value::Number(c.to_string().parse().expect("integer")))
                .collect();
            let mut body = json!({
                "s": args.s,
                "variant": variant.to_string(),
                "backend": backend.to_string(),
                "R_max": args.rmax,
                "counts": counts,
            });
            if let Some((used, agree, mismatch)) = &cross {
                body["cross_check"] = json!({
                    "backends": used,
                    "agree": agree,
                    "first_mismatch": mismatch.as_ref().map(|(b, r)| json!({ "backend": b, "R": r })),
                });
            }
            with_provenance(body, "rsk", &config)
        }
    };
    if !pass {
        eprintln!("rsk: backends disagree");
    }
    Ok(Artifact { text, pass })
}

fn growth_cmd(args: &RskArgs) -> CliResult<Artifact> {
    let lo = args.rlo.unwrap_or(match args.s {
        3 => 4,
        4 => 10,
        _ => 100,
    });
    let report = sum_of_squares::growth_report(args.s, lo, args.rmax).map_err(|e| match e {
        Error::InvalidArgument(_) => Failure::flag("--rlo/--rmax/--s", e),
        other => library(other),
    })?;
    let envelope = (args.s == 3).then_some(sum_of_squares::THREE_SQUARES_ENVELOPE);
    let pass = report.min_ratio.is_finite()
        && report.max_ratio.is_finite()
        && envelope.is_none_or(|c| report.max_ratio < c);
    let config = vec![
        ("s", args.s.to_string()),
        ("rlo", lo.to_string()),
        ("rmax", args.rmax.to_string()),
        ("growth", "true".to_string()),
        ("format", args.out.format.name().to_string()),
    ];
    let text = match args.out.format {
        Format::Csv => {
            let mut out = csv_header("rsk", &config);
            out.push_str("s,R_lo,R_hi,normalizer,min_ratio,argmin,max_ratio,argmax,zero_counts\n");
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                report.s,
                report.r_lo,
                report.r_hi,
                report.normalizer,
                report.min_ratio,
                report.argmin,
                report.max_ratio,
                report.argmax,
                report.zero_counts.len()
            );
            out
        }
        Format::Json => {
            let mut body = serde_json::to_value(&report).expect("report serialises");
            body["envelope"] = json!(envelope);
            body["pass"] = json!(pass);
            with_provenance(body, "rsk", &config)
        }
    };
    Ok(Artifact { text, pass })
}

fn exponents_cmd(args: &ExponentsArgs) -> CliResult<Artifact> {
    let family = parse_family(&args.family.family, args.family.rank)?;
    let d = family.group_dim() as u64;
    let (default_p, default_q) = exponents::default_grid(d).map_err(library)?;
    let p_grid = match &args.p_grid {
        Some(s) => exponents::parse_grid(s)
            .map_err(|e| Failure::flag("--p-grid", e))?
            .into_iter()
            .map(|e| match e {
                Exponent::Finite(p) => Ok(p),
                Exponent::Infinite => Err(Failure::flag("--p-grid", "p must be finite")),
            })
            .collect::<CliResult<Vec<_>>>()?,
        None => default_p,
    };
    let q_grid = match &args.q_grid {
        Some(s) => exponents::parse_grid(s).map_err(|e| Failure::flag("--q-grid", e))?,
        None => default_q,
    };
    let mut profiles = exponents::profile_grid(family, &p_grid, &q_grid).map_err(|e| match e {
        Error::InvalidExponent(_) => Failure::flag("--p-grid/--q-grid", e),
        Error::UnsupportedRank(_) => Failure::flag("--rank", e),
        other => library(other),
    })?;
    if args.classical {
        profiles.retain(|p| p.is_classical());
    }
    let failures: Vec<String> = profiles
        .iter()
        .filter_map(|p| exponents::check_identities(p).err().map(|e| e.to_string()))
        .collect();
    for f in &failures {
        eprintln!("exponents: {f}");
    }
    let (p1, p2) = exponents::zhang_thresholds(family).map_err(library)?;
    let join = |v: Vec<String>| v.join(";");
    let config = vec![
        ("family", family.to_string()),
        ("p_grid", join(p_grid.iter().map(ToString::to_string).collect())),
        ("q_grid", join(q_grid.iter().map(ToString::to_string).collect())),
        ("classical", args.classical.to_string()),
        ("format", args.out.format.name().to_string()),
    ];
    let text = match args.out.format {
        Format::Csv => {
            let mut out = csv_header("exponents", &config);
            let _ = writeln!(out, "# thresholds p1={p1} p2={p2}");
            out.push_str(exponents::CSV_HEADER);
            out.push('\n');
            for p in &profiles {
                out.push_str(&exponents::profile_row(p));
                out.push('\n');
            }
            out
        }
        Format::Json => with_provenance(
            json!({
                "profiles": profiles,
                "thresholds": { "p1": p1.to_string(), "p2": p2.to_string() },
                "pass": failures.is_empty(),
            }),
            "exponents",
            &config,
        ),
    };
    Ok(Artifact {
        text,
        pass: failures.is_empty(),
    })
}

fn verify_cmd(args: &VerifyArgs) -> CliResult<Artifact> {
    let suites: Vec<Suite> = if args.suite.eq_ignore_ascii_case("all") {
        Suite::ALL.to_vec()
    } else {
        vec![args.suite.parse().map_err(|e| Failure::flag("--suite", e))?]
    };
    if let Some(t) = args.tolerance {
        if !(t.is_finite() && t > 0.0) {
            return Err(Failure::flag("--tolerance", "must be a positive number"));
        }
    }
    let mut reports = Vec::new();
    for suite in suites {
        let mut cfg = SuiteConfig::defaults(suite, args.seed);
        if let Some(n) = args.samples {
            cfg.samples = n;
        }
        if let Some(t) = args.tolerance {
            cfg.tolerance = t;
        }
        reports.push(fourier_verify::run_suite(suite, &cfg).map_err(library)?);
    }
    let pass = reports.iter().all(|r| r.pass);
    let config = vec![
        ("suite", args.suite.to_ascii_lowercase()),
        ("seed", args.seed.to_string()),
        ("samples", args.samples.map_or("default".into(), |n| n.to_string())),
        ("tolerance", args.tolerance.map_or("default".into(), |t| t.to_string())),
    ];
    let body = if reports.len() == 1 {
        serde_json::to_value(&reports[0]).expect("report serialises")
    } else {
        json!({ "suite": "all", "pass": pass, "reports": reports })
    };
    Ok(Artifact {
        text: with_provenance(body, "verify", &config),
        pass,
    })
}

fn write_artifact(text: &str, output: Option<&PathBuf>) -> CliResult<()> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::flag("--output", format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::Usage(format!("writing output: {e}")))
        }
    }
}

fn run(cli: Cli) -> CliResult<bool> {
    if cli.threads == 0 {
        return Err(Failure::flag("--threads", "must be at least 1"));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build_global()
        .map_err(|e| Failure::flag("--threads", e))?;
    let (artifact, output) = match &cli.command {
        Command::Table1(a) => (table1(a)?, a.out.output.as_ref()),
        Command::Spectrum(a) => (spectrum_cmd(a)?, a.out.output.as_ref()),
        Command::Count(a) => (count_cmd(a)?, a.out.output.as_ref()),
        Command::Rsk(a) => (rsk_cmd(a)?, a.out.output.as_ref()),
        Command::Exponents(a) => (exponents_cmd(a)?, a.out.output.as_ref()),
        Command::Verify(a) => (verify_cmd(a)?, a.output.as_ref()),
    };
    write_artifact(&artifact.text, output)?;
    Ok(artifact.pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Verification(msg)) => {
            eprintln!("liespec: verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("liespec: {msg}");
            ExitCode::from(2)
        }
    }
}
