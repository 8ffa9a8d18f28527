//! Command-line surface: construction, analysis, projection, bounds, the
//! summary table, and a built-in verification suite.
//!
//! Exit codes: 0 success, 1 usage error, 2 parse/validation error,
//! 3 mathematical verification failure.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{
    best_lower, best_upper, csima_sawyer_bound, csima_sawyer_result, generate_table, ip_bound,
    projection_lower, replay, smalls_bound, BoundsError, KnownValuesRegistry, TableFormat,
    REFERENCE_TABLE,
};
use crate::exact_linalg::{Matrix, Rational};
use crate::families::{
    self, combinatorial_ordinary_count, polygon_formula, prism_formula, Backend, CombModelFile,
    Constructed,
};
use crate::geometry::{
    project_from_point, transform, Configuration, ConfigurationFile, ProjectiveMap, ProjectivePoint,
};
use crate::incidence::{
    check_bettercount, check_ints, check_trivcount, per_point_from_profile, secant_profile,
    secant_profile_numeric, secant_profile_with, IncidenceError, ProfileOptions, SecantProfile,
};

const DEFAULT_EPS: f64 = 1e-7;
const EPS_ENV: &str = "ORDHYP_EPS";

/// Entry point; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Construct(args) => run_construct(args),
        Command::Analyze(args) => run_analyze(args),
        Command::Project(args) => run_project(args),
        Command::Bound(args) => run_bound(args),
        Command::Table(args) => run_table(args),
        Command::Verify(args) => run_verify(args),
    };
    match outcome {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
    fn invalid(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
    fn math(message: impl Into<String>) -> Self {
        Failure { code: 3, message: message.into() }
    }
}

impl From<BoundsError> for Failure {
    fn from(e: BoundsError) -> Self {
        match e {
            BoundsError::MathVerification(_) => Failure::math(e.to_string()),
            _ => Failure::invalid(e.to_string()),
        }
    }
}

impl From<crate::geometry::GeometryError> for Failure {
    fn from(e: crate::geometry::GeometryError) -> Self {
        Failure::invalid(e.to_string())
    }
}

impl From<crate::families::FamiliesError> for Failure {
    fn from(e: crate::families::FamiliesError) -> Self {
        Failure::invalid(e.to_string())
    }
}

impl From<IncidenceError> for Failure {
    fn from(e: IncidenceError) -> Self {
        Failure::invalid(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "ordhyp",
    version,
    about = "Ordinary hyperplanes of finite point sets in real projective space: \
             exact secant profiles, certified bounds, and configuration families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a named configuration family and write its JSON
    Construct(ConstructArgs),
    /// Compute the secant profile of a configuration file
    Analyze(AnalyzeArgs),
    /// Project a configuration from one of its points into PG(d-1)
    Project(ProjectArgs),
    /// Compute a bound on e_d(n) with a replayable trace
    Bound(BoundArgs),
    /// Render the table of known values and bounds for e_d(n)
    Table(TableArgs),
    /// Run the built-in verification suite
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Cube,
    BrokenFano,
    Polygon,
    Prism,
    Trivial,
    Dplus3,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    Exact,
    Float,
    Comb,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Backend {
        match b {
            BackendArg::Exact => Backend::Exact,
            BackendArg::Float => Backend::Float,
            BackendArg::Comb => Backend::Comb,
        }
    }
}

#[derive(Args)]
struct ConstructArgs {
    /// Family to construct
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Number of points (polygon, prism, trivial)
    #[arg(long)]
    n: Option<usize>,
    /// Dimension (trivial, dplus3)
    #[arg(long)]
    d: Option<usize>,
    /// Deletion variant for odd-n polygon and prism configurations
    #[arg(long)]
    variant: Option<usize>,
    /// Coordinate backend
    #[arg(long, value_enum, default_value = "exact")]
    backend: BackendArg,
    /// Comma-separated rational parameters for the d+3 family, e.g. "1,3/2"
    #[arg(long)]
    alphas: Option<String>,
    /// Output file (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
}

fn exact_with_backend(
    c: Configuration,
    backend: BackendArg,
    family: &str,
) -> Result<Constructed, Failure> {
    match backend {
        BackendArg::Exact => Ok(Constructed::Exact(c)),
        BackendArg::Float => Ok(Constructed::Float(families::to_float(&c))),
        BackendArg::Comb => {
            Err(Failure::invalid(format!("family {family} does not support the comb backend")))
        }
    }
}

fn parse_alphas(text: &str) -> Result<Vec<Rational>, Failure> {
    text.split(',')
        .map(|s| {
            Rational::from_str(s.trim())
                .map_err(|e| Failure::invalid(format!("invalid alpha {s:?}: {e}")))
        })
        .collect()
}

fn run_construct(args: ConstructArgs) -> Result<(), Failure> {
    let take_n =
        |args: &ConstructArgs| args.n.ok_or_else(|| Failure::usage("this family requires --n"));
    let take_d =
        |args: &ConstructArgs| args.d.ok_or_else(|| Failure::usage("this family requires --d"));
    let no = |given: bool, flag: &str, family: &str| {
        if given {
            Err(Failure::usage(format!("--{flag} does not apply to the {family} family")))
        } else {
            Ok(())
        }
    };
    if args.alphas.is_some() && args.family != FamilyArg::Dplus3 {
        return Err(Failure::usage("--alphas applies to the dplus3 family only"));
    }
    let built = match args.family {
        FamilyArg::Cube => {
            no(args.n.is_some(), "n", "cube")?;
            no(args.d.is_some(), "d", "cube")?;
            no(args.variant.is_some(), "variant", "cube")?;
            exact_with_backend(families::cube(), args.backend, "cube")?
        }
        FamilyArg::BrokenFano => {
            no(args.n.is_some(), "n", "broken-fano")?;
            no(args.d.is_some(), "d", "broken-fano")?;
            no(args.variant.is_some(), "variant", "broken-fano")?;
            exact_with_backend(families::broken_fano(), args.backend, "broken-fano")?
        }
        FamilyArg::Polygon => {
            no(args.d.is_some(), "d", "polygon")?;
            families::polygon(take_n(&args)?, args.backend.into(), args.variant)?
        }
        FamilyArg::Prism => {
            no(args.d.is_some(), "d", "prism")?;
            families::prism(take_n(&args)?, args.backend.into(), args.variant)?
        }
        FamilyArg::Trivial => {
            no(args.variant.is_some(), "variant", "trivial")?;
            let c = families::trivial_example(take_n(&args)?, take_d(&args)?)?;
            exact_with_backend(c, args.backend, "trivial")?
        }
        FamilyArg::Dplus3 => {
            no(args.n.is_some(), "n", "dplus3")?;
            no(args.variant.is_some(), "variant", "dplus3")?;
            let alphas = args.alphas.as_deref().map(parse_alphas).transpose()?;
            let c = families::dplus3_odd(take_d(&args)?, alphas.as_deref())?;
            exact_with_backend(c, args.backend, "dplus3")?
        }
    };
    write_out(&args.out, &(built.to_json_string() + "\n"))
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Configuration file (exact, float, or comb JSON)
    input: PathBuf,
    /// Include per-point ordinary counts in the report
    #[arg(long)]
    per_point: bool,
    /// Include the sorted hyperplane list with incident point indices
    #[arg(long)]
    hyperplanes: bool,
    /// Also run the unique-extension check over (d+2)-subsets (exact only)
    #[arg(long)]
    check_identities: bool,
    /// Record degenerate d-subsets instead of rejecting the input
    #[arg(long)]
    skip_validation: bool,
    /// Enumeration workers (results are identical for any count)
    #[arg(long)]
    threads: Option<usize>,
    /// Incidence tolerance for float inputs (default 1e-7, or ORDHYP_EPS)
    #[arg(long)]
    eps: Option<f64>,
    /// Output file (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct ProfileReport {
    n: usize,
    d: usize,
    ordinary: u64,
    tau: BTreeMap<usize, u64>,
    identities: IdentitiesReport,
    label: String,
    backend: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    per_point: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hyperplanes: Option<Vec<HyperplaneReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    degenerate_subsets: Option<Vec<Vec<usize>>>,
}

#[derive(Serialize)]
struct IdentitiesReport {
    trivcount: bool,
    bettercount: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    ints: Option<IntsJson>,
}

#[derive(Serialize)]
struct IntsJson {
    passed: bool,
    witness: Option<Vec<usize>>,
}

#[derive(Serialize)]
struct HyperplaneReport {
    coeffs: Vec<String>,
    points: Vec<usize>,
}

fn resolve_eps(flag: Option<f64>) -> Result<f64, Failure> {
    let eps = match flag {
        Some(e) => e,
        None => match std::env::var(EPS_ENV) {
            Ok(text) => text
                .trim()
                .parse::<f64>()
                .map_err(|e| Failure::invalid(format!("invalid {EPS_ENV} value {text:?}: {e}")))?,
            Err(_) => DEFAULT_EPS,
        },
    };
    if !eps.is_finite() || eps <= 0.0 {
        return Err(Failure::invalid(format!("eps must be positive and finite, got {eps}")));
    }
    Ok(eps)
}

fn read_to_string(path: &std::path::Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::invalid(format!("cannot read {}: {e}", path.display())))
}

fn write_out(path: &Option<PathBuf>, content: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| Failure::invalid(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn sniff_backend(value: &serde_json::Value) -> String {
    value.get("backend").and_then(|b| b.as_str()).unwrap_or("exact").to_string()
}

fn profile_report(
    profile: &SecantProfile,
    label: &str,
    backend: &str,
    args: &AnalyzeArgs,
    ints: Option<IntsJson>,
) -> ProfileReport {
    ProfileReport {
        n: profile.n,
        d: profile.d,
        ordinary: profile.ordinary,
        tau: profile.tau.clone(),
        identities: IdentitiesReport {
            trivcount: check_trivcount(profile),
            bettercount: check_bettercount(profile),
            ints,
        },
        label: label.to_string(),
        backend: backend.to_string(),
        per_point: args.per_point.then(|| per_point_from_profile(profile).counts),
        hyperplanes: args.hyperplanes.then(|| {
            profile
                .hyperplanes
                .as_ref()
                .expect("hyperplanes were requested from the engine")
                .iter()
                .map(|(h, points)| HyperplaneReport {
                    coeffs: h.coeffs().iter().map(|c| c.to_string()).collect(),
                    points: points.clone(),
                })
                .collect()
        }),
        degenerate_subsets: (!profile.degenerate_subsets.is_empty())
            .then(|| profile.degenerate_subsets.clone()),
    }
}

fn emit_report(report: &ProfileReport, out: &Option<PathBuf>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(report).expect("serialization cannot fail") + "\n";
    write_out(out, &text)?;
    let identities_ok = report.identities.trivcount
        && report.identities.bettercount
        && report.identities.ints.as_ref().is_none_or(|i| i.passed);
    if !identities_ok {
        return Err(Failure::math("a counting identity failed for this profile"));
    }
    Ok(())
}

fn run_analyze(args: AnalyzeArgs) -> Result<(), Failure> {
    let text = read_to_string(&args.input)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Failure::invalid(format!("invalid JSON: {e}")))?;
    match sniff_backend(&value).as_str() {
        "exact" => {
            let file: ConfigurationFile =
                serde_json::from_value(value).map_err(|e| Failure::invalid(e.to_string()))?;
            let c = file.into_configuration().map_err(Failure::invalid)?;
            let opts = ProfileOptions {
                with_hyperplanes: args.hyperplanes || args.per_point,
                skip_validation: args.skip_validation,
                threads: args.threads.unwrap_or(1),
            };
            let profile = secant_profile_with(&c, &opts)?;
            let ints = args.check_identities.then(|| {
                let r = check_ints(&c);
                IntsJson { passed: r.passed, witness: r.witness }
            });
            let report = profile_report(&profile, c.label(), "exact", &args, ints);
            emit_report(&report, &args.out)
        }
        "float" => {
            if args.per_point || args.hyperplanes {
                return Err(Failure::invalid(
                    "--per-point and --hyperplanes are available for exact and comb inputs only",
                ));
            }
            let file: ConfigurationFile =
                serde_json::from_value(value).map_err(|e| Failure::invalid(e.to_string()))?;
            let (_, label, points) = file.into_float_points().map_err(Failure::invalid)?;
            let eps = resolve_eps(args.eps)?;
            let profile = secant_profile_numeric(&points, eps)?;
            let report = profile_report(&profile, &label, "float", &args, None);
            emit_report(&report, &args.out)
        }
        "comb" => {
            let file: CombModelFile =
                serde_json::from_value(value).map_err(|e| Failure::invalid(e.to_string()))?;
            let model = file.into_model().map_err(Failure::invalid)?;
            let profile = model.profile()?;
            // Per-point statistics need coordinates; the block model has none.
            if args.per_point || args.hyperplanes {
                return Err(Failure::invalid(
                    "--per-point and --hyperplanes are not available for block models",
                ));
            }
            let report = profile_report(&profile, &model.label, "comb", &args, None);
            emit_report(&report, &args.out)
        }
        other => Err(Failure::invalid(format!("unknown backend {other:?}"))),
    }
}

#[derive(Args)]
struct ProjectArgs {
    /// Exact configuration file
    input: PathBuf,
    /// Index of the projection center
    #[arg(long)]
    point: usize,
    /// Check d·N = Σ N_x against the per-point minimum and the projection
    #[arg(long)]
    check_pigeonhole: bool,
    /// Output file for the projected configuration (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run_project(args: ProjectArgs) -> Result<(), Failure> {
    let text = read_to_string(&args.input)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Failure::invalid(format!("invalid JSON: {e}")))?;
    if sniff_backend(&value) != "exact" {
        return Err(Failure::invalid("project requires an exact configuration"));
    }
    let file: ConfigurationFile =
        serde_json::from_value(value).map_err(|e| Failure::invalid(e.to_string()))?;
    let c = file.into_configuration().map_err(Failure::invalid)?;
    let projected = project_from_point(&c, args.point)?;
    let json = serde_json::to_string_pretty(&projected.to_json())
        .expect("serialization cannot fail")
        + "\n";
    write_out(&args.out, &json)?;

    if args.check_pigeonhole {
        let opts = ProfileOptions { with_hyperplanes: true, ..ProfileOptions::default() };
        let profile = secant_profile_with(&c, &opts)?;
        let counts = per_point_from_profile(&profile).counts;
        let (n, d) = (c.len() as u64, c.dim() as u64);
        let big_n = profile.ordinary;
        let n_x = counts[args.point];
        let (min_point, min_count) = counts
            .iter()
            .enumerate()
            .min_by_key(|&(_, c)| c)
            .map(|(i, &c)| (i, c))
            .expect("configuration is nonempty");
        let projected_ordinary = secant_profile(&projected)
            .map_err(|e| Failure::invalid(format!("projected configuration: {e}")))?
            .ordinary;
        let relation = if d * big_n == n * min_count { "equality" } else { "strict" };
        eprintln!(
            "pigeonhole: N = {big_n}, N_x = {n_x} at point {}, minimum {min_count} at point \
             {min_point}; d·N ≥ n·N_min: {d}·{big_n} ≥ {n}·{min_count} ({relation}); \
             projected ordinary = {projected_ordinary}",
            args.point,
        );
        if d * big_n < n * min_count {
            return Err(Failure::math("pigeonhole inequality d*N >= n*N_min failed"));
        }
        if projected_ordinary != n_x {
            return Err(Failure::math(format!(
                "projected ordinary count {projected_ordinary} differs from N_x = {n_x}"
            )));
        }
    }
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Lower,
    Upper,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    /// Strongest applicable method
    Best,
    /// Exact optimum over profiles satisfying both counting identities
    Ip,
    /// Projection chain down to the planar bound
    Project2,
    /// The counting bound
    Smalls,
    /// The planar 6n/13 bound (d = 2 only)
    Cs,
}

#[derive(Args)]
struct BoundArgs {
    /// Number of points
    #[arg(long)]
    n: usize,
    /// Dimension
    #[arg(long)]
    d: usize,
    /// Which side of e_d(n) to bound
    #[arg(long, value_enum, default_value = "lower")]
    kind: KindArg,
    /// Bounding method (lower bounds only; upper bounds always use best)
    #[arg(long, value_enum, default_value = "best")]
    method: MethodArg,
    /// Output file (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run_bound(args: BoundArgs) -> Result<(), Failure> {
    let result = match args.kind {
        KindArg::Upper => {
            if args.method != MethodArg::Best {
                return Err(Failure::usage("--kind upper supports --method best only"));
            }
            best_upper(args.n, args.d)?
        }
        KindArg::Lower => match args.method {
            MethodArg::Best => best_lower(args.n, args.d)?,
            MethodArg::Ip => ip_bound(args.n, args.d)?,
            MethodArg::Project2 => projection_lower(args.n, args.d)?,
            MethodArg::Smalls => smalls_bound(args.n, args.d)?,
            MethodArg::Cs => {
                if args.d != 2 {
                    return Err(Failure::invalid("--method cs applies to d = 2 only"));
                }
                csima_sawyer_result(args.n)?
            }
        },
    };
    let text = serde_json::to_string_pretty(&result).expect("serialization cannot fail") + "\n";
    write_out(&args.out, &text)
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Md,
    Csv,
    Json,
}

#[derive(Args)]
struct TableArgs {
    /// Output format
    #[arg(long, value_enum, default_value = "md")]
    format: FormatArg,
    /// Output file (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run_table(args: TableArgs) -> Result<(), Failure> {
    let format = match args.format {
        FormatArg::Md => TableFormat::Markdown,
        FormatArg::Csv => TableFormat::Csv,
        FormatArg::Json => TableFormat::Json,
    };
    let table = generate_table(format)?;
    write_out(&args.out, &table)
}

#[derive(Args)]
struct VerifyArgs {
    /// Run a single named check (see `verify --help` for names)
    #[arg(long)]
    only: Option<String>,
    /// Also run the seeded randomized property suite
    #[arg(long)]
    properties: bool,
    /// Seed for the randomized property suite
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

struct Check {
    name: &'static str,
    reference: &'static str,
    run: fn() -> Result<String, String>,
}

const CHECKS: &[Check] = &[
    Check {
        name: "cube",
        reference: "8 ordinary planes, tau_4 = 12, per-point 3, every projection 3",
        run: check_cube,
    },
    Check {
        name: "cube-minus-vertex",
        reference: "tau = (11, 6), no 5- or 6-point planes",
        run: check_cube_minus_vertex,
    },
    Check {
        name: "polygon",
        reference: "X_12 has 6 ordinary lines; model and numeric match the formula for n = 8..40",
        run: check_polygon,
    },
    Check {
        name: "prism",
        reference: "Y_10 = 20, Y_16 = 48; model matches the formula for n = 8..40; \
                    deletion variant-independent",
        run: check_prism,
    },
    Check {
        name: "trivial",
        reference: "ordinary C(n-1,d-1) with one (n-1)-secant, d = 2..6, n = d+2..12",
        run: check_trivial,
    },
    Check {
        name: "dplus3",
        reference: "tau_d = (d+3)(d+1)(d-1)/6, tau_{d+1} = (d+3)/2 for d = 3, 5, 7, \
                    independent of the parameters",
        run: check_dplus3,
    },
    Check {
        name: "ip",
        reference: "(8,4) = 25, (9,5) = 54, (d+2,d) = C(d+1,2), (d+3,d) closed forms",
        run: check_ip,
    },
    Check {
        name: "projection",
        reference: "chain values (9,3) = 12 and (10,4) = 30",
        run: check_projection,
    },
    Check {
        name: "counting",
        reference: "smalls (6,3) = 8, (9,5) = 54, exact at n = d+2; planar bound spot values",
        run: check_counting,
    },
    Check {
        name: "table",
        reference: "reference table of e_d(n) values and bounds, n = 4..13, d = 2..7",
        run: check_table,
    },
    Check {
        name: "replay",
        reference: "every best-bound trace recomputes to its reported value",
        run: check_replay,
    },
    Check {
        name: "registry",
        reference: "registry lower bounds never exceed registry upper bounds",
        run: check_registry,
    },
];

fn run_verify(args: VerifyArgs) -> Result<(), Failure> {
    let selected: Vec<&Check> = match &args.only {
        Some(name) => {
            let found: Vec<&Check> = CHECKS.iter().filter(|c| c.name == name).collect();
            if found.is_empty() {
                let names: Vec<&str> = CHECKS.iter().map(|c| c.name).collect();
                return Err(Failure::invalid(format!(
                    "unknown check {name:?}; available: {}",
                    names.join(", ")
                )));
            }
            found
        }
        None => CHECKS.iter().collect(),
    };
    let mut failures = 0usize;
    for check in &selected {
        match (check.run)() {
            Ok(computed) => {
                println!("ok   {:<18} computed: {computed}", check.name);
                println!("     {:<18} reference: {}", "", check.reference);
            }
            Err(detail) => {
                failures += 1;
                println!("FAIL {:<18} computed: {detail}", check.name);
                println!("     {:<18} reference: {}", "", check.reference);
            }
        }
    }
    if args.properties {
        match run_property_suite(args.seed, 20) {
            Ok(summary) => println!("ok   {:<18} {summary}", "properties"),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:<18} {detail}", "properties");
            }
        }
    }
    let ran = selected.len() + usize::from(args.properties);
    println!("{} checks run, {failures} failed", ran);
    if failures > 0 {
        return Err(Failure::math(format!("{failures} verification checks failed")));
    }
    Ok(())
}

fn check_cube() -> Result<String, String> {
    let c = families::cube();
    let opts = ProfileOptions { with_hyperplanes: true, ..ProfileOptions::default() };
    let p = secant_profile_with(&c, &opts).map_err(|e| e.to_string())?;
    if (p.ordinary, p.tau_at(4)) != (8, 12) {
        return Err(format!("profile tau = {:?}", p.tau));
    }
    let counts = per_point_from_profile(&p).counts;
    if counts != vec![3; 8] {
        return Err(format!("per-point counts {counts:?}"));
    }
    for i in 0..8 {
        let projected = project_from_point(&c, i).map_err(|e| e.to_string())?;
        let q = secant_profile(&projected).map_err(|e| e.to_string())?;
        if q.ordinary != 3 {
            return Err(format!("projection from point {i} has {} ordinary lines", q.ordinary));
        }
    }
    Ok("ordinary 8, tau_4 12, per-point all 3, all 8 projections give 3".to_string())
}

fn check_cube_minus_vertex() -> Result<String, String> {
    let c = families::cube().remove_point(0).map_err(|e| e.to_string())?;
    let p = secant_profile(&c).map_err(|e| e.to_string())?;
    let tau: Vec<u64> = (3..=6).map(|i| p.tau_at(i)).collect();
    if tau != [11, 6, 0, 0] {
        return Err(format!("tau_3..tau_6 = {tau:?}"));
    }
    Ok("tau_3 = 11, tau_4 = 6, tau_5 = tau_6 = 0".to_string())
}

fn comb_model(built: Constructed) -> Result<crate::families::CombinatorialModel, String> {
    match built {
        Constructed::Comb(m) => Ok(m),
        _ => Err("expected a block model".to_string()),
    }
}

fn float_points(built: Constructed) -> Result<Vec<Vec<f64>>, String> {
    match built {
        Constructed::Float(f) => Ok(f.points),
        _ => Err("expected floating coordinates".to_string()),
    }
}

fn check_polygon() -> Result<String, String> {
    for n in 8..=40usize {
        let formula = polygon_formula(n).map_err(|e| e.to_string())?;
        let model =
            comb_model(families::polygon(n, Backend::Comb, None).map_err(|e| e.to_string())?)?;
        let counted = combinatorial_ordinary_count(&model).map_err(|e| e.to_string())?;
        if counted != formula {
            return Err(format!("n = {n}: model {counted} vs formula {formula}"));
        }
        let pts =
            float_points(families::polygon(n, Backend::Float, None).map_err(|e| e.to_string())?)?;
        let numeric = secant_profile_numeric(&pts, DEFAULT_EPS).map_err(|e| e.to_string())?;
        if numeric.ordinary != formula {
            return Err(format!("n = {n}: numeric {} vs formula {formula}", numeric.ordinary));
        }
        if n == 12 && formula != 6 {
            return Err(format!("X_12 gives {formula}, not 6"));
        }
    }
    Ok("X_12 = 6; block model and numeric engine match the formula for n = 8..40".to_string())
}

fn check_prism() -> Result<String, String> {
    for n in 8..=40usize {
        let formula = prism_formula(n).map_err(|e| e.to_string())?;
        let model =
            comb_model(families::prism(n, Backend::Comb, None).map_err(|e| e.to_string())?)?;
        let counted = combinatorial_ordinary_count(&model).map_err(|e| e.to_string())?;
        if counted != formula {
            return Err(format!("n = {n}: model {counted} vs formula {formula}"));
        }
    }
    for (n, expected) in [(10usize, 20u64), (16, 48)] {
        let got = prism_formula(n).map_err(|e| e.to_string())?;
        if got != expected {
            return Err(format!("Y_{n} gives {got}, not {expected}"));
        }
    }
    for n in [9usize, 11, 13] {
        let base = prism_formula(n).map_err(|e| e.to_string())?;
        for v in 0..n.div_ceil(2) {
            let model =
                comb_model(families::prism(n, Backend::Comb, Some(v)).map_err(|e| e.to_string())?)?;
            let counted = combinatorial_ordinary_count(&model).map_err(|e| e.to_string())?;
            if counted != base {
                return Err(format!("n = {n}, variant {v}: {counted} vs {base}"));
            }
        }
    }
    Ok("Y_10 = 20, Y_16 = 48; model matches formula for n = 8..40; variants agree".to_string())
}

fn check_trivial() -> Result<String, String> {
    for d in 2..=6usize {
        for n in (d + 2)..=12usize {
            let c = families::trivial_example(n, d).map_err(|e| e.to_string())?;
            let p = secant_profile(&c).map_err(|e| e.to_string())?;
            let expected = crate::incidence::binom(n - 1, d - 1);
            if num_bigint::BigInt::from(p.ordinary) != expected || p.tau_at(n - 1) != 1 {
                return Err(format!("n = {n}, d = {d}: tau = {:?}", p.tau));
            }
        }
    }
    Ok("ordinary = C(n-1,d-1) and tau_{n-1} = 1 for d = 2..6, n = d+2..12".to_string())
}

fn check_dplus3() -> Result<String, String> {
    for d in [3usize, 5, 7] {
        let expected_d = ((d + 3) * (d + 1) * (d - 1) / 6) as u64;
        let expected_d1 = ((d + 3) / 2) as u64;
        let k = (d - 1) / 2;
        let alt: Vec<Rational> =
            (0..k).map(|i| Rational::from_integer((-(2 + i as i64)).into())).collect();
        for alphas in [None, Some(alt.as_slice())] {
            let c = families::dplus3_odd(d, alphas).map_err(|e| e.to_string())?;
            let p = secant_profile(&c).map_err(|e| e.to_string())?;
            if (p.tau_at(d), p.tau_at(d + 1)) != (expected_d, expected_d1) {
                return Err(format!(
                    "d = {d}, alphas {alphas:?}: tau_d = {}, tau_d+1 = {}",
                    p.tau_at(d),
                    p.tau_at(d + 1)
                ));
            }
        }
    }
    Ok("profiles match the closed forms for d = 3, 5, 7 with two parameter sets".to_string())
}

fn check_ip() -> Result<String, String> {
    let expect = |n: usize, d: usize, want: u64| -> Result<(), String> {
        let got = ip_bound(n, d).map_err(|e| e.to_string())?.value;
        if got != want {
            return Err(format!("ip({n},{d}) = {got}, expected {want}"));
        }
        Ok(())
    };
    expect(8, 4, 25)?;
    expect(9, 5, 54)?;
    for d in 2..=7usize {
        expect(d + 2, d, (d as u64 + 1) * d as u64 / 2)?;
    }
    for d in [4usize, 6] {
        // C(d+2, 3)
        let c = ((d + 2) * (d + 1) * d / 6) as u64;
        expect(d + 3, d, c)?;
    }
    for d in [3usize, 5, 7] {
        expect(d + 3, d, ((d + 3) * (d + 1) * (d - 1) / 6) as u64)?;
    }
    Ok("all spot values reproduce".to_string())
}

fn check_projection() -> Result<String, String> {
    let a = projection_lower(9, 3).map_err(|e| e.to_string())?.value;
    let b = projection_lower(10, 4).map_err(|e| e.to_string())?.value;
    if (a, b) != (12, 30) {
        return Err(format!("(9,3) = {a}, (10,4) = {b}"));
    }
    Ok("(9,3) = 12 and (10,4) = 30".to_string())
}

fn check_counting() -> Result<String, String> {
    let smalls = |n: usize, d: usize| -> Result<u64, String> {
        Ok(smalls_bound(n, d).map_err(|e| e.to_string())?.value)
    };
    if smalls(6, 3)? != 8 || smalls(9, 5)? != 54 {
        return Err("smalls spot values differ".to_string());
    }
    for d in 2..=7usize {
        if smalls(d + 2, d)? != (d as u64 + 1) * d as u64 / 2 {
            return Err(format!("smalls({},{d}) is not C(d+1,2)", d + 2));
        }
    }
    let cs: Vec<u64> = [7usize, 8, 13, 26].iter().map(|&n| csima_sawyer_bound(n)).collect();
    if cs != [3, 4, 6, 12] {
        return Err(format!("planar bound values {cs:?}"));
    }
    Ok("smalls and planar bounds reproduce all spot values".to_string())
}

fn check_table() -> Result<String, String> {
    let table = generate_table(TableFormat::Markdown).map_err(|e| e.to_string())?;
    if table != REFERENCE_TABLE {
        let diff = table
            .lines()
            .zip(REFERENCE_TABLE.lines())
            .find(|(a, b)| a != b)
            .map(|(a, b)| format!("generated {a:?} vs reference {b:?}"))
            .unwrap_or_else(|| "line counts differ".to_string());
        return Err(format!("first mismatch: {diff}"));
    }
    Ok("all 60 cells match the reference values".to_string())
}

fn check_replay() -> Result<String, String> {
    let mut count = 0usize;
    for d in 2..=7usize {
        for n in (d + 2)..=13usize {
            for result in [
                best_lower(n, d).map_err(|e| e.to_string())?,
                best_upper(n, d).map_err(|e| e.to_string())?,
            ] {
                if !replay(&result).map_err(|e| e.to_string())? {
                    return Err(format!(
                        "trace of {} {:?} at ({n},{d}) does not replay",
                        result.method, result.kind
                    ));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} bound traces replayed"))
}

fn check_registry() -> Result<String, String> {
    let registry = KnownValuesRegistry::standard();
    let mut seen = 0usize;
    for d in 2..=7usize {
        for n in 4..=13usize {
            if let (Some((lo, _)), Some((hi, _))) = (registry.lower(n, d), registry.upper(n, d)) {
                if lo > hi {
                    return Err(format!("({n},{d}): lower {lo} > upper {hi}"));
                }
                seen += 1;
            }
        }
    }
    Ok(format!("{seen} exact entries consistent"))
}

/// One random configuration in general position with small integer
/// coordinates, by rejection sampling.
fn random_configuration(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Configuration {
    'outer: for _ in 0..10_000 {
        let mut points: Vec<ProjectivePoint> = Vec::with_capacity(n);
        while points.len() < n {
            let coords: Vec<i64> = (0..=d).map(|_| rng.random_range(-9..=9)).collect();
            let Ok(p) = ProjectivePoint::from_integers(&coords) else {
                continue;
            };
            if points.contains(&p) {
                continue;
            }
            points.push(p);
        }
        let Ok(c) = Configuration::new(d, points, "random") else {
            continue 'outer;
        };
        if crate::geometry::validate_general_position(&c).ok() {
            return c;
        }
    }
    unreachable!("rejection sampling found no general-position configuration")
}

fn random_projective_map(rng: &mut ChaCha8Rng, d: usize) -> ProjectiveMap {
    loop {
        let rows: Vec<Vec<Rational>> = (0..=d)
            .map(|_| {
                (0..=d)
                    .map(|_| Rational::from_integer(rng.random_range(-5i64..=5).into()))
                    .collect()
            })
            .collect();
        if let Ok(map) = ProjectiveMap::new(Matrix::from_rows(&rows)) {
            return map;
        }
    }
}

fn run_property_suite(seed: u64, cases: usize) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..cases {
        let d = rng.random_range(2..=3usize);
        let n = rng.random_range((d + 3)..=9usize);
        let c = random_configuration(&mut rng, n, d);
        let opts = ProfileOptions { with_hyperplanes: true, ..ProfileOptions::default() };
        let p = secant_profile_with(&c, &opts)
            .map_err(|e| format!("case {case}: profile failed: {e}"))?;
        if !check_trivcount(&p) {
            return Err(format!("case {case}: d-subset identity failed"));
        }
        if !check_bettercount(&p) {
            return Err(format!("case {case}: extension inequality failed"));
        }
        if !check_ints(&c).passed {
            return Err(format!("case {case}: unique-extension check failed"));
        }
        let counts = per_point_from_profile(&p).counts;
        if counts.iter().sum::<u64>() != d as u64 * p.ordinary {
            return Err(format!("case {case}: per-point sum is not d times ordinary"));
        }
        let map = random_projective_map(&mut rng, d);
        let mapped = transform(&c, &map).map_err(|e| format!("case {case}: {e}"))?;
        let q = secant_profile(&mapped).map_err(|e| format!("case {case}: {e}"))?;
        if q.tau != p.tau {
            return Err(format!("case {case}: profile changed under a projective map"));
        }
        let mut shuffled = c.points().to_vec();
        shuffled.shuffle(&mut rng);
        let permuted =
            Configuration::new(d, shuffled, "permuted").map_err(|e| format!("case {case}: {e}"))?;
        let r = secant_profile(&permuted).map_err(|e| format!("case {case}: {e}"))?;
        if r.tau != p.tau {
            return Err(format!("case {case}: profile changed under permutation"));
        }
    }
    Ok(format!("{cases} random configurations verified (seed {seed})"))
}
