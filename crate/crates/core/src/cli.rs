//! Command-line front end.
//!
//! Exit status: 0 on success, 1 when a computation fails, 2 on bad usage.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::dioph::{self, DiophSystem};
use crate::error::Error;
use crate::frob;
use crate::gen2;
use crate::genp;
use crate::lines;
use crate::model::{self, LatticePoint, ModularInequality};
use crate::oracle::{self, Window};
use crate::ring;

#[derive(Debug, Parser)]
#[command(name = "propmod", version, about = "Proportionally modular affine semigroups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Polygon enumeration, plane only.
    Geometric,
    /// Slab construction, any dimension up to 3.
    General,
}

/// The inequality `f(x) mod b <= g(x)`.
#[derive(Debug, Clone, Args)]
pub struct IneqArgs {
    /// Coefficients of f, comma separated; integers or fractions p/q.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "input")]
    pub f: Option<String>,
    /// Coefficients of g, comma separated.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "input")]
    pub g: Option<String>,
    /// Modulus, an integer or a fraction p/q.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "input")]
    pub b: Option<String>,
    /// JSON file {"f": [...], "g": [...], "b": ...}.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimal generating set.
    Gens {
        #[command(flatten)]
        ineq: IneqArgs,
        /// Defaults to geometric in the plane; required otherwise.
        #[arg(long, value_enum)]
        method: Option<Method>,
        /// Include every intermediate set (general method).
        #[arg(long)]
        trace: bool,
    },
    /// Whether a point satisfies the inequality.
    Membership {
        #[command(flatten)]
        ineq: IneqArgs,
        /// Comma separated coordinates.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Frobenius vectors in the plane.
    Frobenius {
        #[command(flatten)]
        ineq: IneqArgs,
    },
    /// Intersection of the Apéry sets of u and ũ.
    Apery {
        #[command(flatten)]
        ineq: IneqArgs,
    },
    /// Cohen-Macaulay, Gorenstein and Buchsbaum verdicts.
    Properties {
        #[command(flatten)]
        ineq: IneqArgs,
    },
    /// Minimal solutions of a system of equations, congruences and inequalities.
    Solve {
        /// `c1,c2,...:t` for c·x = t.
        #[arg(long = "eq", allow_hyphen_values = true)]
        equalities: Vec<String>,
        /// `c1,c2,...:k:m` for c·x ≡ k (mod m).
        #[arg(long = "cong", allow_hyphen_values = true)]
        congruences: Vec<String>,
        /// `c1,c2,...:l` for c·x ≥ l.
        #[arg(long = "ineq", allow_hyphen_values = true)]
        inequalities: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Brute-force reference computations over a window.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Members in the window.
    Members(OracleArgs),
    /// Irreducible members in the window.
    Gens(OracleArgs),
    /// Minimal Frobenius vectors certified inside the window.
    Frobenius(OracleArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub ineq: IneqArgs,
    /// Side of the cube [0, N]^p.
    #[arg(long, default_value_t = 30)]
    pub window: i128,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Compute(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::Json(_)
            | Error::ZeroForm(_)
            | Error::NonPositiveModulus
            | Error::ZeroDenominator
            | Error::DimensionMismatch { .. } => CliError::Usage(e.to_string()),
            other => CliError::Compute(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Compute(e) => write!(f, "error: {e}"),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl IneqArgs {
    pub fn inequality(&self) -> CliResult<ModularInequality> {
        if let Some(path) = &self.input {
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            return Ok(ModularInequality::from_json(&text)?);
        }
        let (Some(f), Some(g), Some(b)) = (&self.f, &self.g, &self.b) else {
            return Err(usage("give --f, --g and --b, or --input"));
        };
        let f = model::parse_rational_vector(f)?;
        let g = model::parse_rational_vector(g)?;
        let b = b.trim().parse()?;
        Ok(model::normalize(&f, &g, b)?)
    }
}

fn render_points(points: &[LatticePoint]) -> String {
    let mut out = String::new();
    for p in points {
        let _ = writeln!(out, "{p}");
    }
    out
}

fn to_json<T: Serialize>(value: &T) -> CliResult<String> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| CliError::Compute(Error::Json(e.to_string())))
}

fn parse_constraint(text: &str, parts: usize) -> CliResult<(Vec<i128>, Vec<i128>)> {
    let fields: Vec<&str> = text.split(':').collect();
    if fields.len() != parts {
        return Err(usage(format!("malformed constraint `{text}`")));
    }
    let form = model::parse_point(fields[0])?.into_coords();
    let rest = fields[1..]
        .iter()
        .map(|s| {
            s.trim()
                .parse::<i128>()
                .map_err(|_| usage(format!("malformed constraint `{text}`")))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok((form, rest))
}

fn gens(ineq: &ModularInequality, method: Option<Method>, trace: bool, format: Format) -> CliResult<String> {
    let method = match (method, ineq.dim()) {
        (Some(Method::Geometric), p) if p != 2 => {
            return Err(usage("the geometric method needs two variables"))
        }
        (Some(m), _) => m,
        (None, 2) => Method::Geometric,
        (None, _) => return Err(usage("--method general is required outside the plane")),
    };
    if trace && method != Method::General {
        return Err(usage("--trace needs --method general"));
    }
    let g = ineq.g_coeffs();
    let mixed = g.iter().any(|&c| c <= 0) && g.iter().any(|&c| c >= 0);
    let (set, trace_data) = match method {
        Method::Geometric => (gen2::min_gens_n2(ineq)?, None),
        Method::General if trace && mixed => {
            let t = genp::construction_trace(ineq)?;
            (t.generators.clone(), Some(t))
        }
        Method::General => (genp::min_gens_np(ineq)?, None),
    };
    match format {
        Format::Json => {
            let mut v = json!({ "trivial": set.trivial, "generators": set.points });
            if let Some(t) = trace_data {
                v["trace"] = serde_json::to_value(&t)
                    .map_err(|e| CliError::Compute(Error::Json(e.to_string())))?;
            }
            to_json(&v)
        }
        Format::Text => {
            if set.trivial {
                return Ok("trivial semigroup\n".into());
            }
            let mut out = render_points(&set.points);
            if let Some(t) = trace_data {
                let _ = writeln!(
                    out,
                    "# U: {}, V: {}, C_(b-1): {}, C~: {}, M_dk: {}",
                    t.u.len(),
                    t.v.len(),
                    t.ck.last().map_or(0, Vec::len),
                    t.c_tilde.len(),
                    t.mdk.iter().map(|e| e.solutions.len()).sum::<usize>()
                );
            }
            Ok(out)
        }
    }
}

fn frobenius(ineq: &ModularInequality, format: Format) -> CliResult<String> {
    let report = frob::frobenius_vectors(ineq)?;
    let geometry = match report.case {
        frob::FrobeniusCase::Strip => Some(lines::strip_geometry(ineq)?),
        frob::FrobeniusCase::Positive => None,
    };
    match format {
        Format::Json => to_json(&json!({
            "delta_size": report.delta.len(),
            "minimal": report.minimal_frobenius_vectors,
            "all_in_delta": report.frobenius_vectors,
            "geometry": geometry,
        })),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "delta size: {}", report.delta.len());
            if let Some(geo) = geometry {
                let _ = writeln!(out, "u: {}, u~: {}, w: {}", geo.u, geo.u_tilde, geo.w);
            }
            let _ = writeln!(out, "minimal:");
            out.push_str(&render_points(&report.minimal_frobenius_vectors));
            let _ = writeln!(out, "all in delta:");
            out.push_str(&render_points(&report.frobenius_vectors));
            Ok(out)
        }
    }
}

fn properties(ineq: &ModularInequality, format: Format) -> CliResult<String> {
    let report = ring::properties(ineq)?;
    match format {
        Format::Json => to_json(&report),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "cohen_macaulay: {}", report.cohen_macaulay);
            let _ = writeln!(out, "gorenstein: {}", report.gorenstein);
            let _ = writeln!(
                out,
                "buchsbaum: {}",
                report.buchsbaum.map_or("not determined".to_string(), |b| b.to_string())
            );
            if let Some(m) = &report.witnesses.maximal_elements {
                let names: Vec<String> = m.iter().map(ToString::to_string).collect();
                let _ = writeln!(out, "apery maximal elements: {}", names.join(" "));
            }
            if let Some(q) = &report.witnesses.cm_counterexample {
                let _ = writeln!(out, "cohen-macaulay counterexample: {q}");
            }
            let _ = writeln!(out, "gaps in fundamental region: {}", report.witnesses.gap_count);
            Ok(out)
        }
    }
}

fn solve(eqs: &[String], congs: &[String], ineqs: &[String], format: Format) -> CliResult<String> {
    let mut parsed_eq = Vec::new();
    let mut parsed_cong = Vec::new();
    let mut parsed_ineq = Vec::new();
    for e in eqs {
        parsed_eq.push(parse_constraint(e, 2)?);
    }
    for c in congs {
        parsed_cong.push(parse_constraint(c, 3)?);
    }
    for i in ineqs {
        parsed_ineq.push(parse_constraint(i, 2)?);
    }
    let dim = parsed_eq
        .iter()
        .chain(&parsed_cong)
        .chain(&parsed_ineq)
        .map(|(f, _)| f.len())
        .next()
        .ok_or_else(|| usage("give at least one --eq, --cong or --ineq"))?;
    let mut sys = DiophSystem::new(dim);
    for (f, r) in parsed_eq {
        sys = sys.equality(f, r[0]);
    }
    for (f, r) in parsed_cong {
        sys = sys.congruence(f, r[0], r[1]);
    }
    for (f, r) in parsed_ineq {
        sys = sys.inequality(f, r[0]);
    }
    let sol = match dioph::minimal_solutions(&sys) {
        Err(Error::OutOfHypothesis(m)) => return Err(usage(m)),
        other => other?,
    };
    match format {
        Format::Json => to_json(&sol),
        Format::Text => Ok(render_points(&sol.points)),
    }
}

fn oracle_cmd(cmd: &OracleCommand) -> CliResult<String> {
    let (args, kind) = match cmd {
        OracleCommand::Members(a) => (a, 0),
        OracleCommand::Gens(a) => (a, 1),
        OracleCommand::Frobenius(a) => (a, 2),
    };
    let ineq = args.ineq.inequality()?;
    if args.window < 0 {
        return Err(usage("--window must be non-negative"));
    }
    let window = Window::cube(ineq.dim(), args.window)?;
    let points = match kind {
        0 => oracle::brute_members(&ineq, &window)?,
        1 => oracle::brute_min_gens(&ineq, &window)?,
        _ => oracle::brute_min_frobenius(&ineq, &window)?,
    };
    match args.ineq.format {
        Format::Json => to_json(&points),
        Format::Text => Ok(render_points(&points)),
    }
}

pub fn execute(cli: &Cli) -> CliResult<String> {
    match &cli.command {
        Command::Gens { ineq, method, trace } => gens(&ineq.inequality()?, *method, *trace, ineq.format),
        Command::Membership { ineq, point } => {
            let e = ineq.inequality()?;
            let p = model::parse_point(point)?;
            let member = e.member(&p)?;
            match ineq.format {
                Format::Json => to_json(&json!({ "point": p, "member": member })),
                Format::Text => Ok(format!("{member}\n")),
            }
        }
        Command::Frobenius { ineq } => frobenius(&ineq.inequality()?, ineq.format),
        Command::Apery { ineq } => {
            let data = ring::apery_intersection(&ineq.inequality()?)?;
            match ineq.format {
                Format::Json => to_json(&data),
                Format::Text => {
                    let mut out = render_points(&data.apery_restricted);
                    let names: Vec<String> = data.maximal_elements.iter().map(ToString::to_string).collect();
                    let _ = writeln!(out, "maximal: {}", names.join(" "));
                    Ok(out)
                }
            }
        }
        Command::Properties { ineq } => properties(&ineq.inequality()?, ineq.format),
        Command::Solve {
            equalities,
            congruences,
            inequalities,
            format,
        } => solve(equalities, congruences, inequalities, *format),
        Command::Oracle { command } => oracle_cmd(command),
    }
}

/// Parse `args`, run, print, and return the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(out) => {
            print!("{out}");
            0
        }
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
