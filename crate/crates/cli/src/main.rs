//! `sasaki` — command-line surface of the toolkit.
//!
//! Five commands: `oml-check` validates a lattice file against the
//! orthomodular-lattice laws; `filters` enumerates Sasaki filters,
//! pre-valuations or valuations, or computes the Sasaki closure of a set;
//! `lemma` grid-scans the projected-pair inner products at an angle and
//! compares against the analytic interval; `collapse` produces a collapse
//! certificate for two rays; `verify` replays a certificate file.
//!
//! Exit codes: 0 success/accept; 1 domain rejection (law violation,
//! rejected certificate, interval deviation, no valuation, enumeration
//! bound exceeded); 2 usage, I/O or parse errors. `--format machine`
//! prints the JSON documents described in `docs/formats.md`; machine
//! output is byte-identical across runs for identical inputs.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use sasaki_core::collapse::format::{load_certificate, write_pair_string, CertificateDocument};
use sasaki_core::collapse::{self, CollapseCertificate, CollapseError};
use sasaki_core::filters::{
    enumerate_sasaki_filters_with_bound, find_valuations_with_bound, UpSet, DEFAULT_ENUM_BOUND,
};
use sasaki_core::hilbert3::{lemma, Subspace3, Vec3};
use sasaki_core::oml::{load_oml, FiniteOml};
use sasaki_core::Tolerances;

/// Largest deviation between a scanned and an analytic interval endpoint
/// that `lemma` accepts (at the default grid of 720 with refinement).
const LEMMA_DEVIATION_LIMIT: f64 = 1e-4;

/// Local-refinement rounds appended to every lemma scan.
const LEMMA_REFINE: usize = 3;

#[derive(Parser)]
#[command(
    name = "sasaki",
    version,
    about = "Sasaki filters on orthomodular lattices and collapse certificates for the R3 Hilbert lattice"
)]
struct Cli {
    /// Output format: readable text, or one stable JSON document.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a lattice file; prints the first violated law, if any.
    OmlCheck {
        /// Lattice file (JSON; schema in docs/formats.md).
        path: PathBuf,
    },
    /// Enumerate Sasaki filters/pre-valuations/valuations, or close a set.
    Filters(FiltersArgs),
    /// Scan pair inner products at an angle against the analytic interval.
    Lemma {
        /// Pair angle in degrees, strictly between 0 and 90.
        #[arg(long)]
        theta: f64,
        /// Grid points per parameter axis.
        #[arg(long, default_value_t = 720)]
        grid: usize,
    },
    /// Generate a collapse certificate for the rays through u and v.
    Collapse {
        /// First ray, as comma-separated coordinates x,y,z.
        #[arg(long, value_parser = parse_triple)]
        u: Vec3,
        /// Second ray, as comma-separated coordinates x,y,z.
        #[arg(long, value_parser = parse_triple)]
        v: Vec3,
        /// Also write the certificate document to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay a certificate file; exit 0 if accepted, 1 if rejected.
    Verify {
        /// Certificate file of either kind (pair or refutation).
        path: PathBuf,
    },
}

#[derive(Args)]
#[command(group(
    ArgGroup::new("mode").required(true).args(["enumerate", "closure", "prevals", "valuations"])
))]
struct FiltersArgs {
    /// Lattice file (JSON; schema in docs/formats.md).
    path: PathBuf,
    /// List every Sasaki filter.
    #[arg(long)]
    enumerate: bool,
    /// Compute the Sasaki closure of up(x1) ∪ … ∪ up(xk).
    #[arg(long, value_name = "X1,X2,...")]
    closure: Option<String>,
    /// List every pre-valuation, as the set of elements it maps to 1.
    #[arg(long)]
    prevals: bool,
    /// List every valuation; exits 1 if none exists.
    #[arg(long)]
    valuations: bool,
    /// Override the exhaustive-enumeration element bound.
    #[arg(long, default_value_t = DEFAULT_ENUM_BOUND)]
    bound: usize,
}

/// Exit status of a command that ran to completion: usage, I/O and parse
/// problems instead surface as errors and exit 2.
enum Outcome {
    Success,
    Rejection,
}

impl Outcome {
    fn code(&self) -> ExitCode {
        match self {
            Outcome::Success => ExitCode::SUCCESS,
            Outcome::Rejection => ExitCode::from(1),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => outcome.code(),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::OmlCheck { path } => cmd_oml_check(path, cli.format),
        Command::Filters(args) => cmd_filters(args, cli.format),
        Command::Lemma { theta, grid } => cmd_lemma(*theta, *grid, cli.format),
        Command::Collapse { u, v, out } => cmd_collapse(*u, *v, out.as_deref(), cli.format),
        Command::Verify { path } => cmd_verify(path, cli.format),
    }
}

/// The one degrees→radians conversion point for CLI-facing angles.
fn to_radians(degrees: f64) -> f64 {
    degrees.to_radians()
}

/// A real at 17 significant digits, matching the certificate format.
fn real(x: f64) -> String {
    format!("{x:.16e}")
}

/// A JSON string literal (quoted, escaped).
fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

/// A JSON array of name strings.
fn json_names(names: &[String]) -> String {
    serde_json::to_string(names).expect("name lists serialize")
}

/// Human presentation of an element set: `{a, b, 1}`.
fn braces(names: &[String]) -> String {
    format!("{{{}}}", names.join(", "))
}

fn parse_triple(text: &str) -> Result<Vec3, String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated coordinates, got '{text}'"));
    }
    let mut coords = [0.0f64; 3];
    for (slot, part) in coords.iter_mut().zip(&parts) {
        *slot = part.trim().parse().map_err(|e| format!("bad coordinate '{part}': {e}"))?;
    }
    Ok(Vec3::new(coords[0], coords[1], coords[2]))
}

fn cmd_oml_check(path: &Path, format: Format) -> anyhow::Result<Outcome> {
    let shown = path.display();
    match load_oml(path) {
        Ok(oml) => {
            match format {
                Format::Human => println!("{shown}: valid OML ({} elements)", oml.len()),
                Format::Machine => println!(
                    "{{\"format\": \"oml-check-report\", \"version\": 1, \"valid\": true, \
                     \"elements\": {}, \"violation\": null}}",
                    oml.len()
                ),
            }
            Ok(Outcome::Success)
        }
        Err(err) if err.is_malformed() => {
            Err(anyhow::Error::new(err).context(format!("cannot load {shown}")))
        }
        Err(err) => {
            match format {
                Format::Human => println!("{shown}: {err}"),
                Format::Machine => println!(
                    "{{\"format\": \"oml-check-report\", \"version\": 1, \"valid\": false, \
                     \"elements\": null, \"violation\": {}}}",
                    json_str(&err.to_string())
                ),
            }
            Ok(Outcome::Rejection)
        }
    }
}

fn cmd_filters(args: &FiltersArgs, format: Format) -> anyhow::Result<Outcome> {
    let shown = args.path.display();
    let oml = match load_oml(&args.path) {
        Ok(oml) => oml,
        Err(err) if err.is_malformed() => {
            return Err(anyhow::Error::new(err).context(format!("cannot load {shown}")))
        }
        Err(err) => {
            eprintln!("{shown}: {err}");
            return Ok(Outcome::Rejection);
        }
    };
    if let Some(names) = &args.closure {
        return filters_closure(&oml, names, format);
    }
    let filters = match enumerate_sasaki_filters_with_bound(&oml, args.bound) {
        Ok(iter) => iter,
        Err(too_large) => {
            eprintln!("{too_large}");
            return Ok(Outcome::Rejection);
        }
    };
    if args.enumerate {
        filters_enumerate(filters.collect(), format)
    } else if args.prevals {
        let lists: Vec<Vec<String>> = filters
            .filter(|f| f.is_proper())
            .map(|f| f.to_prevaluation().expect("proper filters have indicators").sorted_names())
            .collect();
        print_labelled_sets("prevals", "pre-valuations", &lists, format);
        Ok(Outcome::Success)
    } else {
        let valuations = find_valuations_with_bound(&oml, args.bound).expect("bound checked above");
        let lists: Vec<Vec<String>> = valuations.iter().map(|v| v.sorted_names()).collect();
        print_labelled_sets("valuations", "valuations", &lists, format);
        Ok(if lists.is_empty() { Outcome::Rejection } else { Outcome::Success })
    }
}

fn filters_closure(oml: &FiniteOml, names: &str, format: Format) -> anyhow::Result<Outcome> {
    let mut elems = Vec::new();
    for name in names.split(',') {
        let name = name.trim();
        elems.push(oml.element(name).ok_or_else(|| anyhow!("unknown element '{name}'"))?);
    }
    let filter = UpSet::upward_closure(oml, elems).expect("elements are interned").sasaki_closure();
    let members = filter.sorted_names();
    match format {
        Format::Human => {
            println!("closure: {}", braces(&members));
            println!("proper: {}", filter.is_proper());
        }
        Format::Machine => println!(
            "{{\"format\": \"filters-report\", \"version\": 1, \"mode\": \"closure\", \
             \"members\": {}, \"proper\": {}}}",
            json_names(&members),
            filter.is_proper()
        ),
    }
    Ok(Outcome::Success)
}

fn filters_enumerate(
    filters: Vec<sasaki_core::filters::SasakiFilter>,
    format: Format,
) -> anyhow::Result<Outcome> {
    let proper = filters.iter().filter(|f| f.is_proper()).count();
    match format {
        Format::Human => {
            for f in &filters {
                let suffix = if f.is_proper() { "" } else { " (improper)" };
                println!("{}{suffix}", braces(&f.sorted_names()));
            }
            println!("sasaki filters: {} ({proper} proper)", filters.len());
        }
        Format::Machine => {
            let mut doc = String::from(
                "{\"format\": \"filters-report\", \"version\": 1, \"mode\": \"enumerate\", \
                 \"filters\": [",
            );
            for (k, f) in filters.iter().enumerate() {
                if k > 0 {
                    doc.push_str(", ");
                }
                write!(
                    doc,
                    "{{\"members\": {}, \"proper\": {}}}",
                    json_names(&f.sorted_names()),
                    f.is_proper()
                )
                .expect("write to string");
            }
            write!(doc, "], \"count\": {}, \"proper_count\": {proper}}}", filters.len())
                .expect("write to string");
            println!("{doc}");
        }
    }
    Ok(Outcome::Success)
}

/// Shared list+count output for the prevals and valuations modes.
fn print_labelled_sets(mode: &str, label: &str, lists: &[Vec<String>], format: Format) {
    match format {
        Format::Human => {
            for names in lists {
                println!("{}", braces(names));
            }
            println!("{label}: {}", lists.len());
        }
        Format::Machine => {
            let mut doc = format!(
                "{{\"format\": \"filters-report\", \"version\": 1, \"mode\": \"{mode}\", \
                 \"{mode}\": ["
            );
            for (k, names) in lists.iter().enumerate() {
                if k > 0 {
                    doc.push_str(", ");
                }
                doc.push_str(&json_names(names));
            }
            write!(doc, "], \"count\": {}}}", lists.len()).expect("write to string");
            println!("{doc}");
        }
    }
}

fn cmd_lemma(theta_deg: f64, grid: usize, format: Format) -> anyhow::Result<Outcome> {
    if !(theta_deg.is_finite() && 0.0 < theta_deg && theta_deg < 90.0) {
        return Err(anyhow!("--theta must lie strictly between 0 and 90 degrees"));
    }
    if grid < 2 {
        return Err(anyhow!("--grid must be at least 2"));
    }
    let theta = to_radians(theta_deg);
    let (lo, hi) = lemma::lemma_interval(theta).expect("theta checked in range");
    let scan = lemma::scan_pair_dot(theta, grid, LEMMA_REFINE).expect("theta checked in range");
    let dev_min = (scan.min - lo).abs();
    let dev_max = (scan.max - hi).abs();
    let accepted = dev_min <= LEMMA_DEVIATION_LIMIT && dev_max <= LEMMA_DEVIATION_LIMIT;
    match format {
        Format::Human => {
            println!("theta: {theta_deg} degrees");
            println!("analytic interval: [{}, {}]", real(lo), real(hi));
            println!(
                "observed interval: [{}, {}] (grid {grid}, {LEMMA_REFINE} refinement rounds)",
                real(scan.min),
                real(scan.max)
            );
            println!("endpoint deviations: {dev_min:e}, {dev_max:e}");
            println!("within {LEMMA_DEVIATION_LIMIT:e}: {}", if accepted { "yes" } else { "no" });
        }
        Format::Machine => println!(
            "{{\"format\": \"lemma-report\", \"version\": 1, \"theta_degrees\": {}, \
             \"grid\": {grid}, \"analytic\": [{}, {}], \"observed\": [{}, {}], \
             \"deviation\": [{}, {}], \"accepted\": {accepted}}}",
            real(theta_deg),
            real(lo),
            real(hi),
            real(scan.min),
            real(scan.max),
            real(dev_min),
            real(dev_max)
        ),
    }
    Ok(if accepted { Outcome::Success } else { Outcome::Rejection })
}

/// |u·v| over the certificate's final pair.
fn final_residual(cert: &CollapseCertificate) -> f64 {
    let (u, v) = match cert.rounds.last() {
        Some(round) => (round[0].result_atom, round[1].result_atom),
        None => (cert.initial_atoms[0], cert.initial_atoms[1]),
    };
    u.dot(&v).abs()
}

fn cmd_collapse(u: Vec3, v: Vec3, out: Option<&Path>, format: Format) -> anyhow::Result<Outcome> {
    let tol = Tolerances::default();
    let a = Subspace3::line(u, &tol).map_err(|e| anyhow!("--u does not span a ray: {e}"))?;
    let b = Subspace3::line(v, &tol).map_err(|e| anyhow!("--v does not span a ray: {e}"))?;
    let cert = match collapse::collapse(&a, &b, &tol) {
        Ok(cert) => cert,
        Err(err @ CollapseError::RoundBudgetExceeded { .. }) => {
            eprintln!("{err}");
            return Ok(Outcome::Rejection);
        }
        // Coincident rays or degenerate geometry: unusable input.
        Err(err) => return Err(anyhow::Error::new(err)),
    };
    let report = collapse::verify_certificate(&cert, &tol);
    let text = write_pair_string(&cert);
    if let Some(path) = out {
        std::fs::write(path, &text).with_context(|| format!("cannot write {}", path.display()))?;
    }
    match format {
        Format::Human => {
            let angle_deg = a.atom_angle(&b).expect("inputs are atoms").to_degrees();
            println!("angle: {angle_deg:.6} degrees");
            println!("rounds: {}", cert.rounds.len());
            println!("final residual: {:e}", final_residual(&cert));
            println!("self-check: {}", if report.accepted { "accepted" } else { "rejected" });
            if let Some(path) = out {
                println!("wrote {}", path.display());
            }
        }
        Format::Machine => print!("{text}"),
    }
    Ok(if report.accepted { Outcome::Success } else { Outcome::Rejection })
}

fn cmd_verify(path: &Path, format: Format) -> anyhow::Result<Outcome> {
    let tol = Tolerances::default();
    let doc =
        load_certificate(path).with_context(|| format!("cannot load {}", path.display()))?;
    let (kind, report) = match &doc {
        CertificateDocument::Pair(cert) => ("pair", collapse::verify_certificate(cert, &tol)),
        CertificateDocument::Refutation(cert) => {
            ("refutation", collapse::verify_refutation(cert, &tol))
        }
    };
    match format {
        Format::Human => {
            println!("certificate kind: {kind}");
            match &report.failure {
                None => println!("accepted ({} steps checked)", report.steps_checked),
                Some(failure) => {
                    println!("rejected: {failure} ({} steps checked)", report.steps_checked)
                }
            }
        }
        Format::Machine => println!(
            "{{\"format\": \"verify-report\", \"version\": 1, \"kind\": \"{kind}\", \
             \"accepted\": {}, \"steps_checked\": {}, \"failure\": {}}}",
            report.accepted,
            report.steps_checked,
            report.failure.map_or("null".to_string(), |f| json_str(&f.to_string()))
        ),
    }
    Ok(if report.accepted { Outcome::Success } else { Outcome::Rejection })
}
