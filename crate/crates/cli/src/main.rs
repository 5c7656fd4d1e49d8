//! Batch front end: every computation is a subcommand that reads JSON files
//! and prints one JSON report to standard output.
//!
//! Exit codes: 0 on success, 2 when an operation's preconditions fail
//! (unasserted hypotheses, bad reduction, wrong residue point counts), 1 for
//! malformed input or usage errors.

mod input;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hyperbound_core::bounds::{self, Hypotheses};
use hyperbound_core::family::{build_family_member, verify_family_member};
use hyperbound_core::finite_fields::{self, FFContext};
use hyperbound_core::poly::IntPoly;
use hyperbound_core::valued_series::newton_polygon;
use hyperbound_core::{polytopes, primes_up_to, BigInt};

use output::{rat, VERSION};

#[derive(Parser)]
#[command(name = "hyperbound")]
#[command(version)]
#[command(about = "Exact conditional bounds on low-degree points of odd hyperelliptic curves")]
struct Cli {
    /// Indent the JSON output
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Commands,
}

#[derive(Subcommand)]
enum Commands {
    /// Curve inspection, point counting, quadratic-point search
    #[command(subcommand)]
    Curve(CurveCmd),
    /// Mixed volumes of rational polytopes
    #[command(subcommand)]
    Polytope(PolytopeCmd),
    /// Newton polygons of valued power series
    #[command(subcommand)]
    Series(SeriesCmd),
    /// Conditional point-count bounds
    #[command(subcommand)]
    Bound(BoundCmd),
    /// Congruence-family construction and verification
    #[command(subcommand)]
    Family(FamilyCmd),
}

#[derive(Subcommand)]
enum CurveCmd {
    /// Height, minimality, discriminant, and good primes of a curve
    Info {
        file: PathBuf,
        /// List good primes up to this bound
        #[arg(long, default_value_t = 50)]
        prime_bound: u64,
    },
    /// Count points on the reduction over the field of order p^m
    Count {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        m: usize,
        file: PathBuf,
    },
    /// Search for quadratic points of small height
    SearchQuadratic {
        /// Cap on |D| and the numerators and denominators of x
        #[arg(long)]
        bound: u32,
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum PolytopeCmd {
    /// Mixed volume of the polytopes in the file (one per dimension)
    Mv { file: PathBuf },
}

#[derive(Subcommand)]
enum SeriesCmd {
    /// Newton polygon of a valued series over the weight region w >= m
    Newton {
        /// Componentwise lower bound on the weight vector, as a rational
        #[arg(long)]
        m: String,
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum BoundCmd {
    /// Quadratic-point bound for a curve meeting the mod-3 conditions
    Quadratic {
        file: PathBuf,
        /// Hypotheses to assert, comma-separated: rank1,simple,dagger
        #[arg(long, value_delimiter = ',')]
        assume: Vec<String>,
    },
    /// Cubic-point bound for a curve meeting the mod-3 conditions
    Cubic {
        file: PathBuf,
        /// Hypotheses to assert, comma-separated: rank1,simple,dagger
        #[arg(long, value_delimiter = ',')]
        assume: Vec<String>,
    },
    /// Degree-d bound at the smallest admissible prime
    Generic {
        #[arg(long)]
        d: u32,
        /// Reduction prime (default: smallest prime above d^2 + 3)
        #[arg(long)]
        p: Option<u64>,
        file: PathBuf,
        /// Hypotheses to assert, comma-separated: rank1,simple,dagger
        #[arg(long, value_delimiter = ',')]
        assume: Vec<String>,
    },
}

#[derive(Subcommand)]
enum FamilyCmd {
    /// Build and verify the family member for each genus in a range
    Verify {
        #[arg(long)]
        g_min: u64,
        #[arg(long)]
        g_max: u64,
    },
}

/// A failed run: exit code plus the message for standard error.
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: String) -> Self {
        Failure { code: 1, message }
    }

    fn precondition(message: String) -> Self {
        Failure { code: 2, message }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version requests are successes; everything else is a
            // usage error and reports on standard error
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(json) => {
            // a closed pipe (output into head, say) is not an error
            use std::io::Write;
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            let _ = writeln!(lock, "{json}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn to_json<T: serde::Serialize>(cli: &Cli, value: &T) -> Result<String, Failure> {
    let out = if cli.pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    };
    out.map_err(|e| Failure::input(format!("cannot serialize report: {e}")))
}

fn run(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Commands::Curve(CurveCmd::Info { file, prime_bound }) => {
            let report = curve_info(file, *prime_bound)?;
            to_json(cli, &report)
        }
        Commands::Curve(CurveCmd::Count { p, m, file }) => {
            let report = curve_count(file, *p, *m)?;
            to_json(cli, &report)
        }
        Commands::Curve(CurveCmd::SearchQuadratic { bound, file }) => {
            let curve = input::load_curve(file)?;
            let points = curve.search_quadratic_points(*bound);
            let report = output::QuadraticSearch {
                command: "curve search-quadratic",
                version: VERSION,
                file: file.display().to_string(),
                bound: *bound,
                count: points.len(),
                points: points
                    .iter()
                    .map(output::QuadraticPointJson::from_point)
                    .collect(),
            };
            to_json(cli, &report)
        }
        Commands::Polytope(PolytopeCmd::Mv { file }) => {
            let report = polytope_mv(file)?;
            to_json(cli, &report)
        }
        Commands::Series(SeriesCmd::Newton { m, file }) => {
            let report = series_newton(file, m)?;
            to_json(cli, &report)
        }
        Commands::Bound(BoundCmd::Quadratic { file, assume }) => {
            let curve = input::load_curve(file)?;
            let hyp = parse_assumptions(assume, 3)?;
            let report = bounds::quadratic_pipeline(&curve, &hyp)
                .map_err(|e| Failure::precondition(e.to_string()))?;
            let out = output::Bound::from_report(
                "bound quadratic",
                file.display().to_string(),
                &report,
            );
            to_json(cli, &out)
        }
        Commands::Bound(BoundCmd::Cubic { file, assume }) => {
            let curve = input::load_curve(file)?;
            let hyp = parse_assumptions(assume, 3)?;
            let report = bounds::cubic_pipeline(&curve, &hyp)
                .map_err(|e| Failure::precondition(e.to_string()))?;
            let out =
                output::Bound::from_report("bound cubic", file.display().to_string(), &report);
            to_json(cli, &out)
        }
        Commands::Bound(BoundCmd::Generic { d, p, file, assume }) => {
            let curve = input::load_curve(file)?;
            let p = match p {
                Some(p) => *p,
                None => bounds::bertrand_prime(*d)
                    .map_err(|e| Failure::precondition(e.to_string()))?,
            };
            let hyp = parse_assumptions(assume, p)?;
            let report = bounds::generic_pipeline(*d, &curve, &hyp)
                .map_err(|e| Failure::precondition(e.to_string()))?;
            let out =
                output::Bound::from_report("bound generic", file.display().to_string(), &report);
            to_json(cli, &out)
        }
        Commands::Family(FamilyCmd::Verify { g_min, g_max }) => {
            let report = family_verify(*g_min, *g_max)?;
            to_json(cli, &report)
        }
    }
}

fn parse_assumptions(tokens: &[String], p: u64) -> Result<Hypotheses, Failure> {
    let mut hyp = Hypotheses {
        rank_le_1: false,
        geometrically_simple: false,
        condition_dagger: false,
        good_reduction_at: p,
    };
    for token in tokens {
        match token.trim() {
            "rank1" => hyp.rank_le_1 = true,
            "simple" => hyp.geometrically_simple = true,
            "dagger" => hyp.condition_dagger = true,
            other => {
                return Err(Failure::input(format!(
                    "unknown assumption {other:?}; expected rank1, simple, dagger"
                )))
            }
        }
    }
    Ok(hyp)
}

fn curve_info(file: &Path, prime_bound: u64) -> Result<output::CurveInfo, Failure> {
    let curve = input::load_curve(file)?;
    let (height, witness) = if curve.depressed() {
        let height = curve
            .height()
            .map_err(|e| Failure::precondition(e.to_string()))?;
        let witness = curve
            .minimality_witness()
            .map_err(|e| Failure::precondition(e.to_string()))?;
        (Some(height.display()), Some(witness))
    } else {
        (None, None)
    };
    let mut good_primes = Vec::new();
    for p in primes_up_to(prime_bound) {
        if p == 2 {
            continue;
        }
        if curve
            .good_reduction(p)
            .map_err(|e| Failure::precondition(e.to_string()))?
        {
            good_primes.push(p);
        }
    }
    Ok(output::CurveInfo {
        command: "curve info",
        version: VERSION,
        file: file.display().to_string(),
        equation: output::equation_string(curve.f()),
        genus: curve.genus(),
        discriminant: curve.discriminant().to_string(),
        depressed: curve.depressed(),
        height,
        minimal: witness.as_ref().map(|w| w.is_none()),
        minimality_witness: witness.flatten(),
        prime_bound,
        good_primes,
    })
}

fn curve_count(file: &Path, p: u64, m: usize) -> Result<output::CurveCount, Failure> {
    let curve = input::load_curve(file)?;
    let fbar = curve
        .reduce_mod(p)
        .map_err(|e| Failure::precondition(e.to_string()))?;
    let ctx = FFContext::new(p, m).map_err(|e| Failure::precondition(e.to_string()))?;
    let points = finite_fields::curve_points(&fbar, &ctx)
        .map_err(|e| Failure::precondition(e.to_string()))?;
    Ok(output::CurveCount {
        command: "curve count",
        version: VERSION,
        file: file.display().to_string(),
        p,
        m,
        field_order: ctx.order(),
        count: points.len() as u64,
    })
}

fn polytope_mv(file: &Path) -> Result<output::MixedVolume, Failure> {
    let lists = input::load_polytopes(file)?;
    if lists.is_empty() {
        return Err(Failure::input(String::from(
            "mixed volume needs at least one polytope",
        )));
    }
    let dim = lists
        .first()
        .and_then(|poly| poly.first())
        .map(Vec::len)
        .ok_or_else(|| Failure::input(String::from("first polytope has no points")))?;
    let zs = lists
        .into_iter()
        .map(|points| polytopes::Polytope::convex_hull(dim, points))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::input(e.to_string()))?;
    let mv = polytopes::mixed_volume(&zs).map_err(|e| Failure::precondition(e.to_string()))?;
    Ok(output::MixedVolume {
        command: "polytope mv",
        version: VERSION,
        file: file.display().to_string(),
        dim,
        polytopes: zs.len(),
        mixed_volume: rat(&mv),
    })
}

fn series_newton(file: &Path, m: &str) -> Result<output::NewtonPolygon, Failure> {
    let series = input::load_series(file)?;
    let m = input::parse_rational(m)?;
    let polygon =
        newton_polygon(&series, &m).map_err(|e| Failure::precondition(e.to_string()))?;
    Ok(output::NewtonPolygon {
        command: "series newton",
        version: VERSION,
        file: file.display().to_string(),
        m: rat(&m),
        newton_polygon: polygon
            .map(|poly| poly.vertices().iter().map(|v| v.iter().map(rat).collect()).collect()),
    })
}

fn family_verify(g_min: u64, g_max: u64) -> Result<output::FamilySweep, Failure> {
    if g_min > g_max {
        return Err(Failure::input(format!(
            "empty genus range: {g_min} > {g_max}"
        )));
    }
    let mut records = Vec::new();
    for g in g_min..=g_max {
        let member =
            build_family_member(g).map_err(|e| Failure::precondition(e.to_string()))?;
        let verification = verify_family_member(&member);
        let f = IntPoly::from_descending(
            member.f_descending().iter().map(|&c| BigInt::from(c)).collect(),
        );
        records.push(output::FamilyRecord::from_parts(
            output::equation_string(&f),
            &verification,
        ));
    }
    Ok(output::FamilySweep {
        command: "family verify",
        version: VERSION,
        g_min,
        g_max,
        all_passed: records.iter().all(|r| r.passed),
        records,
    })
}
