//! Command-line front end: argument parsing, dispatch to the search engine,
//! record output and exit codes.
//!
//! Exit codes: 0 success (or complete verification), 1 verification
//! incomplete, 2 usage or input error, 3 internal invariant violation.

pub mod record;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use pairsquare::prob::{closed_form, cube_sphere_volume, monte_carlo, ProbEstimate};
use pairsquare::quartic::{
    joint_square_points, lagrange_identity, quartic_square_points, verify_published_sets,
    QuarticCoeffs,
};
use pairsquare::search::{
    extend_set, near_solution_scan, search_n4, search_n5, search_triples_positive, solve_three,
    Anchor, ExtensionCandidate, SearchConfig,
};
use pairsquare::sets::{pairs_to_triples, parse_integer_list, verify_pairs, verify_triples};
use pairsquare::{Integer, SquareSet};

use record::{Format, Kind, ResultRecord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INCOMPLETE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "pairsquare",
    version,
    about = "Search and verify integer sets with square pair sums"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value = "tsv", global = true)]
    pub format: Format,
    /// Resume file for search4 / search5 / triples-search.
    #[arg(long, global = true)]
    pub checkpoint: Option<PathBuf>,
    /// Worker threads (0 = one per CPU). Output does not depend on it.
    #[arg(long, default_value_t = 0, global = true)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

fn parse_set(text: &str) -> Result<SquareSet, String> {
    text.parse::<SquareSet>().map_err(|e| e.to_string())
}

fn parse_integers<const N: usize>(text: &str) -> Result<[Integer; N], String> {
    let values = parse_integer_list(text).map_err(|e| e.to_string())?;
    let len = values.len();
    values
        .try_into()
        .map_err(|_| format!("expected {N} comma-separated integers, got {len}"))
}

fn parse_coeffs(text: &str) -> Result<QuarticCoeffs, String> {
    text.parse().map_err(|e: pairsquare::Error| e.to_string())
}

fn parse_anchor(text: &str) -> Result<Anchor, String> {
    let (i, j) = text
        .split_once(',')
        .ok_or_else(|| format!("anchor {text:?} is not i,j"))?;
    let index = |s: &str| -> Result<usize, String> {
        match s.trim().parse::<usize>() {
            Ok(v) if v >= 1 => Ok(v - 1),
            _ => Err(format!("anchor index {s:?} is not a positive integer")),
        }
    };
    let (i, j) = (index(i)?, index(j)?);
    if i >= j {
        return Err(format!("anchor {text:?} needs i < j"));
    }
    Ok(Anchor(i, j))
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub smax: u64,
    #[arg(long, default_value_t = 1)]
    pub smin: u64,
    #[arg(long)]
    pub positive: bool,
    #[arg(long, default_value_t = 5)]
    pub top: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every pair (or, with --triples, every triple) of a set.
    Verify {
        #[arg(long, value_parser = parse_set, allow_hyphen_values = true)]
        set: SquareSet,
        #[arg(long)]
        triples: bool,
    },
    /// The 3-set whose pair sums are p², q², r².
    Search3 {
        #[arg(long)]
        p: Integer,
        #[arg(long)]
        q: Integer,
        #[arg(long)]
        r: Integer,
    },
    /// Smallest pair-square 4-sets with sum in [smin, smax].
    Search4(SearchArgs),
    /// Smallest pair-square 5-sets whose four smallest elements sum into [smin, smax].
    Search5(SearchArgs),
    /// Smallest positive triple-square 5-sets from the 5-set pipeline.
    TriplesSearch(SearchArgs),
    /// Map a 5-set to its z-transform.
    Transform {
        #[arg(long, value_parser = parse_set, allow_hyphen_values = true)]
        set: SquareSet,
    },
    /// New elements whose sums with the anchor elements are square.
    Extend {
        #[arg(long, value_parser = parse_set, allow_hyphen_values = true)]
        set: SquareSet,
        #[arg(long)]
        require_pairs: Option<usize>,
        /// One-based element indices, e.g. 1,2.
        #[arg(long, value_parser = parse_anchor, conflicts_with = "all_anchors")]
        anchor: Option<Anchor>,
        #[arg(long)]
        all_anchors: bool,
    },
    /// Square values of a binary quartic, optionally jointly with a second one.
    Quartic {
        #[arg(long, value_parser = parse_coeffs, allow_hyphen_values = true)]
        coeffs: QuarticCoeffs,
        #[arg(long)]
        bound: u64,
        #[arg(long, value_parser = parse_coeffs, allow_hyphen_values = true)]
        second: Option<QuarticCoeffs>,
    },
    /// Three squares summing to s² from four integers t, u, v, w.
    Identity {
        #[arg(long, value_parser = parse_integers::<4>, allow_hyphen_values = true)]
        args: [Integer; 4],
    },
    /// Closed-form probability and an optional Monte Carlo check.
    Prob {
        #[arg(long)]
        mc: Option<u64>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Verify the built-in published record sets.
    Fixtures,
}

struct Outcome {
    records: Vec<ResultRecord>,
    code: i32,
}

impl Outcome {
    fn ok(records: Vec<ResultRecord>) -> Self {
        Outcome {
            records,
            code: EXIT_OK,
        }
    }
}

fn search_config(cli: &Cli, args: &SearchArgs) -> SearchConfig {
    SearchConfig {
        s_min: args.smin,
        positive_only: args.positive,
        top_k: args.top,
        threads: cli.threads,
        checkpoint: cli.checkpoint.clone(),
        ..SearchConfig::new(args.smax)
    }
}

fn pair_records(sets: &[SquareSet]) -> Vec<ResultRecord> {
    sets.iter()
        .map(|s| ResultRecord::with_pairs(Kind::Set, s, &verify_pairs(s)))
        .collect()
}

fn candidate_record(c: &ExtensionCandidate) -> ResultRecord {
    ResultRecord::with_pairs(Kind::Candidate, &c.extended, &c.report)
        .meta("new_element", &c.new_element)
        .meta("anchor", format!("{},{}", c.anchor.0 + 1, c.anchor.1 + 1))
        .meta("w", &c.w)
        .meta("y", &c.y)
}

fn prob_record(name: &str, estimate: &ProbEstimate) -> ResultRecord {
    ResultRecord::empty(Kind::Prob)
        .meta("name", name)
        .meta("value", format!("{:.12e}", estimate.value))
        .meta("std_error", format!("{:.6e}", estimate.std_error))
        .meta("samples", estimate.samples)
}

fn execute(cli: &Cli) -> pairsquare::Result<Outcome> {
    Ok(match &cli.command {
        Command::Verify {
            set,
            triples: false,
        } => {
            let report = verify_pairs(set);
            let code = if report.is_complete() {
                EXIT_OK
            } else {
                EXIT_INCOMPLETE
            };
            let record = ResultRecord::with_pairs(Kind::Report, set, &report)
                .meta("complete", report.is_complete());
            Outcome {
                records: vec![record],
                code,
            }
        }
        Command::Verify { set, triples: true } => {
            let report = verify_triples(set)?;
            let code = if report.is_complete() {
                EXIT_OK
            } else {
                EXIT_INCOMPLETE
            };
            let record = ResultRecord::with_triples(Kind::Report, set, &report)
                .meta("complete", report.is_complete());
            Outcome {
                records: vec![record],
                code,
            }
        }
        Command::Search3 { p, q, r } => Outcome::ok(pair_records(&[solve_three(p, q, r)?])),
        Command::Search4(args) => {
            let sets = search_n4(&search_config(cli, args))?;
            Outcome::ok(pair_records(&sets))
        }
        Command::Search5(args) => {
            let sets = search_n5(&search_config(cli, args))?;
            Outcome::ok(pair_records(&sets))
        }
        Command::TriplesSearch(args) => {
            let sets = search_triples_positive(&search_config(cli, args))?;
            let records = sets
                .iter()
                .map(|s| {
                    Ok(ResultRecord::with_triples(
                        Kind::Set,
                        s,
                        &verify_triples(s)?,
                    ))
                })
                .collect::<pairsquare::Result<_>>()?;
            Outcome::ok(records)
        }
        Command::Transform { set } => {
            let z = pairs_to_triples(set)?;
            let scale = if (set.sum() % 3u32) == Integer::from(0) {
                1
            } else {
                9
            };
            let record = ResultRecord::with_triples(Kind::Set, &z, &verify_triples(&z)?)
                .meta("source", set)
                .meta("scale", scale);
            Outcome::ok(vec![record])
        }
        Command::Extend {
            set,
            require_pairs,
            anchor,
            all_anchors,
        } => {
            let candidates = if *all_anchors {
                let total = (set.len() + 1) * set.len() / 2;
                near_solution_scan(std::slice::from_ref(set), require_pairs.unwrap_or(total))?
            } else {
                extend_set(set, anchor.unwrap_or_default(), *require_pairs)?
            };
            Outcome::ok(candidates.iter().map(candidate_record).collect())
        }
        Command::Quartic {
            coeffs,
            bound,
            second,
        } => {
            let point_record = |g: u64, h: u64, root: &Integer| {
                ResultRecord::empty(Kind::Report)
                    .meta("coeffs", coeffs)
                    .meta("g", g)
                    .meta("h", h)
                    .meta("f_root", root)
            };
            let records = match second {
                None => quartic_square_points(coeffs, *bound)?
                    .iter()
                    .map(|p| point_record(p.g, p.h, &p.f_root))
                    .collect(),
                Some(second) => joint_square_points(coeffs, second, *bound)?
                    .iter()
                    .map(|(p, root2)| {
                        point_record(p.g, p.h, &p.f_root)
                            .meta("second", second)
                            .meta("f2_root", root2)
                    })
                    .collect(),
            };
            Outcome::ok(records)
        }
        Command::Identity { args: [t, u, v, w] } => {
            let split = lagrange_identity(t, u, v, w);
            let [a, b, c] = &split.parts;
            let record = ResultRecord::empty(Kind::Report)
                .meta("args", format!("{t},{u},{v},{w}"))
                .meta("s", &split.s)
                .meta("parts", format!("{a},{b},{c}"));
            Outcome::ok(vec![record])
        }
        Command::Prob { mc, seed } => {
            let mut records = vec![
                prob_record(
                    "closed_form",
                    &ProbEstimate {
                        value: closed_form(),
                        std_error: 0.0,
                        samples: 0,
                    },
                ),
                prob_record(
                    "cube_sphere_volume",
                    &ProbEstimate {
                        value: cube_sphere_volume(),
                        std_error: 0.0,
                        samples: 0,
                    },
                ),
            ];
            if let Some(samples) = mc {
                let result = monte_carlo(*samples, *seed)?;
                for (name, estimate) in [
                    ("mc_ordered", result.ordered),
                    ("mc_symmetric", result.symmetric),
                    ("mc_inside", result.inside),
                ] {
                    records.push(prob_record(name, &estimate).meta("seed", seed));
                }
            }
            Outcome::ok(records)
        }
        Command::Fixtures => {
            let outcomes = verify_published_sets();
            let code = if outcomes.iter().all(|o| o.passed()) {
                EXIT_OK
            } else {
                EXIT_INCOMPLETE
            };
            let records = outcomes
                .iter()
                .map(|o| {
                    let mut record =
                        ResultRecord::with_pairs(Kind::Report, &o.fixture.set, &o.report)
                            .meta("expect", o.fixture.expect_pairs)
                            .meta("passed", o.passed());
                    if o.fixture.square_sum {
                        record = record.meta("sum_square", o.sum_root.is_some());
                    }
                    if let Some(reason) = o.failure() {
                        record = record.meta("failure", reason);
                    }
                    record
                })
                .collect();
            Outcome { records, code }
        }
    })
}

/// Search subcommands must only ever emit complete sets.
fn requires_complete(command: &Command) -> bool {
    matches!(
        command,
        Command::Search3 { .. }
            | Command::Search4(_)
            | Command::Search5(_)
            | Command::TriplesSearch(_)
    )
}

/// Runs the parsed command, writing records to `out` and diagnostics to
/// `err`; returns the exit code.
pub fn run_cli(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "error: thread pool: {e}");
            return EXIT_USAGE;
        }
    };
    let outcome = match pool.install(|| execute(cli)) {
        Ok(outcome) => outcome,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    for record in &outcome.records {
        let broken = record.check_invariants().err().or_else(|| {
            (requires_complete(&cli.command) && record.square_pairs != record.total_pairs)
                .then(|| format!("incomplete set {:?} emitted", record.elements))
        });
        if let Some(reason) = broken {
            let _ = writeln!(err, "internal invariant violated: {reason}");
            return EXIT_INVARIANT;
        }
    }
    for record in &outcome.records {
        if let Err(e) = record.write(cli.format, out) {
            let _ = writeln!(err, "error: writing output: {e}");
            return EXIT_USAGE;
        }
    }
    outcome.code
}

/// Parses `argv` (program name first) and runs it.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => run_cli(&cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            code
        }
    }
}
