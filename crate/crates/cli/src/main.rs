//! Command-line frontend: every analysis is a batch subcommand with
//! deterministic JSONL/CSV/TSV output.
//!
//! Exit codes: 0 on success, 2 on bad input or precondition violations,
//! 1 on internal assertion failures.

use std::io::Write;
use std::panic;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use alphacf::bisection::bisection_enumerate;
use alphacf::coverage::{coverage, decimal_string, enclosure_midpoint_f64};
use alphacf::dynamics::{
    encode_orbit, match_report, match_report_at, matching_exponents, pseudocenter_orbit_table,
};
use alphacf::entropy::entropy_scan;
use alphacf::intervals::{doubling_chain, interval_of, is_maximal, maximal_container, ParamRange};
use alphacf::quadratic::{rational_from_decimal, rational_from_str, rational_to_string};
use alphacf::report::{
    coverage_csv_row, entropy_csv_row, orbit_tsv_row, rational_with_decimal, IntervalRecord,
    COVERAGE_CSV_HEADER, ENTROPY_CSV_HEADER, ORBIT_TSV_HEADER,
};
use alphacf::strings::{cf_expand, surd_of_periodic, PQString};
use alphacf::{BigRational, Error, QuadraticNumber};

#[derive(Parser)]
#[command(
    name = "alphacf",
    about = "Exact quadratic-interval enumeration and matching analysis for alpha-continued fractions",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Jsonl,
    Csv,
    Tsv,
    Human,
}

#[derive(Args)]
struct RangeArgs {
    /// Lower range bound (exclusive), as p/q or a decimal
    lo: Option<String>,
    /// Upper range bound (inclusive), as p/q or a decimal
    hi: Option<String>,
    /// Range bounds as an alternative to the positional pair
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], conflicts_with_all = ["lo", "hi"])]
    range: Option<Vec<String>>,
}

impl RangeArgs {
    fn resolve(&self) -> Result<ParamRange, Error> {
        let (lo, hi) = match (&self.lo, &self.hi, &self.range) {
            (Some(lo), Some(hi), None) => (lo.clone(), hi.clone()),
            (None, None, Some(pair)) if pair.len() == 2 => (pair[0].clone(), pair[1].clone()),
            _ => {
                return Err(Error::Domain(
                    "supply a range either as two positional bounds or via --range".into(),
                ))
            }
        };
        ParamRange::from_rationals(&parse_bound(&lo)?, &parse_bound(&hi)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print both continued-fraction expansions of a rational in (0, 1]
    Expand {
        /// Rational as p/q or a digit string [a1,a2,...]
        r: String,
    },
    /// Print the quadratic interval generated by a rational
    Interval { r: String },
    /// Decide maximality and print the maximal container
    Maximal { r: String },
    /// Enumerate maximal intervals meeting a range, as JSONL records
    Enumerate {
        #[command(flatten)]
        range: RangeArgs,
        /// Stop bisecting once gap pseudocenter denominators exceed this bound
        #[arg(long, default_value_t = 100)]
        den_max: u64,
        #[arg(long, value_enum, default_value_t = Format::Jsonl)]
        format: Format,
        /// Write to this file instead of stdout
        #[arg(long)]
        output: Option<std::path::PathBuf>,
    },
    /// Coverage table over a sweep of denominator bounds, as CSV
    Coverage {
        #[command(flatten)]
        range: RangeArgs,
        /// Largest denominator bound of the sweep
        #[arg(long, default_value_t = 1000)]
        den_max: u64,
        /// Certified decimal digits of the covered length
        #[arg(long, default_value_t = 6)]
        precision: u32,
        #[arg(long)]
        output: Option<std::path::PathBuf>,
    },
    /// Matching report for a maximal rational, optionally at sample points
    Match {
        r: String,
        /// Extra parameters to verify, as p/q, [a1,...], or per[a1,...]
        samples: Vec<String>,
        /// Also print the exact orbit tables of the pseudocenter as TSV
        #[arg(long)]
        trace: bool,
    },
    /// Exact orbit trace of a point under one parameter's map, as TSV
    Orbit {
        /// Parameter in (0, 1], as p/q, [a1,...], or per[a1,...]
        alpha: String,
        /// Starting point in [alpha-1, alpha]
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        #[arg(long)]
        output: Option<std::path::PathBuf>,
    },
    /// Period-doubling chain from a maximal rational with a limit bracket
    Double {
        r: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Seeded Birkhoff entropy estimates over a parameter grid, as CSV
    EntropyScan {
        /// Lower grid bound (decimal)
        lo: String,
        /// Upper grid bound (decimal)
        hi: String,
        #[arg(long, default_value_t = 30)]
        steps: u32,
        /// Recorded iterations per orbit
        #[arg(long, default_value_t = 100_000)]
        iters: u64,
        #[arg(long, default_value_t = 1_000)]
        burn_in: u64,
        /// Independent orbits per grid point
        #[arg(long, default_value_t = 8)]
        orbits: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<std::path::PathBuf>,
    },
}

/// Parses a rational given as `p/q`, an integer, or a digit string.
fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let s = s.trim();
    if s.starts_with('[') {
        let digits: PQString = s.parse()?;
        Ok(alphacf::cf_value(&digits))
    } else {
        rational_from_str(s)
    }
}

/// Parses an exact parameter: `p/q`, `[a1,...]`, or a periodic surd
/// `per[a1,...]`.
fn parse_parameter(s: &str) -> Result<QuadraticNumber, Error> {
    let s = s.trim();
    if let Some(body) = s.strip_prefix("per") {
        let digits: PQString = body.parse()?;
        surd_of_periodic(&digits)
    } else if s.starts_with('(') {
        s.parse()
    } else {
        Ok(QuadraticNumber::from_rational(&parse_rational(s)?))
    }
}

/// Range bounds accept exact rationals or decimals.
fn parse_bound(s: &str) -> Result<BigRational, Error> {
    if s.contains('.') {
        rational_from_decimal(s)
    } else {
        parse_rational(s)
    }
}

struct Output {
    target: Option<std::fs::File>,
}

impl Output {
    fn new(path: &Option<std::path::PathBuf>) -> Result<Self, Error> {
        let target = match path {
            Some(p) => Some(
                std::fs::File::create(p)
                    .map_err(|e| Error::Domain(format!("cannot create {}: {e}", p.display())))?,
            ),
            None => None,
        };
        Ok(Output { target })
    }

    fn line(&mut self, s: &str) -> Result<(), Error> {
        match &mut self.target {
            Some(f) => writeln!(f, "{s}").map_err(|e| Error::Domain(format!("write failed: {e}"))),
            None => {
                println!("{s}");
                Ok(())
            }
        }
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Expand { r } => {
            let r = parse_rational(&r)?;
            let tw = cf_expand(&r)?;
            println!("rational: {}", rational_to_string(&r));
            if tw.is_unit() {
                println!("expansion: {} (the unit has a single expansion)", tw.odd());
            } else {
                println!("even: {}", tw.even());
                println!("odd:  {}", tw.odd());
            }
        }
        Command::Interval { r } => {
            let r = parse_rational(&r)?;
            let iv = interval_of(&r)?;
            println!("pseudocenter: {}", rational_with_decimal(&r, 6));
            println!("even: {}   odd: {}", iv.even_string(), iv.odd_string());
            println!(
                "left:  {} = [0; {}] (~{:.6})",
                iv.left(),
                iv.odd_string().periodic_notation(),
                iv.left().to_f64()
            );
            if iv.is_unit_interval() {
                println!("right: 1 (right-closed)");
            } else {
                println!(
                    "right: {} = [0; {}] (~{:.6})",
                    iv.right(),
                    iv.even_string().periodic_notation(),
                    iv.right().to_f64()
                );
            }
            println!("maximal: {}", is_maximal(&r)?);
        }
        Command::Maximal { r } => {
            let r = parse_rational(&r)?;
            let verdict = is_maximal(&r)?;
            println!("maximal: {verdict}");
            let container = maximal_container(&r)?;
            println!(
                "container: interval of {} = ({} , {}{}",
                rational_to_string(container.pseudocenter()),
                container.left(),
                container.right(),
                if container.is_unit_interval() { "]" } else { ")" }
            );
        }
        Command::Enumerate { range, den_max, format, output } => {
            let range = range.resolve()?;
            let outcome = bisection_enumerate(&range, den_max)?;
            let mut out = Output::new(&output)?;
            for iv in &outcome.intervals {
                match format {
                    Format::Jsonl => out.line(&IntervalRecord::build(iv)?.to_jsonl()?)?,
                    _ => {
                        let exps = matching_exponents(iv.pseudocenter())?;
                        out.line(&format!(
                            "{}  [{} , {}]  N={} M={} class={}",
                            rational_to_string(iv.pseudocenter()),
                            iv.left(),
                            iv.right(),
                            exps.n,
                            exps.m,
                            alphacf::classify_entropy(&exps)
                        ))?;
                    }
                }
            }
        }
        Command::Coverage { range, den_max, precision, output } => {
            let range = range.resolve()?;
            let mut out = Output::new(&output)?;
            out.line(COVERAGE_CSV_HEADER)?;
            let mut bounds = vec![];
            let mut d = 10u64;
            while d < den_max {
                bounds.push(d);
                d = d.saturating_mul(10);
            }
            bounds.push(den_max);
            for d in bounds {
                let row = coverage(&range, d, precision)?;
                out.line(&coverage_csv_row(&row, precision))?;
            }
        }
        Command::Match { r, samples, trace } => {
            let r = parse_rational(&r)?;
            let report = match_report(&r)?;
            println!(
                "r: {}  N={} M={} class={}",
                rational_to_string(&r),
                report.exponents.n,
                report.exponents.m,
                report.entropy_class
            );
            println!(
                "algebraic: {}  orbit: {}  conditions: c1={} c2={} c3={}",
                report.algebraic_ok,
                report.orbit_match_ok,
                report.nn.c1,
                report.nn.c2,
                report.nn.c3
            );
            for s in &samples {
                let alpha = parse_parameter(s)?;
                let rep = match_report_at(&r, &alpha)?;
                println!(
                    "sample {alpha}: algebraic={} orbit={} c1={} c2={} c3={}",
                    rep.algebraic_ok, rep.orbit_match_ok, rep.nn.c1, rep.nn.c2, rep.nn.c3
                );
            }
            if trace {
                let (table_a, table_b) = pseudocenter_orbit_table(&r)?;
                println!("orbit of the pseudocenter:");
                println!("{ORBIT_TSV_HEADER}");
                for (i, step) in table_a.iter().enumerate() {
                    println!("{}", orbit_tsv_row(i + 1, step));
                }
                println!("orbit of the pseudocenter minus one:");
                println!("{ORBIT_TSV_HEADER}");
                for (i, step) in table_b.iter().enumerate() {
                    println!("{}", orbit_tsv_row(i + 1, step));
                }
            }
        }
        Command::Orbit { alpha, x, steps, output } => {
            let alpha = parse_parameter(&alpha)?;
            let x = parse_parameter(&x)?;
            let orbit = encode_orbit(&alpha, &x, steps)?;
            let mut out = Output::new(&output)?;
            out.line(ORBIT_TSV_HEADER)?;
            for (i, step) in orbit.iter().enumerate() {
                out.line(&orbit_tsv_row(i + 1, step))?;
            }
        }
        Command::Double { r, depth } => {
            let r = parse_rational(&r)?;
            let chain = doubling_chain(&r, depth)?;
            for iv in &chain.intervals {
                println!(
                    "{}  [{} , {}]",
                    rational_with_decimal(iv.pseudocenter(), 8),
                    iv.left(),
                    iv.right()
                );
            }
            let width = &chain.limit_hi - &chain.limit_lo;
            println!(
                "limit bracket: ({} , {})  width {}",
                rational_to_string(&chain.limit_lo),
                rational_to_string(&chain.limit_hi),
                decimal_string(&width, 12)
            );
            println!("limit ~ {:.10}", enclosure_midpoint_f64(&chain.limit_lo, &chain.limit_hi));
        }
        Command::EntropyScan { lo, hi, steps, iters, burn_in, orbits, seed, output } => {
            let lo: f64 =
                lo.parse().map_err(|_| Error::Domain(format!("bad decimal bound {lo:?}")))?;
            let hi: f64 =
                hi.parse().map_err(|_| Error::Domain(format!("bad decimal bound {hi:?}")))?;
            let rows = entropy_scan(lo, hi, steps, iters, burn_in, orbits, seed)?;
            let mut out = Output::new(&output)?;
            out.line(ENTROPY_CSV_HEADER)?;
            for row in &rows {
                out.line(&entropy_csv_row(row))?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = panic::catch_unwind(panic::AssertUnwindSafe(|| run(cli)));
    match outcome {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::Internal(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
        Err(_) => {
            eprintln!("error: internal assertion failure");
            ExitCode::from(1)
        }
    }
}
