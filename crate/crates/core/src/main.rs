//! Command-line frontend: generation, membership, location, description,
//! and the verification suite.
//!
//! Exit codes are a stable contract: 0 for success / member / suite pass,
//! 1 for non-member / exclusion / suite failure, 2 for usage and domain
//! errors.

use std::io::{BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use brocot::verifier::{self, CheckReport};
use brocot::{describe_tree, is_member, locate, Fraction, LocateResult, ReductionScheme, TreeSpec};

/// Row sizes grow as 3^depth; row 20 alone holds ~3.5e9 entries.
const DEPTH_CAP: usize = 20;
/// Beyond this, rows are large enough that callers must opt in to
/// unbuffered streaming.
const BUFFERED_DEPTH_LIMIT: usize = 12;

#[derive(Parser)]
#[command(
    name = "brocot",
    version,
    about = "Weighted-mediant Stern-Brocot trees with pluggable reduction schemes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print rows 0 through --depth of a tree
    Generate(GenerateArgs),
    /// Decide whether a rational can ever appear in a tree (exit 0 yes, 1 no)
    Member(MemberArgs),
    /// Find a rational's row and position by interval descent, or certify
    /// that it never appears (exit 0 found, 1 otherwise)
    Locate(LocateArgs),
    /// Explain exactly which rationals a tree admits
    Describe(DescribeArgs),
    /// Run machine checks of the structural laws (exit 0 pass, 1 fail)
    Verify(VerifyArgs),
}

#[derive(Args)]
struct StartArgs {
    /// Lower starting term, written "p/q"
    #[arg(long)]
    lo: Fraction,
    /// Upper starting term, written "p/q" ("1/0" stands for infinity)
    #[arg(long)]
    hi: Fraction,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RowFormat {
    Plain,
    Json,
    Latex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Plain,
    Json,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    start: StartArgs,
    /// Mediant weight: each pair receives k - 1 mediants
    #[arg(long, default_value_t = 3)]
    k: u32,
    /// Reduction scheme: uniform | none | from-row:<n> | coin:<seed>
    #[arg(long, default_value_t = ReductionScheme::uniform())]
    scheme: ReductionScheme,
    /// Deepest row to print
    #[arg(long)]
    depth: usize,
    #[arg(long, value_enum, default_value_t = RowFormat::Plain)]
    format: RowFormat,
    /// Acknowledge unbuffered output; required for depths beyond 12
    #[arg(long)]
    stream: bool,
}

#[derive(Args)]
struct MemberArgs {
    #[command(flatten)]
    start: StartArgs,
    #[arg(long, value_enum, default_value_t = ReportFormat::Plain)]
    format: ReportFormat,
    /// Rational to test, written "p/q"
    x: Fraction,
}

#[derive(Args)]
struct LocateArgs {
    #[command(flatten)]
    start: StartArgs,
    /// Mediant weight (descent is defined for weight 3)
    #[arg(long, default_value_t = 3)]
    k: u32,
    /// Reduction scheme: uniform | none | from-row:<n> | coin:<seed>
    #[arg(long, default_value_t = ReductionScheme::uniform())]
    scheme: ReductionScheme,
    /// Deepest row to descend to before giving up
    #[arg(long, default_value_t = 64)]
    max_depth: usize,
    #[arg(long, value_enum, default_value_t = ReportFormat::Plain)]
    format: ReportFormat,
    /// Rational to locate, written "p/q"
    x: Fraction,
}

#[derive(Args)]
struct DescribeArgs {
    #[command(flatten)]
    start: StartArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    /// Every check
    All,
    /// Parity classes and their alternation
    Parity,
    /// Valuations of the two cross-determinants
    #[value(name = "2adic")]
    TwoAdic,
    /// Unreduced mediant gcds divide the parents' cross-determinant
    Divisor,
    /// Mediants span at most a third of their parents' interval
    OneThird,
    /// Appearance predicate against generated rows and descent
    Membership,
    /// Row-3 mediants forced to be divisible by 3 under no reduction
    Unavoidable,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which check to run
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    /// Deepest row each check generates
    #[arg(long, default_value_t = 6)]
    depth: usize,
    /// Seed for the randomized starting terms
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Largest denominator the appearance check enumerates
    #[arg(long, default_value_t = 27)]
    denominator_bound: u64,
    /// Check one specific tree instead of the standard set
    #[arg(long, requires = "hi")]
    lo: Option<Fraction>,
    #[arg(long, requires = "lo")]
    hi: Option<Fraction>,
    /// Reduction scheme for the single-tree form
    #[arg(long, default_value_t = ReductionScheme::uniform())]
    scheme: ReductionScheme,
    #[arg(long, value_enum, default_value_t = ReportFormat::Plain)]
    format: ReportFormat,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(args) => cmd_generate(args),
        Command::Member(args) => cmd_member(args),
        Command::Locate(args) => cmd_locate(args),
        Command::Describe(args) => cmd_describe(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

type CmdResult = Result<ExitCode, Box<dyn std::error::Error>>;

fn cmd_generate(args: GenerateArgs) -> CmdResult {
    if args.depth > DEPTH_CAP {
        return Err(format!("depth {} exceeds the hard cap of {DEPTH_CAP}", args.depth).into());
    }
    if args.depth > BUFFERED_DEPTH_LIMIT && !args.stream {
        return Err(format!(
            "depth {} produces rows with millions of entries; pass --stream to emit them unbuffered",
            args.depth
        )
        .into());
    }
    let spec = TreeSpec::new(args.start.lo, args.start.hi, args.k, args.scheme)?;
    let stdout = std::io::stdout().lock();
    let mut out = BufWriter::new(stdout);
    for row in spec.rows(args.depth) {
        let row = row?;
        match args.format {
            RowFormat::Plain => {
                for (i, entry) in row.entries().iter().enumerate() {
                    if i > 0 {
                        out.write_all(b" ")?;
                    }
                    write!(out, "{entry}")?;
                }
                out.write_all(b"\n")?;
            }
            RowFormat::Json => {
                serde_json::to_writer(&mut out, &row)?;
                out.write_all(b"\n")?;
            }
            RowFormat::Latex => {
                out.write_all(b"\\[ ")?;
                for (i, entry) in row.entries().iter().enumerate() {
                    if i > 0 {
                        out.write_all(b" \\; \\; \\; ")?;
                    }
                    write!(out, "\\frac{{{}}}{{{}}}", entry.num(), entry.den())?;
                }
                out.write_all(b" \\]\n")?;
            }
        }
        if args.stream {
            out.flush()?;
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_member(args: MemberArgs) -> CmdResult {
    let verdict = is_member(&args.start.lo, &args.start.hi, &args.x)?;
    match args.format {
        ReportFormat::Json => println!("{}", serde_json::to_string_pretty(&verdict)?),
        ReportFormat::Plain => {
            let tree = format!("SB({}, {})", args.start.lo, args.start.hi);
            let normalized = if verdict.target == args.x {
                String::new()
            } else {
                format!(" (normalized to {})", verdict.target)
            };
            if verdict.is_member {
                println!("{}: appears in {tree}{normalized}", args.x);
            } else {
                println!("{}: never appears in {tree}{normalized}", args.x);
                match verdict.matched_class {
                    None => println!("  parity class matches neither endpoint class"),
                    Some(class) => println!(
                        "  parity class {class} matches an endpoint, but the valuations \
                         {} and {} do not straddle the endpoint valuation {}",
                        verdict.nu_lo_target, verdict.nu_target_hi, verdict.nu_endpoints
                    ),
                }
            }
        }
    }
    Ok(if verdict.is_member {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn cmd_locate(args: LocateArgs) -> CmdResult {
    let spec = TreeSpec::new(args.start.lo, args.start.hi, args.k, args.scheme)?;
    let result = locate(&spec, &args.x, args.max_depth)?;
    if args.format == ReportFormat::Json {
        println!("{}", serde_json::to_string_pretty(&result)?);
    } else {
        match &result {
            LocateResult::Found { depth, index, path } => {
                println!("found: {} is entry {index} of row {depth} in {spec}", args.x);
                let branches = if path.is_empty() {
                    "(starting term)".to_string()
                } else {
                    path.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" ")
                };
                println!("  branches: {branches}");
            }
            LocateResult::Excluded { depth, left, right } => {
                println!(
                    "never appears: {} is the ordinary mediant of {left} and {right}, \
                     consecutive in every row from {depth} on",
                    args.x
                );
            }
            LocateResult::DepthExceeded { depth } => {
                println!("no verdict within {depth} rows; raise --max-depth");
            }
        }
    }
    Ok(match result {
        LocateResult::Found { .. } => ExitCode::SUCCESS,
        _ => ExitCode::FAILURE,
    })
}

fn cmd_describe(args: DescribeArgs) -> CmdResult {
    print!("{}", describe_tree(&args.start.lo, &args.start.hi)?);
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> CmdResult {
    let single = match (&args.lo, &args.hi) {
        (Some(lo), Some(hi)) => Some(TreeSpec::new(
            lo.clone(),
            hi.clone(),
            3,
            args.scheme.clone(),
        )?),
        _ => None,
    };
    let reports: Vec<CheckReport> = match (&single, args.suite) {
        (Some(spec), Suite::All) => vec![
            verifier::check_parity_lemma(spec, args.depth)?,
            verifier::check_2adic_lemma(spec, args.depth)?,
            verifier::check_reduction_divisor(spec, args.depth)?,
            verifier::check_one_third(spec, args.depth)?,
            verifier::check_membership_theorem(spec, args.depth, args.denominator_bound)?,
        ],
        (Some(spec), suite) => vec![run_check_on(spec, suite, &args)?],
        (None, Suite::All) => verifier::default_suite(args.depth, args.seed)?,
        (None, suite) => vec![run_check_suite_wide(suite, &args)?],
    };
    let passed = reports.iter().all(CheckReport::passed);
    match args.format {
        ReportFormat::Json => println!("{}", serde_json::to_string_pretty(&reports)?),
        ReportFormat::Plain => print_reports(&reports),
    }
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn run_check_on(spec: &TreeSpec, suite: Suite, args: &VerifyArgs) -> Result<CheckReport, Box<dyn std::error::Error>> {
    Ok(match suite {
        Suite::Parity => verifier::check_parity_lemma(spec, args.depth)?,
        Suite::TwoAdic => verifier::check_2adic_lemma(spec, args.depth)?,
        Suite::Divisor => verifier::check_reduction_divisor(spec, args.depth)?,
        Suite::OneThird => verifier::check_one_third(spec, args.depth)?,
        Suite::Membership => {
            verifier::check_membership_theorem(spec, args.depth, args.denominator_bound)?
        }
        Suite::Unavoidable => {
            return Err("the unavoidable-reduction check draws its own random starts; drop --lo/--hi".into())
        }
        Suite::All => unreachable!("handled by the caller"),
    })
}

fn run_check_suite_wide(suite: Suite, args: &VerifyArgs) -> Result<CheckReport, Box<dyn std::error::Error>> {
    if suite == Suite::Unavoidable {
        return Ok(verifier::check_unavoidable_reduction(100, args.seed.wrapping_add(1)));
    }
    if suite == Suite::Membership {
        let mut merged = CheckReport {
            check_name: "membership_theorem".to_string(),
            instances_checked: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        };
        for spec in verifier::reference_specs() {
            merged.merge(verifier::check_membership_theorem(
                &spec,
                args.depth,
                args.denominator_bound,
            )?);
        }
        return Ok(merged);
    }
    let mut merged: Option<CheckReport> = None;
    for spec in verifier::suite_trees(args.seed) {
        let report = run_check_on(&spec, suite, args)?;
        match &mut merged {
            None => merged = Some(report),
            Some(m) => m.merge(report),
        }
    }
    Ok(merged.expect("suite set is never empty"))
}

fn print_reports(reports: &[CheckReport]) {
    let mut instances = 0u64;
    for report in reports {
        println!(
            "{:<22} {:>8} instances  {:>4} failures  {}",
            report.check_name,
            report.instances_checked,
            report.failures.len(),
            if report.passed() { "pass" } else { "FAIL" }
        );
        for note in report.notes.iter().take(12) {
            println!("    note: {note}");
        }
        if report.notes.len() > 12 {
            println!("    ... {} further notes (use --format json for all)", report.notes.len() - 12);
        }
        for failure in report.failures.iter().take(10) {
            println!(
                "    failure: {} depth {} position {}: expected {}, got {}",
                failure.tree, failure.depth, failure.position, failure.expected, failure.actual
            );
        }
        if report.failures.len() > 10 {
            println!("    ... {} further failures", report.failures.len() - 10);
        }
        instances += report.instances_checked;
    }
    let verdict = if reports.iter().all(CheckReport::passed) {
        "pass"
    } else {
        "FAIL"
    };
    println!("suite: {verdict} ({} checks, {instances} instances)", reports.len());
}
