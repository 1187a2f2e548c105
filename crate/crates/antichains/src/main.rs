//! Command-line interface for exact largest-antichain computations.
//!
//! Exit codes: 0 on success / all checks passing, 1 on a computational
//! mismatch, 2 on usage errors. All data output goes to stdout and is
//! deterministic for fixed flags; runtime notes go to stderr.

use std::fs::File;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use antichains::asymptotics::{convergence_series, g_decimal, g_exact, write_convergence_csv};
use antichains::cli::{check_expected, run_verify, ExpectedValueTable, VerifyConfig};
use antichains::closed_forms::{
    corollary_small_n, hetero_largest_antichain, sander_homogeneous, theorem2_homogeneous,
    Eq5Mode,
};
use antichains::numeric::ExactInteger;
use antichains::rank::{max_rank_size, ShapeVector};

#[derive(Parser)]
#[command(name = "antichains", version, about = "Size of the largest antichain in products of linear orders")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Largest antichain of a heterogeneous chain product
    Hetero(HeteroArgs),
    /// Largest antichain of the homogeneous product [m]^n
    Homo(HomoArgs),
    /// The asymptotic constant g(n) = lim S(m,n)/m^(n-1)
    Gn(GnArgs),
    /// Emit convergence data of S(m,n)/m^(n-1) toward g(n) as CSV
    Converge(ConvergeArgs),
    /// Run the cross-formula and oracle equivalence grids
    Verify(VerifyArgs),
    /// Check computed values against an expected-value CSV
    Check(CheckArgs),
}

#[derive(Args)]
struct HeteroArgs {
    /// Shape as a comma-separated list, e.g. "5,5,10"
    shape: Option<String>,
    /// Chain length; repeat the flag once per chain
    #[arg(long = "chain", value_name = "M")]
    chains: Vec<u32>,
    #[arg(long, value_enum, default_value_t = HeteroMethod::Formula)]
    method: HeteroMethod,
}

#[derive(Clone, Copy, ValueEnum)]
enum HeteroMethod {
    Formula,
    Convolution,
    Both,
}

#[derive(Args)]
struct HomoArgs {
    m: u32,
    n: u32,
    #[arg(long, value_enum, default_value_t = HomoMethod::Sander)]
    method: HomoMethod,
    #[arg(long, value_enum, default_value_t = Eq5Flag::Corrected)]
    eq5: Eq5Flag,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum HomoMethod {
    Sander,
    Theorem2,
    Corollary,
    Convolution,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Eq5Flag {
    Corrected,
    Literal,
}

impl From<Eq5Flag> for Eq5Mode {
    fn from(f: Eq5Flag) -> Self {
        match f {
            Eq5Flag::Corrected => Eq5Mode::Corrected,
            Eq5Flag::Literal => Eq5Mode::PaperLiteral,
        }
    }
}

#[derive(Args)]
struct GnArgs {
    n: u32,
    /// Significant digits of the decimal rendering
    #[arg(long, default_value_t = 17)]
    digits: usize,
    /// Print the exact fraction instead of a decimal
    #[arg(long)]
    exact: bool,
}

#[derive(Args)]
struct ConvergeArgs {
    n: u32,
    #[arg(long = "m-min-log2", default_value_t = 1)]
    m_min_log2: u32,
    #[arg(long = "m-max-log2", default_value_t = 10)]
    m_max_log2: u32,
    #[arg(long, default_value_t = 17)]
    digits: usize,
    /// Output CSV path; stdout when omitted
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long = "max-product", default_value_t = 400)]
    max_product: u64,
    #[arg(long = "max-n", default_value_t = 6)]
    max_n: u32,
    #[arg(long = "max-m", default_value_t = 12)]
    max_m: u32,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long = "random-shapes", default_value_t = 10)]
    random_shapes: usize,
}

#[derive(Args)]
struct CheckArgs {
    /// Expected-value CSV (kind,shape_or_m,n,expected)
    #[arg(long)]
    expected: std::path::PathBuf,
}

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: Cli) -> antichains::Result<u8> {
    match cli.command {
        Command::Hetero(args) => cmd_hetero(args),
        Command::Homo(args) => cmd_homo(args),
        Command::Gn(args) => cmd_gn(args),
        Command::Converge(args) => cmd_converge(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Check(args) => cmd_check(args),
    }
}

fn parse_shape(args: &HeteroArgs) -> antichains::Result<ShapeVector> {
    match (&args.shape, args.chains.is_empty()) {
        (Some(s), true) => s.parse(),
        (None, false) => ShapeVector::new(args.chains.clone()),
        (Some(_), false) => Err(antichains::Error::MalformedShape(
            "give either a positional shape or --chain flags, not both".into(),
        )),
        (None, true) => Err(antichains::Error::MalformedShape(
            "no shape given; use a positional comma list or --chain flags".into(),
        )),
    }
}

fn cmd_hetero(args: HeteroArgs) -> antichains::Result<u8> {
    let shape = parse_shape(&args)?;
    match args.method {
        HeteroMethod::Formula => {
            println!("{}", hetero_largest_antichain(&shape));
            Ok(0)
        }
        HeteroMethod::Convolution => {
            println!("{}", max_rank_size(&shape));
            Ok(0)
        }
        HeteroMethod::Both => {
            let formula = hetero_largest_antichain(&shape);
            let convolution = max_rank_size(&shape);
            println!("formula={formula}");
            println!("convolution={convolution}");
            if formula == convolution {
                println!("AGREE");
                Ok(0)
            } else {
                println!("DISAGREE");
                Ok(EXIT_MISMATCH)
            }
        }
    }
}

fn homo_value(args: &HomoArgs, method: HomoMethod) -> antichains::Result<ExactInteger> {
    match method {
        HomoMethod::Sander => sander_homogeneous(args.m, args.n),
        HomoMethod::Theorem2 => theorem2_homogeneous(args.m, args.n, args.eq5.into()),
        HomoMethod::Corollary => corollary_small_n(args.m, args.n),
        HomoMethod::Convolution => {
            let shape = ShapeVector::homogeneous(args.m, args.n as usize)?;
            Ok(max_rank_size(&shape))
        }
        HomoMethod::All => unreachable!("expanded by caller"),
    }
}

fn cmd_homo(args: HomoArgs) -> antichains::Result<u8> {
    if !matches!(args.method, HomoMethod::All) {
        println!("{}", homo_value(&args, args.method)?);
        return Ok(0);
    }
    // --method=all: every applicable route, flagging disagreements
    let mut values: Vec<(&str, ExactInteger)> = vec![
        ("sander", homo_value(&args, HomoMethod::Sander)?),
        ("convolution", homo_value(&args, HomoMethod::Convolution)?),
    ];
    if args.m >= 2 && args.n >= 2 {
        values.push(("theorem2", homo_value(&args, HomoMethod::Theorem2)?));
    }
    if (2..=4).contains(&args.n) {
        values.push(("corollary", homo_value(&args, HomoMethod::Corollary)?));
    }
    for (name, v) in &values {
        println!("{name}={v}");
    }
    let reference = &values[0].1;
    if values.iter().all(|(_, v)| v == reference) {
        println!("AGREE");
        Ok(0)
    } else {
        println!("DISAGREE");
        Ok(EXIT_MISMATCH)
    }
}

fn cmd_gn(args: GnArgs) -> antichains::Result<u8> {
    if args.digits < 1 {
        return Err(antichains::Error::UnsupportedParameter(
            "--digits must be at least 1".into(),
        ));
    }
    if args.exact {
        println!("{}", g_exact(args.n)?);
    } else {
        println!("{}", g_decimal(args.n, args.digits)?);
    }
    Ok(0)
}

fn cmd_converge(args: ConvergeArgs) -> antichains::Result<u8> {
    if args.m_min_log2 > args.m_max_log2 || args.m_max_log2 >= 31 {
        return Err(antichains::Error::UnsupportedParameter(format!(
            "bad log2 range {}..{}",
            args.m_min_log2, args.m_max_log2
        )));
    }
    let m_values: Vec<u32> = (args.m_min_log2..=args.m_max_log2).map(|k| 1 << k).collect();
    let points = convergence_series(args.n, &m_values)?;
    let io_err = |e: std::io::Error| antichains::Error::UnsupportedParameter(e.to_string());
    match &args.out {
        Some(path) => {
            let mut file = File::create(path).map_err(io_err)?;
            write_convergence_csv(&mut file, args.n, &points, args.digits).map_err(io_err)?;
            eprintln!("wrote {} rows to {}", points.len(), path.display());
        }
        None => {
            let mut out = std::io::stdout().lock();
            write_convergence_csv(&mut out, args.n, &points, args.digits).map_err(io_err)?;
        }
    }
    Ok(0)
}

fn cmd_verify(args: VerifyArgs) -> antichains::Result<u8> {
    let cfg = VerifyConfig {
        max_product: args.max_product,
        max_n: args.max_n,
        max_m: args.max_m,
        seed: args.seed,
        random_shapes: args.random_shapes,
    };
    let report = run_verify(&cfg)?;
    println!("{}", serde_json::to_string_pretty(&report).expect("report is serializable"));
    Ok(if report.all_pass { 0 } else { EXIT_MISMATCH })
}

fn cmd_check(args: CheckArgs) -> antichains::Result<u8> {
    let file = File::open(&args.expected)
        .map_err(|e| antichains::Error::MalformedShape(format!("{}: {e}", args.expected.display())))?;
    let table = ExpectedValueTable::from_reader(file)?;
    if table.records.is_empty() {
        eprintln!("warning: no records in {}", args.expected.display());
        println!("0/0 match");
        return Ok(0);
    }
    let results = check_expected(&table)?;
    let mut out = std::io::stdout().lock();
    let mut mismatches = 0usize;
    for r in &results {
        if !r.pass {
            mismatches += 1;
            writeln!(out, "MISMATCH {}: expected {}, got {}", r.description, r.expected, r.actual)
                .ok();
        }
    }
    writeln!(out, "{}/{} match", results.len() - mismatches, results.len()).ok();
    Ok(if mismatches == 0 { 0 } else { EXIT_MISMATCH })
}
