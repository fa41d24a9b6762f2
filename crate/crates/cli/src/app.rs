use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use picalc_core::{
    convergence_rows, fx_to_decimal, named_constant, pi_brent_salamin_traced, write_trace_csv, ConstantName,
    MulPolicy, PrecisionContext,
};

use crate::algo::{compute_pi, PiAlgorithm, DEFAULT_K};
use crate::bench::{all_verified, run_bench, time_ratios, write_csv, write_json, BenchConfig};
use crate::error::{CliError, EXIT_OK, EXIT_USAGE};
use crate::verify::run_verify;

/// Environment variable overriding the guard-bit policy. Unstable; meant
/// for experiments.
pub const GUARD_BITS_ENV: &str = "PI_GUARD_BITS";

#[derive(Debug, Parser)]
#[command(name = "picalc", version, about = "Compute, cross-verify and benchmark pi and related constants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a constant to N digits.
    Compute(ComputeArgs),
    /// Compute pi with several algorithms and compare every pair.
    Verify(VerifyArgs),
    /// Time AGM against Machin under multiplication policies.
    Bench(BenchArgs),
    /// Export the Brent-Salamin AGM trace with per-step correct digits.
    Trace(TraceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgoKind {
    Agm,
    Legendre,
    Machin,
}

#[derive(Debug, Args)]
struct ComputeArgs {
    #[arg(long, default_value = "pi", value_parser = parse_constant)]
    constant: ConstantName,
    /// pi only; defaults to agm
    #[arg(long, value_enum)]
    algo: Option<AlgoKind>,
    /// Modulus for --algo legendre, 0 < k < 1
    #[arg(long)]
    k: Option<String>,
    /// Registry name (machin, euler, gauss3) or an expression such as "4*atan(1/5) - atan(1/239)"
    #[arg(long)]
    formula: Option<String>,
    #[arg(long)]
    digits: u64,
    #[arg(long, default_value = "auto", value_parser = parse_policy)]
    mul: MulPolicy,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    digits: u64,
    /// Comma-separated labels; default agm,legendre@0.6,machin@machin,machin@gauss3
    #[arg(long, value_delimiter = ',')]
    algos: Vec<String>,
    #[arg(long, default_value = "auto", value_parser = parse_policy)]
    mul: MulPolicy,
    /// Algorithms computed concurrently
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, hide = true)]
    inject_fault: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    digits_list: Vec<u64>,
    #[arg(long, value_delimiter = ',', default_value = "schoolbook,karatsuba,ntt,auto", value_parser = parse_policy)]
    mul_list: Vec<MulPolicy>,
    /// Runs per measurement; the median is reported
    #[arg(long, default_value_t = 3)]
    repeat: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TraceArgs {
    #[arg(long, conflicts_with = "bits", required_unless_present = "bits")]
    digits: Option<u64>,
    /// Working precision in bits instead of --digits
    #[arg(long)]
    bits: Option<u64>,
    /// Decimals printed for a_n and b_n
    #[arg(long, default_value_t = 30)]
    value_digits: u64,
    #[arg(long, default_value = "auto", value_parser = parse_policy)]
    mul: MulPolicy,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_constant(s: &str) -> Result<ConstantName, String> {
    s.parse().map_err(|e: picalc_core::Error| e.to_string())
}

fn parse_policy(s: &str) -> Result<MulPolicy, String> {
    s.parse().map_err(|e: picalc_core::Error| e.to_string())
}

/// Context for `digits` digits, honoring `PI_GUARD_BITS`.
pub fn context_for_digits(digits: u64) -> Result<PrecisionContext, CliError> {
    let ctx = PrecisionContext::new(digits)?;
    match std::env::var(GUARD_BITS_ENV) {
        Ok(v) => {
            let g: u64 = v.trim().parse().map_err(|_| CliError::Usage(format!("{GUARD_BITS_ENV}: not a number: `{v}`")))?;
            Ok(ctx.with_guard_bits(g)?)
        }
        Err(_) => Ok(ctx),
    }
}

fn open_out<'a>(path: &Option<PathBuf>, stdout: &'a mut dyn Write) -> Result<Box<dyn Write + 'a>, CliError> {
    match path {
        Some(p) => {
            let f = File::create(p).map_err(|e| CliError::Failure(format!("cannot create {}: {e}", p.display())))?;
            Ok(Box::new(BufWriter::new(f)))
        }
        None => Ok(Box::new(stdout)),
    }
}

fn compute(args: ComputeArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let is_pi = args.constant == ConstantName::Pi;
    if !is_pi && args.algo.is_some() {
        return Err(CliError::Usage("--algo applies to --constant pi only".into()));
    }
    let algo_kind = args.algo.unwrap_or(AlgoKind::Agm);
    if args.k.is_some() && algo_kind != AlgoKind::Legendre {
        return Err(CliError::Usage("--k requires --algo legendre".into()));
    }
    if args.formula.is_some() && algo_kind != AlgoKind::Machin {
        return Err(CliError::Usage("--formula requires --algo machin".into()));
    }
    let ctx = context_for_digits(args.digits)?.with_policy(args.mul);
    let value = if is_pi {
        let algo = match algo_kind {
            AlgoKind::Agm => PiAlgorithm::Agm,
            AlgoKind::Legendre => PiAlgorithm::legendre(args.k.as_deref().unwrap_or(DEFAULT_K)),
            AlgoKind::Machin => PiAlgorithm::machin(args.formula.as_deref().unwrap_or("machin"))?,
        };
        compute_pi(&algo, &ctx)?.value
    } else {
        named_constant(args.constant.as_str(), &ctx)?.value
    };
    let text = fx_to_decimal(&value, args.digits)?;
    let mut out = open_out(&args.out, stdout)?;
    writeln!(out, "{text}")?;
    out.flush()?;
    Ok(())
}

fn verify(args: VerifyArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let algos = if args.algos.is_empty() {
        PiAlgorithm::default_set()
    } else {
        args.algos.iter().map(|s| s.parse()).collect::<Result<Vec<PiAlgorithm>, _>>()?
    };
    if args.jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let ctx = context_for_digits(args.digits)?.with_policy(args.mul);
    let report = run_verify(&algos, &ctx, args.jobs, args.inject_fault.as_deref())?;
    report.write(&mut *stdout)?;
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::Failure(format!("algorithms disagree within {} digits", args.digits)))
    }
}

fn bench(args: BenchArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let cfg = BenchConfig { digits: args.digits_list, policies: args.mul_list, repeat: args.repeat };
    let records = run_bench(&cfg, context_for_digits)?;
    {
        let mut out = open_out(&args.out, stdout)?;
        match args.format {
            Format::Csv => write_csv(&records, &mut out)?,
            Format::Json => write_json(&records, &mut out)?,
        }
        out.flush()?;
    }
    for (digits, policy, ratio) in time_ratios(&records) {
        writeln!(stderr, "digits={digits} mul={policy} agm/machin={ratio:.3}")?;
    }
    if all_verified(&records) {
        Ok(())
    } else {
        Err(CliError::Failure("a benchmark run disagreed with its counterpart".into()))
    }
}

fn trace(args: TraceArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let ctx = match (args.digits, args.bits) {
        (_, Some(bits)) => PrecisionContext::from_working_bits(bits)?,
        (Some(d), None) => context_for_digits(d)?,
        (None, None) => return Err(CliError::Usage("one of --digits or --bits is required".into())),
    }
    .with_policy(args.mul);
    let (_, run) = pi_brent_salamin_traced(&ctx)?;
    let inner = ctx.extended(run.mean.scale_bits() - ctx.working_bits());
    let rows = convergence_rows(&run, &inner)?;
    let value_digits = args.value_digits.clamp(1, ctx.decimal_digits());
    let mut out = open_out(&args.out, stdout)?;
    write_trace_csv(&rows, value_digits, &mut out)?;
    out.flush()?;
    Ok(())
}

/// Runs the command line `args` (including the program name) and returns
/// the process exit code: 0 success, 1 computational or verification
/// failure, 2 usage error.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{}", e.render());
                return EXIT_OK;
            }
            if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                let _ = write!(stderr, "{}", e.render());
                return EXIT_USAGE;
            }
            let rendered = e.render().to_string();
            let line = rendered.lines().next().unwrap_or("usage error");
            let _ = writeln!(stderr, "picalc: {}", line.trim_start_matches("error: "));
            return EXIT_USAGE;
        }
    };
    let result = match cli.command {
        Command::Compute(a) => compute(a, stdout),
        Command::Verify(a) => verify(a, stdout),
        Command::Bench(a) => bench(a, stdout, stderr),
        Command::Trace(a) => trace(a, stdout),
    };
    match result {
        Ok(()) | Err(CliError::Closed) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "picalc: {e}");
            e.exit_code()
        }
    }
}
