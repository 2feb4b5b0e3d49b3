use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use quartic_prop::commands::{self, I1Method, TableKind, TableParams};
use quartic_prop::config::Config;
use quartic_prop::output::real;
use quartic_prop::{CliError, Result};

#[derive(Parser)]
#[command(name = "quartic-prop", version, about = "Euclidean propagator of the time-dependent quartic oscillator")]
struct Cli {
    /// Configuration file (required by `propagator` and `compare`)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Progress messages on stderr
    #[arg(long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Truncated propagator series: breakdown.csv and solution.csv
    Propagator,
    /// Analytic value against the time-sliced oracles: compare.csv
    Compare {
        /// Monte Carlo worker threads (0: one per core)
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
    /// The quartic integral I1(a, b, c)
    I1 {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        c: f64,
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
    },
    /// Special-function tables: table_<kind>.csv
    Table {
        #[arg(value_enum)]
        kind: KindArg,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
        to: f64,
        #[arg(long, default_value_t = 11)]
        steps: usize,
        /// pcf order, a negative half-integer
        #[arg(long, default_value_t = -0.5, allow_negative_numbers = true)]
        nu: f64,
        /// Hermite degree
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 0.25, allow_negative_numbers = true)]
        gamma: f64,
        /// Second argument of the incomplete Hermite polynomials
        #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
        y: f64,
        /// Largest k of the A-coefficient table
        #[arg(long, default_value_t = 6)]
        k_max: usize,
        /// Quartic coefficient of the i1 table
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        /// Linear coefficient of the i1 table
        #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
        c: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Quad,
    Series,
    Hermite,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Pcf,
    Hermite,
    IncompleteHermite,
    ACoeff,
    I1,
}

fn config(cli: &Cli) -> Result<Config> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| CliError::Usage("--config PATH is required for this subcommand".into()))?;
    Config::load(path)
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.cmd {
        Cmd::Propagator => {
            let cfg = config(cli)?;
            let r = commands::run_propagator(&cfg, &cli.out, cli.verbose)?;
            println!("total = {}", real(r.breakdown.total));
            println!("truncation_estimate = {}", real(r.breakdown.truncation_estimate));
        }
        Cmd::Compare { workers } => {
            let cfg = config(cli)?;
            let r = commands::run_compare(&cfg, &cli.out, *workers, cli.verbose)?;
            println!("analytic = {}", real(r.analytic));
            println!("extrapolated = {}", real(r.extrapolation.limit));
            println!("discrepancy = {}", real(r.sigma_discrepancy));
            println!("relative_difference = {}", real(r.relative_difference));
            println!("agreement = {}", if r.pass { "pass" } else { "fail" });
        }
        Cmd::I1 { a, b, c, method } => {
            let m = match method {
                MethodArg::Quad => I1Method::Quad,
                MethodArg::Series => I1Method::Series,
                MethodArg::Hermite => I1Method::Hermite,
                MethodArg::All => I1Method::All,
            };
            print!("{}", commands::run_i1(*a, *b, *c, m)?);
        }
        Cmd::Table {
            kind,
            from,
            to,
            steps,
            nu,
            n,
            gamma,
            y,
            k_max,
            a,
            c,
        } => {
            let kind = match kind {
                KindArg::Pcf => TableKind::Pcf,
                KindArg::Hermite => TableKind::Hermite,
                KindArg::IncompleteHermite => TableKind::IncompleteHermite,
                KindArg::ACoeff => TableKind::ACoeff,
                KindArg::I1 => TableKind::I1,
            };
            let p = TableParams {
                from: *from,
                to: *to,
                steps: *steps,
                nu: *nu,
                n: *n,
                gamma: *gamma,
                y: *y,
                k_max: *k_max,
                a: *a,
                c: *c,
            };
            let path = commands::run_table(kind, &p, &cli.out)?;
            if cli.verbose {
                eprintln!("wrote {}", path.display());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
