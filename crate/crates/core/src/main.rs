use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use gessel::lattice_oracle::{enumerate_paths, PathProblem};
use gessel::output::{write_suite, write_table};
use gessel::table::{build_table, compute};
use gessel::{
    run_suite, Error, Fix, IdentityId, Kind, Method, Mutation, Nat, NatGessel, OutputFormat,
    SuiteConfig,
};

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

/// Gessel numbers P(n, r) and their duals Q(n, r), computed exactly.
#[derive(Parser)]
#[command(name = "gessel", version)]
struct Cli {
    /// Bound the worker threads used by table and suite sweeps.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a single value.
    Compute {
        kind: Kind,
        n: u32,
        r: u32,
        /// closed, sum, recurrence, oracle, or eq12 (P only).
        #[arg(long, default_value = "closed")]
        method: Method,
    },
    /// Tabulate values over 0 <= n <= n-max, 1 <= r <= r-max.
    Table {
        kind: Kind,
        #[arg(long)]
        n_max: u32,
        #[arg(long)]
        r_max: u32,
        /// csv, json, or bfile.
        #[arg(long, default_value = "csv")]
        format: OutputFormat,
        /// Restrict to one row or column: n=<k> or r=<k>. Required for bfile.
        #[arg(long)]
        fix: Option<Fix>,
        #[arg(long, default_value = "closed")]
        method: Method,
    },
    /// Check identities over a rectangle; exits 1 if any cell fails.
    Verify(VerifyArgs),
    /// List admissible paths as R/U strings.
    Enumerate {
        kind: Kind,
        n: u32,
        r: u32,
        /// Refuse to list more than this many paths.
        #[arg(long, default_value_t = 1000)]
        cap: usize,
    },
    /// Scan for evidence that K_r = r C(2r, r) / 2 is minimal.
    Kr {
        r: u32,
        #[arg(long, default_value_t = 200)]
        n_max: u32,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Run every identity.
    #[arg(long)]
    all: bool,
    /// Identity to run; repeatable.
    #[arg(long = "id")]
    ids: Vec<IdentityId>,
    #[arg(long, default_value_t = 10)]
    n_max: u32,
    #[arg(long, default_value_t = 10)]
    r_max: u32,
    /// csv or json.
    #[arg(long, default_value = "csv")]
    format: OutputFormat,
    /// Largest n + r for oracle-backed identities.
    #[arg(long, default_value_t = SuiteConfig::default().oracle_cap)]
    oracle_cap: u32,
    /// Largest n and r for formula identities.
    #[arg(long, default_value_t = SuiteConfig::default().formula_cap)]
    formula_cap: u32,
    /// Corrupt one formula constant (mutation smoke testing).
    #[arg(long, hide = true)]
    inject_fault: Option<Mutation>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::CapExceeded { .. } => EXIT_FAILED,
                _ => EXIT_USAGE,
            })
        }
    }
}

fn run(command: Command) -> gessel::Result<ExitCode> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let engine = NatGessel::new();
    match command {
        Command::Compute { kind, n, r, method } => {
            let value: Nat = compute(&engine, kind, method, n, r)?;
            writeln!(out, "{value}").map_err(output_error)?;
        }
        Command::Table {
            kind,
            n_max,
            r_max,
            format,
            fix,
            method,
        } => {
            if format == OutputFormat::Bfile && fix.is_none() {
                return Err(Error::Domain(
                    "b-file output needs --fix n=<k> or --fix r=<k>".into(),
                ));
            }
            let table = build_table(&engine, kind, method, n_max, r_max, fix)?;
            write_table(&table, format, &mut out)?;
        }
        Command::Verify(args) => return verify(args, &mut out),
        Command::Enumerate { kind, n, r, cap } => {
            let problem = match kind {
                Kind::P => PathProblem::gessel(n, r)?,
                Kind::Q => PathProblem::dual(n, r)?,
            };
            for path in enumerate_paths(&problem, cap)? {
                writeln!(out, "{path}").map_err(output_error)?;
            }
        }
        Command::Kr { r, n_max } => {
            let report = engine.k_r_minimality_check(r, n_max)?;
            writeln!(out, "K_{r} = {}", report.k_r).map_err(output_error)?;
            match report.k_r_failure {
                None => writeln!(
                    out,
                    "K_{r} C(2n,n)/(n+{r}) is integral for all n <= {n_max}"
                ),
                Some(n) => writeln!(out, "K_{r} C(2n,n)/(n+{r}) is NOT integral at n = {n}"),
            }
            .map_err(output_error)?;
            if report.divisors.is_empty() {
                writeln!(out, "no proper divisors").map_err(output_error)?;
            }
            for w in &report.divisors {
                match w.counterexample_n {
                    Some(n) => writeln!(out, "d={} witness n={n}", w.divisor),
                    None => writeln!(out, "d={} unrefuted within n <= {n_max}", w.divisor),
                }
                .map_err(output_error)?;
            }
            if !report.divisors.is_empty() && report.all_refuted() {
                writeln!(out, "all proper divisors refuted").map_err(output_error)?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(args: VerifyArgs, out: &mut impl Write) -> gessel::Result<ExitCode> {
    if args.format == OutputFormat::Bfile {
        return Err(Error::Domain("verify supports csv or json output".into()));
    }
    let ids: Vec<IdentityId> = if args.all {
        IdentityId::ALL.to_vec()
    } else {
        args.ids
    };
    let engine = match args.inject_fault {
        Some(m) => NatGessel::with_mutation(m),
        None => NatGessel::new(),
    };
    let config = SuiteConfig {
        oracle_cap: args.oracle_cap,
        formula_cap: args.formula_cap,
        threads: None,
    };
    let result = run_suite(&engine, &ids, args.n_max, args.r_max, &config);
    write_suite(&result, args.format, out)?;
    eprintln!(
        "checked={} failed={} skipped={} elapsed_ms={}",
        result.checked, result.failed, result.skipped, result.elapsed_ms
    );
    Ok(if result.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILED)
    })
}

fn output_error(e: io::Error) -> Error {
    Error::Output(e.to_string())
}
