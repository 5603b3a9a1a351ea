use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hua_radon::error::Error;
use hua_radon::suites::{list_suites, parse_m_list, run_suite, FrameChoice, Format, SuiteConfig};

/// Exact verification suites for the monogenic Hua-Radon transform.
#[derive(Parser)]
#[command(name = "huaradon", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one suite over a parameter grid and write a report.
    Verify {
        #[arg(long)]
        suite: String,
        /// Comma separated dimensions.
        #[arg(long, default_value = "3,4")]
        m: String,
        #[arg(long, default_value_t = 3)]
        max_degree: u32,
        /// `canonical` or `rotated:SEED`.
        #[arg(long, default_value = "canonical")]
        frame: String,
        #[arg(long, default_value = "json")]
        format: String,
        /// Report path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Use the kernel constants with the prefactor as printed.
        #[arg(long)]
        use_printed_lambda: bool,
    },
    /// Print the names of the available suites.
    ListSuites,
}

const WORKERS_VAR: &str = "HUARADON_WORKERS";

fn configure_workers() -> Result<(), Error> {
    let Ok(raw) = std::env::var(WORKERS_VAR) else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Config(format!("{WORKERS_VAR} must be a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::Config(format!("cannot start {n} workers: {e}")))
}

fn verify(
    suite: String,
    m: &str,
    max_degree: u32,
    frame: &str,
    format: &str,
    out: Option<PathBuf>,
    use_printed_lambda: bool,
) -> Result<bool, Error> {
    let format: Format = format.parse()?;
    let config = SuiteConfig {
        suite,
        m: parse_m_list(m)?,
        max_degree,
        frame: frame.parse::<FrameChoice>()?,
        format,
        out: out.clone(),
        use_printed_lambda,
    };
    config.validate()?;
    if let Some(path) = &out {
        // fail before the run if the report cannot be written
        std::fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    let report = run_suite(&config)?;
    match &out {
        Some(path) => report.write(path, format)?,
        None => println!("{}", report.render(format)),
    }
    eprintln!("{}: {} passed, {} failed, {} ms", report.suite, report.passed, report.failed, report.elapsed_ms);
    Ok(report.all_passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_workers().and_then(|()| match cli.command {
        Command::ListSuites => {
            for name in list_suites() {
                println!("{name}");
            }
            Ok(true)
        }
        Command::Verify { suite, m, max_degree, frame, format, out, use_printed_lambda } => {
            verify(suite, &m, max_degree, &frame, &format, out, use_printed_lambda)
        }
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
