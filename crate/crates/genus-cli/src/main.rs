use clap::{Parser, Subcommand};
use genus_cli::commands::{self, CliError};
use genus_cli::render::{deliver, Document, Format};
use genus_cli::validate;
use std::path::PathBuf;
use std::process::ExitCode;

const DEFAULT_PRECISION: u32 = 200;
const PRECISION_ENV: &str = "GENUS_ENGINE_PRECISION";
const PRECISION_RANGE: std::ops::RangeInclusive<u32> = 24..=1_000_000;

#[derive(Parser)]
#[command(
    name = "genus",
    about = "Genus-expansion engine for single-trace matrix-model partition functions",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format (default: json; the tabular commands default to csv)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write the output atomically to this file instead of stdout
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Working precision in bits for floating-point commands
    /// (overrides the GENUS_ENGINE_PRECISION environment variable)
    #[arg(long, global = true)]
    precision: Option<u32>,

    /// Fallback series order for commands that take --jmax
    #[arg(long, global = true)]
    order: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Exact genus-g correction to the one-point function, as a
    /// partial-fraction row over u = nu - (nu-1) z0
    Zg {
        #[arg(long)]
        nu: u32,
        #[arg(long)]
        g: u32,
        /// Highest genus the engine may solve (default 6)
        #[arg(long)]
        gmax: Option<u32>,
    },
    /// Exact genus-g free-energy coefficient, including its log terms
    Eg {
        #[arg(long)]
        nu: u32,
        #[arg(long)]
        g: u32,
        #[arg(long)]
        gmax: Option<u32>,
    },
    /// Two-legged map counts of genus g for j = 0..=jmax vertices
    Counts {
        #[arg(long)]
        nu: u32,
        #[arg(long)]
        g: u32,
        #[arg(long)]
        jmax: Option<u32>,
        #[arg(long)]
        gmax: Option<u32>,
    },
    /// Closed-map cumulants kappa_g(j) = j! [s^j] e_g for j = 0..=jmax
    Kappa {
        #[arg(long)]
        nu: u32,
        #[arg(long)]
        g: u32,
        #[arg(long)]
        jmax: Option<u32>,
        #[arg(long)]
        gmax: Option<u32>,
    },
    /// Walk coefficient d_lambda, computed by two routes that must agree
    Dcoeff {
        #[arg(long)]
        nu: u32,
        /// Partition, e.g. [3,1,1]
        partition: String,
    },
    /// alpha_g sequence of the string-equation recursion in Q(sqrt(6))
    Painleve {
        #[arg(long, default_value_t = 8)]
        gmax: u32,
    },
    /// Universal expansion weights t_1..t_G (t_0 reported alongside)
    Tg {
        #[arg(long = "G")]
        big_g: u32,
    },
    /// Double-scaling data at the critical coupling: s_c, caustic slope,
    /// and the scaled top-pole series
    Ds {
        #[arg(long)]
        nu: u32,
        #[arg(long = "G", default_value_t = 3)]
        big_g: u32,
        /// Evaluate the scaled series at this negative coordinate (nu = 2)
        #[arg(long, allow_hyphen_values = true)]
        xi: Option<String>,
    },
    /// Compare the orthogonal-polynomial ladder against the genus expansion
    /// truncated at genus G, reporting errors and the decay slope in N
    Numcheck {
        #[arg(long)]
        nu: u32,
        /// Coupling t of the weight exp(-N(lambda^2/2 + t lambda^(2 nu)))
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        /// Expansion variable s = -t, accepted in place of --t
        #[arg(long, allow_hyphen_values = true)]
        s: Option<String>,
        /// Matrix sizes, comma separated
        #[arg(long = "N", value_delimiter = ',', required = true)]
        sizes: Vec<u32>,
        #[arg(long = "G", default_value_t = 2)]
        big_g: u32,
    },
    /// Spectral density on [-1, 1] at a given branch value z0
    Eqmeasure {
        #[arg(long)]
        nu: u32,
        #[arg(long, allow_hyphen_values = true)]
        z0: String,
        #[arg(long, default_value_t = 200)]
        grid: usize,
    },
    /// Run the cross-module self-check registry
    Validate {
        /// Largest nu the sweeps cover
        #[arg(long, default_value_t = 3)]
        nu: u32,
        /// Deepest genus the sweeps solve
        #[arg(long, default_value_t = 3)]
        gmax: u32,
    },
    /// Branch curve z0(s) with its square-root asymptote at the caustic
    Plotdata {
        #[arg(long)]
        nu: u32,
        #[arg(long, default_value_t = 200)]
        points: usize,
    },
}

fn resolve_precision(flag: Option<u32>) -> Result<u32, CliError> {
    let prec = match flag {
        Some(p) => p,
        None => match std::env::var(PRECISION_ENV) {
            Ok(raw) => raw.parse::<u32>().map_err(|_| {
                CliError::Usage(format!("{PRECISION_ENV} is not a bit count: {raw}"))
            })?,
            Err(_) => DEFAULT_PRECISION,
        },
    };
    if !PRECISION_RANGE.contains(&prec) {
        return Err(CliError::Usage(format!(
            "precision {prec} outside {}..={} bits",
            PRECISION_RANGE.start(),
            PRECISION_RANGE.end()
        )));
    }
    Ok(prec)
}

/// Returns the finished document, the format to use when none was asked for,
/// and whether the run counts as a success.
fn dispatch(
    command: Command,
    prec: u32,
    order: Option<u32>,
) -> Result<(Document, Format, bool), CliError> {
    let jmax_or = |jmax: Option<u32>| jmax.or(order).unwrap_or(10);
    match command {
        Command::Zg { nu, g, gmax } => Ok((commands::cmd_zg(nu, g, gmax)?, Format::Json, true)),
        Command::Eg { nu, g, gmax } => Ok((commands::cmd_eg(nu, g, gmax)?, Format::Json, true)),
        Command::Counts { nu, g, jmax, gmax } => Ok((
            commands::cmd_counts(nu, g, jmax_or(jmax), gmax)?,
            Format::Json,
            true,
        )),
        Command::Kappa { nu, g, jmax, gmax } => Ok((
            commands::cmd_kappa(nu, g, jmax_or(jmax), gmax)?,
            Format::Json,
            true,
        )),
        Command::Dcoeff { nu, partition } => {
            Ok((commands::cmd_dcoeff(nu, &partition)?, Format::Json, true))
        }
        Command::Painleve { gmax } => Ok((commands::cmd_painleve(gmax)?, Format::Json, true)),
        Command::Tg { big_g } => Ok((commands::cmd_tg(big_g)?, Format::Json, true)),
        Command::Ds { nu, big_g, xi } => Ok((
            commands::cmd_ds(nu, big_g, xi.as_deref(), prec)?,
            Format::Json,
            true,
        )),
        Command::Numcheck {
            nu,
            t,
            s,
            sizes,
            big_g,
        } => Ok((
            commands::cmd_numcheck(nu, t.as_deref(), s.as_deref(), &sizes, big_g, prec)?,
            Format::Json,
            true,
        )),
        Command::Eqmeasure { nu, z0, grid } => Ok((
            commands::cmd_eqmeasure(nu, &z0, grid, prec)?,
            Format::Csv,
            true,
        )),
        Command::Validate { nu, gmax } => {
            if nu < 2 {
                return Err(CliError::Usage(format!("nu must be at least 2, got {nu}")));
            }
            if gmax < 2 {
                return Err(CliError::Usage(format!(
                    "validate needs gmax of at least 2, got {gmax}"
                )));
            }
            let (doc, all_ok) = validate::run(nu, gmax, prec);
            Ok((doc, Format::Text, all_ok))
        }
        Command::Plotdata { nu, points } => Ok((
            commands::cmd_plotdata(nu, points, prec)?,
            Format::Csv,
            true,
        )),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = resolve_precision(cli.precision)
        .and_then(|prec| dispatch(cli.command, prec, cli.order));
    match run {
        Ok((doc, default_format, success)) => {
            let content = doc.render(cli.format.unwrap_or(default_format));
            if let Err(e) = deliver(&content, cli.out.as_deref()) {
                eprintln!("genus: cannot write output: {e}");
                return ExitCode::from(1);
            }
            if success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Usage(message)) => {
            eprintln!("genus: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Structural(message)) => {
            eprintln!("genus: {message}");
            ExitCode::from(1)
        }
    }
}
