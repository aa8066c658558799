use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use symquot::classifier::{self, Config};
use symquot::finite::{molien_series, LinearAction};
use symquot_cli::{parse_spec, run_classify, run_sweep, Family, EXIT_ERROR};

#[derive(Parser)]
#[command(name = "symquot", version, about = "Classify symplectic quotients against linear symplectic orbifolds")]
struct Cli {
    /// Truncation order of every series (at least 4).
    #[arg(long, global = true, env = "SYMQUOT_ORDER", default_value_t = 20)]
    order: usize,
    /// Largest cyclic group order tried for two-weight circle modules.
    #[arg(long, global = true, default_value_t = 50)]
    search_bound: u32,
    /// Largest finite group that will be enumerated.
    #[arg(long, global = true, default_value_t = 1000)]
    group_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one representation.
    Classify {
        /// `circle: 1,-1`, `su2: 4`, `finite: cyclic(4)` or a JSON object.
        spec: Option<String>,
        /// Read the spec from a file instead.
        #[arg(long, conflicts_with = "spec")]
        file: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Hilbert series of the quotient ring.
    Series {
        spec: String,
        #[arg(long)]
        json: bool,
    },
    /// Molien series of a finite group.
    Molien {
        spec: String,
        /// Use the action on W + W* instead of W.
        #[arg(long)]
        doubled: bool,
        #[arg(long)]
        json: bool,
    },
    /// Classify a whole family and write JSON lines.
    Sweep {
        #[command(subcommand)]
        family: SweepFamily,
        /// Output file (stdout when omitted).
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum SweepFamily {
    Circle {
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        #[arg(long, default_value_t = 2)]
        max_weight: i64,
    },
    Su2 {
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
        #[arg(long, default_value_t = 2)]
        max_summands: usize,
    },
}

fn print_series(series: &symquot::algebra::GradedSeries, json: bool) -> anyhow::Result<()> {
    if json {
        println!("{}", serde_json::to_string(series)?);
    } else {
        println!("{series}");
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    if cli.order < 4 {
        bail!("--order must be at least 4");
    }
    if cli.search_bound == 0 || cli.group_cap == 0 {
        bail!("bounds must be positive");
    }
    let config = Config {
        order: cli.order,
        search_bound: cli.search_bound,
        group_cap: cli.group_cap,
    };
    match cli.command {
        Command::Classify { spec, file, json } => {
            let text = match (spec, file) {
                (Some(s), _) => s,
                (None, Some(path)) => {
                    std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?
                }
                (None, None) => bail!("a spec or --file is required"),
            };
            let (code, body) = run_classify(&text, &config, json).map_err(anyhow::Error::msg)?;
            print!("{body}");
            Ok(code)
        }
        Command::Series { spec, json } => {
            let spec = parse_spec(&spec)?;
            print_series(&classifier::quotient_hilbert_series(&spec, &config)?, json)?;
            Ok(0)
        }
        Command::Molien { spec, doubled, json } => {
            let symquot::classifier::RepSpec::Finite { group } = parse_spec(&spec)? else {
                bail!("molien needs a finite group spec");
            };
            let g = group.group(config.group_cap)?;
            let series = if doubled {
                molien_series(&g.doubled(), config.order)?
            } else {
                molien_series(&g, config.order)?
            };
            if !json {
                eprintln!("|H| = {}", g.order());
            }
            print_series(&series, json)?;
            Ok(0)
        }
        Command::Sweep { family, out } => {
            let family = match family {
                SweepFamily::Circle { max_n, max_weight } => Family::Circle { max_n, max_weight },
                SweepFamily::Su2 { max_degree, max_summands } => Family::Su2 { max_degree, max_summands },
            };
            let lines = run_sweep(family, &config);
            match out {
                Some(path) => std::fs::write(&path, lines).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{lines}"),
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
