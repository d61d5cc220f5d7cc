use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use numfair::config::{load_config, ExperimentConfig};
use numfair::experiment::{run_case, run_cdf_experiment, run_sir, CaseId};
use numfair::export::{write_cdf_study, write_sir_run};
use numfair::presets::Preset;
use numfair::scheduler::Algorithm;
use numfair::Result;

#[derive(Parser)]
#[command(
    name = "numfair",
    version,
    about = "Multi-numerology INI/SIR simulator and edge-fairness scheduling"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Master RNG seed (overrides the config).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Monte-Carlo trials per SIR estimate; for `cdf` this is the per-instance count.
    #[arg(long, global = true)]
    trials: Option<usize>,

    /// Directory for CSV output (overrides the config).
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Fixed-power case study.
    Case {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        id: u8,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Randomized scheduling study producing per-UE SIR CDFs.
    Cdf {
        /// Comma-separated subset of random,algo1,algo2.
        #[arg(long, value_delimiter = ',')]
        algorithms: Option<Vec<String>>,
        /// Built-in preset used when no config file is given.
        #[arg(long, default_value = "edge")]
        preset: String,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Number of random power draws.
        #[arg(long)]
        instances: Option<usize>,
    },
    /// SIR for the powers (and optional scheduler) in a config file.
    Sir {
        #[arg(long)]
        config: PathBuf,
    },
}

fn apply_overrides(cfg: &mut ExperimentConfig, cli: &Cli) {
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(dir) = &cli.out_dir {
        cfg.output.dir = dir.clone();
    }
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Case { id, config } => {
            let mut cfg = match config {
                Some(p) => load_config(p)?,
                None => ExperimentConfig::default(),
            };
            apply_overrides(&mut cfg, cli);
            if let Some(t) = cli.trials {
                cfg.trials = t;
            }
            cfg.validate()?;
            let case = CaseId::from_number(*id)?;
            let run = run_case(&cfg, case)?;
            for ue in &run.report.per_ue {
                println!(
                    "UE {:>2}  numerology {}  {:5}  SIR {:7.2} dB",
                    ue.ue,
                    ue.numerology,
                    if ue.is_edge { "edge" } else { "inner" },
                    ue.sir_db
                );
            }
            for path in write_sir_run(&run, &cfg.output.dir, &format!("case{id}"))? {
                println!("wrote {}", path.display());
            }
        }
        Command::Cdf {
            algorithms,
            preset,
            config,
            instances,
        } => {
            let mut cfg = match config {
                Some(p) => load_config(p)?,
                None => preset.parse::<Preset>()?.config(),
            };
            apply_overrides(&mut cfg, cli);
            if let Some(t) = cli.trials {
                cfg.cdf.inner_trials = t;
            }
            if let Some(n) = instances {
                cfg.cdf.instances = *n;
            }
            if let Some(list) = algorithms {
                cfg.cdf.algorithms = list.iter().map(|s| s.parse::<Algorithm>()).collect::<Result<_>>()?;
            }
            cfg.validate()?;
            let study = run_cdf_experiment(&cfg)?;
            for c in &study.curves {
                println!(
                    "{:6} {:5} numerology {}  median {:6.2} dB  var {:6.2} dB^2",
                    c.algorithm,
                    c.class,
                    c.numerology,
                    c.curve.median(),
                    c.curve.variance()
                );
            }
            let path = cfg.output.dir.join("cdf.csv");
            write_cdf_study(&study, &path)?;
            println!("wrote {}", path.display());
        }
        Command::Sir { config } => {
            let mut cfg = load_config(config)?;
            apply_overrides(&mut cfg, cli);
            if let Some(t) = cli.trials {
                cfg.trials = t;
            }
            cfg.validate()?;
            let run = run_sir(&cfg)?;
            for ue in &run.report.per_ue {
                println!(
                    "UE {:>2}  numerology {}  SIR {:7.2} dB",
                    ue.ue, ue.numerology, ue.sir_db
                );
            }
            for path in write_sir_run(&run, &cfg.output.dir, "sir")? {
                println!("wrote {}", path.display());
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
            ExitCode::FAILURE
        }
    }
}
