use clap::{Parser, Subcommand};
use dataplant_cli::output::OutputFormat;
use dataplant_cli::{list_experiments, run, ExperimentSpec};
use std::path::PathBuf;
use std::process::ExitCode;

/// Behavioral DRAM security-primitive simulator.
#[derive(Parser)]
#[command(name = "dataplant", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the available experiments.
    List,
    /// Run one experiment and write its reports.
    Run {
        /// Experiment name (see `dataplant list`).
        experiment: String,
        /// Device configuration file (JSON); defaults to the desk-scale
        /// DDR3-1600 profile.
        #[arg(long, env = "DATAPLANT_CONFIG")]
        config: Option<PathBuf>,
        /// Master seed override.
        #[arg(long, env = "DATAPLANT_SEED")]
        seed: Option<u64>,
        /// Output directory.
        #[arg(long, env = "DATAPLANT_OUT", default_value = "reports")]
        out: PathBuf,
        /// Primary report format.
        #[arg(long, env = "DATAPLANT_FORMAT", default_value = "csv")]
        format: String,
        /// Restore full-scale trial counts instead of the desk-scale
        /// defaults.
        #[arg(long, env = "DATAPLANT_FULL")]
        full: bool,
        /// Worker threads (default: one per core).
        #[arg(long, env = "DATAPLANT_THREADS")]
        threads: Option<usize>,
    },
    /// Print the internal-signal waveform of a command kind as CSV.
    Waveform {
        /// One of ACT, PRE, UE_SA, UE_SA_WRITEBACK, UC_PLA, D_TRAN.
        kind: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::List => {
            for (name, description) in list_experiments() {
                println!("{name:20} {description}");
            }
            ExitCode::SUCCESS
        }
        Command::Run { experiment, config, seed, out, format, full, threads } => {
            let format: OutputFormat = match format.parse() {
                Ok(f) => f,
                Err(e) => {
                    eprintln!("config error: {e}");
                    return ExitCode::from(1);
                }
            };
            let spec = ExperimentSpec {
                name: experiment,
                config_path: config,
                out_dir: out,
                seed,
                format,
                full,
                threads,
            };
            match run(&spec) {
                Ok(paths) => {
                    for p in paths {
                        println!("{}", p.display());
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("{e}");
                    ExitCode::from(e.exit_code() as u8)
                }
            }
        }
        Command::Waveform { kind } => {
            let parsed: Result<dataplant_core::circuit::CommandKind, _> = kind.parse();
            match parsed {
                Ok(kind) => {
                    let timing = dataplant_core::model::DramConfig::ddr3_1600_desk().timing;
                    print!("{}", dataplant_core::circuit::waveform_of(kind, &timing).to_csv());
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("config error: {e}");
                    ExitCode::from(1)
                }
            }
        }
    }
}
