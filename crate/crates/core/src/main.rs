use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use twobridge::{
    check_one, emit_plot_data, run_sweep, CheckInput, DedupMode, SweepConfig, Verdict,
};

/// Obstruction checks for chirally cosmetic surgeries on positive 2-bridge knots.
///
/// Exit status: 0 when every knot obeys the obstruction, 2 when some
/// non-torus knot has equal sides, 1 on errors.
#[derive(Parser)]
#[command(name = "twobridge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every positive 2-bridge knot up to a crossing bound.
    Sweep {
        #[arg(long)]
        max_crossings: u32,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Soft memory bound for the skein memo, in bytes.
        #[arg(long)]
        memo_cap: Option<usize>,
        #[arg(long, default_value = "presentations")]
        dedup: DedupMode,
        /// Directory for per-band checkpoints; reruns resume from it.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate a single knot.
    #[command(group(ArgGroup::new("knot").required(true).args(["cf", "fraction"])))]
    Check {
        /// Positive-form continued fraction, e.g. "2,2,1".
        #[arg(long, allow_hyphen_values = true)]
        cf: Option<String>,
        /// Fraction p/q, e.g. "7/3".
        #[arg(long, allow_hyphen_values = true)]
        fraction: Option<String>,
        /// Recompute every invariant by the independent routes as well.
        #[arg(long)]
        verify: bool,
    },
    /// Derive the scatter-plot tables from a sweep CSV.
    PlotData {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> twobridge::Result<u8> {
    match cli.command {
        Command::Sweep {
            max_crossings,
            jobs,
            memo_cap,
            dedup,
            checkpoint,
            out,
        } => {
            let mut config = SweepConfig::new(max_crossings, out);
            if let Some(jobs) = jobs {
                config.jobs = jobs;
            }
            config.memo_cap_bytes = memo_cap;
            config.dedup_mode = dedup;
            config.checkpoint_dir = checkpoint;
            let report = run_sweep(&config)?;
            println!("{}", report.summary());
            Ok(report.exit_code() as u8)
        }
        Command::Check {
            cf,
            fraction,
            verify,
        } => {
            let input = match (cf, fraction) {
                (Some(cf), _) => CheckInput::Cf(cf.parse()?),
                (None, Some(fr)) => CheckInput::Fraction(fr.parse()?),
                (None, None) => unreachable!("clap enforces one of --cf/--fraction"),
            };
            let output = check_one(&input, verify)?;
            println!("{output}");
            if let Some(c) = &output.cross_check {
                if !c.all_agree() {
                    return Err(twobridge::Error::InvalidInput(
                        "independent invariant routes disagree".into(),
                    ));
                }
            }
            Ok(
                if output.record.verdict == Verdict::ObstructionInconclusive {
                    2
                } else {
                    0
                },
            )
        }
        Command::PlotData { input, out } => {
            for path in emit_plot_data(&input, &out)? {
                println!("{}", path.display());
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
