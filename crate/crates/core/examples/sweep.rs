// A checkpointed sweep that is stopped after a few bands and resumed.
//
// Run with `cargo run --release --example sweep`.

use std::ops::ControlFlow;

use twobridge::{run_sweep, run_sweep_with, Error, SweepConfig, SweepReport};

pub fn run_example() -> twobridge::Result<SweepReport> {
    let dir = tempfile::tempdir()?;
    let mut config = SweepConfig::new(17, dir.path().join("results.csv"));
    config.checkpoint_dir = Some(dir.path().join("checkpoint"));

    let first = run_sweep_with(&config, |band| {
        println!(
            "committed {:>2} crossings: {} rows",
            band.crossings, band.rows
        );
        if band.crossings == 9 {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    match first {
        Err(Error::Interrupted(c)) => println!("stopped after the {c}-crossing band"),
        other => return other,
    }

    let report = run_sweep(&config)?;
    println!("{}", report.summary());
    let csv = std::fs::read_to_string(&config.output)?;
    println!("{} CSV lines, first rows:", csv.lines().count());
    for line in csv.lines().take(4) {
        println!("  {line}");
    }
    Ok(report)
}

#[allow(dead_code)]
fn main() -> twobridge::Result<()> {
    let report = run_example()?;
    std::process::exit(report.exit_code())
}
