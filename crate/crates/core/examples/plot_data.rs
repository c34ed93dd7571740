// Writes the scatter-plot tables for a 17-crossing sweep.
//
// Run with `cargo run --release --example plot_data -- out_dir`.

use std::path::{Path, PathBuf};

use twobridge::{emit_plot_data, run_sweep, SweepConfig};

/// Returns the number of data rows in each written file.
pub fn run_example() -> twobridge::Result<Vec<usize>> {
    let scratch = tempfile::tempdir()?;
    run(&scratch.path().join("plots"))
}

fn run(out_dir: &Path) -> twobridge::Result<Vec<usize>> {
    let scratch = tempfile::tempdir()?;
    let config = SweepConfig::new(17, scratch.path().join("results.csv"));
    run_sweep(&config)?;
    let mut counts = Vec::new();
    for f in emit_plot_data(&config.output, out_dir)? {
        let rows = std::fs::read_to_string(&f)?.lines().count() - 1;
        println!("{:<28} {rows} rows", f.display());
        counts.push(rows);
    }
    Ok(counts)
}

#[allow(dead_code)]
fn main() -> twobridge::Result<()> {
    match std::env::args().nth(1) {
        Some(dir) => run(&PathBuf::from(dir)).map(|_| ()),
        None => run_example().map(|_| ()),
    }
}
