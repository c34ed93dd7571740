//! Output format, resume, checkpoint validation and memo bounds of sweeps.

use std::fs;
use std::ops::ControlFlow;
use std::path::Path;

use twobridge::sweep::{CsvRow, CSV_HEADER, PLOT_FILES};
use twobridge::{emit_plot_data, run_sweep, run_sweep_with, DedupMode, Error, SweepConfig};

fn config(dir: &Path, max: u32, name: &str) -> SweepConfig {
    let mut c = SweepConfig::new(max, dir.join(name));
    c.jobs = 2;
    c
}

fn read(path: &Path) -> String {
    fs::read_to_string(path).unwrap()
}

#[test]
fn csv_layout() {
    let dir = tempfile::tempdir().unwrap();
    let c = config(dir.path(), 9, "out.csv");
    run_sweep(&c).unwrap();
    let text = read(&c.output);
    assert!(!text.contains('\r'));
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), CSV_HEADER.join(","));
    assert_eq!(
        lines.next().unwrap(),
        "3,3,1,3,1,0,3,1,1,2,6,false,true,4,0.333333333333,1,3,0.333333333333,1,3"
    );
    let rows: Vec<CsvRow> = csv::Reader::from_path(&c.output)
        .unwrap()
        .deserialize()
        .collect::<Result<_, _>>()
        .unwrap();
    assert_eq!(rows.len(), 33);
    assert!(rows.iter().all(|r| !r.cf.contains(' ')));
    let five_two: Vec<_> = rows.iter().filter(|r| r.p == "7" && r.q == "3").collect();
    assert_eq!(five_two.len(), 2);
    assert_eq!(
        CsvRow {
            cf: String::new(),
            ..five_two[0].clone()
        },
        CsvRow {
            cf: String::new(),
            ..five_two[1].clone()
        }
    );
}

#[test]
fn canonical_mode_keeps_one_row_per_knot() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = config(dir.path(), 15, "canon.csv");
    c.dedup_mode = DedupMode::Canonical;
    let report = run_sweep(&c).unwrap();
    assert_eq!(report.rows, report.census.total_canonical);
    assert_eq!(report.rows, 1 + 2 + 5 + 12 + 30 + 76 + 195);
}

#[test]
fn resume_matches_uninterrupted_run() {
    let dir = tempfile::tempdir().unwrap();
    let straight = config(dir.path(), 17, "straight.csv");
    run_sweep(&straight).unwrap();

    let mut resumed = config(dir.path(), 17, "resumed.csv");
    resumed.checkpoint_dir = Some(dir.path().join("ckpt"));
    resumed.jobs = 3;
    let stop = run_sweep_with(&resumed, |b| {
        if b.crossings == 11 {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    assert!(matches!(stop, Err(Error::Interrupted(11))));
    assert!(!resumed.output.exists());

    let report = run_sweep(&resumed).unwrap();
    assert_eq!(report.resumed_bands, vec![3, 5, 7, 9, 11]);
    assert_eq!(read(&straight.output), read(&resumed.output));

    // A completed checkpoint replays every band.
    let again = run_sweep(&resumed).unwrap();
    assert_eq!(again.resumed_bands.len(), 8);
    assert_eq!(read(&straight.output), read(&resumed.output));
}

#[test]
fn corrupt_checkpoint_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = config(dir.path(), 11, "out.csv");
    let ckpt = dir.path().join("ckpt");
    c.checkpoint_dir = Some(ckpt.clone());
    run_sweep(&c).unwrap();

    let band = ckpt.join("band_007.csv");
    let mut bytes = fs::read(&band).unwrap();
    bytes[0] ^= 1;
    fs::write(&band, bytes).unwrap();
    assert!(matches!(run_sweep(&c), Err(Error::CheckpointCorrupt(_))));

    fs::remove_file(&band).unwrap();
    assert!(matches!(run_sweep(&c), Err(Error::CheckpointCorrupt(_))));

    fs::write(ckpt.join("manifest.json"), "{ not json").unwrap();
    assert!(matches!(run_sweep(&c), Err(Error::CheckpointCorrupt(_))));
}

#[test]
fn checkpoint_from_other_run_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = config(dir.path(), 9, "out.csv");
    c.checkpoint_dir = Some(dir.path().join("ckpt"));
    run_sweep(&c).unwrap();
    c.max_crossings = 11;
    assert!(matches!(run_sweep(&c), Err(Error::CheckpointCorrupt(_))));
    c.max_crossings = 9;
    c.dedup_mode = DedupMode::Canonical;
    assert!(matches!(run_sweep(&c), Err(Error::CheckpointCorrupt(_))));
}

#[test]
fn memo_cap_bounds_memory_without_changing_results() {
    let dir = tempfile::tempdir().unwrap();
    let free = config(dir.path(), 21, "free.csv");
    let free_report = run_sweep(&free).unwrap();

    let cap = 256 * 1024;
    let mut capped = config(dir.path(), 21, "capped.csv");
    capped.memo_cap_bytes = Some(cap);
    let report = run_sweep(&capped).unwrap();

    assert!(free_report.peak_memo_bytes > 4 * cap);
    assert!(report.memo_evictions > 0);
    // Eviction runs right after each insert, so the overshoot is at most one
    // entry per shard.
    assert!(
        report.peak_memo_bytes <= cap + cap / 4,
        "{}",
        report.peak_memo_bytes
    );
    assert_eq!(read(&free.output), read(&capped.output));
}

#[test]
fn zero_workers_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = config(dir.path(), 9, "out.csv");
    c.jobs = 0;
    assert!(matches!(run_sweep(&c), Err(Error::InvalidInput(_))));
    assert!(!c.output.exists());
}

#[test]
fn plot_tables() {
    let dir = tempfile::tempdir().unwrap();
    let c = config(dir.path(), 13, "out.csv");
    run_sweep(&c).unwrap();
    let files = emit_plot_data(&c.output, &dir.path().join("plots")).unwrap();
    assert_eq!(files.len(), PLOT_FILES.len());

    let p_vs_q = read(&dir.path().join("plots/p_vs_q.csv"));
    let mut lines = p_vs_q.lines();
    assert_eq!(lines.next().unwrap(), "p,q,s_k,band,excluded_torus");
    assert!(lines.clone().any(|l| l == "7,3,0.153846153846,blue,false"));
    assert_eq!(lines.count(), 232);

    let diff = read(&dir.path().join("plots/minpq_vs_difference.csv"));
    assert!(diff.lines().any(|l| l == "3,-14,false"));
    assert!(diff.lines().any(|l| l == "1,-4,true"));
}

#[test]
fn plot_tables_from_empty_results() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("empty.csv");
    fs::write(&input, format!("{}\n", CSV_HEADER.join(","))).unwrap();
    let out = dir.path().join("plots");
    emit_plot_data(&input, &out).unwrap();
    for f in PLOT_FILES {
        assert_eq!(read(&out.join(f)).lines().count(), 1, "{f}");
    }
}
