//! Every example must run to completion and produce sensible output.

mod continued_fractions {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/continued_fractions.rs"
    ));
}

mod census {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/census.rs"));
}

mod conway_skein {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/conway_skein.rs"
    ));
}

mod invariants {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/invariants.rs"
    ));
}

mod oracles {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/oracles.rs"));
}

mod check_knot {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/check_knot.rs"
    ));
}

mod sweep {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/sweep.rs"));
}

mod plot_data {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/plot_data.rs"
    ));
}

use twobridge::Verdict;

#[test]
fn continued_fractions_runs() {
    let rows = continued_fractions::run_example().expect("continued_fractions example");
    assert_eq!(rows[2], ("2,2,1".to_string(), "(7, 3)".to_string()));
    assert_eq!(rows[2].1, rows[3].1);
}

#[test]
fn census_runs() {
    let counts = census::run_example().expect("census example");
    assert_eq!(counts.total_presentations, 4180);
}

#[test]
fn conway_skein_runs() {
    let lines = conway_skein::run_example().expect("conway_skein example");
    assert!(lines[2].contains("1 + 2z^2"));
}

#[test]
fn invariants_runs() {
    let table = invariants::run_example().expect("invariants example");
    assert_eq!(table.len(), 33);
    assert!(table.iter().all(|inv| inv.v3 > 0.into()));
}

#[test]
fn oracles_runs() {
    assert_eq!(oracles::run_example().expect("oracles example"), 88);
}

#[test]
fn check_knot_runs() {
    let v = check_knot::run_example().expect("check_knot example");
    assert_eq!(
        &v[..3],
        [
            Verdict::ExcludedTorus,
            Verdict::ExcludedTorus,
            Verdict::ObstructionHolds
        ]
    );
}

#[test]
fn sweep_runs() {
    let report = sweep::run_example().expect("sweep example");
    assert_eq!(report.resumed_bands, vec![3, 5, 7, 9]);
    assert_eq!((report.rows, report.equality_count), (1596, 0));
}

#[test]
fn plot_data_runs() {
    let counts = plot_data::run_example().expect("plot_data example");
    assert_eq!(counts, vec![1596; 7]);
}
