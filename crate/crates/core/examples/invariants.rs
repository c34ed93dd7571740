// The invariant bundle used by the obstruction: a2, a4, det, genus, v3.
//
// Run with `cargo run --example invariants`.

use twobridge::{
    compute_invariants, enumerate_presentations, DedupMode, EnumerationPlan, InvariantSet,
    MemoStore,
};

pub fn run_example() -> twobridge::Result<Vec<InvariantSet>> {
    let memo = MemoStore::new();
    let plan = EnumerationPlan::new(9, DedupMode::Presentations)?;
    println!(
        "{:<14} {:>4} {:>4} {:>4} {:>6} {:>4}",
        "cf", "a2", "a4", "det", "genus", "v3"
    );
    let mut out = Vec::new();
    for cf in enumerate_presentations(&plan) {
        let inv = compute_invariants(&cf, &memo)?;
        println!(
            "{:<14} {:>4} {:>4} {:>4} {:>6} {:>4}",
            format!("[{cf}]"),
            inv.a2,
            inv.a4,
            inv.det,
            inv.genus,
            inv.v3
        );
        out.push(inv);
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> twobridge::Result<()> {
    run_example().map(|_| ())
}
