// Recomputes every invariant by an independent route: Seifert matrices for
// the Alexander polynomial, determinant and genus, the Kauffman bracket for
// the Jones polynomial and v3.
//
// Run with `cargo run --example oracles`.

use twobridge::oracles::cross_check;
use twobridge::{enumerate_presentations, DedupMode, EnumerationPlan, MemoStore};

pub fn run_example() -> twobridge::Result<usize> {
    let memo = MemoStore::new();
    let plan = EnumerationPlan::new(11, DedupMode::Presentations)?;
    let mut checked = 0;
    for cf in enumerate_presentations(&plan) {
        let c = cross_check(&cf, &memo)?;
        if !c.all_agree() {
            return Err(twobridge::Error::InvalidInput(format!(
                "routes disagree:\n{c}"
            )));
        }
        checked += 1;
    }
    println!("{checked} presentations up to 11 crossings: all routes agree");
    println!();
    println!("{}", cross_check(&"3,2,3,4,1".parse()?, &memo)?);
    Ok(checked)
}

#[allow(dead_code)]
fn main() -> twobridge::Result<()> {
    run_example().map(|_| ())
}
