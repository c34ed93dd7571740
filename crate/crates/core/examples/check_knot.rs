// Evaluates the obstruction for a few knots and lists the torus-knot slopes
// it cannot rule out.
//
// Run with `cargo run --example check_knot`.

use twobridge::obstruction::torus_cc_slopes;
use twobridge::{check_one, CheckInput, Verdict};

pub fn run_example() -> twobridge::Result<Vec<Verdict>> {
    let mut verdicts = Vec::new();
    for text in ["3", "5", "2,2,1", "11/5", "3,2,3,4,1"] {
        let out = check_one(&CheckInput::parse(text)?, false)?;
        println!("{}\n", out.record);
        verdicts.push(out.record.verdict);
    }

    println!("chirally cosmetic slope pairs of T(2, 2n+1):");
    for n in 1..=3 {
        for m in 0..=2 {
            let (a, b) = torus_cc_slopes(n, m)?;
            println!("  n {n}  m {m}:  {a}  and  {b}");
        }
    }
    Ok(verdicts)
}

#[allow(dead_code)]
fn main() -> twobridge::Result<()> {
    run_example().map(|_| ())
}
