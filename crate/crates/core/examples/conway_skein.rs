// Conway polynomials from the skein recursion, with the shared memo.
//
// Run with `cargo run --example conway_skein`.

use twobridge::{conway_of_cf, ContinuedFraction, MemoStore};

pub fn run_example() -> twobridge::Result<Vec<String>> {
    let memo = MemoStore::new();
    let mut lines = Vec::new();
    for text in ["3", "5", "2,2,1", "1,4,2", "3,2,3,4,1", "1,2,1,2,1,2,1,2,1"] {
        let cf: ContinuedFraction = text.parse()?;
        let poly = conway_of_cf(&cf, &memo)?;
        let line = format!(
            "[{cf}]  ∇ = {poly}  a2 {}  a4 {}  det {}",
            poly.a2(),
            poly.a4(),
            poly.determinant()
        );
        println!("{line}");
        lines.push(line);
    }
    let stats = memo.stats();
    println!(
        "memo: {} entries, {} hits, {} misses, ~{} bytes",
        stats.entries,
        stats.hits,
        stats.misses,
        memo.bytes()
    );
    Ok(lines)
}

#[allow(dead_code)]
fn main() -> twobridge::Result<()> {
    run_example().map(|_| ())
}
