// Counts positive 2-bridge knots per crossing number, both as continued
// fraction presentations and as distinct knots.
//
// Run with `cargo run --release --example census -- 25`.

use twobridge::{census, DedupMode, EnumerationPlan, KnotCensus};

pub fn run_example() -> twobridge::Result<KnotCensus> {
    run(19)
}

fn run(max: u32) -> twobridge::Result<KnotCensus> {
    let counts = census(&EnumerationPlan::new(max, DedupMode::Presentations)?)?;
    println!("{counts}");
    Ok(counts)
}

#[allow(dead_code)]
fn main() -> twobridge::Result<()> {
    let max = match std::env::args().nth(1) {
        Some(arg) => arg
            .parse()
            .map_err(|_| twobridge::Error::Parse(format!("bad crossing bound {arg:?}")))?,
        None => 19,
    };
    run(max).map(|_| ())
}
