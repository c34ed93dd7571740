// Continued fractions, positive forms, even expansions and canonical keys.
//
// Run with `cargo run --example continued_fractions`.

use twobridge::{
    canonical_key, eval_cf, is_positive_knot_form, positive_cf_from_rational, to_even_cf,
    ContinuedFraction, Rational,
};

pub fn run_example() -> twobridge::Result<Vec<(String, String)>> {
    let mut rows = Vec::new();
    for text in ["3", "5", "2,2,1", "1,2,2", "3,2,3,4,1", "2,2"] {
        let cf: ContinuedFraction = text.parse()?;
        let value = eval_cf(&cf)?;
        if !is_positive_knot_form(&cf) {
            println!("[{cf}] = {value} is not a positive form");
            continue;
        }
        let key = canonical_key(&value)?;
        let even = to_even_cf(&value)?;
        println!("[{cf}] = {value}  key {key}  even [{even}]");
        rows.push((cf.to_string(), key.to_string()));
    }

    for (p, q) in [(7, 3), (7, 5), (7, 4), (13, 5)] {
        let r = Rational::new(p, q)?;
        match positive_cf_from_rational(&r) {
            Ok(cf) => println!("{r}: positive form [{cf}]"),
            Err(e) => println!("{r}: {e}"),
        }
    }
    Ok(rows)
}

#[allow(dead_code)]
fn main() -> twobridge::Result<()> {
    run_example().map(|_| ())
}
