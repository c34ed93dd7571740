//! Genus and `v3` of positive 2-bridge knots, plus the bundle of classical
//! invariants the obstruction needs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::conway_skein::{conway_of_cf, MemoStore};
use crate::error::{Error, Result};
use crate::rational_cf::{
    eval_cf, is_positive_knot_form, to_even_cf, ContinuedFraction, EvenContinuedFraction,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSet {
    pub a2: BigInt,
    pub a4: BigInt,
    pub det: BigInt,
    pub genus: u32,
    pub v3: BigInt,
}

/// Genus read off the standard diagram: `(Σ a_odd - 1) / 2`.
///
/// The Seifert algorithm on the diagram gives `c = Σ aᵢ` crossings and
/// `s = Σ a_even + 2` circles, and the diagram is reduced alternating, so
/// `(1 + c - s) / 2` is the genus.
pub fn genus_closed(cf: &ContinuedFraction) -> u32 {
    let odd_sum: i64 = cf.entries().iter().step_by(2).sum();
    ((odd_sum - 1) / 2) as u32
}

/// Half the length of the even continued fraction.
pub fn genus_even(ecf: &EvenContinuedFraction) -> u32 {
    (ecf.entries().len() / 2) as u32
}

/// `v3` from `[2b1, 2c1, ..., 2bn, 2cn]`:
///
/// ```text
/// v3 = ( Σₖ cₖ (b1 + ... + bₖ)²  -  Σₖ bₖ (cₖ + ... + cn)² ) / 2
/// ```
pub fn v3_even(ecf: &EvenContinuedFraction) -> Result<BigInt> {
    let bs: Vec<BigInt> = ecf.bs().map(BigInt::from).collect();
    let cs: Vec<BigInt> = ecf.cs().map(BigInt::from).collect();

    let mut first = BigInt::zero();
    let mut prefix_b = BigInt::zero();
    for (b, c) in bs.iter().zip(&cs) {
        prefix_b += b;
        first += c * &prefix_b * &prefix_b;
    }
    let mut second = BigInt::zero();
    let mut suffix_c = BigInt::zero();
    for (b, c) in bs.iter().zip(&cs).rev() {
        suffix_c += c;
        second += b * &suffix_c * &suffix_c;
    }

    let (half, rem) = (first - second).div_rem(&BigInt::from(2));
    if !rem.is_zero() {
        return Err(Error::NonIntegerResult(format!(
            "v3 of [{ecf}] is a half-integer"
        )));
    }
    Ok(half)
}

/// All invariants of a positive-form word.
///
/// `a2`, `a4` and `det` come from the skein recursion, genus from the
/// diagram, `v3` from the even continued fraction. A vanishing `v3` is an
/// error: the obstruction is only meaningful for `v3 ≠ 0`.
pub fn compute_invariants(cf: &ContinuedFraction, memo: &MemoStore) -> Result<InvariantSet> {
    if !is_positive_knot_form(cf) {
        return Err(Error::NotPositiveKnot(format!("[{cf}]")));
    }
    let poly = conway_of_cf(cf, memo)?;
    let genus = genus_closed(cf);
    assert_eq!(
        poly.degree(),
        Some(2 * genus as usize),
        "Conway degree disagrees with diagram genus for [{cf}]"
    );

    let ecf = to_even_cf(&eval_cf(cf)?)?;
    let v3 = v3_even(&ecf)?;
    if v3.is_zero() {
        return Err(Error::VanishingV3(cf.to_string()));
    }

    Ok(InvariantSet {
        a2: poly.a2(),
        a4: poly.a4(),
        det: poly.determinant(),
        genus,
        v3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cf(v: &[i64]) -> ContinuedFraction {
        ContinuedFraction::new(v.to_vec())
    }

    fn ecf(v: &[i64]) -> EvenContinuedFraction {
        EvenContinuedFraction::new(v.to_vec()).unwrap()
    }

    #[test]
    fn closed_genus() {
        assert_eq!(genus_closed(&cf(&[3])), 1);
        assert_eq!(genus_closed(&cf(&[5])), 2);
        assert_eq!(genus_closed(&cf(&[2, 2, 1])), 1);
        assert_eq!(genus_closed(&cf(&[3, 2, 3, 4, 1])), 3);
    }

    #[test]
    fn even_genus() {
        assert_eq!(genus_even(&ecf(&[-2, 2])), 1);
        assert_eq!(genus_even(&ecf(&[-2, 2, -2, 2])), 2);
        assert_eq!(genus_even(&ecf(&[-2, 4])), 1);
    }

    #[test]
    fn v3_examples() {
        assert_eq!(v3_even(&ecf(&[-2, 2])).unwrap(), 1.into());
        assert_eq!(v3_even(&ecf(&[-2, 2, -2, 2])).unwrap(), 5.into());
        assert_eq!(v3_even(&ecf(&[-2, 4])).unwrap(), 3.into());
    }

    #[test]
    fn known_knots() {
        let memo = MemoStore::new();
        let t = compute_invariants(&cf(&[3]), &memo).unwrap();
        assert_eq!(
            t,
            InvariantSet {
                a2: 1.into(),
                a4: 0.into(),
                det: 3.into(),
                genus: 1,
                v3: 1.into()
            }
        );
        let k = compute_invariants(&cf(&[5]), &memo).unwrap();
        assert_eq!(
            (k.a2, k.a4, k.det, k.genus, k.v3),
            (3.into(), 1.into(), 5.into(), 2, 5.into())
        );
        let k = compute_invariants(&cf(&[2, 2, 1]), &memo).unwrap();
        assert_eq!(
            (k.a2, k.a4, k.det, k.genus, k.v3),
            (2.into(), 0.into(), 7.into(), 1, 3.into())
        );
        assert_eq!(
            compute_invariants(&cf(&[1, 2, 2]), &memo).unwrap().v3,
            3.into()
        );
    }

    #[test]
    fn rejects_non_positive_forms() {
        let memo = MemoStore::new();
        assert!(matches!(
            compute_invariants(&cf(&[2, 2]), &memo),
            Err(Error::NotPositiveKnot(_))
        ));
        assert!(compute_invariants(&cf(&[1, 1, 1]), &memo).is_err());
    }
}
