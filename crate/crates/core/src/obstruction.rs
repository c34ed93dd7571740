//! The chirally cosmetic surgery obstruction for positive 2-bridge knots.
//!
//! For a positive 2-bridge knot that is not a `(2, 2n+1)` torus knot, a
//! chirally cosmetic surgery forces
//!
//! ```text
//! v3 · ((det - 5)/2 + 3g) = 7·a2² - a2 - 10·a4
//! ```
//!
//! so any knot where the sides differ is ruled out. All arithmetic here is
//! exact.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::conway_skein::MemoStore;
use crate::error::{Error, Result};
use crate::invariants::{compute_invariants, InvariantSet};
use crate::rational_cf::{
    canonical_key, crossing_count, eval_cf, CanonicalKnotKey, ContinuedFraction,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    /// A `(2, 2n+1)` torus knot; the obstruction does not apply.
    ExcludedTorus,
    /// The two sides differ: no chirally cosmetic surgery.
    ObstructionHolds,
    /// The two sides agree: the obstruction says nothing.
    ObstructionInconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::ExcludedTorus => "ExcludedTorus",
            Verdict::ObstructionHolds => "ObstructionHolds",
            Verdict::ObstructionInconclusive => "ObstructionInconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionRecord {
    pub key: CanonicalKnotKey,
    pub cf: ContinuedFraction,
    pub crossings: u32,
    pub inv: InvariantSet,
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub verdict: Verdict,
    /// `p + q*` of the canonical key.
    pub complexity: BigInt,
    /// `|lhs| / |rhs|`; `None` when `rhs = 0`.
    pub quotient: Option<BigRational>,
    /// `quotient / q*`; `None` when `rhs = 0`.
    pub s_k: Option<BigRational>,
}

impl ObstructionRecord {
    pub fn p(&self) -> &BigInt {
        &self.key.p
    }

    pub fn q(&self) -> &BigInt {
        &self.key.q_star
    }

    pub fn is_equal(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn is_torus(&self) -> bool {
        self.verdict == Verdict::ExcludedTorus
    }

    pub fn rhs_is_zero(&self) -> bool {
        self.rhs.is_zero()
    }

    /// `lhs - rhs`.
    pub fn difference(&self) -> BigInt {
        &self.lhs - &self.rhs
    }

    /// True when both `p, q > 20` yet `lhs > rhs` fails.
    pub fn violates_large_pq_trend(&self) -> bool {
        let twenty = BigInt::from(20);
        self.key.p > twenty && self.key.q_star > twenty && self.lhs <= self.rhs
    }
}

impl fmt::Display for ObstructionRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let frac = |x: &Option<BigRational>| match x {
            Some(v) => format!("{v} (~{:.6})", rational_to_f64(v)),
            None => "undefined (rhs = 0)".to_string(),
        };
        writeln!(
            f,
            "knot        C({}/{})  cf [{}]",
            self.key.p, self.key.q_star, self.cf
        )?;
        writeln!(f, "crossings   {}", self.crossings)?;
        writeln!(
            f,
            "invariants  a2 {}  a4 {}  det {}  genus {}  v3 {}",
            self.inv.a2, self.inv.a4, self.inv.det, self.inv.genus, self.inv.v3
        )?;
        writeln!(f, "lhs         {}", self.lhs)?;
        writeln!(f, "rhs         {}", self.rhs)?;
        writeln!(f, "equal       {}", self.is_equal())?;
        writeln!(f, "verdict     {}", self.verdict)?;
        writeln!(f, "complexity  {}", self.complexity)?;
        writeln!(f, "quotient    {}", frac(&self.quotient))?;
        write!(f, "s(K)        {}", frac(&self.s_k))
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// `v3 · ((det - 5)/2 + 3g)`. Requires odd `det`.
pub fn lhs(inv: &InvariantSet) -> Result<BigInt> {
    let shifted: BigInt = &inv.det - 5;
    if shifted.is_odd() {
        return Err(Error::InvalidInput(format!("det {} is even", inv.det)));
    }
    Ok(&inv.v3 * (shifted / 2 + 3 * BigInt::from(inv.genus)))
}

/// `7·a2² - a2 - 10·a4`.
pub fn rhs(inv: &InvariantSet) -> BigInt {
    &inv.a2 * &inv.a2 * 7 - &inv.a2 - &inv.a4 * 10
}

/// The only positive 2-bridge knots that are L-space knots: `C(2n+1, 1)`.
pub fn is_two_strand_torus(key: &CanonicalKnotKey) -> bool {
    key.q_star.is_one()
}

/// `|lhs| / |rhs|`.
pub fn obstruction_quotient(lhs: &BigInt, rhs: &BigInt) -> Result<BigRational> {
    if rhs.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(lhs.abs(), rhs.abs()))
}

/// Evaluates the obstruction for one positive-form word.
///
/// Fields other than `cf` depend only on the knot, so two words for the
/// same knot give records that differ only in `cf`. A zero right-hand side
/// leaves `quotient` and `s_k` unset instead of failing.
pub fn check(cf: &ContinuedFraction, memo: &MemoStore) -> Result<ObstructionRecord> {
    let inv = compute_invariants(cf, memo)?;
    let key = canonical_key(&eval_cf(cf)?)?;
    let lhs = lhs(&inv)?;
    let rhs = rhs(&inv);
    let verdict = if is_two_strand_torus(&key) {
        Verdict::ExcludedTorus
    } else if lhs != rhs {
        Verdict::ObstructionHolds
    } else {
        Verdict::ObstructionInconclusive
    };
    let quotient = match obstruction_quotient(&lhs, &rhs) {
        Ok(q) => Some(q),
        Err(Error::DivisionByZero) => None,
        Err(e) => return Err(e),
    };
    let s_k = quotient
        .as_ref()
        .map(|q| q / BigRational::from_integer(key.q_star.abs()));
    Ok(ObstructionRecord {
        complexity: &key.p + &key.q_star,
        crossings: crossing_count(cf),
        key,
        cf: cf.clone(),
        inv,
        lhs,
        rhs,
        verdict,
        quotient,
        s_k,
    })
}

/// A surgery slope `p/q`, possibly `∞ = 1/0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Slope {
    Finite(BigRational),
    Infinity,
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(r) if r.is_integer() => write!(f, "{}/1", r.numer()),
            Slope::Finite(r) => write!(f, "{r}"),
            Slope::Infinity => f.write_str("inf"),
        }
    }
}

/// The pair of chirally cosmetic slopes `2n²(2m+1) / (n(2m+1) ± 1)` of the
/// `(2, 2n+1)` torus knot, `+` first.
pub fn torus_cc_slopes(n: u64, m: u64) -> Result<(Slope, Slope)> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    let (n, m) = (BigInt::from(n), BigInt::from(m));
    let odd = &m * 2 + 1;
    let numer: BigInt = &n * &n * 2 * &odd;
    let base = &n * &odd;
    let slope = |den: BigInt| {
        if den.is_zero() {
            Slope::Infinity
        } else {
            Slope::Finite(BigRational::new(numer.clone(), den))
        }
    };
    Ok((slope(&base + 1), slope(&base - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(v3: i64, det: i64, genus: u32, a2: i64, a4: i64) -> InvariantSet {
        InvariantSet {
            a2: a2.into(),
            a4: a4.into(),
            det: det.into(),
            genus,
            v3: v3.into(),
        }
    }

    fn cf(v: &[i64]) -> ContinuedFraction {
        ContinuedFraction::new(v.to_vec())
    }

    fn key(p: i64, q: i64) -> CanonicalKnotKey {
        CanonicalKnotKey {
            p: p.into(),
            q_star: q.into(),
        }
    }

    #[test]
    fn sides() {
        assert_eq!(lhs(&inv(1, 3, 1, 1, 0)).unwrap(), 2.into());
        assert_eq!(lhs(&inv(5, 5, 2, 3, 1)).unwrap(), 30.into());
        assert_eq!(lhs(&inv(3, 7, 1, 2, 0)).unwrap(), 12.into());
        assert!(lhs(&inv(3, 8, 1, 2, 0)).is_err());
        assert_eq!(rhs(&inv(1, 3, 1, 1, 0)), 6.into());
        assert_eq!(rhs(&inv(5, 5, 2, 3, 1)), 50.into());
        assert_eq!(rhs(&inv(3, 7, 1, 2, 0)), 26.into());
    }

    #[test]
    fn torus_detection() {
        assert!(is_two_strand_torus(&key(3, 1)));
        assert!(!is_two_strand_torus(&key(7, 3)));
        assert!(is_two_strand_torus(&key(31, 1)));
    }

    #[test]
    fn check_examples() {
        let memo = MemoStore::new();
        let r = check(&cf(&[2, 2, 1]), &memo).unwrap();
        assert_eq!(r.verdict, Verdict::ObstructionHolds);
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (12.into(), 26.into()));
        assert_eq!(r.quotient, Some(BigRational::new(6.into(), 13.into())));
        assert_eq!(r.s_k, Some(BigRational::new(2.into(), 13.into())));
        assert_eq!(r.complexity, 10.into());

        assert_eq!(
            check(&cf(&[3]), &memo).unwrap().verdict,
            Verdict::ExcludedTorus
        );

        let other = check(&cf(&[1, 2, 2]), &memo).unwrap();
        assert_eq!(
            ObstructionRecord {
                cf: r.cf.clone(),
                ..other
            },
            r
        );
    }

    #[test]
    fn quotient_errors_on_zero_rhs() {
        assert!(matches!(
            obstruction_quotient(&1.into(), &0.into()),
            Err(Error::DivisionByZero)
        ));
        assert_eq!(
            obstruction_quotient(&(-4).into(), &6.into()).unwrap(),
            BigRational::new(2.into(), 3.into())
        );
    }

    #[test]
    fn slopes() {
        let fr = |p: i64, q: i64| Slope::Finite(BigRational::new(p.into(), q.into()));
        assert_eq!(torus_cc_slopes(2, 0).unwrap(), (fr(8, 3), fr(8, 1)));
        assert_eq!(torus_cc_slopes(1, 0).unwrap(), (fr(1, 1), Slope::Infinity));
        assert_eq!(torus_cc_slopes(1, 1).unwrap(), (fr(3, 2), fr(3, 1)));
        assert!(torus_cc_slopes(0, 1).is_err());
        assert_eq!(torus_cc_slopes(1, 0).unwrap().0.to_string(), "1/1");
        assert_eq!(torus_cc_slopes(1, 0).unwrap().1.to_string(), "inf");
    }

    #[test]
    fn large_pq_monitor() {
        let memo = MemoStore::new();
        let mut r = check(&cf(&[2, 2, 1]), &memo).unwrap();
        assert!(!r.violates_large_pq_trend());
        r.key = key(41, 23);
        assert!(r.violates_large_pq_trend());
    }
}
