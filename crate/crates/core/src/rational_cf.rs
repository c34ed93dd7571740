//! Continued fractions and the rational numbers that name 2-bridge knots.
//!
//! A word `[a1, ..., am]` stands for the nested fraction
//! `a1 + 1/(a2 + 1/(... + 1/am))`. Its value `p/q` identifies the knot
//! `C(p, q)`, which only depends on `p` and on `q` up to `q ≡ q' (mod p)`
//! and `q q' ≡ 1 (mod p)`; [`CanonicalKnotKey`] picks one representative.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A finite twist-region word `[a1, ..., am]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ContinuedFraction(Vec<i64>);

impl ContinuedFraction {
    pub fn new(entries: Vec<i64>) -> Self {
        ContinuedFraction(entries)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Evaluates the nested fraction exactly.
    pub fn eval(&self) -> Result<Rational> {
        eval_cf(self)
    }
}

impl From<Vec<i64>> for ContinuedFraction {
    fn from(entries: Vec<i64>) -> Self {
        ContinuedFraction(entries)
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl FromStr for ContinuedFraction {
    type Err = Error;

    /// Parses the comma-separated form, e.g. `"2,2,1"`. Surrounding
    /// brackets and whitespace are tolerated.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        if body.trim().is_empty() {
            return Err(Error::Parse(format!("empty continued fraction {s:?}")));
        }
        body.split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Parse(format!("bad entry {tok:?} in {s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(ContinuedFraction)
    }
}

/// A fraction `p/q` in lowest terms with `q > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rational {
    p: BigInt,
    q: BigInt,
}

impl Rational {
    /// Builds `p/q` reduced to lowest terms with a positive denominator.
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let (mut p, mut q) = (p.into(), q.into());
        if q.is_zero() {
            return Err(Error::InvalidInput(format!("{p}/0 has a zero denominator")));
        }
        if q.is_negative() {
            p = -p;
            q = -q;
        }
        let g = p.gcd(&q);
        if !g.is_one() {
            p /= &g;
            q /= &g;
        }
        Ok(Rational { p, q })
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Parses `"p/q"`; a bare integer is read as `p/1`.
    fn from_str(s: &str) -> Result<Self> {
        let parse = |tok: &str| {
            tok.trim()
                .parse::<BigInt>()
                .map_err(|e| Error::Parse(format!("bad integer {tok:?} in {s:?}: {e}")))
        };
        match s.split_once('/') {
            Some((p, q)) => Rational::new(parse(p)?, parse(q)?),
            None => Rational::new(parse(s)?, 1),
        }
    }
}

/// Evaluates `[a1, ..., am]` to `p/q` in lowest terms.
pub fn eval_cf(cf: &ContinuedFraction) -> Result<Rational> {
    let entries = cf.entries();
    let (&last, rest) = entries
        .split_last()
        .ok_or_else(|| Error::InvalidInput("empty continued fraction".into()))?;
    // Invariant: the tail evaluated so far equals num/den.
    let mut num = BigInt::from(last);
    let mut den = BigInt::one();
    for &a in rest.iter().rev() {
        if num.is_zero() {
            return Err(Error::ZeroDenominator(cf.to_string()));
        }
        let next = BigInt::from(a) * &num + &den;
        den = std::mem::replace(&mut num, next);
    }
    Rational::new(num, den)
}

/// True iff the word has odd length, positive entries, even entries at even
/// (1-based) positions, and an odd entry sum of at least 3.
pub fn is_positive_knot_form(cf: &ContinuedFraction) -> bool {
    let e = cf.entries();
    if !is_positive_diagram(e) {
        return false;
    }
    let sum: i64 = e.iter().sum();
    sum % 2 == 1 && sum >= 3
}

/// Parity and sign rules alone: odd length, all entries ≥ 1, even-position
/// entries even.
pub(crate) fn is_positive_diagram(entries: &[i64]) -> bool {
    entries.len() % 2 == 1
        && entries
            .iter()
            .enumerate()
            .all(|(i, &a)| a >= 1 && (i % 2 == 0 || a % 2 == 0))
}

/// Number of crossings of the standard diagram, `Σ aᵢ`.
pub fn crossing_count(cf: &ContinuedFraction) -> u32 {
    cf.entries().iter().sum::<i64>() as u32
}

/// An even-length word of nonzero even entries `[2b1, 2c1, ..., 2bn, 2cn]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EvenContinuedFraction(Vec<i64>);

impl EvenContinuedFraction {
    /// Validates the shape; evaluation is not checked here.
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() || !entries.len().is_multiple_of(2) {
            return Err(Error::InvalidInput(format!(
                "even continued fraction needs a nonzero even length, got {}",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|&&a| a == 0 || a % 2 != 0) {
            return Err(Error::InvalidInput(format!(
                "even continued fraction entry {bad} is not a nonzero even integer"
            )));
        }
        Ok(EvenContinuedFraction(entries))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    /// Halved entries at odd positions: `b1, ..., bn`.
    pub fn bs(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.iter().step_by(2).map(|a| a / 2)
    }

    /// Halved entries at even positions: `c1, ..., cn`.
    pub fn cs(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.iter().skip(1).step_by(2).map(|a| a / 2)
    }

    pub fn as_cf(&self) -> ContinuedFraction {
        ContinuedFraction(self.0.clone())
    }
}

impl fmt::Display for EvenContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.as_cf().fmt(f)
    }
}

/// Expands `p/q` (with `|p| > |q|`, `p` odd) into an even continued fraction.
///
/// An odd `q` is first shifted by `±p` into `(-|p|, |p|)`; if both shifts
/// land there the negative one is used. Each partial quotient is the even
/// member of `{⌊x⌋, ⌊x⌋ + 1}`.
pub fn to_even_cf(r: &Rational) -> Result<EvenContinuedFraction> {
    let (p, q) = (r.p(), r.q());
    if p.abs() <= q.abs() {
        return Err(Error::InvalidInput(format!("{r}: need |p| > |q|")));
    }
    if p.is_even() {
        return Err(Error::InvalidInput(format!("{r}: p must be odd")));
    }
    if q.is_zero() {
        return Err(Error::InvalidInput(format!("{r}: q must be nonzero")));
    }

    let q_shifted = if q.is_odd() {
        let pa = p.abs();
        let down = q - p;
        let up = q + p;
        let mut fits: Vec<BigInt> = [down, up].into_iter().filter(|c| c.abs() < pa).collect();
        fits.sort();
        fits.into_iter()
            .next()
            .ok_or_else(|| Error::InvalidInput(format!("{r}: no shift of q fits below |p|")))?
    } else {
        q.clone()
    };

    let mut num = p.clone();
    let mut den = q_shifted;
    let mut entries = Vec::new();
    loop {
        let floor = num.div_floor(&den);
        let a = if floor.is_even() { floor } else { floor + 1 };
        let rem = &num - &a * &den;
        let a = i64::try_from(&a)
            .map_err(|_| Error::InvalidInput(format!("{r}: partial quotient {a} overflows")))?;
        entries.push(a);
        if rem.is_zero() {
            break;
        }
        debug_assert!(rem.abs() < den.abs(), "denominator chain must shrink");
        num = std::mem::replace(&mut den, rem);
    }
    EvenContinuedFraction::new(entries)
}

/// Canonical representative `(p, min(q mod p, q⁻¹ mod p))` of `C(p, q)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKnotKey {
    pub p: BigInt,
    pub q_star: BigInt,
}

impl fmt::Display for CanonicalKnotKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q_star)
    }
}

/// Requires `p > 0` odd and `gcd(p, q) = 1`.
/// A negative numerator is moved to the denominator first: `-p/q = p/-q`.
pub fn canonical_key(r: &Rational) -> Result<CanonicalKnotKey> {
    let (p, q) = if r.p().is_negative() {
        (-r.p(), -r.q())
    } else {
        (r.p().clone(), r.q().clone())
    };
    if p.is_zero() || p.is_even() {
        return Err(Error::InvalidInput(format!(
            "{r}: canonical key needs odd p"
        )));
    }
    let p = &p;
    let q = q.mod_floor(p);
    let q_star = match mod_inverse(&q, p) {
        Some(inv) => q.clone().min(inv),
        None if p.is_one() => BigInt::zero(),
        None => {
            return Err(Error::InvalidInput(format!(
                "{r}: q is not invertible mod p"
            )))
        }
    };
    Ok(CanonicalKnotKey {
        p: p.clone(),
        q_star,
    })
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let egcd = a.extended_gcd(m);
    if egcd.gcd.is_one() {
        Some(egcd.x.mod_floor(m))
    } else {
        None
    }
}

/// Finds a positive-form word whose value is `p/q'` with `q' ≡ q (mod p)`.
///
/// With all entries positive and every even-position entry at least 2, the
/// word is one of the two regular expansions of `p/q'` (ending in `an` or in
/// `an - 1, 1`), so only those two candidates need checking. Reversal maps
/// positive forms to positive forms and `q` to `q⁻¹`, so the search covers
/// the inverse class as well.
pub fn positive_cf_from_rational(r: &Rational) -> Result<ContinuedFraction> {
    let p = r.p();
    if !p.is_positive() || p.is_even() {
        return Err(Error::NotPositiveKnot(r.to_string()));
    }
    let q = r.q().mod_floor(p);
    if q.is_zero() {
        return Err(Error::NotPositiveKnot(r.to_string()));
    }

    let mut regular = Vec::new();
    let (mut num, mut den) = (p.clone(), q);
    while !den.is_zero() {
        let (a, rem) = num.div_mod_floor(&den);
        regular.push(i64::try_from(&a).map_err(|_| Error::NotPositiveKnot(r.to_string()))?);
        num = std::mem::replace(&mut den, rem);
    }

    let mut candidates = vec![ContinuedFraction(regular.clone())];
    if let Some(last) = regular.last_mut() {
        if *last > 1 {
            *last -= 1;
            regular.push(1);
            candidates.push(ContinuedFraction(regular));
        }
    }
    candidates
        .into_iter()
        .find(is_positive_knot_form)
        .ok_or_else(|| Error::NotPositiveKnot(r.to_string()))
}
