//! Independent routes to the invariants, used to validate the fast path.
//!
//! * Alexander polynomial as `det(tS - Sᵀ)` from an explicit Seifert matrix.
//! * Jones polynomial from a Kauffman bracket computed in the rational
//!   tangle skein module, and `v3 = -V'''(1)/36 - V''(1)/12`.
//!
//! None of this runs in the sweep loop.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::conway_skein::{conway_of_cf, ConwayPolynomial, MemoStore};
use crate::error::{Error, Result};
use crate::invariants::{genus_closed, genus_even, v3_even};
use crate::poly::LaurentPoly;
use crate::rational_cf::{eval_cf, is_positive_diagram, to_even_cf, ContinuedFraction};

/// Square integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertMatrix {
    rows: Vec<Vec<i64>>,
}

impl SeifertMatrix {
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("Seifert matrix must be square".into()));
        }
        Ok(SeifertMatrix { rows })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }
}

/// Seifert form of the standard diagram of a positive-form word.
///
/// Odd positions contribute lower-bidiagonal blocks of size `aᵢ - 1`
/// (diagonal `-1`, subdiagonal `1`), even positions a `1×1` block
/// `-1 - aᵢ/2`, and consecutive nonempty blocks are joined by a `1` just
/// below the diagonal.
pub fn seifert_matrix(cf: &ContinuedFraction) -> SeifertMatrix {
    let mut diag: Vec<i64> = Vec::new();
    // joined[k] is true when row k has a 1 in column k - 1.
    let mut joined: Vec<bool> = Vec::new();
    for (i, &a) in cf.entries().iter().enumerate() {
        let block: Vec<i64> = if i % 2 == 0 {
            vec![-1; (a - 1).max(0) as usize]
        } else {
            vec![-1 - a / 2]
        };
        for d in block {
            joined.push(!diag.is_empty());
            diag.push(d);
        }
    }
    let n = diag.len();
    let mut rows = vec![vec![0; n]; n];
    for k in 0..n {
        rows[k][k] = diag[k];
        if joined[k] {
            rows[k][k - 1] = 1;
        }
    }
    SeifertMatrix { rows }
}

/// Alexander polynomial normalized to `Δ(1) = 1` with exponents centred on 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexanderPolynomial(LaurentPoly);

impl AlexanderPolynomial {
    /// Multiplies by `±t^k` to centre the exponent range and make the
    /// coefficient sum positive.
    pub fn normalize(p: LaurentPoly) -> Self {
        let (Some(low), Some(high)) = (p.low(), p.high()) else {
            return AlexanderPolynomial(p);
        };
        let centred = p.shift(-(low + high).div_euclid(2));
        let signed = if centred.value_at_one().is_negative() {
            -centred
        } else {
            centred
        };
        AlexanderPolynomial(signed)
    }

    pub fn poly(&self) -> &LaurentPoly {
        &self.0
    }

    /// `|Δ(-1)|`.
    pub fn determinant(&self) -> BigInt {
        self.0.eval(-1).to_integer().abs()
    }

    /// True if `Δ(t) = Δ(t⁻¹)`.
    pub fn is_symmetric(&self) -> bool {
        self.0.invert_variable() == self.0
    }
}

impl fmt::Display for AlexanderPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.fmt_in("t"))
    }
}

/// `det(tS - Sᵀ)` by fraction-free (Bareiss) elimination over `Z[t]`.
pub fn alexander_from_seifert(s: &SeifertMatrix) -> AlexanderPolynomial {
    let n = s.dim();
    let t = LaurentPoly::monomial(1, 1);
    let mut m: Vec<Vec<LaurentPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| &t.scale(&s.rows[i][j].into()) - &LaurentPoly::monomial(s.rows[j][i], 0))
                .collect()
        })
        .collect();
    AlexanderPolynomial::normalize(bareiss_det(&mut m))
}

fn bareiss_det(m: &mut [Vec<LaurentPoly>]) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    let mut negate = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return LaurentPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss step divides exactly");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Substitutes `z² = t - 2 + t⁻¹` into a knot Conway polynomial.
pub fn alexander_from_conway(poly: &ConwayPolynomial) -> Result<AlexanderPolynomial> {
    let z2 = LaurentPoly::from_terms([(1, 1), (0, -2), (-1, 1)]);
    let mut acc = LaurentPoly::zero();
    for (k, c) in poly.terms() {
        if k % 2 == 1 {
            return Err(Error::InvalidInput(format!(
                "{poly} has odd powers; not a knot polynomial"
            )));
        }
        acc = &acc + &z2.pow((k / 2) as u32).scale(&c);
    }
    Ok(AlexanderPolynomial::normalize(acc))
}

/// Jones polynomial of a knot, a Laurent polynomial in `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JonesPolynomial(LaurentPoly);

impl JonesPolynomial {
    pub fn unknot() -> Self {
        JonesPolynomial(LaurentPoly::one())
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        JonesPolynomial(p)
    }

    pub fn poly(&self) -> &LaurentPoly {
        &self.0
    }

    /// `V(1)`.
    pub fn value_at_one(&self) -> BigInt {
        self.0.value_at_one()
    }

    /// `V'(1)`.
    pub fn derivative_at_one(&self) -> BigInt {
        self.0.terms().map(|(e, c)| c * e).sum()
    }

    fn falling_moment(&self, order: i64) -> BigInt {
        self.0
            .terms()
            .map(|(e, c)| c * (0..order).map(|i| BigInt::from(e - i)).product::<BigInt>())
            .sum()
    }
}

impl fmt::Display for JonesPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.fmt_in("t"))
    }
}

/// Bracket of a 2-tangle as `f·⟨[0]⟩ + g·⟨[∞]⟩`, polynomials in `A`.
struct TangleBracket {
    zero: LaurentPoly,
    infinity: LaurentPoly,
}

impl TangleBracket {
    fn delta() -> LaurentPoly {
        LaurentPoly::from_terms([(2, -1), (-2, -1)])
    }

    /// Adds one horizontal crossing on the right:
    /// `[0] + [∞] = [∞]`, `[∞] + [∞] = δ[∞]`.
    fn twist(&mut self) {
        let a = LaurentPoly::monomial(1, 1);
        let a_inv = LaurentPoly::monomial(1, -1);
        let zero = &a * &self.zero;
        let infinity = &(&(&a * &self.infinity) + &(&a_inv * &self.zero))
            + &(&(&a_inv * &Self::delta()) * &self.infinity);
        self.zero = zero;
        self.infinity = infinity;
    }

    /// `1/T`: rotate a quarter turn and mirror.
    fn invert(&mut self) {
        std::mem::swap(&mut self.zero, &mut self.infinity);
        self.zero = self.zero.invert_variable();
        self.infinity = self.infinity.invert_variable();
    }

    /// Numerator closure: `⟨N([0])⟩ = δ`, `⟨N([∞])⟩ = 1`.
    fn closure(&self) -> LaurentPoly {
        &(&self.zero * &Self::delta()) + &self.infinity
    }
}

/// Jones polynomial of the standard diagram of a positive word.
///
/// The bracket is built up from the innermost entry as a rational tangle;
/// every crossing of the diagram is positive, so the writhe is `Σ aᵢ`.
/// The crossing convention is fixed so that `[3]` gives
/// `-t⁴ + t³ + t`.
pub fn jones_poly(cf: &ContinuedFraction) -> Result<JonesPolynomial> {
    let e = cf.entries();
    let writhe: i64 = e.iter().sum();
    if !is_positive_diagram(e) || writhe % 2 == 0 {
        return Err(Error::NotPositiveKnot(format!("[{cf}]")));
    }
    let mut tangle = TangleBracket {
        zero: LaurentPoly::one(),
        infinity: LaurentPoly::zero(),
    };
    for (i, &a) in e.iter().rev().enumerate() {
        if i > 0 {
            tangle.invert();
        }
        for _ in 0..a {
            tangle.twist();
        }
    }
    // V(t) = (-A³)^(-w) ⟨D⟩ at A = t^(-1/4).
    let sign = if writhe % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let normalized = tangle.closure().shift(-3 * writhe).scale(&sign);
    let mut terms = Vec::new();
    for (exp, c) in normalized.terms() {
        if exp % 4 != 0 {
            return Err(Error::NonIntegerResult(format!(
                "Jones polynomial of [{cf}] has fractional powers of t"
            )));
        }
        terms.push((-exp / 4, c.clone()));
    }
    Ok(JonesPolynomial(LaurentPoly::from_terms(terms)))
}

/// `v3 = -V'''(1)/36 - V''(1)/12`, computed exactly.
pub fn v3_from_jones(v: &JonesPolynomial) -> Result<BigInt> {
    let d2 = v.falling_moment(2);
    let d3 = v.falling_moment(3);
    let numerator: BigInt = -d3 - d2 * BigInt::from(3);
    let (q, r) = numerator.div_rem(&BigInt::from(36));
    if !r.is_zero() {
        return Err(Error::NonIntegerResult(format!(
            "v3 = {numerator}/36 for V = {v}"
        )));
    }
    Ok(q)
}

/// Every invariant of one knot computed by each available route.
#[derive(Clone, Debug)]
pub struct CrossCheck {
    pub cf: ContinuedFraction,
    pub p: BigInt,
    pub conway: ConwayPolynomial,
    pub alexander_skein: AlexanderPolynomial,
    pub alexander_seifert: AlexanderPolynomial,
    pub det_skein: BigInt,
    pub det_seifert: BigInt,
    pub seifert_dim: usize,
    pub genus_closed: u32,
    pub genus_even: u32,
    pub genus_conway: u32,
    pub v3_even: BigInt,
    pub jones: JonesPolynomial,
    pub v3_jones: BigInt,
}

impl CrossCheck {
    pub fn alexander_agrees(&self) -> bool {
        self.alexander_skein == self.alexander_seifert
    }

    pub fn det_agrees(&self) -> bool {
        self.det_skein == self.p && self.det_seifert == self.p
    }

    pub fn genus_agrees(&self) -> bool {
        self.genus_closed == self.genus_even
            && self.genus_even == self.genus_conway
            && self.seifert_dim == 2 * self.genus_closed as usize
    }

    pub fn v3_agrees(&self) -> bool {
        self.v3_even == self.v3_jones
    }

    pub fn jones_is_sane(&self) -> bool {
        self.jones.value_at_one().is_one() && self.jones.derivative_at_one().is_zero()
    }

    pub fn all_agree(&self) -> bool {
        self.alexander_agrees()
            && self.det_agrees()
            && self.genus_agrees()
            && self.v3_agrees()
            && self.jones_is_sane()
    }
}

impl fmt::Display for CrossCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |ok: bool| if ok { "ok" } else { "MISMATCH" };
        writeln!(f, "conway (skein)       {}", self.conway)?;
        writeln!(f, "alexander (skein)    {}", self.alexander_skein)?;
        writeln!(
            f,
            "alexander (seifert)  {}  [{}]",
            self.alexander_seifert,
            mark(self.alexander_agrees())
        )?;
        writeln!(
            f,
            "det                  skein {} / seifert {} / p {}  [{}]",
            self.det_skein,
            self.det_seifert,
            self.p,
            mark(self.det_agrees())
        )?;
        writeln!(
            f,
            "genus                diagram {} / even cf {} / deg/2 {} / seifert dim {}  [{}]",
            self.genus_closed,
            self.genus_even,
            self.genus_conway,
            self.seifert_dim,
            mark(self.genus_agrees())
        )?;
        writeln!(f, "jones                {}", self.jones)?;
        write!(
            f,
            "v3                   even cf {} / jones {}  [{}]",
            self.v3_even,
            self.v3_jones,
            mark(self.v3_agrees())
        )
    }
}

/// Runs every route for one positive-form word.
pub fn cross_check(cf: &ContinuedFraction, memo: &MemoStore) -> Result<CrossCheck> {
    let r = eval_cf(cf)?;
    let conway = conway_of_cf(cf, memo)?;
    let seifert = seifert_matrix(cf);
    let alexander_seifert = alexander_from_seifert(&seifert);
    let ecf = to_even_cf(&r)?;
    let jones = jones_poly(cf)?;
    Ok(CrossCheck {
        cf: cf.clone(),
        p: r.p().clone(),
        alexander_skein: alexander_from_conway(&conway)?,
        det_skein: conway.determinant(),
        det_seifert: alexander_seifert.determinant(),
        alexander_seifert,
        seifert_dim: seifert.dim(),
        genus_closed: genus_closed(cf),
        genus_even: genus_even(&ecf),
        genus_conway: conway.degree().unwrap_or(0) as u32 / 2,
        v3_even: v3_even(&ecf)?,
        v3_jones: v3_from_jones(&jones)?,
        jones,
        conway,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cf(v: &[i64]) -> ContinuedFraction {
        ContinuedFraction::new(v.to_vec())
    }

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn seifert_examples() {
        assert_eq!(
            seifert_matrix(&cf(&[3])).rows(),
            &[vec![-1, 0], vec![1, -1]]
        );
        assert_eq!(
            seifert_matrix(&cf(&[2, 2, 1])).rows(),
            &[vec![-1, 0], vec![1, -2]]
        );
        let s5 = seifert_matrix(&cf(&[5]));
        assert_eq!(s5.dim(), 4);
        for i in 0..4 {
            for j in 0..4 {
                let want = match i as i64 - j as i64 {
                    0 => -1,
                    1 => 1,
                    _ => 0,
                };
                assert_eq!(s5.rows()[i][j], want);
            }
        }
    }

    #[test]
    fn alexander_from_matrices() {
        let s = SeifertMatrix::from_rows(vec![vec![-1, 0], vec![1, -1]]).unwrap();
        assert_eq!(
            alexander_from_seifert(&s).poly(),
            &lp(&[(1, 1), (0, -1), (-1, 1)])
        );
        let s = SeifertMatrix::from_rows(vec![vec![-1, 0], vec![1, -2]]).unwrap();
        assert_eq!(
            alexander_from_seifert(&s).poly(),
            &lp(&[(1, 2), (0, -3), (-1, 2)])
        );
        let empty = SeifertMatrix::from_rows(vec![]).unwrap();
        assert_eq!(alexander_from_seifert(&empty).poly(), &LaurentPoly::one());
        assert!(SeifertMatrix::from_rows(vec![vec![1, 2]]).is_err());
    }

    #[test]
    fn bareiss_handles_zero_pivot() {
        // tS - Sᵀ for S = [[0, 1], [0, 0]] is [[0, t], [-1, 0]]: det = t.
        let s = SeifertMatrix::from_rows(vec![vec![0, 1], vec![0, 0]]).unwrap();
        assert_eq!(alexander_from_seifert(&s).poly(), &LaurentPoly::one());
        let mut m = vec![vec![lp(&[]), lp(&[(1, 1)])], vec![lp(&[(0, -1)]), lp(&[])]];
        assert_eq!(bareiss_det(&mut m), lp(&[(1, 1)]));
    }

    #[test]
    fn alexander_via_conway() {
        let c = |t: &[(usize, i64)]| ConwayPolynomial::from_terms(t.iter().copied());
        assert_eq!(
            alexander_from_conway(&c(&[(0, 1), (2, 1)])).unwrap().poly(),
            &lp(&[(1, 1), (0, -1), (-1, 1)])
        );
        assert_eq!(
            alexander_from_conway(&c(&[(0, 1), (2, 2)])).unwrap().poly(),
            &lp(&[(1, 2), (0, -3), (-1, 2)])
        );
        assert_eq!(
            alexander_from_conway(&ConwayPolynomial::one())
                .unwrap()
                .poly(),
            &LaurentPoly::one()
        );
        assert!(alexander_from_conway(&c(&[(1, 1)])).is_err());
    }

    #[test]
    fn jones_examples() {
        assert_eq!(
            jones_poly(&cf(&[3])).unwrap().poly(),
            &lp(&[(4, -1), (3, 1), (1, 1)])
        );
        assert_eq!(
            jones_poly(&cf(&[5])).unwrap().poly(),
            &lp(&[(7, -1), (6, 1), (5, -1), (4, 1), (2, 1)])
        );
        assert_eq!(jones_poly(&cf(&[1])).unwrap(), JonesPolynomial::unknot());
        assert!(jones_poly(&cf(&[2, 2])).is_err());
        assert!(jones_poly(&cf(&[1, 1, 1])).is_err());
    }

    #[test]
    fn v3_from_jones_examples() {
        assert_eq!(
            v3_from_jones(&jones_poly(&cf(&[3])).unwrap()).unwrap(),
            1.into()
        );
        assert_eq!(
            v3_from_jones(&jones_poly(&cf(&[5])).unwrap()).unwrap(),
            5.into()
        );
        assert_eq!(v3_from_jones(&JonesPolynomial::unknot()).unwrap(), 0.into());
        assert_eq!(
            v3_from_jones(&jones_poly(&cf(&[2, 2, 1])).unwrap()).unwrap(),
            3.into()
        );
        let bogus = JonesPolynomial::from_poly(lp(&[(3, 1)]));
        assert!(matches!(
            v3_from_jones(&bogus),
            Err(Error::NonIntegerResult(_))
        ));
    }

    #[test]
    fn cross_check_5_2() {
        let c = cross_check(&cf(&[2, 2, 1]), &MemoStore::new()).unwrap();
        assert!(c.all_agree(), "{c}");
        assert!(c.alexander_seifert.is_symmetric());
    }
}
