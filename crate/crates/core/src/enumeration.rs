//! Generation of every positive-form continued fraction up to a crossing bound.
//!
//! Words are produced band by band (entry sum 3, 5, 7, ...) and
//! lexicographically within a band. A band can be split further by its
//! leading entry; the pieces are disjoint and each is generated in order.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational_cf::{canonical_key, eval_cf, CanonicalKnotKey, ContinuedFraction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DedupMode {
    /// One item per continued fraction.
    Presentations,
    /// One item per distinct knot (canonical key).
    Canonical,
}

impl fmt::Display for DedupMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DedupMode::Presentations => "presentations",
            DedupMode::Canonical => "canonical",
        })
    }
}

impl FromStr for DedupMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "presentations" => Ok(DedupMode::Presentations),
            "canonical" => Ok(DedupMode::Canonical),
            _ => Err(Error::Parse(format!(
                "dedup mode must be 'presentations' or 'canonical', got {s:?}"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationPlan {
    max_crossings: u32,
    dedup_mode: DedupMode,
}

impl EnumerationPlan {
    pub fn new(max_crossings: u32, dedup_mode: DedupMode) -> Result<Self> {
        if max_crossings < 3 {
            return Err(Error::InvalidInput(format!(
                "max_crossings must be at least 3, got {max_crossings}"
            )));
        }
        Ok(EnumerationPlan {
            max_crossings,
            dedup_mode,
        })
    }

    pub fn max_crossings(&self) -> u32 {
        self.max_crossings
    }

    pub fn dedup_mode(&self) -> DedupMode {
        self.dedup_mode
    }

    /// Knot crossing numbers covered: 3, 5, ..., up to the bound.
    pub fn bands(&self) -> impl Iterator<Item = u32> {
        (3..=self.max_crossings).step_by(2)
    }
}

/// Every positive-form word, ordered by entry sum then lexicographically.
pub fn enumerate_presentations(plan: &EnumerationPlan) -> impl Iterator<Item = ContinuedFraction> {
    plan.bands().flat_map(band)
}

/// Positive-form words with entry sum exactly `crossings`, in lexicographic
/// order. Empty for even sums or sums below 3.
pub fn band(crossings: u32) -> Vec<ContinuedFraction> {
    leading_entries(crossings)
        .flat_map(|a1| band_with_leading(crossings, a1))
        .collect()
}

/// Possible first entries of words in a band.
pub fn leading_entries(crossings: u32) -> impl Iterator<Item = u32> {
    let valid = crossings >= 3 && crossings % 2 == 1;
    (1..=crossings).filter(move |_| valid)
}

/// The slice of a band whose first entry is `leading`.
pub fn band_with_leading(crossings: u32, leading: u32) -> Vec<ContinuedFraction> {
    let mut out = Vec::new();
    if crossings < 3 || crossings.is_multiple_of(2) || leading == 0 || leading > crossings {
        return out;
    }
    let mut prefix = vec![leading as i64];
    extend(&mut prefix, (crossings - leading) as i64, &mut out);
    out
}

// `prefix` has an odd-position entry last when its length is odd.
fn extend(prefix: &mut Vec<i64>, remaining: i64, out: &mut Vec<ContinuedFraction>) {
    let last_was_odd_position = prefix.len() % 2 == 1;
    if remaining == 0 {
        if last_was_odd_position {
            out.push(ContinuedFraction::new(prefix.clone()));
        }
        return;
    }
    if last_was_odd_position {
        // Even position next: an even entry, leaving room for one more odd entry.
        let mut a = 2;
        while a < remaining {
            prefix.push(a);
            extend(prefix, remaining - a, out);
            prefix.pop();
            a += 2;
        }
    } else {
        for a in 1..=remaining {
            prefix.push(a);
            extend(prefix, remaining - a, out);
            prefix.pop();
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandCensus {
    pub presentations: u64,
    pub canonical: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotCensus {
    pub per_crossing: BTreeMap<u32, BandCensus>,
    pub total_presentations: u64,
    pub total_canonical: u64,
}

impl KnotCensus {
    pub fn record_band(&mut self, crossings: u32, counts: BandCensus) {
        self.per_crossing.insert(crossings, counts);
        self.total_presentations = self.per_crossing.values().map(|b| b.presentations).sum();
        self.total_canonical = self.per_crossing.values().map(|b| b.canonical).sum();
    }

    /// Which totals equal `target`.
    pub fn matching_conventions(&self, target: u64) -> Vec<DedupMode> {
        let mut out = Vec::new();
        if self.total_presentations == target {
            out.push(DedupMode::Presentations);
        }
        if self.total_canonical == target {
            out.push(DedupMode::Canonical);
        }
        out
    }
}

impl fmt::Display for KnotCensus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "crossings  presentations  knots")?;
        for (c, b) in &self.per_crossing {
            writeln!(f, "{c:>9}  {:>13}  {:>5}", b.presentations, b.canonical)?;
        }
        write!(
            f,
            "{:>9}  {:>13}  {:>5}",
            "total", self.total_presentations, self.total_canonical
        )
    }
}

pub(crate) fn band_keys(words: &[ContinuedFraction]) -> Result<Vec<CanonicalKnotKey>> {
    words
        .par_iter()
        .map(|cf| canonical_key(&eval_cf(cf)?))
        .collect()
}

/// Counts presentations and distinct knots per crossing number.
///
/// Panics if one knot shows up in two bands: reduced alternating diagrams
/// of a knot all have the same crossing number, so that would mean the
/// enumeration or the key is wrong.
pub fn census(plan: &EnumerationPlan) -> Result<KnotCensus> {
    let mut out = KnotCensus::default();
    let mut seen: HashSet<CanonicalKnotKey> = HashSet::new();
    for crossings in plan.bands() {
        let words = band(crossings);
        let keys = band_keys(&words)?;
        let mut distinct: HashSet<CanonicalKnotKey> = HashSet::with_capacity(keys.len());
        for key in keys {
            assert!(key.p > 1.into(), "unknot key from a positive-form word");
            if distinct.insert(key.clone()) {
                assert!(
                    seen.insert(key.clone()),
                    "knot {key} appears in more than one crossing band"
                );
            }
        }
        out.record_band(
            crossings,
            BandCensus {
                presentations: words.len() as u64,
                canonical: distinct.len() as u64,
            },
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational_cf::is_positive_knot_form;

    fn plan(n: u32) -> EnumerationPlan {
        EnumerationPlan::new(n, DedupMode::Presentations).unwrap()
    }

    fn words(n: u32) -> Vec<Vec<i64>> {
        enumerate_presentations(&plan(n))
            .map(|c| c.entries().to_vec())
            .collect()
    }

    /// Every list of positive entries with sum ≤ n, filtered by the predicate.
    fn brute_force(n: i64) -> Vec<Vec<i64>> {
        fn all(prefix: &mut Vec<i64>, left: i64, out: &mut Vec<Vec<i64>>) {
            if !prefix.is_empty() {
                out.push(prefix.clone());
            }
            for a in 1..=left {
                prefix.push(a);
                all(prefix, left - a, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        all(&mut Vec::new(), n, &mut out);
        out.retain(|v| is_positive_knot_form(&ContinuedFraction::new(v.clone())));
        out.sort_by_key(|v| (v.iter().sum::<i64>(), v.clone()));
        out
    }

    #[test]
    fn small_bounds() {
        assert_eq!(words(3), vec![vec![3]]);
        assert_eq!(
            words(5),
            vec![vec![3], vec![1, 2, 2], vec![2, 2, 1], vec![5]]
        );
        assert!(EnumerationPlan::new(2, DedupMode::Presentations).is_err());
        assert!(band(2).is_empty());
        assert!(band(4).is_empty());
    }

    #[test]
    fn matches_brute_force() {
        for n in [3, 4, 7, 9, 12, 13] {
            assert_eq!(words(n), brute_force(n as i64), "bound {n}");
        }
    }

    #[test]
    fn leading_partition_covers_band() {
        for c in [9, 11, 13] {
            let joined: Vec<_> = leading_entries(c)
                .flat_map(|a| band_with_leading(c, a))
                .collect();
            assert_eq!(joined, band(c));
        }
    }

    #[test]
    fn census_small() {
        let c = census(&plan(5)).unwrap();
        assert_eq!((c.total_presentations, c.total_canonical), (4, 3));
        let c = census(&plan(3)).unwrap();
        assert_eq!((c.total_presentations, c.total_canonical), (1, 1));
    }

    #[test]
    fn census_counts_are_fibonacci() {
        // Words with sum 2k+1 are counted by F(2k).
        let c = census(&plan(15)).unwrap();
        let pres: Vec<u64> = c.per_crossing.values().map(|b| b.presentations).collect();
        assert_eq!(pres, vec![1, 3, 8, 21, 55, 144, 377]);
        assert_eq!(c.matching_conventions(609), vec![DedupMode::Presentations]);
    }

    #[test]
    fn deterministic() {
        assert_eq!(words(11), words(11));
    }

    #[test]
    fn dedup_mode_parse() {
        assert_eq!(
            "canonical".parse::<DedupMode>().unwrap(),
            DedupMode::Canonical
        );
        assert!("both".parse::<DedupMode>().is_err());
    }
}
