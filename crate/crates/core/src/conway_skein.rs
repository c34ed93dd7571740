//! Conway polynomials of 4-plat diagrams by skein recursion.
//!
//! A [`LinkState`] is what remains of the standard diagram after resolving
//! crossings from the left: a word of twist counts plus the row of its
//! leading region. Odd (bottom-row) regions carry parallel strands, even
//! (top-row) regions antiparallel strands, and every crossing is positive.
//! Resolving one crossing of the leading region `a` gives
//!
//! ```text
//! ∇(state) = ∇(state with a - 2) + z · ∇(L0)
//! ```
//!
//! where `L0` is `[a - 1, ...]` for a bottom-row region and the untwisted tail
//! for a top-row region.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use lru::LruCache;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational_cf::ContinuedFraction;

/// Integer polynomial in `z`, dense from `z^0` with trailing zeros trimmed.
///
/// Coefficients are stored as `i64` while they fit and promoted to `BigInt`
/// on the first overflow, so arithmetic is exact at any size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConwayPolynomial {
    coeffs: Coeffs,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Coeffs {
    Small(Vec<i64>),
    // Only used when some coefficient does not fit in i64.
    Big(Vec<BigInt>),
}

impl ConwayPolynomial {
    pub fn zero() -> Self {
        ConwayPolynomial {
            coeffs: Coeffs::Small(Vec::new()),
        }
    }

    pub fn one() -> Self {
        ConwayPolynomial {
            coeffs: Coeffs::Small(vec![1]),
        }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, C)>,
        C: Into<BigInt>,
    {
        let mut dense: Vec<BigInt> = Vec::new();
        for (k, c) in terms {
            if dense.len() <= k {
                dense.resize(k + 1, BigInt::zero());
            }
            dense[k] += c.into();
        }
        Self::from_big(dense)
    }

    fn from_big(mut dense: Vec<BigInt>) -> Self {
        while dense.last().is_some_and(Zero::is_zero) {
            dense.pop();
        }
        let small: Option<Vec<i64>> = dense.iter().map(ToPrimitive::to_i64).collect();
        let coeffs = match small {
            Some(v) => Coeffs::Small(v),
            None => Coeffs::Big(dense),
        };
        ConwayPolynomial { coeffs }
    }

    fn to_big(&self) -> Vec<BigInt> {
        match &self.coeffs {
            Coeffs::Small(v) => v.iter().map(|&c| BigInt::from(c)).collect(),
            Coeffs::Big(v) => v.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.coeffs {
            Coeffs::Small(v) => v.is_empty(),
            Coeffs::Big(v) => v.is_empty(),
        }
    }

    /// Degree in `z`, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let len = match &self.coeffs {
            Coeffs::Small(v) => v.len(),
            Coeffs::Big(v) => v.len(),
        };
        len.checked_sub(1)
    }

    pub fn coefficient(&self, k: usize) -> BigInt {
        match &self.coeffs {
            Coeffs::Small(v) => v.get(k).map_or_else(BigInt::zero, |&c| BigInt::from(c)),
            Coeffs::Big(v) => v.get(k).cloned().unwrap_or_default(),
        }
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending.
    pub fn terms(&self) -> Vec<(usize, BigInt)> {
        self.to_big()
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    /// `self + z · other`.
    pub fn add_z_times(&self, other: &ConwayPolynomial) -> ConwayPolynomial {
        if let (Coeffs::Small(a), Coeffs::Small(b)) = (&self.coeffs, &other.coeffs) {
            let len = a.len().max(b.len() + usize::from(!b.is_empty()));
            let mut out = Vec::with_capacity(len);
            let mut overflow = false;
            for k in 0..len {
                let x = a.get(k).copied().unwrap_or(0);
                let y = if k == 0 {
                    0
                } else {
                    b.get(k - 1).copied().unwrap_or(0)
                };
                match x.checked_add(y) {
                    Some(s) => out.push(s),
                    None => {
                        overflow = true;
                        break;
                    }
                }
            }
            if !overflow {
                while out.last() == Some(&0) {
                    out.pop();
                }
                return ConwayPolynomial {
                    coeffs: Coeffs::Small(out),
                };
            }
        }
        let mut a = self.to_big();
        let b = other.to_big();
        if a.len() < b.len() + 1 {
            a.resize(b.len() + 1, BigInt::zero());
        }
        for (k, c) in b.into_iter().enumerate() {
            a[k + 1] += c;
        }
        Self::from_big(a)
    }

    pub fn a2(&self) -> BigInt {
        self.coefficient(2)
    }

    pub fn a4(&self) -> BigInt {
        self.coefficient(4)
    }

    /// `|∇(z)|` at `z² = -4`. Odd terms are ignored; the input is expected
    /// to be a knot polynomial.
    pub fn determinant(&self) -> BigInt {
        let mut acc = BigInt::zero();
        let mut power = BigInt::from(1);
        for (k, c) in self.to_big().into_iter().enumerate() {
            if k % 2 == 0 {
                acc += c * &power;
                power *= -4;
            }
        }
        acc.abs()
    }

    /// True iff every nonzero term has an even exponent.
    pub fn is_even(&self) -> bool {
        self.terms().iter().all(|(k, _)| k % 2 == 0)
    }

    fn heap_bytes(&self) -> usize {
        match &self.coeffs {
            Coeffs::Small(v) => v.capacity() * 8,
            Coeffs::Big(v) => v.iter().map(|c| 32 + c.bits() as usize / 8).sum(),
        }
    }
}

impl fmt::Display for ConwayPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let unit = mag == BigInt::from(1);
            match k {
                0 => write!(f, "{mag}")?,
                1 if unit => f.write_str("z")?,
                1 => write!(f, "{mag}z")?,
                _ if unit => write!(f, "z^{k}")?,
                _ => write!(f, "{mag}z^{k}")?,
            }
        }
        Ok(())
    }
}

/// Twist-region word left over during the recursion.
///
/// `lead_odd` records whether the leading entry sits in a bottom-row
/// (odd-position) region of the original word; later entries alternate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinkState {
    entries: Vec<u32>,
    lead_odd: bool,
}

impl LinkState {
    pub fn new(entries: Vec<u32>, lead_odd: bool) -> Self {
        LinkState { entries, lead_odd }
    }

    /// The full diagram of a word; its first entry is in the bottom row.
    pub fn from_cf(cf: &ContinuedFraction) -> Result<Self> {
        let entries = cf
            .entries()
            .iter()
            .map(|&a| {
                u32::try_from(a)
                    .map_err(|_| Error::InvalidInput(format!("[{cf}] has a negative twist count")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LinkState::new(entries, true))
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn lead_odd(&self) -> bool {
        self.lead_odd
    }

    /// `[]` and `[1]` are the unknot, `[0]` the two-component unlink.
    pub fn is_terminal(&self) -> bool {
        matches!(self.entries.as_slice(), [] | [0] | [1])
    }

    fn terminal_value(&self) -> Option<ConwayPolynomial> {
        match self.entries.as_slice() {
            [] | [1] => Some(ConwayPolynomial::one()),
            [0] => Some(ConwayPolynomial::zero()),
            _ => None,
        }
    }

    fn heap_bytes(&self) -> usize {
        self.entries.capacity() * 4
    }
}

impl fmt::Display for LinkState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = if self.lead_odd { "bottom" } else { "top" };
        write!(f, "[")?;
        for (i, a) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "] ({row})")
    }
}

/// Strips leading `0` and `1` regions until the state is terminal or its
/// leading region has at least two crossings.
///
/// `[0, a, rest..]` untwists to `rest` (same row); `[1, a, rest..]` folds
/// the single crossing into the next region, giving `[a + 1, rest..]` in the
/// other row.
pub fn reduce_state(s: &LinkState) -> LinkState {
    let mut start = 0;
    let mut lead_odd = s.lead_odd;
    let mut bump = 0u32;
    let e = &s.entries;
    loop {
        let rest = &e[start..];
        let lead = rest.first().map(|&a| a + bump);
        match (lead, rest.len()) {
            (None, _) | (Some(0 | 1), 1) => break,
            (Some(0), _) => {
                start += 2;
                bump = 0;
            }
            (Some(1), _) => {
                start += 1;
                bump = 1;
                lead_odd = !lead_odd;
            }
            _ => break,
        }
    }
    let mut entries = e[start.min(e.len())..].to_vec();
    if let Some(first) = entries.first_mut() {
        *first += bump;
    }
    LinkState { entries, lead_odd }
}

/// The two diagrams produced by resolving one crossing of the leading region
/// of a reduced, non-terminal state: `(L-, L0)`.
fn resolve(s: &LinkState) -> (LinkState, LinkState) {
    let (&a, tail) = s.entries.split_first().expect("non-terminal state");
    let mut minus = s.entries.clone();
    minus[0] = a - 2;
    let minus = LinkState::new(minus, s.lead_odd);
    let zero = if s.lead_odd {
        let mut v = s.entries.clone();
        v[0] = a - 1;
        LinkState::new(v, true)
    } else {
        LinkState::new(tail.to_vec(), true)
    };
    (minus, zero)
}

/// Conway polynomial of a state.
pub fn conway(s: &LinkState, memo: &MemoStore) -> ConwayPolynomial {
    let s = reduce_state(s);
    if let Some(v) = s.terminal_value() {
        return v;
    }
    if let Some(v) = memo.get(&s) {
        return v;
    }
    let (minus, zero) = resolve(&s);
    let value = conway(&minus, memo).add_z_times(&conway(&zero, memo));
    memo.insert(s, value.clone());
    value
}

/// Conway polynomial of the knot or link drawn from a continued fraction
/// with non-negative entries.
pub fn conway_of_cf(cf: &ContinuedFraction, memo: &MemoStore) -> Result<ConwayPolynomial> {
    Ok(conway(&LinkState::from_cf(cf)?, memo))
}

pub fn a2(poly: &ConwayPolynomial) -> BigInt {
    poly.a2()
}

pub fn a4(poly: &ConwayPolynomial) -> BigInt {
    poly.a4()
}

pub fn determinant(poly: &ConwayPolynomial) -> BigInt {
    poly.determinant()
}

const SHARDS: usize = 64;
// Per-entry bookkeeping of the LRU list and hash table, beyond the heap
// buffers of key and value.
const ENTRY_OVERHEAD: usize = 112;

/// Shared cache of Conway polynomials keyed by reduced state.
///
/// Safe for concurrent reads and inserts. With a byte cap, least recently
/// used entries are evicted once a shard exceeds its share of the cap.
pub struct MemoStore {
    shards: Vec<Mutex<Shard>>,
    shard_cap: Option<usize>,
    enabled: bool,
    entries: AtomicUsize,
    peak_entries: AtomicUsize,
    bytes: AtomicUsize,
    peak_bytes: AtomicUsize,
    hits: AtomicU64,
    misses: AtomicU64,
    evictions: AtomicU64,
}

struct Shard {
    map: LruCache<LinkState, ConwayPolynomial>,
    bytes: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MemoStats {
    pub entries: usize,
    pub peak_entries: usize,
    pub hits: u64,
    pub misses: u64,
    pub evictions: u64,
}

impl MemoStore {
    /// Unbounded store.
    pub fn new() -> Self {
        Self::build(None, true)
    }

    /// Store holding roughly at most `cap_bytes` bytes.
    pub fn with_cap_bytes(cap_bytes: usize) -> Self {
        Self::build(Some(cap_bytes), true)
    }

    /// A store that never retains anything.
    pub fn disabled() -> Self {
        Self::build(None, false)
    }

    fn build(cap: Option<usize>, enabled: bool) -> Self {
        let shards = (0..SHARDS)
            .map(|_| {
                Mutex::new(Shard {
                    map: LruCache::unbounded(),
                    bytes: 0,
                })
            })
            .collect();
        MemoStore {
            shards,
            shard_cap: cap.map(|c| (c / SHARDS).max(1)),
            enabled,
            entries: AtomicUsize::new(0),
            peak_entries: AtomicUsize::new(0),
            bytes: AtomicUsize::new(0),
            peak_bytes: AtomicUsize::new(0),
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
            evictions: AtomicU64::new(0),
        }
    }

    fn shard(&self, key: &LinkState) -> &Mutex<Shard> {
        let mut h = std::collections::hash_map::DefaultHasher::new();
        key.hash(&mut h);
        &self.shards[(h.finish() as usize) % SHARDS]
    }

    pub fn get(&self, key: &LinkState) -> Option<ConwayPolynomial> {
        if !self.enabled {
            return None;
        }
        let found = self.shard(key).lock().unwrap().map.get(key).cloned();
        let counter = if found.is_some() {
            &self.hits
        } else {
            &self.misses
        };
        counter.fetch_add(1, Ordering::Relaxed);
        found
    }

    /// Inserts a value. Concurrent inserts of the same key store equal values,
    /// so whichever lands last is fine.
    pub fn insert(&self, key: LinkState, value: ConwayPolynomial) {
        if !self.enabled {
            return;
        }
        let size = entry_bytes(&key, &value);
        let value_size = value.heap_bytes();
        let mut shard = self.shard(&key).lock().unwrap();
        match shard.map.push(key, value) {
            Some((_, old)) => {
                shard.bytes = shard.bytes - old.heap_bytes() + value_size;
                self.bytes.fetch_sub(old.heap_bytes(), Ordering::Relaxed);
                self.bytes.fetch_add(value_size, Ordering::Relaxed);
            }
            None => {
                shard.bytes += size;
                let now = self.entries.fetch_add(1, Ordering::Relaxed) + 1;
                self.peak_entries.fetch_max(now, Ordering::Relaxed);
                let total = self.bytes.fetch_add(size, Ordering::Relaxed) + size;
                self.peak_bytes.fetch_max(total, Ordering::Relaxed);
            }
        }
        if let Some(cap) = self.shard_cap {
            while shard.bytes > cap && shard.map.len() > 1 {
                let Some((k, v)) = shard.map.pop_lru() else {
                    break;
                };
                let freed = entry_bytes(&k, &v);
                shard.bytes -= freed;
                self.bytes.fetch_sub(freed, Ordering::Relaxed);
                self.entries.fetch_sub(1, Ordering::Relaxed);
                self.evictions.fetch_add(1, Ordering::Relaxed);
            }
        }
    }

    pub fn len(&self) -> usize {
        self.entries.load(Ordering::Relaxed)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Approximate bytes held.
    pub fn bytes(&self) -> usize {
        self.bytes.load(Ordering::Relaxed)
    }

    /// Largest size the store has reached, sampled at inserts.
    ///
    /// Eviction happens right after an insert, so this can exceed the cap by
    /// up to one entry per shard.
    pub fn peak_bytes(&self) -> usize {
        self.peak_bytes.load(Ordering::Relaxed)
    }

    pub fn cap_bytes(&self) -> Option<usize> {
        self.shard_cap.map(|c| c * SHARDS)
    }

    pub fn stats(&self) -> MemoStats {
        MemoStats {
            entries: self.len(),
            peak_entries: self.peak_entries.load(Ordering::Relaxed),
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
            evictions: self.evictions.load(Ordering::Relaxed),
        }
    }
}

impl Default for MemoStore {
    fn default() -> Self {
        Self::new()
    }
}

fn entry_bytes(key: &LinkState, value: &ConwayPolynomial) -> usize {
    ENTRY_OVERHEAD + key.heap_bytes() + value.heap_bytes()
}
