//! The full verification sweep, single-knot checks and plot data.
//!
//! A sweep works one crossing band at a time. Each band is computed in
//! parallel, sorted, serialized and (optionally) committed to a checkpoint
//! directory before the next band starts, so the CSV is byte-identical for
//! any worker count and a resumed run matches an uninterrupted one.

use std::collections::HashSet;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::ops::ControlFlow;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::conway_skein::MemoStore;
use crate::enumeration::{
    band_with_leading, leading_entries, BandCensus, DedupMode, EnumerationPlan, KnotCensus,
};
use crate::error::{Error, Result};
use crate::obstruction::{check, ObstructionRecord, Verdict};
use crate::oracles::{cross_check, CrossCheck};
use crate::rational_cf::{
    is_positive_knot_form, positive_cf_from_rational, ContinuedFraction, Rational,
};

/// Reference count of positive 2-bridge knots up to 31 crossings. It equals
/// the number of presentations, not of distinct knots.
pub const REPORTED_KNOT_COUNT: u64 = 1_346_268;

const CHECKPOINT_FORMAT: u32 = 1;
const MANIFEST: &str = "manifest.json";

/// Column order of the results CSV.
pub const CSV_HEADER: [&str; 20] = [
    "crossings",
    "p",
    "q",
    "cf",
    "a2",
    "a4",
    "det",
    "genus",
    "v3",
    "lhs",
    "rhs",
    "equal",
    "excluded_torus",
    "complexity",
    "quotient",
    "quotient_num",
    "quotient_den",
    "s_k",
    "s_k_num",
    "s_k_den",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub max_crossings: u32,
    pub jobs: usize,
    pub memo_cap_bytes: Option<usize>,
    pub output: PathBuf,
    pub checkpoint_dir: Option<PathBuf>,
    pub dedup_mode: DedupMode,
}

impl SweepConfig {
    /// Presentations mode, one worker per available core, unbounded memo.
    pub fn new(max_crossings: u32, output: impl Into<PathBuf>) -> Self {
        SweepConfig {
            max_crossings,
            jobs: std::thread::available_parallelism().map_or(1, |n| n.get()),
            memo_cap_bytes: None,
            output: output.into(),
            checkpoint_dir: None,
            dedup_mode: DedupMode::Presentations,
        }
    }

    pub fn validate(&self) -> Result<EnumerationPlan> {
        if self.jobs == 0 {
            return Err(Error::InvalidInput(
                "worker count must be at least 1".into(),
            ));
        }
        EnumerationPlan::new(self.max_crossings, self.dedup_mode)
    }
}

/// Counters for one committed crossing band.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandSummary {
    pub crossings: u32,
    pub rows: u64,
    pub presentations: u64,
    pub canonical: u64,
    /// Non-torus rows with `lhs = rhs`.
    pub equality: u64,
    pub torus: u64,
    pub rhs_zero: u64,
    /// Non-torus rows with `|lhs| / |rhs| ≤ 1` (or undefined).
    pub quotient_not_above_one: u64,
    /// Rows with `p, q > 20` and `lhs ≤ rhs`.
    pub large_pq_violations: u64,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepReport {
    pub census: KnotCensus,
    pub bands: Vec<BandSummary>,
    pub rows: u64,
    pub equality_count: u64,
    pub torus_count: u64,
    pub rhs_zero_count: u64,
    pub quotient_not_above_one: u64,
    pub large_pq_violations: u64,
    pub resumed_bands: Vec<u32>,
    pub elapsed: Duration,
    pub peak_memo_entries: usize,
    pub peak_memo_bytes: usize,
    pub memo_evictions: u64,
}

impl SweepReport {
    /// 0 when no equality was found, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.equality_count == 0 {
            0
        } else {
            2
        }
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{}\n", self.census));
        out.push_str(&format!("rows written          {}\n", self.rows));
        out.push_str(&format!("torus (excluded)      {}\n", self.torus_count));
        out.push_str(&format!("equalities            {}\n", self.equality_count));
        out.push_str(&format!("rhs = 0               {}\n", self.rhs_zero_count));
        out.push_str(&format!(
            "quotient <= 1         {}\n",
            self.quotient_not_above_one
        ));
        out.push_str(&format!(
            "p,q > 20 with lhs<=rhs {}\n",
            self.large_pq_violations
        ));
        if !self.resumed_bands.is_empty() {
            out.push_str(&format!("resumed bands         {:?}\n", self.resumed_bands));
        }
        out.push_str(&format!(
            "memo                  peak {} entries, ~{} MiB, {} evictions\n",
            self.peak_memo_entries,
            self.peak_memo_bytes >> 20,
            self.memo_evictions
        ));
        out.push_str(&format!("elapsed               {:.2?}", self.elapsed));
        out
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct Manifest {
    format: u32,
    max_crossings: u32,
    dedup_mode: DedupMode,
    header: String,
    bands: Vec<BandSummary>,
}

/// One CSV line. Exact values are kept as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsvRow {
    pub crossings: u32,
    pub p: String,
    pub q: String,
    pub cf: String,
    pub a2: String,
    pub a4: String,
    pub det: String,
    pub genus: u32,
    pub v3: String,
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
    pub excluded_torus: bool,
    pub complexity: String,
    pub quotient: String,
    pub quotient_num: String,
    pub quotient_den: String,
    pub s_k: String,
    pub s_k_num: String,
    pub s_k_den: String,
}

impl From<&ObstructionRecord> for CsvRow {
    fn from(r: &ObstructionRecord) -> Self {
        let split = |x: &Option<BigRational>| match x {
            Some(v) => (decimal_12(v), v.numer().to_string(), v.denom().to_string()),
            None => (String::new(), String::new(), String::new()),
        };
        let (quotient, quotient_num, quotient_den) = split(&r.quotient);
        let (s_k, s_k_num, s_k_den) = split(&r.s_k);
        CsvRow {
            crossings: r.crossings,
            p: r.key.p.to_string(),
            q: r.key.q_star.to_string(),
            cf: r.cf.to_string(),
            a2: r.inv.a2.to_string(),
            a4: r.inv.a4.to_string(),
            det: r.inv.det.to_string(),
            genus: r.inv.genus,
            v3: r.inv.v3.to_string(),
            lhs: r.lhs.to_string(),
            rhs: r.rhs.to_string(),
            equal: r.is_equal(),
            excluded_torus: r.is_torus(),
            complexity: r.complexity.to_string(),
            quotient,
            quotient_num,
            quotient_den,
            s_k,
            s_k_num,
            s_k_den,
        }
    }
}

/// Positional decimal with 12 significant digits.
pub fn decimal_12(r: &BigRational) -> String {
    let x = r.to_f64().unwrap_or(f64::NAN);
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let sci = format!("{x:.11e}");
    let exp: i32 = sci
        .rsplit_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .unwrap_or(0);
    let decimals = (11 - exp).max(0) as usize;
    format!("{x:.decimals$}")
}

struct ComputedBand {
    summary: BandSummary,
    bytes: Vec<u8>,
}

fn compute_band(crossings: u32, mode: DedupMode, memo: &MemoStore) -> Result<ComputedBand> {
    let partitions: Vec<u32> = leading_entries(crossings).collect();
    let mut records: Vec<ObstructionRecord> = partitions
        .into_par_iter()
        .map(|leading| {
            band_with_leading(crossings, leading)
                .par_iter()
                .map(|cf| check(cf, memo))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    let presentations = records.len() as u64;
    records.sort_by(|a, b| {
        (a.crossings, &a.key.p, &a.key.q_star, &a.cf).cmp(&(
            b.crossings,
            &b.key.p,
            &b.key.q_star,
            &b.cf,
        ))
    });
    let mut keys = HashSet::new();
    let canonical = records
        .iter()
        .filter(|r| keys.insert(r.key.clone()))
        .count() as u64;
    if mode == DedupMode::Canonical {
        let mut seen = HashSet::new();
        records.retain(|r| seen.insert(r.key.clone()));
    }

    let mut summary = BandSummary {
        crossings,
        rows: records.len() as u64,
        presentations,
        canonical,
        ..BandSummary::default()
    };
    let mut writer = csv::WriterBuilder::new()
        .has_headers(false)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    for r in &records {
        match r.verdict {
            Verdict::ExcludedTorus => summary.torus += 1,
            Verdict::ObstructionInconclusive => summary.equality += 1,
            Verdict::ObstructionHolds => {}
        }
        if r.rhs_is_zero() {
            summary.rhs_zero += 1;
        }
        if !r.is_torus() && r.quotient.as_ref().is_none_or(|q| *q <= BigRational::one()) {
            summary.quotient_not_above_one += 1;
        }
        if r.violates_large_pq_trend() {
            summary.large_pq_violations += 1;
        }
        writer.serialize(CsvRow::from(r))?;
    }
    let bytes = writer.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    summary.sha256 = hex::encode(Sha256::digest(&bytes));
    Ok(ComputedBand { summary, bytes })
}

fn header_line() -> String {
    CSV_HEADER.join(",")
}

fn write_atomically(path: &Path, bytes: &[u8]) -> Result<()> {
    let tmp = path.with_extension("tmp");
    {
        let mut f = File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

fn band_file(dir: &Path, crossings: u32) -> PathBuf {
    dir.join(format!("band_{crossings:03}.csv"))
}

fn load_manifest(dir: &Path, config: &SweepConfig) -> Result<Manifest> {
    let path = dir.join(MANIFEST);
    let fresh = Manifest {
        format: CHECKPOINT_FORMAT,
        max_crossings: config.max_crossings,
        dedup_mode: config.dedup_mode,
        header: header_line(),
        bands: Vec::new(),
    };
    if !path.exists() {
        fs::create_dir_all(dir)?;
        return Ok(fresh);
    }
    let manifest: Manifest = serde_json::from_slice(&fs::read(&path)?)
        .map_err(|e| Error::CheckpointCorrupt(format!("unreadable manifest: {e}")))?;
    if manifest.format != fresh.format
        || manifest.max_crossings != fresh.max_crossings
        || manifest.dedup_mode != fresh.dedup_mode
        || manifest.header != fresh.header
    {
        return Err(Error::CheckpointCorrupt(format!(
            "checkpoint was written for max_crossings {} / {} (format {}), \
             this run is max_crossings {} / {}",
            manifest.max_crossings,
            manifest.dedup_mode,
            manifest.format,
            config.max_crossings,
            config.dedup_mode
        )));
    }
    Ok(manifest)
}

fn read_committed_band(dir: &Path, summary: &BandSummary) -> Result<Vec<u8>> {
    let path = band_file(dir, summary.crossings);
    let bytes = fs::read(&path).map_err(|e| {
        Error::CheckpointCorrupt(format!("missing band file {}: {e}", path.display()))
    })?;
    if hex::encode(Sha256::digest(&bytes)) != summary.sha256 {
        return Err(Error::CheckpointCorrupt(format!(
            "digest mismatch in {}",
            path.display()
        )));
    }
    Ok(bytes)
}

/// Runs the sweep to completion.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport> {
    run_sweep_with(config, |_| ControlFlow::Continue(()))
}

/// Runs the sweep, calling `on_band` after each band is written (and
/// committed, with a checkpoint directory). Returning `Break` stops the run
/// with [`Error::Interrupted`]; the output file is not produced, but the
/// checkpoint keeps every committed band.
pub fn run_sweep_with<F>(config: &SweepConfig, mut on_band: F) -> Result<SweepReport>
where
    F: FnMut(&BandSummary) -> ControlFlow<()>,
{
    let plan = config.validate()?;
    let started = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
    let memo = match config.memo_cap_bytes {
        Some(cap) => MemoStore::with_cap_bytes(cap),
        None => MemoStore::new(),
    };

    let mut manifest = match &config.checkpoint_dir {
        Some(dir) => Some(load_manifest(dir, config)?),
        None => None,
    };

    let tmp_out = config.output.with_extension("csv.partial");
    if let Some(parent) = config.output.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)?;
    }
    let mut out = BufWriter::new(File::create(&tmp_out)?);
    out.write_all(header_line().as_bytes())?;
    out.write_all(b"\n")?;

    let mut census = KnotCensus::default();
    let mut bands = Vec::new();
    let mut resumed = Vec::new();
    for crossings in plan.bands() {
        let committed = manifest
            .as_ref()
            .and_then(|m| m.bands.iter().find(|b| b.crossings == crossings).cloned());
        let (summary, bytes) = match (committed, &config.checkpoint_dir) {
            (Some(summary), Some(dir)) => {
                let bytes = read_committed_band(dir, &summary)?;
                resumed.push(crossings);
                (summary, bytes)
            }
            _ => {
                let band = pool.install(|| compute_band(crossings, config.dedup_mode, &memo))?;
                if let (Some(m), Some(dir)) = (manifest.as_mut(), &config.checkpoint_dir) {
                    write_atomically(&band_file(dir, crossings), &band.bytes)?;
                    m.bands.push(band.summary.clone());
                    write_atomically(&dir.join(MANIFEST), &serde_json::to_vec_pretty(m)?)?;
                }
                (band.summary, band.bytes)
            }
        };
        out.write_all(&bytes)?;
        census.record_band(
            crossings,
            BandCensus {
                presentations: summary.presentations,
                canonical: summary.canonical,
            },
        );
        let flow = on_band(&summary);
        bands.push(summary);
        if flow.is_break() {
            drop(out);
            fs::remove_file(&tmp_out)?;
            return Err(Error::Interrupted(crossings));
        }
    }
    out.flush()?;
    out.into_inner()
        .map_err(|e| Error::Io(e.into_error()))?
        .sync_all()?;
    fs::rename(&tmp_out, &config.output)?;

    let total = |f: fn(&BandSummary) -> u64| bands.iter().map(f).sum::<u64>();
    let stats = memo.stats();
    Ok(SweepReport {
        rows: total(|b| b.rows),
        equality_count: total(|b| b.equality),
        torus_count: total(|b| b.torus),
        rhs_zero_count: total(|b| b.rhs_zero),
        quotient_not_above_one: total(|b| b.quotient_not_above_one),
        large_pq_violations: total(|b| b.large_pq_violations),
        census,
        bands,
        resumed_bands: resumed,
        elapsed: started.elapsed(),
        peak_memo_entries: stats.peak_entries,
        peak_memo_bytes: memo.peak_bytes(),
        memo_evictions: stats.evictions,
    })
}

/// Input to a single-knot check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckInput {
    Cf(ContinuedFraction),
    Fraction(Rational),
}

impl CheckInput {
    /// `"a1,a2,..."` is a continued fraction, `"p/q"` a fraction.
    pub fn parse(text: &str) -> Result<Self> {
        if text.contains('/') {
            Ok(CheckInput::Fraction(text.parse()?))
        } else {
            Ok(CheckInput::Cf(text.parse()?))
        }
    }

    /// The positive-form word to evaluate.
    pub fn resolve(&self) -> Result<ContinuedFraction> {
        match self {
            CheckInput::Cf(cf) if is_positive_knot_form(cf) => Ok(cf.clone()),
            CheckInput::Cf(cf) => Err(Error::NotPositiveKnot(format!("[{cf}]"))),
            CheckInput::Fraction(r) => positive_cf_from_rational(r),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckOutput {
    pub record: ObstructionRecord,
    pub cross_check: Option<CrossCheck>,
}

impl std::fmt::Display for CheckOutput {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.record)?;
        if let Some(c) = &self.cross_check {
            write!(f, "\n\n{c}")?;
        }
        Ok(())
    }
}

/// Evaluates one knot; with `verify`, every invariant is also recomputed by
/// the independent routes.
pub fn check_one(input: &CheckInput, verify: bool) -> Result<CheckOutput> {
    let cf = input.resolve()?;
    let memo = MemoStore::new();
    let record = check(&cf, &memo)?;
    let cross_check = if verify {
        Some(cross_check(&cf, &memo)?)
    } else {
        None
    };
    Ok(CheckOutput {
        record,
        cross_check,
    })
}

/// Colour band of `s(K)`: below 0.02, strictly between 0.02 and 0.045,
/// above 0.045, or exactly on a threshold.
pub fn s_k_band(s_k: &BigRational) -> &'static str {
    let low = BigRational::new(1.into(), 50.into());
    let high = BigRational::new(9.into(), 200.into());
    if *s_k < low {
        "green"
    } else if *s_k > low && *s_k < high {
        "red"
    } else if *s_k > high {
        "blue"
    } else {
        "boundary"
    }
}

/// Names of the files written by [`emit_plot_data`].
pub const PLOT_FILES: [&str; 7] = [
    "pq_vs_quotient.csv",
    "slope_vs_q.csv",
    "p_vs_q.csv",
    "pq_vs_difference.csv",
    "minpq_vs_difference.csv",
    "q_vs_difference.csv",
    "q_vs_quotient.csv",
];

fn parse_int(s: &str, what: &str) -> Result<BigInt> {
    s.parse()
        .map_err(|e| Error::Parse(format!("bad {what} value {s:?}: {e}")))
}

fn parse_ratio(num: &str, den: &str) -> Result<Option<BigRational>> {
    if num.is_empty() {
        return Ok(None);
    }
    let den = parse_int(den, "denominator")?;
    if den.is_zero() {
        return Err(Error::Parse("zero denominator in results".into()));
    }
    Ok(Some(BigRational::new(parse_int(num, "numerator")?, den)))
}

/// Writes the derived-column CSVs for the scatter plots into `out_dir`.
pub fn emit_plot_data(results_csv: &Path, out_dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir)?;
    let headers: [&[&str]; 7] = [
        &["complexity", "quotient", "excluded_torus"],
        &["q", "s_k", "excluded_torus"],
        &["p", "q", "s_k", "band", "excluded_torus"],
        &["complexity", "difference", "excluded_torus"],
        &["min_pq", "difference", "excluded_torus"],
        &["q", "difference", "excluded_torus"],
        &["q", "quotient", "excluded_torus"],
    ];
    let paths: Vec<PathBuf> = PLOT_FILES.iter().map(|f| out_dir.join(f)).collect();
    let mut writers = paths
        .iter()
        .zip(headers)
        .map(|(path, header)| {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_path(path)?;
            w.write_record(header)?;
            Ok(w)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut reader = csv::Reader::from_path(results_csv)?;
    for row in reader.deserialize::<CsvRow>() {
        let row = row?;
        let p = parse_int(&row.p, "p")?.abs();
        let q = parse_int(&row.q, "q")?.abs();
        let difference = parse_int(&row.lhs, "lhs")? - parse_int(&row.rhs, "rhs")?;
        let torus = row.excluded_torus.to_string();
        let s_k = parse_ratio(&row.s_k_num, &row.s_k_den)?;
        let band = s_k.as_ref().map_or("undefined", s_k_band);
        let min_pq = (&p).min(&q).to_string();
        let (p, q, d) = (p.to_string(), q.to_string(), difference.to_string());

        writers[0].write_record([&row.complexity, &row.quotient, &torus])?;
        writers[1].write_record([&q, &row.s_k, &torus])?;
        writers[2].write_record([&p, &q, &row.s_k, band, &torus])?;
        writers[3].write_record([&row.complexity, &d, &torus])?;
        writers[4].write_record([&min_pq, &d, &torus])?;
        writers[5].write_record([&q, &d, &torus])?;
        writers[6].write_record([&q, &row.quotient, &torus])?;
    }
    for w in &mut writers {
        w.flush()?;
    }
    Ok(paths)
}
