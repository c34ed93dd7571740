//! Exhaustive checks of a chirally cosmetic surgery obstruction on positive
//! 2-bridge knots.
//!
//! Every positive 2-bridge knot has a continued fraction `[a1, ..., a_{2n+1}]`
//! with positive entries and even entries at even positions. For each such
//! word up to a crossing bound the crate computes `a2`, `a4`, `det`, genus and
//! `v3`, each by two independent routes, and evaluates
//!
//! ```text
//! v3 · (det/2 + 3g - 5/2)  vs  7·a2² - a2 - 10·a4
//! ```
//!
//! A knot that is not a `(2, 2n+1)` torus knot and for which the two sides
//! differ admits no chirally cosmetic surgery.

pub mod conway_skein;
pub mod enumeration;
pub mod error;
pub mod invariants;
pub mod obstruction;
pub mod oracles;
pub mod poly;
pub mod rational_cf;
pub mod sweep;

pub use conway_skein::{conway, conway_of_cf, ConwayPolynomial, LinkState, MemoStore};
pub use enumeration::{census, enumerate_presentations, DedupMode, EnumerationPlan, KnotCensus};
pub use error::{Error, Result};
pub use invariants::{compute_invariants, InvariantSet};
pub use obstruction::{check, ObstructionRecord, Verdict};
pub use rational_cf::{
    canonical_key, eval_cf, is_positive_knot_form, positive_cf_from_rational, to_even_cf,
    CanonicalKnotKey, ContinuedFraction, EvenContinuedFraction, Rational,
};
pub use sweep::{
    check_one, emit_plot_data, run_sweep, run_sweep_with, BandSummary, CheckInput, SweepConfig,
    SweepReport,
};
