//! Selection operators for "most interesting tuple" queries over
//! multi-dimensional data.
//!
//! Everything is lower-is-better. Scoring functions are weighted sums `v·r`
//! with `v` on the preference simplex; families of scoring functions are
//! convex [`WeightRegion`]s of that simplex.
//!
//! | module | operators |
//! |---|---|
//! | [`classic`] | Pareto dominance, skyline, k-skyband, top-k (scan and threshold algorithm) |
//! | [`region`] | region membership, vertices, linear optimization, optimality tests |
//! | [`flexible`] | F-dominance, ND, PO |
//! | [`oss`] | ρ-dominance, ORD, ORU |
//! | [`utk`] | UTK₁, UTK₂ |
//! | [`epsilon`] | ε-dominance and ε-skylines |
//! | [`representative`] | coverage and distance based representative skylines |
//! | [`report`] | property matrix over all operators |

mod affine;
pub mod classic;
pub mod data;
pub mod epsilon;
pub mod error;
pub mod fixtures;
pub mod flexible;
mod lp;
pub mod oss;
pub mod region;
pub mod report;
pub mod representative;
pub mod utk;

use std::collections::BTreeSet;

pub use classic::{k_skyband, pareto_dominates, skyline, top_k, top_k_threshold, RankedResult};
pub use data::{generate, Dataset, Distribution, Tuple};
pub use error::{Error, Result};
pub use flexible::{constraint_from_preference, f_dominates, nd, po};
pub use region::{Ball, LinearConstraint, Optimality, Relation, WeightRegion};

/// Set of tuple ids in ascending lexicographic order.
pub type IdSet = BTreeSet<String>;

/// Absolute tolerance for score ties, simplex membership and deduplication.
pub const SCORE_TOL: f64 = 1e-9;

/// Margin for dominance and strict-optimality decisions.
pub const MARGIN: f64 = 1e-12;
