//! Pareto dominance, skyline, k-skyband and top-k.

use std::cmp::Ordering;
use std::collections::{BTreeSet, BinaryHeap};

use crate::data::{Dataset, Tuple};
use crate::error::{Error, Result};
use crate::{IdSet, SCORE_TOL};

/// `t` is no worse than `r` everywhere and strictly better somewhere.
pub fn pareto_dominates(t: &Tuple, r: &Tuple) -> Result<bool> {
    check_dims(t, r)?;
    Ok(dominates(&t.attrs, &r.attrs))
}

pub(crate) fn check_dims(t: &Tuple, r: &Tuple) -> Result<()> {
    if t.dim() != r.dim() {
        return Err(Error::DimensionMismatch {
            expected: t.dim(),
            found: r.dim(),
        });
    }
    Ok(())
}

pub(crate) fn dominates(t: &[f64], r: &[f64]) -> bool {
    let mut strict = false;
    for (a, b) in t.iter().zip(r) {
        if a > b {
            return false;
        }
        if a < b {
            strict = true;
        }
    }
    strict
}

/// Block-nested-loops skyline. Exact duplicates of a skyline point are all kept.
pub fn skyline(ds: &Dataset) -> IdSet {
    skyline_indices(ds)
        .into_iter()
        .map(|i| ds.tuples()[i].id.clone())
        .collect()
}

pub(crate) fn skyline_indices(ds: &Dataset) -> Vec<usize> {
    let tuples = ds.tuples();
    let mut window: Vec<usize> = Vec::new();
    'outer: for (i, t) in tuples.iter().enumerate() {
        let mut j = 0;
        while j < window.len() {
            let w = &tuples[window[j]];
            if dominates(&w.attrs, &t.attrs) {
                continue 'outer;
            }
            if dominates(&t.attrs, &w.attrs) {
                window.swap_remove(j);
            } else {
                j += 1;
            }
        }
        window.push(i);
    }
    window.sort_unstable();
    window
}

/// Number of tuples Pareto-dominating each tuple, in dataset order.
pub fn dominator_counts(ds: &Dataset) -> Vec<usize> {
    let tuples = ds.tuples();
    tuples
        .iter()
        .map(|r| {
            tuples
                .iter()
                .filter(|t| dominates(&t.attrs, &r.attrs))
                .count()
        })
        .collect()
}

/// Tuples with fewer than `k` Pareto dominators.
pub fn k_skyband(ds: &Dataset, k: usize) -> Result<IdSet> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    Ok(dominator_counts(ds)
        .into_iter()
        .zip(ds.tuples())
        .filter(|(c, _)| *c < k)
        .map(|(_, t)| t.id.clone())
        .collect())
}

/// Ordered top-k output: scores ascending, near-ties (within [`SCORE_TOL`]) by id.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedResult {
    pub entries: Vec<(String, f64)>,
}

impl RankedResult {
    pub fn ids(&self) -> Vec<&str> {
        self.entries.iter().map(|(id, _)| id.as_str()).collect()
    }

    pub fn id_set(&self) -> IdSet {
        self.entries.iter().map(|(id, _)| id.clone()).collect()
    }

    pub fn scores(&self) -> Vec<f64> {
        self.entries.iter().map(|(_, s)| *s).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub(crate) fn check_simplex(w: &[f64], d: usize) -> Result<()> {
    if w.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: w.len(),
        });
    }
    let sum: f64 = w.iter().sum();
    if w.iter().any(|x| !x.is_finite() || *x < 0.0) || (sum - 1.0).abs() > SCORE_TOL {
        return Err(Error::OffSimplex(w.to_vec()));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy)]
struct Scored<'a> {
    score: f64,
    id: &'a str,
}

impl Scored<'_> {
    fn exact_cmp(&self, other: &Self) -> Ordering {
        self.score
            .total_cmp(&other.score)
            .then_with(|| self.id.cmp(other.id))
    }
}

impl PartialEq for Scored<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.exact_cmp(other) == Ordering::Equal
    }
}
impl Eq for Scored<'_> {}
impl PartialOrd for Scored<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Scored<'_> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.exact_cmp(other)
    }
}

/// Applies the global ranking convention to a candidate pool and keeps `k`.
///
/// The pool is cut at the exact k-th score plus [`SCORE_TOL`], sorted exactly,
/// then near-ties are reordered by id with an insertion pass.
fn rank_pool(mut pool: Vec<Scored<'_>>, k: usize) -> RankedResult {
    if pool.len() > k {
        let (_, kth, _) = pool.select_nth_unstable(k - 1);
        let cut = kth.score + SCORE_TOL;
        pool.retain(|s| s.score <= cut);
    }
    pool.sort_unstable();
    for i in 1..pool.len() {
        let mut j = i;
        while j > 0
            && (pool[j - 1].score - pool[j].score).abs() <= SCORE_TOL
            && pool[j - 1].id > pool[j].id
        {
            pool.swap(j - 1, j);
            j -= 1;
        }
    }
    pool.truncate(k);
    RankedResult {
        entries: pool
            .into_iter()
            .map(|s| (s.id.to_string(), s.score))
            .collect(),
    }
}

fn check_topk_args(ds: &Dataset, w: &[f64], k: usize) -> Result<()> {
    check_simplex(w, ds.dim())?;
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    Ok(())
}

/// Scores every tuple and keeps the `k` best.
pub fn top_k(ds: &Dataset, w: &[f64], k: usize) -> Result<RankedResult> {
    check_topk_args(ds, w, k)?;
    Ok(top_k_unchecked(ds.tuples(), w, k))
}

pub(crate) fn top_k_unchecked(tuples: &[Tuple], w: &[f64], k: usize) -> RankedResult {
    let pool = tuples
        .iter()
        .map(|t| Scored {
            score: t.score(w),
            id: &t.id,
        })
        .collect();
    rank_pool(pool, k)
}

/// Result of [`top_k_threshold`] plus how many tuples were scored.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdRun {
    pub result: RankedResult,
    pub scored: usize,
}

/// Threshold-algorithm top-k over per-attribute sorted lists.
///
/// Lists are read round-robin, every newly seen tuple is scored in full, and
/// the scan stops once the k-th best score is below the threshold `w·frontier`
/// by more than [`SCORE_TOL`]. Unseen tuples then cannot enter the result even
/// through the id tie rule, so the output equals [`top_k`].
pub fn top_k_threshold(ds: &Dataset, w: &[f64], k: usize) -> Result<ThresholdRun> {
    check_topk_args(ds, w, k)?;
    let tuples = ds.tuples();
    let n = tuples.len();
    let lists: Vec<(usize, Vec<usize>)> = (0..ds.dim())
        .filter(|&j| w[j] > 0.0)
        .map(|j| {
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| tuples[a].attrs[j].total_cmp(&tuples[b].attrs[j]));
            (j, order)
        })
        .collect();
    debug_assert!(!lists.is_empty(), "simplex weights have a positive entry");

    let mut seen = vec![false; n];
    let mut pool: Vec<Scored<'_>> = Vec::new();
    // max-heap of the k best seen so far (exact order)
    let mut best: BinaryHeap<Scored<'_>> = BinaryHeap::with_capacity(k + 1);
    for depth in 0..n {
        let mut threshold = 0.0;
        for (j, order) in &lists {
            let idx = order[depth];
            threshold += w[*j] * tuples[idx].attrs[*j];
            if !seen[idx] {
                seen[idx] = true;
                let s = Scored {
                    score: tuples[idx].score(w),
                    id: &tuples[idx].id,
                };
                pool.push(s);
                best.push(s);
                if best.len() > k {
                    best.pop();
                }
            }
        }
        if best.len() == k {
            let kth = best.peek().expect("k >= 1").score;
            if kth + SCORE_TOL < threshold {
                break;
            }
        }
    }
    let scored = pool.len();
    Ok(ThresholdRun {
        result: rank_pool(pool, k),
        scored,
    })
}

/// Ids in ascending order, as a set.
pub fn id_set<'a>(ids: impl IntoIterator<Item = &'a str>) -> IdSet {
    ids.into_iter().map(str::to_string).collect::<BTreeSet<_>>()
}
