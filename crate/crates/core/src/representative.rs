//! Representative skylines: pick `k` skyline tuples that either cover the
//! most dominated tuples or leave no skyline tuple far from a pick.
//!
//! Exact solvers enumerate `k`-subsets of the skyline in lexicographic id
//! order and keep the first best; greedy solvers return ids in pick order.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::affine::distance;
use crate::classic::{dominates, skyline_indices};
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::IdSet;

/// Largest number of subsets an exact solver may enumerate.
pub const EXACT_BUDGET: f64 = 1e6;

/// Objective differences below this are ties.
const OBJECTIVE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    Exact,
    #[default]
    Greedy,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Self::Exact),
            "greedy" => Ok(Self::Greedy),
            other => Err(Error::InvalidArgument(format!("unknown mode {:?}", other))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Exact => "exact",
            Self::Greedy => "greedy",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    pub ids: Vec<String>,
    /// Coverage count or max distance, depending on the variant.
    pub objective: f64,
}

impl Selection {
    pub fn id_set(&self) -> IdSet {
        self.ids.iter().cloned().collect()
    }
}

/// Skyline indices sorted by id.
fn sorted_skyline(ds: &Dataset) -> Vec<usize> {
    let mut sky = skyline_indices(ds);
    sky.sort_by(|&a, &b| ds.tuples()[a].id.cmp(&ds.tuples()[b].id));
    sky
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    Ok(())
}

fn check_budget(n: usize, k: usize) -> Result<()> {
    let subsets = binomial(n, k);
    if subsets > EXACT_BUDGET {
        return Err(Error::BudgetExceeded {
            subsets,
            budget: EXACT_BUDGET,
        });
    }
    Ok(())
}

fn resolve(ds: &Dataset, chosen: &IdSet, sky: &[usize]) -> Result<Vec<usize>> {
    chosen
        .iter()
        .map(|id| {
            let i = ds
                .tuples()
                .iter()
                .position(|t| &t.id == id)
                .ok_or_else(|| Error::UnknownId(id.clone()))?;
            if sky.contains(&i) {
                Ok(i)
            } else {
                Err(Error::NotInSkyline(id.clone()))
            }
        })
        .collect()
}

/// Dominated-tuple bitsets, one per skyline tuple.
struct CoverTable {
    words: usize,
    masks: Vec<Vec<u64>>,
}

impl CoverTable {
    fn new(ds: &Dataset, sky: &[usize]) -> Self {
        let tuples = ds.tuples();
        let others: Vec<usize> = (0..tuples.len()).filter(|i| !sky.contains(i)).collect();
        let words = others.len().div_ceil(64);
        let masks = sky
            .iter()
            .map(|&s| {
                let mut m = vec![0u64; words];
                for (bit, &o) in others.iter().enumerate() {
                    if dominates(&tuples[s].attrs, &tuples[o].attrs) {
                        m[bit / 64] |= 1 << (bit % 64);
                    }
                }
                m
            })
            .collect();
        Self { words, masks }
    }

    fn union_count(&self, picks: impl IntoIterator<Item = usize>) -> usize {
        let mut acc = vec![0u64; self.words];
        for p in picks {
            for (a, m) in acc.iter_mut().zip(&self.masks[p]) {
                *a |= m;
            }
        }
        acc.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Non-skyline tuples dominated by at least one chosen skyline tuple.
pub fn coverage(ds: &Dataset, chosen: &IdSet) -> Result<usize> {
    let sky = skyline_indices(ds);
    let picks = resolve(ds, chosen, &sky)?;
    let table = CoverTable::new(ds, &sky);
    Ok(table.union_count(
        picks
            .iter()
            .map(|i| sky.iter().position(|s| s == i).expect("resolved in skyline")),
    ))
}

/// Largest distance from an unpicked skyline tuple to its nearest pick.
pub fn distance_objective(ds: &Dataset, chosen: &IdSet) -> Result<f64> {
    let sky = skyline_indices(ds);
    let picks = resolve(ds, chosen, &sky)?;
    Ok(max_gap(ds, &sky, &picks))
}

fn max_gap(ds: &Dataset, sky: &[usize], picks: &[usize]) -> f64 {
    let t = ds.tuples();
    sky.iter()
        .filter(|s| !picks.contains(s))
        .map(|&s| {
            picks
                .iter()
                .map(|&p| distance(&t[s].attrs, &t[p].attrs))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

fn ids_of(ds: &Dataset, idx: impl IntoIterator<Item = usize>) -> Vec<String> {
    idx.into_iter().map(|i| ds.tuples()[i].id.clone()).collect()
}

/// Skyline subset of size `min(k, |skyline|)` covering the most dominated
/// tuples.
pub fn dominance_representative(ds: &Dataset, k: usize, mode: Mode) -> Result<Selection> {
    check_k(k)?;
    let sky = sorted_skyline(ds);
    let size = k.min(sky.len());
    let table = CoverTable::new(ds, &sky);
    let picks: Vec<usize> = match mode {
        Mode::Exact => {
            check_budget(sky.len(), size)?;
            let mut best: Option<(usize, Vec<usize>)> = None;
            for combo in (0..sky.len()).combinations(size) {
                let c = table.union_count(combo.iter().copied());
                if best.as_ref().is_none_or(|(b, _)| c > *b) {
                    best = Some((c, combo));
                }
            }
            best.map(|(_, combo)| combo).unwrap_or_default()
        }
        Mode::Greedy => {
            let mut picks: Vec<usize> = Vec::with_capacity(size);
            while picks.len() < size {
                let mut best: Option<(usize, usize)> = None;
                for cand in (0..sky.len()).filter(|c| !picks.contains(c)) {
                    let gain = table.union_count(picks.iter().copied().chain([cand]));
                    if best.is_none_or(|(g, _)| gain > g) {
                        best = Some((gain, cand));
                    }
                }
                picks.push(best.expect("candidates remain").1);
            }
            picks
        }
    };
    Ok(Selection {
        objective: table.union_count(picks.iter().copied()) as f64,
        ids: ids_of(ds, picks.iter().map(|&p| sky[p])),
    })
}

/// Skyline subset of size `min(k, |skyline|)` minimizing the largest distance
/// from an unpicked skyline tuple to its nearest pick.
///
/// Distances are Euclidean in the dataset's own attribute space.
pub fn distance_representative(ds: &Dataset, k: usize, mode: Mode) -> Result<Selection> {
    check_k(k)?;
    let sky = sorted_skyline(ds);
    let size = k.min(sky.len());
    let t = ds.tuples();
    let picks: Vec<usize> = match mode {
        Mode::Exact => {
            check_budget(sky.len(), size)?;
            let mut best: Option<(f64, Vec<usize>)> = None;
            for combo in sky.iter().copied().combinations(size) {
                let obj = max_gap(ds, &sky, &combo);
                if best.as_ref().is_none_or(|(b, _)| obj < b - OBJECTIVE_TOL) {
                    best = Some((obj, combo));
                }
            }
            best.map(|(_, combo)| combo).unwrap_or_default()
        }
        Mode::Greedy => {
            let mut picks: Vec<usize> = Vec::with_capacity(size);
            if size > 0 {
                // seed: smallest eccentricity within the skyline
                let mut seed: Option<(f64, usize)> = None;
                for &s in &sky {
                    let ecc = sky
                        .iter()
                        .map(|&o| distance(&t[s].attrs, &t[o].attrs))
                        .fold(0.0, f64::max);
                    if seed.is_none_or(|(e, _)| ecc < e - OBJECTIVE_TOL) {
                        seed = Some((ecc, s));
                    }
                }
                picks.push(seed.expect("non-empty skyline").1);
            }
            while picks.len() < size {
                let mut far: Option<(f64, usize)> = None;
                for &s in sky.iter().filter(|s| !picks.contains(s)) {
                    let gap = picks
                        .iter()
                        .map(|&p| distance(&t[s].attrs, &t[p].attrs))
                        .fold(f64::INFINITY, f64::min);
                    if far.is_none_or(|(g, _)| gap > g + OBJECTIVE_TOL) {
                        far = Some((gap, s));
                    }
                }
                picks.push(far.expect("candidates remain").1);
            }
            picks
        }
    };
    Ok(Selection {
        objective: max_gap(ds, &sky, &picks),
        ids: ids_of(ds, picks),
    })
}
