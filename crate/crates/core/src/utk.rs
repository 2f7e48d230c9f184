//! Uncertain top-k over a preference polytope.
//!
//! In two dimensions the region is an interval of `v1` (with `v2 = 1 - v1`)
//! and the answer is exact: scores are lines in `v1`, so the top-k result
//! only changes where two lines cross. In three and four dimensions the region
//! is sampled on the simplex lattice and every cell is flagged inexact.

use serde::Serialize;

use crate::classic::top_k_unchecked;
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::region::{WeightRegion, MAX_GRID_DIM};
use crate::{IdSet, SCORE_TOL};

/// Lattice resolution of the sampled path.
pub const SAMPLE_RESOLUTION: usize = 64;

/// Whether cells are told apart by the top-k set or by the ranked top-k list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Labeling {
    #[default]
    Set,
    Ordered,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum CellKind {
    /// `lo <= v1 <= hi`.
    ExactInterval { lo: f64, hi: f64 },
    /// Sampled weight vectors sharing the label.
    SampleCloud { points: Vec<Vec<f64>> },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartitionCell {
    #[serde(flatten)]
    pub kind: CellKind,
    /// Top-k ids: ascending for set labels, in rank order for ordered labels.
    pub label: Vec<String>,
    pub exact: bool,
}

impl PartitionCell {
    pub fn label_set(&self) -> IdSet {
        self.label.iter().cloned().collect()
    }

    /// Interval bounds of an exact cell.
    pub fn bounds(&self) -> Option<(f64, f64)> {
        match self.kind {
            CellKind::ExactInterval { lo, hi } => Some((lo, hi)),
            CellKind::SampleCloud { .. } => None,
        }
    }

    pub fn samples(&self) -> usize {
        match &self.kind {
            CellKind::ExactInterval { .. } => 1,
            CellKind::SampleCloud { points } => points.len(),
        }
    }
}

fn check_args(ds: &Dataset, k: usize, reg: &WeightRegion) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if ds.is_empty() {
        return Err(Error::EmptyDataset);
    }
    if reg.dim() != ds.dim() {
        return Err(Error::DimensionMismatch {
            expected: ds.dim(),
            found: reg.dim(),
        });
    }
    if !reg.is_polytope() {
        return Err(Error::Unsupported("uncertain top-k needs a polytope region".into()));
    }
    if reg.dim() > MAX_GRID_DIM {
        return Err(Error::Unsupported(format!(
            "uncertain top-k in dimension {} (max {})",
            reg.dim(),
            MAX_GRID_DIM
        )));
    }
    if reg.is_empty() {
        return Err(Error::EmptyRegion);
    }
    Ok(())
}

fn label_at(ds: &Dataset, w: &[f64], k: usize, labeling: Labeling) -> Vec<String> {
    let ranked = top_k_unchecked(ds.tuples(), w, k);
    let mut ids: Vec<String> = ranked.entries.into_iter().map(|(id, _)| id).collect();
    if labeling == Labeling::Set {
        ids.sort();
    }
    ids
}

/// `[min v1, max v1]` over a non-empty two-dimensional polytope, read off the
/// constraints with `v2 = 1 - v1` substituted.
fn v1_interval(reg: &WeightRegion) -> Result<(f64, f64)> {
    if reg.is_empty() {
        return Err(Error::EmptyRegion);
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for c in reg.constraints() {
        // a1 v1 + a2 (1 - v1) <= b; constraints are stored in <= form
        let slope = c.coeffs[0] - c.coeffs[1];
        let bound = c.rhs - c.coeffs[1];
        if slope > 0.0 {
            hi = hi.min(bound / slope);
        } else if slope < 0.0 {
            lo = lo.max(bound / slope);
        }
    }
    Ok((lo, hi.max(lo)))
}

/// Sorted `v1` values strictly inside the region where two tuples tie.
pub fn order_breakpoints(ds: &Dataset, reg: &WeightRegion) -> Result<Vec<f64>> {
    if ds.dim() != 2 || reg.dim() != 2 {
        return Err(Error::Unsupported("order breakpoints need two dimensions".into()));
    }
    let (lo, hi) = v1_interval(reg)?;
    let tuples = ds.tuples();
    let mut roots = Vec::new();
    for (i, t) in tuples.iter().enumerate() {
        for u in &tuples[i + 1..] {
            let den = (t.attrs[0] - u.attrs[0]) - (t.attrs[1] - u.attrs[1]);
            if den.abs() <= 1e-12 {
                continue;
            }
            let root = (u.attrs[1] - t.attrs[1]) / den;
            if root > lo + SCORE_TOL && root < hi - SCORE_TOL {
                roots.push(root);
            }
        }
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|b, a| *b - *a <= SCORE_TOL);
    Ok(roots)
}

/// Partition of the region into cells of constant top-k label.
pub fn utk2(ds: &Dataset, k: usize, reg: &WeightRegion) -> Result<Vec<PartitionCell>> {
    utk2_with(ds, k, reg, Labeling::Set)
}

pub fn utk2_with(
    ds: &Dataset,
    k: usize,
    reg: &WeightRegion,
    labeling: Labeling,
) -> Result<Vec<PartitionCell>> {
    check_args(ds, k, reg)?;
    if reg.dim() == 2 {
        exact_cells(ds, k, reg, labeling)
    } else {
        sampled_cells(ds, k, reg, labeling)
    }
}

fn exact_cells(
    ds: &Dataset,
    k: usize,
    reg: &WeightRegion,
    labeling: Labeling,
) -> Result<Vec<PartitionCell>> {
    let (lo, hi) = v1_interval(reg)?;
    let mut cuts = vec![lo];
    cuts.extend(order_breakpoints(ds, reg)?);
    cuts.push(hi);
    let mut cells: Vec<PartitionCell> = Vec::new();
    for pair in cuts.windows(2) {
        let mid = 0.5 * (pair[0] + pair[1]);
        let label = label_at(ds, &[mid, 1.0 - mid], k, labeling);
        match cells.last_mut() {
            Some(last) if last.label == label => {
                last.kind = CellKind::ExactInterval {
                    lo: last.bounds().map_or(pair[0], |b| b.0),
                    hi: pair[1],
                };
            }
            _ => cells.push(PartitionCell {
                kind: CellKind::ExactInterval {
                    lo: pair[0],
                    hi: pair[1],
                },
                label,
                exact: true,
            }),
        }
    }
    Ok(cells)
}

/// Lattice points of the region plus its vertex centroid, grouped by label in
/// order of first appearance.
fn sampled_cells(
    ds: &Dataset,
    k: usize,
    reg: &WeightRegion,
    labeling: Labeling,
) -> Result<Vec<PartitionCell>> {
    let mut points = reg.grid_sample(SAMPLE_RESOLUTION)?;
    let vertices = reg.enumerate_vertices()?;
    let d = reg.dim();
    let mut centroid = vec![0.0; d];
    for v in &vertices {
        for (c, x) in centroid.iter_mut().zip(v) {
            *c += x / vertices.len() as f64;
        }
    }
    // the centroid may sit on a strict boundary; it only stands for the closure
    if !points.is_empty() {
        points.push(centroid);
    } else {
        points = vec![centroid];
    }
    let mut cells: Vec<PartitionCell> = Vec::new();
    for p in points {
        let label = label_at(ds, &p, k, labeling);
        match cells.iter_mut().find(|c| c.label == label) {
            Some(cell) => {
                if let CellKind::SampleCloud { points } = &mut cell.kind {
                    points.push(p);
                }
            }
            None => cells.push(PartitionCell {
                kind: CellKind::SampleCloud { points: vec![p] },
                label,
                exact: false,
            }),
        }
    }
    Ok(cells)
}

/// Tuples in the top-k result for some weight vector of the region.
pub fn utk1(ds: &Dataset, k: usize, reg: &WeightRegion) -> Result<IdSet> {
    Ok(utk2(ds, k, reg)?
        .into_iter()
        .flat_map(|c| c.label)
        .collect())
}
