//! Flexible skylines: F-dominance over a weight region and the ND / PO operators.
//!
//! PO uses strict optimality against rivals with different attributes. With
//! the weak reading (`<=`) a tuple that only ties at a region boundary could
//! be "optimal" while another tuple F-dominates it, breaking `PO ⊆ ND`.
//! [`po_with`] exposes the weak variant for comparison.

use crate::classic::check_dims;
use crate::data::{Dataset, Tuple};
use crate::error::{Error, Result};
use crate::region::{LinearConstraint, WeightRegion};
use crate::{IdSet, MARGIN};

/// Turns "`preferred` is better than `other`" into `(preferred - other)·v < 0`.
pub fn constraint_from_preference(preferred: &Tuple, other: &Tuple) -> Result<LinearConstraint> {
    check_dims(preferred, other)?;
    if preferred.attrs == other.attrs {
        return Err(Error::UninformativePreference);
    }
    let coeffs = preferred
        .attrs
        .iter()
        .zip(&other.attrs)
        .map(|(a, b)| a - b)
        .collect();
    Ok(LinearConstraint::lt(coeffs, 0.0))
}

/// `r1` scores no worse than `r2` everywhere on the region and strictly
/// better somewhere.
pub fn f_dominates(r1: &Tuple, r2: &Tuple, reg: &WeightRegion) -> Result<bool> {
    check_dims(r1, r2)?;
    check_region(reg, r1.dim())?;
    dominates_unchecked(r1, r2, reg)
}

pub(crate) fn dominates_unchecked(r1: &Tuple, r2: &Tuple, reg: &WeightRegion) -> Result<bool> {
    let c: Vec<f64> = r1.attrs.iter().zip(&r2.attrs).map(|(a, b)| a - b).collect();
    if c.iter().all(|x| *x == 0.0) {
        return Ok(false);
    }
    let (lo, _) = reg.minimize_linear(&c)?;
    if lo >= -MARGIN {
        return Ok(false);
    }
    // componentwise r1 <= r2 already bounds the maximum by zero
    if c.iter().all(|x| *x <= 0.0) {
        return Ok(true);
    }
    let (hi, _) = reg.maximize_linear(&c)?;
    Ok(hi <= MARGIN)
}

pub(crate) fn check_region(reg: &WeightRegion, d: usize) -> Result<()> {
    if reg.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: reg.dim(),
        });
    }
    if reg.is_empty() {
        return Err(Error::EmptyRegion);
    }
    Ok(())
}

/// Indices of tuples no other tuple F-dominates.
pub(crate) fn nd_indices(ds: &Dataset, reg: &WeightRegion) -> Result<Vec<usize>> {
    check_region(reg, ds.dim())?;
    let tuples = ds.tuples();
    // likely dominators first: small attribute sums
    let mut order: Vec<usize> = (0..tuples.len()).collect();
    order.sort_by(|&a, &b| {
        let sa: f64 = tuples[a].attrs.iter().sum();
        let sb: f64 = tuples[b].attrs.iter().sum();
        sa.total_cmp(&sb)
    });
    let mut out = Vec::new();
    for (i, t) in tuples.iter().enumerate() {
        let mut dominated = false;
        for &j in &order {
            if j != i && dominates_unchecked(&tuples[j], t, reg)? {
                dominated = true;
                break;
            }
        }
        if !dominated {
            out.push(i);
        }
    }
    Ok(out)
}

/// Non-F-dominated tuples.
pub fn nd(ds: &Dataset, reg: &WeightRegion) -> Result<IdSet> {
    Ok(nd_indices(ds, reg)?
        .into_iter()
        .map(|i| ds.tuples()[i].id.clone())
        .collect())
}

/// Tuples strictly optimal for at least one weight vector of the region.
pub fn po(ds: &Dataset, reg: &WeightRegion) -> Result<IdSet> {
    po_with(ds, reg, true)
}

/// PO with a choice of strict (default) or weak optimality.
///
/// The strict search only visits ND members since strict PO ⊆ ND.
pub fn po_with(ds: &Dataset, reg: &WeightRegion, strict: bool) -> Result<IdSet> {
    let tuples = ds.tuples();
    let candidates: Vec<usize> = if strict {
        nd_indices(ds, reg)?
    } else {
        check_region(reg, ds.dim())?;
        (0..tuples.len()).collect()
    };
    let mut out = IdSet::new();
    for i in candidates {
        let rivals: Vec<&Tuple> = tuples
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, t)| t)
            .collect();
        if reg.exists_weak_optimum(&tuples[i], &rivals, strict)?.holds {
            out.insert(tuples[i].id.clone());
        }
    }
    Ok(out)
}
