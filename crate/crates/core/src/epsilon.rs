//! ε-dominance over attributes normalized to `[0,1]`.
//!
//! `r1` ε-dominates `r2` when `w_i r1_i <= w_i r2_i + ε` for every attribute
//! and `r1_i < r2_i` for at least one. The second clause is unweighted and
//! ignores ε. Comparisons are exact: with `ε = 0` and `w > 0` the relation is
//! Pareto dominance bit for bit.

use crate::classic::{check_dims, check_simplex};
use crate::data::{Dataset, Tuple};
use crate::error::{Error, Result};
use crate::IdSet;

fn check_eps(eps: f64) -> Result<()> {
    if !(-1.0..=1.0).contains(&eps) {
        return Err(Error::InvalidArgument(format!("eps must be in [-1, 1], got {}", eps)));
    }
    Ok(())
}

fn check_unit(t: &Tuple) -> Result<()> {
    if t.attrs.iter().all(|x| (0.0..=1.0).contains(x)) {
        Ok(())
    } else {
        Err(Error::NotNormalized)
    }
}

pub fn epsilon_dominates(r1: &Tuple, r2: &Tuple, w: &[f64], eps: f64) -> Result<bool> {
    check_dims(r1, r2)?;
    check_simplex(w, r1.dim())?;
    check_eps(eps)?;
    check_unit(r1)?;
    check_unit(r2)?;
    Ok(dominates_unchecked(&r1.attrs, &r2.attrs, w, eps))
}

fn dominates_unchecked(r1: &[f64], r2: &[f64], w: &[f64], eps: f64) -> bool {
    let mut strict = false;
    for ((a, b), wi) in r1.iter().zip(r2).zip(w) {
        if wi * a > wi * b + eps {
            return false;
        }
        strict |= a < b;
    }
    strict
}

/// Tuples no other tuple ε-dominates.
///
/// Every attribute must lie in `[0,1]`, either because the data was
/// normalized or because it was produced in that range.
pub fn epsilon_skyline(ds: &Dataset, w: &[f64], eps: f64) -> Result<IdSet> {
    check_simplex(w, ds.dim())?;
    check_eps(eps)?;
    for t in ds.tuples() {
        check_unit(t)?;
    }
    let tuples = ds.tuples();
    Ok(tuples
        .iter()
        .enumerate()
        .filter(|(i, t)| {
            !tuples
                .iter()
                .enumerate()
                .any(|(j, r)| j != *i && dominates_unchecked(&r.attrs, &t.attrs, w, eps))
        })
        .map(|(_, t)| t.id.clone())
        .collect())
}
