//! ρ-dominance and the output-size-specified operators ORD and ORU.
//!
//! Both operators search the least radius around an estimate `w` that lets
//! `m` tuples through. The count is piecewise constant in the radius, so a
//! bisection to width [`RADIUS_TOL`] identifies the set; the reported radius
//! is the midpoint of the final bracket.

use itertools::Itertools;

use crate::classic::{check_dims, check_simplex};
use crate::data::{dot, Dataset, Tuple};
use crate::error::{Error, Result};
use crate::flexible::dominates_unchecked;
use crate::region::WeightRegion;
use crate::{IdSet, MARGIN};

/// Width of the final radius bracket.
pub const RADIUS_TOL: f64 = 1e-6;

/// Radius of a ball centered anywhere on the simplex that covers all of it.
pub const MAX_RADIUS: f64 = std::f64::consts::SQRT_2;

/// Upper bound on rival subsets tried by one depth-k ORU membership test.
const SUBSET_BUDGET: usize = 200_000;

#[derive(Debug, Clone, PartialEq)]
pub struct OssResult {
    /// Selected ids in output order.
    pub ids: Vec<String>,
    pub rho_star: f64,
    pub k_depth: usize,
}

impl OssResult {
    pub fn id_set(&self) -> IdSet {
        self.ids.iter().cloned().collect()
    }
}

/// F-dominance over `B(w, rho) ∩ simplex`.
pub fn rho_dominates(r1: &Tuple, r2: &Tuple, w: &[f64], rho: f64) -> Result<bool> {
    check_dims(r1, r2)?;
    let reg = ball(w, r1.dim(), rho)?;
    dominates_unchecked(r1, r2, &reg)
}

fn ball(w: &[f64], d: usize, rho: f64) -> Result<WeightRegion> {
    check_simplex(w, d)?;
    if rho.is_nan() || rho < 0.0 || rho.is_infinite() {
        return Err(Error::InvalidArgument(format!("radius must be >= 0, got {}", rho)));
    }
    WeightRegion::ball(w.to_vec(), rho)
}

fn check_depth(k_depth: usize) -> Result<()> {
    if k_depth == 0 {
        return Err(Error::InvalidArgument("depth must be at least 1".into()));
    }
    Ok(())
}

/// Tuples ρ-dominated by fewer than `k_depth` others.
pub fn non_rho_dominated(ds: &Dataset, w: &[f64], rho: f64, k_depth: usize) -> Result<IdSet> {
    check_depth(k_depth)?;
    let reg = ball(w, ds.dim(), rho)?;
    Ok(rho_survivors(ds, &reg, k_depth)?
        .into_iter()
        .map(|i| ds.tuples()[i].id.clone())
        .collect())
}

fn rho_survivors(ds: &Dataset, reg: &WeightRegion, k_depth: usize) -> Result<Vec<usize>> {
    let tuples = ds.tuples();
    let mut out = Vec::new();
    for (i, t) in tuples.iter().enumerate() {
        let mut count = 0;
        for (j, r) in tuples.iter().enumerate() {
            if j != i && dominates_unchecked(r, t, reg)? {
                count += 1;
                if count >= k_depth {
                    break;
                }
            }
        }
        if count < k_depth {
            out.push(i);
        }
    }
    Ok(out)
}

/// Tuples in the top-`k_depth` result for some vector of `reg`.
///
/// A rival "beats" the target at `v` unless the target scores strictly lower
/// there; rivals with identical attributes are ignored. Depth 1 is strict
/// optimality.
pub(crate) fn oru_members(ds: &Dataset, reg: &WeightRegion, k_depth: usize) -> Result<Vec<usize>> {
    let tuples = ds.tuples();
    let mut out = Vec::new();
    for (i, t) in tuples.iter().enumerate() {
        let rivals: Vec<&Tuple> = tuples
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, r)| r)
            .collect();
        let member = if k_depth == 1 {
            reg.exists_weak_optimum(t, &rivals, true)?.holds
        } else {
            beaten_by_fewer(t, &rivals, reg, k_depth)?
        };
        if member {
            out.push(i);
        }
    }
    Ok(out)
}

fn beaten_by_fewer(t: &Tuple, rivals: &[&Tuple], reg: &WeightRegion, k: usize) -> Result<bool> {
    let mut always = 0usize;
    let mut sometimes: Vec<Vec<f64>> = Vec::new();
    for r in rivals {
        if r.attrs == t.attrs {
            continue;
        }
        let diff: Vec<f64> = t.attrs.iter().zip(&r.attrs).map(|(a, b)| a - b).collect();
        let (lo, hi) = reg.linear_range(&diff)?;
        if hi < -MARGIN {
            continue;
        }
        if lo >= -MARGIN {
            always += 1;
        } else {
            sometimes.push(diff);
        }
    }
    if always >= k {
        return Ok(false);
    }
    let allowed = k - 1 - always;
    if sometimes.len() <= allowed {
        return Ok(true);
    }
    let mut tried = 0usize;
    for excluded in (0..sometimes.len()).combinations(allowed) {
        tried += 1;
        if tried > SUBSET_BUDGET {
            return Err(Error::BudgetExceeded {
                subsets: tried as f64,
                budget: SUBSET_BUDGET as f64,
            });
        }
        let rest: Vec<Vec<f64>> = sometimes
            .iter()
            .enumerate()
            .filter(|(j, _)| !excluded.contains(j))
            .map(|(_, d)| d.clone())
            .collect();
        if reg.optimality_for_differences(&rest, true)?.holds {
            return Ok(true);
        }
    }
    Ok(false)
}

fn check_request(ds: &Dataset, w: &[f64], m: usize, k_depth: usize) -> Result<()> {
    if ds.is_empty() {
        return Err(Error::EmptyDataset);
    }
    check_simplex(w, ds.dim())?;
    check_depth(k_depth)?;
    if m == 0 || m > ds.len() {
        return Err(Error::InvalidArgument(format!(
            "m must be in 1..={}, got {}",
            ds.len(),
            m
        )));
    }
    Ok(())
}

/// Least radius (bracket midpoint) at which `members` reaches `m`, plus the
/// members at the lower and upper bracket ends.
fn search_radius<F>(m: usize, members: F) -> Result<(f64, Vec<usize>, Vec<usize>)>
where
    F: Fn(f64) -> Result<Vec<usize>>,
{
    let at_zero = members(0.0)?;
    if at_zero.len() >= m {
        return Ok((0.0, Vec::new(), at_zero));
    }
    let mut hi_set = members(MAX_RADIUS)?;
    if hi_set.len() < m {
        return Err(Error::Unreachable {
            requested: m,
            achievable: hi_set.len(),
        });
    }
    let (mut lo, mut hi) = (0.0, MAX_RADIUS);
    let mut lo_set = at_zero;
    while hi - lo > RADIUS_TOL {
        let mid = 0.5 * (lo + hi);
        let s = members(mid)?;
        if s.len() >= m {
            hi = mid;
            hi_set = s;
        } else {
            lo = mid;
            lo_set = s;
        }
    }
    Ok((0.5 * (lo + hi), lo_set, hi_set))
}

/// `m` tuples not ρ-dominated (by `k_depth` or more others) for the least
/// such ρ, ordered by score at `w` then id.
///
/// When the count jumps past `m` the lowest scores at `w` are kept.
pub fn ord(ds: &Dataset, w: &[f64], m: usize, k_depth: usize) -> Result<OssResult> {
    check_request(ds, w, m, k_depth)?;
    let (rho_star, _, members) = search_radius(m, |rho| {
        rho_survivors(ds, &WeightRegion::ball(w.to_vec(), rho)?, k_depth)
    })?;
    let tuples = ds.tuples();
    let mut picked: Vec<(f64, &str)> = members
        .iter()
        .map(|&i| (dot(w, &tuples[i].attrs), tuples[i].id.as_str()))
        .collect();
    picked.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(b.1)));
    picked.truncate(m);
    Ok(OssResult {
        ids: picked.into_iter().map(|(_, id)| id.to_string()).collect(),
        rho_star,
        k_depth,
    })
}

/// `m` tuples in the top-`k_depth` result of some vector within the least
/// such radius of `w`, ordered by entry radius, then score at `w`, then id.
///
/// Tuples entering inside the final bracket share the reported radius.
pub fn oru(ds: &Dataset, w: &[f64], m: usize, k_depth: usize) -> Result<OssResult> {
    check_request(ds, w, m, k_depth)?;
    let members_at =
        |rho: f64| -> Result<Vec<usize>> { oru_members(ds, &WeightRegion::ball(w.to_vec(), rho)?, k_depth) };
    let (rho_star, lo_set, hi_set) = search_radius(m, members_at)?;
    let tuples = ds.tuples();
    let at_zero = if lo_set.is_empty() {
        Vec::new()
    } else {
        members_at(0.0)?
    };
    let mut picked: Vec<(f64, f64, &str)> = Vec::with_capacity(hi_set.len());
    for &i in &hi_set {
        let entry = if at_zero.contains(&i) {
            0.0
        } else if lo_set.contains(&i) {
            entry_radius(ds, w, k_depth, i, rho_star)?
        } else {
            rho_star
        };
        picked.push((entry, dot(w, &tuples[i].attrs), tuples[i].id.as_str()));
    }
    picked.sort_by(|a, b| {
        a.0.total_cmp(&b.0)
            .then_with(|| a.1.total_cmp(&b.1))
            .then_with(|| a.2.cmp(b.2))
    });
    picked.truncate(m);
    Ok(OssResult {
        ids: picked.into_iter().map(|(_, _, id)| id.to_string()).collect(),
        rho_star,
        k_depth,
    })
}

/// Bracket midpoint of the least radius at which tuple `i` becomes an ORU
/// member; `i` must be a member at `upper`.
fn entry_radius(ds: &Dataset, w: &[f64], k_depth: usize, i: usize, upper: f64) -> Result<f64> {
    let is_member = |rho: f64| -> Result<bool> {
        let reg = WeightRegion::ball(w.to_vec(), rho)?;
        let t = &ds.tuples()[i];
        let rivals: Vec<&Tuple> = ds
            .tuples()
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, r)| r)
            .collect();
        if k_depth == 1 {
            Ok(reg.exists_weak_optimum(t, &rivals, true)?.holds)
        } else {
            beaten_by_fewer(t, &rivals, &reg, k_depth)
        }
    };
    let (mut lo, mut hi) = (0.0, upper);
    while hi - lo > RADIUS_TOL {
        let mid = 0.5 * (lo + hi);
        if is_member(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
