//! Brute-force oracles and random instance builders shared by the
//! integration suites. Nothing here calls the optimized code paths.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use skyrank::{Dataset, IdSet, LinearConstraint, Tuple, WeightRegion};

/// Lattice resolution of the grid oracle.
pub const GRID: usize = 400;

/// Required distance of every oracle decision from its threshold.
pub const DECISION_MARGIN: f64 = 1e-3;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn diff(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Uniform tuples in `[0,1]^d` with ids `t000, t001, ...`.
pub fn uniform_dataset(rng: &mut impl Rng, n: usize, d: usize) -> Dataset {
    Dataset::from_rows((0..n).map(|i| {
        (
            format!("t{:03}", i),
            (0..d).map(|_| rng.random::<f64>()).collect::<Vec<_>>(),
        )
    }))
    .unwrap()
}

pub fn ids<'a>(xs: impl IntoIterator<Item = &'a str>) -> IdSet {
    xs.into_iter().map(str::to_string).collect()
}

pub fn pareto(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y) && a.iter().zip(b).any(|(x, y)| x < y)
}

pub fn brute_skyline(ds: &Dataset) -> IdSet {
    brute_skyband(ds, 1)
}

pub fn brute_skyband(ds: &Dataset, k: usize) -> IdSet {
    let t = ds.tuples();
    t.iter()
        .filter(|x| t.iter().filter(|y| pareto(&y.attrs, &x.attrs)).count() < k)
        .map(|x| x.id.clone())
        .collect()
}

/// Full sort by exact score, then id.
pub fn sorted_top_k(ds: &Dataset, w: &[f64], k: usize) -> Vec<String> {
    let mut all: Vec<(f64, &str)> = ds
        .tuples()
        .iter()
        .map(|t| (dot(w, &t.attrs), t.id.as_str()))
        .collect();
    all.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(b.1)));
    all.into_iter().take(k).map(|(_, id)| id.to_string()).collect()
}

/// Random point of the simplex with every coordinate at least `floor`.
pub fn interior_point(rng: &mut impl Rng, d: usize, floor: f64) -> Vec<f64> {
    let raw: Vec<f64> = (0..d).map(|_| rng.random::<f64>() + 1e-3).collect();
    let s: f64 = raw.iter().sum();
    raw.iter()
        .map(|x| floor + (1.0 - floor * d as f64) * x / s)
        .collect()
}

/// Simplex cut by 1 to 3 random halfspaces that all keep a strictly positive
/// point in their interior.
pub fn positive_polytope(rng: &mut impl Rng, d: usize) -> WeightRegion {
    positive_polytope_with_point(rng, d).0
}

/// Weight vectors of the region on the `GRID` lattice.
pub fn grid(reg: &WeightRegion) -> Vec<Vec<f64>> {
    reg.grid_sample(GRID).unwrap()
}

/// `(min, max)` of `c·v` over sampled weights.
pub fn sampled_range(c: &[f64], points: &[Vec<f64>]) -> (f64, f64) {
    points.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        let x = dot(c, v);
        (lo.min(x), hi.max(x))
    })
}

pub fn grid_f_dominates(r1: &Tuple, r2: &Tuple, points: &[Vec<f64>]) -> bool {
    let (lo, hi) = sampled_range(&diff(&r1.attrs, &r2.attrs), points);
    hi <= 0.0 && lo < 0.0
}

pub fn grid_nd(ds: &Dataset, points: &[Vec<f64>]) -> IdSet {
    let t = ds.tuples();
    t.iter()
        .enumerate()
        .filter(|(i, x)| {
            !t.iter()
                .enumerate()
                .any(|(j, y)| j != *i && grid_f_dominates(y, x, points))
        })
        .map(|(_, x)| x.id.clone())
        .collect()
}

/// Tuples ρ-dominated by fewer than `k` others on the sampled weights.
pub fn grid_nd_depth(ds: &Dataset, points: &[Vec<f64>], k: usize) -> IdSet {
    let t = ds.tuples();
    t.iter()
        .enumerate()
        .filter(|(i, x)| {
            t.iter()
                .enumerate()
                .filter(|(j, y)| *j != *i && grid_f_dominates(y, x, points))
                .count()
                < k
        })
        .map(|(_, x)| x.id.clone())
        .collect()
}

/// Best sampled margin `max_v min_r (r - t)·v` by which `t` beats every rival
/// with different attributes.
pub fn grid_optimality_margin(ds: &Dataset, i: usize, points: &[Vec<f64>]) -> f64 {
    let t = &ds.tuples()[i];
    points
        .iter()
        .map(|v| {
            ds.tuples()
                .iter()
                .filter(|r| r.attrs != t.attrs)
                .map(|r| dot(&diff(&r.attrs, &t.attrs), v))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

pub fn grid_po(ds: &Dataset, points: &[Vec<f64>]) -> IdSet {
    (0..ds.len())
        .filter(|&i| grid_optimality_margin(ds, i, points) > 0.0)
        .map(|i| ds.tuples()[i].id.clone())
        .collect()
}

/// Largest `|d/dv1|` of a score difference along the two-dimensional simplex.
pub fn max_slope_2d(ds: &Dataset) -> f64 {
    let t = ds.tuples();
    let mut s: f64 = 0.0;
    for a in t {
        for b in t {
            s = s.max(((a.attrs[0] - b.attrs[0]) - (a.attrs[1] - b.attrs[1])).abs());
        }
    }
    s
}

/// True when every F-dominance decision on the sampled interval is at least
/// `DECISION_MARGIN` from flipping. The sampled extremes of a linear function
/// on an interval with lattice endpoints are exact.
pub fn dominance_margins_ok(ds: &Dataset, points: &[Vec<f64>]) -> bool {
    let t = ds.tuples();
    t.iter().all(|a| {
        t.iter().all(|b| {
            if a.attrs == b.attrs {
                return true;
            }
            let (lo, hi) = sampled_range(&diff(&a.attrs, &b.attrs), points);
            lo.abs() > DECISION_MARGIN && hi.abs() > DECISION_MARGIN
        })
    })
}

/// True when every sampled optimality margin is either clearly positive or
/// so negative that the lattice gap cannot hide a positive one.
pub fn optimality_margins_ok(ds: &Dataset, points: &[Vec<f64>]) -> bool {
    let slack = (max_slope_2d(ds) / GRID as f64 / 2.0).max(DECISION_MARGIN);
    (0..ds.len()).all(|i| {
        let g = grid_optimality_margin(ds, i, points);
        g > DECISION_MARGIN || g < -slack
    })
}

pub fn grid_top_k_union(ds: &Dataset, points: &[Vec<f64>], k: usize) -> IdSet {
    points
        .iter()
        .flat_map(|v| sorted_top_k(ds, v, k))
        .collect()
}

pub fn brute_epsilon_skyline(ds: &Dataset, w: &[f64], eps: f64) -> IdSet {
    let dominated = |r1: &Tuple, r2: &Tuple| {
        (0..w.len()).all(|i| w[i] * r1.attrs[i] <= w[i] * r2.attrs[i] + eps)
            && (0..w.len()).any(|i| r1.attrs[i] < r2.attrs[i])
    };
    let t = ds.tuples();
    t.iter()
        .enumerate()
        .filter(|(i, x)| !t.iter().enumerate().any(|(j, y)| j != *i && dominated(y, x)))
        .map(|(_, x)| x.id.clone())
        .collect()
}

/// Two-dimensional region `v1 ∈ [i/GRID, j/GRID]`.
pub fn lattice_interval(rng: &mut impl Rng) -> WeightRegion {
    let i = rng.random_range(0..GRID);
    let j = rng.random_range(i + 1..=GRID);
    WeightRegion::interval(i as f64 / GRID as f64, j as f64 / GRID as f64).unwrap()
}

/// Two-dimensional ball whose simplex section has lattice endpoints:
/// center `v1 = i/GRID`, radius `√2·j/GRID`.
pub fn lattice_ball(rng: &mut impl Rng) -> (Vec<f64>, f64) {
    let i = rng.random_range(1..GRID);
    let j = rng.random_range(0..=GRID / 2);
    let c = i as f64 / GRID as f64;
    (vec![c, 1.0 - c], std::f64::consts::SQRT_2 * j as f64 / GRID as f64)
}

/// Coverage of a skyline subset, by definition.
pub fn brute_coverage(ds: &Dataset, chosen: &[String]) -> usize {
    let sky = brute_skyline(ds);
    let picked: Vec<&Tuple> = chosen.iter().map(|id| ds.get(id).unwrap()).collect();
    ds.tuples()
        .iter()
        .filter(|t| !sky.contains(&t.id))
        .filter(|t| picked.iter().any(|p| pareto(&p.attrs, &t.attrs)))
        .count()
}

/// Max distance from an unpicked skyline tuple to its nearest pick.
pub fn brute_distance(ds: &Dataset, chosen: &[String]) -> f64 {
    let sky = brute_skyline(ds);
    let dist = |a: &[f64], b: &[f64]| diff(a, b).iter().map(|x| x * x).sum::<f64>().sqrt();
    sky.iter()
        .filter(|s| !chosen.contains(s))
        .map(|s| {
            chosen
                .iter()
                .map(|c| dist(&ds.get(s).unwrap().attrs, &ds.get(c).unwrap().attrs))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

/// Like [`positive_polytope`] but also returns the strictly positive point
/// the constraints were built around.
pub fn positive_polytope_with_point(rng: &mut impl Rng, d: usize) -> (WeightRegion, Vec<f64>) {
    let u = interior_point(rng, d, 0.05);
    let count = rng.random_range(1..=3);
    let constraints = (0..count)
        .map(|_| {
            let c: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
            let slack = rng.random_range(0.01..0.3);
            LinearConstraint::le(c.clone(), dot(&c, &u) + slack)
        })
        .collect();
    (WeightRegion::new(d, constraints, None).unwrap(), u)
}
