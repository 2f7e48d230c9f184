//! Euclidean projections onto affine subspaces and polyhedra on the simplex.

use nalgebra::{DMatrix, DVector};

use crate::data::dot;

/// Orthogonal projector onto `{v : M v = h}`, built only for full row rank `M`.
#[derive(Debug, Clone)]
pub(crate) struct AffineProjector {
    m: DMatrix<f64>,
    h: DVector<f64>,
    /// (M Mᵀ)⁻¹
    gram_inv: DMatrix<f64>,
}

impl AffineProjector {
    pub(crate) fn new(rows: &[&[f64]], rhs: &[f64]) -> Option<Self> {
        let k = rows.len();
        let d = rows.first()?.len();
        let m = DMatrix::from_fn(k, d, |i, j| rows[i][j]);
        let gram = &m * m.transpose();
        let lu = gram.clone().full_piv_lu();
        let u = lu.u();
        let diag: Vec<f64> = (0..k).map(|i| u[(i, i)].abs()).collect();
        let max = diag.iter().cloned().fold(0.0, f64::max);
        let min = diag.iter().cloned().fold(f64::INFINITY, f64::min);
        if max == 0.0 || min <= 1e-12 * max {
            return None;
        }
        let gram_inv = lu.try_inverse()?;
        Some(Self {
            m,
            h: DVector::from_column_slice(rhs),
            gram_inv,
        })
    }

    /// Nearest point of the subspace and the multipliers `(M Mᵀ)⁻¹ (M x - h)`.
    pub(crate) fn project(&self, x: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let xv = DVector::from_column_slice(x);
        let mu = &self.gram_inv * (&self.m * &xv - &self.h);
        let p = xv - self.m.transpose() * &mu;
        (p.iter().cloned().collect(), mu.iter().cloned().collect())
    }

    /// Component of `c` parallel to the subspace.
    pub(crate) fn project_direction(&self, c: &[f64]) -> Vec<f64> {
        let cv = DVector::from_column_slice(c);
        let p = &cv - self.m.transpose() * (&self.gram_inv * (&self.m * &cv));
        p.iter().cloned().collect()
    }
}

/// Solves the square system `rows · x = rhs` when it is well conditioned.
pub(crate) fn solve_square(rows: &[&[f64]], rhs: &[f64]) -> Option<Vec<f64>> {
    let n = rows.len();
    let a = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
    let lu = a.full_piv_lu();
    let u = lu.u();
    let diag: Vec<f64> = (0..n).map(|i| u[(i, i)].abs()).collect();
    let max = diag.iter().cloned().fold(0.0, f64::max);
    let min = diag.iter().cloned().fold(f64::INFINITY, f64::min);
    if max == 0.0 || min <= 1e-10 * max {
        return None;
    }
    let x = lu.solve(&DVector::from_column_slice(rhs))?;
    Some(x.iter().cloned().collect())
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

pub(crate) fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Projects `w` onto `{v : Σv = 1, g_j·v <= h_j}` by a primal active-set method.
///
/// `start` must be feasible. Rows are expected to include `v >= 0` if wanted.
pub(crate) fn project_onto_polyhedron(
    w: &[f64],
    normals: &[Vec<f64>],
    rhs: &[f64],
    start: &[f64],
) -> Vec<f64> {
    let d = w.len();
    let ones = vec![1.0; d];
    let mut x = start.to_vec();
    let mut working: Vec<usize> = Vec::new();
    let max_iter = 50 * (normals.len() + d + 1);
    for _ in 0..max_iter {
        let mut rows: Vec<&[f64]> = vec![&ones];
        let mut h = vec![1.0];
        for &j in &working {
            rows.push(&normals[j]);
            h.push(rhs[j]);
        }
        let Some(proj) = AffineProjector::new(&rows, &h) else {
            // dependent working set; drop the newest constraint
            working.pop();
            continue;
        };
        let (p, mu) = proj.project(w);
        let step: Vec<f64> = p.iter().zip(&x).map(|(a, b)| a - b).collect();
        if norm(&step) <= 1e-14 {
            // multipliers of the inequality rows follow the equality row
            let worst = mu[1..]
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.total_cmp(b.1))
                .map(|(i, &l)| (i, l));
            match worst {
                Some((i, l)) if l < -1e-12 => {
                    working.remove(i);
                }
                _ => return x,
            }
            continue;
        }
        let mut alpha = 1.0;
        let mut blocking = None;
        for (j, g) in normals.iter().enumerate() {
            if working.contains(&j) {
                continue;
            }
            let gs = dot(g, &step);
            if gs > 1e-14 {
                let a = ((rhs[j] - dot(g, &x)) / gs).max(0.0);
                if a < alpha {
                    alpha = a;
                    blocking = Some(j);
                }
            }
        }
        for (xi, si) in x.iter_mut().zip(&step) {
            *xi += alpha * si;
        }
        if let Some(j) = blocking {
            working.push(j);
        }
    }
    x
}
