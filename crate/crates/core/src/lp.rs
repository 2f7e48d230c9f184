//! Dense two-phase simplex for the small LPs behind region optimality tests.
//!
//! Problems have a handful of variables and at most a few hundred rows, so a
//! full tableau is fine.

const PIVOT_TOL: f64 = 1e-11;
const COST_TOL: f64 = 1e-11;
const MAX_ITERS: usize = 20_000;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum LpStatus {
    Optimal { x: Vec<f64>, value: f64 },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<f64>>,
    basis: Vec<usize>,
    rhs: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c];
        for x in self.rows[r].iter_mut() {
            *x /= p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f != 0.0 {
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= f * y;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost·x` over the columns `< allowed`. Returns false if unbounded.
    fn optimize(&mut self, cost: &[f64], allowed: usize) -> bool {
        let mut degenerate_run = 0usize;
        for _ in 0..MAX_ITERS {
            let bland = degenerate_run > 50;
            let mut entering = None;
            let mut best = COST_TOL;
            for j in 0..allowed {
                let mut r = cost[j];
                for (row, &b) in self.rows.iter().zip(&self.basis) {
                    r -= cost[b] * row[j];
                }
                if r > best {
                    entering = Some(j);
                    if bland {
                        break;
                    }
                    best = r;
                }
            }
            let Some(c) = entering else {
                return true;
            };
            let mut leave: Option<(usize, f64)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                let a = row[c];
                if a > PIVOT_TOL {
                    let ratio = row[self.rhs].max(0.0) / a;
                    match leave {
                        None => leave = Some((i, ratio)),
                        Some((li, lr)) => {
                            if ratio < lr - 1e-13
                                || (ratio <= lr + 1e-13 && self.basis[i] < self.basis[li])
                            {
                                leave = Some((i, ratio));
                            }
                        }
                    }
                }
            }
            let Some((r, ratio)) = leave else {
                return false;
            };
            if ratio <= 1e-13 {
                degenerate_run += 1;
            } else {
                degenerate_run = 0;
            }
            self.pivot(r, c);
        }
        true
    }
}

/// Maximizes `c·x` subject to `a x <= b`, `x >= 0`.
pub(crate) fn maximize(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> LpStatus {
    let n = c.len();
    let m = a.len();
    let flipped: Vec<bool> = b.iter().map(|&bi| bi < 0.0).collect();
    let n_art = flipped.iter().filter(|f| **f).count();
    let cols = n + m + n_art;
    let rhs = cols;

    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut art = n + m;
    for i in 0..m {
        let mut row = vec![0.0; cols + 1];
        let sign = if flipped[i] { -1.0 } else { 1.0 };
        for j in 0..n {
            row[j] = sign * a[i][j];
        }
        row[n + i] = sign;
        row[rhs] = sign * b[i];
        if flipped[i] {
            row[art] = 1.0;
            basis.push(art);
            art += 1;
        } else {
            basis.push(n + i);
        }
        rows.push(row);
    }
    let mut t = Tableau { rows, basis, rhs };

    if n_art > 0 {
        let mut cost = vec![0.0; cols];
        for x in cost.iter_mut().skip(n + m) {
            *x = -1.0;
        }
        t.optimize(&cost, cols);
        let infeas: f64 = t
            .rows
            .iter()
            .zip(&t.basis)
            .filter(|(_, &bv)| bv >= n + m)
            .map(|(row, _)| row[rhs])
            .sum();
        if infeas > 1e-9 {
            return LpStatus::Infeasible;
        }
        // drive remaining (zero-level) artificials out of the basis
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= n + m {
                let col = (0..n + m)
                    .filter(|&j| t.rows[i][j].abs() > 1e-9)
                    .max_by(|&x, &y| t.rows[i][x].abs().total_cmp(&t.rows[i][y].abs()));
                match col {
                    Some(j) => {
                        t.pivot(i, j);
                        i += 1;
                    }
                    None => {
                        t.rows.remove(i);
                        t.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
    }

    let mut cost = vec![0.0; cols];
    cost[..n].copy_from_slice(c);
    if !t.optimize(&cost, n + m) {
        return LpStatus::Unbounded;
    }
    let mut x = vec![0.0; n];
    for (row, &bv) in t.rows.iter().zip(&t.basis) {
        if bv < n {
            x[bv] = row[rhs].max(0.0);
        }
    }
    let value = x.iter().zip(c).map(|(a, b)| a * b).sum();
    LpStatus::Optimal { x, value }
}
