//! Convex regions of the preference simplex and optimization over them.
//!
//! A [`WeightRegion`] is the simplex `{v >= 0, Σv = 1}` cut by linear
//! constraints and optionally intersected with a closed Euclidean ball. It
//! stands for the family of linear scoring functions `v·r`, `v` in the region.
//!
//! Optimization always works on the closure: strict constraints are relaxed
//! to `<=` and strictness is checked on witnesses afterwards.

use std::fmt;
use std::sync::OnceLock;

use itertools::Itertools;

use crate::affine::{distance, norm, project_onto_polyhedron, solve_square, AffineProjector};
use crate::classic::check_simplex;
use crate::data::{dot, Tuple};
use crate::error::{Error, Result};
use crate::lp::{maximize, LpStatus};
use crate::{MARGIN, SCORE_TOL};

/// Largest dimension for exact vertex enumeration.
pub const MAX_VERTEX_DIM: usize = 7;
/// Largest dimension for lattice sampling.
pub const MAX_GRID_DIM: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Lt,
}

/// `coeffs·v  <=|<  rhs`
#[derive(Debug, Clone, PartialEq)]
pub struct LinearConstraint {
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

impl LinearConstraint {
    pub fn le(coeffs: Vec<f64>, rhs: f64) -> Self {
        Self {
            coeffs,
            relation: Relation::Le,
            rhs,
        }
    }

    pub fn lt(coeffs: Vec<f64>, rhs: f64) -> Self {
        Self {
            coeffs,
            relation: Relation::Lt,
            rhs,
        }
    }

    pub fn ge(coeffs: Vec<f64>, rhs: f64) -> Self {
        Self::le(coeffs.into_iter().map(|c| -c).collect(), -rhs)
    }

    pub fn gt(coeffs: Vec<f64>, rhs: f64) -> Self {
        Self::lt(coeffs.into_iter().map(|c| -c).collect(), -rhs)
    }

    pub fn is_strict(&self) -> bool {
        self.relation == Relation::Lt
    }

    fn lhs(&self, v: &[f64]) -> f64 {
        dot(&self.coeffs, v)
    }
}

impl fmt::Display for LinearConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            let mag = c.abs();
            let sign = if c < 0.0 { "-" } else { "+" };
            if first {
                if c < 0.0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            if mag != 1.0 {
                write!(f, "{} ", mag)?;
            }
            write!(f, "w{}", i + 1)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        let rel = match self.relation {
            Relation::Le => "<=",
            Relation::Lt => "<",
        };
        write!(f, " {} {}", rel, self.rhs)
    }
}

/// Closed Euclidean ball around a point of the simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    pub center: Vec<f64>,
    pub radius: f64,
}

/// Outcome of an optimality test: whether it holds and a weight vector
/// demonstrating it.
#[derive(Debug, Clone, PartialEq)]
pub struct Optimality {
    pub holds: bool,
    pub witness: Option<Vec<f64>>,
}

/// `normal·v <= rhs`, the working form of every constraint.
#[derive(Debug, Clone)]
struct Halfspace {
    normal: Vec<f64>,
    rhs: f64,
}

/// Face of the closed region that meets the ball: its affine hull, the ball
/// cross-section center and radius.
#[derive(Debug, Clone)]
struct BallFace {
    projector: AffineProjector,
    center: Vec<f64>,
    radius: f64,
}

#[derive(Debug, Clone)]
enum Geometry {
    Vertices(Vec<Vec<f64>>),
    BallFaces(Vec<BallFace>),
}

#[derive(Debug, Clone)]
pub struct WeightRegion {
    dim: usize,
    constraints: Vec<LinearConstraint>,
    ball: Option<Ball>,
    geometry: OnceLock<Geometry>,
}

impl WeightRegion {
    /// The whole simplex in `dim` dimensions.
    pub fn simplex(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be positive");
        Self {
            dim,
            constraints: Vec::new(),
            ball: None,
            geometry: OnceLock::new(),
        }
    }

    pub fn new(dim: usize, constraints: Vec<LinearConstraint>, ball: Option<Ball>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("region dimension must be positive".into()));
        }
        for c in &constraints {
            if c.coeffs.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: c.coeffs.len(),
                });
            }
            if !c.rhs.is_finite() || c.coeffs.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidArgument(format!("non-finite constraint {}", c)));
            }
        }
        if let Some(b) = &ball {
            check_simplex(&b.center, dim)?;
            if b.radius.is_nan() || b.radius < 0.0 || b.radius.is_infinite() {
                return Err(Error::InvalidArgument(format!("invalid radius {}", b.radius)));
            }
        }
        Ok(Self {
            dim,
            constraints,
            ball,
            geometry: OnceLock::new(),
        })
    }

    /// `B(center, radius) ∩ simplex`.
    pub fn ball(center: Vec<f64>, radius: f64) -> Result<Self> {
        let dim = center.len();
        Self::new(dim, Vec::new(), Some(Ball { center, radius }))
    }

    /// Two-dimensional region `lo <= v1 <= hi`.
    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        Self::new(
            2,
            vec![
                LinearConstraint::ge(vec![1.0, 0.0], lo),
                LinearConstraint::le(vec![1.0, 0.0], hi),
            ],
            None,
        )
    }

    pub fn with_constraint(&self, c: LinearConstraint) -> Result<Self> {
        let mut constraints = self.constraints.clone();
        constraints.push(c);
        Self::new(self.dim, constraints, self.ball.clone())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[LinearConstraint] {
        &self.constraints
    }

    pub fn ball_part(&self) -> Option<&Ball> {
        self.ball.as_ref()
    }

    pub fn is_polytope(&self) -> bool {
        self.ball.is_none()
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if n != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: n,
            });
        }
        Ok(())
    }

    /// Membership with tolerance `1e-9` on the simplex, non-strict constraints
    /// and the ball; strict constraints reject any `c·v >= b`.
    pub fn contains(&self, v: &[f64]) -> Result<bool> {
        self.check_dim(v.len())?;
        let on_simplex = v.iter().all(|x| *x >= -SCORE_TOL)
            && (v.iter().sum::<f64>() - 1.0).abs() <= SCORE_TOL;
        if !on_simplex {
            return Ok(false);
        }
        for c in &self.constraints {
            let lhs = c.lhs(v);
            let ok = match c.relation {
                Relation::Le => lhs <= c.rhs + SCORE_TOL,
                Relation::Lt => lhs < c.rhs,
            };
            if !ok {
                return Ok(false);
            }
        }
        if let Some(b) = &self.ball {
            if distance(v, &b.center) > b.radius + SCORE_TOL {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn contains_closure(&self, v: &[f64]) -> bool {
        v.iter().all(|x| *x >= -SCORE_TOL)
            && (v.iter().sum::<f64>() - 1.0).abs() <= SCORE_TOL
            && self
                .constraints
                .iter()
                .all(|c| c.lhs(v) <= c.rhs + SCORE_TOL)
            && self
                .ball
                .as_ref()
                .is_none_or(|b| distance(v, &b.center) <= b.radius + SCORE_TOL)
    }

    /// User constraints followed by `v_i >= 0`.
    fn halfspaces(&self) -> Vec<Halfspace> {
        let mut hs: Vec<Halfspace> = self
            .constraints
            .iter()
            .map(|c| Halfspace {
                normal: c.coeffs.clone(),
                rhs: c.rhs,
            })
            .collect();
        for i in 0..self.dim {
            let mut normal = vec![0.0; self.dim];
            normal[i] = -1.0;
            hs.push(Halfspace {
                normal,
                rhs: 0.0,
            });
        }
        hs
    }

    fn geometry(&self) -> &Geometry {
        self.geometry.get_or_init(|| match &self.ball {
            None => Geometry::Vertices(self.compute_vertices()),
            Some(ball) => Geometry::BallFaces(self.compute_ball_faces(ball)),
        })
    }

    fn compute_vertices(&self) -> Vec<Vec<f64>> {
        let d = self.dim;
        let hs = self.halfspaces();
        let ones = vec![1.0; d];
        let mut out: Vec<Vec<f64>> = Vec::new();
        for subset in (0..hs.len()).combinations(d - 1) {
            let mut rows: Vec<&[f64]> = vec![&ones];
            let mut rhs = vec![1.0];
            for &j in &subset {
                rows.push(&hs[j].normal);
                rhs.push(hs[j].rhs);
            }
            let Some(v) = solve_square(&rows, &rhs) else {
                continue;
            };
            if !self.contains_closure(&v) {
                continue;
            }
            let dup = out
                .iter()
                .any(|u| u.iter().zip(&v).all(|(a, b)| (a - b).abs() <= SCORE_TOL));
            if !dup {
                out.push(v);
            }
        }
        out
    }

    fn compute_ball_faces(&self, ball: &Ball) -> Vec<BallFace> {
        let d = self.dim;
        let hs = self.halfspaces();
        let ones = vec![1.0; d];
        let r2 = ball.radius * ball.radius;
        let mut faces = Vec::new();
        for size in 0..d {
            for subset in (0..hs.len()).combinations(size) {
                let mut rows: Vec<&[f64]> = vec![&ones];
                let mut rhs = vec![1.0];
                for &j in &subset {
                    rows.push(&hs[j].normal);
                    rhs.push(hs[j].rhs);
                }
                let Some(projector) = AffineProjector::new(&rows, &rhs) else {
                    continue;
                };
                let (center, _) = projector.project(&ball.center);
                let dist = distance(&center, &ball.center);
                let gap = r2 - dist * dist;
                if gap < -SCORE_TOL * (1.0 + r2) {
                    continue;
                }
                faces.push(BallFace {
                    projector,
                    center,
                    radius: gap.max(0.0).sqrt(),
                });
            }
        }
        faces
    }

    /// Vertices of the closed polytope, deduplicated within `1e-9`.
    pub fn enumerate_vertices(&self) -> Result<Vec<Vec<f64>>> {
        if self.ball.is_some() {
            return Err(Error::Unsupported("vertex enumeration of a ball region".into()));
        }
        if self.dim > MAX_VERTEX_DIM {
            return Err(Error::Unsupported(format!(
                "vertex enumeration in dimension {} (max {})",
                self.dim, MAX_VERTEX_DIM
            )));
        }
        match self.geometry() {
            Geometry::Vertices(v) if !v.is_empty() => Ok(v.clone()),
            _ => Err(Error::EmptyRegion),
        }
    }

    pub fn is_empty(&self) -> bool {
        if self.dim > MAX_VERTEX_DIM {
            return self.margin_lp(&[], false).is_none();
        }
        match self.geometry() {
            Geometry::Vertices(v) => v.is_empty(),
            Geometry::BallFaces(_) => self.ball_candidates(&vec![0.0; self.dim]).is_empty(),
        }
    }

    /// Minimum of `c·v` over the closed region.
    ///
    /// Polytopes: minimum over the vertices. With a ball: every extreme point
    /// of the region is a polytope vertex inside the ball or a sphere point
    /// that minimizes `c` on the ball cross-section of some face; all such
    /// candidates are generated and the best feasible one is returned.
    pub fn minimize_linear(&self, c: &[f64]) -> Result<(f64, Vec<f64>)> {
        self.check_dim(c.len())?;
        if self.ball.is_none() && self.dim > MAX_VERTEX_DIM {
            return Err(Error::Unsupported(format!(
                "linear optimization in dimension {}",
                self.dim
            )));
        }
        let candidates = match self.geometry() {
            Geometry::Vertices(v) => v.clone(),
            Geometry::BallFaces(_) => self.ball_candidates(c),
        };
        candidates
            .into_iter()
            .map(|v| (dot(c, &v), v))
            .min_by(|a, b| a.0.total_cmp(&b.0))
            .ok_or(Error::EmptyRegion)
    }

    pub fn maximize_linear(&self, c: &[f64]) -> Result<(f64, Vec<f64>)> {
        let neg: Vec<f64> = c.iter().map(|x| -x).collect();
        let (val, v) = self.minimize_linear(&neg)?;
        Ok((-val, v))
    }

    /// `(min, max)` of `c·v` over the closed region.
    pub(crate) fn linear_range(&self, c: &[f64]) -> Result<(f64, f64)> {
        if let Geometry::Vertices(vs) = self.geometry() {
            self.check_dim(c.len())?;
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for v in vs {
                let x = dot(c, v);
                lo = lo.min(x);
                hi = hi.max(x);
            }
            if vs.is_empty() {
                return Err(Error::EmptyRegion);
            }
            return Ok((lo, hi));
        }
        let (lo, _) = self.minimize_linear(c)?;
        let (hi, _) = self.maximize_linear(c)?;
        Ok((lo, hi))
    }

    fn ball_candidates(&self, c: &[f64]) -> Vec<Vec<f64>> {
        let Geometry::BallFaces(faces) = self.geometry() else {
            return Vec::new();
        };
        let scale = c.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1.0);
        // fixed generic tilt: resolves faces on which c is constant
        let tilted: Vec<f64> = c
            .iter()
            .enumerate()
            .map(|(i, x)| x + 1e-10 * scale * ((i as f64 + 1.0) * 0.618_033_988_749_895).fract())
            .collect();
        let mut out = Vec::new();
        for face in faces {
            if self.contains_closure(&face.center) {
                out.push(face.center.clone());
            }
            if face.radius == 0.0 {
                continue;
            }
            for dir in [c, tilted.as_slice()] {
                let u = face.projector.project_direction(dir);
                let len = norm(&u);
                if len <= 1e-14 * norm(dir).max(1e-300) {
                    continue;
                }
                let v: Vec<f64> = face
                    .center
                    .iter()
                    .zip(&u)
                    .map(|(p, ui)| p - face.radius * ui / len)
                    .collect();
                if self.contains_closure(&v) {
                    out.push(v);
                }
            }
        }
        out
    }

    /// Solves `max δ` s.t. `a·v + δ <= 0` for every row of `margins` and
    /// (when `strict_region`) `c·v + δ <= b` for strict region constraints,
    /// over the closed polytope part of the region. Rows are scaled to unit
    /// max-norm first. Returns `(δ, v)` or `None` if the polytope is empty.
    fn margin_lp(&self, margins: &[Vec<f64>], strict_region: bool) -> Option<(f64, Vec<f64>)> {
        let d = self.dim;
        let mut delta_rows: Vec<(Vec<f64>, f64)> = margins
            .iter()
            .map(|a| {
                let s = a.iter().fold(0.0f64, |m, x| m.max(x.abs()));
                let s = if s > 0.0 { s } else { 1.0 };
                (a.iter().map(|x| x / s).collect(), 0.0)
            })
            .collect();
        let mut plain_rows: Vec<(Vec<f64>, f64)> = Vec::new();
        for c in &self.constraints {
            let s = c
                .coeffs
                .iter()
                .fold(c.rhs.abs(), |m, x| m.max(x.abs()));
            let s = if s > 0.0 { s } else { 1.0 };
            let row = (c.coeffs.iter().map(|x| x / s).collect(), c.rhs / s);
            if strict_region && c.is_strict() {
                delta_rows.push(row);
            } else {
                plain_rows.push(row);
            }
        }
        let big = 1.0
            + delta_rows
                .iter()
                .map(|(a, b)| a.iter().fold(b.abs(), |m, x| m.max(x.abs())))
                .fold(0.0, f64::max);
        // variables: v (d), δ' = δ + big
        let mut a = Vec::new();
        let mut b = Vec::new();
        let mut row = vec![1.0; d];
        row.push(0.0);
        a.push(row.clone());
        b.push(1.0);
        a.push(row.iter().map(|x| -x).collect());
        b.push(-1.0);
        for (coeffs, rhs) in &plain_rows {
            let mut r = coeffs.clone();
            r.push(0.0);
            a.push(r);
            b.push(*rhs);
        }
        for (coeffs, rhs) in &delta_rows {
            let mut r = coeffs.clone();
            r.push(1.0);
            a.push(r);
            b.push(rhs + big);
        }
        let mut cap = vec![0.0; d];
        cap.push(1.0);
        a.push(cap);
        b.push(big + 1.0);
        let mut obj = vec![0.0; d];
        obj.push(1.0);
        match maximize(&obj, &a, &b) {
            LpStatus::Optimal { x, value } => {
                let mut v = x[..d].to_vec();
                let sum: f64 = v.iter().sum();
                if sum > 0.0 {
                    v.iter_mut().for_each(|vi| *vi /= sum);
                }
                Some((value - big, v))
            }
            _ => None,
        }
    }

    /// Decides whether some `v` in the region makes `target` optimal among
    /// `rivals`: `v·target <= v·t` for all rivals (weak), or `v·target < v·t`
    /// for every rival whose attributes differ from `target` (strict).
    ///
    /// Rivals are first reduced to their Pareto-minimal set. Over a polytope
    /// the max-margin LP decides directly. With a ball, the weak test projects
    /// the ball center onto the polytope where `target` is optimal; the strict
    /// test moves that projection toward the max-margin point while staying in
    /// the ball and checks the margin there.
    pub fn exists_weak_optimum(
        &self,
        target: &Tuple,
        rivals: &[&Tuple],
        strict: bool,
    ) -> Result<Optimality> {
        self.check_dim(target.dim())?;
        for r in rivals {
            self.check_dim(r.dim())?;
        }
        let diffs = reduced_differences(target, rivals);
        self.optimality_for_differences(&diffs, strict)
    }

    /// Same as [`Self::exists_weak_optimum`] with rivals already given as
    /// difference vectors `target - rival` (none of them zero).
    pub(crate) fn optimality_for_differences(
        &self,
        diffs: &[Vec<f64>],
        strict: bool,
    ) -> Result<Optimality> {
        let Some((_, vstar)) = self.margin_lp(diffs, strict) else {
            return Err(Error::EmptyRegion);
        };
        let no = Optimality {
            holds: false,
            witness: None,
        };
        let margin_at = |v: &[f64]| -> f64 {
            let mut m = diffs
                .iter()
                .map(|a| -dot(a, v))
                .fold(f64::INFINITY, f64::min);
            if strict {
                for c in self.constraints.iter().filter(|c| c.is_strict()) {
                    m = m.min(c.rhs - c.lhs(v));
                }
            }
            m
        };
        let star_margin = margin_at(&vstar);
        let Some(ball) = &self.ball else {
            let holds = if strict {
                star_margin > MARGIN
            } else {
                star_margin >= -MARGIN
            };
            return Ok(if holds {
                Optimality {
                    holds,
                    witness: Some(vstar),
                }
            } else {
                no
            });
        };

        if self.is_empty() {
            return Err(Error::EmptyRegion);
        }
        if star_margin < -MARGIN || (strict && star_margin <= MARGIN) {
            return Ok(no);
        }
        // polytope where target is (weakly) optimal, including v >= 0
        let mut normals: Vec<Vec<f64>> = Vec::new();
        let mut rhs: Vec<f64> = Vec::new();
        for h in self.halfspaces() {
            let s = norm(&h.normal);
            normals.push(h.normal.iter().map(|x| x / s).collect());
            rhs.push(h.rhs / s);
        }
        for a in diffs {
            let s = norm(a);
            normals.push(a.iter().map(|x| x / s).collect());
            rhs.push(0.0);
        }
        let p = project_onto_polyhedron(&ball.center, &normals, &rhs, &vstar);
        let dist = distance(&p, &ball.center);
        if !strict {
            return Ok(if dist <= ball.radius + MARGIN {
                Optimality {
                    holds: true,
                    witness: Some(p),
                }
            } else {
                no
            });
        }
        if dist > ball.radius {
            return Ok(no);
        }
        let e: Vec<f64> = p.iter().zip(&ball.center).map(|(a, b)| a - b).collect();
        let f: Vec<f64> = vstar.iter().zip(&p).map(|(a, b)| a - b).collect();
        let ff = dot(&f, &f);
        let s = if distance(&vstar, &ball.center) <= ball.radius || ff == 0.0 {
            1.0
        } else {
            let ef = dot(&e, &f);
            let ee = dot(&e, &e);
            let disc = (ef * ef - ff * (ee - ball.radius * ball.radius)).max(0.0);
            ((-ef + disc.sqrt()) / ff).clamp(0.0, 1.0)
        };
        let witness: Vec<f64> = p.iter().zip(&f).map(|(pi, fi)| pi + s * fi).collect();
        Ok(if margin_at(&witness) > MARGIN {
            Optimality {
                holds: true,
                witness: Some(witness),
            }
        } else {
            no
        })
    }

    /// Simplex lattice points `i/resolution` that lie in the region.
    pub fn grid_sample(&self, resolution: usize) -> Result<Vec<Vec<f64>>> {
        if resolution == 0 {
            return Err(Error::InvalidArgument("resolution must be at least 1".into()));
        }
        if self.dim > MAX_GRID_DIM {
            return Err(Error::Unsupported(format!(
                "grid sampling in dimension {} (max {})",
                self.dim, MAX_GRID_DIM
            )));
        }
        let mut out = Vec::new();
        let mut idx = vec![0usize; self.dim];
        self.fill_grid(0, resolution, resolution, &mut idx, &mut out)?;
        Ok(out)
    }

    fn fill_grid(
        &self,
        pos: usize,
        left: usize,
        resolution: usize,
        idx: &mut Vec<usize>,
        out: &mut Vec<Vec<f64>>,
    ) -> Result<()> {
        if pos + 1 == self.dim {
            idx[pos] = left;
            let v: Vec<f64> = idx.iter().map(|&i| i as f64 / resolution as f64).collect();
            if self.contains(&v)? {
                out.push(v);
            }
            return Ok(());
        }
        for i in 0..=left {
            idx[pos] = i;
            self.fill_grid(pos + 1, left - i, resolution, idx, out)?;
        }
        Ok(())
    }

    /// True when the region holds a vector with every component positive.
    pub fn has_positive_point(&self) -> bool {
        if self.is_empty() {
            return false;
        }
        let margins: Vec<Vec<f64>> = (0..self.dim)
            .map(|i| {
                let mut a = vec![0.0; self.dim];
                a[i] = -1.0;
                a
            })
            .collect();
        let outcome = self.optimality_for_differences(&margins, true);
        matches!(outcome, Ok(Optimality { holds: true, .. }))
    }

    /// Parses the region literal syntax, one constraint per line:
    ///
    /// ```text
    /// # comment
    /// 3 w1 - 1 w2 >= 0
    /// w1 < 0.8
    /// ball 0.5 0.5 0.1
    /// ```
    pub fn parse(text: &str, dim: usize) -> Result<Self> {
        let mut constraints = Vec::new();
        let mut ball = None;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::RegionParse {
                line: line_no,
                message,
            };
            if let Some(rest) = line.strip_prefix("ball") {
                if ball.is_some() {
                    return Err(err("more than one ball".into()));
                }
                let nums = rest
                    .split_whitespace()
                    .map(|s| s.parse::<f64>().map_err(|_| err(format!("bad number {:?}", s))))
                    .collect::<Result<Vec<f64>>>()?;
                if nums.len() != dim + 1 {
                    return Err(err(format!(
                        "ball needs {} center coordinates and a radius",
                        dim
                    )));
                }
                ball = Some(Ball {
                    center: nums[..dim].to_vec(),
                    radius: nums[dim],
                });
                continue;
            }
            constraints.extend(parse_constraint(line, dim).map_err(err)?);
        }
        Self::new(dim, constraints, ball).map_err(|e| match e {
            Error::OffSimplex(_) | Error::InvalidArgument(_) => Error::RegionParse {
                line: 0,
                message: e.to_string(),
            },
            other => other,
        })
    }
}

/// `target - rival` for the Pareto-minimal rivals whose attributes differ
/// from the target. Dominated rivals are implied: if `u <= t` componentwise
/// then `v·target < v·u` gives `v·target < v·t` for `v >= 0`.
pub(crate) fn reduced_differences(target: &Tuple, rivals: &[&Tuple]) -> Vec<Vec<f64>> {
    let mut distinct: Vec<&[f64]> = Vec::new();
    for r in rivals {
        if r.attrs == target.attrs || distinct.contains(&r.attrs.as_slice()) {
            continue;
        }
        distinct.push(&r.attrs);
    }
    let minimal: Vec<&[f64]> = distinct
        .iter()
        .filter(|r| !distinct.iter().any(|u| crate::classic::dominates(u, r)))
        .copied()
        .collect();
    minimal
        .into_iter()
        .map(|r| target.attrs.iter().zip(r).map(|(a, b)| a - b).collect())
        .collect()
}

fn parse_constraint(line: &str, dim: usize) -> std::result::Result<Vec<LinearConstraint>, String> {
    let ops = ["<=", ">=", "<", ">", "="];
    let (pos, op) = ops
        .iter()
        .filter_map(|op| line.find(op).map(|p| (p, *op)))
        .min_by_key(|(p, op)| (*p, std::cmp::Reverse(op.len())))
        .ok_or_else(|| "missing relation (<=, <, >=, >, =)".to_string())?;
    let lhs = &line[..pos];
    let rhs_text = line[pos + op.len()..].trim();
    let rhs: f64 = rhs_text
        .parse()
        .map_err(|_| format!("right-hand side {:?} is not a number", rhs_text))?;
    let coeffs = parse_linear_expr(lhs, dim)?;
    Ok(match op {
        "<=" => vec![LinearConstraint::le(coeffs, rhs)],
        "<" => vec![LinearConstraint::lt(coeffs, rhs)],
        ">=" => vec![LinearConstraint::ge(coeffs, rhs)],
        ">" => vec![LinearConstraint::gt(coeffs, rhs)],
        _ => vec![
            LinearConstraint::le(coeffs.clone(), rhs),
            LinearConstraint::ge(coeffs, rhs),
        ],
    })
}

/// `3 w1 - 1 w2`, `-w2 + 0.5w1`, `w1`.
fn parse_linear_expr(text: &str, dim: usize) -> std::result::Result<Vec<f64>, String> {
    let mut coeffs = vec![0.0; dim];
    let mut sign = 1.0;
    let mut pending: Option<f64> = None;
    // true right after a complete `[coef] w<i>` term
    let mut after_term = false;
    let mut terms = 0;
    for tok in tokenize(text) {
        match tok.as_str() {
            "+" | "-" => {
                if pending.is_some() {
                    return Err("constant terms belong on the right-hand side".into());
                }
                if tok == "-" {
                    sign = -sign;
                }
                after_term = false;
            }
            _ => {
                if after_term {
                    return Err(format!("missing operator before {:?}", tok));
                }
                let (num, var) = match tok.find('w') {
                    Some(p) => (&tok[..p], Some(&tok[p + 1..])),
                    None => (tok.as_str(), None),
                };
                if !num.is_empty() {
                    if pending.is_some() {
                        return Err(format!("two numbers in a row near {:?}", tok));
                    }
                    pending = Some(num.parse().map_err(|_| format!("bad coefficient {:?}", num))?);
                }
                if let Some(var) = var {
                    let idx: usize = var
                        .parse()
                        .map_err(|_| format!("bad weight name {:?}", tok))?;
                    if idx == 0 || idx > dim {
                        return Err(format!("weight w{} outside 1..={}", idx, dim));
                    }
                    coeffs[idx - 1] += sign * pending.take().unwrap_or(1.0);
                    sign = 1.0;
                    terms += 1;
                    after_term = true;
                }
            }
        }
    }
    if pending.is_some() {
        return Err("constant terms belong on the right-hand side".into());
    }
    if terms == 0 {
        return Err("no weight terms".into());
    }
    Ok(coeffs)
}

/// Splits on whitespace and on `+`/`-` signs, keeping exponents like `1e-3` whole.
fn tokenize(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for ch in text.chars() {
        let exponent_sign = matches!(ch, '+' | '-')
            && cur.ends_with(['e', 'E'])
            && cur[..cur.len() - 1].chars().all(|c| c.is_ascii_digit() || c == '.')
            && cur.len() > 1;
        if ch.is_whitespace() || (matches!(ch, '+' | '-') && !exponent_sign) {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
            if !ch.is_whitespace() {
                out.push(ch.to_string());
            }
        } else {
            cur.push(ch);
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}
