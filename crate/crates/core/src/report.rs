//! Side-by-side property report: every operator on one dataset, with the
//! measured output size, whether that size matched a request, whether a
//! ranking came out and which inputs were consumed.

use std::fmt;

use crate::classic::{k_skyband, skyline, top_k};
use crate::data::Dataset;
use crate::epsilon::epsilon_skyline;
use crate::error::{Error, Result};
use crate::flexible::{nd, po};
use crate::oss::{ord, oru};
use crate::region::WeightRegion;
use crate::representative::{distance_representative, dominance_representative, Mode};
use crate::utk::utk1;
use crate::IdSet;

#[derive(Debug, Clone)]
pub struct CompareParams {
    pub weights: Vec<f64>,
    pub region: WeightRegion,
    pub k: usize,
    pub m: usize,
    pub eps: f64,
    pub mode: Mode,
}

impl CompareParams {
    /// Uniform weights, the whole simplex, `k = 2`, `m = 3`, `eps = 0.1`.
    pub fn defaults(d: usize) -> Self {
        Self {
            weights: vec![1.0 / d as f64; d],
            region: WeightRegion::simplex(d),
            k: 2,
            m: 3,
            eps: 0.1,
            mode: Mode::Greedy,
        }
    }
}

/// How an operator's output size relates to what was asked for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SizeControl {
    /// Output size was requested through the named parameter.
    Requested { param: &'static str, value: usize },
    /// Size follows the data, but a tuning parameter shrinks or grows it.
    Partial,
    Uncontrolled,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorRow {
    pub name: &'static str,
    /// Output size, or why the operator could not run on these inputs.
    pub outcome: std::result::Result<usize, String>,
    pub control: SizeControl,
    pub ranked: bool,
    pub preference_input: bool,
    pub parameters: usize,
}

impl OperatorRow {
    /// True when a requested size was met exactly.
    pub fn controlled(&self) -> bool {
        match (self.control, &self.outcome) {
            (SizeControl::Requested { value, .. }, Ok(n)) => *n == value,
            _ => false,
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl fmt::Display for OperatorRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.name)?;
        match &self.outcome {
            Ok(n) => {
                write!(f, "cardinality {} ", n)?;
                match self.control {
                    SizeControl::Requested { param, .. } if self.controlled() => {
                        write!(f, "(= {}, controlled)", param)?
                    }
                    SizeControl::Requested { param, .. } => write!(f, "(≠ {}, uncontrolled)", param)?,
                    SizeControl::Partial => f.write_str("(partial)")?,
                    SizeControl::Uncontrolled => f.write_str("(uncontrolled)")?,
                }
            }
            Err(why) => write!(f, "n/a ({})", why)?,
        }
        write!(
            f,
            ", ranked {}, preference input {}, parameters required {}",
            yes_no(self.ranked),
            yes_no(self.preference_input),
            self.parameters
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Containment {
    pub po: IdSet,
    pub nd: IdSet,
    pub sky: IdSet,
    /// False when the region has no strictly positive weight vector, where
    /// `ND ⊆ SKY` is not guaranteed.
    pub nd_checked: bool,
}

impl Containment {
    pub fn po_in_nd(&self) -> bool {
        self.po.is_subset(&self.nd)
    }

    pub fn nd_in_sky(&self) -> Option<bool> {
        self.nd_checked.then(|| self.nd.is_subset(&self.sky))
    }

    pub fn holds(&self) -> bool {
        self.po_in_nd() && self.nd_in_sky() != Some(false)
    }
}

impl fmt::Display for Containment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PO({}) ⊆ ND({}) ⊆ SKY({}): ",
            self.po.len(),
            self.nd.len(),
            self.sky.len()
        )?;
        match (self.po_in_nd(), self.nd_in_sky()) {
            (true, Some(true)) => f.write_str("OK"),
            (true, None) => f.write_str(
                "OK for PO ⊆ ND; ND ⊆ SKY n/a (region has no strictly positive weight vector)",
            ),
            (po_ok, nd_ok) => {
                f.write_str("VIOLATION")?;
                if !po_ok {
                    let extra: Vec<&str> = self.po.difference(&self.nd).map(String::as_str).collect();
                    write!(f, " PO\\ND={{{}}}", extra.join(","))?;
                }
                if nd_ok == Some(false) {
                    let extra: Vec<&str> =
                        self.nd.difference(&self.sky).map(String::as_str).collect();
                    write!(f, " ND\\SKY={{{}}}", extra.join(","))?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareReport {
    pub rows: Vec<OperatorRow>,
    pub containment: Containment,
}

impl CompareReport {
    pub fn row(&self, name: &str) -> Option<&OperatorRow> {
        self.rows.iter().find(|r| r.name == name)
    }
}

impl fmt::Display for CompareReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            writeln!(f, "{}", row)?;
        }
        writeln!(f, "{}", self.containment)
    }
}

/// Errors that only mean "this operator does not apply here".
fn soft(r: Result<usize>) -> Result<std::result::Result<usize, String>> {
    match r {
        Ok(n) => Ok(Ok(n)),
        Err(e @ (Error::Unsupported(_) | Error::Unreachable { .. } | Error::BudgetExceeded { .. })) => {
            Ok(Err(e.to_string()))
        }
        Err(e) => Err(e),
    }
}

/// Runs every operator on `ds`. ε-skyline and the representatives see a
/// normalized copy.
pub fn compare(ds: &Dataset, p: &CompareParams) -> Result<CompareReport> {
    if ds.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let normalized = ds.normalize()?;
    let w = &p.weights;
    let sky = skyline(ds);
    let nd_set = nd(ds, &p.region)?;
    let po_set = po(ds, &p.region)?;

    let row = |name, outcome, control, ranked, preference_input, parameters| OperatorRow {
        name,
        outcome,
        control,
        ranked,
        preference_input,
        parameters,
    };
    let requested = |param, value| SizeControl::Requested { param, value };
    let rows = vec![
        row("Skyline", Ok(sky.len()), SizeControl::Uncontrolled, false, false, 0),
        row(
            "k-Skyband",
            Ok(k_skyband(ds, p.k)?.len()),
            SizeControl::Uncontrolled,
            false,
            false,
            1,
        ),
        row(
            "Top-k",
            soft(top_k(ds, w, p.k).map(|r| r.len()))?,
            requested("k", p.k),
            true,
            true,
            2,
        ),
        row("ND", Ok(nd_set.len()), SizeControl::Partial, false, true, 1),
        row("PO", Ok(po_set.len()), SizeControl::Partial, false, true, 1),
        row(
            "ORD",
            soft(ord(ds, w, p.m, 1).map(|r| r.ids.len()))?,
            requested("m", p.m),
            false,
            true,
            2,
        ),
        row(
            "ORU",
            soft(oru(ds, w, p.m, 1).map(|r| r.ids.len()))?,
            requested("m", p.m),
            false,
            true,
            2,
        ),
        row(
            "UTK1",
            soft(utk1(ds, p.k, &p.region).map(|s| s.len()))?,
            requested("k", p.k),
            false,
            true,
            2,
        ),
        row(
            "ε-Skyline",
            soft(epsilon_skyline(&normalized, w, p.eps).map(|s| s.len()))?,
            SizeControl::Partial,
            false,
            true,
            2,
        ),
        row(
            "RepDom",
            soft(dominance_representative(&normalized, p.k, p.mode).map(|s| s.ids.len()))?,
            requested("k", p.k),
            false,
            false,
            1,
        ),
        row(
            "RepDist",
            soft(distance_representative(&normalized, p.k, p.mode).map(|s| s.ids.len()))?,
            requested("k", p.k),
            false,
            false,
            1,
        ),
    ];
    Ok(CompareReport {
        rows,
        containment: Containment {
            po: po_set,
            nd: nd_set,
            sky,
            nd_checked: p.region.has_positive_point(),
        },
    })
}
