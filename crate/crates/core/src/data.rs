//! Dataset model shared by every operator.
//!
//! All attributes are lower-is-better and non-negative. Gain-type attributes
//! have to be negated or rescaled before they reach a [`Dataset`].

use std::collections::HashSet;
use std::fmt;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution as _, Normal};

use crate::error::{Error, Result};

/// One record: an identifier and `d` attribute values.
#[derive(Debug, Clone, PartialEq)]
pub struct Tuple {
    pub id: String,
    pub attrs: Vec<f64>,
}

impl Tuple {
    pub fn new(id: impl Into<String>, attrs: Vec<f64>) -> Self {
        Self {
            id: id.into(),
            attrs,
        }
    }

    pub fn dim(&self) -> usize {
        self.attrs.len()
    }

    /// Weighted-sum score `w·attrs`.
    pub fn score(&self, w: &[f64]) -> f64 {
        dot(&self.attrs, w)
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Immutable collection of same-dimension tuples.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    schema: Vec<String>,
    tuples: Vec<Tuple>,
    normalized: bool,
}

impl Dataset {
    /// Validates dimensions, attribute domain and id uniqueness.
    pub fn new(schema: Vec<String>, tuples: Vec<Tuple>) -> Result<Self> {
        if schema.is_empty() {
            return Err(Error::InvalidArgument(
                "dataset needs at least one attribute".into(),
            ));
        }
        let d = schema.len();
        let mut seen = HashSet::with_capacity(tuples.len());
        for (i, t) in tuples.iter().enumerate() {
            let row = i + 1;
            if t.dim() != d {
                return Err(Error::Ingest {
                    row,
                    message: format!("expected {} attributes", d),
                });
            }
            if let Some(x) = t.attrs.iter().find(|x| !x.is_finite() || **x < 0.0) {
                return Err(Error::Ingest {
                    row,
                    message: format!("attribute value {} is not a finite non-negative number", x),
                });
            }
            if !seen.insert(t.id.as_str()) {
                return Err(Error::Ingest {
                    row,
                    message: format!("duplicate id {}", t.id),
                });
            }
        }
        Ok(Self {
            schema,
            tuples,
            normalized: false,
        })
    }

    /// Builds a dataset with default attribute names `a1..ad`.
    pub fn from_rows<I, S>(rows: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Vec<f64>)>,
        S: Into<String>,
    {
        let tuples: Vec<Tuple> = rows.into_iter().map(|(id, a)| Tuple::new(id, a)).collect();
        let d = tuples.first().map(Tuple::dim).unwrap_or(1);
        Self::new(default_schema(d), tuples)
    }

    fn into_normalized(mut self) -> Result<Self> {
        if let Some(x) = self
            .tuples
            .iter()
            .flat_map(|t| t.attrs.iter())
            .find(|x| **x > 1.0)
        {
            return Err(Error::InvalidArgument(format!(
                "value {} outside [0,1] in a normalized dataset",
                x
            )));
        }
        self.normalized = true;
        Ok(self)
    }

    pub fn schema(&self) -> &[String] {
        &self.schema
    }

    pub fn tuples(&self) -> &[Tuple] {
        &self.tuples
    }

    pub fn dim(&self) -> usize {
        self.schema.len()
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn get(&self, id: &str) -> Option<&Tuple> {
        self.tuples.iter().find(|t| t.id == id)
    }

    /// Per-attribute min-max rescale to `[0,1]`; constant attributes map to 0.
    pub fn normalize(&self) -> Result<Self> {
        if self.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let d = self.dim();
        let mut lo = vec![f64::INFINITY; d];
        let mut hi = vec![f64::NEG_INFINITY; d];
        for t in &self.tuples {
            for (j, &x) in t.attrs.iter().enumerate() {
                lo[j] = lo[j].min(x);
                hi[j] = hi[j].max(x);
            }
        }
        let tuples = self
            .tuples
            .iter()
            .map(|t| {
                let attrs = t
                    .attrs
                    .iter()
                    .enumerate()
                    .map(|(j, &x)| {
                        let span = hi[j] - lo[j];
                        if span > 0.0 {
                            (x - lo[j]) / span
                        } else {
                            0.0
                        }
                    })
                    .collect();
                Tuple::new(t.id.clone(), attrs)
            })
            .collect();
        Dataset::new(self.schema.clone(), tuples)?.into_normalized()
    }

    pub fn load_csv(path: impl AsRef<Path>) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        Self::read_csv(file)
    }

    /// Parses CSV with a header row and an optional leading `id` column.
    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let header = rdr.headers()?.clone();
        if header.is_empty() || (header.len() == 1 && header[0].is_empty()) {
            return Err(Error::Ingest {
                row: 0,
                message: "missing header row".into(),
            });
        }
        let has_id = header[0].eq_ignore_ascii_case("id");
        let schema: Vec<String> = header
            .iter()
            .skip(usize::from(has_id))
            .map(str::to_string)
            .collect();
        let d = schema.len();
        let mut tuples = Vec::new();
        for (i, record) in rdr.records().enumerate() {
            let row = i + 1;
            let record = record?;
            if record.len() != d + usize::from(has_id) {
                return Err(Error::Ingest {
                    row,
                    message: format!("expected {} attributes", d),
                });
            }
            let id = if has_id {
                record[0].to_string()
            } else {
                row.to_string()
            };
            let attrs = record
                .iter()
                .skip(usize::from(has_id))
                .map(|field| {
                    f64::from_str(field).map_err(|_| Error::Ingest {
                        row,
                        message: format!("malformed number {:?}", field),
                    })
                })
                .collect::<Result<Vec<f64>>>()?;
            tuples.push(Tuple::new(id, attrs));
        }
        Dataset::new(schema, tuples)
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(writer);
        let mut header = vec!["id".to_string()];
        header.extend(self.schema.iter().cloned());
        wtr.write_record(&header)?;
        for t in &self.tuples {
            let mut rec = Vec::with_capacity(t.dim() + 1);
            rec.push(t.id.clone());
            // 17 significant digits round-trip every f64 exactly.
            rec.extend(t.attrs.iter().map(|x| format!("{:.16e}", x)));
            wtr.write_record(&rec)?;
        }
        wtr.flush()?;
        Ok(())
    }

    pub fn save_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let file = std::fs::File::create(path)?;
        self.write_csv(std::io::BufWriter::new(file))
    }
}

pub(crate) fn default_schema(d: usize) -> Vec<String> {
    (1..=d).map(|j| format!("a{}", j)).collect()
}

/// Synthetic benchmark families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distribution {
    Independent,
    Correlated,
    Anticorrelated,
}

impl FromStr for Distribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "independent" | "ind" => Ok(Self::Independent),
            "correlated" | "cor" => Ok(Self::Correlated),
            "anticorrelated" | "anti" => Ok(Self::Anticorrelated),
            other => Err(Error::InvalidArgument(format!(
                "unknown distribution {:?}",
                other
            ))),
        }
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Independent => "independent",
            Self::Correlated => "correlated",
            Self::Anticorrelated => "anticorrelated",
        })
    }
}

/// Deterministic synthetic dataset in `[0,1]^d`.
///
/// Correlated tuples scatter tightly around a shared base value; anticorrelated
/// tuples lie near the hyperplane `sum(x) = d * c` with `c` close to 1/2.
pub fn generate(dist: Distribution, n: usize, d: usize, seed: u64) -> Result<Dataset> {
    if d == 0 {
        return Err(Error::InvalidArgument("d must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spread = Normal::new(0.0, 0.05).expect("valid normal");
    let plane = Normal::new(0.5, 0.05).expect("valid normal");
    let mut tuples = Vec::with_capacity(n);
    for i in 0..n {
        let attrs: Vec<f64> = match dist {
            Distribution::Independent => (0..d).map(|_| rng.random::<f64>()).collect(),
            Distribution::Correlated => {
                let base: f64 = rng.random();
                (0..d)
                    .map(|_| (base + spread.sample(&mut rng)).clamp(0.0, 1.0))
                    .collect()
            }
            Distribution::Anticorrelated => loop {
                let level = plane.sample(&mut rng);
                let u: Vec<f64> = (0..d).map(|_| rng.random::<f64>() - 0.5).collect();
                let mean = u.iter().sum::<f64>() / d as f64;
                let x: Vec<f64> = u.iter().map(|ui| level + ui - mean).collect();
                if x.iter().all(|v| (0.0..=1.0).contains(v)) {
                    break x;
                }
            },
        };
        tuples.push(Tuple::new((i + 1).to_string(), attrs));
    }
    Dataset::new(default_schema(d), tuples)?.into_normalized()
}
