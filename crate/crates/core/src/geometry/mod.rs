//! Point clouds and the filtrations built on them: Čech in any dimension,
//! alpha complexes in the plane.
//!
//! Balls have radius `α`, so a simplex is born at the radius of the
//! smallest ball enclosing its points. Real birth values are replaced by
//! their rank among the distinct critical values; the table of those values
//! travels with the filtration.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filtration::{FilteredComplex, Level};
use crate::persistence::{persistence_barcode, Barcode, Mismatch, PersistentBettiTable};
use crate::simplex::Simplex;

mod alpha;
mod cech;
mod delaunay;
pub mod miniball;

pub use alpha::alpha2d_filtration;
pub use cech::cech_filtration;
pub use delaunay::delaunay2d;
pub use miniball::{miniball, Ball};

/// Critical values closer than this are treated as equal.
pub const VALUE_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    dim: usize,
    points: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
struct PointsJson {
    points: Vec<Vec<f64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CloudFormat {
    Csv,
    Json,
}

impl PointCloud {
    /// Rejects empty input, ragged rows, non-finite coordinates and
    /// duplicate points. Rows are reported 1-based.
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::EmptyPointSet);
        };
        let dim = first.len();
        if dim == 0 {
            return Err(Error::PointCloud("row 1: no coordinates".into()));
        }
        for (r, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::PointCloud(format!(
                    "row {}: expected {dim} coordinates, found {}",
                    r + 1,
                    p.len()
                )));
            }
            if let Some(c) = p.iter().position(|x| !x.is_finite()) {
                return Err(Error::PointCloud(format!("row {}, column {}: not a finite number", r + 1, c + 1)));
            }
        }
        let mut seen: HashMap<Vec<u64>, usize> = HashMap::new();
        let mut dups = Vec::new();
        for (r, p) in points.iter().enumerate() {
            // +0.0 and -0.0 are the same point
            let key: Vec<u64> = p.iter().map(|x| (x + 0.0).to_bits()).collect();
            if let Some(&prev) = seen.get(&key) {
                dups.push(format!("rows {} and {}", prev + 1, r + 1));
            } else {
                seen.insert(key, r);
            }
        }
        if !dups.is_empty() {
            return Err(Error::PointCloud(format!("duplicate points: {}", dups.join(", "))));
        }
        Ok(PointCloud { dim, points })
    }

    /// One point per line, comma separated, no header.
    pub fn from_csv_str(text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());
        let mut points = Vec::new();
        for (r, record) in reader.records().enumerate() {
            let record = record.map_err(|e| Error::Parse(format!("row {}: {e}", r + 1)))?;
            let row = record
                .iter()
                .enumerate()
                .map(|(c, field)| {
                    field.parse::<f64>().map_err(|_| {
                        Error::Parse(format!("row {}, column {}: cannot parse {field:?} as a number", r + 1, c + 1))
                    })
                })
                .collect::<Result<Vec<f64>>>()?;
            points.push(row);
        }
        Self::new(points)
    }

    /// `{"points": [[x, y, ...], ...]}`
    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: PointsJson = serde_json::from_str(text)?;
        Self::new(raw.points)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i]
    }
}

/// Format from the extension when not given: `.json` is JSON, anything
/// else CSV.
pub fn load_point_cloud(path: &Path, format: Option<CloudFormat>) -> Result<PointCloud> {
    let text = std::fs::read_to_string(path)?;
    let format = format.unwrap_or(match path.extension().and_then(|e| e.to_str()) {
        Some(e) if e.eq_ignore_ascii_case("json") => CloudFormat::Json,
        _ => CloudFormat::Csv,
    });
    match format {
        CloudFormat::Csv => PointCloud::from_csv_str(&text),
        CloudFormat::Json => PointCloud::from_json_str(&text),
    }
}

/// A filtration with integer levels `0..n` and the real value of each.
#[derive(Clone, Debug, PartialEq)]
pub struct GeometricFiltration {
    pub filtration: FilteredComplex,
    pub level_values: Vec<f64>,
}

impl GeometricFiltration {
    /// Groups births into critical values (`VALUE_TOL` apart, each group
    /// represented by its smallest member) and ranks them.
    pub fn from_real_births(births: &BTreeMap<Simplex, f64>) -> Result<Self> {
        let mut values: Vec<f64> = births.values().copied().collect();
        values.sort_by(f64::total_cmp);
        let level_values = dedup_values(&values);
        let ranked = births
            .iter()
            .map(|(s, &v)| (s.clone(), rank_of(&level_values, v)))
            .collect();
        let filtration = FilteredComplex::new(ranked, 0..level_values.len() as Level)?;
        Ok(GeometricFiltration {
            filtration,
            level_values,
        })
    }

    pub fn value(&self, level: Level) -> f64 {
        self.level_values[level as usize]
    }

    pub fn real_birth(&self, s: &Simplex) -> Option<f64> {
        self.filtration.birth(s).map(|l| self.value(l))
    }

    /// The same filtration indexed by a finer value table that contains
    /// every critical value of this one.
    pub fn reindex(&self, values: &[f64]) -> Result<FilteredComplex> {
        let births = self
            .filtration
            .births()
            .iter()
            .map(|(s, &l)| (s.clone(), rank_of(values, self.value(l))))
            .collect();
        FilteredComplex::new(births, 0..values.len() as Level)
    }

    pub fn real_barcode(&self, bc: &Barcode) -> Vec<RealInterval> {
        bc.intervals()
            .iter()
            .map(|iv| RealInterval {
                dim: iv.dim,
                birth: self.value(iv.birth),
                death: iv.death.map(|d| self.value(d)),
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RealInterval {
    pub dim: usize,
    pub birth: f64,
    pub death: Option<f64>,
}

pub(crate) fn dedup_values(sorted: &[f64]) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    for &v in sorted {
        match out.last() {
            Some(&last) if v - last <= VALUE_TOL => {}
            _ => out.push(v),
        }
    }
    out
}

/// Index of the group containing `v`: the last representative not above
/// `v + VALUE_TOL`.
fn rank_of(values: &[f64], v: f64) -> Level {
    let i = values.partition_point(|&x| x <= v + VALUE_TOL);
    i.saturating_sub(1) as Level
}

#[derive(Clone, Debug, Serialize)]
pub struct GeometricComparison {
    pub level_values: Vec<f64>,
    pub left: PersistentBettiTable,
    pub right: PersistentBettiTable,
    pub mismatches: Vec<Mismatch>,
}

impl GeometricComparison {
    pub fn equal(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Persistent Betti tables of both filtrations over their merged critical
/// values.
pub fn compare_geometric(
    left: &GeometricFiltration,
    right: &GeometricFiltration,
    max_dim: usize,
    field: u32,
) -> Result<GeometricComparison> {
    let mut all: Vec<f64> = left.level_values.iter().chain(&right.level_values).copied().collect();
    all.sort_by(f64::total_cmp);
    let values = dedup_values(&all);
    let levels: Vec<Level> = (0..values.len() as Level).collect();
    let table = |g: &GeometricFiltration| -> Result<PersistentBettiTable> {
        let f = g.reindex(&values)?;
        let bc = persistence_barcode(&f, max_dim, field)?;
        Ok(PersistentBettiTable::from_barcode(&bc, &levels, max_dim))
    };
    let (l, r) = (table(left)?, table(right)?);
    let mismatches = l.mismatches(&r);
    Ok(GeometricComparison {
        level_values: values,
        left: l,
        right: r,
        mismatches,
    })
}
