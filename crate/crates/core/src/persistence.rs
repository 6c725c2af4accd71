//! Barcodes by boundary-matrix reduction, persistent Betti numbers, nerve
//! filtrations and the complex-versus-nerve comparison.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filtration::{validate_filtered_cover, FilteredComplex, FilteredCover, Level, ValidationReport};
use crate::linalg::{ColumnReduction, PrimeField, SparseCol};
use crate::order::nerve;
use crate::ring::is_prime;
use crate::simplex::Simplex;

pub mod oracle;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub dim: usize,
    pub birth: Level,
    /// `None` for an essential class
    pub death: Option<Level>,
}

impl Interval {
    /// Alive at `level` and still alive at `later`: `birth <= level` and
    /// `death > later`.
    pub fn spans(&self, level: Level, later: Level) -> bool {
        self.birth <= level && self.death.is_none_or(|d| d > later)
    }
}

/// Multiset of intervals with `birth < death`, sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Barcode {
    intervals: Vec<Interval>,
}

impl Barcode {
    pub fn new(mut intervals: Vec<Interval>) -> Self {
        intervals.retain(|iv| iv.death.is_none_or(|d| iv.birth < d));
        intervals.sort();
        Barcode { intervals }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn in_dim(&self, k: usize) -> impl Iterator<Item = &Interval> + '_ {
        self.intervals.iter().filter(move |iv| iv.dim == k)
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }
}

/// Tie-break for simplices born at the same level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TieBreak {
    /// dimension, then lexicographic
    #[default]
    DimLex,
    /// dimension, then reverse lexicographic
    DimReverseLex,
}

fn check_field(p: u32) -> Result<PrimeField> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(PrimeField::new(p))
}

/// Barcode over `Z/p` for dimensions `0..=max_dim`.
pub fn persistence_barcode(f: &FilteredComplex, max_dim: usize, p: u32) -> Result<Barcode> {
    persistence_barcode_with(f, max_dim, p, TieBreak::DimLex)
}

pub fn persistence_barcode_with(f: &FilteredComplex, max_dim: usize, p: u32, tie: TieBreak) -> Result<Barcode> {
    let field = check_field(p)?;
    let order = f.filtration_order(max_dim + 1, tie == TieBreak::DimReverseLex);
    let position: HashMap<&Simplex, usize> = order.iter().enumerate().map(|(i, (s, _))| (s, i)).collect();
    let columns: Vec<SparseCol<u64>> = order
        .iter()
        .map(|(s, _)| {
            let mut col: SparseCol<u64> = s
                .facets()
                .map(|(j, face)| (position[&face], if j % 2 == 0 { 1 } else { field.modulus() as u64 - 1 }))
                .collect();
            col.sort_by_key(|(r, _)| *r);
            if field.modulus() == 2 {
                col.iter_mut().for_each(|e| e.1 = 1);
            }
            col
        })
        .collect();
    let red = ColumnReduction::new(field, columns, false);
    let mut paired = vec![false; order.len()];
    let mut intervals = Vec::new();
    for (row, col) in red.pivot_pairs() {
        paired[row] = true;
        paired[col] = true;
        let (s, birth) = &order[row];
        if s.dim() <= max_dim {
            intervals.push(Interval {
                dim: s.dim(),
                birth: *birth,
                death: Some(order[col].1),
            });
        }
    }
    for (i, (s, birth)) in order.iter().enumerate() {
        if !paired[i] && s.dim() <= max_dim {
            intervals.push(Interval {
                dim: s.dim(),
                birth: *birth,
                death: None,
            });
        }
    }
    Ok(Barcode::new(intervals))
}

/// `#{intervals of dimension k with birth <= level and death > level + p}`.
pub fn persistent_betti(bc: &Barcode, k: usize, level: Level, p: Level) -> usize {
    bc.in_dim(k).filter(|iv| iv.spans(level, level + p)).count()
}

/// `(k, level, p) -> persistent Betti number`, for every pair of declared
/// levels `level <= level + p`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PersistentBettiTable {
    entries: BTreeMap<(usize, Level, Level), usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableEntry {
    pub k: usize,
    pub level: Level,
    pub p: Level,
    pub betti: usize,
}

impl PersistentBettiTable {
    pub fn from_barcode(bc: &Barcode, levels: &[Level], max_dim: usize) -> Self {
        Self::build(levels, max_dim, |k, l, p| persistent_betti(bc, k, l, p))
    }

    pub fn build(levels: &[Level], max_dim: usize, mut value: impl FnMut(usize, Level, Level) -> usize) -> Self {
        let mut entries = BTreeMap::new();
        for k in 0..=max_dim {
            for (a, &l) in levels.iter().enumerate() {
                for &later in &levels[a..] {
                    entries.insert((k, l, later - l), value(k, l, later - l));
                }
            }
        }
        PersistentBettiTable { entries }
    }

    pub fn get(&self, k: usize, level: Level, p: Level) -> Option<usize> {
        self.entries.get(&(k, level, p)).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = TableEntry> + '_ {
        self.entries.iter().map(|(&(k, level, p), &betti)| TableEntry { k, level, p, betti })
    }

    /// Entries that differ or are missing on one side.
    pub fn mismatches(&self, other: &PersistentBettiTable) -> Vec<Mismatch> {
        let mut keys: Vec<_> = self.entries.keys().chain(other.entries.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        keys.into_iter()
            .filter_map(|key @ (k, level, p)| {
                let a = self.entries.get(&key).copied();
                let b = other.entries.get(&key).copied();
                (a != b).then_some(Mismatch {
                    k,
                    level,
                    p,
                    left: a,
                    right: b,
                })
            })
            .collect()
    }
}

impl Serialize for PersistentBettiTable {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub k: usize,
    pub level: Level,
    pub p: Level,
    pub left: Option<usize>,
    pub right: Option<usize>,
}

/// Filtration of the nerves: a nerve simplex is born at the first level at
/// which its elements share a simplex. Vertices are cover indices.
pub fn nerve_filtration(fc: &FilteredCover) -> FilteredComplex {
    let mut births: BTreeMap<Simplex, Level> = BTreeMap::new();
    for &l in fc.levels() {
        for s in nerve(&fc.cover_at(l)).iter() {
            births.entry(s.clone()).or_insert(l);
        }
    }
    FilteredComplex::new(births, fc.levels().iter().copied()).expect("nerve births are monotone")
}

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonReport {
    pub field: u32,
    pub max_dim: usize,
    pub complex_table: PersistentBettiTable,
    pub nerve_table: PersistentBettiTable,
    pub mismatches: Vec<Mismatch>,
}

impl ComparisonReport {
    pub fn equal(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Persistent Betti tables of `f` and of the nerve filtration of `fc`.
/// The cover must pass strict validation against `f`.
pub fn compare_persistence(f: &FilteredComplex, fc: &FilteredCover, max_dim: usize, p: u32) -> Result<ComparisonReport> {
    let report = validate_filtered_cover(fc, f);
    if !report.passed(true) {
        return Err(hypothesis_error(&report));
    }
    let nf = nerve_filtration(fc);
    let complex_table = PersistentBettiTable::from_barcode(&persistence_barcode(f, max_dim, p)?, f.levels(), max_dim);
    let nerve_table = PersistentBettiTable::from_barcode(&persistence_barcode(&nf, max_dim, p)?, nf.levels(), max_dim);
    let mismatches = complex_table.mismatches(&nerve_table);
    Ok(ComparisonReport {
        field: p,
        max_dim,
        complex_table,
        nerve_table,
        mismatches,
    })
}

pub(crate) fn hypothesis_error(report: &ValidationReport) -> Error {
    Error::Hypothesis(report.summary())
}
