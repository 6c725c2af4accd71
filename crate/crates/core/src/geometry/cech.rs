use std::collections::BTreeMap;

use itertools::Itertools;

use super::miniball::miniball;
use super::{GeometricFiltration, PointCloud};
use crate::error::Result;
use crate::simplex::Simplex;

/// Čech filtration up to dimension `max_dim` (capped at `n - 1`).
///
/// A simplex is born at the radius of the smallest ball enclosing its
/// points. That radius is monotone under inclusion; the computed value is
/// additionally raised to the largest facet birth so floating-point noise
/// can never break monotonicity.
pub fn cech_filtration(cloud: &PointCloud, max_dim: usize) -> Result<GeometricFiltration> {
    let n = cloud.len();
    let top = max_dim.min(n - 1);
    let mut births: BTreeMap<Simplex, f64> = BTreeMap::new();
    for size in 1..=top + 1 {
        for combo in (0..n as u32).combinations(size) {
            let pts: Vec<&[f64]> = combo.iter().map(|&i| cloud.point(i as usize)).collect();
            let s = Simplex::new(combo).expect("distinct");
            let mut r = miniball(&pts)?.radius;
            for (_, f) in s.facets() {
                r = r.max(births[&f]);
            }
            births.insert(s, r);
        }
    }
    GeometricFiltration::from_real_births(&births)
}
