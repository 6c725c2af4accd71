use std::collections::{BTreeMap, HashMap};

use super::delaunay::triangulate;
use super::miniball::dist;
use super::{GeometricFiltration, PointCloud};
use crate::error::{Error, Result};
use crate::simplex::Simplex;

fn circumradius(a: &[f64], b: &[f64], c: &[f64]) -> f64 {
    let (ab, bc, ca) = (dist(a, b), dist(b, c), dist(c, a));
    let cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    ab * bc * ca / (2.0 * cross.abs())
}

/// No point lies strictly inside the circle with diameter `ab`.
fn is_gabriel(points: &[Vec<f64>], a: usize, b: usize) -> bool {
    let (pa, pb) = (&points[a], &points[b]);
    points.iter().enumerate().all(|(i, q)| {
        i == a || i == b || (pa[0] - q[0]) * (pb[0] - q[0]) + (pa[1] - q[1]) * (pb[1] - q[1]) >= 0.0
    })
}

/// Alpha filtration of a planar cloud on its Delaunay triangulation.
///
/// Vertices are born at 0, triangles at their circumradius, and an edge at
/// half its length when it is Gabriel, otherwise at the smallest
/// circumradius among its Delaunay triangles.
pub fn alpha2d_filtration(cloud: &PointCloud) -> Result<GeometricFiltration> {
    if cloud.dim() != 2 {
        return Err(Error::PointCloud(format!("alpha complexes need planar points, got dimension {}", cloud.dim())));
    }
    let pts = cloud.points();
    let tri = triangulate(pts);
    let mut births: BTreeMap<Simplex, f64> = BTreeMap::new();
    for i in 0..pts.len() {
        births.insert(Simplex::vertex(i as u32), 0.0);
    }
    let mut edge_tris: HashMap<(usize, usize), f64> = HashMap::new();
    for t in &tri.triangles {
        let r = circumradius(&pts[t[0]], &pts[t[1]], &pts[t[2]]);
        births.insert(Simplex::new(t.iter().map(|&v| v as u32)).expect("distinct"), r);
        for i in 0..3 {
            let (a, b) = (t[i].min(t[(i + 1) % 3]), t[i].max(t[(i + 1) % 3]));
            let e = edge_tris.entry((a, b)).or_insert(f64::INFINITY);
            *e = e.min(r);
        }
    }
    for w in tri.path.windows(2) {
        edge_tris.insert((w[0].min(w[1]), w[0].max(w[1])), f64::INFINITY);
    }
    for (&(a, b), &r) in &edge_tris {
        let birth = if is_gabriel(pts, a, b) {
            dist(&pts[a], &pts[b]) / 2.0
        } else {
            r
        };
        births.insert(Simplex::new([a as u32, b as u32]).expect("distinct"), birth);
    }
    GeometricFiltration::from_real_births(&births)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::cech_filtration;
    use approx::assert_abs_diff_eq;

    #[test]
    fn equilateral_matches_cech() {
        let c = PointCloud::new(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.5, 3f64.sqrt() / 2.0]]).unwrap();
        let a = alpha2d_filtration(&c).unwrap();
        let ch = cech_filtration(&c, 2).unwrap();
        assert_eq!(a.filtration, ch.filtration);
        for (x, y) in a.level_values.iter().zip(&ch.level_values) {
            assert_abs_diff_eq!(x, y, epsilon = 1e-12);
        }
    }

    #[test]
    fn obtuse_long_edge_is_co_born() {
        let c = PointCloud::new(vec![vec![0.0, 0.0], vec![4.0, 0.0], vec![2.0, 0.5]]).unwrap();
        let a = alpha2d_filtration(&c).unwrap();
        let tri = a.real_birth(&Simplex::new([0, 1, 2]).unwrap()).unwrap();
        let long = a.real_birth(&Simplex::new([0, 1]).unwrap()).unwrap();
        // circumradius of (0,0), (4,0), (2,0.5): center (2, -3.75), radius 4.25
        assert_abs_diff_eq!(tri, 4.25, epsilon = 1e-12);
        assert_eq!(long, tri);
        let short = a.real_birth(&Simplex::new([0, 2]).unwrap()).unwrap();
        assert_abs_diff_eq!(short, 4.25f64.sqrt() / 2.0, epsilon = 1e-12);
    }

    #[test]
    fn two_points() {
        let c = PointCloud::new(vec![vec![0.0, 0.0], vec![0.0, 3.0]]).unwrap();
        let a = alpha2d_filtration(&c).unwrap();
        assert_abs_diff_eq!(a.real_birth(&Simplex::new([0, 1]).unwrap()).unwrap(), 1.5);
    }

    #[test]
    fn alpha_never_before_cech() {
        let pts: Vec<Vec<f64>> = (0..12)
            .map(|i| {
                let t = i as f64 * 2.399;
                vec![(t * 1.3).sin() * (1.0 + 0.1 * i as f64), (t * 0.7).cos() * 2.0 + 0.05 * i as f64]
            })
            .collect();
        let c = PointCloud::new(pts).unwrap();
        let a = alpha2d_filtration(&c).unwrap();
        let ch = cech_filtration(&c, 2).unwrap();
        for s in a.filtration.complex().iter() {
            assert!(a.real_birth(s).unwrap() >= ch.real_birth(s).unwrap() - 1e-9, "{s}");
        }
    }
}
