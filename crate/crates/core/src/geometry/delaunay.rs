//! Planar Delaunay triangulation: a lexicographic sweep followed by Lawson
//! edge flips, all decisions made with exact orientation and in-circle
//! predicates.
//!
//! Cocircular configurations are resolved by keeping whatever diagonal the
//! sweep produced: an edge is flipped only when the opposite point lies
//! strictly inside the circumcircle.

use std::collections::HashMap;

use robust::{incircle, orient2d, Coord};

use super::PointCloud;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::simplex::Simplex;

fn coord(p: &[f64]) -> Coord<f64> {
    Coord { x: p[0], y: p[1] }
}

/// Triangles as counter-clockwise index triples.
pub(crate) struct Triangulation {
    pub triangles: Vec<[usize; 3]>,
    /// only set when every point is collinear
    pub path: Vec<usize>,
}

pub(crate) fn triangulate(points: &[Vec<f64>]) -> Triangulation {
    let n = points.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        points[a][0]
            .total_cmp(&points[b][0])
            .then(points[a][1].total_cmp(&points[b][1]))
    });
    let orient = |a: usize, b: usize, c: usize| orient2d(coord(&points[a]), coord(&points[b]), coord(&points[c]));

    // leading collinear run
    let mut m = 2.min(n);
    while m < n && orient(order[0], order[1], order[m]) == 0.0 {
        m += 1;
    }
    if m == n {
        return Triangulation {
            triangles: Vec::new(),
            path: order,
        };
    }
    let apex = order[m];
    let mut triangles = Vec::new();
    for w in order[..m].windows(2) {
        let (a, b) = (w[0], w[1]);
        triangles.push(if orient(a, b, apex) > 0.0 { [a, b, apex] } else { [b, a, apex] });
    }
    // counter-clockwise hull
    let mut hull: Vec<usize> = if orient(order[0], order[1], apex) > 0.0 {
        order[..m].iter().copied().chain([apex]).collect()
    } else {
        [apex].into_iter().chain(order[..m].iter().rev().copied()).collect()
    };

    for &p in &order[m + 1..] {
        let h = hull.len();
        let visible: Vec<bool> = (0..h).map(|i| orient(hull[i], hull[(i + 1) % h], p) < 0.0).collect();
        let start = (0..h)
            .find(|&i| visible[i] && !visible[(i + h - 1) % h])
            .expect("a new extreme point sees part of the hull");
        let mut count = 0;
        while visible[(start + count) % h] {
            let (a, b) = (hull[(start + count) % h], hull[(start + count + 1) % h]);
            triangles.push([b, a, p]);
            count += 1;
        }
        let mut next = Vec::with_capacity(h + 1);
        next.push(hull[start]);
        next.push(p);
        for i in 0..h - count {
            next.push(hull[(start + count + i) % h]);
        }
        hull = next;
    }
    lawson_flips(points, &mut triangles);
    Triangulation {
        triangles,
        path: Vec::new(),
    }
}

fn lawson_flips(points: &[Vec<f64>], triangles: &mut [[usize; 3]]) {
    let mut edges: HashMap<(usize, usize), usize> = HashMap::new();
    for (t, tri) in triangles.iter().enumerate() {
        for i in 0..3 {
            edges.insert((tri[i], tri[(i + 1) % 3]), t);
        }
    }
    let mut stack: Vec<(usize, usize)> = triangles
        .iter()
        .flat_map(|tri| (0..3).map(move |i| (tri[i], tri[(i + 1) % 3])))
        .collect();
    stack.sort_unstable();
    stack.reverse();
    while let Some((a, b)) = stack.pop() {
        let (Some(&t1), Some(&t2)) = (edges.get(&(a, b)), edges.get(&(b, a))) else {
            continue;
        };
        let c = third(&triangles[t1], a, b);
        let d = third(&triangles[t2], b, a);
        let inside = incircle(
            coord(&points[a]),
            coord(&points[b]),
            coord(&points[c]),
            coord(&points[d]),
        );
        if inside <= 0.0 {
            continue;
        }
        for tri in [triangles[t1], triangles[t2]] {
            for i in 0..3 {
                edges.remove(&(tri[i], tri[(i + 1) % 3]));
            }
        }
        triangles[t1] = [a, d, c];
        triangles[t2] = [d, b, c];
        for (t, tri) in [(t1, triangles[t1]), (t2, triangles[t2])] {
            for i in 0..3 {
                edges.insert((tri[i], tri[(i + 1) % 3]), t);
            }
        }
        stack.extend([(a, d), (d, b), (b, c), (c, a)]);
    }
}

/// Vertex of a ccw triangle following the directed edge `(a, b)`.
fn third(tri: &[usize; 3], a: usize, b: usize) -> usize {
    for i in 0..3 {
        if tri[i] == a && tri[(i + 1) % 3] == b {
            return tri[(i + 2) % 3];
        }
    }
    unreachable!("edge ({a}, {b}) is not in {tri:?}")
}

/// Delaunay triangulation of a planar cloud; vertex `i` is point `i`.
/// Collinear input gives the path through the points in sorted order.
pub fn delaunay2d(cloud: &PointCloud) -> Result<SimplicialComplex> {
    if cloud.dim() != 2 {
        return Err(Error::PointCloud(format!("Delaunay needs planar points, got dimension {}", cloud.dim())));
    }
    let tri = triangulate(cloud.points());
    let mut x = SimplicialComplex::empty();
    for i in 0..cloud.len() {
        x.insert_with_faces(&Simplex::vertex(i as u32));
    }
    for w in tri.path.windows(2) {
        x.insert_with_faces(&Simplex::new([w[0] as u32, w[1] as u32]).expect("distinct"));
    }
    for t in &tri.triangles {
        x.insert_with_faces(&Simplex::new(t.iter().map(|&v| v as u32)).expect("distinct"));
    }
    Ok(x)
}
