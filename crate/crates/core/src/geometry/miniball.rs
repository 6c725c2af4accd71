//! Smallest enclosing balls in any dimension (Welzl's move-to-front scheme).

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Ball {
    pub center: Vec<f64>,
    pub radius: f64,
}

impl Ball {
    /// Inside up to a relative slack.
    pub fn contains(&self, p: &[f64], rel_tol: f64) -> bool {
        dist(&self.center, p) <= self.radius * (1.0 + rel_tol) + 1e-300
    }
}

pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

const CONTAIN_TOL: f64 = 1e-12;

/// Smallest ball containing `points`. The returned radius is the largest
/// distance from the computed center to any input point, so every point is
/// inside by construction.
pub fn miniball(points: &[&[f64]]) -> Result<Ball> {
    let Some(first) = points.first() else {
        return Err(Error::EmptyPointSet);
    };
    let d = first.len();
    let mut pts: Vec<&[f64]> = points.to_vec();
    let mut support: Vec<&[f64]> = Vec::with_capacity(d + 1);
    let n = pts.len();
    let ball = welzl(&mut pts, n, &mut support, d);
    let radius = points.iter().map(|p| dist(&ball.center, p)).fold(0.0, f64::max);
    Ok(Ball {
        center: ball.center,
        radius,
    })
}

fn welzl<'a>(pts: &mut Vec<&'a [f64]>, n: usize, support: &mut Vec<&'a [f64]>, d: usize) -> Ball {
    if n == 0 || support.len() == d + 1 {
        return ball_on_support(support);
    }
    let p = pts[n - 1];
    let ball = welzl(pts, n - 1, support, d);
    if ball.contains(p, CONTAIN_TOL) {
        return ball;
    }
    support.push(p);
    let ball = welzl(pts, n - 1, support, d);
    support.pop();
    // move to front
    pts[..n].rotate_right(1);
    ball
}

/// Smallest ball with every support point on its boundary; falls back to
/// the best subset when the support is affinely dependent.
fn ball_on_support(support: &[&[f64]]) -> Ball {
    match support.len() {
        0 => Ball {
            center: Vec::new(),
            radius: -1.0,
        },
        1 => Ball {
            center: support[0].to_vec(),
            radius: 0.0,
        },
        _ => circumball(support).unwrap_or_else(|| best_subset_ball(support)),
    }
}

/// Ball through all points with its center in their affine hull, or `None`
/// when they are affinely dependent.
pub(crate) fn circumball(points: &[&[f64]]) -> Option<Ball> {
    let p0 = points[0];
    if points.len() == 1 {
        return Some(Ball {
            center: p0.to_vec(),
            radius: 0.0,
        });
    }
    let m = points.len() - 1;
    let u: Vec<Vec<f64>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect())
        .collect();
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let gram = DMatrix::from_fn(m, m, |i, j| 2.0 * dot(&u[i], &u[j]));
    let rhs = DVector::from_fn(m, |i, _| dot(&u[i], &u[i]));
    let lambda = gram.lu().solve(&rhs)?;
    if lambda.iter().any(|x| !x.is_finite()) {
        return None;
    }
    let mut center = p0.to_vec();
    for (i, ui) in u.iter().enumerate() {
        for (c, x) in center.iter_mut().zip(ui) {
            *c += lambda[i] * x;
        }
    }
    let radius = dist(&center, p0);
    let equidistant = points
        .iter()
        .all(|p| (dist(&center, p) - radius).abs() <= 1e-9 * radius.max(1.0));
    equidistant.then_some(Ball { center, radius })
}

fn best_subset_ball(points: &[&[f64]]) -> Ball {
    let n = points.len();
    let mut best: Option<Ball> = None;
    for mask in 1u32..(1 << n) {
        let subset: Vec<&[f64]> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| points[i]).collect();
        let Some(b) = circumball(&subset) else { continue };
        if points.iter().all(|p| b.contains(p, 1e-9)) && best.as_ref().is_none_or(|x| b.radius < x.radius) {
            best = Some(b);
        }
    }
    best.expect("a pair of farthest points always yields an enclosing ball")
}
