use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

use super::polygon::cross;

/// Planar convex hull by Andrew's monotone chain, counter-clockwise from the
/// lowest-leftmost point. Collinear boundary points are dropped.
pub fn convex_hull(points: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let mut pts = points.to_vec();
    pts.sort_by(|p, q| p[0].total_cmp(&q[0]).then(p[1].total_cmp(&q[1])));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<[f64; 2]> = Vec::with_capacity(2 * pts.len());
    let chain = |hull: &mut Vec<[f64; 2]>, p: [f64; 2], floor: usize| {
        while hull.len() >= floor + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0
        {
            hull.pop();
        }
        hull.push(p);
    };
    for &p in &pts {
        chain(&mut hull, p, 0);
    }
    // the upper chain may not eat into the lower one
    let floor = hull.len() - 1;
    for &p in pts.iter().rev().skip(1) {
        chain(&mut hull, p, floor);
    }
    hull.pop();
    hull
}

/// Vertex count of the hull of `±G₁, …, ±G_n` for iid standard Gaussian `G_i`
/// in the plane.
pub fn gaussian_hull_vertex_count<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<usize> {
    if n < 2 {
        return Err(Error::domain("n", format!("need n ≥ 2, got {n}")));
    }
    for _ in 0..2 {
        let mut points = Vec::with_capacity(2 * n);
        for _ in 0..n {
            let g: [f64; 2] = [rng.sample(StandardNormal), rng.sample(StandardNormal)];
            points.push(g);
            points.push([-g[0], -g[1]]);
        }
        let count = convex_hull(&points).len();
        if count >= 4 && count.is_multiple_of(2) {
            return Ok(count);
        }
    }
    Err(Error::Degenerate(
        "symmetric Gaussian hull degenerate twice".into(),
    ))
}
