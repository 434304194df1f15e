use crate::error::{Error, Result};

use super::subspace::SubspaceBasis;

/// Convex polygon with vertices in counter-clockwise order.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon2D {
    vertices: Vec<[f64; 2]>,
}

impl Polygon2D {
    pub fn vertices(&self) -> &[[f64; 2]] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Every vertex has its negative among the vertices, within `tol`.
    pub fn is_centrally_symmetric(&self, tol: f64) -> bool {
        self.vertices.iter().all(|v| {
            self.vertices
                .iter()
                .any(|w| (v[0] + w[0]).abs() <= tol && (v[1] + w[1]).abs() <= tol)
        })
    }

    /// Strictly left turns all the way round.
    pub fn is_convex_ccw(&self) -> bool {
        let m = self.vertices.len();
        m >= 3
            && (0..m).all(|i| {
                let (a, b, c) = (
                    self.vertices[i],
                    self.vertices[(i + 1) % m],
                    self.vertices[(i + 2) % m],
                );
                cross(a, b, c) > 0.0
            })
    }
}

pub(crate) fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Exact section `{c ∈ ℝ² : |⟨r_i, c⟩| ≤ 1}` of the cube by a plane, where the
/// `r_i` are the rows of a two-column basis.
///
/// Vertices are found among all pairwise intersections of the `2n` boundary
/// lines (`O(n³)` overall), kept when they satisfy every constraint within
/// `eps`, merged at relative distance `1e−9` and sorted by angle.
pub fn section_polygon(basis: &SubspaceBasis, eps: f64) -> Result<Polygon2D> {
    if basis.dim() != 2 {
        return Err(Error::domain(
            "basis",
            format!("need a plane, got dimension {}", basis.dim()),
        ));
    }
    let n = basis.ambient_dim();
    let all: Vec<[f64; 2]> = (0..n).map(|i| [basis.row(i)[0], basis.row(i)[1]]).collect();
    let scale = all.iter().map(|r| r[0].hypot(r[1])).fold(0.0, f64::max);
    // a zero row constrains nothing
    let rows: Vec<[f64; 2]> = all
        .into_iter()
        .filter(|r| r[0].hypot(r[1]) > 1e-14 * scale)
        .collect();
    let n = rows.len();
    if n < 2 {
        return Err(Error::Degenerate(
            "fewer than two nonzero rows: section is unbounded".into(),
        ));
    }

    let feasible = |c: [f64; 2]| {
        rows.iter()
            .all(|r| (r[0] * c[0] + r[1] * c[1]).abs() <= 1.0 + eps)
    };
    let mut points: Vec<[f64; 2]> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let (a, b) = (rows[i], rows[j]);
            let det = a[0] * b[1] - a[1] * b[0];
            if det.abs() <= 1e-14 * a[0].hypot(a[1]) * b[0].hypot(b[1]) {
                continue;
            }
            // the sign pairs (−si, −sj) give the reflected points, so only
            // si = +1 is solved and the negative is added alongside
            for sj in [1.0, -1.0] {
                let c = [(b[1] - sj * a[1]) / det, (sj * a[0] - b[0]) / det];
                if feasible(c) {
                    points.push(c);
                    points.push([-c[0], -c[1]]);
                }
            }
        }
    }

    points.sort_by(|p, q| p[1].atan2(p[0]).total_cmp(&q[1].atan2(q[0])));
    let mut vertices: Vec<[f64; 2]> = Vec::with_capacity(points.len());
    for p in points {
        let close = |q: &[f64; 2]| {
            let d = (p[0] - q[0]).hypot(p[1] - q[1]);
            d <= 1e-9 * p[0].hypot(p[1]).max(1.0)
        };
        if !vertices.iter().any(close) {
            vertices.push(p);
        }
    }

    let m = vertices.len();
    if m < 4 || !m.is_multiple_of(2) {
        return Err(Error::Degenerate(format!(
            "section polygon has {m} vertices"
        )));
    }
    Ok(Polygon2D { vertices })
}
