//! Random subspaces and the geometry of their intersections with the cube.

mod face;
mod hull;
mod lp;
mod polygon;
mod section;
mod subspace;

pub use face::{canonical_face, face_hit, CubeFace, FaceHit, DEFAULT_EPS};
pub use hull::{convex_hull, gaussian_hull_vertex_count};
pub use lp::{min_max_violation, MaxViolationLp, PIVOT_TOL};
pub use polygon::{section_polygon, Polygon2D};
pub use section::{affine_section_gaussian_measure, lemma33_check, SectionMeasure};
pub use subspace::{sample_subspace, SubspaceBasis};
