//! Cross-checks between the Monte Carlo estimators and the formulas.

use cubesect::formulas::{f0_exact, face_bounds};
use cubesect::montecarlo::estimate;
use cubesect::{FaceQuery, Method, RunConfig};

fn cfg(j: u32, k: u32, n: u32, samples: u64, seed: u64, method: Method) -> RunConfig {
    RunConfig::new(FaceQuery::new(j, k, n).unwrap(), samples, seed)
        .with_method(method)
        .with_workers(2)
}

#[test]
fn vertex_estimator_matches_quadrature() {
    for n in 3..=8u32 {
        for k in 1..n {
            let e = estimate(&cfg(
                0,
                k,
                n,
                100_000,
                100 + u64::from(n),
                Method::FaceHitLp,
            ))
            .unwrap();
            let exact = f0_exact(k, n, 1e-10).unwrap();
            assert!(
                e.z_score(exact) < 3.0,
                "k={k} n={n}: {} ± {} vs {exact}",
                e.mean,
                e.std_error
            );
            assert_eq!(e.discarded, 0);
        }
    }
}

#[test]
fn polygon_edges_match_facet_hits() {
    // for polygons edges = vertices, and edges are the f(1, 2, n) faces
    for n in [3u32, 6, 12] {
        let hits = estimate(&cfg(1, 2, n, 40_000, 5, Method::FaceHitLp)).unwrap();
        let poly = estimate(&cfg(1, 2, n, 40_000, 6, Method::PolygonExact)).unwrap();
        let z = (hits.mean - poly.mean).abs() / hits.std_error.hypot(poly.std_error);
        assert!(z < 3.0, "n={n}: {} vs {}", hits.mean, poly.mean);
    }
}

#[test]
fn hull_and_polygon_agree_at_fifty() {
    let hull = estimate(&cfg(0, 2, 50, 20_000, 8, Method::GaussianHull)).unwrap();
    let poly = estimate(&cfg(0, 2, 50, 20_000, 9, Method::PolygonExact)).unwrap();
    let z = (hull.mean - poly.mean).abs() / hull.std_error.hypot(poly.std_error);
    assert!(z < 3.0, "{} vs {}", hull.mean, poly.mean);
    let exact = f0_exact(2, 50, 1e-10).unwrap();
    assert!(hull.z_score(exact) < 3.0 && poly.z_score(exact) < 3.0);
    // every section keeps the square's four vertices at least
    assert!(*poly.vertex_histogram.unwrap().keys().next().unwrap() >= 4);
}

#[test]
fn codimension_two_sandwich() {
    // f(2, 3, 4): between f_lower_bound and 2n = 8
    let q = FaceQuery::new(2, 3, 4).unwrap();
    let b = face_bounds(q, 1e-10).unwrap();
    assert_eq!(b.upper, 8.0);
    let e = estimate(&cfg(2, 3, 4, 20_000, 3, Method::FaceHitLp)).unwrap();
    assert!(e.mean <= b.upper + 3.0 * e.std_error);
    assert!(e.mean >= b.lower - 3.0 * e.std_error);
}
