//! Reproducible Monte Carlo estimators of `f(j, k, n)`.
//!
//! Sample `i` of a run with seed `s` draws everything from its own ChaCha8
//! stream: key derived from `s`, stream number `i`. Workers take contiguous
//! index ranges and only integer tallies are merged, so an estimate depends on
//! `(seed, samples)` and never on the worker count.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::formulas::{binomial, FaceQuery};
use crate::geometry::{
    canonical_face, face_hit, gaussian_hull_vertex_count, sample_subspace, section_polygon,
    FaceHit, DEFAULT_EPS,
};

/// Largest tolerated share of discarded samples.
pub const MAX_DISCARD_FRACTION: f64 = 1e-3;

/// Random stream of sample `index` in a run seeded with `seed`.
pub fn sample_stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Hit frequency of a canonical face, scaled by the number of faces.
    FaceHitLp,
    /// Vertex count of the exact planar section.
    PolygonExact,
    /// Vertex count of the symmetric Gaussian hull in the plane.
    GaussianHull,
}

impl Method {
    pub const ALL: [Method; 3] = [
        Method::FaceHitLp,
        Method::PolygonExact,
        Method::GaussianHull,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::FaceHitLp => "face_hit_lp",
            Method::PolygonExact => "polygon_exact",
            Method::GaussianHull => "gaussian_hull",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown method {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub query: FaceQuery,
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
    pub eps: f64,
    pub method: Method,
}

impl RunConfig {
    /// Face-hit run with one worker and the default slack.
    pub fn new(query: FaceQuery, samples: u64, seed: u64) -> Self {
        Self {
            query,
            samples,
            seed,
            workers: 1,
            eps: DEFAULT_EPS,
            method: Method::FaceHitLp,
        }
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::Config("samples must be positive".into()));
        }
        if self.workers == 0 {
            return Err(Error::Config("workers must be positive".into()));
        }
        if !(self.eps > 0.0 && self.eps.is_finite()) {
            return Err(Error::Config(format!(
                "eps = {} must be positive",
                self.eps
            )));
        }
        if self.method != Method::FaceHitLp && self.query.k() != 2 {
            return Err(Error::Config(format!(
                "method {} needs k = 2, got k = {}",
                self.method,
                self.query.k()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub std_error: f64,
    /// Samples that entered the mean.
    pub samples: u64,
    /// Samples excluded as numerically degenerate.
    pub discarded: u64,
    pub seed: u64,
    /// Frequency of each vertex count, for the polygon and hull methods.
    pub vertex_histogram: Option<BTreeMap<usize, u64>>,
}

impl Estimate {
    /// `|mean − target| / std_error`, infinite when the error is zero and the
    /// mean is off target.
    pub fn z_score(&self, target: f64) -> f64 {
        let diff = (self.mean - target).abs();
        if diff == 0.0 {
            0.0
        } else {
            diff / self.std_error
        }
    }
}

/// Integer tallies of a block of samples; merging is exact.
#[derive(Debug, Default)]
struct Tally {
    used: u64,
    discarded: u64,
    sum: u128,
    sum_sq: u128,
    histogram: BTreeMap<usize, u64>,
}

impl Tally {
    fn record(&mut self, value: u64) {
        self.used += 1;
        self.sum += u128::from(value);
        self.sum_sq += u128::from(value) * u128::from(value);
        *self.histogram.entry(value as usize).or_default() += 1;
    }

    fn merge(&mut self, other: Tally) {
        self.used += other.used;
        self.discarded += other.discarded;
        self.sum += other.sum;
        self.sum_sq += other.sum_sq;
        for (count, freq) in other.histogram {
            *self.histogram.entry(count).or_default() += freq;
        }
    }
}

/// What a single sample produced.
enum Outcome {
    Value(u64),
    Discard,
}

fn run<F>(cfg: &RunConfig, sample: F) -> Result<Tally>
where
    F: Fn(&mut ChaCha8Rng) -> Result<Outcome> + Sync,
{
    cfg.validate()?;
    let block = |lo: u64, hi: u64| -> Result<Tally> {
        let mut tally = Tally::default();
        for index in lo..hi {
            match sample(&mut sample_stream(cfg.seed, index))? {
                Outcome::Value(v) => tally.record(v),
                Outcome::Discard => tally.discarded += 1,
            }
        }
        Ok(tally)
    };

    let workers = (cfg.workers as u64).min(cfg.samples);
    let chunk = cfg.samples.div_ceil(workers);
    let parts: Vec<Result<Tally>> = if workers == 1 {
        vec![block(0, cfg.samples)]
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let (lo, hi) = (w * chunk, ((w + 1) * chunk).min(cfg.samples));
                    let block = &block;
                    scope.spawn(move || block(lo, hi))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("sampling worker panicked"))
                .collect()
        })
    };
    let mut total = Tally::default();
    for part in parts {
        total.merge(part?);
    }

    if total.discarded > 0 {
        log::warn!(
            "{} of {} samples discarded as degenerate (seed {})",
            total.discarded,
            cfg.samples,
            cfg.seed
        );
    }
    if total.discarded as f64 > MAX_DISCARD_FRACTION * cfg.samples as f64 || total.used == 0 {
        return Err(Error::DataQuality {
            discarded: total.discarded,
            requested: cfg.samples,
        });
    }
    Ok(total)
}

/// Exact `(N Σx² − (Σx)²) / (N (N − 1))` as a sample variance.
fn sample_variance(t: &Tally) -> f64 {
    if t.used < 2 {
        return 0.0;
    }
    let n = u128::from(t.used);
    let spread = n * t.sum_sq - t.sum * t.sum;
    spread as f64 / (t.used as f64 * (t.used - 1) as f64)
}

fn count_estimate(cfg: &RunConfig, t: Tally) -> Estimate {
    let used = t.used as f64;
    Estimate {
        mean: t.sum as f64 / used,
        std_error: (sample_variance(&t) / used).sqrt(),
        samples: t.used,
        discarded: t.discarded,
        seed: cfg.seed,
        vertex_histogram: Some(t.histogram),
    }
}

/// `2^{k−j} C(n, k−j) · P(X meets a fixed (n−k+j)-face)`, estimated from hit
/// frequencies with a binomial standard error.
pub fn estimate_face_count(cfg: &RunConfig) -> Result<Estimate> {
    expect_method(cfg, Method::FaceHitLp)?;
    let q = cfg.query;
    let (j, k, n) = (q.j() as usize, q.k() as usize, q.n() as usize);
    let face = canonical_face(j, k, n)?;
    let tally = run(cfg, |rng| {
        let basis = sample_subspace(n, k, rng)?;
        match face_hit(&basis, &face, cfg.eps) {
            Ok(FaceHit::Hit) => Ok(Outcome::Value(1)),
            Ok(FaceHit::Miss) => Ok(Outcome::Value(0)),
            Ok(FaceHit::Degenerate)
            | Err(Error::LpIterationLimit { .. })
            | Err(Error::Degenerate(_)) => Ok(Outcome::Discard),
            Err(e) => Err(e),
        }
    })?;

    let faces =
        binomial(u64::from(q.n()), u64::from(q.codim()))? as f64 * 2f64.powi(q.codim() as i32);
    let p = tally.sum as f64 / tally.used as f64;
    Ok(Estimate {
        mean: faces * p,
        std_error: faces * (p * (1.0 - p) / tally.used as f64).sqrt(),
        samples: tally.used,
        discarded: tally.discarded,
        seed: cfg.seed,
        vertex_histogram: None,
    })
}

fn expect_method(cfg: &RunConfig, method: Method) -> Result<()> {
    if cfg.method == method {
        Ok(())
    } else {
        Err(Error::Config(format!(
            "expected method {method}, got {}",
            cfg.method
        )))
    }
}

fn vertex_count_estimate<F>(cfg: &RunConfig, method: Method, count: F) -> Result<Estimate>
where
    F: Fn(&mut ChaCha8Rng) -> Result<usize> + Sync,
{
    expect_method(cfg, method)?;
    let tally = run(cfg, |rng| match count(rng) {
        Ok(c) => Ok(Outcome::Value(c as u64)),
        Err(Error::Degenerate(_)) => Ok(Outcome::Discard),
        Err(e) => Err(e),
    })?;
    Ok(count_estimate(cfg, tally))
}

/// Mean vertex count of exact planar sections; equals `f(0,2,n) = f(1,2,n)`.
pub fn estimate_polygon_fvector(cfg: &RunConfig) -> Result<Estimate> {
    let n = cfg.query.n() as usize;
    vertex_count_estimate(cfg, Method::PolygonExact, |rng| {
        let basis = sample_subspace(n, 2, rng)?;
        Ok(section_polygon(&basis, cfg.eps)?.vertex_count())
    })
}

/// Mean vertex count of the hull of `±G₁, …, ±G_n`; equals `f(0,2,n)`.
pub fn estimate_hull_fvector(cfg: &RunConfig) -> Result<Estimate> {
    let n = cfg.query.n() as usize;
    vertex_count_estimate(cfg, Method::GaussianHull, |rng| {
        gaussian_hull_vertex_count(n, rng)
    })
}

/// Runs the estimator selected by `cfg.method`.
pub fn estimate(cfg: &RunConfig) -> Result<Estimate> {
    match cfg.method {
        Method::FaceHitLp => estimate_face_count(cfg),
        Method::PolygonExact => estimate_polygon_fvector(cfg),
        Method::GaussianHull => estimate_hull_fvector(cfg),
    }
}
