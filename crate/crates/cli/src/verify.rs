//! Consistency checks between formulas, quadrature and simulation.
//!
//! Reference values are computed here from elementary constants, not from the
//! library, so a deliberately perturbed constant makes the affected checks fail.

use std::f64::consts::PI;

use cubesect::analysis::{cube_gauss_integral, gumbel_limit_check, integral_asymptotic};
use cubesect::formulas::{f0_exact, face_bounds};
use cubesect::geometry::lemma33_check;
use cubesect::montecarlo::{estimate, sample_stream};
use cubesect::{Estimate, FaceQuery, Method, Result, RunConfig};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    /// Reduced sample sizes, a few seconds on one core.
    Quick,
    /// Acceptance-scale sample sizes plus the extreme-value and shifted-section checks.
    Full,
}

#[derive(Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    /// Largest z-score among the statistical comparisons of the check.
    pub max_z: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub level: Level,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn failed(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.to_string())
            .collect()
    }
}

/// Constants the reference values are built from.
struct Reference {
    pi: f64,
}

impl Reference {
    fn codim1_closed_form(&self, n: u32) -> f64 {
        let nf = f64::from(n);
        2f64.powi(n as i32) * nf / self.pi * (1.0 / (nf - 1.0).sqrt()).atan()
    }

    fn sqrt_half_pi(&self) -> f64 {
        (self.pi / 2.0).sqrt()
    }
}

struct Suite {
    level: Level,
    seed: u64,
    workers: usize,
    reference: Reference,
}

/// Outcome of one check before it is named.
struct Verdict {
    passed: bool,
    detail: String,
    max_z: Option<f64>,
}

fn combined_z(a: &Estimate, b_mean: f64, b_se: f64) -> f64 {
    let diff = (a.mean - b_mean).abs();
    let se = a.std_error.hypot(b_se);
    if diff == 0.0 {
        0.0
    } else {
        diff / se
    }
}

impl Suite {
    fn samples(&self, quick: u64, full: u64) -> u64 {
        match self.level {
            Level::Quick => quick,
            Level::Full => full,
        }
    }

    fn run_cfg(
        &self,
        query: FaceQuery,
        samples: u64,
        seed: u64,
        method: Method,
    ) -> Result<Estimate> {
        estimate(
            &RunConfig::new(query, samples, seed)
                .with_method(method)
                .with_workers(self.workers),
        )
    }

    fn closed_form(&self) -> Result<Verdict> {
        let mut worst = 0.0f64;
        for n in 3..=12 {
            let quad = f0_exact(n - 1, n, 1e-11)?;
            worst = worst.max((quad - self.reference.codim1_closed_form(n)).abs());
        }
        Ok(Verdict {
            passed: worst <= 1e-8,
            detail: format!(
                "max |quadrature − closed form| over n = 3..12 is {worst:e} (limit 1e-8)"
            ),
            max_z: None,
        })
    }

    fn reference_value(&self) -> Result<Verdict> {
        let v = f0_exact(2, 3, 1e-12)?;
        Ok(Verdict {
            passed: (v - 4.7016).abs() <= 1e-3,
            detail: format!("f(0,2,3) = {v} (expected 4.7016 ± 1e-3)"),
            max_z: None,
        })
    }

    fn line_identity(&self) -> Result<Verdict> {
        let mut worst = 0.0f64;
        for m in 0..=200u64 {
            let i = cube_gauss_integral(1.0, m, 1e-13)?.value;
            worst = worst.max((i * (m + 1) as f64 - self.reference.sqrt_half_pi()).abs());
        }
        Ok(Verdict {
            passed: worst <= 1e-9,
            detail: format!("max |I(1,m)(m+1) − √(π/2)| over m = 0..200 is {worst:e} (limit 1e-9)"),
            max_z: None,
        })
    }

    fn concordance(&self) -> Result<Verdict> {
        let samples = self.samples(20_000, 100_000);
        let mut max_z = 0.0f64;
        let mut notes = Vec::new();
        for n in [3u32, 5, 10] {
            let q = FaceQuery::new(0, 2, n)?;
            let exact = f0_exact(2, n, 1e-12)?;
            let estimates = [
                self.run_cfg(q, samples, self.seed, Method::FaceHitLp)?,
                self.run_cfg(q, samples, self.seed.wrapping_add(1), Method::PolygonExact)?,
                self.run_cfg(q, samples, self.seed.wrapping_add(2), Method::GaussianHull)?,
            ];
            for (i, a) in estimates.iter().enumerate() {
                max_z = max_z.max(combined_z(a, exact, 0.0));
                for b in &estimates[i + 1..] {
                    max_z = max_z.max(combined_z(a, b.mean, b.std_error));
                }
            }
            notes.push(format!(
                "n={n}: quadrature {exact:.5}, face hits {:.5}, polygons {:.5}, hulls {:.5}",
                estimates[0].mean, estimates[1].mean, estimates[2].mean
            ));
        }
        Ok(Verdict {
            passed: max_z <= 3.0,
            detail: notes.join("; "),
            max_z: Some(max_z),
        })
    }

    fn vertex_floor(&self) -> Result<Verdict> {
        let samples = self.samples(10_000, 100_000);
        let mut fewest = usize::MAX;
        for n in [3u32, 10, 50] {
            let e = self.run_cfg(
                FaceQuery::new(0, 2, n)?,
                samples,
                self.seed,
                Method::PolygonExact,
            )?;
            let h = e.vertex_histogram.unwrap_or_default();
            fewest = fewest.min(h.keys().next().copied().unwrap_or(0));
        }
        Ok(Verdict {
            passed: fewest >= 4,
            detail: format!("fewest polygon vertices over n ∈ {{3, 10, 50}}: {fewest}"),
            max_z: None,
        })
    }

    fn sandwich(&self) -> Result<Verdict> {
        let (samples, max_n) = match self.level {
            Level::Quick => (5_000, 6),
            Level::Full => (100_000, 8),
        };
        let mut max_z = 0.0f64;
        let mut violations = Vec::new();
        let mut count = 0;
        for n in 3..=max_n {
            for k in 2..n {
                for j in 1..k {
                    let q = FaceQuery::new(j, k, n)?;
                    let b = face_bounds(q, 1e-10)?;
                    let e = self.run_cfg(q, samples, self.seed, Method::FaceHitLp)?;
                    count += 1;
                    let below = (b.lower - e.mean).max(0.0);
                    let above = (e.mean - b.upper).max(0.0);
                    let excess = below.max(above);
                    if excess > 0.0 {
                        let z = if e.std_error > 0.0 {
                            excess / e.std_error
                        } else {
                            f64::INFINITY
                        };
                        max_z = max_z.max(z);
                        if z > 3.0 {
                            violations.push(format!("({j},{k},{n})"));
                        }
                    }
                }
            }
        }
        Ok(Verdict {
            passed: violations.is_empty(),
            detail: format!(
                "{count} configurations with n ≤ {max_n}; outside [lower − 3σ, upper + 3σ]: {}",
                if violations.is_empty() {
                    "none".into()
                } else {
                    violations.join(" ")
                }
            ),
            max_z: Some(max_z),
        })
    }

    fn codim_trend(&self) -> Result<Verdict> {
        let samples = self.samples(20_000, 100_000);
        let mut ratios = Vec::new();
        for n in [6u32, 10, 14] {
            let e = self.run_cfg(
                FaceQuery::new(n - 2, n - 1, n)?,
                samples,
                self.seed,
                Method::FaceHitLp,
            )?;
            ratios.push(e.mean / (2.0 * f64::from(n)));
        }
        let monotone = ratios.windows(2).all(|w| w[0] <= w[1]) && ratios[0] < ratios[2];
        Ok(Verdict {
            passed: monotone && ratios[2] > 0.8 && ratios[2] <= 1.0,
            detail: format!("f(n−2,n−1,n)/(2n) at n = 6, 10, 14: {ratios:?}"),
            max_z: None,
        })
    }

    fn parallelograms(&self) -> Result<Verdict> {
        let samples = self.samples(100_000, 1_000_000);
        let e = self.run_cfg(
            FaceQuery::new(0, 2, 3)?,
            samples,
            self.seed,
            Method::GaussianHull,
        )?;
        let h = e.vertex_histogram.clone().unwrap_or_default();
        let total = e.samples as f64;
        let p4 = h.get(&4).copied().unwrap_or(0) as f64 / total;
        let p6 = h.get(&6).copied().unwrap_or(0) as f64 / total;
        // four and six are the only generic counts, so P4 − P6 = 1 − 2 P6
        let z_gap = (p4 - p6) / (2.0 * (p6 * (1.0 - p6) / total).sqrt());
        let z_mean = e.z_score(4.7016);
        Ok(Verdict {
            passed: z_gap > 5.0 && z_mean <= 3.0,
            detail: format!(
                "P(4) = {p4:.5}, P(6) = {p6:.5}, gap z = {z_gap:.1}; mean {:.5} ± {:.5}",
                e.mean, e.std_error
            ),
            max_z: Some(z_mean),
        })
    }

    fn shifted_sections(&self) -> Result<Verdict> {
        use rand::Rng;
        let trials = self.samples(20_000, 100_000);
        let mut max_z = f64::NEG_INFINITY;
        let mut failures = Vec::new();
        for i in 0..20u64 {
            let mut rng = sample_stream(self.seed, i);
            let j = rng.random_range(1..=2usize);
            let m = rng.random_range(j + 1..=6);
            let tau = [0.5, 1.0, 2.0][rng.random_range(0..3usize)];
            let r = lemma33_check(m, j, tau, &mut rng, trials)?;
            if r.lhs_std_error > 0.0 {
                max_z = max_z.max((r.lhs_estimate - r.rhs) / r.lhs_std_error);
            }
            if !r.holds_within(3.0) {
                failures.push(format!("(m={m}, j={j}, τ={tau})"));
            }
        }
        Ok(Verdict {
            passed: failures.is_empty(),
            detail: format!(
                "20 random configurations, {trials} trials each; violations: {}",
                if failures.is_empty() {
                    "none".into()
                } else {
                    failures.join(" ")
                }
            ),
            max_z: Some(max_z.max(0.0)),
        })
    }

    fn gumbel(&self) -> Result<Verdict> {
        let mut ok = true;
        let mut cells = Vec::new();
        for x in [-1.0, 0.0, 1.0, 2.0] {
            let big = gumbel_limit_check(1_000_000, x)?;
            let small = gumbel_limit_check(1_000, x)?;
            ok &= big < 0.02 && big < small;
            cells.push(format!("x={x}: {small:.4} → {big:.4}"));
        }
        Ok(Verdict {
            passed: ok,
            detail: format!(
                "deviation from exp(−e^(−x)) at n = 10³ → 10⁶: {}",
                cells.join(", ")
            ),
            max_z: None,
        })
    }

    fn integral_asymptotics(&self) -> Result<Verdict> {
        let ratio = |m: u64| -> Result<f64> {
            Ok(cube_gauss_integral(2.0, m, 1e-14)?.value / integral_asymptotic(2.0, m)?)
        };
        let (r3, r5) = (ratio(1_000)?, ratio(100_000)?);
        Ok(Verdict {
            passed: (r5 - 1.0).abs() < 0.15 && (r5 - 1.0).abs() < (r3 - 1.0).abs(),
            detail: format!("I(2,m)/asymptotic: {r3:.4} at m = 10³, {r5:.4} at m = 10⁵"),
            max_z: None,
        })
    }

    fn reproducibility(&self) -> Result<Verdict> {
        let samples = self.samples(5_000, 20_000);
        let cfg = RunConfig::new(FaceQuery::new(1, 3, 6)?, samples, self.seed);
        let base = estimate(&cfg)?;
        let mut same = true;
        for w in [4, 8] {
            same &= estimate(&cfg.clone().with_workers(w))? == base;
        }
        Ok(Verdict {
            passed: same,
            detail: format!(
                "estimate of f(1,3,6) with 1, 4 and 8 workers: {}",
                if same { "identical" } else { "differs" }
            ),
            max_z: None,
        })
    }
}

/// Runs every check of `level` and collects the results.
pub fn run(level: Level, seed: u64, workers: usize, inject_fault: bool) -> Report {
    let suite = Suite {
        level,
        seed,
        workers,
        reference: Reference {
            pi: if inject_fault { PI * (1.0 + 1e-5) } else { PI },
        },
    };
    type Check = fn(&Suite) -> Result<Verdict>;
    let mut checks: Vec<(&'static str, Check)> = vec![
        ("codim1_closed_form", Suite::closed_form),
        ("f023_reference_value", Suite::reference_value),
        ("line_section_identity", Suite::line_identity),
        ("estimator_concordance", Suite::concordance),
        ("vertex_floor", Suite::vertex_floor),
        ("bound_sandwich", Suite::sandwich),
        ("codim_trend", Suite::codim_trend),
        ("parallelogram_vs_hexagon", Suite::parallelograms),
        ("integral_asymptotics", Suite::integral_asymptotics),
        ("worker_reproducibility", Suite::reproducibility),
    ];
    if level == Level::Full {
        checks.push(("shifted_section_measure", Suite::shifted_sections));
        checks.push(("gumbel_convergence", Suite::gumbel));
    }

    let results: Vec<CheckResult> = checks
        .into_iter()
        .map(|(name, check)| {
            log::info!("running {name}");
            match check(&suite) {
                Ok(v) => CheckResult {
                    name,
                    passed: v.passed,
                    detail: v.detail,
                    max_z: v.max_z,
                },
                Err(e) => CheckResult {
                    name,
                    passed: false,
                    detail: format!("error: {e}"),
                    max_z: None,
                },
            }
        })
        .collect();
    Report {
        level,
        seed,
        passed: results.iter().all(|c| c.passed),
        checks: results,
    }
}
