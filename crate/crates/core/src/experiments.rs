//! Random induced subdrawings and greedy removal audits.

use std::fmt::Write as _;

use num_traits::ToPrimitive;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{density_upper, naive_cr_lower, rational_density_upper, Affine, ConstantKind, KValue, Setting};
use crate::drawing::{compute_crossings, greedy_uncross_with, DrawnGraph, Removal};
use crate::error::{BoundsError, Degeneracy, DrawingError, ExperimentError};
use crate::rational::{q, Rational};

pub const RNG_ALGORITHM: &str = "chacha8/seed_from_u64/stream=trial";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SamplingConfig {
    pub p: Rational,
    pub trials: u64,
    pub seed: u64,
    /// Relative tolerance on the mean crossing count.
    pub crossing_tolerance: Rational,
    /// Relative tolerance on the mean vertex and edge counts.
    pub count_tolerance: Rational,
    /// Keep per-trial rows for [`SamplingReport::to_csv`].
    pub keep_trials: bool,
    /// Worker threads; `None` uses the available parallelism.
    pub threads: Option<usize>,
}

impl SamplingConfig {
    pub fn new(p: Rational, trials: u64, seed: u64) -> SamplingConfig {
        SamplingConfig {
            p,
            trials,
            seed,
            crossing_tolerance: q(5, 100),
            count_tolerance: q(1, 100),
            keep_trials: false,
            threads: None,
        }
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        if !self.p.is_positive() || self.p > q(1, 1) {
            return Err(ExperimentError::InvalidConfig(format!("p = {} is outside (0, 1]", self.p)));
        }
        if self.trials == 0 {
            return Err(ExperimentError::InvalidConfig("trials must be positive".into()));
        }
        if self.p.denom().to_u64().is_none() {
            return Err(ExperimentError::InvalidConfig("denominator of p must fit in 64 bits".into()));
        }
        if self.crossing_tolerance.is_negative() || self.count_tolerance.is_negative() {
            return Err(ExperimentError::InvalidConfig("tolerances must be nonnegative".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TrialRow {
    pub trial: u64,
    pub vertices: u64,
    pub edges: u64,
    pub crossings: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Statistic {
    pub mean: Rational,
    pub expected: Rational,
    /// `|mean - expected| / expected`, or `None` when `expected` is zero.
    pub relative_error: Option<Rational>,
    pub tolerance: Rational,
    pub within_tolerance: bool,
}

impl Statistic {
    fn new(sum: u128, trials: u64, expected: Rational, tolerance: &Rational) -> Statistic {
        let mean = Rational::from_bigs(sum.into(), trials.into());
        let relative_error = (!expected.is_zero()).then(|| (&mean - &expected).abs() / &expected);
        let within_tolerance = match &relative_error {
            Some(e) => e <= tolerance,
            None => mean.is_zero(),
        };
        Statistic { mean, expected, relative_error, tolerance: tolerance.clone(), within_tolerance }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SamplingReport {
    pub algorithm: &'static str,
    pub p: Rational,
    pub trials: u64,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub crossings: usize,
    pub vertices: Statistic,
    pub edges: Statistic,
    pub crossing_count: Statistic,
    pub pass: bool,
    #[serde(skip)]
    pub rows: Vec<TrialRow>,
}

impl SamplingReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("trial,vertices,edges,crossings\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{},{}", r.trial, r.vertices, r.edges, r.crossings);
        }
        out
    }
}

/// Uniform draw below `bound` by rejection, so every residue is equally likely.
fn below(rng: &mut ChaCha8Rng, bound: u64) -> u64 {
    let zone = u64::MAX - u64::MAX % bound;
    loop {
        let x = rng.next_u64();
        if x < zone {
            return x % bound;
        }
    }
}

struct Sampler {
    num: u64,
    den: u64,
    seed: u64,
    n: usize,
    edges: Vec<(usize, usize)>,
    crossings: Vec<[usize; 4]>,
}

impl Sampler {
    fn trial(&self, t: u64, keep: &mut Vec<bool>) -> TrialRow {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(t);
        keep.clear();
        keep.extend((0..self.n).map(|_| self.num == self.den || below(&mut rng, self.den) < self.num));
        let vertices = keep.iter().filter(|&&k| k).count() as u64;
        let edges = self.edges.iter().filter(|&&(u, v)| keep[u] && keep[v]).count() as u64;
        let crossings = self.crossings.iter().filter(|c| c.iter().all(|&v| keep[v])).count() as u64;
        TrialRow { trial: t, vertices, edges, crossings }
    }
}

fn worker_count(cfg: &SamplingConfig) -> usize {
    let avail = std::thread::available_parallelism().map_or(1, |n| n.get());
    cfg.threads.unwrap_or(avail).clamp(1, cfg.trials.min(1024) as usize)
}

/// Keeps each vertex independently with probability `p` and counts what survives.
pub fn sample_induced(d: &DrawnGraph, cfg: &SamplingConfig) -> Result<SamplingReport, ExperimentError> {
    cfg.validate()?;
    let crossings = compute_crossings(d).map_err(|e| match e {
        DrawingError::Degenerate(Degeneracy::AdjacentCrossing(a, b)) => ExperimentError::AdjacentCrossingPresent(a, b),
        other => ExperimentError::Drawing(other),
    })?;
    let sampler = Sampler {
        num: cfg.p.numer().to_u64().expect("validated"),
        den: cfg.p.denom().to_u64().expect("validated"),
        seed: cfg.seed,
        n: d.n(),
        edges: d.edges().to_vec(),
        crossings: crossings
            .iter()
            .map(|c| {
                let (a, b) = d.edge(c.edge_a);
                let (x, y) = d.edge(c.edge_b);
                [a, b, x, y]
            })
            .collect(),
    };
    let workers = worker_count(cfg) as u64;
    let chunk = cfg.trials.div_ceil(workers);
    let parts: Vec<([u128; 3], Vec<TrialRow>)> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let sampler = &sampler;
                let range = (w * chunk)..((w + 1) * chunk).min(cfg.trials);
                s.spawn(move || {
                    let mut sums = [0u128; 3];
                    let mut rows = Vec::new();
                    let mut keep = Vec::with_capacity(sampler.n);
                    for t in range {
                        let r = sampler.trial(t, &mut keep);
                        sums[0] += r.vertices as u128;
                        sums[1] += r.edges as u128;
                        sums[2] += r.crossings as u128;
                        if cfg.keep_trials {
                            rows.push(r);
                        }
                    }
                    (sums, rows)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("sampling worker panicked")).collect()
    });
    let mut sums = [0u128; 3];
    let mut rows = Vec::new();
    for (s, r) in parts {
        (0..3).for_each(|i| sums[i] += s[i]);
        rows.extend(r);
    }
    let p = &cfg.p;
    let vertices = Statistic::new(sums[0], cfg.trials, p * Rational::from(d.n()), &cfg.count_tolerance);
    let edges = Statistic::new(sums[1], cfg.trials, p.pow(2) * Rational::from(d.m()), &cfg.count_tolerance);
    let crossing_count = Statistic::new(sums[2], cfg.trials, p.pow(4) * Rational::from(crossings.len()), &cfg.crossing_tolerance);
    let pass = vertices.within_tolerance && edges.within_tolerance && crossing_count.within_tolerance;
    Ok(SamplingReport {
        algorithm: RNG_ALGORITHM,
        p: p.clone(),
        trials: cfg.trials,
        seed: cfg.seed,
        n: d.n(),
        m: d.m(),
        crossings: crossings.len(),
        vertices,
        edges,
        crossing_count,
        pass,
        rows,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OptimalP {
    /// `3bn / (2am)`
    pub raw: Rational,
    /// `min(raw, 1)`
    pub p: Rational,
    /// Set when `raw > 1`, where the lemma does not apply.
    pub clamped: bool,
}

pub fn optimal_p(a: &Rational, b: &Rational, n: &Rational, m: &Rational) -> Result<OptimalP, ExperimentError> {
    if [a, b, n, m].iter().any(|x| !x.is_positive()) {
        return Err(ExperimentError::InvalidConfig("a, b, n and m must be positive".into()));
    }
    let raw = q(3, 1) * b * n / (q(2, 1) * a * m);
    let clamped = raw > q(1, 1);
    let p = if clamped { q(1, 1) } else { raw.clone() };
    Ok(OptimalP { raw, p, clamped })
}

/// `mu_0 .. mu_(k-1)` for a setting; irrational entries use the upper end of
/// their certified enclosure, which keeps the resulting lower bound valid.
pub fn audit_mu_list(setting: Setting, k: u32) -> Result<Vec<Affine>, BoundsError> {
    (0..k)
        .map(|i| {
            if let Ok((a, _)) = rational_density_upper(setting, i) {
                return Ok(a);
            }
            match density_upper(setting, KValue::Fixed(i))?.kind {
                ConstantKind::Root { enclosure, .. } => Ok(Affine::linear(enclosure.hi)),
                _ => Err(BoundsError::Unavailable(format!("no usable mu_{i} for {setting}"))),
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub k: usize,
    pub n: usize,
    pub m: usize,
    pub mu: Vec<String>,
    pub trace: Vec<Removal>,
    pub trace_total: usize,
    /// `k m - sum mu_i(n)`
    pub bound: Rational,
    pub pass: bool,
}

/// Runs the greedy uncrossing and compares its total with `k m - sum mu_i(n)`.
pub fn removal_audit(d: &DrawnGraph, k: usize, mu: &[Affine]) -> Result<AuditReport, ExperimentError> {
    if k == 0 || mu.len() < k {
        return Err(ExperimentError::InvalidConfig(format!("need {k} mu entries, got {}", mu.len())));
    }
    let crossings = compute_crossings(d)?;
    let trace = greedy_uncross_with(d.m(), &crossings);
    let trace_total = trace.iter().map(|r| r.count).sum();
    let bound = naive_cr_lower(k, mu, &Rational::from(d.n()), &Rational::from(d.m()));
    Ok(AuditReport {
        k,
        n: d.n(),
        m: d.m(),
        mu: mu[..k].iter().map(|a| a.to_string()).collect(),
        pass: Rational::from(trace_total) >= bound,
        trace,
        trace_total,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::fixtures::*;

    #[test]
    fn full_probability_is_exact() {
        let d = k4_crossed();
        let r = sample_induced(&d, &SamplingConfig::new(q(1, 1), 50, 7)).unwrap();
        assert_eq!(r.vertices.mean, q(4, 1));
        assert_eq!(r.edges.mean, q(6, 1));
        assert_eq!(r.crossing_count.mean, q(1, 1));
        assert!(r.pass);
    }

    #[test]
    fn half_probability_expectations() {
        let r = sample_induced(&k4_crossed(), &SamplingConfig::new(q(1, 2), 10, 1)).unwrap();
        assert_eq!(r.crossing_count.expected, q(1, 16));
        assert_eq!(r.edges.expected, q(6, 4));
    }

    #[test]
    fn schedule_does_not_change_results() {
        let d = hex_cell();
        let mut cfg = SamplingConfig::new(q(2, 3), 500, 99);
        cfg.keep_trials = true;
        cfg.threads = Some(1);
        let a = sample_induced(&d, &cfg).unwrap();
        cfg.threads = Some(7);
        let b = sample_induced(&d, &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_csv().lines().count(), 501);
    }

    #[test]
    fn bad_configs() {
        let d = triangle();
        assert!(sample_induced(&d, &SamplingConfig::new(q(0, 1), 5, 0)).is_err());
        assert!(sample_induced(&d, &SamplingConfig::new(q(3, 2), 5, 0)).is_err());
        assert!(sample_induced(&d, &SamplingConfig::new(q(1, 2), 0, 0)).is_err());
    }

    #[test]
    fn optimal_p_cases() {
        let n = q(56, 1);
        let r = optimal_p(&q(2, 1), &q(65, 14), &n, &q(195, 1)).unwrap();
        assert_eq!(r.p, q(1, 1));
        assert!(!r.clamped);
        let r = optimal_p(&q(3, 1), &q(9, 1), &q(10, 1), &q(90, 1)).unwrap();
        assert_eq!(r.p, q(1, 2));
        let r = optimal_p(&q(3, 1), &q(9, 1), &q(10, 1), &q(20, 1)).unwrap();
        assert!(r.clamped);
        assert_eq!(r.p, q(1, 1));
    }

    #[test]
    fn plane_audit_is_trivial() {
        let mu = audit_mu_list(Setting::Unrestricted, 1).unwrap();
        let r = removal_audit(&triangle(), 1, &mu).unwrap();
        assert_eq!(r.trace_total, 0);
        assert!(r.bound <= Rational::zero());
        assert!(r.pass);
    }

    #[test]
    fn girth5_mu_list_uses_enclosure() {
        let mu = audit_mu_list(Setting::Girth5, 3).unwrap();
        assert_eq!(mu[1].slope, q(12, 5));
        assert!(mu[2].slope > q(3596, 1000) && mu[2].slope <= q(3597, 1000));
    }
}
