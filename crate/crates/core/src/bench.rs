//! Synthetic curves and the timing harness.
//!
//! Curves come from ChaCha8 seeded with `seed` through
//! `rand_chacha::ChaCha8Rng::seed_from_u64`. Uniform reals are drawn as
//! `(next_u64() >> 11) * 2^-53`, one per random quantity, in point order.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::Serialize;

use crate::algorithms::{closed_distance_with, Algorithm};
use crate::error::{FrechetError, Result};
use crate::fmt::format_g17;
use crate::instrument::Counters;
use crate::metric::{Metric, PointSeq};

pub const CSV_HEADER: [&str; 11] = [
    "algorithm",
    "m",
    "n",
    "seed",
    "rep",
    "wall_ns",
    "delete_calls",
    "test_calls",
    "key_comparisons",
    "epochs",
    "result",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    /// Evenly spaced points on the unit circle, starting at (1, 0).
    Circle,
    /// Starts at the origin; each further point adds a unit step in a
    /// uniformly random direction.
    RandomWalk,
    /// Regular polygon on the unit circle with each radius jittered
    /// uniformly within ±0.1.
    NoisyPolygon,
}

impl CurveKind {
    pub fn id(&self) -> &'static str {
        match self {
            CurveKind::Circle => "circle",
            CurveKind::RandomWalk => "random-walk",
            CurveKind::NoisyPolygon => "noisy-polygon",
        }
    }
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for CurveKind {
    type Err = FrechetError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "circle" => Ok(CurveKind::Circle),
            "random-walk" => Ok(CurveKind::RandomWalk),
            "noisy-polygon" => Ok(CurveKind::NoisyPolygon),
            _ => Err(FrechetError::Unknown {
                what: "curve kind",
                name: s.to_string(),
            }),
        }
    }
}

fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Deterministic synthetic planar curve.
pub fn gen_curve(kind: CurveKind, count: usize, seed: u64) -> Result<PointSeq> {
    if count == 0 {
        return Err(FrechetError::EmptySequence);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tau = std::f64::consts::TAU;
    let mut coords = Vec::with_capacity(2 * count);
    match kind {
        CurveKind::Circle => {
            for k in 0..count {
                let t = tau * k as f64 / count as f64;
                coords.extend([t.cos(), t.sin()]);
            }
        }
        CurveKind::RandomWalk => {
            let (mut x, mut y) = (0.0, 0.0);
            coords.extend([x, y]);
            for _ in 1..count {
                let t = tau * uniform(&mut rng);
                x += t.cos();
                y += t.sin();
                coords.extend([x, y]);
            }
        }
        CurveKind::NoisyPolygon => {
            for k in 0..count {
                let t = tau * k as f64 / count as f64;
                let r = 1.0 + 0.1 * (2.0 * uniform(&mut rng) - 1.0);
                coords.extend([r * t.cos(), r * t.sin()]);
            }
        }
    }
    PointSeq::from_flat(2, coords)
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub algorithms: Vec<Algorithm>,
    pub reps: usize,
    pub seed: u64,
    pub kind: CurveKind,
    pub metric: Metric,
}

impl BenchConfig {
    /// Parses algorithm ids; unknown ids are input errors.
    pub fn new<S: AsRef<str>>(
        sizes: &[usize],
        algorithms: &[S],
        reps: usize,
        seed: u64,
    ) -> Result<Self> {
        let algorithms = algorithms
            .iter()
            .map(|a| a.as_ref().trim().parse())
            .collect::<Result<Vec<Algorithm>>>()?;
        Ok(Self {
            sizes: sizes.to_vec(),
            algorithms,
            reps,
            seed,
            kind: CurveKind::NoisyPolygon,
            metric: Metric::Euclidean,
        })
    }

    fn validate(&self) -> Result<()> {
        if self.sizes.is_empty() || self.algorithms.is_empty() {
            return Err(FrechetError::InvalidArgument(
                "sizes and algorithms must be non-empty".into(),
            ));
        }
        if self.reps == 0 {
            return Err(FrechetError::InvalidArgument(
                "reps must be at least 1".into(),
            ));
        }
        if self.sizes.contains(&0) {
            return Err(FrechetError::EmptySequence);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub algorithm: Algorithm,
    pub m: usize,
    pub n: usize,
    pub seed: u64,
    pub rep: usize,
    pub wall_ns: u128,
    pub counters: Counters,
    pub result: f64,
}

#[derive(Debug, Clone, Default)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

/// The pair of curves benchmarked for instance seed `seed`.
pub fn bench_instance(kind: CurveKind, size: usize, seed: u64) -> Result<(PointSeq, PointSeq)> {
    let base = seed.wrapping_mul(2);
    Ok((
        gen_curve(kind, size, base)?,
        gen_curve(kind, size, base.wrapping_add(1))?,
    ))
}

/// Runs every algorithm on `reps` instances per size. Instance `rep` uses
/// seed `config.seed + rep`. Fails if algorithms disagree on an instance.
pub fn run_bench(config: &BenchConfig) -> Result<BenchReport> {
    config.validate()?;
    let mut rows = Vec::new();
    for &size in &config.sizes {
        for rep in 0..config.reps {
            let seed = config.seed.wrapping_add(rep as u64);
            let (u, v) = bench_instance(config.kind, size, seed)?;
            let first = rows.len();
            for &algorithm in &config.algorithms {
                let mut counters = Counters::new();
                let start = Instant::now();
                let result =
                    closed_distance_with(&u, &v, &config.metric, algorithm, &mut counters)?;
                let wall_ns = start.elapsed().as_nanos();
                rows.push(BenchRow {
                    algorithm,
                    m: u.len(),
                    n: v.len(),
                    seed,
                    rep,
                    wall_ns,
                    counters,
                    result,
                });
            }
            let group = &rows[first..];
            if let Some(bad) = group
                .iter()
                .find(|r| r.result.to_bits() != group[0].result.to_bits())
            {
                return Err(FrechetError::internal(format!(
                    "{} returned {} but {} returned {} (size {size}, seed {seed})",
                    bad.algorithm, bad.result, group[0].algorithm, group[0].result
                )));
            }
        }
    }
    Ok(BenchReport { rows })
}

impl BenchReport {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| FrechetError::InvalidArgument(format!("csv write failed: {e}"));
        w.write_record(CSV_HEADER).map_err(io)?;
        for r in &self.rows {
            w.write_record([
                r.algorithm.id().to_string(),
                r.m.to_string(),
                r.n.to_string(),
                r.seed.to_string(),
                r.rep.to_string(),
                r.wall_ns.to_string(),
                r.counters.delete_calls.to_string(),
                r.counters.test_calls.to_string(),
                r.counters.key_comparisons.to_string(),
                r.counters.epochs.to_string(),
                format_g17(r.result),
            ])
            .map_err(io)?;
        }
        w.flush()
            .map_err(|e| FrechetError::InvalidArgument(format!("csv write failed: {e}")))
    }

    /// Median wall time per (algorithm, size), in first-seen order.
    pub fn medians(&self) -> Vec<(Algorithm, usize, u128)> {
        let mut keys: Vec<(Algorithm, usize)> = Vec::new();
        for r in &self.rows {
            if !keys.contains(&(r.algorithm, r.m)) {
                keys.push((r.algorithm, r.m));
            }
        }
        keys.into_iter()
            .map(|(a, m)| {
                let mut t: Vec<u128> = self
                    .rows
                    .iter()
                    .filter(|r| r.algorithm == a && r.m == m)
                    .map(|r| r.wall_ns)
                    .collect();
                t.sort_unstable();
                (a, m, t[t.len() / 2])
            })
            .collect()
    }
}
