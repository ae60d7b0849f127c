//! Randomized self-check run by `frechet selftest`.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::algorithms::{
    closed_on_grid, frechet_closed_oracle, frechet_open, iterated_log, witness_on_grid, Algorithm,
};
use crate::error::{FrechetError, Result};
use crate::instrument::Counters;
use crate::metric::{DistanceGrid, Metric, PointSeq};

#[derive(Debug, Clone)]
pub struct SelfTestConfig {
    pub max_size: usize,
    pub cases: usize,
    pub seed: u64,
    /// Coordinates are drawn from `0..=coord_range` on the integer grid.
    pub coord_range: u64,
}

impl Default for SelfTestConfig {
    fn default() -> Self {
        Self {
            max_size: 8,
            cases: 1000,
            seed: 0,
            coord_range: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, Default)]
pub struct SelfTestReport {
    pub checks: Vec<CheckOutcome>,
}

impl SelfTestReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.failed == 0)
    }

    fn record(&mut self, name: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        let idx = match self.checks.iter().position(|c| c.name == name) {
            Some(i) => i,
            None => {
                self.checks.push(CheckOutcome {
                    name,
                    passed: 0,
                    failed: 0,
                    first_failure: None,
                });
                self.checks.len() - 1
            }
        };
        let c = &mut self.checks[idx];
        if ok {
            c.passed += 1;
        } else {
            c.failed += 1;
            c.first_failure.get_or_insert_with(detail);
        }
    }
}

fn below(rng: &mut ChaCha8Rng, bound: u64) -> u64 {
    rng.next_u64() % bound
}

fn random_seq(rng: &mut ChaCha8Rng, len: usize, range: u64) -> PointSeq {
    let coords = (0..2 * len).map(|_| below(rng, range + 1) as f64).collect();
    PointSeq::from_flat(2, coords).expect("non-empty finite points")
}

pub fn run_selftest(config: &SelfTestConfig) -> Result<SelfTestReport> {
    if config.max_size == 0 || config.cases == 0 {
        return Err(FrechetError::InvalidArgument(
            "max-size and cases must be positive".into(),
        ));
    }
    let metrics = [Metric::Euclidean, Metric::Manhattan, Metric::Chebyshev];
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut report = SelfTestReport::default();

    for case in 0..config.cases {
        let m = 1 + below(&mut rng, config.max_size as u64) as usize;
        let n = 1 + below(&mut rng, config.max_size as u64) as usize;
        let u = random_seq(&mut rng, m, config.coord_range);
        let v = random_seq(&mut rng, n, config.coord_range);
        let metric = &metrics[case % metrics.len()];
        let tag = || format!("case {case}: m={m} n={n} metric={}", metric.name());

        let oracle = frechet_closed_oracle(&u, &v, metric)?;
        let grid = DistanceGrid::new(&u, &v, metric)?;
        let mut results = Vec::new();
        for alg in Algorithm::FAST {
            let mut c = Counters::new();
            let d = closed_on_grid(&grid, alg, &mut c)?;
            results.push((alg, d, c));
        }

        for (alg, d, _) in &results {
            report.record(
                "oracle equivalence",
                d.to_bits() == oracle.to_bits(),
                || format!("{}: {alg} = {d}, oracle = {oracle}", tag()),
            );
        }

        let cells = (2 * m * n) as u64;
        let sort_counts = &results[0].2;
        report.record(
            "sort accounting",
            sort_counts.delete_calls == cells
                && sort_counts.test_calls <= 3 * sort_counts.delete_calls,
            || format!("{}: {sort_counts:?}", tag()),
        );
        let log_counts = &results[1].2;
        report.record(
            "epoch accounting",
            log_counts.epoch_delete_calls.iter().all(|&d| d <= cells)
                && log_counts.epochs <= iterated_log(cells as f64) as u64 + 2,
            || format!("{}: {log_counts:?}", tag()),
        );

        let su = below(&mut rng, m as u64 + 1) as usize;
        let sv = below(&mut rng, n as u64 + 1) as usize;
        let shifted = DistanceGrid::new(&u.cyclic_shift(su)?, &v.cyclic_shift(sv)?, metric)?;
        let swapped = DistanceGrid::new(&v, &u, metric)?;
        for alg in Algorithm::FAST {
            let a = closed_on_grid(&shifted, alg, &mut ())?;
            let b = closed_on_grid(&swapped, alg, &mut ())?;
            report.record(
                "shift and swap invariance",
                a.to_bits() == oracle.to_bits() && b.to_bits() == oracle.to_bits(),
                || {
                    format!(
                        "{}: {alg} shifted({su},{sv}) = {a}, swapped = {b}, expected {oracle}",
                        tag()
                    )
                },
            );
        }

        let open = frechet_open(&u, &v, metric)?;
        let lower_u = (0..m)
            .map(|i| {
                (0..n)
                    .map(|j| grid.pair(i, j))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max);
        let lower_v = (0..n)
            .map(|j| {
                (0..m)
                    .map(|i| grid.pair(i, j))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max);
        report.record(
            "bounds",
            lower_u.max(lower_v) <= oracle && oracle <= open,
            || {
                format!(
                    "{}: lower {lower_u}/{lower_v}, closed {oracle}, open {open}",
                    tag()
                )
            },
        );

        let witness_ok = match witness_on_grid(&grid, oracle) {
            Ok((w, _)) => w.is_valid(m, n) && w.length.to_bits() == oracle.to_bits(),
            Err(_) => false,
        };
        let next_below = grid
            .values()
            .iter()
            .copied()
            .filter(|&d| d < oracle)
            .fold(None, |acc: Option<f64>, d| {
                Some(acc.map_or(d, |a| a.max(d)))
            });
        let below_ok = match next_below {
            Some(d) => matches!(
                witness_on_grid(&grid, d),
                Err(FrechetError::DeltaBelowDistance { .. })
            ),
            None => true,
        };
        report.record("witness", witness_ok && below_ok, || {
            format!("{}: witness_ok={witness_ok} below_ok={below_ok}", tag())
        });
    }
    Ok(report)
}
