//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the algorithms it is used to check.

#![allow(dead_code)]

use std::collections::HashSet;

use frechet_core::{Metric, PointSeq};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn dist(metric: &Metric, p: &[f64], q: &[f64]) -> f64 {
    metric.eval(p, q).unwrap()
}

/// Minimum over every monotone coupling from `(0,0)` to `(m-1,n-1)` of the
/// largest pair value, found by exhaustive path enumeration.
pub fn open_by_enumeration(values: &dyn Fn(usize, usize) -> f64, m: usize, n: usize) -> f64 {
    fn walk(
        values: &dyn Fn(usize, usize) -> f64,
        m: usize,
        n: usize,
        a: usize,
        b: usize,
        worst: f64,
        best: &mut f64,
    ) {
        let worst = worst.max(values(a, b));
        if a == m - 1 && b == n - 1 {
            *best = best.min(worst);
            return;
        }
        if a + 1 < m {
            walk(values, m, n, a + 1, b, worst, best);
        }
        if b + 1 < n {
            walk(values, m, n, a, b + 1, worst, best);
        }
        if a + 1 < m && b + 1 < n {
            walk(values, m, n, a + 1, b + 1, worst, best);
        }
    }
    let mut best = f64::INFINITY;
    walk(values, m, n, 0, 0, 0.0, &mut best);
    best
}

/// Closed distance by enumerating every shift pair and every coupling.
pub fn closed_by_enumeration(u: &PointSeq, v: &PointSeq, metric: &Metric) -> f64 {
    let (m, n) = (u.len(), v.len());
    let mut best = f64::INFINITY;
    for su in 0..m {
        for sv in 0..n {
            let f = |a: usize, b: usize| dist(metric, u.point((a + su) % m), v.point((b + sv) % n));
            best = best.min(open_by_enumeration(&f, m, n));
        }
    }
    best
}

/// Forward moves over the doubled domain, written directly from the case
/// rules (1-based, self-loops dropped).
pub fn forward(i: usize, j: usize, m: usize, n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    if j < n {
        out.push((i, j + 1));
    } else if i > m {
        out.push((i - m, 1));
    }
    if i < 2 * m {
        out.push((i + 1, j));
    }
    if i < 2 * m && j < n {
        out.push((i + 1, j + 1));
    } else if i >= m && j == n {
        out.push((i - m + 1, 1));
    }
    out.retain(|&c| c != (i, j));
    out
}

pub fn all_cells(m: usize, n: usize) -> Vec<(usize, usize)> {
    (1..=2 * m)
        .flat_map(|i| (1..=n).map(move |j| (i, j)))
        .collect()
}

/// Largest subset of `D \ removed` in which every cell has a forward move
/// inside the subset, computed from scratch.
pub fn dead_end_fixpoint(
    m: usize,
    n: usize,
    removed: &HashSet<(usize, usize)>,
) -> HashSet<(usize, usize)> {
    let mut alive: HashSet<_> = all_cells(m, n)
        .into_iter()
        .filter(|c| !removed.contains(c))
        .collect();
    loop {
        let dead: Vec<_> = alive
            .iter()
            .copied()
            .filter(|&(i, j)| !forward(i, j, m, n).iter().any(|t| alive.contains(t)))
            .collect();
        if dead.is_empty() {
            return alive;
        }
        for c in dead {
            alive.remove(&c);
        }
    }
}

/// Independent cyclic-coupling checker: pairs distinct and in range, each
/// cyclic step one of stay/advance per index (not both stay), and the
/// advances add up to exactly one lap per sequence. Indices of a length-1
/// sequence may count any step as its lap.
pub fn coupling_is_valid(pairs: &[(usize, usize)], m: usize, n: usize) -> bool {
    if pairs.is_empty() {
        return false;
    }
    let uniq: HashSet<_> = pairs.iter().collect();
    if uniq.len() != pairs.len() || pairs.iter().any(|&(a, b)| a >= m || b >= n) {
        return false;
    }
    if m == 1 && n == 1 {
        return pairs.len() == 1;
    }
    let mut lap_u = 0;
    let mut lap_v = 0;
    for k in 0..pairs.len() {
        let (a, b) = pairs[k];
        let (c, d) = pairs[(k + 1) % pairs.len()];
        let du = if m == 1 { 0 } else { (c + m - a) % m };
        let dv = if n == 1 { 0 } else { (d + n - b) % n };
        if du > 1 || dv > 1 {
            return false;
        }
        if du == 0 && dv == 0 && m > 1 && n > 1 {
            return false;
        }
        lap_u += du;
        lap_v += dv;
    }
    (m == 1 || lap_u == m) && (n == 1 || lap_v == n)
}

pub fn metrics() -> [Metric; 3] {
    [Metric::Euclidean, Metric::Manhattan, Metric::Chebyshev]
}

pub fn grid_seq(rng: &mut StdRng, len: usize, max_coord: i32) -> PointSeq {
    let pts: Vec<(f64, f64)> = (0..len)
        .map(|_| {
            (
                rng.gen_range(0..=max_coord) as f64,
                rng.gen_range(0..=max_coord) as f64,
            )
        })
        .collect();
    PointSeq::from_xy(&pts).unwrap()
}

/// The seeded random suite: `count` instances with `1 <= m, n <= max_len`
/// on the integer grid `{0..=5}^2`.
pub fn random_suite(count: usize, max_len: usize, seed: u64) -> Vec<(PointSeq, PointSeq)> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let m = rng.gen_range(1..=max_len);
            let n = rng.gen_range(1..=max_len);
            (grid_seq(&mut rng, m, 5), grid_seq(&mut rng, n, 5))
        })
        .collect()
}
