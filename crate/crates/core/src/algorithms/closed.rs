use super::open::frechet_open;
use super::Algorithm;
use crate::chunk_sort::{chunk_sort_in_place, Entry};
use crate::diagram::{Cell, Diagram};
use crate::error::{FrechetError, Result};
use crate::instrument::Instrument;
use crate::metric::{check_pair, DistanceGrid, Metric, PointSeq};

// Generous: log* of any addressable size is at most 5.
const MAX_EPOCHS: usize = 64;

/// Minimum open distance over all shift pairs `(s_u, s_v)` in
/// `{0..m} x {0..n}`.
pub fn frechet_closed_oracle(u: &PointSeq, v: &PointSeq, metric: &Metric) -> Result<f64> {
    check_pair(u, v)?;
    let mut best = f64::INFINITY;
    for su in 0..=u.len() {
        let us = u.cyclic_shift(su)?;
        for sv in 0..=v.len() {
            let vs = v.cyclic_shift(sv)?;
            best = best.min(frechet_open(&us, &vs, metric)?);
        }
    }
    Ok(best)
}

pub fn frechet_closed_sort(u: &PointSeq, v: &PointSeq, metric: &Metric) -> Result<f64> {
    let grid = DistanceGrid::new(u, v, metric)?;
    closed_on_grid(&grid, Algorithm::Sort, &mut ())
}

pub fn frechet_closed_logstar(u: &PointSeq, v: &PointSeq, metric: &Metric) -> Result<f64> {
    let grid = DistanceGrid::new(u, v, metric)?;
    closed_on_grid(&grid, Algorithm::LogStar, &mut ())
}

pub fn frechet_closed_two_epoch(u: &PointSeq, v: &PointSeq, metric: &Metric) -> Result<f64> {
    let grid = DistanceGrid::new(u, v, metric)?;
    closed_on_grid(&grid, Algorithm::TwoEpoch, &mut ())
}

/// Runs one of the diagram-based algorithms on a precomputed grid.
///
/// `Algorithm::Naive` needs the points themselves and is rejected here.
pub fn closed_on_grid<I: Instrument>(
    grid: &DistanceGrid,
    algorithm: Algorithm,
    probe: &mut I,
) -> Result<f64> {
    match algorithm {
        Algorithm::Sort => sort_walk(grid, probe),
        Algorithm::LogStar => epoch_walk(grid, Schedule::LogStar, probe),
        Algorithm::TwoEpoch => epoch_walk(grid, Schedule::TwoEpoch, probe),
        Algorithm::Naive => Err(FrechetError::InvalidArgument(
            "the naive algorithm works on point sequences, not grids".into(),
        )),
    }
}

/// Every cell of the doubled domain with its distance, in row-major order.
pub fn diagram_entries(grid: &DistanceGrid) -> Vec<Entry> {
    let (m, n) = (grid.m(), grid.n());
    let mut out = Vec::with_capacity(2 * m * n);
    for i in 1..=2 * m {
        for j in 1..=n {
            out.push(Entry::new(grid.at(i, j), i as u32, j as u32));
        }
    }
    out
}

#[inline]
fn cell(e: &Entry) -> Cell {
    Cell::new(e.i as usize, e.j as usize)
}

fn sort_walk<I: Instrument>(grid: &DistanceGrid, probe: &mut I) -> Result<f64> {
    let mut entries = diagram_entries(grid);
    entries.sort_unstable_by(|a, b| {
        probe.on_compare(1);
        b.key.total_cmp(&a.key)
    });
    let mut diag = Diagram::new(grid.m(), grid.n())?;
    for e in &entries {
        diag.delete_if_allowed(cell(e), probe);
        if diag.live() == 0 {
            return Ok(e.key);
        }
    }
    Err(FrechetError::internal(
        "sorted walk exhausted all entries with live cells remaining",
    ))
}

#[derive(Debug, Clone, Copy)]
enum Schedule {
    /// k = 2, 4, 16, 65536, ... (k <- 2^k).
    LogStar,
    /// k = ceil(log2 N), then a full sort.
    TwoEpoch,
}

impl Schedule {
    fn first(self, total: usize) -> usize {
        match self {
            Schedule::LogStar => 2,
            Schedule::TwoEpoch => (total as f64).log2().ceil().max(1.0) as usize,
        }
    }

    fn next(self, k: usize) -> usize {
        match self {
            Schedule::LogStar if k < usize::BITS as usize => 1usize << k,
            _ => usize::MAX,
        }
    }
}

/// The epoch loop. The entry array is split into `L | B | R`; each epoch
/// chunk-sorts `B`, replays deletions of `L` on a fresh diagram and then
/// walks the chunks of `B` until the diagram empties. The emptying chunk
/// becomes the next `B`; a singleton emptying chunk holds the answer.
///
/// The loop runs until that return. Once `k` reaches `|B|` the chunks are
/// singletons, so the number of epochs stays within `log*(2mn)`.
fn epoch_walk<I: Instrument>(
    grid: &DistanceGrid,
    schedule: Schedule,
    probe: &mut I,
) -> Result<f64> {
    let mut entries = diagram_entries(grid);
    let total = entries.len();
    let mut diag = Diagram::new(grid.m(), grid.n())?;
    let (mut b_start, mut b_end) = (0, total);
    let mut k = schedule.first(total);

    for epoch in 0..MAX_EPOCHS {
        probe.on_epoch(&entries[b_start..b_end]);
        if epoch > 0 {
            diag.reset();
        }
        let bounds = chunk_sort_in_place(&mut entries[b_start..b_end], k, probe);

        for e in &entries[..b_start] {
            diag.delete_if_allowed(cell(e), probe);
            if diag.live() == 0 {
                return Err(FrechetError::internal(
                    "diagram emptied while replaying the settled prefix",
                ));
            }
        }

        let mut start = b_start;
        let mut emptied = None;
        'chunks: for end in bounds.iter().map(|&b| b_start + b) {
            for e in &entries[start..end] {
                diag.delete_if_allowed(cell(e), probe);
                if diag.live() == 0 {
                    if end - start == 1 {
                        probe.on_epoch_end(diag.deletes());
                        return Ok(e.key);
                    }
                    emptied = Some((start, end));
                    break 'chunks;
                }
            }
            start = end;
        }
        probe.on_epoch_end(diag.deletes());

        (b_start, b_end) = emptied.ok_or_else(|| {
            FrechetError::internal("active segment exhausted with live cells remaining")
        })?;
        k = schedule.next(k);
    }
    Err(FrechetError::internal("epoch loop did not terminate"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instrument::Counters;

    fn xy(points: &[(f64, f64)]) -> PointSeq {
        PointSeq::from_xy(points).unwrap()
    }

    fn all(u: &PointSeq, v: &PointSeq) -> [f64; 4] {
        let m = Metric::Euclidean;
        [
            frechet_closed_oracle(u, v, &m).unwrap(),
            frechet_closed_sort(u, v, &m).unwrap(),
            frechet_closed_logstar(u, v, &m).unwrap(),
            frechet_closed_two_epoch(u, v, &m).unwrap(),
        ]
    }

    #[test]
    fn square_from_different_start() {
        let u = xy(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        let v = xy(&[(1.0, 1.0), (0.0, 1.0), (0.0, 0.0), (1.0, 0.0)]);
        assert_eq!(all(&u, &v), [0.0; 4]);
    }

    #[test]
    fn two_points_against_one() {
        let u = xy(&[(0.0, 0.0), (1.0, 0.0)]);
        let v = xy(&[(0.0, 1.0)]);
        assert_eq!(all(&u, &v), [2f64.sqrt(); 4]);
    }

    #[test]
    fn single_pair() {
        let u = xy(&[(0.0, 0.0)]);
        let v = xy(&[(3.0, 4.0)]);
        assert_eq!(all(&u, &v), [5.0; 4]);
    }

    #[test]
    fn identical_points_everywhere() {
        let u = xy(&[(2.0, 2.0); 3]);
        let v = xy(&[(2.0, 2.0); 5]);
        assert_eq!(all(&u, &v), [0.0; 4]);
        let mut c = Counters::new();
        let grid = DistanceGrid::new(&u, &v, &Metric::Euclidean).unwrap();
        closed_on_grid(&grid, Algorithm::Sort, &mut c).unwrap();
        assert_eq!(c.delete_calls, 30);
    }

    #[test]
    fn oracle_not_above_open() {
        let u = xy(&[(0.0, 0.0), (4.0, 0.0), (4.0, 3.0)]);
        let v = xy(&[(4.0, 3.0), (0.0, 0.0), (4.0, 0.0), (2.0, 1.0)]);
        let closed = frechet_closed_oracle(&u, &v, &Metric::Euclidean).unwrap();
        let open = frechet_open(&u, &v, &Metric::Euclidean).unwrap();
        assert!(closed <= open);
        assert_eq!(all(&u, &v), [closed; 4]);
    }

    #[test]
    fn naive_is_rejected_on_grid() {
        let u = xy(&[(0.0, 0.0)]);
        let grid = DistanceGrid::new(&u, &u, &Metric::Euclidean).unwrap();
        assert!(closed_on_grid(&grid, Algorithm::Naive, &mut ()).is_err());
    }

    #[test]
    fn two_epoch_runs_two_epochs() {
        let pts: Vec<(f64, f64)> = (0..64)
            .map(|k| {
                let t = k as f64 * std::f64::consts::TAU / 64.0;
                (t.cos(), (2.0 * t).sin())
            })
            .collect();
        let u = xy(&pts);
        let v = u.reversed();
        let grid = DistanceGrid::new(&u, &v, &Metric::Euclidean).unwrap();
        let mut c = Counters::new();
        closed_on_grid(&grid, Algorithm::TwoEpoch, &mut c).unwrap();
        assert_eq!(c.epochs, 2);
        assert_eq!(c.epoch_delete_calls.len(), 2);
    }
}
