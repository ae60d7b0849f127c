use crate::error::Result;
use crate::metric::{check_pair, DistanceGrid, Metric, PointSeq};

/// Discrete Fréchet distance between open sequences.
pub fn frechet_open(u: &PointSeq, v: &PointSeq, metric: &Metric) -> Result<f64> {
    check_pair(u, v)?;
    let grid = DistanceGrid::new(u, v, metric)?;
    Ok(open_on_grid(&grid))
}

/// Row-by-row dynamic program over a precomputed grid.
pub fn open_on_grid(grid: &DistanceGrid) -> f64 {
    let (m, n) = (grid.m(), grid.n());
    let mut row = vec![0.0f64; n];
    for i in 0..m {
        let mut diag = 0.0;
        for j in 0..n {
            let d = grid.pair(i, j);
            let reach = match (i, j) {
                (0, 0) => d,
                (0, _) => row[j - 1],
                (_, 0) => row[0],
                _ => row[j].min(row[j - 1]).min(diag),
            };
            diag = row[j];
            row[j] = d.max(reach);
        }
    }
    row[n - 1]
}
