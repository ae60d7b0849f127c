//! Points, metrics, point sequences and the pairwise distance grid.

use std::fmt;
use std::sync::Arc;

use crate::error::{FrechetError, Result};

/// A distance function between two points of equal dimension.
pub type DistanceFn = dyn Fn(&[f64], &[f64]) -> f64 + Send + Sync;

#[derive(Clone)]
pub enum Metric {
    Euclidean,
    Manhattan,
    Chebyshev,
    /// Caller-supplied distance. It must be non-negative, symmetric and zero
    /// on identical points; finiteness is checked when a grid is built.
    Custom(Arc<DistanceFn>),
}

impl Metric {
    pub fn custom<F>(f: F) -> Self
    where
        F: Fn(&[f64], &[f64]) -> f64 + Send + Sync + 'static,
    {
        Metric::Custom(Arc::new(f))
    }

    pub fn name(&self) -> &'static str {
        match self {
            Metric::Euclidean => "euclidean",
            Metric::Manhattan => "manhattan",
            Metric::Chebyshev => "chebyshev",
            Metric::Custom(_) => "custom",
        }
    }

    /// Evaluates the metric, checking that both points share a dimension.
    pub fn eval(&self, p: &[f64], q: &[f64]) -> Result<f64> {
        if p.len() != q.len() {
            return Err(FrechetError::DimensionMismatch {
                expected: p.len(),
                found: q.len(),
            });
        }
        Ok(self.eval_unchecked(p, q))
    }

    #[inline]
    pub(crate) fn eval_unchecked(&self, p: &[f64], q: &[f64]) -> f64 {
        match self {
            Metric::Euclidean => p
                .iter()
                .zip(q)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt(),
            Metric::Manhattan => p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum(),
            Metric::Chebyshev => p
                .iter()
                .zip(q)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max),
            Metric::Custom(f) => f(p, q),
        }
    }
}

impl fmt::Debug for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Metric {
    type Err = FrechetError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "euclidean" | "l2" => Ok(Metric::Euclidean),
            "manhattan" | "l1" => Ok(Metric::Manhattan),
            "chebyshev" | "linf" => Ok(Metric::Chebyshev),
            _ => Err(FrechetError::Unknown {
                what: "metric",
                name: s.to_string(),
            }),
        }
    }
}

/// Free-function form of [`Metric::eval`].
pub fn metric_eval(metric: &Metric, p: &[f64], q: &[f64]) -> Result<f64> {
    metric.eval(p, q)
}

/// A non-empty sequence of points of one dimension, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSeq {
    dim: usize,
    coords: Vec<f64>,
}

impl PointSeq {
    /// Builds a sequence from flat row-major coordinates.
    pub fn from_flat(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(FrechetError::ZeroDimension);
        }
        if coords.is_empty() {
            return Err(FrechetError::EmptySequence);
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(FrechetError::DimensionMismatch {
                expected: dim,
                found: coords.len() % dim,
            });
        }
        if let Some(pos) = coords.iter().position(|c| !c.is_finite()) {
            return Err(FrechetError::NonFinite { index: pos / dim });
        }
        Ok(Self { dim, coords })
    }

    /// Builds a sequence from individual points; the dimension is taken from
    /// the first point.
    pub fn from_points<P: AsRef<[f64]>>(points: &[P]) -> Result<Self> {
        let first = points.first().ok_or(FrechetError::EmptySequence)?;
        let dim = first.as_ref().len();
        let mut coords = Vec::with_capacity(dim * points.len());
        for p in points {
            let p = p.as_ref();
            if p.len() != dim {
                return Err(FrechetError::DimensionMismatch {
                    expected: dim,
                    found: p.len(),
                });
            }
            coords.extend_from_slice(p);
        }
        Self::from_flat(dim, coords)
    }

    /// Convenience constructor for planar curves.
    pub fn from_xy(points: &[(f64, f64)]) -> Result<Self> {
        let coords = points.iter().flat_map(|&(x, y)| [x, y]).collect();
        Self::from_flat(2, coords)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// The `index`-th point (0-based).
    pub fn point(&self, index: usize) -> &[f64] {
        &self.coords[index * self.dim..(index + 1) * self.dim]
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Cyclic shift by `shift` positions: the result starts at point
    /// `shift` (0-based) and wraps around. `shift` may equal `len()`.
    pub fn cyclic_shift(&self, shift: usize) -> Result<Self> {
        let len = self.len();
        if shift > len {
            return Err(FrechetError::ShiftOutOfRange { shift, len });
        }
        let split = (shift % len) * self.dim;
        let mut coords = Vec::with_capacity(self.coords.len());
        coords.extend_from_slice(&self.coords[split..]);
        coords.extend_from_slice(&self.coords[..split]);
        Ok(Self {
            dim: self.dim,
            coords,
        })
    }

    pub fn reversed(&self) -> Self {
        let coords = self
            .coords
            .chunks_exact(self.dim)
            .rev()
            .flatten()
            .copied()
            .collect();
        Self {
            dim: self.dim,
            coords,
        }
    }
}

/// Free-function form of [`PointSeq::cyclic_shift`].
pub fn cyclic_shift(seq: &PointSeq, shift: usize) -> Result<PointSeq> {
    seq.cyclic_shift(shift)
}

pub(crate) fn check_pair(u: &PointSeq, v: &PointSeq) -> Result<()> {
    if u.dim() != v.dim() {
        return Err(FrechetError::DimensionMismatch {
            expected: u.dim(),
            found: v.dim(),
        });
    }
    Ok(())
}

/// The `m x n` table of pairwise distances `d(u_i, v_j)`.
///
/// Accessors use 1-based indices over the doubled domain
/// `{1..2m} x {1..n}`: row `i > m` reads the value stored for `i - m`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceGrid {
    m: usize,
    n: usize,
    values: Vec<f64>,
}

impl DistanceGrid {
    pub fn new(u: &PointSeq, v: &PointSeq, metric: &Metric) -> Result<Self> {
        check_pair(u, v)?;
        let (m, n) = (u.len(), v.len());
        let mut values = Vec::with_capacity(m * n);
        for p in u.points() {
            for q in v.points() {
                let d = metric.eval_unchecked(p, q);
                if !(d.is_finite() && d >= 0.0) {
                    return Err(FrechetError::InvalidMetricValue { value: d });
                }
                values.push(d);
            }
        }
        Ok(Self { m, n, values })
    }

    /// Wraps precomputed values, row-major with `m` rows of `n` entries.
    pub fn from_values(m: usize, n: usize, values: Vec<f64>) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(FrechetError::EmptySequence);
        }
        if values.len() != m * n {
            return Err(FrechetError::InvalidArgument(format!(
                "expected {} grid values, got {}",
                m * n,
                values.len()
            )));
        }
        if let Some(&bad) = values.iter().find(|d| !(d.is_finite() && **d >= 0.0)) {
            return Err(FrechetError::InvalidMetricValue { value: bad });
        }
        Ok(Self { m, n, values })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Distance between `u[ui]` and `v[vj]`, 0-based.
    #[inline]
    pub fn pair(&self, ui: usize, vj: usize) -> f64 {
        self.values[ui * self.n + vj]
    }

    /// Distance at cell `(i, j)` of the doubled domain, 1-based.
    ///
    /// # Panics
    /// If the cell lies outside `{1..2m} x {1..n}`.
    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        assert!(
            (1..=2 * self.m).contains(&i) && (1..=self.n).contains(&j),
            "cell ({i}, {j}) outside doubled grid"
        );
        let row = if i > self.m { i - self.m } else { i };
        self.values[(row - 1) * self.n + (j - 1)]
    }

    /// Checked variant of [`DistanceGrid::at`].
    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        if (1..=2 * self.m).contains(&i) && (1..=self.n).contains(&j) {
            Some(self.at(i, j))
        } else {
            None
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Builds the pairwise distance grid for two sequences.
pub fn build_distance_grid(u: &PointSeq, v: &PointSeq, metric: &Metric) -> Result<DistanceGrid> {
    DistanceGrid::new(u, v, metric)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(points: &[(f64, f64)]) -> PointSeq {
        PointSeq::from_xy(points).unwrap()
    }

    #[test]
    fn metric_examples() {
        assert_eq!(
            Metric::Euclidean.eval(&[0.0, 0.0], &[3.0, 4.0]).unwrap(),
            5.0
        );
        assert_eq!(
            Metric::Chebyshev.eval(&[0.0, 0.0], &[2.0, 5.0]).unwrap(),
            5.0
        );
        assert_eq!(
            Metric::Manhattan.eval(&[0.0, 0.0], &[2.0, 5.0]).unwrap(),
            7.0
        );
        for m in [Metric::Euclidean, Metric::Manhattan, Metric::Chebyshev] {
            assert_eq!(m.eval(&[1.5, -2.0], &[1.5, -2.0]).unwrap(), 0.0);
        }
    }

    #[test]
    fn metric_dimension_mismatch() {
        let err = Metric::Euclidean.eval(&[0.0], &[0.0, 1.0]).unwrap_err();
        assert!(matches!(err, FrechetError::DimensionMismatch { .. }));
    }

    #[test]
    fn metric_from_str() {
        assert!(matches!(
            "Manhattan".parse::<Metric>(),
            Ok(Metric::Manhattan)
        ));
        assert!("cosine".parse::<Metric>().is_err());
    }

    #[test]
    fn shift_examples() {
        let s = seq(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]);
        assert_eq!(s.cyclic_shift(0).unwrap(), s);
        assert_eq!(
            s.cyclic_shift(1).unwrap(),
            seq(&[(1.0, 0.0), (2.0, 0.0), (0.0, 0.0)])
        );
        assert_eq!(s.cyclic_shift(3).unwrap(), s);
        assert!(matches!(
            s.cyclic_shift(4),
            Err(FrechetError::ShiftOutOfRange { shift: 4, len: 3 })
        ));
    }

    #[test]
    fn sequence_validation() {
        assert_eq!(
            PointSeq::from_flat(2, vec![]).unwrap_err(),
            FrechetError::EmptySequence
        );
        assert!(matches!(
            PointSeq::from_flat(2, vec![0.0, f64::NAN]),
            Err(FrechetError::NonFinite { index: 0 })
        ));
        assert!(PointSeq::from_points(&[vec![1.0, 2.0], vec![3.0]]).is_err());
        assert_eq!(PointSeq::from_flat(3, vec![1.0; 6]).unwrap().len(), 2);
    }

    #[test]
    fn grid_examples() {
        let g = DistanceGrid::new(&seq(&[(0.0, 0.0)]), &seq(&[(1.0, 0.0)]), &Metric::Euclidean)
            .unwrap();
        assert_eq!(g.values(), &[1.0]);
        assert_eq!(g.at(2, 1), 1.0);

        let g = DistanceGrid::new(
            &seq(&[(0.0, 0.0), (1.0, 0.0)]),
            &seq(&[(0.0, 1.0)]),
            &Metric::Euclidean,
        )
        .unwrap();
        assert_eq!(g.values(), &[1.0, 2f64.sqrt()]);
        assert_eq!(g.at(3, 1), 1.0);
        assert_eq!(g.get(5, 1), None);
        assert_eq!(g.get(1, 2), None);
    }

    #[test]
    fn grid_rejects_mismatch_and_bad_metric() {
        let u = seq(&[(0.0, 0.0)]);
        let v = PointSeq::from_flat(3, vec![0.0; 3]).unwrap();
        assert!(DistanceGrid::new(&u, &v, &Metric::Euclidean).is_err());
        let bad = Metric::custom(|_, _| -1.0);
        assert!(matches!(
            DistanceGrid::new(&u, &u, &bad),
            Err(FrechetError::InvalidMetricValue { .. })
        ));
    }
}
