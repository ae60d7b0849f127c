//! Discrete Fréchet distance between open and closed polygonal curves.
//!
//! The closed (cyclic) distance minimizes the open discrete Fréchet distance
//! over every pair of cyclic shifts of the two point sequences. Besides the
//! literal quartic definition this crate offers three diagram-based
//! algorithms that delete cells of a doubled free-space diagram in
//! descending distance order until no monotone cycle survives:
//!
//! * a full sort, `O(mn log mn)`;
//! * an epoch scheme over progressively finer chunk-sorts, `O(mn log* mn)`;
//! * a two-epoch variant, `O(mn log log mn)`.
//!
//! ```
//! use frechet_core::{closed_distance, Algorithm, Metric, PointSeq};
//!
//! let square = PointSeq::from_xy(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]).unwrap();
//! let rotated = square.cyclic_shift(2).unwrap();
//! let d = closed_distance(&square, &rotated, &Metric::Euclidean, Algorithm::LogStar).unwrap();
//! assert_eq!(d, 0.0);
//! ```

pub mod algorithms;
pub mod bench;
pub mod chunk_sort;
pub mod diagram;
pub mod error;
pub mod fmt;
pub mod instrument;
pub mod metric;
pub mod selftest;

pub use algorithms::{
    closed_distance, closed_distance_with, frechet_closed_logstar, frechet_closed_oracle,
    frechet_closed_sort, frechet_closed_two_epoch, frechet_open, iterated_log, witness_coupling,
    Algorithm, CyclicCoupling,
};
pub use chunk_sort::{chunk_sort, select_partition, ChunkPlan, Entry};
pub use diagram::{
    find_cyclic_path, forward_moves, inverse_moves, Cell, Diagram, MonotoneCyclePath,
};
pub use error::{FrechetError, Result};
pub use instrument::{Counters, Instrument};
pub use metric::{build_distance_grid, cyclic_shift, metric_eval, DistanceGrid, Metric, PointSeq};
