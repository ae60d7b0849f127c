//! Distance algorithms.
//!
//! * [`frechet_open`]: the classic `O(mn)` dynamic program for open curves.
//! * [`frechet_closed_oracle`]: minimum of the open distance over every pair
//!   of cyclic shifts. Quartic; meant for verification.
//! * [`frechet_closed_sort`]: sort the doubled grid descending and delete
//!   cells until the diagram empties, `O(mn log mn)`.
//! * [`frechet_closed_logstar`]: the same deletion walk driven by
//!   progressively finer chunk-sorts, `O(mn log* mn)`.
//! * [`frechet_closed_two_epoch`]: a `log(2mn)`-chunk-sort followed by a full
//!   sort of the surviving chunk, `O(mn log log mn)`.

mod closed;
mod open;
mod witness;

use std::fmt;
use std::str::FromStr;

pub use closed::{
    closed_on_grid, diagram_entries, frechet_closed_logstar, frechet_closed_oracle,
    frechet_closed_sort, frechet_closed_two_epoch,
};
pub use open::{frechet_open, open_on_grid};
pub use witness::{threshold_diagram, witness_coupling, witness_on_grid, CyclicCoupling};

use crate::error::{FrechetError, Result};
use crate::instrument::Instrument;
use crate::metric::{Metric, PointSeq};

/// Closed-curve algorithm selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// Literal minimum over all shift pairs.
    Naive,
    Sort,
    LogStar,
    TwoEpoch,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Naive,
        Algorithm::Sort,
        Algorithm::LogStar,
        Algorithm::TwoEpoch,
    ];

    /// The three sub-quartic algorithms.
    pub const FAST: [Algorithm; 3] = [Algorithm::Sort, Algorithm::LogStar, Algorithm::TwoEpoch];

    pub fn id(&self) -> &'static str {
        match self {
            Algorithm::Naive => "naive",
            Algorithm::Sort => "sort",
            Algorithm::LogStar => "logstar",
            Algorithm::TwoEpoch => "two-epoch",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl serde::Serialize for Algorithm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.id())
    }
}

impl FromStr for Algorithm {
    type Err = FrechetError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "naive" | "oracle" => Ok(Algorithm::Naive),
            "sort" => Ok(Algorithm::Sort),
            "logstar" | "log-star" => Ok(Algorithm::LogStar),
            "two-epoch" | "two_epoch" | "twoepoch" => Ok(Algorithm::TwoEpoch),
            _ => Err(FrechetError::Unknown {
                what: "algorithm",
                name: s.to_string(),
            }),
        }
    }
}

/// Closed discrete Fréchet distance with the chosen algorithm.
pub fn closed_distance(
    u: &PointSeq,
    v: &PointSeq,
    metric: &Metric,
    algorithm: Algorithm,
) -> Result<f64> {
    closed_distance_with(u, v, metric, algorithm, &mut ())
}

/// As [`closed_distance`], reporting operation counts to `probe`. The naive
/// algorithm reports nothing.
pub fn closed_distance_with<I: Instrument>(
    u: &PointSeq,
    v: &PointSeq,
    metric: &Metric,
    algorithm: Algorithm,
    probe: &mut I,
) -> Result<f64> {
    match algorithm {
        Algorithm::Naive => frechet_closed_oracle(u, v, metric),
        _ => {
            let grid = crate::metric::DistanceGrid::new(u, v, metric)?;
            closed_on_grid(&grid, algorithm, probe)
        }
    }
}

/// Iterated base-2 logarithm: 0 for `x <= 1`, else `1 + log*(log2 x)`.
pub fn iterated_log(x: f64) -> u32 {
    let mut x = x;
    let mut count = 0;
    while x > 1.0 {
        x = x.log2();
        count += 1;
    }
    count
}
