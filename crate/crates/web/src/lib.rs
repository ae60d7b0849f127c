//! wasm-bindgen bindings for the browser demo in `www/`.
//!
//! Curves cross the boundary as flat `[x0, y0, x1, y1, ...]` arrays. Every
//! export returns a JSON string; failures come back as `{"error": "..."}`.

use frechet_core::algorithms::{threshold_diagram, witness_on_grid};
use frechet_core::bench::{gen_curve, CurveKind};
use frechet_core::{
    closed_distance_with, Algorithm, Counters, CyclicCoupling, DistanceGrid, Metric, PointSeq,
};
use serde::Serialize;
use wasm_bindgen::prelude::wasm_bindgen;

#[derive(Serialize)]
struct Generated {
    points: Vec<f64>,
}

#[derive(Serialize)]
struct ClosedResult {
    distance: f64,
    algorithm: &'static str,
    witness: CyclicCoupling,
    counters: Counters,
}

#[derive(Serialize)]
struct FreeSpace {
    m: usize,
    n: usize,
    /// Row-major over the doubled diagram, `2m` rows of `n` cells.
    mask: Vec<bool>,
    live: usize,
    /// Cycle cells as 1-based `(i, j)`, empty when nothing survives.
    path: Vec<(usize, usize)>,
}

fn respond<T: Serialize>(r: Result<T, String>) -> String {
    let value = match r {
        Ok(v) => serde_json::to_value(v).map_err(|e| e.to_string()),
        Err(e) => Err(e),
    };
    match value {
        Ok(v) => v.to_string(),
        Err(e) => serde_json::json!({ "error": e }).to_string(),
    }
}

fn curve(xy: &[f64]) -> Result<PointSeq, String> {
    if !xy.len().is_multiple_of(2) {
        return Err("coordinate array has odd length".into());
    }
    PointSeq::from_flat(2, xy.to_vec()).map_err(|e| e.to_string())
}

fn inputs(
    a: &[f64],
    b: &[f64],
    metric: &str,
) -> Result<(DistanceGrid, PointSeq, PointSeq, Metric), String> {
    let u = curve(a)?;
    let v = curve(b)?;
    let metric: Metric = metric
        .parse()
        .map_err(|e: frechet_core::FrechetError| e.to_string())?;
    let grid = DistanceGrid::new(&u, &v, &metric).map_err(|e| e.to_string())?;
    Ok((grid, u, v, metric))
}

/// Generated curve of `count` points: `{"points": [x0, y0, ...]}`.
#[wasm_bindgen]
pub fn generate(kind: &str, count: usize, seed: u32) -> String {
    respond((|| {
        let kind: CurveKind = kind
            .parse()
            .map_err(|e: frechet_core::FrechetError| e.to_string())?;
        let seq = gen_curve(kind, count, seed as u64).map_err(|e| e.to_string())?;
        Ok(Generated {
            points: seq.coords().to_vec(),
        })
    })())
}

/// Closed distance with a witness coupling and the operation counters.
#[wasm_bindgen]
pub fn closed_distance(a: &[f64], b: &[f64], algorithm: &str, metric: &str) -> String {
    respond((|| {
        let (grid, u, v, metric) = inputs(a, b, metric)?;
        let algorithm: Algorithm = algorithm
            .parse()
            .map_err(|e: frechet_core::FrechetError| e.to_string())?;
        let mut counters = Counters::new();
        let distance = closed_distance_with(&u, &v, &metric, algorithm, &mut counters)
            .map_err(|e| e.to_string())?;
        let (witness, _) = witness_on_grid(&grid, distance).map_err(|e| e.to_string())?;
        Ok(ClosedResult {
            distance,
            algorithm: algorithm.id(),
            witness,
            counters,
        })
    })())
}

/// The doubled diagram thresholded at `delta`, after dead-end removal.
#[wasm_bindgen]
pub fn free_space(a: &[f64], b: &[f64], metric: &str, delta: f64) -> String {
    respond((|| {
        let (grid, ..) = inputs(a, b, metric)?;
        let diag = threshold_diagram(&grid, delta).map_err(|e| e.to_string())?;
        let path = if diag.live() > 0 {
            let p = diag.find_cyclic_path().map_err(|e| e.to_string())?;
            p.cells.iter().map(|c| (c.i, c.j)).collect()
        } else {
            Vec::new()
        };
        Ok(FreeSpace {
            m: grid.m(),
            n: grid.n(),
            mask: diag.allowed_mask().to_vec(),
            live: diag.live(),
            path,
        })
    })())
}
