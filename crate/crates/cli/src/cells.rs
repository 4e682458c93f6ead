//! Empirical horizontal-tile density of boxed samples, binned over a
//! `(τ, χ)` grid and set against the bulk density.

use schur_process::asympt::{theta_density, BulkPoint, Grid};
use schur_process::combin::{tile_centers, PlanePartition, TilePoint};
use schur_process::process::BoxSampler;
use schur_process::Result;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CellStat {
    pub tau_lo: f64,
    pub tau_hi: f64,
    pub chi_lo: f64,
    pub chi_hi: f64,
    pub sites: usize,
    pub empirical: f64,
    pub predicted: f64,
    /// Every site of the cell has predicted density in `(0.02, 0.98)`.
    pub interior: bool,
}

/// Tile centers `(t, h)` with `(r t, r h)` in the half-open cell.
fn cell_sites(r: f64, tau: (f64, f64), chi: (f64, f64)) -> Vec<TilePoint> {
    let mut out = Vec::new();
    let t0 = (tau.0 / r).ceil() as i64;
    let t1 = (tau.1 / r).ceil() as i64;
    // h2 = 2h
    let h0 = (2.0 * chi.0 / r).ceil() as i64;
    let h1 = (2.0 * chi.1 / r).ceil() as i64;
    for t in t0..t1 {
        for h2 in h0..h1 {
            if (h2 + t + 1).rem_euclid(2) == 0 {
                out.push(TilePoint::new(t, h2).expect("parity checked"));
            }
        }
    }
    out
}

/// Runs a chain for `steps` moves, discards the first half, and averages
/// occupancy over `snapshots` evenly spaced states of the second half.
pub fn sample_cells(q: f64, dims: (usize, usize, u32), steps: u64, seed: u64, grid: &Grid, snapshots: u64) -> Result<(PlanePartition, Vec<CellStat>)> {
    let r = -q.ln();
    let mut s = BoxSampler::new(q, dims, seed)?;
    let burn = steps / 2;
    s.run(burn);
    let mut cells: Vec<(CellStat, Vec<TilePoint>)> = Vec::new();
    for i in 0..grid.nt - 1 {
        for j in 0..grid.nc - 1 {
            let tau = (grid.tau(i), grid.tau(i + 1));
            let chi = (grid.chi(j), grid.chi(j + 1));
            let sites = cell_sites(r, tau, chi);
            let rhos: Vec<f64> = sites.iter().map(|p| theta_density(BulkPoint::new(r * p.t as f64, r * p.h().to_f64())).1).collect();
            let predicted = if sites.is_empty() { f64::NAN } else { rhos.iter().sum::<f64>() / sites.len() as f64 };
            let interior = !sites.is_empty() && rhos.iter().all(|&x| x > 0.02 && x < 0.98);
            let stat = CellStat { tau_lo: tau.0, tau_hi: tau.1, chi_lo: chi.0, chi_hi: chi.1, sites: sites.len(), empirical: 0.0, predicted, interior };
            cells.push((stat, sites));
        }
    }
    let snapshots = snapshots.max(1);
    let gap = ((steps - burn) / snapshots).max(1);
    for _ in 0..snapshots {
        s.run(gap);
        let tc = tile_centers(&s.state());
        for (stat, sites) in cells.iter_mut() {
            stat.empirical += sites.iter().filter(|p| tc.contains(**p)).count() as f64;
        }
    }
    let out = cells
        .into_iter()
        .map(|(mut stat, _)| {
            stat.empirical = if stat.sites == 0 { f64::NAN } else { stat.empirical / (stat.sites as f64 * snapshots as f64) };
            stat
        })
        .collect();
    Ok((s.state(), out))
}

/// Largest `|empirical - predicted|` over interior cells, with the number of such cells.
pub fn interior_error(cells: &[CellStat]) -> (f64, usize) {
    let inner: Vec<_> = cells.iter().filter(|c| c.interior).collect();
    (inner.iter().map(|c| (c.empirical - c.predicted).abs()).fold(0.0, f64::max), inner.len())
}
