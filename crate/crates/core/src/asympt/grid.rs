//! Grid sweeps of the density and the limit shape, and density level sets.

use std::collections::HashMap;
use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{limit_shape, theta_density, BulkPoint};
use crate::error::{Error, Result};

/// A rectangular `(τ, χ)` grid with `nt × nc` nodes, endpoints included.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub tau_min: f64,
    pub tau_max: f64,
    pub nt: usize,
    pub chi_min: f64,
    pub chi_max: f64,
    pub nc: usize,
}

impl Grid {
    pub fn new(tau: (f64, f64, usize), chi: (f64, f64, usize)) -> Result<Self> {
        let g = Grid { tau_min: tau.0, tau_max: tau.1, nt: tau.2, chi_min: chi.0, chi_max: chi.1, nc: chi.2 };
        if g.nt < 2 || g.nc < 2 {
            return Err(Error::InvalidParameter("grid resolution must be at least 2".into()));
        }
        if !(g.tau_min < g.tau_max && g.chi_min < g.chi_max) {
            return Err(Error::InvalidParameter("empty grid range".into()));
        }
        Ok(g)
    }

    pub fn tau(&self, i: usize) -> f64 {
        self.tau_min + (self.tau_max - self.tau_min) * i as f64 / (self.nt - 1) as f64
    }

    pub fn chi(&self, j: usize) -> f64 {
        self.chi_min + (self.chi_max - self.chi_min) * j as f64 / (self.nc - 1) as f64
    }

    pub fn tau_step(&self) -> f64 {
        (self.tau_max - self.tau_min) / (self.nt - 1) as f64
    }

    pub fn chi_step(&self) -> f64 {
        (self.chi_max - self.chi_min) / (self.nc - 1) as f64
    }

    /// Nodes in row-major order, `χ` varying fastest.
    pub fn points(&self) -> Vec<BulkPoint> {
        (0..self.nt).flat_map(|i| (0..self.nc).map(move |j| BulkPoint::new(self.tau(i), self.chi(j)))).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DensityRow {
    pub tau: f64,
    pub chi: f64,
    pub theta: f64,
    pub rho: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ShapeRow {
    pub tau: f64,
    pub chi: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

pub fn density_grid(g: &Grid) -> Vec<DensityRow> {
    g.points()
        .par_iter()
        .map(|&b| {
            let (theta, rho) = theta_density(b);
            DensityRow { tau: b.tau, chi: b.chi, theta, rho }
        })
        .collect()
}

pub fn shape_grid(g: &Grid) -> Vec<ShapeRow> {
    g.points()
        .par_iter()
        .map(|&b| {
            let (x, y, z) = limit_shape(b);
            ShapeRow { tau: b.tau, chi: b.chi, x, y, z }
        })
        .collect()
}

/// The curve `θ* = kπ/8`, as `χ = -ln(2(cosh(τ/2) - cos(kπ/8)))`.
pub fn level_curve(k: u32, tau: f64) -> f64 {
    let c = (k as f64 * PI / 8.0).cos();
    let d = (tau / 2.0).cosh() - c;
    if d <= 0.0 {
        f64::INFINITY
    } else {
        -(2.0 * d).ln()
    }
}

/// `cos θ*` before clamping; smooth across the bulk boundary.
fn cos_field(tau: f64, chi: f64) -> f64 {
    (tau / 2.0).cosh() - (-chi).exp() / 2.0
}

/// Polylines of one level `θ* = kπ/8`, as `(τ, χ)` vertices.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelSet {
    pub k: u32,
    pub theta: f64,
    pub lines: Vec<Vec<(f64, f64)>>,
}

/// Marching squares on `cos θ*` at the levels `cos(kπ/8)`, `k = 0..=8`.
pub fn density_level_sets(g: &Grid) -> Vec<LevelSet> {
    let vals: Vec<f64> = (0..g.nt).flat_map(|i| (0..g.nc).map(move |j| cos_field(g.tau(i), g.chi(j)))).collect();
    (0..=8u32)
        .map(|k| {
            let level = (k as f64 * PI / 8.0).cos();
            LevelSet { k, theta: k as f64 * PI / 8.0, lines: march(g, &vals, level) }
        })
        .collect()
}

fn march(g: &Grid, vals: &[f64], level: f64) -> Vec<Vec<(f64, f64)>> {
    let v = |i: usize, j: usize| vals[i * g.nc + j] - level;
    // edge ids: 2·node for the +τ edge, 2·node+1 for the +χ edge
    let node = |i: usize, j: usize| i * g.nc + j;
    let point = |e: usize| -> (f64, f64) {
        let n = e / 2;
        let (i, j) = (n / g.nc, n % g.nc);
        let (i2, j2) = if e.is_multiple_of(2) { (i + 1, j) } else { (i, j + 1) };
        let (a, b) = (v(i, j), v(i2, j2));
        let s = a / (a - b);
        (g.tau(i) + s * (g.tau(i2) - g.tau(i)), g.chi(j) + s * (g.chi(j2) - g.chi(j)))
    };
    let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut link = |a: usize, b: usize| {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    };
    for i in 0..g.nt - 1 {
        for j in 0..g.nc - 1 {
            let c = [v(i, j) > 0.0, v(i + 1, j) > 0.0, v(i + 1, j + 1) > 0.0, v(i, j + 1) > 0.0];
            // sides in order: bottom, right, top, left
            let sides = [2 * node(i, j), 2 * node(i + 1, j) + 1, 2 * node(i, j + 1), 2 * node(i, j) + 1];
            let cut: Vec<usize> = (0..4).filter(|&s| c[s] != c[(s + 1) % 4]).collect();
            match cut.len() {
                2 => link(sides[cut[0]], sides[cut[1]]),
                4 => {
                    let centre = (v(i, j) + v(i + 1, j) + v(i + 1, j + 1) + v(i, j + 1)) / 4.0;
                    if (centre > 0.0) == c[0] {
                        link(sides[0], sides[1]);
                        link(sides[2], sides[3]);
                    } else {
                        link(sides[3], sides[0]);
                        link(sides[1], sides[2]);
                    }
                }
                _ => {}
            }
        }
    }
    let mut keys: Vec<usize> = adj.keys().copied().collect();
    keys.sort_unstable();
    let mut seen: HashMap<usize, bool> = HashMap::new();
    let mut lines = Vec::new();
    // open chains start at degree-one ends, closed loops anywhere
    let starts: Vec<usize> = keys.iter().copied().filter(|k| adj[k].len() == 1).chain(keys.iter().copied()).collect();
    for s in starts {
        if seen.contains_key(&s) {
            continue;
        }
        let mut line = vec![point(s)];
        seen.insert(s, true);
        let mut cur = s;
        while let Some(&nx) = adj[&cur].iter().find(|n| !seen.contains_key(n)) {
            seen.insert(nx, true);
            line.push(point(nx));
            cur = nx;
        }
        if adj[&cur].len() == 2 && adj[&cur].contains(&s) && line.len() > 2 {
            line.push(point(s));
        }
        lines.push(line);
    }
    lines
}
