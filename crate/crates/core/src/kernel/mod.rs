//! Correlation kernels as double contour integrals.
//!
//! The kernel is
//!
//! ```text
//! K((t1,x1),(t2,x2)) = (2πi)^{-2} ∮∮ Φ(t1,z)/Φ(t2,w) · 1/(z-w) · z^{-x1-1/2} w^{x2-1/2} dz dw
//! ```
//!
//! with `|z| > |w|` when `t1 ≥ t2` and `|z| < |w|` otherwise. Because `x`
//! is a half-integer both exponents are integers. Each circle is sampled at
//! `N` equispaced nodes; the resulting double sum depends on the node
//! offset only through `1/(z_j - w_k)`, so it reduces to one circular
//! correlation computed by FFT.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::combin::TilePoint;
use crate::error::{Error, Result};
use crate::half::Half;
use crate::process::SchurProcessParams;

pub mod phi;
pub mod sum;

pub use phi::{ln_qdilog, phi_3d, phi_big, qdilog, Mq3d, PhiSource, Planch};
pub use sum::{kernel_sum_repr, SumRepr};

/// Contour discretization parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    /// Initial nodes per circle, a power of two.
    pub nodes: usize,
    /// Requested radial offset of the circles from `|z| = 1`.
    pub epsilon: f64,
    pub tol: f64,
    pub max_doublings: u32,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { nodes: 256, epsilon: 0.05, tol: 1e-12, max_doublings: 8 }
    }
}

impl QuadratureSpec {
    pub fn with_tol(tol: f64) -> Self {
        QuadratureSpec { tol, ..Default::default() }
    }

    fn validate(&self) -> Result<()> {
        if self.nodes < 64 || !self.nodes.is_power_of_two() {
            return Err(Error::InvalidParameter(format!("nodes = {} must be a power of two ≥ 64", self.nodes)));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 0.5) {
            return Err(Error::InvalidParameter(format!("epsilon = {}", self.epsilon)));
        }
        Ok(())
    }
}

/// A kernel entry with its quadrature diagnostics.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelValue {
    pub value: f64,
    #[serde(rename = "N_used")]
    pub n_used: usize,
    pub est_error: f64,
}

/// A lattice point `(t, x)` with `x ∈ Z + 1/2`.
pub type Site = (i64, Half);

type CacheKey = (i64, bool, u64, usize);

/// Evaluates kernel entries for one [`PhiSource`], caching circle samples.
pub struct KernelEvaluator<S: PhiSource> {
    source: S,
    quad: QuadratureSpec,
    samples: Mutex<HashMap<CacheKey, Arc<Vec<Complex64>>>>,
    planner: Mutex<FftPlanner<f64>>,
}

impl<S: PhiSource> KernelEvaluator<S> {
    pub fn new(source: S, quad: QuadratureSpec) -> Self {
        KernelEvaluator { source, quad, samples: Mutex::new(HashMap::new()), planner: Mutex::new(FftPlanner::new()) }
    }

    pub fn source(&self) -> &S {
        &self.source
    }

    pub fn quad(&self) -> &QuadratureSpec {
        &self.quad
    }

    /// The radial offset actually used: the requested one, shrunk to half
    /// the distance from the unit circle to the nearest singularity.
    pub fn epsilon(&self, t1: i64, t2: i64) -> Result<f64> {
        let (a1, b1) = self.source.annulus(t1);
        let (a2, b2) = self.source.annulus(t2);
        let (inner, outer) = (a1.max(a2), b1.min(b2));
        if inner >= 1.0 || outer <= 1.0 {
            return Err(Error::NoAnnulus { inner, outer });
        }
        let gap = (1.0 - inner).min(outer - 1.0);
        Ok(self.quad.epsilon.min(gap / 2.0))
    }

    /// `Φ(t, ·)` (or its reciprocal) at `r e^{2πij/n}`.
    fn circle(&self, t: i64, inverse: bool, r: f64, n: usize) -> Result<Arc<Vec<Complex64>>> {
        let key = (t, inverse, r.to_bits(), n);
        if let Some(v) = self.samples.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let mut v = Vec::with_capacity(n);
        for j in 0..n {
            let z = Complex64::from_polar(r, 2.0 * PI * j as f64 / n as f64);
            let f = self.source.phi(t, z)?;
            v.push(if inverse { f.inv() } else { f });
        }
        let v = Arc::new(v);
        self.samples.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }

    fn plans(&self, n: usize) -> (Arc<dyn Fft<f64>>, Arc<dyn Fft<f64>>) {
        let mut p = self.planner.lock().unwrap();
        (p.plan_fft_forward(n), p.plan_fft_inverse(n))
    }

    /// One trapezoid level with `n` nodes per circle.
    fn level(&self, u1: Site, u2: Site, rz: f64, rw: f64, n: usize) -> Result<Complex64> {
        let (t1, x1) = u1;
        let (t2, x2) = u2;
        let e1 = -(x1 + Half(1)).as_integer().expect("half-odd x");
        let e2 = (x2 - Half(1)).as_integer().expect("half-odd x") + 1;
        let pz = self.circle(t1, false, rz, n)?;
        let pw = self.circle(t2, true, rw, n)?;
        let nn = n as i64;
        let root = |k: i64| Complex64::from_polar(1.0, 2.0 * PI * (k.rem_euclid(nn)) as f64 / n as f64);
        let sz = rz.powi(e1 as i32 + 1);
        let sw = rw.powi(e2 as i32);
        // F̃_j = F_{-j},  F_j = Φ(t1,z_j) z_j^{e1} r_z;  G_k = Φ(t2,w_k)^{-1} w_k^{e2}
        let mut f: Vec<Complex64> = (0..nn)
            .map(|j| {
                let jj = (-j).rem_euclid(nn);
                pz[jj as usize] * root(e1 * jj) * sz
            })
            .collect();
        let mut g: Vec<Complex64> = (0..nn).map(|k| pw[k as usize] * root(e2 * k) * sw).collect();
        let (fwd, inv) = self.plans(n);
        fwd.process(&mut f);
        fwd.process(&mut g);
        for (a, b) in f.iter_mut().zip(&g) {
            *a *= b;
        }
        inv.process(&mut f);
        // R_d = f[d] / n
        let mut s = Complex64::new(0.0, 0.0);
        for (d, r) in f.iter().enumerate() {
            let c = (Complex64::new(rz, 0.0) - rw * root(d as i64)).inv();
            s += c * r;
        }
        Ok(s / (n as f64).powi(3))
    }

    /// `K(u1, u2)` with automatic node doubling.
    pub fn entry(&self, u1: Site, u2: Site) -> Result<KernelValue> {
        self.entry_ordered(u1, u2, u1.0 >= u2.0)
    }

    /// As [`entry`](Self::entry) but with the radius assignment given
    /// explicitly: `z_outer` puts the `z` circle outside.
    pub fn entry_ordered(&self, u1: Site, u2: Site, z_outer: bool) -> Result<KernelValue> {
        self.quad.validate()?;
        u1.1.half_odd()?;
        u2.1.half_odd()?;
        let eps = self.epsilon(u1.0, u2.0)?;
        let (rz, rw) = if z_outer { (1.0 + eps, 1.0 - eps) } else { (1.0 - eps, 1.0 + eps) };
        let mut n = self.quad.nodes;
        let mut prev = self.level(u1, u2, rz, rw, n)?;
        let mut change = f64::INFINITY;
        for _ in 0..self.quad.max_doublings {
            n *= 2;
            let cur = self.level(u1, u2, rz, rw, n)?;
            change = (cur - prev).norm();
            prev = cur;
            if change < self.quad.tol {
                let slack = 10.0 * self.quad.tol.max(1e-13 * n as f64 / 256.0);
                if prev.im.abs() > slack {
                    return Err(Error::NonReal(prev.im));
                }
                return Ok(KernelValue { value: prev.re, n_used: n, est_error: change });
            }
        }
        Err(Error::NoConvergence { tol: self.quad.tol, nodes: n, change })
    }

    /// The matrix `K(u_i, u_j)`.
    pub fn matrix(&self, points: &[Site]) -> Result<DMatrix<f64>> {
        let n = points.len();
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = self.entry(points[i], points[j])?.value;
            }
        }
        Ok(m)
    }

    /// `ρ(U) = det K(u_i, u_j)`.
    pub fn correlation(&self, points: &[Site]) -> Result<f64> {
        correlation_det(points.len(), |i, j| Ok(self.entry(points[i], points[j])?.value))
    }
}

/// `det (kernel(i, j))_{i,j < n}`; one for the empty set.
pub fn correlation_det(n: usize, kernel: impl Fn(usize, usize) -> Result<f64>) -> Result<f64> {
    if n > 12 {
        return Err(Error::InvalidParameter(format!("{n} points; at most 12 supported")));
    }
    if n == 0 {
        return Ok(1.0);
    }
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = kernel(i, j)?;
        }
    }
    Ok(m.determinant())
}

/// `K((t1,x1),(t2,x2))` for a general parameter set.
pub fn kernel_entry(p: &SchurProcessParams, u1: Site, u2: Site, quad: &QuadratureSpec) -> Result<KernelValue> {
    KernelEvaluator::new(p.clone(), *quad).entry(u1, u2)
}

fn tile_site(p: TilePoint) -> Site {
    (p.t, p.to_particle())
}

/// The `q^{|π|}` kernel in tile coordinates `(t, h)`.
pub fn kernel_3d(a: TilePoint, b: TilePoint, q: f64, quad: &QuadratureSpec) -> Result<KernelValue> {
    KernelEvaluator::new(Mq3d { q }, *quad).entry(tile_site(a), tile_site(b))
}

/// Evaluator for many tile-coordinate queries at one `q`.
pub struct Kernel3d {
    inner: KernelEvaluator<Mq3d>,
}

impl Kernel3d {
    pub fn new(q: f64, quad: QuadratureSpec) -> Self {
        Kernel3d { inner: KernelEvaluator::new(Mq3d { q }, quad) }
    }

    pub fn entry(&self, a: TilePoint, b: TilePoint) -> Result<KernelValue> {
        self.inner.entry(tile_site(a), tile_site(b))
    }

    pub fn correlation(&self, points: &[TilePoint]) -> Result<f64> {
        let sites: Vec<Site> = points.iter().map(|&p| tile_site(p)).collect();
        self.inner.correlation(&sites)
    }
}

/// The time-zero kernel of the poissonized Plancherel measure.
pub fn kernel_planch(x: Half, y: Half, alpha: f64, quad: &QuadratureSpec) -> Result<KernelValue> {
    if !(alpha > 0.0) {
        return Err(Error::InvalidParameter(format!("alpha = {alpha}")));
    }
    KernelEvaluator::new(Planch { sqrt_alpha: alpha.sqrt() }, *quad).entry((0, x), (0, y))
}
