//! Bulk asymptotics of `q^{|π|}` as `q = e^{-r} → 1` with `r t → τ`, `r h → χ`.
//!
//! Local correlations near a macroscopic point are governed by the action
//! `S(z; τ, χ)` and its critical point `z_c`; the tile density is `θ*/π` with
//! `θ* = arg z*`. Negative `τ` is handled by the reflection `t ↦ -t`.
//!
//! ```
//! use schur_process::asympt::{theta_density, BulkPoint};
//! let (theta, rho) = theta_density(BulkPoint::new(0.0, 0.0));
//! assert!((theta - std::f64::consts::FRAC_PI_3).abs() < 1e-15);
//! assert!((rho - 1.0 / 3.0).abs() < 1e-15);
//! ```

mod beta;
mod dilog;
mod grid;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use beta::{beta_double_integral, bulk_correlation, incomplete_beta, Sign};
pub use dilog::{dilog, dilog_real};
pub use grid::{density_grid, density_level_sets, level_curve, shape_grid, DensityRow, Grid, LevelSet, ShapeRow};

/// Macroscopic position `(τ, χ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BulkPoint {
    pub tau: f64,
    pub chi: f64,
}

impl BulkPoint {
    pub fn new(tau: f64, chi: f64) -> Self {
        BulkPoint { tau, chi }
    }

    /// `|τ|`; every quantity except the `x`, `y` coordinates depends on `τ` through it.
    pub fn abs_tau(&self) -> f64 {
        self.tau.abs()
    }

    pub fn region(&self) -> Region {
        classify(self.abs_tau(), self.chi)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    /// Frozen, with density one.
    Below,
    Bulk,
    /// Empty, with density zero.
    Above,
}

/// `χ` on the lower edge of the bulk, `-2 ln(2 cosh(τ/4))`.
pub fn chi_lower(tau: f64) -> f64 {
    -2.0 * (2.0 * (tau / 4.0).cosh()).ln()
}

/// `χ` on the upper edge of the bulk, `-2 ln(2 sinh(|τ|/4))`; infinite at `τ = 0`.
pub fn chi_upper(tau: f64) -> f64 {
    let s = (tau.abs() / 4.0).sinh();
    if s == 0.0 {
        f64::INFINITY
    } else {
        -2.0 * (2.0 * s).ln()
    }
}

fn classify(tau: f64, chi: f64) -> Region {
    if chi <= chi_lower(tau) {
        Region::Below
    } else if chi >= chi_upper(tau) {
        Region::Above
    } else {
        Region::Bulk
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalData {
    pub z_c: Complex64,
    pub z_star: Complex64,
    pub theta_star: f64,
    pub region: Region,
}

/// Roots of `z² - (e^τ + 1 - e^{τ/2-χ}) z + e^τ`, the critical points of `S`.
///
/// In the bulk `z_c` is the root in the upper half plane. Outside it
/// `z* = ±e^{-τ/2}` and `z_c = e^τ z*`.
pub fn critical_points(b: BulkPoint) -> CriticalData {
    let tau = b.abs_tau();
    let region = b.region();
    let et = tau.exp();
    let r = (-tau / 2.0).exp();
    match region {
        Region::Bulk => {
            let p = et + 1.0 - (tau / 2.0 - b.chi).exp();
            let disc = 4.0 * et - p * p;
            let z_c = Complex64::new(p / 2.0, disc.max(0.0).sqrt() / 2.0);
            let z_star = z_c / et;
            CriticalData { z_c, z_star, theta_star: z_star.arg(), region }
        }
        Region::Above => {
            let z_star = Complex64::new(r, 0.0);
            CriticalData { z_c: z_star * et, z_star, theta_star: 0.0, region }
        }
        Region::Below => {
            let z_star = Complex64::new(-r, 0.0);
            CriticalData { z_c: z_star * et, z_star, theta_star: PI, region }
        }
    }
}

/// `θ* = arccos(cosh(τ/2) - e^{-χ}/2)` clamped to `[0, π]`, and `ρ = θ*/π`.
pub fn theta_density(b: BulkPoint) -> (f64, f64) {
    let theta = match b.region() {
        Region::Below => PI,
        Region::Above => 0.0,
        Region::Bulk => ((b.abs_tau() / 2.0).cosh() - (-b.chi).exp() / 2.0).clamp(-1.0, 1.0).acos(),
    };
    (theta, theta / PI)
}

/// `S(z) = -(τ/2 + χ) ln z - Li₂(1/z) + Li₂(e^{-τ} z)`.
pub fn action(z: Complex64, b: BulkPoint) -> Result<Complex64> {
    let tau = b.abs_tau();
    Ok(-(tau / 2.0 + b.chi) * z.ln() - dilog(z.inv())? + dilog((-tau).exp() * z)?)
}

/// `z S'(z) = -(τ/2 + χ) - ln(1 - 1/z) - ln(1 - e^{-τ} z)`.
pub fn action_log_derivative(z: Complex64, b: BulkPoint) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let tau = b.abs_tau();
    -(tau / 2.0 + b.chi) - (one - z.inv()).ln() - (one - (-tau).exp() * z).ln()
}

/// Points `(x, y, z)` of the limit shape, from the hole count
/// `z = π⁻¹ ∫₀^{π-θ*} s sin s / (cos s + cosh(τ/2)) ds`.
pub fn limit_shape(b: BulkPoint) -> (f64, f64, f64) {
    let z = limit_height(b);
    (z - b.chi - b.tau / 2.0, z - b.chi + b.tau / 2.0, z)
}

fn limit_height(b: BulkPoint) -> f64 {
    let (theta, _) = theta_density(b);
    let upper = PI - theta;
    if upper <= 0.0 {
        return 0.0;
    }
    let ch = (b.abs_tau() / 2.0).cosh();
    let f = |s: f64| s * s.sin() / (s.cos() + ch);
    quadrature::double_exponential::integrate(f, 0.0, upper, 1e-13).integral / PI
}

/// The symmetric form `(f - 2 ln A, f - 2 ln B, f - 2 ln C)` with
/// `f = (2π²)⁻¹ ∬ ln|A + B e^{iu} + C e^{iv}| du dv`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CkPoint {
    pub coords: (f64, f64, f64),
    pub f: f64,
    /// Set when `(A, B, C)` is within `1e-3` (relative) of a degenerate triangle,
    /// where the logarithmic singularity degrades the quadrature.
    pub near_singular: bool,
}

pub const CK_NODES: usize = 512;

pub fn ck_parametrization(a: f64, b: f64, c: f64) -> Result<CkPoint> {
    if !(a > 0.0 && b > 0.0 && c > 0.0 && a.is_finite() && b.is_finite() && c.is_finite()) {
        return Err(Error::InvalidParameter(format!("({a}, {b}, {c}) must be positive")));
    }
    let f = ck_f(a, b, c, CK_NODES);
    let s = a + b + c;
    let defect = (a - b - c).abs().min((b - a - c).abs()).min((c - a - b).abs()) / s;
    Ok(CkPoint { coords: (f - 2.0 * a.ln(), f - 2.0 * b.ln(), f - 2.0 * c.ln()), f, near_singular: defect < 1e-3 })
}

/// Tensor trapezoid on the midpoint grid of `[0, 2π)²`.
pub fn ck_f(a: f64, b: f64, c: f64, n: usize) -> f64 {
    let h = 2.0 * PI / n as f64;
    let cs: Vec<Complex64> = (0..n).map(|j| Complex64::from_polar(1.0, (j as f64 + 0.5) * h)).collect();
    let mut acc = 0.0;
    for eu in &cs {
        let base = a + b * eu;
        for ev in &cs {
            let m = (base + c * ev).norm_sqr();
            if m > 0.0 {
                acc += 0.5 * m.ln();
            }
        }
    }
    2.0 * acc / (n * n) as f64
}

/// The limit-shape point at `b` computed through [`ck_parametrization`] with
/// `(A, B, C) = (1, e^{χ/2+τ/4}, e^{χ/2-τ/4})`, reordered to `(x, y, z)`.
pub fn ck_limit_shape(b: BulkPoint) -> Result<(f64, f64, f64)> {
    let p = ck_parametrization(1.0, (b.chi / 2.0 + b.tau / 4.0).exp(), (b.chi / 2.0 - b.tau / 4.0).exp())?;
    let (z, x, y) = p.coords;
    Ok((x, y, z))
}

/// `θ = arccos(ξ/2)` for the Plancherel bulk at `x ≈ ξ √α`, clamped outside `(-2, 2)`.
pub fn planch_theta(xi: f64) -> f64 {
    (xi / 2.0).clamp(-1.0, 1.0).acos()
}

/// The discrete sine kernel `sin(θ d)/(π d)`, equal to `θ/π` at `d = 0`.
pub fn sine_kernel(theta: f64, d: f64) -> f64 {
    if d == 0.0 {
        theta / PI
    } else {
        (theta * d).sin() / (PI * d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BULK: [(f64, f64); 5] = [(0.0, 0.0), (1.0, -1.0), (0.5, 0.2), (2.0, -1.5), (0.3, 1.2)];

    #[test]
    fn origin_critical_point() {
        let d = critical_points(BulkPoint::new(0.0, 0.0));
        assert!((d.z_c - Complex64::from_polar(1.0, PI / 3.0)).norm() < 1e-15);
        assert_eq!(d.region, Region::Bulk);
    }

    #[test]
    fn intersection_invariants() {
        for (t, x) in BULK {
            let b = BulkPoint::new(t, x);
            let d = critical_points(b);
            assert_eq!(d.region, Region::Bulk);
            assert!((d.z_c.norm() - (t / 2.0).exp()).abs() < 1e-12);
            assert!(((d.z_c - t.exp()).norm() - (0.75 * t - x / 2.0).exp()).abs() < 1e-12);
            assert!((d.z_star - (-t).exp() * d.z_c).norm() < 1e-15);
            assert!(d.z_c.im > 0.0);
            assert!(action_log_derivative(d.z_c, b).norm() < 1e-10);
            let (theta, _) = theta_density(b);
            assert!((theta - d.theta_star).abs() < 1e-12);
        }
    }

    #[test]
    fn boundary_flip() {
        let lo = chi_lower(1.0);
        let hi = chi_upper(1.0);
        assert_eq!(BulkPoint::new(1.0, lo).region(), Region::Below);
        assert_eq!(BulkPoint::new(1.0, lo + 1e-12).region(), Region::Bulk);
        assert_eq!(BulkPoint::new(1.0, hi - 1e-12).region(), Region::Bulk);
        assert_eq!(BulkPoint::new(1.0, hi).region(), Region::Above);
        let far = critical_points(BulkPoint::new(1.0, -50.0));
        assert!((far.z_star - Complex64::new(-(-0.5f64).exp(), 0.0)).norm() < 1e-15);
        let top = critical_points(BulkPoint::new(1.0, 5.0));
        assert!((top.z_star - Complex64::new((-0.5f64).exp(), 0.0)).norm() < 1e-15);
        assert_eq!(theta_density(BulkPoint::new(1.0, -50.0)).1, 1.0);
        assert_eq!(theta_density(BulkPoint::new(1.0, 5.0)).1, 0.0);
    }

    #[test]
    fn density_monotone_and_continuous() {
        for t in [0.0, 0.4, 1.5] {
            let lo = chi_lower(t) - 0.5;
            let mut prev = 1.0;
            for k in 0..400 {
                let chi = lo + 0.01 * k as f64;
                let (_, rho) = theta_density(BulkPoint::new(t, chi));
                assert!(rho <= prev + 1e-15);
                assert!(prev - rho < 0.2);
                prev = rho;
            }
            let (_, edge) = theta_density(BulkPoint::new(t, chi_lower(t) + 1e-10));
            assert!(1.0 - edge < 1e-3);
        }
    }

    #[test]
    fn action_symmetries() {
        for (t, x) in BULK {
            let b = BulkPoint::new(t, x);
            for k in 0..9 {
                let z = Complex64::from_polar(0.3 + 0.4 * k as f64, 0.3 + 0.7 * k as f64);
                if z.im.abs() < 1e-3 {
                    continue;
                }
                let s = action(z, b).unwrap();
                assert!((action(z.conj(), b).unwrap() - s.conj()).norm() < 1e-12);
                let f = s + action(t.exp() / z, b).unwrap() + (t / 2.0 + x) * t;
                assert!(f.norm() < 1e-10, "functional equation at {z}");
                let w = Complex64::from_polar((t / 2.0).exp(), 0.1 + 0.6 * k as f64);
                let re = action(w, b).unwrap().re;
                assert!((re + (t / 2.0 + x) * t / 2.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn reflection_in_tau() {
        let a = BulkPoint::new(0.7, -0.4);
        let b = BulkPoint::new(-0.7, -0.4);
        assert_eq!(theta_density(a), theta_density(b));
        assert_eq!(critical_points(a), critical_points(b));
        let (xa, ya, za) = limit_shape(a);
        let (xb, yb, zb) = limit_shape(b);
        assert!((xa - yb).abs() < 1e-15 && (ya - xb).abs() < 1e-15 && za == zb);
    }

    #[test]
    fn height_vanishes_at_lower_edge() {
        for t in [0.0, 0.5, 2.0] {
            assert_eq!(limit_shape(BulkPoint::new(t, chi_lower(t))).2, 0.0);
            assert_eq!(limit_shape(BulkPoint::new(t, chi_lower(t) - 1.0)).2, 0.0);
        }
    }

    #[test]
    fn height_is_integrated_hole_density() {
        for (t, x) in BULK {
            let lo = chi_lower(t);
            let f = |s: f64| 1.0 - theta_density(BulkPoint::new(t, s)).1;
            let direct = quadrature::double_exponential::integrate(f, lo, x, 1e-12).integral;
            let z = limit_shape(BulkPoint::new(t, x)).2;
            assert!((z - direct).abs() < 1e-8, "({t}, {x}): {z} vs {direct}");
        }
    }

    #[test]
    fn ck_jensen_oracle() {
        // Jensen: (2π)⁻¹ ∫ ln|α + B e^{iu}| du = max(ln|α|, ln B)
        let jensen = |a: f64, b: f64, c: f64| {
            let n = 4096;
            let mut acc = 0.0;
            for j in 0..n {
                let v = 2.0 * PI * (j as f64 + 0.5) / n as f64;
                let al = (Complex64::new(a, 0.0) + c * Complex64::from_polar(1.0, v)).norm();
                acc += al.ln().max(b.ln());
            }
            2.0 * acc / n as f64
        };
        for (a, b, c) in [(1.0, 0.6, 0.7), (1.0, 0.2, 0.3), (2.0, 0.5, 3.0), (1.0, 1.0, 1.0)] {
            assert!((ck_f(a, b, c, CK_NODES) - jensen(a, b, c)).abs() < 1e-3);
        }
        assert_eq!(ck_parametrization(1.0, 1e-300, 1e-300).unwrap().f, 0.0);
        assert!(ck_parametrization(1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn ck_permutation_symmetry() {
        let p = ck_parametrization(1.0, 0.8, 0.5).unwrap();
        let q = ck_parametrization(0.5, 1.0, 0.8).unwrap();
        assert!((p.coords.0 - q.coords.1).abs() < 1e-5);
        assert!((p.coords.1 - q.coords.2).abs() < 1e-5);
        assert!((p.coords.2 - q.coords.0).abs() < 1e-5);
        assert!(ck_parametrization(1.0, 0.5, 0.5).unwrap().near_singular);
    }

    #[test]
    fn ck_matches_limit_shape() {
        for (t, x) in BULK {
            let b = BulkPoint::new(t, x);
            let (x1, y1, z1) = limit_shape(b);
            let (x2, y2, z2) = ck_limit_shape(b).unwrap();
            assert!((z1 - z2).abs() < 1e-3 && (x1 - x2).abs() < 1e-3 && (y1 - y2).abs() < 1e-3, "({t},{x})");
        }
    }

    #[test]
    fn planch_theta_values() {
        assert!((planch_theta(0.0) - PI / 2.0).abs() < 1e-15);
        assert_eq!(planch_theta(2.0), 0.0);
        assert_eq!(planch_theta(-2.0), PI);
        assert_eq!(planch_theta(5.0), 0.0);
        assert!((sine_kernel(1.0, 0.0) - 1.0 / PI).abs() < 1e-16);
    }
}
