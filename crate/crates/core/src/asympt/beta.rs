//! The incomplete beta kernel `B±(k, l; z*)` and its double-integral form.

use std::f64::consts::PI;
use std::num::NonZeroUsize;
use std::sync::OnceLock;

use gauss_quad::GaussLegendre;
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{theta_density, BulkPoint, Region};
use crate::combin::TilePoint;
use crate::error::{Error, Result};

/// Which way the arc from `z̄*` to `z*` goes around the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    /// Counterclockwise through `+|z*|`.
    Plus,
    /// Clockwise through `-|z*|`.
    Minus,
}

impl Sign {
    pub fn for_time_offset(dt: i64) -> Sign {
        if dt >= 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

fn binom(n: i64, k: i64) -> f64 {
    if k < 0 || k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

struct Arc {
    r: f64,
    phi0: f64,
    phi1: f64,
}

impl Arc {
    fn at(&self, phi: f64) -> Complex64 {
        Complex64::from_polar(self.r, phi)
    }

    /// `∫ w^{p-1} dw`.
    fn power(&self, p: i64) -> Complex64 {
        if p == 0 {
            Complex64::new(0.0, self.phi1 - self.phi0)
        } else {
            let pf = p as f64;
            self.r.powi(p as i32) * (Complex64::from_polar(1.0, pf * self.phi1) - Complex64::from_polar(1.0, pf * self.phi0)) / pf
        }
    }

    /// Change of `ln(1 - w)` along the arc, on a continuous branch.
    fn log_one_minus(&self) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        let (w0, w1) = (self.at(self.phi0), self.at(self.phi1));
        if self.r > 1.0 {
            // ln(1 - w) = ln(-w) + ln(1 - 1/w), both continuous off the unit disc
            Complex64::new(0.0, self.phi1 - self.phi0) + (one - w1.inv()).ln() - (one - w0.inv()).ln()
        } else {
            (one - w1).ln() - (one - w0).ln()
        }
    }

    /// `∫ (1 - w)^e dw`.
    fn shifted_power(&self, e: i64) -> Complex64 {
        if e == -1 {
            -self.log_one_minus()
        } else {
            let one = Complex64::new(1.0, 0.0);
            let (w0, w1) = (self.at(self.phi0), self.at(self.phi1));
            let ep = (e + 1) as i32;
            -((one - w1).powi(ep) - (one - w0).powi(ep)) / (e + 1) as f64
        }
    }
}

/// `(2πi)⁻¹ ∫_{z̄*}^{z*} (1 - w)^k w^{-l-1} dw` along the arc `|w| = |z*|`.
///
/// The antiderivative is taken exactly: binomial expansion for `k ≥ 0` and
/// partial fractions otherwise.
pub fn incomplete_beta(k: i64, l: i64, z_star: Complex64, sign: Sign) -> Result<f64> {
    let r = z_star.norm();
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidParameter(format!("z* = {z_star}")));
    }
    let theta = z_star.im.atan2(z_star.re).abs();
    let touches_one = match sign {
        Sign::Plus => theta > 0.0,
        Sign::Minus => theta < 1e-12,
    };
    if k < 0 && (r - 1.0).abs() < 1e-12 && touches_one {
        return Err(Error::SingularEndpoint);
    }
    let arc = match sign {
        Sign::Plus => Arc { r, phi0: -theta, phi1: theta },
        Sign::Minus => Arc { r, phi0: -theta, phi1: theta - 2.0 * PI },
    };
    let a = -l - 1;
    let mut acc = Complex64::new(0.0, 0.0);
    if k >= 0 {
        for j in 0..=k {
            let c = binom(k, j) * if j % 2 == 0 { 1.0 } else { -1.0 };
            acc += c * arc.power(a + j + 1);
        }
    } else if a >= 0 {
        // w^a = Σ C(a, j) (-1)^j (1 - w)^j
        for j in 0..=a {
            let c = binom(a, j) * if j % 2 == 0 { 1.0 } else { -1.0 };
            acc += c * arc.shifted_power(j + k);
        }
    } else {
        let (m, n) = (-a, -k);
        for s in 1..=m {
            acc += binom(n + m - s - 1, m - s) * arc.power(1 - s);
        }
        for s in 1..=n {
            acc += binom(n + m - s - 1, n - s) * arc.shifted_power(-s);
        }
    }
    Ok(acc.im / (2.0 * PI))
}

fn reflect(b: BulkPoint, points: &[TilePoint]) -> Vec<TilePoint> {
    if b.tau < 0.0 {
        points.iter().map(|p| TilePoint::new(-p.t, p.h2()).expect("reflection keeps parity")).collect()
    } else {
        points.to_vec()
    }
}

/// `det [B±(Δt_ij, Δh_ij + Δt_ij/2; z*)]` with `+` iff `Δt_ij ≥ 0`.
///
/// Points are horizontal tile centers relative to the macroscopic position
/// `b`; for `τ < 0` they are reflected in `t` first.
pub fn bulk_correlation(offsets: &[TilePoint], b: BulkPoint) -> Result<f64> {
    let pts = reflect(b, offsets);
    let n = pts.len();
    if n == 0 {
        return Ok(1.0);
    }
    let z_star = super::critical_points(b).z_star;
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let dt = pts[i].t - pts[j].t;
            let l = (pts[i].h2() - pts[j].h2() + dt) / 2;
            m[(i, j)] = incomplete_beta(dt, l, z_star, Sign::for_time_offset(dt))?;
        }
    }
    Ok(m.determinant())
}

const GL_DEGREE: usize = 24;

fn gl() -> &'static GaussLegendre {
    static G: OnceLock<GaussLegendre> = OnceLock::new();
    G.get_or_init(|| GaussLegendre::new(NonZeroUsize::new(GL_DEGREE).unwrap()))
}

/// Composite Gauss–Legendre on `[a, b]`, doubling panels until successive
/// totals differ by less than `tol`.
pub(crate) fn composite<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64> {
    let g = gl();
    let mut panels = 1usize;
    let total = |p: usize| {
        let h = (b - a) / p as f64;
        (0..p).map(|i| g.integrate(a + i as f64 * h, a + (i + 1) as f64 * h, f)).sum::<f64>()
    };
    let mut prev = total(panels);
    while panels < 1 << 12 {
        panels *= 2;
        let cur = total(panels);
        if (cur - prev).abs() < tol {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::NoConvergence { tol, nodes: panels * GL_DEGREE, change: f64::NAN })
}

const INNER_MAX: usize = 1 << 20;

/// `(2πi)⁻¹ ∮_{|z|=R} z^{-k-1} (1 - βz)⁻¹ dz` by the trapezoid rule, with
/// enough nodes that the aliasing factor `(βR)^{±N}` is below `e^{-40}`.
fn inner(k: i64, beta: Complex64, rz: f64) -> Complex64 {
    let delta = (rz * beta.norm()).ln().abs();
    let need = if delta > 0.0 { (40.0 / delta).ceil() as usize } else { INNER_MAX };
    let n = need.clamp(32, INNER_MAX).next_power_of_two().max(2 * k.unsigned_abs() as usize + 2);
    let step = Complex64::from_polar(1.0, 2.0 * PI / n as f64);
    let mut z = Complex64::new(rz, 0.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..n {
        if j % 64 == 0 {
            z = Complex64::from_polar(rz, 2.0 * PI * j as f64 / n as f64);
        }
        acc += z.powi(-k as i32) / (1.0 - beta * z);
        z *= step;
    }
    acc / n as f64
}

/// `(2πi)⁻² ∬ z^{-k-1} w^{-l-1} (1 - z + zw)⁻¹ dz dw` over
/// `|w| = e^{-τ/2}`, `|z| = e^{τ/4+χ/2}`.
///
/// The inner integral is a trapezoid sum in `z`; the outer one is composite
/// Gauss–Legendre in `arg w`, split where the inner integrand's pole crosses
/// the `z` circle.
pub fn beta_double_integral(k: i64, l: i64, b: BulkPoint) -> Result<f64> {
    let tau = b.abs_tau();
    let rw = (-tau / 2.0).exp();
    let rz = (tau / 4.0 + b.chi / 2.0).exp();
    let f = |phi: f64| {
        let w = Complex64::from_polar(rw, phi);
        (inner(k, 1.0 - w, rz) * w.powi(-l as i32)).re / (2.0 * PI)
    };
    let tol = 1e-11;
    if b.region() == Region::Bulk {
        let (theta, _) = theta_density(b);
        Ok(composite(&f, -PI, -theta, tol)? + composite(&f, -theta, theta, tol)? + composite(&f, theta, PI, tol)?)
    } else {
        composite(&f, -PI, PI, tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asympt::{critical_points, sine_kernel};

    /// `(2π)⁻¹ ∫ (1 - w)^k w^{-l} dφ` along the same arc.
    fn arc_quadrature(k: i64, l: i64, z: Complex64, sign: Sign) -> f64 {
        let r = z.norm();
        let th = z.arg().abs();
        let (a, b) = match sign {
            Sign::Plus => (-th, th),
            Sign::Minus => (-th, th - 2.0 * PI),
        };
        let f = |phi: f64| {
            let w = Complex64::from_polar(r, phi);
            ((1.0 - w).powi(k as i32) * w.powi(-l as i32)).re / (2.0 * PI)
        };
        if a < b {
            composite(&f, a, b, 1e-14).unwrap()
        } else {
            -composite(&f, b, a, 1e-14).unwrap()
        }
    }

    #[test]
    fn antiderivative_matches_quadrature() {
        let stars = [
            Complex64::from_polar(1.0, 1.0),
            Complex64::from_polar(0.6, 2.2),
            Complex64::from_polar(1.4, 0.4),
            Complex64::from_polar(0.8, 0.05),
            Complex64::from_polar(1.3, 3.0),
        ];
        for z in stars {
            for k in -4..=4 {
                for l in -4..=4 {
                    for sign in [Sign::Plus, Sign::Minus] {
                        if k < 0 && sign == Sign::Plus && (z.norm() - 1.0).abs() < 1e-12 {
                            continue;
                        }
                        let exact = incomplete_beta(k, l, z, sign).unwrap();
                        let num = arc_quadrature(k, l, z, sign);
                        assert!((exact - num).abs() < 1e-12 * (1.0 + num.abs()), "k={k} l={l} z={z} {sign:?}: {exact} vs {num}");
                    }
                }
            }
        }
    }

    #[test]
    fn equal_time_values() {
        for th in [0.3, 1.0, PI / 3.0, 2.5] {
            let z = Complex64::from_polar(1.0, th);
            assert!((incomplete_beta(0, 0, z, Sign::Plus).unwrap() - th / PI).abs() < 1e-15);
            for l in 1..6 {
                let want = (th * l as f64).sin() / (PI * l as f64);
                assert!((incomplete_beta(0, l, z, Sign::Plus).unwrap() - want).abs() < 1e-14);
                assert!((incomplete_beta(0, -l, z, Sign::Plus).unwrap() - want).abs() < 1e-14);
            }
        }
        assert_eq!(incomplete_beta(-1, 0, Complex64::from_polar(1.0, 0.5), Sign::Plus), Err(Error::SingularEndpoint));
        assert!(incomplete_beta(-1, 0, Complex64::from_polar(1.0, 0.5), Sign::Minus).is_ok());
    }

    #[test]
    fn single_point_is_density() {
        for (t, x) in [(0.0, 0.0), (1.0, -1.0), (0.5, 0.2), (1.0, -5.0), (1.0, 3.0)] {
            let b = BulkPoint::new(t, x);
            let p = TilePoint::new(0, 1).unwrap();
            let v = bulk_correlation(&[p], b).unwrap();
            assert!((v - theta_density(b).1).abs() < 1e-14, "({t},{x})");
        }
    }

    #[test]
    fn determinants_are_gauge_invariant() {
        let b = BulkPoint::new(0.8, -0.6);
        let pts: Vec<TilePoint> = [(0, 1), (1, 0), (-1, 2), (2, -3)].iter().map(|&(t, h)| TilePoint::new(t, h).unwrap()).collect();
        let z = critical_points(b).z_star;
        let n = pts.len();
        let mut m = DMatrix::zeros(n, n);
        let mut g = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let dt = pts[i].t - pts[j].t;
                let l = (pts[i].h2() - pts[j].h2() + dt) / 2;
                m[(i, j)] = incomplete_beta(dt, l, z, Sign::for_time_offset(dt)).unwrap();
                g[(i, j)] = m[(i, j)] * (-b.tau * l as f64).exp();
            }
        }
        assert!((m.determinant() - g.determinant()).abs() < 1e-12);
        assert!((m.determinant() - bulk_correlation(&pts, b).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn equal_time_pair_is_sine_determinant() {
        for (t, x) in [(0.0, 0.0), (1.0, -1.0), (0.5, 0.2)] {
            let b = BulkPoint::new(t, x);
            let (th, _) = theta_density(b);
            for d in 1..5 {
                let pts = [TilePoint::new(3, 0).unwrap(), TilePoint::new(3, 2 * d).unwrap()];
                let s = sine_kernel(th, d as f64);
                let want = sine_kernel(th, 0.0).powi(2) - s * s;
                assert!((bulk_correlation(&pts, b).unwrap() - want).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn reflection_negates_time_offsets() {
        let pts = [TilePoint::new(0, 1).unwrap(), TilePoint::new(1, 2).unwrap(), TilePoint::new(-2, 1).unwrap()];
        let refl: Vec<_> = pts.iter().map(|p| TilePoint::new(-p.t, p.h2()).unwrap()).collect();
        let a = bulk_correlation(&pts, BulkPoint::new(-0.7, -0.3)).unwrap();
        let b = bulk_correlation(&refl, BulkPoint::new(0.7, -0.3)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn double_integral_identity() {
        for (t, x) in [(0.0, 0.0), (1.0, -1.0)] {
            let b = BulkPoint::new(t, x);
            let z = critical_points(b).z_star;
            for (k, l) in [(0, 0), (2, 1), (-1, 0), (-3, 2), (1, -2), (4, 4)] {
                let one = incomplete_beta(k, l, z, Sign::for_time_offset(k)).unwrap();
                let two = beta_double_integral(k, l, b).unwrap();
                assert!((one - two).abs() < 1e-8, "({t},{x}) k={k} l={l}: {one} vs {two}");
            }
        }
    }

    #[test]
    fn double_integral_degenerate() {
        let below = BulkPoint::new(1.0, -6.0);
        let above = BulkPoint::new(1.0, 4.0);
        assert!((beta_double_integral(0, 0, below).unwrap() - 1.0).abs() < 1e-10);
        assert!(beta_double_integral(0, 0, above).unwrap().abs() < 1e-10);
    }
}
