//! The function `Φ(t, z)` and the quantum dilogarithm.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::half::Half;
use crate::process::SchurProcessParams;
use crate::schur::Factor;

/// Distance below which a factor is treated as vanishing.
pub const SINGULAR_GUARD: f64 = 1e-12;

/// A family `t ↦ Φ(t, ·)` together with its annulus of analyticity.
pub trait PhiSource: Sync {
    fn phi(&self, t: i64, z: Complex64) -> Result<Complex64>;

    /// Radii `(inner, outer)` between which `Φ(t, ·)` is analytic and nonvanishing.
    fn annulus(&self, t: i64) -> (f64, f64);
}

fn check(f: &Factor, u: Complex64) -> Result<()> {
    if let Factor::GeomPole(a) | Factor::LinZero(a) = *f {
        let d = (Complex64::new(1.0, 0.0) - a * u).norm();
        if d < SINGULAR_GUARD {
            return Err(Error::NearSingularity(format!("{u}"), d));
        }
    }
    Ok(())
}

/// `Φ(t, z) = ∏_{m>t} φ⁻[m](1/z) / ∏_{m<t} φ⁺[m](1/z)`.
///
/// In the natural variable of each side this evaluates minus factors at
/// `u = z` and plus factors at `u = 1/z`.
pub fn phi_big(p: &SchurProcessParams, t: i64, z: Complex64) -> Result<Complex64> {
    let th = Half::from_int(t);
    let zi = z.inv();
    let mut num = Complex64::new(1.0, 0.0);
    let mut den = Complex64::new(1.0, 0.0);
    for (m, pair) in p.iter() {
        if m > th {
            for f in pair.minus.factors() {
                check(f, z)?;
                num *= f.eval(z);
            }
        } else {
            for f in pair.plus.factors() {
                check(f, zi)?;
                den *= f.eval(zi);
            }
        }
    }
    Ok(num / den)
}

impl PhiSource for SchurProcessParams {
    fn phi(&self, t: i64, z: Complex64) -> Result<Complex64> {
        phi_big(self, t, z)
    }

    fn annulus(&self, t: i64) -> (f64, f64) {
        let th = Half::from_int(t);
        let mut inner: f64 = 0.0;
        let mut outer = f64::INFINITY;
        for (m, pair) in self.iter() {
            if m > th {
                outer = outer.min(pair.minus.singular_radius());
            } else {
                let r = pair.plus.singular_radius();
                if r.is_finite() {
                    inner = inner.max(1.0 / r);
                }
            }
        }
        (inner, outer)
    }
}

const QD_BLOCK: usize = 32;

/// `(z; q)_∞ = ∏_{n≥0} (1 - qⁿ z)`, truncated once `qⁿ|z| < 1e-18`.
///
/// Factors are multiplied in blocks and the block logarithms summed, which
/// keeps intermediate products in range for `q` close to one.
pub fn qdilog(z: Complex64, q: f64) -> Result<Complex64> {
    Ok(ln_qdilog_raw(z, q)?.exp())
}

fn ln_qdilog_raw(z: Complex64, q: f64) -> Result<Complex64> {
    if !(0.0..1.0).contains(&q) {
        return Err(Error::InvalidParameter(format!("q = {q} outside [0, 1)")));
    }
    let one = Complex64::new(1.0, 0.0);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut qn = 1.0;
    loop {
        let mut block = one;
        for _ in 0..QD_BLOCK {
            let f = one - qn * z;
            if f.norm() < SINGULAR_GUARD {
                return Err(Error::NearSingularity(format!("{z}"), f.norm()));
            }
            block *= f;
            qn *= q;
        }
        acc += block.ln();
        if qn * z.norm() < 1e-18 || qn == 0.0 {
            return Ok(acc);
        }
    }
}

/// `ln (z; q)_∞` on the branch that is real for real `z < 1`, as a sum of
/// principal logarithms of the individual factors.
pub fn ln_qdilog(z: Complex64, q: f64) -> Result<Complex64> {
    if !(0.0..1.0).contains(&q) {
        return Err(Error::InvalidParameter(format!("q = {q} outside [0, 1)")));
    }
    let one = Complex64::new(1.0, 0.0);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut qn = 1.0;
    while qn * z.norm() >= 1e-18 && qn > 0.0 {
        let f = one - qn * z;
        if f.norm() < SINGULAR_GUARD {
            return Err(Error::NearSingularity(format!("{z}"), f.norm()));
        }
        acc += f.ln();
        qn *= q;
    }
    Ok(acc)
}

/// The closed form of `Φ` for the `q^{|π|}` measure.
pub fn phi_3d(t: i64, z: Complex64, q: f64) -> Result<Complex64> {
    let s = q.sqrt();
    let (num, den) = if t >= 0 {
        (qdilog(s / z, q)?, qdilog(s * q.powi(t as i32) * z, q)?)
    } else {
        (qdilog(s * q.powi(-t as i32) / z, q)?, qdilog(s * z, q)?)
    };
    Ok(num / den)
}

/// `Φ` for the `q^{|π|}` measure evaluated through [`phi_3d`].
#[derive(Clone, Copy, Debug)]
pub struct Mq3d {
    pub q: f64,
}

impl PhiSource for Mq3d {
    fn phi(&self, t: i64, z: Complex64) -> Result<Complex64> {
        phi_3d(t, z, self.q)
    }

    fn annulus(&self, t: i64) -> (f64, f64) {
        let s = self.q.sqrt();
        if t >= 0 {
            (s, 1.0 / (s * self.q.powi(t as i32)))
        } else {
            (s * self.q.powi(-t as i32), 1.0 / s)
        }
    }
}

/// `Φ(0, z) = e^{√α (z - 1/z)}` of the poissonized Plancherel measure.
#[derive(Clone, Copy, Debug)]
pub struct Planch {
    pub sqrt_alpha: f64,
}

impl PhiSource for Planch {
    fn phi(&self, t: i64, z: Complex64) -> Result<Complex64> {
        let c = self.sqrt_alpha;
        Ok(match t {
            0 => (c * (z - z.inv())).exp(),
            t if t < 0 => (c * z).exp(),
            _ => (-c * z.inv()).exp(),
        })
    }

    fn annulus(&self, _t: i64) -> (f64, f64) {
        (0.0, f64::INFINITY)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::{mq_params, plancherel_params};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn trivial_phi_is_one() {
        let p = SchurProcessParams::trivial();
        assert_eq!(phi_big(&p, 3, c(0.3, 0.9)).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn qdilog_examples() {
        assert_eq!(qdilog(c(0.0, 0.0), 0.5).unwrap(), c(1.0, 0.0));
        let q: f64 = 0.3;
        let euler: f64 = (1..200).map(|n| 1.0 - q.powi(n)).product();
        assert!((qdilog(c(q, 0.0), q).unwrap() - euler).norm() < 1e-14);
        assert!(qdilog(c(1.0 / (q * q), 0.0), q).is_err());
        let z = c(0.4, -0.7);
        let direct: Complex64 = (0..400).map(|n| c(1.0, 0.0) - q.powi(n) * z).product();
        assert!((qdilog(z, q).unwrap() - direct).norm() < 1e-14);
        assert!((ln_qdilog(z, q).unwrap().exp() - direct).norm() < 1e-14);
    }

    #[test]
    fn phi_3d_matches_window_product() {
        let q = 0.4;
        let p = mq_params(q, 60);
        for t in -4..=4 {
            for k in 0..7 {
                let z = Complex64::from_polar(1.1, 0.9 * k as f64);
                let a = phi_big(&p, t, z).unwrap();
                let b = phi_3d(t, z, q).unwrap();
                assert!((a - b).norm() < 1e-10 * b.norm(), "t={t} z={z}");
            }
        }
        let z = c(0.2, 1.0);
        assert!((phi_3d(0, z, q).unwrap() - qdilog(q.sqrt() / z, q).unwrap() / qdilog(q.sqrt() * z, q).unwrap()).norm() < 1e-15);
    }

    #[test]
    fn phi_3d_reflection() {
        // Φ(-t, z) = 1/Φ(t, 1/z)
        let q = 0.35;
        for t in 0..4 {
            let z = c(0.8, 0.5);
            let a = phi_3d(-t, z, q).unwrap();
            let b = phi_3d(t, z.inv(), q).unwrap().inv();
            assert!((a - b).norm() < 1e-12 * a.norm());
        }
    }

    #[test]
    fn plancherel_phi() {
        let a: f64 = 2.0;
        let p = plancherel_params(a);
        let src = Planch { sqrt_alpha: a.sqrt() };
        for t in -1..=1 {
            let z = c(0.7, -0.4);
            assert!((phi_big(&p, t, z).unwrap() - src.phi(t, z).unwrap()).norm() < 1e-14);
        }
    }

    #[test]
    fn annuli() {
        let q = 0.25;
        let p = mq_params(q, 30);
        let m = Mq3d { q };
        for t in -3..=3 {
            let (a, b) = p.annulus(t);
            let (c2, d) = m.annulus(t);
            assert!((a - c2).abs() < 1e-12 && (b - d).abs() < 1e-9 * d);
        }
    }

    #[test]
    fn dilog_limit() {
        // -r ln (z; e^{-r}) → Li₂(z), with O(r) error
        let z = c(0.5, 0.0);
        let li2_half = std::f64::consts::PI.powi(2) / 12.0 - std::f64::consts::LN_2.powi(2) / 2.0;
        let mut prev = f64::INFINITY;
        for r in [0.1f64, 0.05, 0.025] {
            let v = -r * ln_qdilog(z, (-r).exp()).unwrap();
            let err = (v.re - li2_half).abs();
            assert!(err < r && err < prev);
            prev = err;
        }
    }
}
