//! The dilogarithm `Li₂(z) = Σ zⁿ/n²`, continued with a cut along `(1, ∞)`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZETA2: f64 = PI * PI / 6.0;
const TERMS: usize = 24;

/// `B_{2k} / (2k+1)!` for `k = 1..=TERMS`, via `B_{2k} = (-1)^{k+1} 2 (2k)! ζ(2k) / (2π)^{2k}`.
fn bernoulli_coeffs() -> &'static [f64; TERMS] {
    static C: OnceLock<[f64; TERMS]> = OnceLock::new();
    C.get_or_init(|| {
        let mut c = [0.0; TERMS];
        for (i, slot) in c.iter_mut().enumerate() {
            let k = (i + 1) as i32;
            let zeta = if k == 1 { ZETA2 } else { zeta(2 * k) };
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            *slot = sign * 2.0 * zeta / ((2 * k + 1) as f64 * (2.0 * PI).powi(2 * k));
        }
        c
    })
}

/// `ζ(s)` for integer `s ≥ 4`, with an Euler–Maclaurin tail.
fn zeta(s: i32) -> f64 {
    let n = 40.0f64;
    let sf = s as f64;
    let head: f64 = (1..40).map(|k| (k as f64).powi(-s)).sum();
    head + n.powi(1 - s) / (sf - 1.0) + 0.5 * n.powi(-s) + sf * n.powi(-s - 1) / 12.0
        - sf * (sf + 1.0) * (sf + 2.0) * n.powi(-s - 3) / 720.0
}

/// Series in `u = -ln(1 - z)`, accurate for `|z| ≤ 1`, `Re z ≤ ½`.
fn bernoulli_series(z: Complex64) -> Complex64 {
    let u = -(Complex64::new(1.0, 0.0) - z).ln();
    let u2 = u * u;
    let mut term = u * u2;
    let mut acc = u - u2 / 4.0;
    for &c in bernoulli_coeffs() {
        let t = c * term;
        acc += t;
        if t.norm() < 1e-17 * acc.norm() {
            break;
        }
        term *= u2;
    }
    acc
}

/// `Li₂(z)`. Values on the cut `z ∈ (1, ∞)` are rejected.
pub fn dilog(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidParameter(format!("dilog({z})")));
    }
    if z.im == 0.0 && z.re > 1.0 {
        return Err(Error::OnBranchCut(format!("dilog({z})")));
    }
    let one = Complex64::new(1.0, 0.0);
    if z == Complex64::new(0.0, 0.0) {
        return Ok(z);
    }
    if z == one {
        return Ok(Complex64::new(ZETA2, 0.0));
    }
    if z.norm_sqr() > 1.0 {
        // Li₂(z) = -π²/6 - ½ ln²(-z) - Li₂(1/z)
        let l = (-z).ln();
        return Ok(-ZETA2 - 0.5 * l * l - small(z.inv()));
    }
    Ok(small(z))
}

fn small(z: Complex64) -> Complex64 {
    if z.re > 0.5 {
        // Li₂(z) = π²/6 - ln z ln(1-z) - Li₂(1-z)
        let w = Complex64::new(1.0, 0.0) - z;
        if w == Complex64::new(0.0, 0.0) {
            return Complex64::new(ZETA2, 0.0);
        }
        ZETA2 - z.ln() * w.ln() - bernoulli_series(w)
    } else {
        bernoulli_series(z)
    }
}

/// `Li₂(x)` for real `x ≤ 1`.
pub fn dilog_real(x: f64) -> Result<f64> {
    if x > 1.0 {
        return Err(Error::OnBranchCut(format!("dilog({x})")));
    }
    Ok(dilog(Complex64::new(x, 0.0))?.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn series(z: Complex64) -> Complex64 {
        let mut acc = c(0.0, 0.0);
        let mut p = z;
        for n in 1..2000 {
            acc += p / (n * n) as f64;
            p *= z;
        }
        acc
    }

    #[test]
    fn special_values() {
        assert_eq!(dilog(c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert!((dilog(c(1.0, 0.0)).unwrap().re - ZETA2).abs() < 1e-15);
        assert!((dilog_real(-1.0).unwrap() + ZETA2 / 2.0).abs() < 1e-15);
        let half = ZETA2 / 2.0 - std::f64::consts::LN_2.powi(2) / 2.0;
        assert!((dilog_real(0.5).unwrap() - half).abs() < 1e-15);
        assert!(matches!(dilog(c(2.0, 0.0)), Err(Error::OnBranchCut(_))));
        assert!(dilog(c(2.0, 1e-300)).is_ok());
    }

    #[test]
    fn series_oracle() {
        for k in 0..40 {
            let z = Complex64::from_polar(0.1 + 0.015 * k as f64, 0.7 * k as f64);
            assert!((dilog(z).unwrap() - series(z)).norm() < 1e-14, "{z}");
        }
    }

    #[test]
    fn reflection_and_inversion_residuals() {
        let mut seed = 12345u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..200 {
            let z = c(4.0 * next() - 2.0, 4.0 * next() - 2.0);
            let one = c(1.0, 0.0);
            let refl = dilog(z).unwrap() + dilog(one - z).unwrap() - (ZETA2 - z.ln() * (one - z).ln());
            assert!(refl.norm() < 1e-12, "reflection at {z}");
            let l = (-z).ln();
            let inv = dilog(z).unwrap() + dilog(z.inv()).unwrap() + ZETA2 + 0.5 * l * l;
            assert!(inv.norm() < 1e-12, "inversion at {z}");
        }
    }

    #[test]
    fn continuous_across_unit_circle() {
        for k in 1..12 {
            let th = 0.5 * k as f64;
            let a = dilog(Complex64::from_polar(1.0 - 1e-9, th)).unwrap();
            let b = dilog(Complex64::from_polar(1.0 + 1e-9, th)).unwrap();
            assert!((a - b).norm() < 1e-7);
        }
    }
}
