//! The kernel as a sum over products of Laurent coefficients of `Φ`.
//!
//! Expanding `1/(z - w)` in the region fixed by the time order gives
//! `K = Σ_{m ≥ 1/2} [z^{x1+m}]Φ(t1,·) · [w^{-x2-m}]Φ(t2,·)^{-1}` for
//! `t1 ≥ t2`, and minus the mirrored sum otherwise. The coefficients are
//! taken on the unit circle by a single FFT per function.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::half::Half;
use crate::kernel::{PhiSource, Site};

#[derive(Clone, Debug, PartialEq)]
pub struct SumRepr {
    pub value: f64,
    pub n_used: usize,
    /// Absolute value of each of the `M` terms, in order.
    pub terms: Vec<f64>,
}

impl SumRepr {
    pub fn last_term(&self) -> f64 {
        self.terms.last().copied().unwrap_or(0.0)
    }
}

fn laurent(src: &impl PhiSource, t: i64, inverse: bool, n: usize) -> Result<Vec<Complex64>> {
    let mut v = Vec::with_capacity(n);
    for j in 0..n {
        let z = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / n as f64);
        let f = src.phi(t, z)?;
        v.push(if inverse { f.inv() } else { f });
    }
    FftPlanner::new().plan_fft_forward(n).process(&mut v);
    for c in v.iter_mut() {
        *c /= n as f64;
    }
    Ok(v)
}

fn coeff(c: &[Complex64], k: i64) -> Complex64 {
    c[k.rem_euclid(c.len() as i64) as usize]
}

/// The first `m_terms` terms of the coefficient sum, with FFT sizes doubled
/// from 1024 until the partial sum changes by less than `tol`.
pub fn kernel_sum_repr(src: &impl PhiSource, u1: Site, u2: Site, m_terms: usize, tol: f64) -> Result<SumRepr> {
    let (t1, x1) = u1;
    let (t2, x2) = u2;
    let a1 = (x1.half_odd()? + Half(1)).as_integer().unwrap(); // x1 + 1/2
    let a2 = (x2.half_odd()? + Half(1)).as_integer().unwrap(); // x2 + 1/2
    let eval = |n: usize| -> Result<(Complex64, Vec<f64>)> {
        let a = laurent(src, t1, false, n)?;
        let b = laurent(src, t2, true, n)?;
        let mut s = Complex64::new(0.0, 0.0);
        let mut terms = Vec::with_capacity(m_terms);
        for k in 0..m_terms as i64 {
            // m = k + 1/2
            let term = if t1 >= t2 {
                coeff(&a, a1 + k) * coeff(&b, -a2 - k)
            } else {
                -coeff(&a, a1 - k - 1) * coeff(&b, -a2 + k + 1)
            };
            terms.push(term.norm());
            s += term;
        }
        Ok((s, terms))
    };
    let mut n = 1024;
    let (mut prev, _) = eval(n)?;
    for _ in 0..8 {
        n *= 2;
        let (cur, terms) = eval(n)?;
        let change = (cur - prev).norm();
        prev = cur;
        if change < tol {
            let out = SumRepr { value: cur.re, n_used: n, terms };
            if out.last_term() > tol {
                return Err(Error::TailBound { bound: out.last_term(), limit: tol, order: m_terms });
            }
            return Ok(out);
        }
    }
    Err(Error::NoConvergence { tol, nodes: n, change: f64::NAN })
}
