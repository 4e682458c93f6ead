//! Specializations, skew Schur functions and transition weights.
//!
//! A specialization is a finite product of elementary factors in one
//! variable `u`. On the plus side `u = z`, on the minus side `u = 1/z`.
//! Its Taylor coefficients play the role of the complete homogeneous
//! functions `h_k`, and skew Schur functions follow from the Jacobi–Trudi
//! determinant.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::combin::Partition;
use crate::error::{Error, Result};

/// One elementary factor of a specialization.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "param")]
pub enum Factor {
    /// `(1 - a u)^{-1}`
    GeomPole(f64),
    /// `1 - a u`
    LinZero(f64),
    /// `e^{c u}`
    Exp(f64),
}

impl Factor {
    pub fn eval(&self, u: Complex64) -> Complex64 {
        match *self {
            Factor::GeomPole(a) => (Complex64::new(1.0, 0.0) - a * u).inv(),
            Factor::LinZero(a) => Complex64::new(1.0, 0.0) - a * u,
            Factor::Exp(c) => (c * u).exp(),
        }
    }

    /// Taylor coefficients `[u^0 .. u^n]`.
    pub fn h_coeffs(&self, n: usize) -> Vec<f64> {
        let mut h = vec![0.0; n + 1];
        match *self {
            Factor::GeomPole(a) => {
                let mut p = 1.0;
                for v in h.iter_mut() {
                    *v = p;
                    p *= a;
                }
            }
            Factor::LinZero(a) => {
                h[0] = 1.0;
                if n >= 1 {
                    h[1] = -a;
                }
            }
            Factor::Exp(c) => {
                let mut p = 1.0;
                for (k, v) in h.iter_mut().enumerate() {
                    *v = p;
                    p *= c / (k + 1) as f64;
                }
            }
        }
        h
    }

    /// `[u^k] log(factor)` for `k ≥ 1`.
    pub fn log_coeff(&self, k: usize) -> f64 {
        debug_assert!(k >= 1);
        match *self {
            Factor::GeomPole(a) => a.powi(k as i32) / k as f64,
            Factor::LinZero(a) => -a.powi(k as i32) / k as f64,
            Factor::Exp(c) => {
                if k == 1 {
                    c
                } else {
                    0.0
                }
            }
        }
    }

    /// `|u|` of the nearest zero or pole, infinite for `Exp`.
    pub fn singular_radius(&self) -> f64 {
        match *self {
            Factor::GeomPole(a) | Factor::LinZero(a) => {
                if a == 0.0 {
                    f64::INFINITY
                } else {
                    1.0 / a.abs()
                }
            }
            Factor::Exp(_) => f64::INFINITY,
        }
    }

    /// Geometric decay rate of the log coefficients.
    fn decay(&self) -> Option<f64> {
        match *self {
            Factor::GeomPole(a) | Factor::LinZero(a) => Some(a.abs()),
            Factor::Exp(_) => None,
        }
    }

    fn is_identity(&self) -> bool {
        match *self {
            Factor::GeomPole(a) | Factor::LinZero(a) | Factor::Exp(a) => a == 0.0,
        }
    }
}

/// A finite product of [`Factor`]s. The empty product is the trivial
/// specialization `h_k = δ_{k0}`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Specialization(Vec<Factor>);

impl Specialization {
    pub const EMPTY: Specialization = Specialization(Vec::new());

    pub fn new(factors: Vec<Factor>) -> Self {
        Specialization(factors)
    }

    pub fn trivial() -> Self {
        Specialization(Vec::new())
    }

    pub fn single(f: Factor) -> Self {
        Specialization(vec![f])
    }

    pub fn factors(&self) -> &[Factor] {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(Factor::is_identity)
    }

    /// The product specialization `self · other`.
    pub fn times(&self, other: &Specialization) -> Specialization {
        let mut f = self.0.clone();
        f.extend_from_slice(&other.0);
        Specialization(f)
    }

    pub fn push(&mut self, f: Factor) {
        self.0.push(f);
    }

    pub fn eval(&self, u: Complex64) -> Complex64 {
        self.0.iter().map(|f| f.eval(u)).product()
    }

    /// Smallest `|u|` at which a factor vanishes or blows up.
    pub fn singular_radius(&self) -> f64 {
        self.0.iter().map(Factor::singular_radius).fold(f64::INFINITY, f64::min)
    }

    /// Taylor coefficients `[h_0, …, h_n]` of the product.
    pub fn h_coeffs(&self, n: usize) -> Vec<f64> {
        let mut acc = vec![0.0; n + 1];
        acc[0] = 1.0;
        for f in &self.0 {
            if f.is_identity() {
                continue;
            }
            let g = f.h_coeffs(n);
            let mut next = vec![0.0; n + 1];
            for (i, &a) in acc.iter().enumerate() {
                if a == 0.0 {
                    continue;
                }
                for (j, &b) in g[..=n - i].iter().enumerate() {
                    next[i + j] += a * b;
                }
            }
            acc = next;
        }
        acc
    }

    pub fn log_coeffs(&self, order: usize) -> LogCoeffs {
        let coeffs = (1..=order).map(|k| self.0.iter().map(|f| f.log_coeff(k)).sum()).collect();
        LogCoeffs { coeffs }
    }

    /// `(count, max rate)` over factors with geometric log coefficients.
    fn geometric_profile(&self) -> (usize, f64) {
        let rates: Vec<f64> = self.0.iter().filter_map(Factor::decay).filter(|&a| a > 0.0).collect();
        (rates.len(), rates.iter().copied().fold(0.0, f64::max))
    }
}

/// `(log φ)_k` for `1 ≤ k ≤ order`. For a minus-side specialization entry
/// `k` is the coefficient of `z^{-k}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogCoeffs {
    coeffs: Vec<f64>,
}

impl LogCoeffs {
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `(log φ)_{±k}`; zero beyond the truncation order.
    pub fn get(&self, k: usize) -> f64 {
        assert!(k >= 1);
        self.coeffs.get(k - 1).copied().unwrap_or(0.0)
    }

    /// Re-expands `exp(Σ L_k u^k)` to `[u^0 .. u^n]`, using `n h_n = Σ k L_k h_{n-k}`.
    pub fn exp_series(&self, n: usize) -> Vec<f64> {
        let mut h = vec![0.0; n + 1];
        h[0] = 1.0;
        for m in 1..=n {
            let s: f64 = (1..=m).map(|k| k as f64 * self.get(k) * h[m - k]).sum();
            h[m] = s / m as f64;
        }
        h
    }
}

/// The plus and minus halves of one Schur process parameter `φ[m]`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SpecPair {
    pub plus: Specialization,
    pub minus: Specialization,
}

impl SpecPair {
    pub fn new(plus: Specialization, minus: Specialization) -> Self {
        SpecPair { plus, minus }
    }

    pub fn plus(f: Factor) -> Self {
        SpecPair { plus: Specialization::single(f), minus: Specialization::trivial() }
    }

    pub fn minus(f: Factor) -> Self {
        SpecPair { plus: Specialization::trivial(), minus: Specialization::single(f) }
    }

    pub fn is_trivial(&self) -> bool {
        self.plus.is_trivial() && self.minus.is_trivial()
    }
}

/// `s_{λ/μ}` from precomputed `h = [h_0, h_1, …]`; `h` must reach `λ_1 + len(λ)`.
pub fn skew_schur_h(lambda: &Partition, mu: &Partition, h: &[f64]) -> f64 {
    if !lambda.contains(mu) {
        return 0.0;
    }
    let n = lambda.len();
    if n == 0 {
        return 1.0;
    }
    let entry = |i: usize, j: usize| -> f64 {
        let k = lambda.get(i) as i64 - mu.get(j) as i64 - i as i64 + j as i64;
        if k < 0 {
            0.0
        } else {
            h[k as usize]
        }
    };
    if n == 1 {
        return entry(0, 0);
    }
    DMatrix::from_fn(n, n, entry).determinant()
}

/// Jacobi–Trudi `det(h_{λ_i - μ_j - i + j})`.
pub fn skew_schur(lambda: &Partition, mu: &Partition, s: &Specialization) -> f64 {
    let h = s.h_coeffs(lambda.get(0) as usize + lambda.len());
    skew_schur_h(lambda, mu, &h)
}

/// `S_φ(μ, λ) = Σ_ν s_{μ/ν}(φ⁻) s_{λ/ν}(φ⁺)`.
pub fn transition_weight(mu: &Partition, lambda: &Partition, phi: &SpecPair) -> f64 {
    let hp = phi.plus.h_coeffs(lambda.get(0) as usize + lambda.len());
    let hm = phi.minus.h_coeffs(mu.get(0) as usize + mu.len());
    transition_weight_h(mu, lambda, &hp, &hm)
}

/// [`transition_weight`] with precomputed coefficient arrays.
pub fn transition_weight_h(mu: &Partition, lambda: &Partition, h_plus: &[f64], h_minus: &[f64]) -> f64 {
    let plus_trivial = h_plus.iter().skip(1).all(|&v| v == 0.0);
    let minus_trivial = h_minus.iter().skip(1).all(|&v| v == 0.0);
    if minus_trivial {
        return skew_schur_h(lambda, mu, h_plus);
    }
    if plus_trivial {
        return skew_schur_h(mu, lambda, h_minus);
    }
    let meet = Partition::from_sorted(
        (0..mu.len().min(lambda.len())).map(|i| mu.get(i).min(lambda.get(i))).collect(),
    );
    meet.subdiagrams()
        .iter()
        .map(|nu| skew_schur_h(mu, nu, h_minus) * skew_schur_h(lambda, nu, h_plus))
        .sum()
}

/// Tail limit used when the truncation order is chosen automatically.
pub const COMMUTATION_TAIL: f64 = 1e-14;

/// Bound on `Σ_{k>order} |k L_k M_k|`.
pub fn commutation_tail_bound(phi: &Specialization, psi: &Specialization, order: usize) -> f64 {
    let (na, a) = phi.geometric_profile();
    let (nb, b) = psi.geometric_profile();
    if na == 0 || nb == 0 {
        return 0.0;
    }
    let r = a * b;
    if r >= 1.0 {
        return f64::INFINITY;
    }
    let k1 = (order + 1) as f64;
    (na * nb) as f64 * r.powf(k1) / (k1 * (1.0 - r))
}

/// Smallest order whose tail bound is below `limit`.
pub fn commutation_order(phi: &Specialization, psi: &Specialization, limit: f64) -> Result<usize> {
    let mut k = 1;
    loop {
        let b = commutation_tail_bound(phi, psi, k);
        if b <= limit {
            return Ok(k);
        }
        if !b.is_finite() || k > 1 << 22 {
            return Err(Error::TailBound { bound: b, limit, order: k });
        }
        k = if b > 1e3 * limit { k * 2 } else { k + 1 };
    }
}

/// `exp(Σ_{k=1}^{order} k (log φ)_k (log ψ)_{-k})`, with `φ` plus-side and `ψ` minus-side.
pub fn commutation_constant(phi: &Specialization, psi: &Specialization, order: usize) -> Result<f64> {
    let bound = commutation_tail_bound(phi, psi, order);
    if bound > COMMUTATION_TAIL {
        return Err(Error::TailBound { bound, limit: COMMUTATION_TAIL, order });
    }
    if phi.is_trivial() || psi.is_trivial() {
        return Ok(1.0);
    }
    let l = phi.log_coeffs(order);
    let m = psi.log_coeffs(order);
    let s: f64 = (1..=order).map(|k| k as f64 * l.get(k) * m.get(k)).sum();
    Ok(s.exp())
}

/// [`commutation_constant`] at the smallest order meeting [`COMMUTATION_TAIL`].
pub fn commutation_constant_auto(phi: &Specialization, psi: &Specialization) -> Result<f64> {
    let k = commutation_order(phi, psi, COMMUTATION_TAIL)?;
    commutation_constant(phi, psi, k)
}
