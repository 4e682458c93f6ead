//! Schur process parameters, weights, partition functions and marginals.
//!
//! Parameters are indexed by half-integer times `m`; `φ[m]` governs the
//! transition from `λ(m - 1/2)` to `λ(m + 1/2)`. Every time outside the
//! stored map carries the trivial specialization.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::combin::{Partition, SliceSequence};
use crate::error::{Error, Result};
use crate::half::Half;
use crate::schur::{
    commutation_constant, commutation_constant_auto, skew_schur, transition_weight, Factor,
    SpecPair, Specialization,
};

pub mod enumerate;
pub mod mcmc;

pub use enumerate::{
    correlation_bruteforce, correlation_bruteforce_tiles, enumerate_configs, BoxedEnsemble, Enumerator, OccupancyTable,
};
pub use mcmc::{boxed_distribution, mcmc_sample, BoxSampler, Move};

static TRIVIAL: SpecPair = SpecPair {
    plus: Specialization::EMPTY,
    minus: Specialization::EMPTY,
};

/// The family `φ[m]` over a finite window of half-integer times.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SchurProcessParams {
    phi: BTreeMap<Half, SpecPair>,
}

impl SchurProcessParams {
    /// Keys must be half-odd; trivial entries are dropped.
    pub fn new(phi: BTreeMap<Half, SpecPair>) -> Result<Self> {
        for m in phi.keys() {
            m.half_odd()?;
        }
        let phi = phi.into_iter().filter(|(_, v)| !v.is_trivial()).collect();
        Ok(SchurProcessParams { phi })
    }

    pub fn trivial() -> Self {
        SchurProcessParams::default()
    }

    pub fn get(&self, m: Half) -> &SpecPair {
        self.phi.get(&m).unwrap_or(&TRIVIAL)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Half, &SpecPair)> {
        self.phi.iter().map(|(m, v)| (*m, v))
    }

    /// Smallest and largest `m` with nontrivial `φ[m]`.
    pub fn window(&self) -> Option<(Half, Half)> {
        Some((*self.phi.first_key_value()?.0, *self.phi.last_key_value()?.0))
    }

    /// Integer times strictly inside the window, where slices can be nonempty.
    pub fn free_times(&self) -> Option<(i64, i64)> {
        let (lo, hi) = self.window()?;
        Some(((lo + Half(1)).as_integer().unwrap(), (hi - Half(1)).as_integer().unwrap()))
    }

    /// `∏_{m < t} φ⁺[m]`.
    pub fn plus_before(&self, t: i64) -> Specialization {
        let mut s = Specialization::trivial();
        for (_, v) in self.iter().filter(|(m, _)| *m < Half::from_int(t)) {
            s = s.times(&v.plus);
        }
        s
    }

    /// `∏_{m > t} φ⁻[m]`.
    pub fn minus_after(&self, t: i64) -> Specialization {
        let mut s = Specialization::trivial();
        for (_, v) in self.iter().filter(|(m, _)| *m > Half::from_int(t)) {
            s = s.times(&v.minus);
        }
        s
    }
}

/// `∏_m S_{φ[m]}(λ(m - 1/2), λ(m + 1/2))`, unnormalized.
pub fn weight(s: &SliceSequence, p: &SchurProcessParams) -> f64 {
    let (mut lo, mut hi) = match p.window() {
        Some((a, b)) => (a.floor(), b.floor()),
        None => (0, -1),
    };
    if let Some((a, b)) = s.support() {
        lo = lo.min(a - 1);
        hi = hi.max(b);
    }
    let mut w = 1.0;
    for k in lo..=hi {
        let m = Half::plus_half(k);
        w *= transition_weight(s.get(k), s.get(k + 1), p.get(m));
        if w == 0.0 {
            break;
        }
    }
    w
}

/// `Z = ∏_{m₁ < m₂} H(φ⁺[m₁], φ⁻[m₂])`, each factor truncated at `order`.
pub fn partition_function_with_order(p: &SchurProcessParams, order: usize) -> Result<f64> {
    pairwise(p, |a, b| commutation_constant(a, b, order))
}

/// `Z` with per-pair truncation orders chosen to meet the tail limit.
pub fn partition_function(p: &SchurProcessParams) -> Result<f64> {
    pairwise(p, commutation_constant_auto)
}

fn pairwise(
    p: &SchurProcessParams,
    f: impl Fn(&Specialization, &Specialization) -> Result<f64>,
) -> Result<f64> {
    let entries: Vec<_> = p.iter().collect();
    let mut log_z = 0.0;
    for (i, (_, a)) in entries.iter().enumerate() {
        if a.plus.is_trivial() {
            continue;
        }
        for (_, b) in &entries[i + 1..] {
            if b.minus.is_trivial() {
                continue;
            }
            log_z += f(&a.plus, &b.minus)?.ln();
        }
    }
    Ok(log_z.exp())
}

/// Smallest `M` with `q^M < tol`.
pub fn mq_window(q: f64, tol: f64) -> usize {
    assert!(q > 0.0 && q < 1.0);
    (tol.ln() / q.ln()).ceil().max(1.0) as usize
}

/// `φ[m] = (1 - q^{|m|} z)^{-1}` for `m < 0` and `(1 - q^{|m|}/z)^{-1}` for
/// `m > 0`, over `|m| < M`.
pub fn mq_params(q: f64, m_max: usize) -> SchurProcessParams {
    anisotropic_params(q, |m| m.to_f64().abs(), m_max)
}

/// As [`mq_params`] with exponent `V(m)`; infinite `V` gives a trivial factor.
pub fn anisotropic_params(q: f64, v: impl Fn(Half) -> f64, m_max: usize) -> SchurProcessParams {
    let mut phi = BTreeMap::new();
    for k in 0..m_max as i64 {
        for m in [Half::plus_half(-k - 1), Half::plus_half(k)] {
            let e = v(m);
            if !e.is_finite() {
                continue;
            }
            let f = Factor::GeomPole(q.powf(e));
            let pair = if m < Half::ZERO { SpecPair::plus(f) } else { SpecPair::minus(f) };
            phi.insert(m, pair);
        }
    }
    SchurProcessParams::new(phi).expect("half-odd keys")
}

/// Exponential factors `e^{√α z}` at `m = -1/2` and `e^{√α/z}` at `m = 1/2`.
pub fn plancherel_params(alpha: f64) -> SchurProcessParams {
    let c = alpha.sqrt();
    let mut phi = BTreeMap::new();
    phi.insert(Half(-1), SpecPair::plus(Factor::Exp(c)));
    phi.insert(Half(1), SpecPair::minus(Factor::Exp(c)));
    SchurProcessParams::new(phi).expect("half-odd keys")
}

/// The process seen only at `times`, relabelled `0, 1, …, n-1`.
///
/// New parameter `φ̃[l]` collects all `φ[m]` between consecutive chosen
/// times; `φ̃[-1/2]` takes everything before `times[0]` and
/// `φ̃[n - 1/2]` everything after the last time.
pub fn restrict(p: &SchurProcessParams, times: &[i64]) -> Result<SchurProcessParams> {
    if times.is_empty() || times.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::NonMonotoneTimes(times.to_vec()));
    }
    let n = times.len();
    let mut buckets = vec![SpecPair::default(); n + 1];
    for (m, v) in p.iter() {
        let l = times.partition_point(|&t| Half::from_int(t) < m);
        let b = &mut buckets[l];
        b.plus = b.plus.times(&v.plus);
        b.minus = b.minus.times(&v.minus);
    }
    let phi = buckets
        .into_iter()
        .enumerate()
        .map(|(l, v)| (Half::plus_half(l as i64 - 1), v))
        .collect();
    SchurProcessParams::new(phi)
}

/// `s_λ(∏_{m<t} φ⁺[m]) · s_λ(∏_{m>t} φ⁻[m])`, unnormalized.
pub fn marginal_weight(lambda: &Partition, t: i64, p: &SchurProcessParams) -> f64 {
    let e = Partition::empty();
    skew_schur(lambda, &e, &p.plus_before(t)) * skew_schur(lambda, &e, &p.minus_after(t))
}

/// `P(λ(t) = λ)`: [`marginal_weight`] over the Schur measure normalizer
/// `H(∏_{m<t} φ⁺[m]; ∏_{m>t} φ⁻[m])`.
///
/// This differs from dividing by the full `Z` unless every plus factor lies
/// before `t` and every minus factor after it, as for `M_q` at `t = 0`.
pub fn marginal_probability(lambda: &Partition, t: i64, p: &SchurProcessParams) -> Result<f64> {
    let h = commutation_constant_auto(&p.plus_before(t), &p.minus_after(t))?;
    Ok(marginal_weight(lambda, t, p) / h)
}

/// `E|π| = Σ_{n≥1} n² qⁿ / (1 - qⁿ)` under the measure `q^{|π|}`.
pub fn expected_volume(q: f64) -> f64 {
    assert!((0.0..1.0).contains(&q));
    let mut sum = 0.0;
    let mut qn = 1.0;
    for n in 1u64.. {
        qn *= q;
        let nf = n as f64;
        let term = nf * nf * qn / (1.0 - qn);
        sum += term;
        let ratio = ((nf + 1.0) / nf).powi(2) * q;
        if ratio < 1.0 && term * ratio / (1.0 - ratio) < 1e-16 * sum.max(1e-300) {
            break;
        }
        if qn == 0.0 {
            break;
        }
    }
    sum
}

/// `∏_{n=1}^{terms} (1 - qⁿ)^{-n}`.
pub fn mcmahon_product(q: f64, terms: usize) -> f64 {
    let log: f64 = (1..=terms).map(|n| -(n as f64) * (-q.powi(n as i32)).ln_1p()).sum();
    log.exp()
}

/// Coefficients of `∏_{n≥1} (1 - qⁿ)^{-n}` up to `q^N`, by exact integer
/// series multiplication.
pub fn mcmahon_coefficients(big_n: usize) -> Vec<u128> {
    let mut c = vec![0u128; big_n + 1];
    c[0] = 1;
    for n in 1..=big_n {
        // multiply n times by (1 - q^n)^{-1}
        for _ in 0..n {
            for k in n..=big_n {
                c[k] += c[k - n];
            }
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::{diagonal_slices, PlanePartition};

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn mq_weight_of_example() {
        let pi = PlanePartition::new(vec![vec![5, 3, 2, 1], vec![4, 3, 1, 1], vec![3, 2, 1], vec![2, 1]]).unwrap();
        let q: f64 = 0.7;
        let w = weight(&diagonal_slices(&pi), &mq_params(q, 40));
        assert!((w / q.powi(29) - 1.0).abs() < 1e-12);
        assert_eq!(weight(&SliceSequence::default(), &mq_params(q, 10)), 1.0);
        let bad = SliceSequence::new(0, vec![p(&[1]), p(&[2])]);
        assert_eq!(weight(&bad, &mq_params(q, 10)), 0.0);
    }

    #[test]
    fn mq_symmetry() {
        let params = mq_params(0.3, 5);
        for k in 0..5 {
            let a = params.get(Half::plus_half(-k - 1));
            let b = params.get(Half::plus_half(k));
            assert_eq!(a.plus, b.minus);
            assert!(a.minus.is_trivial() && b.plus.is_trivial());
        }
        assert_eq!(params.window(), Some((Half(-9), Half(9))));
        assert_eq!(params.free_times(), Some((-4, 4)));
    }

    #[test]
    fn partition_function_examples() {
        let q = 0.5;
        let z = partition_function(&mq_params(q, mq_window(q, 1e-16))).unwrap();
        assert!((z - mcmahon_product(q, 200)).abs() < 1e-10 * z);
        let mut single = BTreeMap::new();
        single.insert(Half(1), SpecPair::minus(Factor::GeomPole(0.4)));
        assert_eq!(partition_function(&SchurProcessParams::new(single).unwrap()).unwrap(), 1.0);
        let z = partition_function(&plancherel_params(2.5)).unwrap();
        assert!((z - 2.5f64.exp()).abs() < 1e-12 * z);
    }

    #[test]
    fn mcmahon_series() {
        assert_eq!(
            mcmahon_coefficients(10),
            vec![1, 1, 3, 6, 13, 24, 48, 86, 160, 282, 500]
        );
    }

    #[test]
    fn restrict_examples() {
        let params = mq_params(0.3, 3);
        let all: Vec<i64> = (-2..=2).collect();
        let r = restrict(&params, &all).unwrap();
        for k in 0..all.len() {
            for d in [-1i64, 1] {
                let orig = params.get(Half(2 * all[k] + d));
                let new = r.get(Half(2 * k as i64 + d));
                assert_eq!(orig, new);
            }
        }
        let r = restrict(&params, &[0]).unwrap();
        assert_eq!(r.get(Half(-1)).plus.factors().len(), 3);
        assert_eq!(r.get(Half(1)).minus.factors().len(), 3);
        let r = restrict(&plancherel_params(1.0), &[-3, -2, 0]).unwrap();
        assert!(r.get(Half(1)).is_trivial());
        assert!(restrict(&params, &[1, 1]).is_err());
        assert!(restrict(&params, &[2, 1]).is_err());
    }

    #[test]
    fn plancherel_marginals() {
        let alpha: f64 = 3.0;
        let params = plancherel_params(alpha);
        assert_eq!(marginal_weight(&Partition::empty(), 0, &params), 1.0);
        assert!((marginal_weight(&p(&[1]), 0, &params) - alpha).abs() < 1e-14);
        let lam = p(&[3, 1]);
        let dim = lam.dimension();
        let expect = (alpha.powf(2.0) * dim / 24.0).powi(2);
        let s1 = skew_schur(&lam, &Partition::empty(), &Specialization::single(Factor::Exp(1.0)));
        assert!((s1 - dim / 24.0).abs() < 1e-14);
        assert!((marginal_weight(&lam, 0, &params) - expect).abs() < 1e-12 * expect);
    }

    #[test]
    fn expected_volume_small_q() {
        let q = 1e-6;
        assert!((expected_volume(q) - q).abs() < 1e-5 * q);
        assert_eq!(expected_volume(0.0), 0.0);
    }

    #[test]
    fn anisotropic_infinite_is_trivial() {
        let params = anisotropic_params(0.5, |m| if m.doubled().abs() > 3 { f64::INFINITY } else { m.to_f64().abs() }, 10);
        assert_eq!(params.window(), Some((Half(-3), Half(3))));
        let same = anisotropic_params(0.5, |m| m.to_f64().abs(), 10);
        assert_eq!(same, mq_params(0.5, 10));
    }
}
