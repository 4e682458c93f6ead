//! Self-checks run by `schurproc verify`.

use std::collections::HashMap;
use std::io::Write;

use schur_process::asympt::{beta_double_integral, critical_points, incomplete_beta, BulkPoint, Sign};
use schur_process::combin::{PlanePartition, TilePoint};
use schur_process::kernel::{Kernel3d, QuadratureSpec};
use schur_process::process::{
    boxed_distribution, correlation_bruteforce, correlation_bruteforce_tiles, enumerate_configs, mcmahon_coefficients, mcmahon_product, mq_params,
    mq_window, partition_function, restrict, BoxSampler,
};
use schur_process::Half;

use crate::config::RunConfig;
use crate::{CliResult, Outcome};

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn suite(name: &'static str, r: schur_process::Result<(bool, String)>) -> SuiteResult {
    match r {
        Ok((passed, detail)) => SuiteResult { name, passed, detail },
        Err(e) => SuiteResult { name, passed: false, detail: format!("error: {e}") },
    }
}

/// Box counts up to volume 10 against the McMahon coefficients, and `Z` against the product.
pub fn check_mcmahon(q: f64) -> schur_process::Result<(bool, String)> {
    let coeffs = mcmahon_coefficients(10);
    let counts: Vec<u128> = (0..=10).map(|n| PlanePartition::all_of_volume(n).len() as u128).collect();
    let z = partition_function(&mq_params(q, mq_window(q, 1e-17)))?;
    let prod = mcmahon_product(q, 4 * mq_window(q, 1e-17));
    let rel = (z / prod - 1.0).abs();
    let ok = counts == coeffs && rel < 1e-10;
    Ok((ok, format!("counts {:?}, |Z/M(q) - 1| = {rel:.2e}", counts)))
}

/// Ratio of the enumeration tail to the full `Z`, with the window used for enumeration.
pub fn tail_ratio(q: f64, cutoff: u32) -> schur_process::Result<(f64, u32)> {
    let m = cutoff as usize + 1;
    let ens = enumerate_configs(&mq_params(q, m), cutoff)?;
    let z = partition_function(&mq_params(q, mq_window(q, 1e-17)))?;
    Ok(((1.0 - ens.total_weight / z).max(0.0), m as u32))
}

/// Kernel determinants against truncated enumeration at a few tile sets.
pub fn check_kernel(q: f64, cutoff: u32, tail_rel: f64, m: u32) -> schur_process::Result<(bool, String)> {
    let p = mq_params(q, m as usize);
    let k = Kernel3d::new(q, QuadratureSpec::with_tol(1e-10));
    let tile = |t, h2| TilePoint::new(t, h2).expect("valid tile");
    let sets = [
        vec![tile(0, -1)],
        vec![tile(0, 1)],
        vec![tile(1, 0)],
        vec![tile(-1, -2)],
        vec![tile(0, -1), tile(0, -3)],
        vec![tile(0, -1), tile(1, -2)],
        vec![tile(-1, 0), tile(1, 0)],
        vec![tile(0, -1), tile(1, 0), tile(-1, 0)],
    ];
    let tol = 1e-6 + 2.0 * tail_rel;
    let mut worst: f64 = 0.0;
    for s in &sets {
        let a = k.correlation(s)?;
        let b = correlation_bruteforce_tiles(s, &p, cutoff)?;
        worst = worst.max((a - b).abs());
    }
    Ok((worst < tol, format!("max |det K - brute| = {worst:.2e} (tol {tol:.2e})")))
}

/// Closed-form `B±(k, l)` against the double integral for `k, l ∈ [-3, 3]`.
pub fn check_beta() -> schur_process::Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for b in [BulkPoint::new(0.0, 0.0), BulkPoint::new(1.0, -1.0)] {
        let zs = critical_points(b).z_star;
        for k in -3i64..=3 {
            for l in -3i64..=3 {
                let ex = incomplete_beta(k, l, zs, Sign::for_time_offset(k))?;
                let di = beta_double_integral(k, l, b)?;
                worst = worst.max((ex - di).abs());
            }
        }
    }
    Ok((worst < 1e-8, format!("max |B - double integral| = {worst:.2e}")))
}

/// Brute-force correlations after restricting to a subset of times.
pub fn check_restriction() -> schur_process::Result<(bool, String)> {
    let p = mq_params(0.05, 30);
    let times = [-2i64, 0, 1];
    let rp = restrict(&p, &times)?;
    let h = |x: f64| Half::from_f64(x).expect("half-integer");
    let mut worst: f64 = 0.0;
    for (sel_o, sel_r) in [
        (vec![(-2, h(0.5))], vec![(0, h(0.5))]),
        (vec![(0, h(-0.5)), (1, h(1.5))], vec![(1, h(-0.5)), (2, h(1.5))]),
        (vec![(-2, h(-1.5)), (1, h(0.5))], vec![(0, h(-1.5)), (2, h(0.5))]),
    ] {
        let a = correlation_bruteforce(&sel_o, &p, 12)?;
        let b = correlation_bruteforce(&sel_r, &rp, 12)?;
        worst = worst.max((a - b).abs());
    }
    Ok((worst < 1e-10, format!("max difference {worst:.2e}")))
}

/// Total variation between the chain's occupation frequencies after
/// `steps / 2` moves of burn-in and the exact boxed law.
pub fn sampler_tv(q: f64, dims: (usize, usize, u32), steps: u64, seed: u64) -> schur_process::Result<f64> {
    let exact = boxed_distribution(q, dims);
    let mut s = BoxSampler::new(q, dims, seed)?;
    s.run(steps / 2);
    let mut seen: HashMap<Vec<u32>, u64> = HashMap::new();
    let n = steps - steps / 2;
    for _ in 0..n {
        s.step();
        *seen.entry(s.heights().to_vec()).or_default() += 1;
    }
    let (a, b, _) = dims;
    let mut tv = 0.0;
    let mut covered = 0u64;
    for (pi, p) in &exact {
        let key: Vec<u32> = (0..a).flat_map(|i| (0..b).map(move |j| (i, j))).map(|(i, j)| pi.entry(i + 1, j + 1)).collect();
        let c = seen.get(&key).copied().unwrap_or(0);
        covered += c;
        tv += (c as f64 / n as f64 - p).abs();
    }
    tv += (n - covered) as f64 / n as f64;
    Ok(tv / 2.0)
}

pub fn check_sampler(seed: u64) -> schur_process::Result<(bool, String)> {
    let tv = sampler_tv(0.5, (2, 2, 2), 1_000_000, seed)?;
    Ok((tv < 0.01, format!("TV distance {tv:.4}")))
}

pub fn suites(cfg: &RunConfig, err: &mut dyn Write) -> CliResult<Vec<SuiteResult>> {
    let q = cfg.q();
    let mut out = vec![suite("mcmahon", check_mcmahon(q))];
    match tail_ratio(q, cfg.cutoff) {
        Ok((tail, m)) => {
            if tail > 1e-6 {
                writeln!(err, "warning: enumeration tail is {tail:.2e} of Z at q = {q}, cutoff {}; brute-force values are biased", cfg.cutoff)?;
            }
            out.push(suite("kernel", check_kernel(q, cfg.cutoff, tail, m)));
        }
        Err(e) => out.push(suite("kernel", Err(e))),
    }
    out.push(suite("incomplete-beta", check_beta()));
    out.push(suite("restriction", check_restriction()));
    out.push(suite("sampler", check_sampler(cfg.seed)));
    Ok(out)
}

pub fn run(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<Outcome> {
    let results = suites(cfg, err)?;
    writeln!(out, "{:<16} {:<6} detail", "suite", "result")?;
    for r in &results {
        writeln!(out, "{:<16} {:<6} {}", r.name, if r.passed { "PASS" } else { "FAIL" }, r.detail)?;
    }
    match results.iter().find(|r| !r.passed) {
        Some(r) => Ok(Outcome { passed: false, message: Some(format!("suite `{}` failed", r.name)) }),
        None => Ok(Outcome::ok()),
    }
}
