use std::collections::HashMap;

use schur_process::combin::{from_slices, volume, Partition};
use schur_process::process::{
    anisotropic_params, correlation_bruteforce, enumerate_configs, expected_volume, marginal_probability, marginal_weight, mcmahon_product,
    mq_params, partition_function, restrict, weight, Enumerator,
};
use schur_process::Half;

#[test]
fn partition_function_matches_enumeration() {
    let p = mq_params(0.1, 40);
    let ens = enumerate_configs(&p, 12).unwrap();
    let z = partition_function(&p).unwrap();
    assert!((z - ens.total_weight).abs() < 1e-8);
    assert!(ens.tail.unwrap() >= 0.0 && ens.tail.unwrap() < 1e-8);
    for (s, w) in ens.entries.iter().take(200) {
        assert!((weight(s, &p) - w).abs() < 1e-14 * w.max(1e-300));
    }
}

#[test]
fn marginal_consistency() {
    let q = 0.1;
    let p = mq_params(q, 40);
    let z = partition_function(&p).unwrap();
    for t in [-1i64, 0, 2] {
        let mut e = Enumerator::new(&p, 12);
        let t0 = e.first_time();
        let mut marg: HashMap<Partition, f64> = HashMap::new();
        let mut total = 0.0;
        e.for_each(|sl, w| {
            total += w;
            let k = (t - t0) as usize;
            *marg.entry(sl[k].clone()).or_default() += w;
        });
        for (lam, w) in marg.iter().filter(|(l, _)| l.size() <= 4) {
            let exact = marginal_probability(lam, t, &p).unwrap();
            assert!((exact - w / total).abs() < 1e-8, "t={t} {lam:?}");
            if t == 0 {
                assert!((marginal_weight(lam, t, &p) / z - w / total).abs() < 1e-8);
            }
        }
    }
}

#[test]
fn restriction_consistency() {
    let q = 0.05;
    let p = mq_params(q, 30);
    let times = [-2i64, 0, 1];
    let rp = restrict(&p, &times).unwrap();
    let pts = [(0usize, 0.5), (1, -0.5), (2, 1.5), (0, -1.5), (1, 0.5)];
    for i in 0..pts.len() {
        for j in i..pts.len() {
            let sel = if i == j { vec![pts[i]] } else { vec![pts[i], pts[j]] };
            let orig: Vec<_> = sel.iter().map(|&(k, x)| (times[k], Half::from_f64(x).unwrap())).collect();
            let remap: Vec<_> = sel.iter().map(|&(k, x)| (k as i64, Half::from_f64(x).unwrap())).collect();
            let a = correlation_bruteforce(&orig, &p, 12).unwrap();
            let b = correlation_bruteforce(&remap, &rp, 12).unwrap();
            assert!((a - b).abs() < 1e-10, "{sel:?}: {a} vs {b}");
        }
    }
}

#[test]
fn anisotropic_doubles_volume_exponent() {
    let q: f64 = 0.4;
    let p = anisotropic_params(q, |m| 2.0 * m.to_f64().abs(), 30);
    let ens = enumerate_configs(&p, 6).unwrap();
    for (s, w) in &ens.entries {
        let v = volume(&from_slices(s).unwrap());
        assert!((w / q.powi(2 * v as i32) - 1.0).abs() < 1e-12);
    }
    assert!((partition_function(&p).unwrap() - mcmahon_product(q * q, 200)).abs() < 1e-12);
}

#[test]
fn expected_volume_matches_enumeration() {
    let q = 0.1;
    let ens = enumerate_configs(&mq_params(q, 40), 14).unwrap();
    let mean: f64 = ens.entries.iter().map(|(s, w)| s.total_size() as f64 * w).sum::<f64>() / ens.total_weight;
    assert!((mean - expected_volume(q)).abs() < 1e-9, "{mean} vs {}", expected_volume(q));
}
