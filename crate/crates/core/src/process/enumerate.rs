//! Exhaustive enumeration of slice sequences below a total-size cutoff.
//!
//! The search walks the free times left to right. Steps whose parameter
//! is a single geometric factor on one side only generate horizontal
//! strips directly; any other step falls back to scanning all partitions
//! within budget with memoized transition weights.

use std::collections::HashMap;
use std::io::{self, Write};

use crate::combin::{from_slices, Partition, SliceSequence, TilePoint};
use crate::error::{Error, Result};
use crate::half::Half;
use crate::process::{partition_function, SchurProcessParams};
use crate::schur::{transition_weight_h, Factor};

enum Step {
    Trivial,
    Up(f64),
    Down(f64),
    General { hp: Vec<f64>, hm: Vec<f64> },
}

/// Depth-first enumerator over the free times of a parameter set.
pub struct Enumerator<'a> {
    params: &'a SchurProcessParams,
    cutoff: u32,
    t_lo: i64,
    steps: Vec<Step>,
    table: Vec<Partition>,
    memo: HashMap<(usize, Partition), Vec<(Partition, f64)>>,
}

impl<'a> Enumerator<'a> {
    pub fn new(params: &'a SchurProcessParams, cutoff: u32) -> Self {
        let (t_lo, t_hi) = params.free_times().unwrap_or((0, -1));
        let hn = 2 * cutoff as usize + 2;
        let steps = (t_lo - 1..=t_hi)
            .map(|k| {
                let pair = params.get(Half::plus_half(k));
                let (p, m) = (pair.plus.factors(), pair.minus.factors());
                match (p, m) {
                    _ if pair.is_trivial() => Step::Trivial,
                    ([Factor::GeomPole(a)], _) if pair.minus.is_trivial() => Step::Up(*a),
                    (_, [Factor::GeomPole(a)]) if pair.plus.is_trivial() => Step::Down(*a),
                    _ => Step::General { hp: pair.plus.h_coeffs(hn), hm: pair.minus.h_coeffs(hn) },
                }
            })
            .collect();
        let needs_table = t_lo <= t_hi;
        Enumerator {
            params,
            cutoff,
            t_lo,
            steps,
            table: if needs_table { Partition::all_up_to(cutoff) } else { Vec::new() },
            memo: HashMap::new(),
        }
    }

    pub fn params(&self) -> &SchurProcessParams {
        self.params
    }

    /// First free time; slice `k` passed to visitors lives at `t_lo + k`.
    pub fn first_time(&self) -> i64 {
        self.t_lo
    }

    fn next(&mut self, step: usize, mu: &Partition, budget: u32) -> Vec<(Partition, f64)> {
        match self.steps[step] {
            Step::Trivial => {
                if mu.size() <= budget {
                    vec![(mu.clone(), 1.0)]
                } else {
                    Vec::new()
                }
            }
            Step::Up(a) => {
                let base = mu.size();
                if base > budget {
                    return Vec::new();
                }
                mu.strips_above(budget - base)
                    .into_iter()
                    .map(|l| {
                        let w = a.powi((l.size() - base) as i32);
                        (l, w)
                    })
                    .collect()
            }
            Step::Down(a) => {
                let base = mu.size();
                mu.strips_below()
                    .into_iter()
                    .filter(|l| l.size() <= budget)
                    .map(|l| {
                        let w = a.powi((base - l.size()) as i32);
                        (l, w)
                    })
                    .collect()
            }
            Step::General { .. } => {
                let key = (step, mu.clone());
                if !self.memo.contains_key(&key) {
                    let Step::General { hp, hm } = &self.steps[step] else { unreachable!() };
                    let list: Vec<_> = self
                        .table
                        .iter()
                        .chain(std::iter::once(&Partition::empty()).filter(|_| self.table.is_empty()))
                        .filter_map(|l| {
                            let w = transition_weight_h(mu, l, hp, hm);
                            (w != 0.0).then(|| (l.clone(), w))
                        })
                        .collect();
                    self.memo.insert(key.clone(), list);
                }
                self.memo[&key].iter().filter(|(l, _)| l.size() <= budget).cloned().collect()
            }
        }
    }

    /// Calls `visit(slices, weight)` for every nonzero-weight sequence with
    /// total size at most the cutoff.
    pub fn for_each(&mut self, mut visit: impl FnMut(&[Partition], f64)) {
        let n = self.steps.len() - 1;
        let mut stack = Vec::with_capacity(n);
        self.dfs(0, &Partition::empty(), self.cutoff, 1.0, &mut stack, &mut visit);
    }

    fn dfs(
        &mut self,
        step: usize,
        prev: &Partition,
        budget: u32,
        w: f64,
        stack: &mut Vec<Partition>,
        visit: &mut impl FnMut(&[Partition], f64),
    ) {
        let last = self.steps.len() - 1;
        if step == last {
            let end = self.next(step, prev, 0);
            if let Some((_, wl)) = end.iter().find(|(l, _)| l.is_empty()) {
                visit(stack, w * wl);
            }
            return;
        }
        for (lam, wl) in self.next(step, prev, budget) {
            let rest = budget - lam.size();
            stack.push(lam);
            let head = stack.last().unwrap().clone();
            self.dfs(step + 1, &head, rest, w * wl, stack, visit);
            stack.pop();
        }
    }
}

/// A fully materialized cutoff ensemble.
#[derive(Clone, Debug)]
pub struct BoxedEnsemble {
    pub params: SchurProcessParams,
    pub cutoff: u32,
    pub entries: Vec<(SliceSequence, f64)>,
    pub total_weight: f64,
    /// `Z - Σ weights` when `Z` is available.
    pub tail: Option<f64>,
}

impl BoxedEnsemble {
    /// Number of configurations with each total size `0..=cutoff`.
    pub fn counts_by_size(&self) -> Vec<usize> {
        let mut c = vec![0; self.cutoff as usize + 1];
        for (s, _) in &self.entries {
            c[s.total_size() as usize] += 1;
        }
        c
    }

    /// Rows `volume,weight,config` where `config` is the plane-partition JSON
    /// if the slices form one, and the slice list otherwise.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "volume,weight,config")?;
        for (s, wt) in &self.entries {
            let json = match from_slices(s) {
                Ok(pi) => serde_json::to_string(&pi),
                Err(_) => serde_json::to_string(s),
            }
            .map_err(io::Error::other)?;
            writeln!(w, "{},{:e},\"{}\"", s.total_size(), wt, json.replace('"', "\"\""))?;
        }
        Ok(())
    }
}

/// Limit on materialized configurations.
pub const ENSEMBLE_LIMIT: usize = 10_000_000;

pub fn enumerate_configs(p: &SchurProcessParams, cutoff: u32) -> Result<BoxedEnsemble> {
    let mut e = Enumerator::new(p, cutoff);
    let t0 = e.first_time();
    let mut entries = Vec::new();
    let mut total = 0.0;
    let mut overflow = false;
    e.for_each(|sl, w| {
        if entries.len() >= ENSEMBLE_LIMIT {
            overflow = true;
            return;
        }
        total += w;
        entries.push((SliceSequence::new(t0, sl.to_vec()), w));
    });
    if overflow {
        return Err(Error::CountOverflow { limit: ENSEMBLE_LIMIT });
    }
    let tail = partition_function(p).ok().map(|z| z - total);
    Ok(BoxedEnsemble { params: p.clone(), cutoff, entries, total_weight: total, tail })
}

/// Joint occupancy weights of a fixed list of at most 64 points.
#[derive(Clone, Debug)]
pub struct OccupancyTable {
    points: Vec<(i64, Half)>,
    masks: HashMap<u64, f64>,
    total: f64,
}

impl OccupancyTable {
    pub fn build(p: &SchurProcessParams, cutoff: u32, points: &[(i64, Half)]) -> Result<Self> {
        if points.len() > 64 {
            return Err(Error::InvalidParameter("at most 64 points".into()));
        }
        for (_, x) in points {
            x.half_odd()?;
        }
        let mut e = Enumerator::new(p, cutoff);
        let t0 = e.first_time();
        let mut masks: HashMap<u64, f64> = HashMap::new();
        let mut total = 0.0;
        let empty = Partition::empty();
        e.for_each(|sl, w| {
            total += w;
            let mut mask = 0u64;
            for (b, &(t, x)) in points.iter().enumerate() {
                let k = t - t0;
                let lam = if k >= 0 && (k as usize) < sl.len() { &sl[k as usize] } else { &empty };
                if lam.occupies(x) {
                    mask |= 1 << b;
                }
            }
            *masks.entry(mask).or_default() += w;
        });
        Ok(OccupancyTable { points: points.to_vec(), masks, total })
    }

    pub fn points(&self) -> &[(i64, Half)] {
        &self.points
    }

    pub fn total_weight(&self) -> f64 {
        self.total
    }

    /// Probability that all points with indices in `subset` are occupied.
    pub fn probability(&self, subset: &[usize]) -> f64 {
        let want = subset.iter().fold(0u64, |m, &i| m | 1 << i);
        let hit: f64 = self.masks.iter().filter(|(m, _)| *m & want == want).map(|(_, w)| w).sum();
        hit / self.total
    }
}

/// `P(U ⊂ S)` within the cutoff ensemble, for particle coordinates `(t, x)`.
pub fn correlation_bruteforce(u: &[(i64, Half)], p: &SchurProcessParams, cutoff: u32) -> Result<f64> {
    let t = OccupancyTable::build(p, cutoff, u)?;
    let all: Vec<usize> = (0..u.len()).collect();
    Ok(t.probability(&all))
}

/// [`correlation_bruteforce`] for horizontal tile centers.
pub fn correlation_bruteforce_tiles(u: &[TilePoint], p: &SchurProcessParams, cutoff: u32) -> Result<f64> {
    let pts: Vec<_> = u.iter().map(|q| (q.t, q.to_particle())).collect();
    correlation_bruteforce(&pts, p, cutoff)
}
