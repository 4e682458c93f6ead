//! Metropolis sampler for `q^{|π|}` on plane partitions inside an
//! `a × b × c` box.
//!
//! Moves add or remove one cube. A proposal picks uniformly among all
//! currently legal moves, and acceptance is `min(1, q^Δ n(x)/n(y))` where
//! `n` counts legal moves, so the chain is reversible for the target.

use indexmap::IndexSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combin::PlanePartition;
use crate::error::{Error, Result};

/// A single-cube move at `(row, col)`, zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    Add(usize, usize),
    Remove(usize, usize),
}

#[derive(Clone, Debug)]
pub struct BoxSampler {
    a: usize,
    b: usize,
    c: u32,
    q: f64,
    h: Vec<u32>,
    addable: IndexSet<usize>,
    removable: IndexSet<usize>,
    rng: ChaCha8Rng,
    volume: u64,
}

impl BoxSampler {
    pub fn new(q: f64, dims: (usize, usize, u32), seed: u64) -> Result<Self> {
        Self::from_state(&PlanePartition::empty(), q, dims, seed)
    }

    pub fn from_state(pi: &PlanePartition, q: f64, dims: (usize, usize, u32), seed: u64) -> Result<Self> {
        let (a, b, c) = dims;
        if a == 0 || b == 0 || c == 0 {
            return Err(Error::InvalidParameter("box dimensions must be positive".into()));
        }
        if !(q > 0.0 && q < 1.0) && q != 1.0 {
            return Err(Error::InvalidParameter(format!("q = {q} outside (0, 1]")));
        }
        if pi.num_rows() > a || pi.num_cols() > b || pi.max_part() > c {
            return Err(Error::InvalidParameter("initial state does not fit the box".into()));
        }
        let mut s = BoxSampler {
            a,
            b,
            c,
            q,
            h: vec![0; a * b],
            addable: IndexSet::new(),
            removable: IndexSet::new(),
            rng: ChaCha8Rng::seed_from_u64(seed),
            volume: 0,
        };
        for i in 0..a {
            for j in 0..b {
                let v = pi.entry(i + 1, j + 1);
                s.h[i * b + j] = v;
                s.volume += v as u64;
            }
        }
        for cell in 0..a * b {
            s.refresh(cell);
        }
        Ok(s)
    }

    fn at(&self, i: usize, j: usize) -> u32 {
        self.h[i * self.b + j]
    }

    fn can_add(&self, i: usize, j: usize) -> bool {
        let v = self.at(i, j);
        v < self.c && (i == 0 || self.at(i - 1, j) > v) && (j == 0 || self.at(i, j - 1) > v)
    }

    fn can_remove(&self, i: usize, j: usize) -> bool {
        let v = self.at(i, j);
        v > 0 && (i + 1 == self.a || self.at(i + 1, j) < v) && (j + 1 == self.b || self.at(i, j + 1) < v)
    }

    fn refresh(&mut self, cell: usize) {
        let (i, j) = (cell / self.b, cell % self.b);
        if self.can_add(i, j) {
            self.addable.insert(cell);
        } else {
            self.addable.swap_remove(&cell);
        }
        if self.can_remove(i, j) {
            self.removable.insert(cell);
        } else {
            self.removable.swap_remove(&cell);
        }
    }

    fn refresh_around(&mut self, i: usize, j: usize) {
        self.refresh(i * self.b + j);
        if i > 0 {
            self.refresh((i - 1) * self.b + j);
        }
        if i + 1 < self.a {
            self.refresh((i + 1) * self.b + j);
        }
        if j > 0 {
            self.refresh(i * self.b + j - 1);
        }
        if j + 1 < self.b {
            self.refresh(i * self.b + j + 1);
        }
    }

    /// Number of legal moves from the current state.
    pub fn move_count(&self) -> usize {
        self.addable.len() + self.removable.len()
    }

    /// All legal moves, adds first.
    pub fn moves(&self) -> Vec<Move> {
        let b = self.b;
        let adds = self.addable.iter().map(|&c| Move::Add(c / b, c % b));
        let rems = self.removable.iter().map(|&c| Move::Remove(c / b, c % b));
        adds.chain(rems).collect()
    }

    fn apply(&mut self, mv: Move) {
        let (i, j, d) = match mv {
            Move::Add(i, j) => (i, j, 1i64),
            Move::Remove(i, j) => (i, j, -1),
        };
        let cell = i * self.b + j;
        self.h[cell] = (self.h[cell] as i64 + d) as u32;
        self.volume = (self.volume as i64 + d) as u64;
        self.refresh_around(i, j);
    }

    fn inverse(mv: Move) -> Move {
        match mv {
            Move::Add(i, j) => Move::Remove(i, j),
            Move::Remove(i, j) => Move::Add(i, j),
        }
    }

    /// `min(1, q^Δ n(x)/n(y))` for a legal move.
    pub fn acceptance(&mut self, mv: Move) -> f64 {
        let nx = self.move_count() as f64;
        self.apply(mv);
        let ny = self.move_count() as f64;
        self.apply(Self::inverse(mv));
        let qd = match mv {
            Move::Add(..) => self.q,
            Move::Remove(..) => 1.0 / self.q,
        };
        (qd * nx / ny).min(1.0)
    }

    /// Probability of the chain taking a given legal move in one step.
    pub fn transition_probability(&mut self, mv: Move) -> f64 {
        let n = self.move_count() as f64;
        self.acceptance(mv) / n
    }

    /// One Metropolis step; returns whether the proposal was accepted.
    pub fn step(&mut self) -> bool {
        let nx = self.move_count();
        let k = self.rng.random_range(0..nx);
        let b = self.b;
        let mv = if k < self.addable.len() {
            let c = self.addable[k];
            Move::Add(c / b, c % b)
        } else {
            let c = self.removable[k - self.addable.len()];
            Move::Remove(c / b, c % b)
        };
        let qd = match mv {
            Move::Add(..) => self.q,
            Move::Remove(..) => 1.0 / self.q,
        };
        self.apply(mv);
        let ny = self.move_count();
        let acc = qd * nx as f64 / ny as f64;
        if acc >= 1.0 || self.rng.random::<f64>() < acc {
            true
        } else {
            self.apply(Self::inverse(mv));
            false
        }
    }

    pub fn run(&mut self, steps: u64) {
        for _ in 0..steps {
            self.step();
        }
    }

    pub fn volume(&self) -> u64 {
        self.volume
    }

    pub fn dims(&self) -> (usize, usize, u32) {
        (self.a, self.b, self.c)
    }

    /// Heights `π_{ij}` as a zero-based row-major array.
    pub fn heights(&self) -> &[u32] {
        &self.h
    }

    pub fn state(&self) -> PlanePartition {
        let rows = (0..self.a).map(|i| self.h[i * self.b..(i + 1) * self.b].to_vec()).collect();
        PlanePartition::new(rows).expect("sampler state is a plane partition")
    }
}

/// Runs a chain from the empty state and returns its final state.
pub fn mcmc_sample(q: f64, dims: (usize, usize, u32), steps: u64, seed: u64) -> Result<PlanePartition> {
    let mut s = BoxSampler::new(q, dims, seed)?;
    s.run(steps);
    Ok(s.state())
}

/// All plane partitions fitting in the box, each with weight `q^{|π|}`.
pub fn boxed_distribution(q: f64, dims: (usize, usize, u32)) -> Vec<(PlanePartition, f64)> {
    let (a, b, c) = dims;
    let mut out = Vec::new();
    let mut h = vec![0u32; a * b];
    fn rec(k: usize, a: usize, b: usize, c: u32, h: &mut Vec<u32>, out: &mut Vec<Vec<Vec<u32>>>) {
        if k == a * b {
            out.push((0..a).map(|i| h[i * b..(i + 1) * b].to_vec()).collect());
            return;
        }
        let (i, j) = (k / b, k % b);
        let mut cap = c;
        if i > 0 {
            cap = cap.min(h[(i - 1) * b + j]);
        }
        if j > 0 {
            cap = cap.min(h[i * b + j - 1]);
        }
        for v in 0..=cap {
            h[k] = v;
            rec(k + 1, a, b, c, h, out);
        }
        h[k] = 0;
    }
    let mut raw = Vec::new();
    rec(0, a, b, c, &mut h, &mut raw);
    let mut total = 0.0;
    for rows in raw {
        let pi = PlanePartition::new(rows).unwrap();
        let w = q.powi(crate::combin::volume(&pi) as i32);
        total += w;
        out.push((pi, w));
    }
    for e in out.iter_mut() {
        e.1 /= total;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::volume;

    #[test]
    fn box_222_has_20_states() {
        assert_eq!(boxed_distribution(0.5, (2, 2, 2)).len(), 20);
    }

    #[test]
    fn detailed_balance_exact() {
        let q = 0.37;
        for (pi, _) in boxed_distribution(q, (2, 3, 2)) {
            let mut s = BoxSampler::from_state(&pi, q, (2, 3, 2), 0).unwrap();
            for mv in s.moves() {
                let fwd = s.transition_probability(mv);
                s.apply(mv);
                let back = s.transition_probability(BoxSampler::inverse(mv));
                let dv = volume(&s.state()) as i32 - volume(&pi) as i32;
                s.apply(BoxSampler::inverse(mv));
                assert!((fwd / back / q.powi(dv) - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn incremental_sets_match_scan() {
        let mut s = BoxSampler::new(0.8, (4, 3, 5), 7).unwrap();
        for _ in 0..2000 {
            s.step();
            let mut scan = Vec::new();
            for i in 0..4 {
                for j in 0..3 {
                    if s.can_add(i, j) {
                        scan.push(Move::Add(i, j));
                    }
                }
            }
            for i in 0..4 {
                for j in 0..3 {
                    if s.can_remove(i, j) {
                        scan.push(Move::Remove(i, j));
                    }
                }
            }
            let mut got = s.moves();
            got.sort_by_key(|m| format!("{m:?}"));
            scan.sort_by_key(|m| format!("{m:?}"));
            assert_eq!(got, scan);
            assert_eq!(s.volume(), volume(&s.state()));
        }
    }

    #[test]
    fn reproducible_and_small_q() {
        let a = mcmc_sample(0.6, (5, 5, 5), 5000, 11).unwrap();
        let b = mcmc_sample(0.6, (5, 5, 5), 5000, 11).unwrap();
        assert_eq!(a, b);
        let e = mcmc_sample(1e-9, (5, 5, 5), 5000, 3).unwrap();
        assert!(volume(&e) <= 1);
        assert!(BoxSampler::new(0.5, (0, 2, 2), 0).is_err());
    }
}
