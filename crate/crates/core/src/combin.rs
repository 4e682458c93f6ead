//! Partitions, plane partitions and their two point-field encodings.
//!
//! A plane partition `π` is cut into diagonal slices `λ(t) = (π_{i,t+i})`.
//! The slices interlace, increasing up to `t = 0` and decreasing after it.
//! Each slice is in turn encoded as the set `{λ_i - i + 1/2}` of
//! "particles" in `Z + 1/2`, which agrees with the negative half-integers
//! except at finitely many places. The horizontal lozenges of the
//! corresponding tiling give a second encoding, shifted by `|t|/2`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::half::Half;

/// A weakly decreasing finite sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

static EMPTY: Partition = Partition(Vec::new());

impl Partition {
    /// Validates `parts`; trailing zeros are dropped.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::NotAPartition(parts));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub(crate) fn from_sorted(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(!parts.contains(&0));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `λ_{i+1}` (zero-based index), zero past the end.
    pub fn get(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// `|λ|`.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `μ ⊂ λ` as Young diagrams.
    pub fn contains(&self, mu: &Partition) -> bool {
        mu.len() <= self.len() && mu.0.iter().zip(&self.0).all(|(m, l)| m <= l)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.get(0) as usize;
        let parts = (0..cols)
            .map(|j| self.0.iter().filter(|&&p| p as usize > j).count() as u32)
            .collect();
        Partition(parts)
    }

    /// Particle positions `λ_i - i + 1/2` for `i = 1..=len`.
    pub fn particles(&self) -> impl Iterator<Item = Half> + '_ {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &p)| Half::plus_half(p as i64 - i as i64 - 1))
    }

    /// Whether `x ∈ {λ_i - i + 1/2 : i ≥ 1}`; everything below `-len - 1/2`
    /// is occupied.
    pub fn occupies(&self, x: Half) -> bool {
        debug_assert!(x.is_half_odd());
        let k = x.floor(); // x = k + 1/2
        let n = self.len() as i64;
        if k < -n {
            return true;
        }
        // λ_i - i = k has at most one solution since λ_i - i is strictly decreasing.
        let i = (0..self.len()).find(|&i| self.0[i] as i64 - i as i64 - 1 <= k);
        matches!(i, Some(i) if self.0[i] as i64 - i as i64 - 1 == k)
    }

    /// All `λ` with `λ ≻ self` and `|λ| - |self| ≤ max_added`.
    pub fn strips_above(&self, max_added: u32) -> Vec<Partition> {
        let n = self.len();
        let mut out = Vec::new();
        let mut cur = vec![0u32; n + 1];
        fn rec(
            mu: &[u32],
            i: usize,
            budget: u32,
            cur: &mut Vec<u32>,
            out: &mut Vec<Partition>,
        ) {
            if i == cur.len() {
                let mut parts = cur.clone();
                while parts.last() == Some(&0) {
                    parts.pop();
                }
                out.push(Partition(parts));
                return;
            }
            let lo = mu.get(i).copied().unwrap_or(0);
            let hi = if i == 0 {
                lo + budget
            } else {
                mu[i - 1].min(lo + budget)
            };
            for v in lo..=hi {
                cur[i] = v;
                rec(mu, i + 1, budget - (v - lo), cur, out);
            }
        }
        rec(&self.0, 0, max_added, &mut cur, &mut out);
        out
    }

    /// All `λ` with `self ≻ λ`.
    pub fn strips_below(&self) -> Vec<Partition> {
        let n = self.len();
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(mu: &[u32], i: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if i == cur.len() {
                let mut parts = cur.clone();
                while parts.last() == Some(&0) {
                    parts.pop();
                }
                out.push(Partition(parts));
                return;
            }
            let lo = mu.get(i + 1).copied().unwrap_or(0);
            for v in lo..=mu[i] {
                cur[i] = v;
                rec(mu, i + 1, cur, out);
            }
        }
        rec(&self.0, 0, &mut cur, &mut out);
        out
    }

    /// All `ν ⊂ self`.
    pub fn subdiagrams(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(self.len());
        fn rec(bound: &[u32], cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            out.push(Partition(cur.clone()));
            let i = cur.len();
            if i == bound.len() {
                return;
            }
            for v in 1..=bound[i].min(cap) {
                cur.push(v);
                rec(bound, v, cur, out);
                cur.pop();
            }
        }
        rec(&self.0, u32::MAX, &mut cur, &mut out);
        out
    }

    /// All partitions of size at most `n`, ordered by size.
    pub fn all_up_to(n: u32) -> Vec<Partition> {
        (0..=n).flat_map(Partition::all_of_size).collect()
    }

    /// All partitions of `n` in reverse lexicographic order.
    pub fn all_of_size(n: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(rest: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for v in (1..=rest.min(cap)).rev() {
                cur.push(v);
                rec(rest - v, v, cur, out);
                cur.pop();
            }
        }
        rec(n, n, &mut cur, &mut out);
        out
    }

    /// Number of standard Young tableaux, by the hook length formula.
    pub fn dimension(&self) -> f64 {
        let conj = self.conjugate();
        let mut log = ln_factorial(self.size());
        for (i, &p) in self.0.iter().enumerate() {
            for j in 0..p as usize {
                let hook = p as usize - j + conj.get(j) as usize - i - 1;
                log -= (hook as f64).ln();
            }
        }
        log.exp().round()
    }
}

pub(crate) fn ln_factorial(n: u32) -> f64 {
    (1..=n).map(|k| (k as f64).ln()).sum()
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// `λ ≻ μ`: `λ₁ ≥ μ₁ ≥ λ₂ ≥ μ₂ ≥ …`.
pub fn interlaces(lambda: &Partition, mu: &Partition) -> bool {
    let n = lambda.len().max(mu.len());
    if mu.len() > lambda.len() {
        return false;
    }
    (0..n).all(|i| lambda.get(i) >= mu.get(i) && mu.get(i) >= lambda.get(i + 1))
}

/// A finite array `π_{ij}`, nonincreasing along rows and columns.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u32>>", into = "Vec<Vec<u32>>")]
pub struct PlanePartition {
    rows: Vec<Partition>,
}

impl PlanePartition {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let mut parsed = Vec::with_capacity(rows.len());
        for (r, row) in rows.into_iter().enumerate() {
            let p = Partition::new(row.clone()).map_err(|_| {
                let col = row.windows(2).position(|w| w[0] < w[1]).unwrap_or(0) + 1;
                Error::NotAPlanePartition { row: r + 1, col }
            })?;
            parsed.push(p);
        }
        while parsed.last().is_some_and(Partition::is_empty) {
            parsed.pop();
        }
        for r in 1..parsed.len() {
            if !parsed[r - 1].contains(&parsed[r]) {
                let col = (0..parsed[r].len())
                    .find(|&j| parsed[r].get(j) > parsed[r - 1].get(j))
                    .unwrap_or(0);
                return Err(Error::NotAPlanePartition { row: r + 1, col: col + 1 });
            }
        }
        Ok(PlanePartition { rows: parsed })
    }

    pub fn empty() -> Self {
        PlanePartition::default()
    }

    pub fn rows(&self) -> &[Partition] {
        &self.rows
    }

    /// `π_{ij}` with one-based indices, zero outside the support.
    pub fn entry(&self, i: usize, j: usize) -> u32 {
        assert!(i >= 1 && j >= 1, "plane partition indices are one-based");
        self.rows.get(i - 1).map_or(0, |r| r.get(j - 1))
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.rows.first().map_or(0, Partition::len)
    }

    pub fn max_part(&self) -> u32 {
        self.rows.first().map_or(0, |r| r.get(0))
    }

    pub fn transpose(&self) -> PlanePartition {
        let rows = (1..=self.num_cols())
            .map(|j| (1..=self.num_rows()).map(|i| self.entry(i, j)).collect())
            .collect();
        PlanePartition::new(rows).expect("transpose of a plane partition")
    }

    /// All plane partitions of volume exactly `n`, built row by row.
    pub fn all_of_volume(n: u32) -> Vec<PlanePartition> {
        fn rec(rest: u32, above: &Partition, rows: &mut Vec<Partition>, out: &mut Vec<PlanePartition>) {
            if rest == 0 {
                out.push(PlanePartition { rows: rows.clone() });
                return;
            }
            for row in above.subdiagrams() {
                let s = row.size();
                if s == 0 || s > rest {
                    continue;
                }
                rows.push(row.clone());
                rec(rest - s, &row, rows, out);
                rows.pop();
            }
        }
        let mut out = Vec::new();
        for first_size in 1..=n {
            for first in Partition::all_of_size(first_size) {
                let mut rows = vec![first.clone()];
                rec(n - first_size, &first, &mut rows, &mut out);
            }
        }
        if n == 0 {
            out.push(PlanePartition::empty());
        }
        out
    }
}

impl TryFrom<Vec<Vec<u32>>> for PlanePartition {
    type Error = Error;
    fn try_from(v: Vec<Vec<u32>>) -> Result<Self> {
        PlanePartition::new(v)
    }
}

impl From<PlanePartition> for Vec<Vec<u32>> {
    fn from(p: PlanePartition) -> Self {
        p.rows.into_iter().map(Vec::from).collect()
    }
}

/// `|π|`.
pub fn volume(pi: &PlanePartition) -> u64 {
    pi.rows.iter().map(|r| r.size() as u64).sum()
}

/// A map `t ↦ λ(t)` that is empty outside a finite window.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct SliceSequence {
    start: i64,
    slices: Vec<Partition>,
}

impl SliceSequence {
    /// `slices[k]` is `λ(start + k)`.
    pub fn new(start: i64, slices: Vec<Partition>) -> Self {
        let mut s = SliceSequence { start, slices };
        s.normalize();
        s
    }

    pub fn from_map(map: BTreeMap<i64, Partition>) -> Self {
        let Some((&lo, _)) = map.first_key_value() else {
            return SliceSequence::default();
        };
        let hi = *map.last_key_value().unwrap().0;
        let slices = (lo..=hi).map(|t| map.get(&t).cloned().unwrap_or_default()).collect();
        SliceSequence::new(lo, slices)
    }

    fn normalize(&mut self) {
        while self.slices.last().is_some_and(Partition::is_empty) {
            self.slices.pop();
        }
        let lead = self.slices.iter().take_while(|p| p.is_empty()).count();
        if lead == self.slices.len() {
            self.slices.clear();
            self.start = 0;
        } else {
            self.slices.drain(..lead);
            self.start += lead as i64;
        }
    }

    pub fn get(&self, t: i64) -> &Partition {
        let k = t - self.start;
        if k < 0 {
            return &EMPTY;
        }
        self.slices.get(k as usize).unwrap_or(&EMPTY)
    }

    /// Smallest and largest time with a nonempty slice.
    pub fn support(&self) -> Option<(i64, i64)> {
        (!self.slices.is_empty()).then(|| (self.start, self.start + self.slices.len() as i64 - 1))
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &Partition)> {
        self.slices.iter().enumerate().map(|(k, p)| (self.start + k as i64, p))
    }

    /// `Σ_t |λ(t)|`.
    pub fn total_size(&self) -> u64 {
        self.slices.iter().map(|p| p.size() as u64).sum()
    }

    /// Checks `… ≺ λ(-1) ≺ λ(0) ≻ λ(1) ≻ …`, reporting the first bad step.
    pub fn check_plane_chain(&self) -> Result<()> {
        let Some((lo, hi)) = self.support() else {
            return Ok(());
        };
        for t in (lo - 1)..=hi {
            let (a, b) = (self.get(t), self.get(t + 1));
            let ok = if t < 0 { interlaces(b, a) } else { interlaces(a, b) };
            if !ok {
                return Err(Error::NotInterlacing { time: t });
            }
        }
        Ok(())
    }
}

/// `λ(t) = (π_{i,t+i})`.
pub fn diagonal_slices(pi: &PlanePartition) -> SliceSequence {
    let rows = pi.num_rows() as i64;
    let cols = pi.num_cols() as i64;
    if rows == 0 {
        return SliceSequence::default();
    }
    let slices = (-(rows - 1)..cols)
        .map(|t| {
            let mut parts = Vec::new();
            let mut k = 1i64;
            loop {
                let (i, j) = if t >= 0 { (k, t + k) } else { (k - t, k) };
                let v = pi.entry(i as usize, j as usize);
                if v == 0 {
                    break;
                }
                parts.push(v);
                k += 1;
            }
            Partition::from_sorted(parts)
        })
        .collect();
    SliceSequence::new(-(rows - 1), slices)
}

/// Inverse of [`diagonal_slices`] on sequences that satisfy the interlacing chain.
pub fn from_slices(s: &SliceSequence) -> Result<PlanePartition> {
    s.check_plane_chain()?;
    let Some((lo, hi)) = s.support() else {
        return Ok(PlanePartition::empty());
    };
    let nrows = (s.get(0).len() as i64).max(1 - lo.min(0)) as usize + hi.max(0) as usize;
    let mut grid = vec![Vec::<u32>::new(); nrows + 1];
    for (t, lam) in s.iter() {
        for (k, &v) in lam.parts().iter().enumerate() {
            let k = k as i64 + 1;
            let (i, j) = if t >= 0 { (k, t + k) } else { (k - t, k) };
            let row = &mut grid[i as usize - 1];
            if row.len() < j as usize {
                row.resize(j as usize, 0);
            }
            row[j as usize - 1] = v;
        }
    }
    PlanePartition::new(grid)
}

/// The point field `{(t, λ(t)_i - i + 1/2)}` on `Z × (Z + 1/2)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PointConfig {
    slices: SliceSequence,
}

impl PointConfig {
    pub fn contains(&self, t: i64, x: Half) -> bool {
        self.slices.get(t).occupies(x)
    }

    /// Points above the vacuum tail of each column, i.e. `i ≤ len(λ(t))`.
    pub fn finite_points(&self) -> Vec<(i64, Half)> {
        self.slices
            .iter()
            .flat_map(|(t, lam)| lam.particles().map(move |x| (t, x)))
            .collect()
    }

    /// All points with `x ≥ x_min` in columns `t_lo..=t_hi`, tail included.
    pub fn points_in(&self, t_lo: i64, t_hi: i64, x_min: Half) -> BTreeSet<(i64, Half)> {
        let mut out = BTreeSet::new();
        for t in t_lo..=t_hi {
            let lam = self.slices.get(t);
            for x in lam.particles().filter(|&x| x >= x_min) {
                out.insert((t, x));
            }
            let mut x = Half::plus_half(-(lam.len() as i64) - 1);
            while x >= x_min {
                out.insert((t, x));
                x = x - Half(2);
            }
        }
        out
    }

    pub fn slices(&self) -> &SliceSequence {
        &self.slices
    }
}

impl Serialize for PointConfig {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pts: Vec<[i64; 2]> = self.finite_points().into_iter().map(|(t, x)| [t, x.doubled()]).collect();
        pts.serialize(s)
    }
}

/// The point field of a slice sequence.
pub fn point_config(s: &SliceSequence) -> PointConfig {
    PointConfig { slices: s.clone() }
}

/// Center `(t, h)` of a horizontal lozenge; `h` is stored doubled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[i64; 2]", into = "[i64; 2]")]
pub struct TilePoint {
    pub t: i64,
    h2: i64,
}

impl TilePoint {
    /// `h = h2 / 2`; requires `h + (t+1)/2 ∈ Z`.
    pub fn new(t: i64, h2: i64) -> Result<Self> {
        if (h2 + t + 1).rem_euclid(2) != 0 {
            return Err(Error::TileParity { t, h2 });
        }
        Ok(TilePoint { t, h2 })
    }

    pub fn h(&self) -> Half {
        Half(self.h2)
    }

    pub fn h2(&self) -> i64 {
        self.h2
    }

    /// The particle coordinate `x = h + |t|/2` of the same column.
    pub fn to_particle(&self) -> Half {
        Half(self.h2 + self.t.abs())
    }

    pub fn from_particle(t: i64, x: Half) -> Result<Self> {
        TilePoint::new(t, x.doubled() - t.abs())
    }
}

impl TryFrom<[i64; 2]> for TilePoint {
    type Error = Error;
    fn try_from(v: [i64; 2]) -> Result<Self> {
        TilePoint::new(v[0], v[1])
    }
}

impl From<TilePoint> for [i64; 2] {
    fn from(p: TilePoint) -> Self {
        [p.t, p.h2]
    }
}

/// Horizontal tile centers `{(j - i, π_{ij} - (i+j-1)/2)}` over all `i, j ≥ 1`.
///
/// The set is infinite (every zero entry contributes a floor tile); it is
/// queried by formula and listed only inside a finite window.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TileCenters {
    pi: PlanePartition,
    slices: SliceSequence,
}

impl TileCenters {
    pub fn contains(&self, p: TilePoint) -> bool {
        self.slices.get(p.t).occupies(p.to_particle())
    }

    /// Centers for `1 ≤ i, j ≤ bound`.
    pub fn window(&self, bound: usize) -> BTreeSet<TilePoint> {
        let mut out = BTreeSet::new();
        for i in 1..=bound {
            for j in 1..=bound {
                let t = j as i64 - i as i64;
                let h2 = 2 * self.pi.entry(i, j) as i64 - (i + j) as i64 + 1;
                out.insert(TilePoint { t, h2 });
            }
        }
        out
    }

    /// The window of size `rows + cols + max part`, enough to show every
    /// non-floor tile together with its neighbouring floor.
    pub fn finite(&self) -> BTreeSet<TilePoint> {
        let bound = self.pi.num_rows() + self.pi.num_cols() + self.pi.max_part() as usize;
        self.window(bound.max(1))
    }
}

pub fn tile_centers(pi: &PlanePartition) -> TileCenters {
    TileCenters { pi: pi.clone(), slices: diagonal_slices(pi) }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    pub(crate) fn example_pi() -> PlanePartition {
        PlanePartition::new(vec![vec![5, 3, 2, 1], vec![4, 3, 1, 1], vec![3, 2, 1], vec![2, 1]]).unwrap()
    }

    #[test]
    fn interlacing_examples() {
        assert!(interlaces(&p(&[5, 3, 1]), &p(&[3, 1])));
        assert!(!interlaces(&p(&[2]), &p(&[3, 1])));
        assert!(interlaces(&Partition::empty(), &Partition::empty()));
        assert!(interlaces(&p(&[1]), &p(&[1])));
        assert!(!interlaces(&p(&[2, 2]), &Partition::empty()));
    }

    #[test]
    fn partition_validation() {
        assert_eq!(p(&[3, 1, 0, 0]).parts(), &[3, 1]);
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0, 1]).is_err());
        assert_eq!(serde_json::to_string(&p(&[4, 2])).unwrap(), "[4,2]");
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
    }

    #[test]
    fn example_slices() {
        let s = diagonal_slices(&example_pi());
        let expect = [
            (-3, p(&[2])),
            (-2, p(&[3, 1])),
            (-1, p(&[4, 2])),
            (0, p(&[5, 3, 1])),
            (1, p(&[3, 1])),
            (2, p(&[2, 1])),
            (3, p(&[1])),
        ];
        assert_eq!(s.support(), Some((-3, 3)));
        for (t, lam) in expect {
            assert_eq!(s.get(t), &lam, "t = {t}");
        }
        assert_eq!(volume(&example_pi()), 29);
        assert_eq!(s.total_size(), 29);
        s.check_plane_chain().unwrap();
        assert_eq!(from_slices(&s).unwrap(), example_pi());
    }

    #[test]
    fn trivial_slices() {
        assert_eq!(diagonal_slices(&PlanePartition::empty()).support(), None);
        let one = PlanePartition::new(vec![vec![1]]).unwrap();
        let s = diagonal_slices(&one);
        assert_eq!(s.support(), Some((0, 0)));
        assert_eq!(s.get(0), &p(&[1]));
        assert_eq!(volume(&one), 1);
        assert_eq!(volume(&PlanePartition::empty()), 0);
    }

    #[test]
    fn from_slices_small_chain() {
        let s = SliceSequence::new(-1, vec![p(&[1]), p(&[1]), p(&[1])]);
        let pi = from_slices(&s).unwrap();
        assert_eq!(pi, PlanePartition::new(vec![vec![1, 1], vec![1]]).unwrap());
        assert_eq!(diagonal_slices(&pi), s);
    }

    #[test]
    fn from_slices_rejects_growth_after_zero() {
        let s = SliceSequence::new(0, vec![p(&[1]), p(&[2])]);
        assert_eq!(from_slices(&s), Err(Error::NotInterlacing { time: 0 }));
        let s = SliceSequence::new(-1, vec![p(&[2, 2]), p(&[2, 2])]);
        assert_eq!(from_slices(&s), Err(Error::NotInterlacing { time: -2 }));
    }

    #[test]
    fn point_config_vacuum_and_single_box() {
        let vac = point_config(&SliceSequence::default());
        for t in -3..=3 {
            assert!(vac.contains(t, Half::plus_half(-1)));
            assert!(!vac.contains(t, Half::plus_half(0)));
        }
        let s = SliceSequence::new(0, vec![p(&[1])]);
        let pc = point_config(&s);
        assert!(pc.contains(0, Half(1)));
        assert!(!pc.contains(0, Half(-1)));
        assert!(pc.contains(0, Half(-3)));
        assert!(pc.contains(0, Half(-5)));
        assert!(pc.contains(1, Half(-1)));
        assert_eq!(serde_json::to_string(&pc).unwrap(), "[[0,1]]");
    }

    #[test]
    fn example_point_field_matches_drawing() {
        // dots of the nonintersecting-path picture, window t, x ∈ [-5, 5]
        let dots: &[(i64, f64)] = &[
            (-5, -0.5), (-5, -1.5), (-5, -2.5), (-5, -3.5), (-5, -4.5),
            (-4, -0.5), (-4, -1.5), (-4, -2.5), (-4, -3.5), (-4, -4.5),
            (-3, 1.5), (-3, -1.5), (-3, -2.5), (-3, -3.5), (-3, -4.5),
            (-2, 2.5), (-2, -0.5), (-2, -2.5), (-2, -3.5), (-2, -4.5),
            (-1, 3.5), (-1, 0.5), (-1, -2.5), (-1, -3.5), (-1, -4.5),
            (0, 4.5), (0, 1.5), (0, -1.5), (0, -3.5), (0, -4.5),
            (1, 2.5), (1, -0.5), (1, -2.5), (1, -3.5), (1, -4.5),
            (2, 1.5), (2, -0.5), (2, -2.5), (2, -3.5), (2, -4.5),
            (3, 0.5), (3, -1.5), (3, -2.5), (3, -3.5), (3, -4.5),
            (4, -0.5), (4, -1.5), (4, -2.5), (4, -3.5), (4, -4.5),
            (5, -0.5), (5, -1.5), (5, -2.5), (5, -3.5), (5, -4.5),
        ];
        let expected: BTreeSet<_> = dots.iter().map(|&(t, x)| (t, Half::from_f64(x).unwrap())).collect();
        let pc = point_config(&diagonal_slices(&example_pi()));
        let got: BTreeSet<_> = pc
            .points_in(-5, 5, Half(-9))
            .into_iter()
            .filter(|&(_, x)| x <= Half(9))
            .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn example_tiles_match_drawing() {
        let centers: &[(i64, f64)] = &[
            (0, 4.5), (1, 2.0), (2, 0.5), (3, -1.0), (4, -2.5), (5, -3.0), (6, -3.5),
            (-1, 3.0), (0, 1.5), (1, -1.0), (2, -1.5), (3, -3.0), (4, -3.5),
            (-2, 1.5), (-1, 0.0), (0, -1.5), (1, -3.0), (2, -3.5),
            (-3, 0.0), (-2, -1.5), (-1, -3.0), (0, -3.5),
            (-4, -2.5), (-3, -3.0), (-2, -3.5),
            (-5, -3.0), (-4, -3.5), (-6, -3.5),
        ];
        let expected: BTreeSet<_> = centers
            .iter()
            .map(|&(t, h)| TilePoint::new(t, (2.0 * h) as i64).unwrap())
            .collect();
        let tiles = tile_centers(&example_pi());
        let got: BTreeSet<_> = tiles.window(12).into_iter().filter(|p| p.h2() >= -7).collect();
        assert_eq!(got, expected);
        for p in &expected {
            assert!(tiles.contains(*p));
        }
    }

    #[test]
    fn empty_tiles_are_floor() {
        let tiles = tile_centers(&PlanePartition::empty());
        for p in tiles.window(5) {
            assert!(tiles.contains(p));
        }
        assert!(tiles.contains(TilePoint::new(0, -1).unwrap()));
        assert!(!tiles.contains(TilePoint::new(0, 1).unwrap()));
        assert!(TilePoint::new(0, 0).is_err());
        assert!(TilePoint::new(1, 0).is_ok());
    }

    #[test]
    fn all_partitions_counts() {
        let counts: Vec<usize> = (0..=10).map(|n| Partition::all_of_size(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert_eq!(p(&[3, 1]).dimension(), 3.0);
        assert_eq!(p(&[2, 2]).dimension(), 2.0);
        assert_eq!(p(&[3, 3, 2, 1]).conjugate(), p(&[4, 3, 2]));
    }

    #[test]
    fn strips() {
        let mu = p(&[2, 1]);
        for lam in mu.strips_above(3) {
            assert!(interlaces(&lam, &mu));
            assert!(lam.size() - mu.size() <= 3);
        }
        let brute: Vec<_> = Partition::all_up_to(6)
            .into_iter()
            .filter(|l| interlaces(l, &mu))
            .collect();
        let mut gen = mu.strips_above(3);
        gen.sort();
        let mut brute = brute;
        brute.sort();
        assert_eq!(gen, brute);
        let mut below = mu.strips_below();
        below.sort();
        let mut brute: Vec<_> = Partition::all_up_to(3).into_iter().filter(|l| interlaces(&mu, l)).collect();
        brute.sort();
        assert_eq!(below, brute);
        assert_eq!(p(&[2, 1]).subdiagrams().len(), 5);
    }

    #[test]
    fn plane_partition_counts() {
        let counts: Vec<usize> = (0..=6).map(|n| PlanePartition::all_of_volume(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 6, 13, 24, 48]);
        assert!(PlanePartition::new(vec![vec![1], vec![2]]).is_err());
        assert!(PlanePartition::new(vec![vec![1, 2]]).is_err());
    }
}
