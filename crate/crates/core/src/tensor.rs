//! Intersection numbers `c_{rs}^t = |αr ∩ βs*|` for `(α, β) ∈ t`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::config::CoherentConfiguration;
use crate::profile::{decode, ProfileScratch};

/// Sparse table of intersection numbers; zero entries are omitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionTensor {
    rank: usize,
    entries: BTreeMap<(u32, u32, u32), u32>,
}

impl IntersectionTensor {
    /// Reads every `c_{rs}^t` off one representative pair of `t` and spot-checks
    /// a second pair of `t` when there is one.
    pub fn compute(x: &CoherentConfiguration) -> Self {
        let n = x.n();
        let rank = x.rank();
        let mut second: Vec<Option<(usize, usize)>> = vec![None; rank];
        for i in 0..n {
            for j in 0..n {
                let t = x.color(i, j) as usize;
                if second[t].is_none() && x.representative(t as u32) != (i, j) {
                    second[t] = Some((i, j));
                }
            }
        }
        let mut scratch = ProfileScratch::default();
        let mut entries = BTreeMap::new();
        for t in 0..rank {
            let (a, b) = x.representative(t as u32);
            let profile = scratch.profile(x.colors(), n, rank, a, b);
            if let Some((c, d)) = second[t] {
                let check = scratch.profile(x.colors(), n, rank, c, d);
                assert_eq!(profile, check, "class {t} is not regular; configuration was not verified");
            }
            for (code, m) in profile {
                let (r, s) = decode(code, rank);
                entries.insert((r, s, t as u32), m);
            }
        }
        Self { rank, entries }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn get(&self, r: u32, s: u32, t: u32) -> u32 {
        self.entries.get(&(r, s, t)).copied().unwrap_or(0)
    }

    /// Nonzero entries in `(r, s, t)` order.
    pub fn entries(&self) -> impl Iterator<Item = ((u32, u32, u32), u32)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.len()
    }

    /// Triples `(r, t)` where `Σ_s c_{rs}^t ≠ n_r` although `r` starts at the
    /// source fiber of `t`.
    pub fn row_sum_violations(&self, x: &CoherentConfiguration) -> Vec<(u32, u32)> {
        let mut sums: BTreeMap<(u32, u32), u32> = BTreeMap::new();
        for ((r, _s, t), v) in self.entries() {
            *sums.entry((r, t)).or_default() += v;
        }
        let mut bad = Vec::new();
        for r in 0..self.rank as u32 {
            for t in 0..self.rank as u32 {
                if x.fiber_pair(r).0 != x.fiber_pair(t).0 {
                    continue;
                }
                if sums.get(&(r, t)).copied().unwrap_or(0) != x.valency(r) {
                    bad.push((r, t));
                }
            }
        }
        bad
    }

    /// Triples violating `c_{r*s*}^{t*} = c_{sr}^t` or
    /// `n_t c_{rs}^{t*} = n_r c_{st}^{r*} = n_s c_{tr}^{s*}` (homogeneous case).
    pub fn homogeneous_identity_violations(&self, x: &CoherentConfiguration) -> Vec<(u32, u32, u32)> {
        let tr = |s: u32| x.transpose(s);
        let n = |s: u32| x.valency(s) as u64;
        let mut bad = Vec::new();
        for r in 0..self.rank as u32 {
            for s in 0..self.rank as u32 {
                for t in 0..self.rank as u32 {
                    let first = self.get(tr(r), tr(s), tr(t)) == self.get(s, r, t);
                    let a = n(t) * self.get(r, s, tr(t)) as u64;
                    let b = n(r) * self.get(s, t, tr(r)) as u64;
                    let c = n(s) * self.get(t, r, tr(s)) as u64;
                    if !(first && a == b && b == c) {
                        bad.push((r, s, t));
                    }
                }
            }
        }
        bad
    }

    /// Whether `phi` (color of `self` ↦ color of `other`) preserves every number.
    pub fn is_preserved_by(&self, other: &IntersectionTensor, phi: &[u32]) -> bool {
        if self.rank != other.rank || phi.len() != self.rank {
            return false;
        }
        self.nonzero_count() == other.nonzero_count()
            && self
                .entries()
                .all(|((r, s, t), v)| other.get(phi[r as usize], phi[s as usize], phi[t as usize]) == v)
    }
}
