//! Two-dimensional Weisfeiler-Leman refinement.
//!
//! Each sweep recolors a pair `(i, j)` by its old color together with the
//! multiset of `(color(i,k), color(k,j))` over all `k`, the latter condensed to
//! a fixed 128-bit multiset hash. New colors are the lexicographic ranks of
//! these fingerprints, so names do not depend on how the points are labelled. Several graphs can be refined in lockstep over a shared
//! palette; the run diverges as soon as their fingerprint censuses differ.


use rustc_hash::FxHashMap;

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::config::{verify_coherence, CoherentConfiguration};
use crate::graph::{refines, ColoredGraph};
use crate::profile::transposed;

/// Default point budget for [`m_extension`].
pub const DEFAULT_EXTENSION_BUDGET: usize = 1100;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WlError {
    #[error("the 2-extension needs {required} points, budget is {budget}")]
    Budget { required: usize, budget: usize },
    #[error("only m = 2 is supported, got m = {0}")]
    UnsupportedDimension(usize),
    #[error("point {point} is out of range for {n} points")]
    PointOutOfRange { point: usize, n: usize },
    #[error("point {0} listed twice")]
    DuplicatePoint(usize),
    #[error("color map is not a bijection onto the target palette: {0}")]
    NotBijection(String),
}

/// Instrumentation of one refinement run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefinementTrace {
    /// Number of sweeps, including the final one that changes nothing.
    pub rounds: usize,
    /// Palette size after the diagonal split, then after each sweep.
    pub history: Vec<usize>,
    /// Fingerprint of every final color, indexed by color.
    pub canonical_names: Vec<String>,
}

pub(crate) struct Refined {
    pub colorings: Vec<Vec<u32>>,
    pub history: Vec<usize>,
    final_keys: Vec<Key>,
}

impl Refined {
    fn fingerprints(&self) -> Vec<String> {
        self.final_keys
            .iter()
            .map(|key| {
                let mut h = Sha256::new();
                for v in key {
                    h.update(v.to_le_bytes());
                }
                h.finalize()[..8].iter().map(|b| format!("{b:02x}")).collect()
            })
            .collect()
    }
}

/// Refines every coloring (same `n`, shared color namespace) to the coarsest
/// common stable coloring. `Err(round)` reports the sweep at which the
/// colorings stopped being indistinguishable (0 = the diagonal split).
pub(crate) fn refine_lockstep(inputs: Vec<Vec<u32>>, n: usize) -> Result<Refined, usize> {
    // diagonal split: key (off-diagonal flag, input color, color of the
    // transposed pair); sweeps preserve transpose closure from here on
    let per_graph = inputs
        .iter()
        .map(|c| {
            index_keys((0..n * n).map(|p| {
                let (i, j) = (p / n, p % n);
                [u64::from(i != j), c[p] as u64, c[j * n + i] as u64]
            }))
        })
        .collect();
    let (mut colorings, mut palette, _) = name_by_rank(per_graph).ok_or(0usize)?;
    let mut history = vec![palette];
    let mut round = 0usize;
    loop {
        round += 1;
        let (next, next_palette, final_keys) = sweep(&colorings, n).ok_or(round)?;
        history.push(next_palette);
        if next_palette == palette {
            debug_assert!(colorings.iter().zip(&next).all(|(a, b)| a == b));
            return Ok(Refined { colorings: next, history, final_keys });
        }
        colorings = next;
        palette = next_palette;
    }
}

// below this many pairs a sweep runs on the calling thread
const PARALLEL_PAIRS: usize = 4096;

type Key = [u64; 3];
type Named = (Vec<Vec<u32>>, usize, Vec<Key>);

#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Order-independent 128-bit hash of the profile of `(i, j)`.
#[inline]
fn profile_hash(row: &[u32], column: &[u32]) -> (u64, u64) {
    let mut h1 = 0u64;
    let mut h2 = 0u64;
    for (&a, &b) in row.iter().zip(column) {
        let m = mix(((a as u64) << 32 | b as u64).wrapping_add(0x9e37_79b9_7f4a_7c15));
        h1 = h1.wrapping_add(m);
        h2 = h2.wrapping_add(mix(m ^ 0x2545_f491_4f6c_dd1d));
    }
    (h1, h2)
}

/// One refinement sweep over all colorings. Profiles enter through their
/// multiset hash; two different profiles sharing a hash would only merge
/// classes, and the caller's coherence check rejects any such outcome.
fn sweep(colorings: &[Vec<u32>], n: usize) -> Option<Named> {
    let per_graph: Vec<(Vec<Key>, Vec<u32>)> = colorings
        .iter()
        .map(|colors| {
            let cols = transposed(colors, n);
            let key = |p: usize| {
                let (i, j) = (p / n, p % n);
                let (h1, h2) = profile_hash(&colors[i * n..(i + 1) * n], &cols[j * n..(j + 1) * n]);
                [colors[p] as u64, h1, h2]
            };
            if n * n >= PARALLEL_PAIRS {
                let keys: Vec<Key> = (0..n * n).into_par_iter().map(key).collect();
                index_keys(keys.into_iter())
            } else {
                index_keys((0..n * n).map(key))
            }
        })
        .collect();
    name_by_rank(per_graph)
}

/// Distinct keys in order of first appearance, and each pair's index among them.
fn index_keys(keys: impl Iterator<Item = Key>) -> (Vec<Key>, Vec<u32>) {
    let mut table: FxHashMap<Key, u32> = FxHashMap::default();
    let mut distinct = Vec::new();
    let ids = keys
        .map(|k| {
            *table.entry(k).or_insert_with(|| {
                distinct.push(k);
                distinct.len() as u32 - 1
            })
        })
        .collect();
    (distinct, ids)
}

/// Names keys by their lexicographic rank in the union over all graphs, after
/// checking that every graph has the same number of pairs per key.
fn name_by_rank(per_graph: Vec<(Vec<Key>, Vec<u32>)>) -> Option<Named> {
    let mut census: Option<Vec<(Key, usize)>> = None;
    let mut out = Vec::with_capacity(per_graph.len());
    let mut final_keys = Vec::new();
    for (distinct, ids) in per_graph {
        let mut counts = vec![0usize; distinct.len()];
        for &id in &ids {
            counts[id as usize] += 1;
        }
        let mut ranked: Vec<usize> = (0..distinct.len()).collect();
        ranked.sort_unstable_by(|&a, &b| distinct[a].cmp(&distinct[b]));
        let mut rename = vec![0u32; distinct.len()];
        for (rank, &local) in ranked.iter().enumerate() {
            rename[local] = rank as u32;
        }
        let this: Vec<(Key, usize)> = ranked.iter().map(|&l| (distinct[l], counts[l])).collect();
        match &census {
            None => census = Some(this),
            Some(prev) if *prev != this => return None,
            _ => {}
        }
        out.push(ids.into_iter().map(|l| rename[l as usize]).collect());
        if final_keys.is_empty() {
            final_keys = ranked.iter().map(|&l| distinct[l]).collect();
        }
    }
    let palette = final_keys.len();
    Some((out, palette, final_keys))
}

/// The smallest coherent configuration whose relations include every color
/// class of `g`.
pub fn wl_closure(g: &ColoredGraph) -> (CoherentConfiguration, RefinementTrace) {
    let refined = refine_lockstep(vec![g.colors().to_vec()], g.n()).expect("a single coloring cannot diverge");
    let trace = RefinementTrace {
        rounds: refined.history.len() - 1,
        history: refined.history.clone(),
        canonical_names: refined.fingerprints(),
    };
    (finish(g, refined), trace)
}

/// [`wl_closure`] without the trace.
pub fn closure(g: &ColoredGraph) -> CoherentConfiguration {
    let refined = refine_lockstep(vec![g.colors().to_vec()], g.n()).expect("a single coloring cannot diverge");
    finish(g, refined)
}

fn finish(g: &ColoredGraph, refined: Refined) -> CoherentConfiguration {
    let colors = refined.colorings.into_iter().next().unwrap();
    let graph = ColoredGraph::new(g.n(), colors).expect("refined colors are dense");
    let x = verify_coherence(&graph).expect("a stable coloring is coherent");
    debug_assert_eq!(x.graph(), &graph, "canonical names already put loop colors first");
    debug_assert!(refines(x.colors(), g.colors()));
    x
}

/// `X_{α,β,…}`: the closure after giving each listed point a fresh loop color.
pub fn point_extension(x: &CoherentConfiguration, points: &[usize]) -> Result<CoherentConfiguration, WlError> {
    let n = x.n();
    let mut colors = x.colors().to_vec();
    let mut seen = vec![false; n];
    for (idx, &p) in points.iter().enumerate() {
        if p >= n {
            return Err(WlError::PointOutOfRange { point: p, n });
        }
        if std::mem::replace(&mut seen[p], true) {
            return Err(WlError::DuplicatePoint(p));
        }
        colors[p * n + p] = (x.rank() + idx) as u32;
    }
    if points.is_empty() {
        return Ok(x.clone());
    }
    // a point that was already a singleton fiber leaves its old loop color unused
    let g = ColoredGraph::from_labels(n, &colors).expect("colors are nonempty");
    let ext = closure(&g);
    assert!(refines(ext.colors(), x.colors()), "extension must refine the configuration");
    Ok(ext)
}

/// Index of the point `(a, b)` of `Ω²`.
#[inline]
pub fn square_point(n: usize, a: usize, b: usize) -> usize {
    a * n + b
}

/// The 2-extension: closure on `Ω²` of the Cartesian square of `x` with the
/// diagonal `{(a, a)}` marked.
pub fn m_extension(x: &CoherentConfiguration, m: usize, budget: usize) -> Result<CoherentConfiguration, WlError> {
    if m != 2 {
        return Err(WlError::UnsupportedDimension(m));
    }
    let n = x.n();
    let big = n * n;
    if big > budget {
        return Err(WlError::Budget { required: big, budget });
    }
    let labels: Vec<(u32, u32, bool)> = (0..big * big)
        .map(|p| {
            let (u, v) = (p / big, p % big);
            let (a, b) = (u / n, u % n);
            let (c, d) = (v / n, v % n);
            (x.color(a, c), x.color(b, d), u == v && a == b)
        })
        .collect();
    let product = ColoredGraph::from_labels(big, &labels).expect("labels are nonempty");
    let ext = closure(&product);
    assert!(refines(ext.colors(), product.colors()), "2-extension must contain the Cartesian square");
    Ok(ext)
}

/// Outcome of a paired refinement.
#[derive(Debug, Clone)]
pub enum Compatibility {
    /// Both closures and the color correspondence `phi` (color of `x` ↦ color of `x2`).
    Compatible { x: CoherentConfiguration, x2: CoherentConfiguration, phi: Vec<u32>, trace: RefinementTrace },
    /// Fingerprint censuses diverged at this sweep (0 = the diagonal split).
    Incompatible { round: usize },
}

impl Compatibility {
    pub fn is_compatible(&self) -> bool {
        matches!(self, Compatibility::Compatible { .. })
    }
}

/// Refines `g` and `g2` in lockstep after identifying their palettes through
/// `psi` (color of `g` ↦ color of `g2`).
pub fn compatible_closure(g: &ColoredGraph, g2: &ColoredGraph, psi: &[u32]) -> Result<Compatibility, WlError> {
    if psi.len() != g.palette_size() {
        return Err(WlError::NotBijection(format!(
            "map has {} entries for a palette of {}",
            psi.len(),
            g.palette_size()
        )));
    }
    // no color bijection exists at all
    if g.palette_size() != g2.palette_size() {
        return Ok(Compatibility::Incompatible { round: 0 });
    }
    let mut inverse = vec![u32::MAX; g2.palette_size()];
    for (c, &d) in psi.iter().enumerate() {
        if d as usize >= inverse.len() || inverse[d as usize] != u32::MAX {
            return Err(WlError::NotBijection(format!("color {d} is hit twice or out of range")));
        }
        inverse[d as usize] = c as u32;
    }
    if g.n() != g2.n() {
        return Ok(Compatibility::Incompatible { round: 0 });
    }
    let pulled: Vec<u32> = g2.colors().iter().map(|&c| inverse[c as usize]).collect();
    let refined = match refine_lockstep(vec![g.colors().to_vec(), pulled], g.n()) {
        Ok(r) => r,
        Err(round) => return Ok(Compatibility::Incompatible { round }),
    };
    let trace = RefinementTrace {
        rounds: refined.history.len() - 1,
        history: refined.history.clone(),
        canonical_names: refined.fingerprints(),
    };
    let mut it = refined.colorings.into_iter();
    let a = ColoredGraph::new(g.n(), it.next().unwrap()).expect("dense");
    let b = ColoredGraph::new(g.n(), it.next().unwrap()).expect("dense");
    let x = verify_coherence(&a).expect("stable coloring is coherent");
    let x2 = verify_coherence(&b).expect("stable coloring is coherent");
    // both closures carry the same canonical names
    let phi: Vec<u32> = (0..x.rank() as u32).collect();
    if x != x2 && !x.intersection_tensor().is_preserved_by(&x2.intersection_tensor(), &phi) {
        return Ok(Compatibility::Incompatible { round: trace.rounds });
    }
    Ok(Compatibility::Compatible { x, x2, phi, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::same_partition;
    use crate::zoo;

    #[test]
    fn coherent_input_is_a_fixed_point() {
        let g = zoo::cycle_graph(5);
        let (x, trace) = wl_closure(&g);
        assert!(same_partition(x.colors(), g.colors()));
        assert_eq!(trace.rounds, 1);
        assert_eq!(trace.history, vec![3, 3]);
    }

    #[test]
    fn clique_union_splits_into_fibers() {
        let (x, trace) = wl_closure(&zoo::clique_union(3, 4));
        let mut sizes: Vec<usize> = x.fibers().iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![3, 4]);
        assert!(trace.history.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn extension_by_no_points_is_identity() {
        let x = verify_coherence(&zoo::cycle_distance(6)).unwrap();
        assert_eq!(point_extension(&x, &[]).unwrap(), x);
        assert!(matches!(point_extension(&x, &[7]), Err(WlError::PointOutOfRange { .. })));
        assert!(matches!(point_extension(&x, &[1, 1]), Err(WlError::DuplicatePoint(1))));
    }

    #[test]
    fn closure_splits_classes_that_are_not_transpose_closed() {
        // (0,2) and (0,3) share a color but their transposes do not
        let rows = vec![
            vec![0, 0, 1, 1, 2, 2],
            vec![0, 0, 2, 2, 1, 1],
            vec![1, 1, 0, 0, 2, 2],
            vec![2, 2, 0, 0, 1, 1],
            vec![1, 1, 2, 2, 0, 0],
            vec![2, 2, 1, 1, 0, 0],
        ];
        let g = ColoredGraph::from_rows(&rows).unwrap();
        let x = closure(&g);
        assert!(refines(x.colors(), g.colors()));
        assert_ne!(x.color(0, 2), x.color(0, 3));
    }

    #[test]
    fn individualizing_a_singleton_fiber_changes_nothing() {
        let x = verify_coherence(&zoo::thin_cyclic(5)).unwrap();
        let e = point_extension(&x, &[2]).unwrap();
        assert!(same_partition(point_extension(&e, &[3]).unwrap().colors(), e.colors()));
    }

    #[test]
    fn thin_scheme_extension_is_complete() {
        let x = verify_coherence(&zoo::thin_cyclic(5)).unwrap();
        assert!(point_extension(&x, &[2]).unwrap().is_complete());
    }

    #[test]
    fn square_of_two_point_complete_configuration() {
        let x = verify_coherence(&zoo::complete(2)).unwrap();
        let e = m_extension(&x, 2, DEFAULT_EXTENSION_BUDGET).unwrap();
        assert_eq!(e.n(), 4);
        assert!(e.is_complete());
    }

    #[test]
    fn square_of_trivial_marks_the_diagonal() {
        let x = verify_coherence(&zoo::trivial(3)).unwrap();
        let e = m_extension(&x, 2, DEFAULT_EXTENSION_BUDGET).unwrap();
        let diag: Vec<usize> = (0..3).map(|a| square_point(3, a, a)).collect();
        for &p in &diag {
            for q in 0..9 {
                let same = e.fiber_of_point(p) == e.fiber_of_point(q);
                assert!(!same || diag.contains(&q));
            }
        }
        assert!(matches!(m_extension(&x, 2, 8), Err(WlError::Budget { required: 9, budget: 8 })));
        assert!(matches!(m_extension(&x, 3, 100), Err(WlError::UnsupportedDimension(3))));
    }

    #[test]
    fn paired_refinement_of_identical_graphs() {
        let g = zoo::cycle_graph(7);
        let id: Vec<u32> = (0..g.palette_size() as u32).collect();
        let out = compatible_closure(&g, &g, &id).unwrap();
        match out {
            Compatibility::Compatible { x, x2, phi, .. } => {
                assert_eq!(x, x2);
                assert_eq!(phi, (0..x.rank() as u32).collect::<Vec<_>>());
            }
            _ => panic!("identical graphs must be compatible"),
        }
        assert!(matches!(compatible_closure(&g, &g, &[0, 0, 1]), Err(WlError::NotBijection(_))));
    }
}
