//! Coherent configurations and the axiom checker.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{ColoredGraph, GraphError, GraphJson};
use crate::profile::{decode, transposed, Profile, ProfileScratch, RowGroups};
use crate::tensor::IntersectionTensor;

/// First violated axiom found by [`verify_coherence`], with a witness.
///
/// Colors in a violation refer to the colors of the input graph.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum Violation {
    #[error("color {color} occurs on the diagonal at {point} and off the diagonal at {pair:?}")]
    MixedDiagonal { color: u32, point: usize, pair: (usize, usize) },
    #[error("transpose axiom: color {color} at {first:?} transposes to {expected}, but at {pair:?} to {found}")]
    Transpose { color: u32, first: (usize, usize), expected: u32, pair: (usize, usize), found: u32 },
    #[error("color {color} spans fiber pairs at {first:?} and {pair:?}")]
    FiberPair { color: u32, first: (usize, usize), pair: (usize, usize) },
    #[error("valency of color {color}: point {first} has {first_count}, point {point} has {count}")]
    Valency { color: u32, first: usize, first_count: usize, point: usize, count: usize },
    #[error(
        "regularity: c[{r},{s}] over class {t} is {first_count} at {first:?} but {count} at {pair:?}"
    )]
    Regularity {
        r: u32,
        s: u32,
        t: u32,
        first: (usize, usize),
        first_count: u32,
        pair: (usize, usize),
        count: u32,
    },
}

/// A colored graph whose color classes form a coherent configuration.
///
/// Colors are dense with the diagonal colors numbered first; diagonal color `d`
/// is the loop color of fiber `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoherentConfiguration {
    graph: ColoredGraph,
    transpose: Vec<u32>,
    num_fibers: usize,
    fiber_of_point: Vec<u32>,
    fiber_pair: Vec<(u32, u32)>,
    valency: Vec<u32>,
    representative: Vec<(usize, usize)>,
}

/// Checks the axioms exhaustively and, on success, renumbers colors so that
/// diagonal colors come first (each group in increasing input order).
pub fn verify_coherence(g: &ColoredGraph) -> Result<CoherentConfiguration, Violation> {
    let n = g.n();
    let palette = g.palette_size();

    // diagonal vs off-diagonal
    let mut diag_point: Vec<Option<usize>> = vec![None; palette];
    let mut off_pair: Vec<Option<(usize, usize)>> = vec![None; palette];
    for i in 0..n {
        for j in 0..n {
            let c = g.color(i, j) as usize;
            if i == j {
                diag_point[c].get_or_insert(i);
            } else {
                off_pair[c].get_or_insert((i, j));
            }
        }
    }
    for c in 0..palette {
        if let (Some(point), Some(pair)) = (diag_point[c], off_pair[c]) {
            return Err(Violation::MixedDiagonal { color: c as u32, point, pair });
        }
    }

    // transpose
    let mut transpose: Vec<Option<(u32, (usize, usize))>> = vec![None; palette];
    for i in 0..n {
        for j in 0..n {
            let c = g.color(i, j);
            let t = g.color(j, i);
            match transpose[c as usize] {
                None => transpose[c as usize] = Some((t, (i, j))),
                Some((expected, first)) if expected != t => {
                    return Err(Violation::Transpose { color: c, first, expected, pair: (i, j), found: t });
                }
                _ => {}
            }
        }
    }
    let transpose: Vec<u32> = transpose.into_iter().map(|t| t.expect("every color occurs").0).collect();

    // fibers and fiber pairs
    let loop_color: Vec<u32> = (0..n).map(|i| g.color(i, i)).collect();
    let mut fiber_pair: Vec<Option<((u32, u32), (usize, usize))>> = vec![None; palette];
    for i in 0..n {
        for j in 0..n {
            let c = g.color(i, j) as usize;
            let fp = (loop_color[i], loop_color[j]);
            match fiber_pair[c] {
                None => fiber_pair[c] = Some((fp, (i, j))),
                Some((prev, first)) if prev != fp => {
                    return Err(Violation::FiberPair { color: c as u32, first, pair: (i, j) });
                }
                _ => {}
            }
        }
    }

    // valencies
    let mut valency: Vec<Option<(usize, usize)>> = vec![None; palette];
    let mut counts = vec![0usize; palette];
    for i in 0..n {
        counts.iter_mut().for_each(|x| *x = 0);
        for j in 0..n {
            counts[g.color(i, j) as usize] += 1;
        }
        for c in 0..palette {
            let (src, _) = fiber_pair[c].expect("every color occurs").0;
            if src != loop_color[i] {
                continue;
            }
            match valency[c] {
                None => valency[c] = Some((counts[c], i)),
                Some((v, first)) if v != counts[c] => {
                    return Err(Violation::Valency { color: c as u32, first, first_count: v, point: i, count: counts[c] });
                }
                _ => {}
            }
        }
    }

    check_regularity(g)?;

    // renumber: diagonal colors first
    let mut order: Vec<u32> = (0..palette as u32).filter(|&c| diag_point[c as usize].is_some()).collect();
    let num_fibers = order.len();
    order.extend((0..palette as u32).filter(|&c| diag_point[c as usize].is_none()));
    let mut rename = vec![0u32; palette];
    for (new, &old) in order.iter().enumerate() {
        rename[old as usize] = new as u32;
    }
    let graph = g.recolor(&rename).expect("renaming is a bijection");
    let mut representative = vec![(0, 0); palette];
    let mut seen = vec![false; palette];
    for i in 0..n {
        for j in 0..n {
            let c = graph.color(i, j) as usize;
            if !seen[c] {
                seen[c] = true;
                representative[c] = (i, j);
            }
        }
    }
    let pick = |old: usize| rename[old];
    Ok(CoherentConfiguration {
        transpose: order.iter().map(|&old| pick(transpose[old as usize] as usize)).collect(),
        fiber_of_point: (0..n).map(|i| graph.color(i, i)).collect(),
        fiber_pair: order
            .iter()
            .map(|&old| {
                let ((a, b), _) = fiber_pair[old as usize].unwrap();
                (pick(a as usize), pick(b as usize))
            })
            .collect(),
        valency: order.iter().map(|&old| valency[old as usize].unwrap().0 as u32).collect(),
        num_fibers,
        representative,
        graph,
    })
}

/// Exhaustive regularity check: every pair of a class has the same profile.
fn check_regularity(g: &ColoredGraph) -> Result<(), Violation> {
    let n = g.n();
    let palette = g.palette_size();
    let colors = g.colors();
    let mut reps: Vec<Option<((usize, usize), Profile)>> = vec![None; palette];
    let mut scratch = ProfileScratch::default();
    for i in 0..n {
        for j in 0..n {
            let c = g.color(i, j) as usize;
            if reps[c].is_none() {
                reps[c] = Some(((i, j), scratch.profile(colors, n, palette, i, j)));
            }
        }
    }
    let reps: Vec<((usize, usize), Profile)> = reps.into_iter().map(Option::unwrap).collect();
    let cols = transposed(colors, n);
    let first_bad = (0..n)
        .into_par_iter()
        .map_init(
            || (ProfileScratch::default(), Profile::new()),
            |(scratch, buf), i| {
                let groups = RowGroups::new(&colors[i * n..(i + 1) * n]);
                for j in 0..n {
                    let t = g.color(i, j) as usize;
                    scratch.profile_grouped(&groups, &cols[j * n..(j + 1) * n], palette, buf);
                    if *buf != reps[t].1 {
                        return Some(profile_difference(t as u32, &reps[t], (i, j), buf, palette));
                    }
                }
                None
            },
        )
        .find_first(Option::is_some)
        .flatten();
    match first_bad {
        Some(v) => Err(v),
        None => Ok(()),
    }
}

fn profile_difference(
    t: u32,
    (first, reference): &((usize, usize), Profile),
    pair: (usize, usize),
    found: &Profile,
    palette: usize,
) -> Violation {
    let a: BTreeMap<u64, u32> = reference.iter().copied().collect();
    let b: BTreeMap<u64, u32> = found.iter().copied().collect();
    let code = a
        .keys()
        .chain(b.keys())
        .copied()
        .filter(|k| a.get(k) != b.get(k))
        .min()
        .expect("profiles differ");
    let (r, s) = decode(code, palette);
    Violation::Regularity {
        r,
        s,
        t,
        first: *first,
        first_count: a.get(&code).copied().unwrap_or(0),
        pair,
        count: b.get(&code).copied().unwrap_or(0),
    }
}

impl CoherentConfiguration {
    pub fn graph(&self) -> &ColoredGraph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn rank(&self) -> usize {
        self.graph.palette_size()
    }

    #[inline]
    pub fn color(&self, i: usize, j: usize) -> u32 {
        self.graph.color(i, j)
    }

    pub fn colors(&self) -> &[u32] {
        self.graph.colors()
    }

    /// `s ↦ s*`.
    pub fn transpose(&self, s: u32) -> u32 {
        self.transpose[s as usize]
    }

    pub fn transpose_map(&self) -> &[u32] {
        &self.transpose
    }

    /// Colors occurring on the diagonal; these are `0..num_fibers`.
    pub fn diagonal_colors(&self) -> Vec<u32> {
        (0..self.num_fibers as u32).collect()
    }

    pub fn is_diagonal(&self, s: u32) -> bool {
        (s as usize) < self.num_fibers
    }

    pub fn num_fibers(&self) -> usize {
        self.num_fibers
    }

    pub fn fiber_of_point(&self, p: usize) -> u32 {
        self.fiber_of_point[p]
    }

    /// Fibers as sorted point lists, indexed by fiber.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut fibers = vec![Vec::new(); self.num_fibers];
        for (p, &f) in self.fiber_of_point.iter().enumerate() {
            fibers[f as usize].push(p);
        }
        fibers
    }

    /// `(source fiber, target fiber)` of a color.
    pub fn fiber_pair(&self, s: u32) -> (u32, u32) {
        self.fiber_pair[s as usize]
    }

    pub fn valency(&self, s: u32) -> u32 {
        self.valency[s as usize]
    }

    /// Valency of every color, indexed by color.
    pub fn valencies(&self) -> &[u32] {
        &self.valency
    }

    /// Sorted multiset of valencies.
    pub fn valency_multiset(&self) -> Vec<u32> {
        let mut v = self.valency.clone();
        v.sort_unstable();
        v
    }

    pub fn max_valency(&self) -> u32 {
        self.valency.iter().copied().max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.num_fibers == 1
    }

    /// All singletons.
    pub fn is_complete(&self) -> bool {
        self.num_fibers == self.n()
    }

    /// First pair (row-major) of each color class.
    pub fn representative(&self, s: u32) -> (usize, usize) {
        self.representative[s as usize]
    }

    /// `α s`: the out-neighbours of `alpha` in color `s`.
    pub fn neighbours(&self, alpha: usize, s: u32) -> Vec<usize> {
        (0..self.n()).filter(|&b| self.color(alpha, b) == s).collect()
    }

    /// Points `α` with `|α r| ≤ 1` for every color `r`.
    pub fn regular_points(&self) -> Vec<usize> {
        let rank = self.rank();
        let mut counts = vec![0u32; rank];
        (0..self.n())
            .filter(|&a| {
                counts.iter_mut().for_each(|c| *c = 0);
                let mut ok = true;
                for b in 0..self.n() {
                    let c = &mut counts[self.color(a, b) as usize];
                    *c += 1;
                    if *c > 1 {
                        ok = false;
                        break;
                    }
                }
                ok
            })
            .collect()
    }

    pub fn is_one_regular(&self) -> bool {
        !self.regular_points().is_empty()
    }

    pub fn intersection_tensor(&self) -> IntersectionTensor {
        IntersectionTensor::compute(self)
    }

    pub fn to_json(&self) -> ConfigJson {
        ConfigJson {
            n: self.n(),
            colors: self.graph.rows(),
            rank: self.rank(),
            transpose: self.transpose.clone(),
            diagonal_colors: self.diagonal_colors(),
        }
    }
}

/// JSON form of a configuration: the graph plus rank, transposition, and loop colors.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ConfigJson {
    pub n: usize,
    pub colors: Vec<Vec<u32>>,
    pub rank: usize,
    pub transpose: Vec<u32>,
    pub diagonal_colors: Vec<u32>,
}

#[derive(Debug, Error)]
pub enum ConfigJsonError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("not coherent: {0}")]
    Violation(#[from] Violation),
    #[error("declared {field} does not match the verified configuration")]
    Mismatch { field: &'static str },
}

impl TryFrom<ConfigJson> for CoherentConfiguration {
    type Error = ConfigJsonError;

    fn try_from(j: ConfigJson) -> Result<Self, ConfigJsonError> {
        let graph = ColoredGraph::try_from(GraphJson { n: j.n, colors: j.colors })?;
        let x = verify_coherence(&graph)?;
        if x.graph != graph {
            return Err(ConfigJsonError::Mismatch { field: "colors" });
        }
        if x.rank() != j.rank {
            return Err(ConfigJsonError::Mismatch { field: "rank" });
        }
        if x.transpose != j.transpose {
            return Err(ConfigJsonError::Mismatch { field: "transpose" });
        }
        if x.diagonal_colors() != j.diagonal_colors {
            return Err(ConfigJsonError::Mismatch { field: "diagonal_colors" });
        }
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn trivial_configuration_has_rank_two() {
        let x = verify_coherence(&zoo::trivial(4)).unwrap();
        assert_eq!(x.rank(), 2);
        assert!(x.is_homogeneous());
        assert_eq!(x.valency_multiset(), vec![1, 3]);
        assert!(x.regular_points().is_empty());
        assert!(!x.is_one_regular());
    }

    #[test]
    fn five_cycle_is_coherent_of_rank_three() {
        let x = verify_coherence(&zoo::cycle_graph(5)).unwrap();
        assert_eq!(x.rank(), 3);
        assert_eq!(x.valency_multiset(), vec![1, 2, 2]);
    }

    #[test]
    fn single_arc_breaks_transpose_axiom() {
        let n = 6;
        let mut colors = vec![1u32; n * n];
        for i in 0..n {
            colors[i * n + i] = 0;
        }
        colors[1] = 2; // arc (0,1), transpose (1,0) keeps color 1
        let g = ColoredGraph::new(n, colors).unwrap();
        assert!(matches!(verify_coherence(&g), Err(Violation::Transpose { .. })));
    }

    #[test]
    fn mixed_diagonal_is_reported() {
        let g = ColoredGraph::new(2, vec![0, 0, 1, 1]).unwrap();
        assert!(matches!(verify_coherence(&g), Err(Violation::MixedDiagonal { color: 0, .. })));
    }

    #[test]
    fn regularity_witness_names_a_triple() {
        // path 0-1-2 on three points: edge colour is not regular
        let g = ColoredGraph::from_rows(&[vec![0, 1, 2], vec![1, 0, 1], vec![2, 1, 0]]).unwrap();
        match verify_coherence(&g) {
            Err(Violation::Regularity { first_count, count, .. }) => assert_ne!(first_count, count),
            Err(Violation::Valency { .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn disjoint_fibers_are_not_homogeneous() {
        let x = verify_coherence(&zoo::two_fibers(2, 3)).unwrap();
        assert!(!x.is_homogeneous());
        assert_eq!(x.fibers(), vec![vec![0, 1], vec![2, 3, 4]]);
        assert_eq!(x.fiber_pair(x.color(0, 3)), (0, 1));
    }

    #[test]
    fn complete_and_thin_configurations_are_regular_everywhere() {
        let x = verify_coherence(&zoo::complete(3)).unwrap();
        assert_eq!(x.regular_points(), vec![0, 1, 2]);
        assert!(x.is_complete());
        let thin = verify_coherence(&zoo::thin_cyclic(5)).unwrap();
        assert_eq!(thin.regular_points(), vec![0, 1, 2, 3, 4]);
        assert_eq!(thin.rank(), 5);
    }

    #[test]
    fn renumbering_puts_diagonal_first_and_is_idempotent() {
        // diagonal colour given the largest id in the input
        let g = ColoredGraph::from_rows(&[vec![1, 0], vec![0, 1]]).unwrap();
        let x = verify_coherence(&g).unwrap();
        assert_eq!(x.color(0, 0), 0);
        let again = verify_coherence(x.graph()).unwrap();
        assert_eq!(again, x);
    }

    #[test]
    fn json_round_trip_rejects_tampering() {
        let x = verify_coherence(&zoo::cycle_graph(5)).unwrap();
        let mut j = x.to_json();
        assert_eq!(CoherentConfiguration::try_from(j.clone()).unwrap(), x);
        j.rank = 4;
        assert!(matches!(CoherentConfiguration::try_from(j), Err(ConfigJsonError::Mismatch { field: "rank" })));
    }
}
