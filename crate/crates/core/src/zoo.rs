//! Small standard colored graphs and groups.

use crate::cartan::{generic_scheme, GenericScheme};
use crate::graph::ColoredGraph;
use crate::perm::{Permutation, PermutationGroup, DEFAULT_GROUP_BUDGET};

/// Diagonal one color, everything else another.
pub fn trivial(n: usize) -> ColoredGraph {
    ColoredGraph::from_labels(n, &(0..n * n).map(|p| p / n != p % n).collect::<Vec<_>>()).unwrap()
}

/// Every pair its own color.
pub fn complete(n: usize) -> ColoredGraph {
    ColoredGraph::new(n, (0..(n * n) as u32).collect()).unwrap()
}

/// Diagonal, edges and non-edges of the `n`-cycle.
pub fn cycle_graph(n: usize) -> ColoredGraph {
    let labels: Vec<u8> = (0..n * n)
        .map(|p| {
            let d = (p % n + n - p / n) % n;
            match d {
                0 => 0,
                1 => 1,
                _ if d == n - 1 => 1,
                _ => 2,
            }
        })
        .collect();
    ColoredGraph::from_labels(n, &labels).unwrap()
}

/// Distance coloring of the `n`-cycle: the configuration of the dihedral group.
pub fn cycle_distance(n: usize) -> ColoredGraph {
    let labels: Vec<usize> = (0..n * n)
        .map(|p| {
            let d = (p % n + n - p / n) % n;
            d.min(n - d)
        })
        .collect();
    ColoredGraph::from_labels(n, &labels).unwrap()
}

/// `color(i, j) = j − i mod n`: the configuration of the regular cyclic group.
pub fn thin_cyclic(n: usize) -> ColoredGraph {
    ColoredGraph::new(n, (0..n * n).map(|p| ((p % n + n - p / n) % n) as u32).collect()).unwrap()
}

/// Two fibers of sizes `a` and `b`, each pair of fibers joined by one relation.
pub fn two_fibers(a: usize, b: usize) -> ColoredGraph {
    let n = a + b;
    let side = |x: usize| usize::from(x >= a);
    let labels: Vec<(usize, usize, bool)> =
        (0..n * n).map(|p| (side(p / n), side(p % n), p / n == p % n)).collect();
    ColoredGraph::from_labels(n, &labels).unwrap()
}

/// Adjacency coloring of the disjoint union of an `a`-clique and a `b`-clique.
pub fn clique_union(a: usize, b: usize) -> ColoredGraph {
    let n = a + b;
    let side = |x: usize| x >= a;
    let labels: Vec<u8> = (0..n * n)
        .map(|p| {
            let (i, j) = (p / n, p % n);
            if i == j {
                0
            } else if side(i) == side(j) {
                1
            } else {
                2
            }
        })
        .collect();
    ColoredGraph::from_labels(n, &labels).unwrap()
}

fn closure(gens: &[Permutation], n: usize) -> PermutationGroup {
    PermutationGroup::closure(gens, n, DEFAULT_GROUP_BUDGET).unwrap()
}

/// `C_n` acting regularly.
pub fn cyclic_group(n: usize) -> PermutationGroup {
    closure(&[Permutation::cycle(n)], n)
}

/// `D_n` (order `2n`) acting on the `n` vertices of a polygon.
pub fn dihedral_group(n: usize) -> PermutationGroup {
    let reflection = Permutation::new((0..n as u32).map(|i| (n as u32 - i) % n as u32).collect()).unwrap();
    closure(&[Permutation::cycle(n), reflection], n)
}

/// `D_n` acting regularly on itself (degree `2n`), points `r^i` then `r^i s`.
pub fn regular_dihedral(n: usize) -> PermutationGroup {
    let m = n as u32;
    // right multiplication by r and by s
    let r: Vec<u32> = (0..2 * m).map(|x| if x < m { (x + 1) % m } else { m + (x - m + m - 1) % m }).collect();
    let s: Vec<u32> = (0..2 * m).map(|x| if x < m { x + m } else { x - m }).collect();
    closure(&[Permutation::new(r).unwrap(), Permutation::new(s).unwrap()], 2 * n)
}

/// `Sym(n)` in its natural action.
pub fn symmetric_group(n: usize) -> PermutationGroup {
    let t = Permutation::from_cycles(n, &[&[0, 1]]).unwrap();
    closure(&[t, Permutation::cycle(n)], n)
}

/// `Alt(n)` in its natural action, `n ≥ 3`.
pub fn alternating_group(n: usize) -> PermutationGroup {
    let gens: Vec<Permutation> =
        (2..n as u32).map(|k| Permutation::from_cycles(n, &[&[0, 1, k]]).unwrap()).collect();
    closure(&gens, n)
}

/// `Sym(4)` on the six cosets of the normal Klein four-group.
pub fn sym4_klein() -> GenericScheme {
    let s4 = symmetric_group(4);
    let mut v4: Vec<usize> = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]
        .iter()
        .map(|p| s4.index_of(&Permutation::new(p.to_vec()).unwrap()).unwrap())
        .collect();
    v4.sort_unstable();
    generic_scheme(&s4, &v4).unwrap()
}

/// Relabels by a permutation of the points (`i ↦ perm[i]`).
pub fn relabel(g: &ColoredGraph, perm: &[u32]) -> ColoredGraph {
    g.relabel(perm)
}
