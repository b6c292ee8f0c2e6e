//! Complete colored digraphs on `n` points.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("point count must be positive")]
    Empty,
    #[error("expected {expected} color entries, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    RowLength { row: usize, expected: usize, found: usize },
    #[error("color {0} is unused although larger colors occur")]
    EmptyColorClass(u32),
}

/// A complete colored digraph: every ordered pair `(i, j)` carries a color.
///
/// Colors are dense: every identifier in `0..palette_size` occurs at least once.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredGraph {
    n: usize,
    colors: Vec<u32>,
    palette_size: usize,
}

impl ColoredGraph {
    /// Builds a graph from a row-major color matrix.
    pub fn new(n: usize, colors: Vec<u32>) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if colors.len() != n * n {
            return Err(GraphError::Shape { expected: n * n, found: colors.len() });
        }
        let palette_size = colors.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
        let mut seen = vec![false; palette_size];
        for &c in &colors {
            seen[c as usize] = true;
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(GraphError::EmptyColorClass(missing as u32));
        }
        Ok(Self { n, colors, palette_size })
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self, GraphError> {
        let n = rows.len();
        let mut colors = Vec::with_capacity(n * n);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(GraphError::RowLength { row, expected: n, found: r.len() });
            }
            colors.extend_from_slice(r);
        }
        Self::new(n, colors)
    }

    /// Builds a graph from arbitrary labels, renaming them densely in order of
    /// first appearance (row-major).
    pub fn from_labels<T: Eq + std::hash::Hash + Clone>(n: usize, labels: &[T]) -> Result<Self, GraphError> {
        let mut names = std::collections::HashMap::new();
        let colors = labels
            .iter()
            .map(|l| {
                let next = names.len() as u32;
                *names.entry(l.clone()).or_insert(next)
            })
            .collect();
        Self::new(n, colors)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn palette_size(&self) -> usize {
        self.palette_size
    }

    #[inline]
    pub fn color(&self, i: usize, j: usize) -> u32 {
        self.colors[i * self.n + j]
    }

    /// Row-major color matrix.
    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.colors.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// The graph obtained by moving point `i` to `perm[i]`.
    pub fn relabel(&self, perm: &[u32]) -> Self {
        let n = self.n;
        let mut colors = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                colors[perm[i] as usize * n + perm[j] as usize] = self.color(i, j);
            }
        }
        Self { n, colors, palette_size: self.palette_size }
    }

    /// Applies a color renaming; `map` must be a bijection of the palette.
    pub fn recolor(&self, map: &[u32]) -> Result<Self, GraphError> {
        Self::new(self.n, self.colors.iter().map(|&c| map[c as usize]).collect())
    }

    /// Number of pairs carrying each color.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.palette_size];
        for &c in &self.colors {
            sizes[c as usize] += 1;
        }
        sizes
    }
}

/// JSON form shared by graphs and configurations.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphJson {
    pub n: usize,
    pub colors: Vec<Vec<u32>>,
}

impl From<&ColoredGraph> for GraphJson {
    fn from(g: &ColoredGraph) -> Self {
        Self { n: g.n, colors: g.rows() }
    }
}

impl TryFrom<GraphJson> for ColoredGraph {
    type Error = GraphError;

    fn try_from(j: GraphJson) -> Result<Self, GraphError> {
        if j.colors.len() != j.n {
            return Err(GraphError::RowLength { row: j.colors.len(), expected: j.n, found: j.colors.len() });
        }
        Self::from_rows(&j.colors)
    }
}

/// Whether two colorings of the same pair set induce the same partition.
pub fn same_partition(a: &[u32], b: &[u32]) -> bool {
    refines(a, b) && refines(b, a)
}

/// Whether every class of `fine` lies inside a single class of `coarse`.
pub fn refines(fine: &[u32], coarse: &[u32]) -> bool {
    if fine.len() != coarse.len() {
        return false;
    }
    let mut image: std::collections::HashMap<u32, u32> = std::collections::HashMap::new();
    fine.iter().zip(coarse).all(|(&f, &c)| *image.entry(f).or_insert(c) == c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_gaps_in_palette() {
        assert_eq!(ColoredGraph::new(2, vec![0, 2, 2, 0]), Err(GraphError::EmptyColorClass(1)));
        assert!(matches!(ColoredGraph::new(2, vec![0, 1, 1]), Err(GraphError::Shape { .. })));
        assert_eq!(ColoredGraph::new(0, vec![]), Err(GraphError::Empty));
    }

    #[test]
    fn relabel_moves_colors_with_points() {
        let g = ColoredGraph::from_rows(&[vec![0, 1, 2], vec![1, 0, 1], vec![2, 1, 0]]).unwrap();
        let h = g.relabel(&[2, 0, 1]);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(h.color([2, 0, 1][i], [2, 0, 1][j]), g.color(i, j));
            }
        }
    }

    #[test]
    fn partition_comparisons() {
        assert!(same_partition(&[0, 1, 1, 2], &[5, 3, 3, 4]));
        assert!(refines(&[0, 1, 2, 3], &[0, 0, 1, 1]));
        assert!(!refines(&[0, 0, 1, 1], &[0, 1, 2, 3]));
    }
}
