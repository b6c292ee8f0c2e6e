//! Finite permutation groups, materialized as full element lists.
//!
//! Permutations act on the right: `α^{gh} = (α^g)^h`, and `g * h` means "first
//! `g`, then `h`". Conjugation is `h^g = g⁻¹ h g`.

mod algo;
mod character;
mod coset;

pub use algo::*;
pub use character::*;
pub use coset::*;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::{verify_coherence, CoherentConfiguration};
use crate::graph::ColoredGraph;

/// Default cap on group orders.
pub const DEFAULT_GROUP_BUDGET: usize = 1_000_000;
/// Default cap on the degree of coset actions.
pub const DEFAULT_DEGREE_BUDGET: usize = 5000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group order exceeds the budget of {0} elements")]
    Budget(usize),
    #[error("degree {degree} exceeds the budget of {budget}")]
    DegreeBudget { degree: usize, budget: usize },
    #[error("not a permutation of 0..{0}")]
    NotPermutation(usize),
    #[error("generators have mismatched degrees")]
    DegreeMismatch,
    #[error("{0} does not divide the group order")]
    PrimeDoesNotDivide(u64),
    #[error("element set is not closed under multiplication")]
    NotClosed,
    #[error("fusion hypothesis fails: {a} and {b} are conjugate in G but not in N")]
    Fusion { a: usize, b: usize },
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

/// A bijection of `{0, …, n−1}`, stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    images: Vec<u32>,
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = GroupError;

    fn try_from(images: Vec<u32>) -> Result<Self, GroupError> {
        Self::new(images)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i as usize >= n || std::mem::replace(&mut seen[i as usize], true) {
                return Err(GroupError::NotPermutation(n));
            }
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self { images: (0..n as u32).collect() }
    }

    /// The cycle `(0 1 … n−1)`.
    pub fn cycle(n: usize) -> Self {
        Self { images: (0..n as u32).map(|i| (i + 1) % n as u32).collect() }
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Result<Self, GroupError> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        for cyc in cycles {
            for (k, &a) in cyc.iter().enumerate() {
                let b = cyc[(k + 1) % cyc.len()];
                if a as usize >= n {
                    return Err(GroupError::NotPermutation(n));
                }
                images[a as usize] = b;
            }
        }
        Self::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `self` then `other`.
    pub fn then(&self, other: &Self) -> Self {
        Self { images: self.images.iter().map(|&i| other.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Self { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// `Fix(g)`.
    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.apply(i) == i).collect()
    }
}

/// Index-based group operations shared by permutation and matrix groups.
pub trait FiniteGroup {
    fn order(&self) -> usize;
    fn identity(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;
    /// Indices of a generating set.
    fn generator_indices(&self) -> Vec<usize>;

    /// `a^g = g⁻¹ a g`.
    fn conj(&self, a: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), a), g)
    }

    fn element_order(&self, a: usize) -> usize {
        let e = self.identity();
        let mut x = a;
        let mut k = 1;
        while x != e {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }
}

/// A permutation group with every element listed.
#[derive(Debug, Clone)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    identity: usize,
    inverses: Vec<u32>,
    // points whose images separate all elements
    base: Vec<usize>,
    lookup: HashMap<Vec<u32>, u32>,
}

impl PermutationGroup {
    /// `⟨generators⟩` by breadth-first multiplication.
    pub fn closure(generators: &[Permutation], degree: usize, budget: usize) -> Result<Self, GroupError> {
        if generators.iter().any(|g| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch);
        }
        let mut elements = vec![Permutation::identity(degree)];
        let mut seen: std::collections::HashSet<Permutation> = [elements[0].clone()].into();
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head].clone();
            head += 1;
            for g in generators {
                let y = x.then(g);
                if !seen.contains(&y) {
                    if elements.len() >= budget {
                        return Err(GroupError::Budget(budget));
                    }
                    seen.insert(y.clone());
                    elements.push(y);
                }
            }
        }
        Ok(Self::assemble(degree, generators.to_vec(), elements))
    }

    /// Wraps a complete element list (first occurrences kept in order),
    /// checking closure.
    pub fn from_elements(degree: usize, elements: Vec<Permutation>) -> Result<Self, GroupError> {
        if elements.iter().any(|g| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch);
        }
        let keep: Vec<bool> = {
            let mut seen = std::collections::HashSet::new();
            elements.iter().map(|e| seen.insert(e.images.as_slice())).collect()
        };
        let unique: Vec<Permutation> =
            elements.into_iter().zip(keep).filter_map(|(e, k)| k.then_some(e)).collect();
        if !unique.iter().any(Permutation::is_identity) {
            return Err(GroupError::NotClosed);
        }
        let mut group = Self::index(degree, Vec::new(), unique);
        group.generators = small_generating_set(&group).ok_or(GroupError::NotClosed)?;
        group.fill_inverses();
        Ok(group)
    }

    /// Trusts that `elements` is exactly `⟨generators⟩`.
    pub(crate) fn from_trusted(degree: usize, generators: Vec<Permutation>, elements: Vec<Permutation>) -> Self {
        Self::assemble(degree, generators, elements)
    }

    fn assemble(degree: usize, generators: Vec<Permutation>, elements: Vec<Permutation>) -> Self {
        let mut group = Self::index(degree, generators, elements);
        group.fill_inverses();
        group
    }

    fn index(degree: usize, generators: Vec<Permutation>, elements: Vec<Permutation>) -> Self {
        let identity = elements.iter().position(Permutation::is_identity).expect("identity present");
        let base = separating_points(&elements, degree);
        let lookup: HashMap<Vec<u32>, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (base.iter().map(|&b| e.images[b]).collect(), i as u32))
            .collect();
        Self { degree, generators, elements, identity, inverses: Vec::new(), base, lookup }
    }

    fn fill_inverses(&mut self) {
        self.inverses = (0..self.elements.len())
            .map(|i| self.index_of(&self.elements[i].inverse()).expect("closed under inverses") as u32)
            .collect();
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    /// Index of a permutation in the element list, if it belongs to the group.
    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        let key: Vec<u32> = self.base.iter().map(|&b| p.images[b]).collect();
        let &i = self.lookup.get(&key)?;
        (self.elements[i as usize] == *p).then_some(i as usize)
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index_of(p).is_some()
    }

    /// Orbits on points, each sorted, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.degree).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        for g in &self.generators {
            for a in 0..self.degree {
                let (x, y) = (find(&mut parent, a), find(&mut parent, g.apply(a)));
                if x != y {
                    parent[x.max(y)] = x.min(y);
                }
            }
        }
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        let mut slot: HashMap<usize, usize> = HashMap::new();
        for a in 0..self.degree {
            let r = find(&mut parent, a);
            let k = *slot.entry(r).or_insert_with(|| {
                orbits.push(Vec::new());
                orbits.len() - 1
            });
            orbits[k].push(a);
        }
        orbits
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    /// Indices of the elements fixing `alpha`.
    pub fn point_stabilizer(&self, alpha: usize) -> Vec<usize> {
        (0..self.order()).filter(|&i| self.elements[i].apply(alpha) == alpha).collect()
    }

    /// The subgroup formed by the listed elements, as its own permutation group.
    pub fn subgroup(&self, indices: &[usize]) -> Result<PermutationGroup, GroupError> {
        Self::from_elements(self.degree, indices.iter().map(|&i| self.elements[i].clone()).collect())
    }

    /// `inv(G, Ω)`: the configuration whose basis relations are the orbits of
    /// `G` on `Ω × Ω`.
    pub fn inv_config(&self) -> CoherentConfiguration {
        let n = self.degree;
        let mut parent: Vec<u32> = (0..(n * n) as u32).collect();
        fn find(parent: &mut [u32], x: u32) -> u32 {
            let mut r = x;
            while parent[r as usize] != r {
                r = parent[r as usize];
            }
            let mut y = x;
            while parent[y as usize] != r {
                let next = parent[y as usize];
                parent[y as usize] = r;
                y = next;
            }
            r
        }
        for g in &self.generators {
            for a in 0..n {
                for b in 0..n {
                    let x = find(&mut parent, (a * n + b) as u32);
                    let y = find(&mut parent, (g.apply(a) * n + g.apply(b)) as u32);
                    if x != y {
                        parent[x.max(y) as usize] = x.min(y);
                    }
                }
            }
        }
        let labels: Vec<u32> = (0..(n * n) as u32).map(|p| find(&mut parent, p)).collect();
        let graph = ColoredGraph::from_labels(n, &labels).expect("nonempty");
        let x = verify_coherence(&graph).expect("orbital configurations are coherent");
        debug_assert_eq!(x.is_homogeneous(), self.is_transitive());
        x
    }

    pub fn to_json(&self) -> GroupJson {
        GroupJson { degree: self.degree, generators: self.generators.clone() }
    }

    /// `Fix(g)` for the element with index `x`.
    pub fn fix_set(&self, x: usize) -> Vec<usize> {
        self.elements[x].fixed_points()
    }

    /// `χ(g) = |Fix(g)|`.
    pub fn permutation_character(&self, x: usize) -> usize {
        let e = &self.elements[x];
        (0..self.degree).filter(|&i| e.apply(i) == i).count()
    }

    /// Largest number of points fixed by a non-identity element.
    pub fn fixity(&self) -> usize {
        (0..self.order()).filter(|&i| i != self.identity).map(|i| self.permutation_character(i)).max().unwrap_or(0)
    }
}

impl FiniteGroup for PermutationGroup {
    fn order(&self) -> usize {
        self.elements.len()
    }

    fn identity(&self) -> usize {
        self.identity
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let (x, y) = (&self.elements[a], &self.elements[b]);
        let key: Vec<u32> = self.base.iter().map(|&p| y.images[x.images[p] as usize]).collect();
        self.lookup[&key] as usize
    }

    fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    fn generator_indices(&self) -> Vec<usize> {
        self.generators.iter().map(|g| self.index_of(g).expect("generators are elements")).collect()
    }
}

/// Greedy point list such that distinct elements differ on some listed point.
fn separating_points(elements: &[Permutation], degree: usize) -> Vec<usize> {
    let mut base = Vec::new();
    let mut classes: Vec<Vec<usize>> = vec![(0..elements.len()).collect()];
    for p in 0..degree {
        if classes.iter().all(|c| c.len() == 1) {
            break;
        }
        let mut split = false;
        let mut next = Vec::new();
        for class in classes {
            let mut groups: HashMap<u32, Vec<usize>> = HashMap::new();
            for &e in &class {
                groups.entry(elements[e].images[p]).or_default().push(e);
            }
            split |= groups.len() > 1;
            let mut gs: Vec<Vec<usize>> = groups.into_values().collect();
            gs.sort();
            next.extend(gs);
        }
        classes = next;
        if split {
            base.push(p);
        }
    }
    base
}

/// A short generating list: elements in order that are not yet generated.
/// `None` when the listed elements are not closed under multiplication.
fn small_generating_set(group: &PermutationGroup) -> Option<Vec<Permutation>> {
    let order = group.elements.len();
    let mut gens: Vec<usize> = Vec::new();
    let mut in_span = vec![false; order];
    in_span[group.identity] = true;
    let mut span = vec![group.identity];
    for e in 0..order {
        if span.len() == order {
            break;
        }
        if in_span[e] {
            continue;
        }
        gens.push(e);
        let mut frontier = span.clone();
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = group.index_of(&group.elements[x].then(&group.elements[g]))?;
                if !in_span[y] {
                    in_span[y] = true;
                    span.push(y);
                    frontier.push(y);
                }
            }
        }
    }
    // every element is a product of generators and the span is closed
    Some(gens.into_iter().map(|g| group.elements[g].clone()).collect())
}

/// JSON form `{"degree": n, "generators": [[…], …]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupJson {
    pub degree: usize,
    pub generators: Vec<Permutation>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> PermutationGroup {
        let t = Permutation::from_cycles(n, &[&[0, 1]]).unwrap();
        PermutationGroup::closure(&[t, Permutation::cycle(n)], n, DEFAULT_GROUP_BUDGET).unwrap()
    }

    #[test]
    fn closure_orders() {
        let trivial = PermutationGroup::closure(&[Permutation::identity(4)], 4, 10).unwrap();
        assert_eq!(trivial.order(), 1);
        let c5 = PermutationGroup::closure(&[Permutation::cycle(5)], 5, 10).unwrap();
        assert_eq!(c5.order(), 5);
        assert_eq!(sym(4).order(), 24);
        assert_eq!(
            PermutationGroup::closure(&[Permutation::cycle(5)], 5, 3).unwrap_err(),
            GroupError::Budget(3)
        );
    }

    #[test]
    fn multiplication_and_inverses_agree_with_composition() {
        let g = sym(4);
        for a in 0..g.order() {
            assert_eq!(g.mul(a, g.inv(a)), g.identity());
            for b in (0..g.order()).step_by(5) {
                assert_eq!(g.element(g.mul(a, b)), &g.element(a).then(g.element(b)));
            }
        }
    }

    #[test]
    fn regular_cyclic_configuration_is_thin() {
        let c5 = PermutationGroup::closure(&[Permutation::cycle(5)], 5, 10).unwrap();
        let x = c5.inv_config();
        assert_eq!(x.rank(), 5);
        assert!(x.valencies().iter().all(|&v| v == 1));
        assert_eq!(c5.point_stabilizer(3), vec![c5.identity()]);
    }

    #[test]
    fn two_transitive_gives_trivial_configuration() {
        assert_eq!(sym(3).inv_config().rank(), 2);
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(serde_json::from_str::<Permutation>("[1,0,2]").is_ok());
        assert!(serde_json::from_str::<Permutation>("[1,1]").is_err());
    }

    #[test]
    fn from_elements_detects_non_closure() {
        let t = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let c = Permutation::cycle(3);
        assert_eq!(
            PermutationGroup::from_elements(3, vec![Permutation::identity(3), t, c]).unwrap_err(),
            GroupError::NotClosed
        );
    }
}
