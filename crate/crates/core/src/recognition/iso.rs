//! `Iso(X, X', φ)` by individualization and refinement.
//!
//! The two sides share a color namespace through `φ` and are refined in
//! lockstep. At each node the first smallest non-singleton fiber on the left
//! gives a point `a`; the search branches over the points `b` of the matching
//! fiber on the right, individualizing `a` and `b` with the same fresh color.
//! Once the left side is discrete the bijection is forced.
//!
//! `Aut(x)` is generated along the leftmost path with orbit pruning, and
//! `Iso(X, X', φ)` is a coset of it, so the tree is never enumerated in full.

use super::RecognitionError;
use crate::config::CoherentConfiguration;
use crate::perm::{Permutation, PermutationGroup, DEFAULT_GROUP_BUDGET};
use crate::wl::refine_lockstep;

/// Limits on the search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IsoBudget {
    /// Points individualized along a branch before giving up.
    pub max_depth: usize,
    pub max_points: usize,
}

impl Default for IsoBudget {
    fn default() -> Self {
        Self { max_depth: 3, max_points: 120 }
    }
}

/// One node of the search tree.
#[derive(Debug, Clone)]
pub struct IsoSearchNode {
    /// Individualized pairs `(a, b)`, left point first.
    pub pairs: Vec<(usize, usize)>,
    /// Refined left and right colorings over the shared palette.
    pub left: Vec<u32>,
    pub right: Vec<u32>,
}

impl IsoSearchNode {
    /// The partial point map given by the individualized pairs.
    pub fn partial_map(&self) -> Vec<(usize, usize)> {
        self.pairs.clone()
    }
}

/// Checks that `phi` is a color bijection preserving every intersection number.
pub fn check_algebraic_isomorphism(
    x: &CoherentConfiguration,
    x2: &CoherentConfiguration,
    phi: &[u32],
) -> Result<(), RecognitionError> {
    if x.n() != x2.n() {
        return Err(RecognitionError::PointMismatch(x.n(), x2.n()));
    }
    if phi.len() != x.rank() || x.rank() != x2.rank() {
        return Err(RecognitionError::NotAlgebraicIsomorphism(format!(
            "ranks {} and {}, map of length {}",
            x.rank(),
            x2.rank(),
            phi.len()
        )));
    }
    let mut hit = vec![false; x2.rank()];
    for &c in phi {
        if c as usize >= hit.len() || std::mem::replace(&mut hit[c as usize], true) {
            return Err(RecognitionError::NotAlgebraicIsomorphism(format!("color {c} is hit twice or out of range")));
        }
    }
    if !x.intersection_tensor().is_preserved_by(&x2.intersection_tensor(), phi) {
        return Err(RecognitionError::NotAlgebraicIsomorphism("intersection numbers differ".into()));
    }
    Ok(())
}

/// Whether `f` maps every relation `s` of `x` onto `φ(s)`.
pub fn respects(x: &CoherentConfiguration, x2: &CoherentConfiguration, phi: &[u32], f: &Permutation) -> bool {
    let n = x.n();
    (0..n).all(|i| (0..n).all(|j| phi[x.color(i, j) as usize] == x2.color(f.apply(i), f.apply(j))))
}

/// All bijections `f` with `s^f = φ(s)` for every relation `s`, sorted by image
/// list.
///
/// One isomorphism `f₀` is found by depth-first search and the result is the
/// coset `Aut(x) f₀`.
pub fn iso_set(
    x: &CoherentConfiguration,
    x2: &CoherentConfiguration,
    phi: &[u32],
    budget: &IsoBudget,
) -> Result<Vec<Permutation>, RecognitionError> {
    check_algebraic_isomorphism(x, x2, phi)?;
    check_points(x.n(), budget)?;
    let mut inverse = vec![0u32; phi.len()];
    for (c, &d) in phi.iter().enumerate() {
        inverse[d as usize] = c as u32;
    }
    let root = IsoSearchNode {
        pairs: Vec::new(),
        left: x.colors().to_vec(),
        right: x2.colors().iter().map(|&c| inverse[c as usize]).collect(),
    };
    let Some(f0) = first_leaf(root, x.n(), budget, &|f| respects(x, x2, phi, f))? else {
        return Ok(Vec::new());
    };
    let aut = aut_group(x, budget)?;
    let mut out: Vec<Permutation> = aut.elements().iter().map(|a| a.then(&f0)).collect();
    out.sort_unstable_by(|a, b| a.images().cmp(b.images()));
    Ok(out)
}

fn check_points(n: usize, budget: &IsoBudget) -> Result<(), RecognitionError> {
    if n > budget.max_points {
        return Err(RecognitionError::Budget {
            stage: "iso_set".into(),
            detail: format!("{n} points, budget {}", budget.max_points),
        });
    }
    Ok(())
}

/// A refined node: the shared palette size and the fiber to branch on, if any.
struct Refined {
    left: Vec<u32>,
    right: Vec<u32>,
    palette: u32,
    fiber: Option<u32>,
}

fn refine(node: IsoSearchNode, n: usize) -> Option<Refined> {
    let refined = refine_lockstep(vec![node.left, node.right], n).ok()?;
    let mut it = refined.colorings.into_iter();
    let (left, right) = (it.next().unwrap(), it.next().unwrap());
    let palette = left.iter().max().map_or(0, |&m| m + 1);
    let mut size = vec![0usize; palette as usize];
    for p in 0..n {
        size[left[p * n + p] as usize] += 1;
    }
    let fiber = (0..palette).filter(|&c| size[c as usize] > 1).min_by_key(|&c| (size[c as usize], c));
    Some(Refined { left, right, palette, fiber })
}

impl Refined {
    fn leaf(&self, n: usize) -> Result<Permutation, RecognitionError> {
        // discrete: the loop colors determine the bijection
        let mut where_right = vec![0u32; self.palette as usize];
        for p in 0..n {
            where_right[self.right[p * n + p] as usize] = p as u32;
        }
        Ok(Permutation::new((0..n).map(|p| where_right[self.left[p * n + p] as usize]).collect())?)
    }

    fn points(coloring: &[u32], fiber: u32, n: usize) -> impl Iterator<Item = usize> + '_ {
        (0..n).filter(move |&p| coloring[p * n + p] == fiber)
    }

    fn child(&self, pairs: &[(usize, usize)], a: usize, b: usize, n: usize) -> IsoSearchNode {
        let mut left = self.left.clone();
        let mut right = self.right.clone();
        left[a * n + a] = self.palette;
        right[b * n + b] = self.palette;
        let mut pairs = pairs.to_vec();
        pairs.push((a, b));
        IsoSearchNode { pairs, left, right }
    }
}

fn too_deep(depth: usize) -> RecognitionError {
    RecognitionError::Budget {
        stage: "iso_set".into(),
        detail: format!("refinement not discrete after individualizing {depth} points"),
    }
}

/// The first leaf below `node` accepted by `accept`.
fn first_leaf(
    node: IsoSearchNode,
    n: usize,
    budget: &IsoBudget,
    accept: &dyn Fn(&Permutation) -> bool,
) -> Result<Option<Permutation>, RecognitionError> {
    let depth = node.pairs.len();
    let pairs = node.pairs.clone();
    let Some(r) = refine(node, n) else { return Ok(None) };
    let Some(fiber) = r.fiber else {
        let f = r.leaf(n)?;
        return Ok(accept(&f).then_some(f));
    };
    if depth >= budget.max_depth {
        return Err(too_deep(depth));
    }
    let a = Refined::points(&r.left, fiber, n).next().unwrap();
    for b in Refined::points(&r.right, fiber, n) {
        if let Some(f) = first_leaf(r.child(&pairs, a, b, n), n, budget, accept)? {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

/// Generators of the pointwise stabilizer of the individualized points of
/// `node`, which lies on the leftmost path (both sides equal).
///
/// The generators found below the leftmost child fix `a` as well; a further
/// candidate `b` is searched only when it is outside the orbit of `a` under
/// what has been found so far.
fn stabilizer_generators(
    x: &CoherentConfiguration,
    node: IsoSearchNode,
    budget: &IsoBudget,
) -> Result<Vec<Permutation>, RecognitionError> {
    let n = x.n();
    let depth = node.pairs.len();
    let pairs = node.pairs.clone();
    let r = refine(node, n).expect("a coloring is compatible with itself");
    let Some(fiber) = r.fiber else { return Ok(Vec::new()) };
    if depth >= budget.max_depth {
        return Err(too_deep(depth));
    }
    let id: Vec<u32> = (0..x.rank() as u32).collect();
    let a = Refined::points(&r.left, fiber, n).next().unwrap();
    let mut gens = stabilizer_generators(x, r.child(&pairs, a, a, n), budget)?;
    let mut orbit = orbit_of(a, &gens, n);
    for b in Refined::points(&r.right, fiber, n) {
        if orbit[b] {
            continue;
        }
        if let Some(g) = first_leaf(r.child(&pairs, a, b, n), n, budget, &|f| respects(x, x, &id, f))? {
            gens.push(g);
            orbit = orbit_of(a, &gens, n);
        }
    }
    Ok(gens)
}

fn orbit_of(a: usize, gens: &[Permutation], n: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[a] = true;
    let mut stack = vec![a];
    while let Some(p) = stack.pop() {
        for g in gens {
            let q = g.apply(p);
            if !seen[q] {
                seen[q] = true;
                stack.push(q);
            }
        }
    }
    seen
}

/// `Aut(x)`, the closure of a strong generating set found along the leftmost
/// path of the search tree.
pub fn aut_group(x: &CoherentConfiguration, budget: &IsoBudget) -> Result<PermutationGroup, RecognitionError> {
    check_points(x.n(), budget)?;
    let root = IsoSearchNode { pairs: Vec::new(), left: x.colors().to_vec(), right: x.colors().to_vec() };
    let gens = stabilizer_generators(x, root, budget)?;
    Ok(PermutationGroup::closure(&gens, x.n(), DEFAULT_GROUP_BUDGET)?)
}
