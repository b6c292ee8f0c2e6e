//! Right coset actions and double cosets.

use rayon::prelude::*;
use serde::Serialize;

use super::{FiniteGroup, GroupError, Permutation, PermutationGroup};
use crate::config::CoherentConfiguration;

/// The action of a group on the right cosets `Hg` of a subgroup by right
/// multiplication. Coset 0 is `H` itself; the others are numbered by their
/// least element, which is also their representative.
#[derive(Debug, Clone)]
pub struct CosetAction {
    subgroup: Vec<usize>,
    representatives: Vec<usize>,
    coset_of: Vec<u32>,
    image_of: Vec<u32>,
    image: PermutationGroup,
    kernel: Vec<usize>,
    parent_order: usize,
}

impl CosetAction {
    pub fn new<G: FiniteGroup + Sync + ?Sized>(
        g: &G,
        subgroup: &[usize],
        degree_budget: usize,
    ) -> Result<Self, GroupError> {
        let order = g.order();
        if subgroup.is_empty() || !order.is_multiple_of(subgroup.len()) {
            return Err(GroupError::NotClosed);
        }
        let degree = order / subgroup.len();
        if degree > degree_budget {
            return Err(GroupError::DegreeBudget { degree, budget: degree_budget });
        }
        let mut coset_of = vec![u32::MAX; order];
        let mut representatives = Vec::with_capacity(degree);
        let starts = std::iter::once(g.identity()).chain(0..order);
        for x in starts {
            if coset_of[x] != u32::MAX {
                continue;
            }
            let c = representatives.len() as u32;
            for &h in subgroup {
                let y = g.mul(h, x);
                if coset_of[y] != u32::MAX {
                    return Err(GroupError::NotClosed);
                }
                coset_of[y] = c;
            }
            representatives.push(x);
        }
        // representative of coset 0 is its least element, not the identity
        representatives[0] = *subgroup.iter().min().unwrap();
        let perms: Vec<Vec<u32>> = (0..order)
            .into_par_iter()
            .map(|x| representatives.iter().map(|&r| coset_of[g.mul(r, x)]).collect())
            .collect();
        let kernel: Vec<usize> =
            (0..order).filter(|&x| perms[x].iter().enumerate().all(|(i, &j)| i as u32 == j)).collect();
        // elements with equal images form cosets of the kernel
        let mut image_of = vec![u32::MAX; order];
        let mut elements = Vec::with_capacity(order / kernel.len());
        for x in 0..order {
            if image_of[x] != u32::MAX {
                continue;
            }
            let id = elements.len() as u32;
            for &z in &kernel {
                image_of[g.mul(z, x)] = id;
            }
            elements.push(Permutation { images: perms[x].clone() });
        }
        drop(perms);
        let generators =
            g.generator_indices().into_iter().map(|s| elements[image_of[s] as usize].clone()).collect();
        let image = PermutationGroup::from_trusted(degree, generators, elements);
        Ok(Self { subgroup: subgroup.to_vec(), representatives, coset_of, image_of, image, kernel, parent_order: order })
    }

    pub fn degree(&self) -> usize {
        self.representatives.len()
    }

    pub fn subgroup(&self) -> &[usize] {
        &self.subgroup
    }

    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    /// Coset `Hx` containing the parent element `x`.
    pub fn coset_of(&self, x: usize) -> usize {
        self.coset_of[x] as usize
    }

    /// Index in [`Self::image`] of the permutation induced by `x`.
    pub fn image_of(&self, x: usize) -> usize {
        self.image_of[x] as usize
    }

    /// The induced permutation group on cosets.
    pub fn image(&self) -> &PermutationGroup {
        &self.image
    }

    /// Parent elements acting trivially.
    pub fn kernel(&self) -> &[usize] {
        &self.kernel
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    /// Images of parent index sets, sorted and deduplicated.
    pub fn image_set(&self, elems: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = elems.iter().map(|&x| self.image_of(x)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Double cosets `HxH`, each sorted, `H` first, the rest by least element.
pub fn double_cosets<G: FiniteGroup + ?Sized>(g: &G, h: &[usize]) -> Vec<Vec<usize>> {
    let mut which = vec![u32::MAX; g.order()];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for x in std::iter::once(g.identity()).chain(0..g.order()) {
        if which[x] != u32::MAX {
            continue;
        }
        let id = out.len() as u32;
        let mut d = Vec::new();
        for &a in h {
            let ax = g.mul(a, x);
            for &b in h {
                let y = g.mul(ax, b);
                if which[y] == u32::MAX {
                    which[y] = id;
                    d.push(y);
                }
            }
        }
        d.sort_unstable();
        out.push(d);
    }
    out
}

/// For a configuration built from a coset action with base point `{H}` = 0,
/// the sets `D_s = {g : (α, α^g) ∈ s}` indexed by color (empty for colors
/// not leaving the base fiber). Checks that each is a double coset and that
/// `n_s = |D_s| / |H|`.
pub fn relation_coset_bijection<G: FiniteGroup + ?Sized>(
    g: &G,
    action: &CosetAction,
    x: &CoherentConfiguration,
) -> Result<Vec<Vec<usize>>, GroupError> {
    if x.n() != action.degree() {
        return Err(GroupError::Inconsistent("configuration and action have different degrees".into()));
    }
    let mut d: Vec<Vec<usize>> = vec![Vec::new(); x.rank()];
    for e in 0..g.order() {
        d[x.color(0, action.coset_of(e)) as usize].push(e);
    }
    let h = action.subgroup();
    let doubles = double_cosets(g, h);
    for (s, ds) in d.iter().enumerate() {
        if ds.is_empty() {
            continue;
        }
        if ds.len() != x.valency(s as u32) as usize * h.len() {
            return Err(GroupError::Inconsistent(format!(
                "relation {s}: |D_s| = {} but n_s |H| = {}",
                ds.len(),
                x.valency(s as u32) as usize * h.len()
            )));
        }
        if !doubles.iter().any(|dc| dc == ds) {
            return Err(GroupError::Inconsistent(format!("D_{s} is not a double coset")));
        }
    }
    Ok(d)
}

/// A coset action summary for serialization.
#[derive(Debug, Clone, Serialize)]
pub struct CosetActionJson {
    pub degree: usize,
    pub kernel_order: usize,
    pub parent_order: usize,
    pub generators: Vec<Permutation>,
}

impl From<&CosetAction> for CosetActionJson {
    fn from(a: &CosetAction) -> Self {
        Self {
            degree: a.degree(),
            kernel_order: a.kernel.len(),
            parent_order: a.parent_order,
            generators: a.image.generators().to_vec(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{DEFAULT_DEGREE_BUDGET, DEFAULT_GROUP_BUDGET};

    fn sym(n: usize) -> PermutationGroup {
        let t = Permutation::from_cycles(n, &[&[0, 1]]).unwrap();
        PermutationGroup::closure(&[t, Permutation::cycle(n)], n, DEFAULT_GROUP_BUDGET).unwrap()
    }

    #[test]
    fn sym3_on_cosets_of_a_transposition() {
        let s3 = sym(3);
        let t = s3.index_of(&Permutation::from_cycles(3, &[&[0, 1]]).unwrap()).unwrap();
        let h = crate::perm::generate(&s3, &[t]);
        let a = CosetAction::new(&s3, &h, DEFAULT_DEGREE_BUDGET).unwrap();
        assert_eq!(a.degree(), 3);
        assert!(a.kernel().len() == 1);
        assert_eq!(a.image().order(), 6);
        let x = a.image().inv_config();
        assert_eq!(x.rank(), 2);
        let d = relation_coset_bijection(&s3, &a, &x).unwrap();
        assert_eq!(d[0], h);
        assert_eq!(double_cosets(&s3, &h).len(), 2);
    }

    #[test]
    fn stabilizer_of_base_coset_is_the_subgroup() {
        let s4 = sym(4);
        let v4: Vec<usize> = [vec![0, 1, 2, 3], vec![1, 0, 3, 2], vec![2, 3, 0, 1], vec![3, 2, 1, 0]]
            .into_iter()
            .map(|p| s4.index_of(&Permutation::new(p).unwrap()).unwrap())
            .collect();
        let mut v4s = v4.clone();
        v4s.sort();
        let a = CosetAction::new(&s4, &v4s, DEFAULT_DEGREE_BUDGET).unwrap();
        assert_eq!(a.degree(), 6);
        // V4 is normal, so it is the kernel
        assert_eq!(a.kernel(), v4s.as_slice());
        assert_eq!(a.image().order(), 6);
        let stab: Vec<usize> = (0..24).filter(|&x| a.coset_of(x) == 0).collect();
        assert_eq!(stab, v4s);
        assert!(matches!(
            CosetAction::new(&s4, &v4s, 5),
            Err(GroupError::DegreeBudget { degree: 6, budget: 5 })
        ));
    }
}
