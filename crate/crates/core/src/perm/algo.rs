//! Enumeration-based algorithms over any [`FiniteGroup`]. Subgroups and other
//! element sets are sorted lists of element indices.

use super::{FiniteGroup, GroupError};

/// `⟨gens⟩` as a sorted index list.
pub fn generate<G: FiniteGroup + ?Sized>(g: &G, gens: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; g.order()];
    let e = g.identity();
    seen[e] = true;
    let mut out = vec![e];
    let mut head = 0;
    while head < out.len() {
        let x = out[head];
        head += 1;
        for &s in gens {
            let y = g.mul(x, s);
            if !seen[y] {
                seen[y] = true;
                out.push(y);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Whether the index set is a subgroup.
pub fn is_subgroup<G: FiniteGroup + ?Sized>(g: &G, elems: &[usize]) -> bool {
    let mut member = vec![false; g.order()];
    elems.iter().for_each(|&x| member[x] = true);
    member[g.identity()] && elems.iter().all(|&x| elems.iter().all(|&y| member[g.mul(x, y)]))
}

/// A short generating list of the subgroup `elems`, greedily in index order.
pub fn subgroup_generators<G: FiniteGroup + ?Sized>(g: &G, elems: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = vec![g.identity()];
    let mut in_span = vec![false; g.order()];
    in_span[g.identity()] = true;
    for &x in elems {
        if span.len() == elems.len() {
            break;
        }
        if in_span[x] {
            continue;
        }
        gens.push(x);
        span = generate(g, &gens);
        span.iter().for_each(|&y| in_span[y] = true);
    }
    gens
}

/// Conjugacy class index of every element; classes are numbered by their
/// least element.
pub fn class_map<G: FiniteGroup + ?Sized>(g: &G) -> Vec<u32> {
    let gens = g.generator_indices();
    let mut class = vec![u32::MAX; g.order()];
    let mut next = 0;
    for a in 0..g.order() {
        if class[a] != u32::MAX {
            continue;
        }
        class[a] = next;
        let mut stack = vec![a];
        while let Some(x) = stack.pop() {
            for &s in &gens {
                let y = g.conj(x, s);
                if class[y] == u32::MAX {
                    class[y] = next;
                    stack.push(y);
                }
            }
        }
        next += 1;
    }
    class
}

/// Conjugacy classes, each sorted, ordered by least element.
pub fn conjugacy_classes<G: FiniteGroup + ?Sized>(g: &G) -> Vec<Vec<usize>> {
    let map = class_map(g);
    let count = map.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
    let mut classes = vec![Vec::new(); count];
    for (x, &c) in map.iter().enumerate() {
        classes[c as usize].push(x);
    }
    classes
}

/// `x^G`.
pub fn conjugacy_class<G: FiniteGroup + ?Sized>(g: &G, x: usize) -> Vec<usize> {
    let mut class: Vec<usize> = (0..g.order()).map(|y| g.conj(x, y)).collect();
    class.sort_unstable();
    class.dedup();
    class
}

/// `C_G(x)`.
pub fn centralizer<G: FiniteGroup + ?Sized>(g: &G, x: usize) -> Vec<usize> {
    (0..g.order()).filter(|&y| g.mul(x, y) == g.mul(y, x)).collect()
}

/// `N_G(K)` for a subgroup `K`.
pub fn normalizer<G: FiniteGroup + ?Sized>(g: &G, k: &[usize]) -> Vec<usize> {
    let mut member = vec![false; g.order()];
    k.iter().for_each(|&x| member[x] = true);
    let gens = subgroup_generators(g, k);
    (0..g.order()).filter(|&y| gens.iter().all(|&s| member[g.conj(s, y)])).collect()
}

/// `K^y`.
pub fn conjugate_subgroup<G: FiniteGroup + ?Sized>(g: &G, k: &[usize], y: usize) -> Vec<usize> {
    let mut out: Vec<usize> = k.iter().map(|&x| g.conj(x, y)).collect();
    out.sort_unstable();
    out
}

/// `A ∩ B` for sorted index lists.
pub fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut member = std::collections::HashSet::new();
    member.extend(b.iter().copied());
    a.iter().copied().filter(|x| member.contains(x)).collect()
}

/// Whether every nontrivial conjugacy class generates the whole group. The
/// trivial group is not simple.
pub fn is_simple<G: FiniteGroup + ?Sized>(g: &G) -> bool {
    if g.order() == 1 {
        return false;
    }
    let e = g.identity();
    conjugacy_classes(g)
        .iter()
        .filter(|c| !c.contains(&e))
        .all(|c| generate(g, c).len() == g.order())
}

pub fn element_orders<G: FiniteGroup + ?Sized>(g: &G) -> Vec<usize> {
    (0..g.order()).map(|x| g.element_order(x)).collect()
}

/// Largest power of `p` dividing `m`.
pub fn p_part(m: usize, p: usize) -> usize {
    let mut part = 1;
    let mut m = m;
    while m.is_multiple_of(p) {
        m /= p;
        part *= p;
    }
    part
}

/// A Sylow `p`-subgroup, grown from a cyclic subgroup of largest `p`-power
/// order by adjoining `p`-elements of the normalizer.
pub fn sylow_subgroup<G: FiniteGroup + ?Sized>(g: &G, p: usize) -> Result<Vec<usize>, GroupError> {
    let target = p_part(g.order(), p);
    if target == 1 {
        return Err(GroupError::PrimeDoesNotDivide(p as u64));
    }
    let orders = element_orders(g);
    let is_p_power = |m: usize| p_part(m, p) == m;
    let start = (0..g.order())
        .filter(|&x| is_p_power(orders[x]))
        .max_by_key(|&x| (orders[x], std::cmp::Reverse(x)))
        .expect("identity is a p-element");
    let mut current = generate(g, &[start]);
    while current.len() < target {
        let norm = normalizer(g, &current);
        let mut member = vec![false; g.order()];
        current.iter().for_each(|&x| member[x] = true);
        // p divides |N(P):P| whenever P is not Sylow
        let extra = norm.into_iter().find(|&y| !member[y] && is_p_power(orders[y])).ok_or_else(|| {
            GroupError::Inconsistent(format!("no p-element normalizes a p-subgroup of order {}", current.len()))
        })?;
        let mut gens = subgroup_generators(g, &current);
        gens.push(extra);
        current = generate(g, &gens);
    }
    debug_assert_eq!(current.len(), target);
    Ok(current)
}

/// All conjugates of a subgroup, deduplicated, in order of first appearance.
pub fn conjugates<G: FiniteGroup + ?Sized>(g: &G, k: &[usize]) -> Vec<Vec<usize>> {
    let norm_len = normalizer(g, k).len();
    let count = g.order() / norm_len;
    let mut out: Vec<Vec<usize>> = Vec::with_capacity(count);
    for y in 0..g.order() {
        if out.len() == count {
            break;
        }
        let c = conjugate_subgroup(g, k, y);
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}
