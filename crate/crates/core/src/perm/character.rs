//! Permutation characters and the fixed-point formulas for coset actions.

use serde::Serialize;

use super::algo::{centralizer, class_map, intersect};
use super::{CosetAction, FiniteGroup, GroupError, PermutationGroup};

/// Cosets fixed by the parent element `x`.
pub fn fix_set<G: FiniteGroup + ?Sized>(g: &G, action: &CosetAction, x: usize) -> Vec<usize> {
    (0..action.degree()).filter(|&c| action.coset_of(g.mul(action.representatives()[c], x)) == c).collect()
}

/// `χ(x) = |Fix(x)|`.
pub fn permutation_character<G: FiniteGroup + ?Sized>(g: &G, action: &CosetAction, x: usize) -> usize {
    fix_set(g, action, x).len()
}

/// Result of the class-counting formula for `χ(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChiFormula {
    pub value: usize,
    /// `Fix(x)` as the cosets of `N C g₀`, sorted.
    pub fix: Vec<usize>,
    /// `h₀ ∈ H` and `g₀` with `x = g₀⁻¹ h₀ g₀`, when `x^G` meets `H`.
    pub witness: Option<(usize, usize)>,
}

/// Checks that elements of `H` conjugate in `G` are conjugate in `N`.
pub fn check_fusion<G: FiniteGroup + ?Sized>(g: &G, h: &[usize], n: &[usize], classes: &[u32]) -> Result<(), GroupError> {
    for (i, &a) in h.iter().enumerate() {
        let mut orbit: Vec<usize> = n.iter().map(|&y| g.conj(a, y)).collect();
        orbit.sort_unstable();
        for &b in &h[i + 1..] {
            if classes[a] == classes[b] && orbit.binary_search(&b).is_err() {
                return Err(GroupError::Fusion { a, b });
            }
        }
    }
    Ok(())
}

/// `χ(x) = |N : C ∩ N| · |Ω| / |x^G|` with `C = C_G(h₀)`, for `H ≤ N ≤ N_G(H)`
/// satisfying the fusion hypothesis, which is verified first.
pub fn chi_via_formula<G: FiniteGroup + ?Sized>(
    g: &G,
    action: &CosetAction,
    x: usize,
    n: &[usize],
) -> Result<ChiFormula, GroupError> {
    let h = action.subgroup();
    let classes = class_map(g);
    check_fusion(g, h, n, &classes)?;
    let class_size = classes.iter().filter(|&&c| c == classes[x]).count();
    let witness = h.iter().find(|&&h0| classes[h0] == classes[x]).map(|&h0| {
        let g0 = (0..g.order()).find(|&y| g.conj(h0, y) == x).expect("same class");
        (h0, g0)
    });
    let Some((h0, g0)) = witness else {
        return Ok(ChiFormula { value: 0, fix: Vec::new(), witness: None });
    };
    let c = centralizer(g, h0);
    let cn = intersect(&c, n).len();
    let value = n.len() / cn * action.degree() / class_size;
    let mut fix: Vec<usize> = n
        .iter()
        .flat_map(|&a| c.iter().map(move |&b| (a, b)))
        .map(|(a, b)| action.coset_of(g.mul(g.mul(a, b), g0)))
        .collect();
    fix.sort_unstable();
    fix.dedup();
    Ok(ChiFormula { value, fix, witness })
}

/// The three quantities of the fixed-point bound for a transitive group with
/// `H` the stabilizer of point 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FixedPointBound {
    /// `max_{x ∉ H} |⋃_{h ∈ H} Fix(hx)|`.
    pub union_max: usize,
    /// `max_{x ∉ H} Σ_{h ∈ H} χ(hx)`.
    pub sum_max: usize,
    /// `fix(G) · |H|`.
    pub fixity_bound: usize,
}

pub fn fixed_point_bound(g: &PermutationGroup) -> FixedPointBound {
    let n = g.degree();
    let h = g.point_stabilizer(0);
    let mut union_max = 0;
    let mut sum_max = 0;
    let mut mark = vec![0usize; n];
    for beta in 1..n {
        // the coset Hx of elements moving 0 to beta
        let Some(x) = (0..g.order()).find(|&x| g.element(x).apply(0) == beta) else { continue };
        let mut union = 0;
        let mut sum = 0;
        for &hh in &h {
            let y = g.element(g.mul(hh, x));
            for (p, m) in mark.iter_mut().enumerate() {
                if y.apply(p) == p {
                    sum += 1;
                    if *m != beta {
                        *m = beta;
                        union += 1;
                    }
                }
            }
        }
        union_max = union_max.max(union);
        sum_max = sum_max.max(sum);
    }
    FixedPointBound { union_max, sum_max, fixity_bound: g.fixity() * h.len() }
}
