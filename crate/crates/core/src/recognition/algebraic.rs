//! Algebraic isomorphisms by backtracking over color bijections.
//! Exponential in the rank; meant as an oracle for small configurations.

use crate::config::CoherentConfiguration;
use crate::tensor::IntersectionTensor;

/// Every color bijection `x → x2` preserving the intersection numbers, in
/// lexicographic order. Stops after `limit` maps.
pub fn algebraic_isomorphisms(x: &CoherentConfiguration, x2: &CoherentConfiguration, limit: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if x.n() != x2.n() || x.rank() != x2.rank() {
        return out;
    }
    let t = x.intersection_tensor();
    let t2 = x2.intersection_tensor();
    let mut phi = Vec::with_capacity(x.rank());
    let mut used = vec![false; x.rank()];
    extend(x, x2, &t, &t2, &mut phi, &mut used, limit, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn extend(
    x: &CoherentConfiguration,
    x2: &CoherentConfiguration,
    t: &IntersectionTensor,
    t2: &IntersectionTensor,
    phi: &mut Vec<u32>,
    used: &mut [bool],
    limit: usize,
    out: &mut Vec<Vec<u32>>,
) {
    if out.len() >= limit {
        return;
    }
    let c = phi.len();
    if c == x.rank() {
        out.push(phi.clone());
        return;
    }
    let cu = c as u32;
    for d in 0..x2.rank() as u32 {
        if used[d as usize]
            || x.valency(cu) != x2.valency(d)
            || x.is_diagonal(cu) != x2.is_diagonal(d)
        {
            continue;
        }
        let tc = x.transpose(cu);
        if tc < cu && phi[tc as usize] != x2.transpose(d) {
            continue;
        }
        if tc == cu && x2.transpose(d) != d {
            continue;
        }
        phi.push(d);
        if consistent(t, t2, phi) {
            used[d as usize] = true;
            extend(x, x2, t, t2, phi, used, limit, out);
            used[d as usize] = false;
        }
        phi.pop();
    }
}

// checks every triple involving the newest color
fn consistent(t: &IntersectionTensor, t2: &IntersectionTensor, phi: &[u32]) -> bool {
    let last = phi.len() as u32 - 1;
    let k = phi.len() as u32;
    for a in 0..k {
        for b in 0..k {
            let triples = [(last, a, b), (a, last, b), (a, b, last)];
            for (r, s, u) in triples {
                if t.get(r, s, u) != t2.get(phi[r as usize], phi[s as usize], phi[u as usize]) {
                    return false;
                }
            }
        }
    }
    true
}
