//! Recognition of Cartan schemes from a colored graph, and isomorphism of a
//! recognized graph with an arbitrary one.

use num_bigint::BigUint;
use serde::Serialize;

use super::{aut_group, iso_set, IsoBudget, RecognitionError};
use crate::cartan::{groups_of_order, LieCandidate};
use crate::config::{CoherentConfiguration, ConfigJson};
use crate::graph::ColoredGraph;
use crate::perm::{conjugates, intersect, is_simple, normalizer, sylow_subgroup, FiniteGroup, Permutation};
use crate::wl::{closure, compatible_closure, point_extension, Compatibility};

/// Parameter box searched in Step 4.
pub const MAX_LIE_RANK: u32 = 8;
pub const MAX_LIE_Q: u64 = 64;

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct StageFailure {
    pub stage: u8,
    pub name: &'static str,
    pub reason: String,
}

/// The conditions checked in Step 5 for the chosen `P`.
#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
pub struct BnRelations {
    pub h_meets_p_trivially: bool,
    pub h_normalizes_p: bool,
    pub normalizer_order_is_hp: bool,
}

impl BnRelations {
    pub fn all(&self) -> bool {
        self.h_meets_p_trivially && self.h_normalizes_p && self.normalizer_order_is_hp
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RecognitionReport {
    pub accepted: bool,
    pub stage_failed: Option<StageFailure>,
    pub n: usize,
    pub rank: usize,
    pub scheme: ConfigJson,
    pub base_pair: Option<(usize, usize)>,
    pub group_order: Option<usize>,
    pub is_transitive: Option<bool>,
    pub is_simple: Option<bool>,
    pub candidate_families: Vec<LieCandidate>,
    /// Characteristic used for the Sylow subgroup in Step 5.
    pub prime: Option<u64>,
    pub h_order: Option<usize>,
    pub p_order: Option<usize>,
    pub b_order: Option<usize>,
    pub n_order: Option<usize>,
    pub relations: Option<BnRelations>,
    pub relations_verified: bool,
    pub caveats: Vec<String>,
}

impl RecognitionReport {
    fn new(x: &CoherentConfiguration) -> Self {
        Self {
            accepted: false,
            stage_failed: None,
            n: x.n(),
            rank: x.rank(),
            scheme: x.to_json(),
            base_pair: None,
            group_order: None,
            is_transitive: None,
            is_simple: None,
            candidate_families: Vec::new(),
            prime: None,
            h_order: None,
            p_order: None,
            b_order: None,
            n_order: None,
            relations: None,
            relations_verified: false,
            caveats: Vec::new(),
        }
    }

    fn reject(mut self, stage: u8, name: &'static str, reason: impl Into<String>) -> Self {
        self.stage_failed = Some(StageFailure { stage, name, reason: reason.into() });
        self
    }
}

/// First pair `α ≠ β` in lexicographic order whose two-point extension is discrete.
pub fn find_base_pair(x: &CoherentConfiguration) -> Option<(usize, usize)> {
    let n = x.n();
    if n == 1 {
        return None;
    }
    (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).find(|&(a, b)| {
        point_extension(x, &[a, b]).map(|e| e.num_fibers() == n).unwrap_or(false)
    })
}

/// Runs the six recognition steps on `d`. Budget overruns reject at the
/// stage where they occur.
pub fn recognize_cartan(d: &ColoredGraph, budget: &IsoBudget) -> RecognitionReport {
    // Step 1
    let x = closure(d);
    let mut report = RecognitionReport::new(&x);
    if x.n() > budget.max_points {
        return report.reject(1, "closure", format!("{} points exceed the budget of {}", x.n(), budget.max_points));
    }

    // Step 2
    match find_base_pair(&x) {
        Some(pair) => report.base_pair = Some(pair),
        None => return report.reject(2, "base pair", "no two points give a discrete extension, so b(X) > 2"),
    }

    // Step 3
    let g = match aut_group(&x, budget) {
        Ok(g) => g,
        Err(e) => return report.reject(3, "automorphism group", e.to_string()),
    };
    report.group_order = Some(g.order());
    let transitive = g.is_transitive();
    report.is_transitive = Some(transitive);
    if !transitive {
        return report.reject(3, "automorphism group", "not transitive");
    }
    let simple = is_simple(&g);
    report.is_simple = Some(simple);
    if !simple {
        return report.reject(3, "automorphism group", format!("group of order {} is not simple", g.order()));
    }

    // Step 4
    report.candidate_families = groups_of_order(&BigUint::from(g.order()), MAX_LIE_RANK, MAX_LIE_Q);
    if report.candidate_families.is_empty() {
        return report.reject(
            4,
            "order",
            format!("no group of Lie type with l <= {MAX_LIE_RANK}, q <= {MAX_LIE_Q} has order {}", g.order()),
        );
    }
    if report.candidate_families.len() > 1 {
        report.caveats.push("several groups of Lie type share this order; all are listed".into());
    }

    // Step 5
    let h = g.point_stabilizer(0);
    report.h_order = Some(h.len());
    let mut primes: Vec<u64> = report.candidate_families.iter().map(|c| c.p).collect();
    primes.sort_unstable();
    primes.dedup();
    let mut found = None;
    for &p in &primes {
        let Ok(sylow) = sylow_subgroup(&g, p as usize) else { continue };
        for pp in conjugates(&g, &sylow) {
            let rel = bn_relations(&g, &h, &pp);
            if rel.all() {
                found = Some((p, pp, rel));
                break;
            }
        }
        if found.is_some() {
            break;
        }
    }
    let Some((p, pp, rel)) = found else {
        return report.reject(5, "Sylow subgroup", "no Sylow subgroup P for any candidate characteristic satisfies the relations");
    };
    report.prime = Some(p);
    report.p_order = Some(pp.len());
    report.relations = Some(rel);
    report.relations_verified = true;

    // Step 6
    report.b_order = Some(normalizer(&g, &pp).len());
    report.n_order = Some(normalizer(&g, &h).len());
    report.caveats.push("N computed as N_G(H)".into());
    report.accepted = true;
    report
}

/// `H ∩ P = 1`, `H ≤ N_G(P)` and `|N_G(P)| = |H||P|`.
pub fn bn_relations<G: FiniteGroup + ?Sized>(g: &G, h: &[usize], p: &[usize]) -> BnRelations {
    let np = normalizer(g, p);
    BnRelations {
        h_meets_p_trivially: intersect(h, p) == vec![g.identity()],
        h_normalizes_p: h.iter().all(|x| np.binary_search(x).is_ok()),
        normalizer_order_is_hp: np.len() == h.len() * p.len(),
    }
}

/// Outcome of [`iso_graphs`].
#[derive(Debug, Clone)]
pub enum IsoOutcome {
    /// No algebraic isomorphism of the closures extends the color map.
    NoAlgebraicIsomorphism { round: usize },
    Isomorphisms(Vec<Permutation>),
}

/// `Iso(d, d')` over the color bijection `psi`: the closures are refined in
/// lockstep and the induced algebraic isomorphism is realized by search.
pub fn iso_graphs(
    d: &ColoredGraph,
    d2: &ColoredGraph,
    psi: &[u32],
    budget: &IsoBudget,
) -> Result<IsoOutcome, RecognitionError> {
    match compatible_closure(d, d2, psi)? {
        Compatibility::Incompatible { round } => Ok(IsoOutcome::NoAlgebraicIsomorphism { round }),
        Compatibility::Compatible { x, x2, phi, .. } => {
            let found = iso_set(&x, &x2, &phi, budget)?;
            if !found.is_empty() {
                let aut = aut_group(&x, budget)?;
                assert_eq!(found.len(), aut.order(), "Iso(X, X', φ) is a coset of Aut(X)");
            }
            Ok(IsoOutcome::Isomorphisms(found))
        }
    }
}
