//! Indistinguishing numbers, the graphs `s_max` and `s_α`, base numbers,
//! separability certificates and the `2c(k−1) < n` criterion.

use rayon::prelude::*;
use serde::Serialize;

use super::AnalysisError;
use crate::config::CoherentConfiguration;
use crate::tensor::IntersectionTensor;
use crate::wl::point_extension;

fn require_homogeneous(x: &CoherentConfiguration) -> Result<(), AnalysisError> {
    if x.is_homogeneous() {
        Ok(())
    } else {
        Err(AnalysisError::NotHomogeneous { fibers: x.num_fibers() })
    }
}

fn check_point(x: &CoherentConfiguration, point: usize) -> Result<(), AnalysisError> {
    if point < x.n() {
        Ok(())
    } else {
        Err(AnalysisError::PointOutOfRange { point, n: x.n() })
    }
}

/// `c(r)` for every color `r`, and `c(X)`, the maximum over non-diagonal `r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Indistinguishing {
    pub per_color: Vec<u32>,
    pub c: u32,
}

/// `Ω_{α,β} = {γ : r(γ,α) = r(γ,β)}`.
pub fn omega_pair(x: &CoherentConfiguration, alpha: usize, beta: usize) -> Vec<usize> {
    (0..x.n()).filter(|&g| x.color(g, alpha) == x.color(g, beta)).collect()
}

/// `c(r) = Σ_s c_{ss*}^r`, checked against `|Ω_{α,β}|` for a representative
/// `(α, β)` of every class.
pub fn indistinguishing_numbers(x: &CoherentConfiguration) -> Result<Indistinguishing, AnalysisError> {
    require_homogeneous(x)?;
    indistinguishing_with(x, &x.intersection_tensor())
}

fn indistinguishing_with(x: &CoherentConfiguration, t: &IntersectionTensor) -> Result<Indistinguishing, AnalysisError> {
    let mut per_color = vec![0u32; x.rank()];
    for ((s, s2, r), v) in t.entries() {
        if s2 == x.transpose(s) {
            per_color[r as usize] += v;
        }
    }
    for (r, &formula) in per_color.iter().enumerate() {
        let (a, b) = x.representative(r as u32);
        let direct = omega_pair(x, a, b).len() as u64;
        if direct != formula as u64 {
            return Err(AnalysisError::OracleMismatch {
                what: format!("c({r}) at ({a}, {b})"),
                direct,
                formula: formula as u64,
            });
        }
    }
    let c = (0..x.rank()).filter(|&r| !x.is_diagonal(r as u32)).map(|r| per_color[r]).max().unwrap_or(0);
    Ok(Indistinguishing { per_color, c })
}

/// `S_max`, the non-diagonal relations of maximal valency `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SMax {
    pub k: u32,
    pub colors: Vec<u32>,
    #[serde(skip)]
    member: Vec<bool>,
}

impl SMax {
    pub fn contains(&self, s: u32) -> bool {
        self.member[s as usize]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }
}

pub fn smax_relation(x: &CoherentConfiguration) -> Result<SMax, AnalysisError> {
    require_homogeneous(x)?;
    let off: Vec<u32> = (0..x.rank() as u32).filter(|&s| !x.is_diagonal(s)).collect();
    let k = off.iter().map(|&s| x.valency(s)).max().unwrap_or(0);
    let colors: Vec<u32> = off.into_iter().filter(|&s| x.valency(s) == k).collect();
    let mut member = vec![false; x.rank()];
    colors.iter().for_each(|&s| member[s as usize] = true);
    assert!(colors.iter().all(|&s| member[x.transpose(s) as usize]), "s_max must be symmetric");
    Ok(SMax { k, colors, member })
}

/// `α s_max`, in increasing order.
pub fn alpha_smax(x: &CoherentConfiguration, smax: &SMax, alpha: usize) -> Vec<usize> {
    (0..x.n()).filter(|&b| smax.contains(x.color(alpha, b))).collect()
}

fn components_of(adjacency: &[Vec<usize>]) -> Vec<usize> {
    let mut comp = vec![usize::MAX; adjacency.len()];
    let mut next = 0;
    for start in 0..adjacency.len() {
        if comp[start] != usize::MAX {
            continue;
        }
        comp[start] = next;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in &adjacency[v] {
                if comp[w] == usize::MAX {
                    comp[w] = next;
                    stack.push(w);
                }
            }
        }
        next += 1;
    }
    comp
}

/// Whether the undirected graph `(Ω, s_max)` is connected.
pub fn smax_connected(x: &CoherentConfiguration, smax: &SMax) -> bool {
    let n = x.n();
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    let mut count = 1;
    while let Some(a) = stack.pop() {
        for b in 0..n {
            if !seen[b] && smax.contains(x.color(a, b)) {
                seen[b] = true;
                count += 1;
                stack.push(b);
            }
        }
    }
    count == n
}

/// The graph `s_α` on `α s_max`: `β ~ γ` iff
/// `c_{r(α,β), r(β,γ)}^{r(α,γ)} = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SAlphaGraph {
    pub alpha: usize,
    pub vertices: Vec<usize>,
    /// Neighbours as indices into `vertices`.
    pub adjacency: Vec<Vec<usize>>,
}

impl SAlphaGraph {
    /// Component index of every vertex, numbered by first vertex.
    pub fn component_ids(&self) -> Vec<usize> {
        components_of(&self.adjacency)
    }

    /// Components as point lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let ids = self.component_ids();
        let count = ids.iter().map(|&c| c + 1).max().unwrap_or(0);
        let mut out = vec![Vec::new(); count];
        for (v, &c) in ids.iter().enumerate() {
            out[c].push(self.vertices[v]);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.component_ids().iter().all(|&c| c == 0)
    }
}

pub fn salpha_graph(x: &CoherentConfiguration, alpha: usize) -> Result<SAlphaGraph, AnalysisError> {
    check_point(x, alpha)?;
    let smax = smax_relation(x)?;
    Ok(salpha_with(x, &x.intersection_tensor(), &smax, alpha))
}

fn salpha_with(x: &CoherentConfiguration, t: &IntersectionTensor, smax: &SMax, alpha: usize) -> SAlphaGraph {
    let vertices = alpha_smax(x, smax, alpha);
    let m = vertices.len();
    let mut adjacency = vec![Vec::new(); m];
    for (i, &b) in vertices.iter().enumerate() {
        for (j, &g) in vertices.iter().enumerate() {
            if i != j && t.get(x.color(alpha, b), x.color(b, g), x.color(alpha, g)) == 1 {
                adjacency[i].push(j);
            }
        }
    }
    for (i, nb) in adjacency.iter().enumerate() {
        for &j in nb {
            assert!(adjacency[j].contains(&i), "s_alpha must be symmetric");
        }
    }
    SAlphaGraph { alpha, vertices, adjacency }
}

/// `p_u(δ)`: ordered pairs `β ≠ γ` in `αu` with `r(β,δ) = r(γ,δ)`, counted
/// directly and as `Σ_w c_{uw}^v (c_{uw}^v − 1)` with `v = r(α,δ)`.
pub fn pu_profile(x: &CoherentConfiguration, alpha: usize, u: u32, delta: usize) -> Result<u64, AnalysisError> {
    check_point(x, alpha)?;
    check_point(x, delta)?;
    let smax = smax_relation(x)?;
    if (u as usize) >= x.rank() || !smax.contains(u) {
        return Err(AnalysisError::NotInSmax(u));
    }
    pu_with(x, &x.intersection_tensor(), alpha, u, delta)
}

/// `p_u(δ)` at `α` for every `u ∈ S_max` and every point `δ`, indexed
/// `[position of u in S_max][δ]`; each value is checked like [`pu_profile`].
pub fn pu_profiles(x: &CoherentConfiguration, alpha: usize) -> Result<Vec<Vec<u64>>, AnalysisError> {
    check_point(x, alpha)?;
    let smax = smax_relation(x)?;
    let t = x.intersection_tensor();
    smax.colors
        .par_iter()
        .map(|&u| (0..x.n()).map(|delta| pu_with(x, &t, alpha, u, delta)).collect())
        .collect()
}

fn pu_direct(x: &CoherentConfiguration, alpha: usize, u: u32, delta: usize) -> u64 {
    let au = x.neighbours(alpha, u);
    let mut count = 0;
    for &b in &au {
        for &g in &au {
            if b != g && x.color(b, delta) == x.color(g, delta) {
                count += 1;
            }
        }
    }
    count
}

fn pu_with(
    x: &CoherentConfiguration,
    t: &IntersectionTensor,
    alpha: usize,
    u: u32,
    delta: usize,
) -> Result<u64, AnalysisError> {
    let direct = pu_direct(x, alpha, u, delta);
    let v = x.color(alpha, delta);
    let formula: u64 = (0..x.rank() as u32)
        .map(|w| t.get(u, w, v) as u64)
        .filter(|&c| c > 0)
        .map(|c| c * (c - 1))
        .sum();
    if direct != formula {
        return Err(AnalysisError::OracleMismatch {
            what: format!("p_{u}({delta}) at alpha = {alpha}"),
            direct,
            formula,
        });
    }
    Ok(direct)
}

/// A failed check, with enough context to reproduce it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub check: String,
    pub point: Option<usize>,
    pub detail: String,
}

impl Finding {
    fn new(check: &str, point: Option<usize>, detail: String) -> Self {
        Self { check: check.to_string(), point, detail }
    }
}

/// Checks at `α` of the component structure of `s_α` against the relations
/// of `S_max` and the pair counts `p_u(δ)`:
/// - if `C(u)` and `C(v)` meet, they are equal and every component meets `αu`
///   and `αv` equally;
/// - `p_u(δ) ≥ k` when `n_u > n_v`, or `n_u = n_v` and `C(u) ≠ C(v)`;
/// - `2 p_u(δ) ≥ k` when `n_u = n_v`, `C(u) = C(v)` and `|C(u)| > 1`;
/// - `Σ_δ p_u(δ) ≤ k(k−1)c`.
///
/// Here `v = r(α,δ)` and `C(u)` is the set of components of `s_α` meeting `αu`.
pub fn component_findings(x: &CoherentConfiguration, alpha: usize) -> Result<Vec<Finding>, AnalysisError> {
    check_point(x, alpha)?;
    let smax = smax_relation(x)?;
    let t = x.intersection_tensor();
    let c = indistinguishing_with(x, &t)?.c as u64;
    component_findings_with(x, &t, &smax, c, alpha)
}

fn component_findings_with(
    x: &CoherentConfiguration,
    t: &IntersectionTensor,
    smax: &SMax,
    c: u64,
    alpha: usize,
) -> Result<Vec<Finding>, AnalysisError> {
    let mut findings = Vec::new();
    let k = smax.k as u64;
    let g = salpha_with(x, t, smax, alpha);
    let ids = g.component_ids();
    let comp_count = ids.iter().map(|&i| i + 1).max().unwrap_or(0);
    let mut comp_of_point = vec![usize::MAX; x.n()];
    for (v, &b) in g.vertices.iter().enumerate() {
        comp_of_point[b] = ids[v];
    }
    // per relation of S_max: how many points of αu lie in each component
    let meet: Vec<Vec<usize>> = smax
        .colors
        .iter()
        .map(|&u| {
            let mut m = vec![0usize; comp_count];
            for b in x.neighbours(alpha, u) {
                m[comp_of_point[b]] += 1;
            }
            m
        })
        .collect();
    let support = |m: &Vec<usize>| -> Vec<usize> { (0..m.len()).filter(|&i| m[i] > 0).collect() };
    for (iu, &u) in smax.colors.iter().enumerate() {
        for (iv, &v) in smax.colors.iter().enumerate() {
            let (cu, cv) = (support(&meet[iu]), support(&meet[iv]));
            if cu.iter().any(|i| cv.contains(i)) && meet[iu] != meet[iv] {
                findings.push(Finding::new(
                    "component-balance",
                    Some(alpha),
                    format!("relations {u} and {v} share a component but meet the components as {:?} and {:?}", meet[iu], meet[iv]),
                ));
            }
        }
    }
    if k < 2 {
        return Ok(findings);
    }
    let smax_index = |s: u32| smax.colors.iter().position(|&c| c == s);
    for (iu, &u) in smax.colors.iter().enumerate() {
        let mut total = 0u64;
        for delta in 0..x.n() {
            let p = pu_with(x, t, alpha, u, delta)?;
            total += p;
            let v = x.color(alpha, delta);
            match smax_index(v) {
                None => {
                    if p < k {
                        findings.push(Finding::new(
                            "pu-lower-bound",
                            Some(alpha),
                            format!("p_{u}({delta}) = {p} < k = {k} with n_v < n_u for v = {v}"),
                        ));
                    }
                }
                Some(iv) => {
                    let (cu, cv) = (support(&meet[iu]), support(&meet[iv]));
                    if cu != cv && p < k {
                        findings.push(Finding::new(
                            "pu-lower-bound",
                            Some(alpha),
                            format!("p_{u}({delta}) = {p} < k = {k} with C({u}) != C({v})"),
                        ));
                    }
                    if cu == cv && cu.len() > 1 && 2 * p < k {
                        findings.push(Finding::new(
                            "pu-lower-bound",
                            Some(alpha),
                            format!("p_{u}({delta}) = {p} < k/2 with C({u}) = C({v}) of size {}", cu.len()),
                        ));
                    }
                }
            }
        }
        if total > k * (k - 1) * c {
            findings.push(Finding::new(
                "pu-sum-bound",
                Some(alpha),
                format!("sum over delta of p_{u}(delta) = {total} exceeds k(k-1)c = {}", k * (k - 1) * c),
            ));
        }
    }
    Ok(findings)
}

/// Smallest size of a base, or the cap when none of size `≤ cap` exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BaseNumber {
    Exact { value: usize, base: Vec<usize> },
    ExceedsCap { cap: usize },
}

impl BaseNumber {
    pub fn value(&self) -> Option<usize> {
        match self {
            BaseNumber::Exact { value, .. } => Some(*value),
            BaseNumber::ExceedsCap { .. } => None,
        }
    }
}

pub const DEFAULT_BASE_CAP: usize = 5;

/// Searches subsets of size `0, 1, …, cap` in lexicographic order for one
/// whose extension is complete. A point that is already a singleton fiber of
/// the current extension adds nothing and is skipped.
pub fn base_number(x: &CoherentConfiguration, cap: usize) -> Result<BaseNumber, AnalysisError> {
    if x.is_complete() {
        return Ok(BaseNumber::Exact { value: 0, base: Vec::new() });
    }
    for size in 1..=cap.min(x.n()) {
        let mut chosen = Vec::with_capacity(size);
        if let Some(base) = search_base(x, &mut chosen, 0, size)? {
            return Ok(BaseNumber::Exact { value: size, base });
        }
    }
    Ok(BaseNumber::ExceedsCap { cap })
}

fn search_base(
    x: &CoherentConfiguration,
    chosen: &mut Vec<usize>,
    start: usize,
    remaining: usize,
) -> Result<Option<Vec<usize>>, AnalysisError> {
    let n = x.n();
    let mut fiber_size = vec![0usize; x.num_fibers()];
    (0..n).for_each(|p| fiber_size[x.fiber_of_point(p) as usize] += 1);
    for p in start..=(n - remaining) {
        if fiber_size[x.fiber_of_point(p) as usize] == 1 {
            continue;
        }
        let ext = point_extension(x, &[p])?;
        chosen.push(p);
        let found = if remaining == 1 {
            ext.is_complete().then(|| chosen.clone())
        } else {
            search_base(&ext, chosen, p + 1, remaining - 1)?
        };
        chosen.pop();
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Outcome of the sufficient condition for `m`-separability: a 1-regular
/// extension with respect to `m − 1` points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Separability {
    /// `x` is `m`-separable; `alpha` is the extension point for `m = 2`.
    Established { m: usize, alpha: Option<usize>, regular_fiber: Vec<usize> },
    /// The condition failed; `x` may still be `m`-separable.
    NotEstablished { m: usize, reason: String },
}

impl Separability {
    pub fn is_established(&self) -> bool {
        matches!(self, Separability::Established { .. })
    }
}

fn regular_fiber(x: &CoherentConfiguration) -> Option<Vec<usize>> {
    let first = *x.regular_points().first()?;
    let f = x.fiber_of_point(first);
    Some((0..x.n()).filter(|&p| x.fiber_of_point(p) == f).collect())
}

pub fn separability_certificate(x: &CoherentConfiguration, m: usize) -> Result<Separability, AnalysisError> {
    match m {
        1 => Ok(match regular_fiber(x) {
            Some(fiber) => Separability::Established { m, alpha: None, regular_fiber: fiber },
            None => Separability::NotEstablished { m, reason: "the configuration is not 1-regular".into() },
        }),
        2 => {
            let hit = (0..x.n())
                .into_par_iter()
                .map(|a| point_extension(x, &[a]).map(|e| regular_fiber(&e).map(|f| (a, f))))
                .find_map_first(|r| match r {
                    Ok(None) => None,
                    other => Some(other),
                });
            Ok(match hit {
                Some(Ok(Some((a, fiber)))) => Separability::Established { m, alpha: Some(a), regular_fiber: fiber },
                Some(Err(e)) => return Err(e.into()),
                _ => Separability::NotEstablished { m, reason: "no one-point extension is 1-regular".into() },
            })
        }
        other => Err(AnalysisError::UnsupportedM(other)),
    }
}

/// Whether each one-point extension `X_α` is 1-regular.
pub fn one_point_extensions_regular(x: &CoherentConfiguration) -> Result<Vec<bool>, AnalysisError> {
    (0..x.n())
        .into_par_iter()
        .map(|a| Ok(point_extension(x, &[a])?.is_one_regular()))
        .collect()
}

/// For `β ∈ α s_max`, whether `{α, β}` is a base.
pub fn smax_pair_bases(x: &CoherentConfiguration, alpha: usize) -> Result<Vec<(usize, bool)>, AnalysisError> {
    check_point(x, alpha)?;
    let smax = smax_relation(x)?;
    let ext = point_extension(x, &[alpha])?;
    alpha_smax(x, &smax, alpha)
        .into_par_iter()
        .map(|b| Ok((b, point_extension(&ext, &[b])?.is_complete())))
        .collect()
}

/// What [`criterion_report_with`] computes beyond the cheap invariants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReportOptions {
    /// Cap for the base number search; `None` skips it.
    pub base_cap: Option<usize>,
    /// Whether to test every one-point extension for 1-regularity.
    pub extensions: bool,
    /// Whether to test that the pairs in `0 s_max` are bases when `s_max` and
    /// every `s_α` are connected.
    pub pair_bases: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self { base_cap: Some(3), extensions: true, pair_bases: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub n: usize,
    pub rank: usize,
    pub k: u32,
    pub c: u32,
    pub smax_size: usize,
    /// `2c(k−1) < n`.
    pub inequality_holds: bool,
    /// The inequality together with `k ≥ 2`.
    pub hypothesis_holds: bool,
    pub smax_connected: bool,
    pub salpha_connected_per_point: Vec<bool>,
    /// `|α s_max| = k |S_max|`, the same for every `α`.
    pub alpha_smax_size: usize,
    pub base_number: Option<BaseNumber>,
    pub one_regular_extensions: Option<Vec<bool>>,
    pub findings: Vec<Finding>,
}

pub fn criterion_report(x: &CoherentConfiguration) -> Result<StructureReport, AnalysisError> {
    criterion_report_with(x, &ReportOptions::default())
}

/// Computes the report. When `2c(k−1) < n` and `k ≥ 2`, every conclusion of
/// the criterion is checked and each failure becomes a finding: `s_max` and all
/// `s_α` connected, `|α s_max| > n/2`, all one-point extensions 1-regular,
/// base number at most 2. The component conditions at point 0 are checked
/// unconditionally, and so, on request, is the base property of the pairs in
/// `0 s_max` when `s_max` and every `s_α` are connected.
pub fn criterion_report_with(x: &CoherentConfiguration, opts: &ReportOptions) -> Result<StructureReport, AnalysisError> {
    require_homogeneous(x)?;
    let n = x.n();
    let t = x.intersection_tensor();
    let c = indistinguishing_with(x, &t)?.c;
    let smax = smax_relation(x)?;
    let k = smax.k;
    let inequality_holds = 2 * c as u64 * (k as u64).saturating_sub(1) < n as u64;
    let hypothesis_holds = inequality_holds && k >= 2;
    let smax_conn = smax_connected(x, &smax);
    let salpha: Vec<bool> = (0..n).into_par_iter().map(|a| salpha_with(x, &t, &smax, a).is_connected()).collect();
    let alpha_smax_size = k as usize * smax.len();
    let one_regular = if opts.extensions { Some(one_point_extensions_regular(x)?) } else { None };
    let base = opts.base_cap.map(|cap| base_number(x, cap)).transpose()?;

    let mut findings = Vec::new();
    if hypothesis_holds {
        if !smax_conn {
            findings.push(Finding::new("smax-connected", None, "s_max is disconnected".into()));
        }
        for (a, ok) in salpha.iter().enumerate() {
            if !ok {
                findings.push(Finding::new("salpha-connected", Some(a), format!("s_{a} is disconnected")));
            }
        }
        if 2 * alpha_smax_size <= n {
            findings.push(Finding::new(
                "alpha-smax-size",
                None,
                format!("|alpha s_max| = {alpha_smax_size} is not more than n/2 = {n}/2"),
            ));
        }
        if let Some(regular) = &one_regular {
            for (a, ok) in regular.iter().enumerate() {
                if !ok {
                    findings.push(Finding::new("one-regular-extension", Some(a), format!("X_{a} is not 1-regular")));
                }
            }
        }
        match &base {
            Some(BaseNumber::Exact { value, base }) if *value > 2 => findings.push(Finding::new(
                "base-number",
                None,
                format!("base number {value} exceeds 2 (first base {base:?})"),
            )),
            Some(BaseNumber::ExceedsCap { cap }) if *cap >= 2 => {
                findings.push(Finding::new("base-number", None, format!("no base of size at most {cap}")))
            }
            _ => {}
        }
    }
    findings.extend(component_findings_with(x, &t, &smax, c as u64, 0)?);
    if opts.pair_bases && smax_conn && salpha.iter().all(|&b| b) {
        let ext = point_extension(x, &[0])?;
        for b in alpha_smax(x, &smax, 0) {
            if !point_extension(&ext, &[b])?.is_complete() {
                findings.push(Finding::new("smax-pair-base", Some(0), format!("(0, {b}) is in s_max but not a base")));
            }
        }
    }
    Ok(StructureReport {
        n,
        rank: x.rank(),
        k,
        c,
        smax_size: smax.len(),
        inequality_holds,
        hypothesis_holds,
        smax_connected: smax_conn,
        salpha_connected_per_point: salpha,
        alpha_smax_size,
        base_number: base,
        one_regular_extensions: one_regular,
        findings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::verify_coherence;
    use crate::zoo;

    fn cc(g: &crate::graph::ColoredGraph) -> CoherentConfiguration {
        verify_coherence(g).unwrap()
    }

    #[test]
    fn trivial_configuration_numbers() {
        let x = cc(&zoo::trivial(6));
        let ind = indistinguishing_numbers(&x).unwrap();
        // every third point sees the pair alike
        assert_eq!(ind.c, 4);
        let smax = smax_relation(&x).unwrap();
        assert_eq!((smax.k, smax.len()), (5, 1));
        let rep = criterion_report(&x).unwrap();
        assert!(!rep.inequality_holds);
        assert!(rep.findings.is_empty());
        assert_eq!(base_number(&cc(&zoo::trivial(3)), 5).unwrap().value(), Some(2));
        assert_eq!(base_number(&cc(&zoo::trivial(7)), 5).unwrap(), BaseNumber::ExceedsCap { cap: 5 });
        assert!(!separability_certificate(&x, 2).unwrap().is_established());
        assert!(!separability_certificate(&x, 1).unwrap().is_established());
    }

    #[test]
    fn thin_scheme() {
        let x = cc(&zoo::thin_cyclic(5));
        assert_eq!(indistinguishing_numbers(&x).unwrap().c, 0);
        let rep = criterion_report(&x).unwrap();
        assert_eq!((rep.k, rep.c), (1, 0));
        assert!(rep.inequality_holds && !rep.hypothesis_holds);
        assert_eq!(rep.one_regular_extensions, Some(vec![true; 5]));
        let g = salpha_graph(&x, 0).unwrap();
        assert_eq!(g.vertices.len(), 4);
        assert!(g.adjacency.iter().all(|nb| nb.len() == 3));
        assert!(separability_certificate(&x, 1).unwrap().is_established());
        for d in 1..5 {
            assert_eq!(pu_profile(&x, 0, x.color(0, 1), d).unwrap(), 0);
        }
    }

    #[test]
    fn complete_has_base_number_zero() {
        assert_eq!(base_number(&cc(&zoo::complete(4)), 5).unwrap().value(), Some(0));
    }

    #[test]
    fn pu_at_alpha_counts_all_pairs() {
        let x = cc(&zoo::cycle_distance(8));
        let smax = smax_relation(&x).unwrap();
        for &u in &smax.colors {
            let k = smax.k as u64;
            assert_eq!(pu_profile(&x, 0, u, 0).unwrap(), k * (k - 1));
        }
        assert!(matches!(pu_profile(&x, 0, 0, 1), Err(AnalysisError::NotInSmax(0))));
    }

    #[test]
    fn non_homogeneous_is_refused() {
        let x = cc(&zoo::two_fibers(2, 3));
        assert!(matches!(indistinguishing_numbers(&x), Err(AnalysisError::NotHomogeneous { fibers: 2 })));
        assert!(base_number(&x, 5).is_ok());
    }
}
