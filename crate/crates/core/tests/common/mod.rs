#![allow(dead_code)]

use cartan_core::cartan::{cartan_scheme, generic_scheme, CartanSchemeBundle, GenericScheme, Variant};
use cartan_core::perm::{generate, normalizer, FiniteGroup, Permutation, PermutationGroup};
use cartan_core::zoo;
use cartan_core::CoherentConfiguration;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CARTAN_QS: [u32; 7] = [4, 5, 7, 8, 9, 11, 13];

/// A configuration `inv(G)` together with the group it came from.
pub enum Source {
    Cartan(CartanSchemeBundle),
    Generic { group: PermutationGroup, scheme: GenericScheme },
}

pub struct Member {
    pub name: String,
    pub source: Source,
}

impl Member {
    pub fn scheme(&self) -> &CoherentConfiguration {
        match &self.source {
            Source::Cartan(b) => &b.scheme,
            Source::Generic { scheme, .. } => &scheme.scheme,
        }
    }

    /// The permutation group on the points.
    pub fn image(&self) -> &PermutationGroup {
        match &self.source {
            Source::Cartan(b) => b.permutation_group(),
            Source::Generic { scheme, .. } => scheme.action.image(),
        }
    }
}

pub fn generic(name: String, group: PermutationGroup, h: Vec<usize>) -> Member {
    let scheme = generic_scheme(&group, &h).unwrap();
    Member { name, source: Source::Generic { group, scheme } }
}

fn identity_only(g: &PermutationGroup) -> Vec<usize> {
    vec![g.identity()]
}

/// Cartan schemes for every supported q, thin cyclic and dihedral schemes,
/// dihedral groups on polygons, trivial schemes and Sym(4) on the cosets of
/// the Klein group.
pub fn builder_zoo() -> Vec<Member> {
    let mut out = Vec::new();
    for q in CARTAN_QS {
        out.push(Member { name: format!("cartan q={q}"), source: Source::Cartan(cartan_scheme(q, Variant::Pgl2).unwrap()) });
    }
    for n in [3, 5, 6, 12] {
        let g = zoo::cyclic_group(n);
        let h = identity_only(&g);
        out.push(generic(format!("thin C{n}"), g, h));
    }
    for n in [3, 4, 5] {
        let g = zoo::dihedral_group(n);
        let h = identity_only(&g);
        out.push(generic(format!("thin D{n}"), g, h));
    }
    for n in [5, 6, 7, 10] {
        let g = zoo::dihedral_group(n);
        let h = g.point_stabilizer(0);
        out.push(generic(format!("dihedral polygon {n}"), g, h));
    }
    for n in [3, 4, 5, 6] {
        let g = zoo::symmetric_group(n);
        let h = g.point_stabilizer(0);
        out.push(generic(format!("trivial {n}"), g, h));
    }
    let s4 = zoo::sym4_klein();
    out.push(Member {
        name: "Sym(4)/Klein".into(),
        source: Source::Generic { group: zoo::symmetric_group(4), scheme: s4 },
    });
    out
}

/// The normalizer used by the character formula: the monomial group for
/// Cartan schemes, `N_G(H)` otherwise.
pub fn fusion_normalizer(m: &Member) -> Vec<usize> {
    match &m.source {
        Source::Cartan(b) => b.data.n.clone(),
        Source::Generic { group, scheme } => normalizer(group, scheme.action.subgroup()),
    }
}

fn base_groups() -> Vec<(String, PermutationGroup)> {
    let mut out = vec![
        ("Sym(4)".to_string(), zoo::symmetric_group(4)),
        ("Sym(5)".to_string(), zoo::symmetric_group(5)),
        ("Alt(5)".to_string(), zoo::alternating_group(5)),
        ("Alt(6)".to_string(), zoo::alternating_group(6)),
        ("Sym(6)".to_string(), zoo::symmetric_group(6)),
        ("D(9) regular".to_string(), zoo::regular_dihedral(9)),
        ("D(16)".to_string(), zoo::dihedral_group(16)),
        ("C(24)".to_string(), zoo::cyclic_group(24)),
    ];
    for q in [4, 7, 8] {
        out.push((format!("PGL(2,{q})"), cartan_scheme(q, Variant::Pgl2).unwrap().permutation_group().clone()));
    }
    out
}

/// `count` transitive configurations `inv(G, G/K)` of degree between 2 and
/// `max_degree`, with `G` drawn from a fixed list and `K` generated by one or
/// two random elements.
pub fn random_transitive(seed: u64, count: usize, max_degree: usize) -> Vec<Member> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let groups = base_groups();
    let mut out = Vec::new();
    while out.len() < count {
        let (name, g) = groups.choose(&mut rng).unwrap();
        let gens: Vec<usize> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(0..g.order())).collect();
        let k = generate(g, &gens);
        let degree = g.order() / k.len();
        if !(2..=max_degree).contains(&degree) {
            continue;
        }
        out.push(generic(format!("{name} on cosets of <{gens:?}> (degree {degree})"), g.clone(), k));
    }
    out
}

/// A seeded random permutation of `0..n`.
pub fn random_permutation(n: usize, seed: u64) -> Vec<u32> {
    let mut p: Vec<u32> = (0..n as u32).collect();
    p.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    p
}

pub fn perm(images: Vec<u32>) -> Permutation {
    Permutation::new(images).unwrap()
}
