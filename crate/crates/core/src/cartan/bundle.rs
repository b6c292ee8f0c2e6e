//! Cartan schemes of the rank-one groups: the coherent configuration of the
//! action on right cosets of the diagonal subgroup.

use serde::Serialize;
use thiserror::Error;

use super::field::{prime_power, FieldError, FiniteField};
use super::matrix::{MatrixGroup, Variant};
use crate::config::{ConfigJson, CoherentConfiguration};
use crate::graph::same_partition;
use crate::perm::{
    conjugate_subgroup, intersect, CosetAction, CosetActionJson, FiniteGroup, GroupError, PermutationGroup,
    DEFAULT_DEGREE_BUDGET,
};

pub const MIN_Q: u32 = 4;
pub const MAX_Q: u32 = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CartanError {
    #[error("q > 3 required (got {0})")]
    QTooSmall(u32),
    #[error("q = {0} exceeds the supported maximum of {MAX_Q}")]
    QTooLarge(u32),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A matrix group with its standard subgroups, as sorted element indices.
#[derive(Debug, Clone)]
pub struct GroupData {
    pub group: MatrixGroup,
    /// Diagonal matrices.
    pub h: Vec<usize>,
    /// Upper triangular matrices.
    pub b: Vec<usize>,
    /// Monomial matrices, `H ∪ Hi`.
    pub n: Vec<usize>,
    pub u: Vec<usize>,
    pub v: Vec<usize>,
}

fn check_q(q: u32) -> Result<(), CartanError> {
    prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
    if q < MIN_Q {
        return Err(CartanError::QTooSmall(q));
    }
    if q > MAX_Q {
        return Err(CartanError::QTooLarge(q));
    }
    Ok(())
}

pub fn build_group(q: u32, variant: Variant) -> Result<GroupData, CartanError> {
    check_q(q)?;
    build_group_with_field(FiniteField::new(q)?, variant)
}

/// Like [`build_group`] over a caller-supplied field.
pub fn build_group_with_field(field: FiniteField, variant: Variant) -> Result<GroupData, CartanError> {
    check_q(field.order())?;
    let group = MatrixGroup::new(field, variant);
    let (h, b, n, u, v) =
        (group.diagonal(), group.upper_triangular(), group.monomial(), group.upper_unipotent(), group.lower_unipotent());
    Ok(GroupData { group, h, b, n, u, v })
}

/// `SL(2,q)` with its diagonal, Borel, monomial and unipotent subgroups.
pub fn build_sl2(q: u32) -> Result<GroupData, CartanError> {
    build_group(q, Variant::Sl2)
}

/// Colors of the four distinguished relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpecialRelations {
    /// `D = H`.
    pub s1: u32,
    /// `D = HiH`.
    pub si: u32,
    /// `D = HuH`, `u` upper unipotent.
    pub su: u32,
    /// `D = HvH`, `v` lower unipotent.
    pub sv: u32,
    /// Whether `u = [[1, ξ], [0, 1]]` and `v = [[1, 0], [ξ, 1]]` give the
    /// same relations as `x = y = 1` (`ξ` primitive).
    pub choice_independent: bool,
}

#[derive(Debug, Clone)]
pub struct CartanSchemeBundle {
    pub q: u32,
    pub variant: Variant,
    pub data: GroupData,
    pub action: CosetAction,
    pub scheme: CoherentConfiguration,
    pub tags: SpecialRelations,
    /// For `psl2`: whether the configuration equals the `sl2` one under the
    /// natural identification of cosets.
    pub equivalent_to_sl2: Option<bool>,
}

impl CartanSchemeBundle {
    pub fn n(&self) -> usize {
        self.scheme.n()
    }

    /// Maximum valency.
    pub fn k(&self) -> u32 {
        self.scheme.max_valency()
    }

    /// The induced permutation group on cosets.
    pub fn permutation_group(&self) -> &PermutationGroup {
        self.action.image()
    }

    /// Images in the induced group of a matrix subgroup.
    pub fn induced(&self, elems: &[usize]) -> Vec<usize> {
        self.action.image_set(elems)
    }

    /// An element `g₀ ∈ U^#` with `H ∩ H^{g₀} = 1`, if any.
    pub fn trivial_intersection_witness(&self) -> Option<usize> {
        let g = &self.data.group;
        let e = g.identity();
        self.data.u.iter().copied().filter(|&x| x != e).find(|&x| {
            let conj = conjugate_subgroup(g, &self.data.h, x);
            intersect(&self.data.h, &conj) == vec![e]
        })
    }

    pub fn to_json(&self) -> BundleJson {
        let g = &self.data.group;
        BundleJson {
            q: self.q,
            variant: self.variant,
            modulus: g.field().modulus().to_vec(),
            n: self.n(),
            rank: self.scheme.rank(),
            k: self.k(),
            group_order: g.order(),
            subgroup_orders: SubgroupOrders::of(&self.data),
            subgroups: Subgroups {
                h: self.data.h.clone(),
                b: self.data.b.clone(),
                n: self.data.n.clone(),
                u: self.data.u.clone(),
                v: self.data.v.clone(),
            },
            tags: self.tags,
            equivalent_to_sl2: self.equivalent_to_sl2,
            action: CosetActionJson::from(&self.action),
            scheme: self.scheme.to_json(),
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SubgroupOrders {
    pub h: usize,
    pub b: usize,
    pub n: usize,
    pub u: usize,
    pub v: usize,
}

impl SubgroupOrders {
    pub fn of(d: &GroupData) -> Self {
        Self { h: d.h.len(), b: d.b.len(), n: d.n.len(), u: d.u.len(), v: d.v.len() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Subgroups {
    pub h: Vec<usize>,
    pub b: Vec<usize>,
    pub n: Vec<usize>,
    pub u: Vec<usize>,
    pub v: Vec<usize>,
}

/// Serialized bundle; subgroup entries index the matrix group's elements in
/// increasing `(a, b, c, d)` order.
#[derive(Debug, Clone, Serialize)]
pub struct BundleJson {
    pub q: u32,
    pub variant: Variant,
    pub modulus: Vec<u32>,
    pub n: usize,
    pub rank: usize,
    pub k: u32,
    pub group_order: usize,
    pub subgroup_orders: SubgroupOrders,
    pub subgroups: Subgroups,
    pub tags: SpecialRelations,
    pub equivalent_to_sl2: Option<bool>,
    pub action: CosetActionJson,
    pub scheme: ConfigJson,
}

/// The Cartan scheme of the chosen group over `F_q`.
pub fn cartan_scheme(q: u32, variant: Variant) -> Result<CartanSchemeBundle, CartanError> {
    let data = build_group(q, variant)?;
    scheme_from_data(q, variant, data)
}

/// [`cartan_scheme`] over a caller-supplied field.
pub fn cartan_scheme_with_field(field: FiniteField, variant: Variant) -> Result<CartanSchemeBundle, CartanError> {
    let q = field.order();
    let data = build_group_with_field(field, variant)?;
    scheme_from_data(q, variant, data)
}

fn scheme_from_data(q: u32, variant: Variant, data: GroupData) -> Result<CartanSchemeBundle, CartanError> {
    assert_eq!(intersect(&data.b, &data.n), data.h, "H = B ∩ N");
    let action = CosetAction::new(&data.group, &data.h, DEFAULT_DEGREE_BUDGET)?;
    let scheme = action.image().inv_config();
    let tags = tag_special_relations(&data, &action, &scheme);
    if variant == Variant::Pgl2 {
        assert!(tags.choice_independent, "HuH = HU# and HvH = HV# in PGL(2,q)");
    }
    let equivalent_to_sl2 = match variant {
        Variant::Psl2 => {
            let sl = build_group_with_field(data.group.field().clone(), Variant::Sl2)?;
            let sl_action = CosetAction::new(&sl.group, &sl.h, DEFAULT_DEGREE_BUDGET)?;
            let sl_scheme = sl_action.image().inv_config();
            // coset H_sl·M corresponds to the coset of the class of M
            let point_map: Vec<u32> = sl_action
                .representatives()
                .iter()
                .map(|&r| {
                    let m = sl.group.element(r);
                    action.coset_of(data.group.index_of(&m).expect("image in PSL")) as u32
                })
                .collect();
            let moved = sl_scheme.graph().relabel(&point_map);
            let same = same_partition(moved.colors(), scheme.colors());
            assert!(same, "PSL and SL coset configurations must coincide");
            Some(same)
        }
        _ => None,
    };
    Ok(CartanSchemeBundle { q, variant, data, action, scheme, tags, equivalent_to_sl2 })
}

/// Reads off `s₁, s_i, s_u, s_v` as the colors of `(α, α^g)` for `α = {H}`
/// with `x = y = 1`, and compares with the choice `x = y = ξ`.
pub fn tag_special_relations(data: &GroupData, action: &CosetAction, x: &CoherentConfiguration) -> SpecialRelations {
    let g = &data.group;
    let color_of = |e: usize| x.color(0, action.coset_of(e));
    let xi = g.field().primitive_element();
    let su = color_of(g.upper(1));
    let sv = color_of(g.lower(1));
    let choice_independent = su == color_of(g.upper(xi)) && sv == color_of(g.lower(xi));
    SpecialRelations { s1: color_of(g.identity()), si: color_of(g.weyl_element()), su, sv, choice_independent }
}

/// A configuration `inv(G, G/H)` with the base point `{H}` at 0.
#[derive(Debug, Clone)]
pub struct GenericScheme {
    pub action: CosetAction,
    pub scheme: CoherentConfiguration,
    pub base_point: usize,
}

pub fn generic_scheme(g: &PermutationGroup, h: &[usize]) -> Result<GenericScheme, GroupError> {
    let action = CosetAction::new(g, h, DEFAULT_DEGREE_BUDGET)?;
    let scheme = action.image().inv_config();
    Ok(GenericScheme { action, scheme, base_point: 0 })
}
