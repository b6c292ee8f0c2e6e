//! 2×2 matrix groups over `F_q`: `SL(2,q)`, `PSL(2,q)` and `PGL(2,q)`.
//!
//! Projective groups store one normalized representative per scalar class:
//! the lexicographically least matrix among its scalar multiples.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::field::FiniteField;
use crate::perm::FiniteGroup;

/// Matrix `[[a, b], [c, d]]` of field element indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mat2 {
    pub a: u16,
    pub b: u16,
    pub c: u16,
    pub d: u16,
}

impl Mat2 {
    pub const fn new(a: u16, b: u16, c: u16, d: u16) -> Self {
        Self { a, b, c, d }
    }

    pub fn det(&self, f: &FiniteField) -> u16 {
        f.sub(f.mul(self.a, self.d), f.mul(self.b, self.c))
    }

    pub fn mul(&self, o: &Mat2, f: &FiniteField) -> Mat2 {
        Mat2 {
            a: f.add(f.mul(self.a, o.a), f.mul(self.b, o.c)),
            b: f.add(f.mul(self.a, o.b), f.mul(self.b, o.d)),
            c: f.add(f.mul(self.c, o.a), f.mul(self.d, o.c)),
            d: f.add(f.mul(self.c, o.b), f.mul(self.d, o.d)),
        }
    }

    pub fn scale(&self, s: u16, f: &FiniteField) -> Mat2 {
        Mat2 { a: f.mul(s, self.a), b: f.mul(s, self.b), c: f.mul(s, self.c), d: f.mul(s, self.d) }
    }
}

/// Which group of 2×2 matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Determinant-one matrices.
    Sl2,
    /// Determinant-one matrices modulo `±1`.
    Psl2,
    /// Invertible matrices modulo scalars.
    #[default]
    Pgl2,
}

impl std::str::FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "sl2" | "sl" => Ok(Variant::Sl2),
            "psl2" | "psl" => Ok(Variant::Psl2),
            "pgl2" | "pgl" => Ok(Variant::Pgl2),
            other => Err(format!("unknown variant {other:?}; expected sl2, psl2 or pgl2")),
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Variant::Sl2 => "sl2",
            Variant::Psl2 => "psl2",
            Variant::Pgl2 => "pgl2",
        })
    }
}

/// A 2×2 matrix group with its elements in increasing `(a, b, c, d)` order.
#[derive(Debug, Clone)]
pub struct MatrixGroup {
    field: FiniteField,
    variant: Variant,
    scalars: Vec<u16>,
    elements: Vec<Mat2>,
    index: HashMap<Mat2, u32>,
    identity: usize,
    generators: Vec<usize>,
}

impl MatrixGroup {
    pub fn new(field: FiniteField, variant: Variant) -> Self {
        let q = field.order() as u16;
        let scalars: Vec<u16> = match variant {
            Variant::Sl2 => vec![1],
            Variant::Psl2 => field.square_roots_of_one(),
            Variant::Pgl2 => (1..q).collect(),
        };
        let mut elements = Vec::new();
        for a in 0..q {
            for b in 0..q {
                for c in 0..q {
                    for d in 0..q {
                        let m = Mat2::new(a, b, c, d);
                        let det = m.det(&field);
                        let ok = match variant {
                            Variant::Sl2 | Variant::Psl2 => det == 1,
                            Variant::Pgl2 => det != 0,
                        };
                        if ok && normalize(&m, &scalars, &field) == m {
                            elements.push(m);
                        }
                    }
                }
            }
        }
        let index: HashMap<Mat2, u32> = elements.iter().enumerate().map(|(i, m)| (*m, i as u32)).collect();
        let identity = index[&Mat2::new(1, 0, 0, 1)] as usize;
        let mut group = Self { field, variant, scalars, elements, index, identity, generators: Vec::new() };
        group.generators = group.standard_generators();
        group
    }

    /// Upper and lower unipotent generators, plus a diagonal one for `PGL`.
    fn standard_generators(&self) -> Vec<usize> {
        let f = &self.field;
        let xi = f.primitive_element();
        let mut gens = vec![Mat2::new(1, 1, 0, 1), Mat2::new(1, 0, 1, 1)];
        match self.variant {
            Variant::Pgl2 => gens.push(Mat2::new(xi, 0, 0, 1)),
            _ => gens.push(Mat2::new(xi, 0, 0, f.inv(xi).unwrap())),
        }
        // over prime fields the unipotents already generate SL(2,p)
        gens.into_iter().map(|m| self.index_of(&m).expect("generator is an element")).collect()
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn elements(&self) -> &[Mat2] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> Mat2 {
        self.elements[i]
    }

    /// Index of the scalar class of `m`, if it lies in the group.
    pub fn index_of(&self, m: &Mat2) -> Option<usize> {
        self.index.get(&normalize(m, &self.scalars, &self.field)).map(|&i| i as usize)
    }

    /// Indices of the elements satisfying `pred`, in order.
    pub fn select(&self, pred: impl Fn(&Mat2) -> bool) -> Vec<usize> {
        (0..self.elements.len()).filter(|&i| pred(&self.elements[i])).collect()
    }

    pub fn diagonal(&self) -> Vec<usize> {
        self.select(|m| m.b == 0 && m.c == 0)
    }

    pub fn upper_triangular(&self) -> Vec<usize> {
        self.select(|m| m.c == 0)
    }

    pub fn monomial(&self) -> Vec<usize> {
        self.select(|m| (m.b == 0 && m.c == 0) || (m.a == 0 && m.d == 0))
    }

    pub fn upper_unipotent(&self) -> Vec<usize> {
        self.select(|m| m.c == 0 && m.a == 1 && m.d == 1)
    }

    pub fn lower_unipotent(&self) -> Vec<usize> {
        self.select(|m| m.b == 0 && m.a == 1 && m.d == 1)
    }

    /// `[[0, −1], [1, 0]]`.
    pub fn weyl_element(&self) -> usize {
        let f = &self.field;
        self.index_of(&Mat2::new(0, f.neg(1), 1, 0)).unwrap()
    }

    pub fn upper(&self, x: u16) -> usize {
        self.index_of(&Mat2::new(1, x, 0, 1)).unwrap()
    }

    pub fn lower(&self, y: u16) -> usize {
        self.index_of(&Mat2::new(1, 0, y, 1)).unwrap()
    }
}

fn normalize(m: &Mat2, scalars: &[u16], f: &FiniteField) -> Mat2 {
    scalars.iter().map(|&s| m.scale(s, f)).min().unwrap()
}

impl FiniteGroup for MatrixGroup {
    fn order(&self) -> usize {
        self.elements.len()
    }

    fn identity(&self) -> usize {
        self.identity
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let m = self.elements[a].mul(&self.elements[b], &self.field);
        self.index[&normalize(&m, &self.scalars, &self.field)] as usize
    }

    fn inv(&self, a: usize) -> usize {
        let f = &self.field;
        let m = self.elements[a];
        let di = f.inv(m.det(f)).expect("invertible");
        let adj = Mat2::new(m.d, f.neg(m.b), f.neg(m.c), m.a).scale(di, f);
        self.index[&normalize(&adj, &self.scalars, f)] as usize
    }

    fn generator_indices(&self) -> Vec<usize> {
        self.generators.clone()
    }
}
