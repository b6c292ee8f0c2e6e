//! Finite fields `F_q`, `q = p^e`, by lookup tables.
//!
//! An element is stored as the integer whose base-`p` digits are its
//! coefficients over `F_p` (lowest degree first), so 0 and 1 are the field's
//! zero and one and prime fields use ordinary residues.

use thiserror::Error;

/// Bundled moduli, coefficients lowest degree first, leading 1 included.
///
/// | q  | modulus            |
/// |----|--------------------|
/// | 4  | x^2 + x + 1        |
/// | 8  | x^3 + x + 1        |
/// | 9  | x^2 + 2x + 2       |
/// | 16 | x^4 + x + 1        |
/// | 25 | x^2 + 4x + 2       |
/// | 27 | x^3 + 2x + 1       |
/// | 32 | x^5 + x^2 + 1      |
pub const BUNDLED_MODULI: &[(u32, &[u32])] = &[
    (4, &[1, 1, 1]),
    (8, &[1, 1, 0, 1]),
    (9, &[2, 2, 1]),
    (16, &[1, 1, 0, 0, 1]),
    (25, &[2, 4, 1]),
    (27, &[1, 2, 0, 1]),
    (32, &[1, 0, 1, 0, 0, 1]),
];

/// Largest field order accepted.
pub const MAX_FIELD_ORDER: u32 = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("no bundled modulus for q = {0}; supply one")]
    MissingModulus(u32),
    #[error("modulus is not a monic polynomial of degree {0} over F_p")]
    BadModulus(u32),
    #[error("modulus is reducible over F_{0}")]
    Reducible(u32),
    #[error("field order {0} exceeds the supported maximum")]
    TooLarge(u32),
}

/// `Some((p, e))` when `q = p^e` with `p` prime and `e ≥ 1`.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut m = q;
    let mut e = 0;
    while m.is_multiple_of(p) {
        m /= p;
        e += 1;
    }
    (m == 1).then_some((p, e))
}

#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

impl FiniteField {
    /// `F_q` with the bundled modulus (or residues when `q` is prime).
    pub fn new(q: u32) -> Result<Self, FieldError> {
        let (_, e) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        if e == 1 {
            return Self::with_modulus(q, &[0, 1]);
        }
        let m = BUNDLED_MODULI.iter().find(|(qq, _)| *qq == q).ok_or(FieldError::MissingModulus(q))?.1;
        Self::with_modulus(q, m)
    }

    /// `F_q` as `F_p[x]/(modulus)`; the modulus is checked for irreducibility.
    pub fn with_modulus(q: u32, modulus: &[u32]) -> Result<Self, FieldError> {
        if q > MAX_FIELD_ORDER {
            return Err(FieldError::TooLarge(q));
        }
        let (p, e) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        if modulus.len() != e as usize + 1 || modulus[e as usize] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(FieldError::BadModulus(e));
        }
        if !is_irreducible(modulus, p) {
            return Err(FieldError::Reducible(p));
        }
        let digits = |x: u32| -> Vec<u32> { (0..e).map(|i| (x / p.pow(i)) % p).collect() };
        let encode = |d: &[u32]| -> u32 { d.iter().rev().fold(0, |acc, &c| acc * p + c) };
        let qs = q as usize;
        let mut add = vec![0u16; qs * qs];
        let mut mul = vec![0u16; qs * qs];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = encode(&s) as u16;
                mul[(a * q + b) as usize] = encode(&poly_mul_mod(&da, &db, modulus, p)) as u16;
            }
        }
        let neg: Vec<u16> = (0..q).map(|a| (0..q).find(|&b| add[(a * q + b) as usize] == 0).unwrap() as u16).collect();
        let mut inv = vec![0u16; qs];
        for a in 1..q {
            inv[a as usize] = (1..q).find(|&b| mul[(a * q + b) as usize] == 1).expect("field") as u16;
        }
        Ok(Self { p, e, q, modulus: modulus.to_vec(), add, mul, neg, inv })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u16) -> Option<u16> {
        (a != 0).then(|| self.inv[a as usize])
    }

    /// Least element generating the multiplicative group.
    pub fn primitive_element(&self) -> u16 {
        (1..self.q as u16)
            .find(|&x| {
                let mut y = x;
                let mut k = 1;
                while y != 1 {
                    y = self.mul(y, x);
                    k += 1;
                }
                k == self.q - 1
            })
            .expect("multiplicative group is cyclic")
    }

    /// The elements `±1` (a single element in characteristic 2).
    pub fn square_roots_of_one(&self) -> Vec<u16> {
        let mut r = vec![1, self.neg(1)];
        r.dedup();
        r
    }
}

/// Product of two residues modulo a monic `modulus` over `F_p`.
fn poly_mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let e = modulus.len() - 1;
    let mut prod = vec![0u32; 2 * e];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for d in (e..prod.len()).rev() {
        let c = prod[d];
        if c != 0 {
            for (k, &m) in modulus.iter().enumerate() {
                let idx = d - e + k;
                prod[idx] = (prod[idx] + p - (c * m) % p) % p;
            }
        }
    }
    prod.truncate(e);
    prod
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut g: Vec<u32> = (0..d).map(|i| (code / p.pow(i as u32)) % p).collect();
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Remainder of `f` by monic `g` over `F_p`.
fn poly_rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        for (k, &m) in g.iter().enumerate() {
            r[shift + k] = (r[shift + k] + p - (c * m) % p) % p;
        }
        r.pop();
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(13), Some((13, 1)));
    }

    #[test]
    fn bundled_moduli_are_irreducible_and_give_fields() {
        for &(q, m) in BUNDLED_MODULI {
            let f = FiniteField::with_modulus(q, m).unwrap();
            for a in 1..q as u16 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let f = FiniteField::new(q).unwrap();
            let q = q as u16;
            for a in 0..q {
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn reducible_modulus_is_rejected() {
        // x^2 + 1 = (x + 1)^2 over F_2
        assert_eq!(FiniteField::with_modulus(4, &[1, 0, 1]).unwrap_err(), FieldError::Reducible(2));
        assert_eq!(FiniteField::new(6).unwrap_err(), FieldError::NotPrimePower(6));
        assert_eq!(FiniteField::new(49).unwrap_err(), FieldError::MissingModulus(49));
        // -1 is not a square mod 7
        assert_eq!(FiniteField::with_modulus(49, &[1, 0, 1]).unwrap().order(), 49);
    }

    #[test]
    fn primitive_element_order() {
        let f = FiniteField::new(16).unwrap();
        let xi = f.primitive_element();
        let mut seen = std::collections::HashSet::new();
        let mut y = 1u16;
        for _ in 0..15 {
            y = f.mul(y, xi);
            seen.insert(y);
        }
        assert_eq!(seen.len(), 15);
    }
}
