//! Orders of the finite simple groups of Lie type.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use super::field::prime_power;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    TwistedA,
    B,
    C,
    D,
    TwistedD,
    E6,
    TwistedE6,
    E7,
    E8,
    F4,
    G2,
    TriD4,
    TwistedF4,
    TwistedG2,
    TwistedB2,
}

pub const ALL_FAMILIES: [Family; 16] = [
    Family::A,
    Family::TwistedA,
    Family::B,
    Family::C,
    Family::D,
    Family::TwistedD,
    Family::E6,
    Family::TwistedE6,
    Family::E7,
    Family::E8,
    Family::F4,
    Family::G2,
    Family::TriD4,
    Family::TwistedF4,
    Family::TwistedG2,
    Family::TwistedB2,
];

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::TwistedA => "2A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::TwistedD => "2D",
            Family::E6 => "E6",
            Family::TwistedE6 => "2E6",
            Family::E7 => "E7",
            Family::E8 => "E8",
            Family::F4 => "F4",
            Family::G2 => "G2",
            Family::TriD4 => "3D4",
            Family::TwistedF4 => "2F4",
            Family::TwistedG2 => "2G2",
            Family::TwistedB2 => "2B2",
        }
    }

    /// The rank forced by the family, for the exceptional ones.
    pub fn fixed_rank(self) -> Option<u32> {
        match self {
            Family::E6 | Family::TwistedE6 => Some(6),
            Family::E7 => Some(7),
            Family::E8 => Some(8),
            Family::F4 | Family::TriD4 | Family::TwistedF4 => Some(4),
            Family::G2 | Family::TwistedG2 | Family::TwistedB2 => Some(2),
            _ => None,
        }
    }

    pub fn is_classical(self) -> bool {
        matches!(self, Family::A | Family::TwistedA | Family::B | Family::C | Family::D | Family::TwistedD)
    }

    fn min_rank(self) -> u32 {
        match self {
            Family::A => 1,
            Family::TwistedA | Family::B | Family::C => 2,
            Family::D | Family::TwistedD => 4,
            other => other.fixed_rank().unwrap(),
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = LieError;

    fn from_str(s: &str) -> Result<Self, LieError> {
        let t = s.trim().replace(['²', '^'], "2").replace('³', "3").to_ascii_uppercase();
        let t = t.strip_prefix("22").map(|r| format!("2{r}")).unwrap_or(t);
        ALL_FAMILIES.iter().copied().find(|f| f.name() == t).ok_or_else(|| LieError::UnknownFamily(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("{family} requires rank {expected}, got {l}")]
    WrongRank { family: Family, l: u32, expected: String },
    #[error("q = {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("{family} requires q = {base}^(2m+1), got {q}")]
    WrongField { family: Family, q: u64, base: u64 },
}

/// Checks `(family, l, q)` against the defining ranges.
pub fn validate(family: Family, l: u32, q: u64) -> Result<(), LieError> {
    let (p, e) = u32::try_from(q).ok().and_then(prime_power).ok_or(LieError::NotPrimePower(q))?;
    if let Some(fixed) = family.fixed_rank() {
        if l != fixed {
            return Err(LieError::WrongRank { family, l, expected: fixed.to_string() });
        }
    } else if l < family.min_rank() {
        return Err(LieError::WrongRank { family, l, expected: format!(">= {}", family.min_rank()) });
    }
    let base = match family {
        Family::TwistedB2 | Family::TwistedF4 => Some(2),
        Family::TwistedG2 => Some(3),
        _ => None,
    };
    if let Some(base) = base {
        if p != base || e % 2 == 0 {
            return Err(LieError::WrongField { family, q, base: base as u64 });
        }
    }
    Ok(())
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

/// `q^i − sign` for `sign = ±1`.
fn qm(q: &BigUint, i: u32, plus: bool) -> BigUint {
    let p = q.pow(i);
    if plus {
        p + 1u32
    } else {
        p - 1u32
    }
}

fn gcd_u(a: &BigUint, b: u64) -> BigUint {
    a.gcd(&big(b))
}

/// Order of the simple group of the given type.
pub fn lie_order(family: Family, l: u32, q: u64) -> Result<BigUint, LieError> {
    validate(family, l, q)?;
    let qb = big(q);
    let prod = |exps: &[u32]| exps.iter().fold(BigUint::one(), |acc, &i| acc * qm(&qb, i, false));
    let order = match family {
        Family::A => {
            let num = qb.pow(l * (l + 1) / 2) * prod(&(2..=l + 1).collect::<Vec<_>>());
            num / gcd_u(&big(l as u64 + 1), q - 1)
        }
        Family::TwistedA => {
            let mut num = qb.pow(l * (l + 1) / 2);
            for i in 2..=l + 1 {
                num *= qm(&qb, i, i % 2 == 1);
            }
            num / gcd_u(&big(l as u64 + 1), q + 1)
        }
        Family::B | Family::C => {
            let num = qb.pow(l * l) * prod(&(1..=l).map(|i| 2 * i).collect::<Vec<_>>());
            num / gcd_u(&big(2), q - 1)
        }
        Family::D => {
            let ql = qm(&qb, l, false);
            let num = qb.pow(l * (l - 1)) * &ql * prod(&(1..l).map(|i| 2 * i).collect::<Vec<_>>());
            num / gcd_u(&ql, 4)
        }
        Family::TwistedD => {
            let ql = qm(&qb, l, true);
            let num = qb.pow(l * (l - 1)) * &ql * prod(&(1..l).map(|i| 2 * i).collect::<Vec<_>>());
            num / gcd_u(&ql, 4)
        }
        Family::TriD4 => qb.pow(12) * (qb.pow(8) + qb.pow(4) + 1u32) * qm(&qb, 6, false) * qm(&qb, 2, false),
        Family::E6 => qb.pow(36) * prod(&[12, 9, 8, 6, 5, 2]) / gcd_u(&big(3), q - 1),
        Family::TwistedE6 => {
            let num = qb.pow(36)
                * qm(&qb, 12, false)
                * qm(&qb, 9, true)
                * qm(&qb, 8, false)
                * qm(&qb, 6, false)
                * qm(&qb, 5, true)
                * qm(&qb, 2, false);
            num / gcd_u(&big(3), q + 1)
        }
        Family::E7 => qb.pow(63) * prod(&[2, 6, 8, 10, 12, 14, 18]) / gcd_u(&big(2), q - 1),
        Family::E8 => qb.pow(120) * prod(&[2, 8, 12, 14, 18, 20, 24, 30]),
        Family::F4 => qb.pow(24) * prod(&[12, 8, 6, 2]),
        Family::G2 => qb.pow(6) * prod(&[6, 2]),
        Family::TwistedB2 => qb.pow(2) * qm(&qb, 2, true) * (&qb - 1u32),
        Family::TwistedG2 => qb.pow(3) * qm(&qb, 3, true) * (&qb - 1u32),
        Family::TwistedF4 => {
            qb.pow(12) * qm(&qb, 6, true) * qm(&qb, 4, false) * qm(&qb, 3, true) * (&qb - 1u32)
        }
    };
    debug_assert!(!order.is_zero());
    Ok(order)
}

/// Parameter triples whose order formula does not give a simple group.
pub fn is_nonsimple_case(family: Family, l: u32, q: u64) -> bool {
    matches!(
        (family, l, q),
        (Family::A, 1, 2)
            | (Family::A, 1, 3)
            | (Family::TwistedA, 2, 2)
            | (Family::B, 2, 2)
            | (Family::C, 2, 2)
            | (Family::G2, 2, 2)
            | (Family::TwistedB2, 2, 2)
            | (Family::TwistedG2, 2, 3)
            | (Family::TwistedF4, 4, 2)
    )
}

/// One `(family, l, q)` match.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LieCandidate {
    pub family: Family,
    pub l: u32,
    pub q: u64,
    /// Characteristic of the field.
    pub p: u64,
}

/// Every simple group of Lie type with `l ≤ max_l`, `q ≤ max_q` and the given order.
pub fn groups_of_order(order: &BigUint, max_l: u32, max_q: u64) -> Vec<LieCandidate> {
    let mut out = Vec::new();
    for q in 2..=max_q {
        let Some((p, _)) = u32::try_from(q).ok().and_then(prime_power) else { continue };
        for family in ALL_FAMILIES {
            let ranks: Vec<u32> = match family.fixed_rank() {
                Some(l) if l <= max_l => vec![l],
                Some(_) => vec![],
                None => (family.min_rank()..=max_l).collect(),
            };
            for l in ranks {
                if is_nonsimple_case(family, l, q) {
                    continue;
                }
                if let Ok(o) = lie_order(family, l, q) {
                    if &o == order {
                        out.push(LieCandidate { family, l, q, p: p as u64 });
                    }
                }
            }
        }
    }
    out
}
