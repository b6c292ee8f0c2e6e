//! Exact arithmetic of the class-size bounds for groups of Lie type.
//!
//! `k` is the table's upper bound for the Cartan subgroup order, `w = |W|`,
//! `m₀` and `m₁` are the tabulated lower bounds on class sizes and `r_m` the
//! tabulated bound on the number of small-class elements in a coset. The check
//! is `k/m + r_m/m₀ ≤ 1/(2wk)`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::cartan::{validate, Family, LieError};

fn int(x: u64) -> BigInt {
    BigInt::from(x)
}

fn rat(x: BigInt) -> BigRational {
    BigRational::from_integer(x)
}

fn frac(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

fn serialize_ratio<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_ratio(r))
}

fn serialize_opt_ratio<S: Serializer>(r: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&format_ratio(r)),
        None => s.serialize_none(),
    }
}

fn serialize_display<S: Serializer, T: std::fmt::Display>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// `a/b` in lowest terms, or `a` when the denominator is 1.
pub fn format_ratio(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// The table row for one group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LieFamilyData {
    pub family: Family,
    pub l: u32,
    pub q: u64,
    /// Lower bound on the class sizes of nontrivial Cartan elements.
    #[serde(serialize_with = "serialize_ratio")]
    pub m0: BigRational,
    /// Lower bound on class sizes when `ν ≥ 2`, for the rows that have one.
    #[serde(serialize_with = "serialize_opt_ratio")]
    pub m1: Option<BigRational>,
    #[serde(serialize_with = "serialize_opt_ratio")]
    pub r_m: Option<BigRational>,
    /// Upper bound on the Cartan subgroup order.
    #[serde(serialize_with = "serialize_ratio")]
    pub h_bound: BigRational,
    #[serde(serialize_with = "serialize_display")]
    pub w: BigUint,
    /// Minimal rank of the class `𝓛` (classical families).
    pub l0: Option<u32>,
    /// Minimal `q / l` of the class `𝓛` (classical families).
    pub a: Option<u32>,
}

/// Table data for `family` at `(l, q)`; `B` expects odd `q`.
pub fn lie_family_data(family: Family, l: u32, q: u64) -> LieFamilyData {
    let qq = int(q);
    let qp = |e: u32| qq.pow(e);
    let l64 = l as u64;
    let li = int(l64);
    let (m0, m1, r_m, h, w, l0, a): (BigRational, Option<BigRational>, Option<BigRational>, BigInt, BigInt, _, _) =
        match family {
            Family::A => (
                frac(qp(2 * l), int(2)),
                Some(frac(qp(4 * (l - 1)), int(2))),
                Some(rat(&li * (&li + 1) * (&qq - 1u32).pow(2u32) / 2 - 1)),
                (&qq - 1u32).pow(l),
                factorial(l64 + 1),
                Some(7),
                Some(4),
            ),
            Family::TwistedA => {
                let b = l.div_ceil(2);
                let h = (&qq - 1u32).pow(b) * (&qq + 1u32).pow(l / 2);
                let w = BigInt::from(2u32).pow(b) * factorial(b as u64);
                let den = int(2) * (&qq + 1u32);
                if l % 2 == 1 {
                    (frac(qp(4 * l - 3), den), None, None, h, w, Some(6), Some(4))
                } else {
                    let r = frac((&li + 1u32) * (&qq + 1u32).pow(2u32), int(2)) + rat(qq.clone());
                    (frac(qp(2 * l + 1), den.clone()), Some(frac(qp(4 * l - 3), den)), Some(r), h, w, Some(6), Some(4))
                }
            }
            Family::B => {
                let h = (&qq - 1u32).pow(l) / 2;
                let w = BigInt::from(2u32).pow(l) * factorial(l64);
                let den = int(4) * (&qq + 1u32);
                let half = l64 * (q - 1) / 2;
                if half % 2 == 1 {
                    (frac(qp(4 * l - 1), den), None, None, h, w, Some(4), Some(4))
                } else {
                    let r = frac(&li * (&qq - 3u32), int(2)) + BigRational::one();
                    (frac(qp(2 * l + 1), den.clone()), Some(frac(qp(4 * l - 1), den)), Some(r), h, w, Some(4), Some(4))
                }
            }
            Family::C => (
                frac(qp(4 * l - 4), int(2)),
                None,
                None,
                (&qq - 1u32).pow(l),
                BigInt::from(2u32).pow(l) * factorial(l64),
                Some(3),
                Some(4),
            ),
            Family::D | Family::TwistedD => {
                let h = if family == Family::D {
                    (&qq - 1u32).pow(l)
                } else {
                    (&qq - 1u32).pow(l - 1) * (&qq + 1u32)
                };
                let w = BigInt::from(2u32).pow(l - 1) * factorial(l64);
                (frac(qp(4 * l - 3), int(4) * (&qq + 1u32)), None, None, h, w, Some(4), Some(2))
            }
            _ => {
                let (m0, h, w) = exceptional_row(family, &qq);
                (m0, None, None, h, w, None, None)
            }
        };
    LieFamilyData {
        family,
        l,
        q,
        m0,
        m1,
        r_m,
        h_bound: rat(h),
        w: w.to_biguint().expect("|W| is positive"),
        l0,
        a,
    }
}

fn exceptional_row(family: Family, q: &BigInt) -> (BigRational, BigInt, BigInt) {
    let qp = |e: u32| q.pow(e);
    let qm1 = q - 1u32;
    let w = |e2: u32, e3: u32, e5: u32, e7: u32| {
        BigInt::from(2u32).pow(e2) * BigInt::from(3u32).pow(e3) * BigInt::from(5u32).pow(e5) * BigInt::from(7u32).pow(e7)
    };
    match family {
        Family::E8 => (rat(qp(112)), qm1.pow(8u32), w(14, 5, 2, 1)),
        Family::E7 => (frac(qp(64), int(2)), qm1.pow(7u32), w(10, 4, 1, 1)),
        Family::E6 => (frac(qp(30), int(3)), qm1.pow(6u32), w(7, 4, 1, 0)),
        Family::TwistedE6 => (frac(qp(30), int(3)), qm1.pow(4u32) * (q + 1u32).pow(2u32), w(7, 2, 0, 0)),
        Family::F4 => (rat(qp(16)), qm1.pow(4u32), w(7, 2, 0, 0)),
        Family::G2 => (rat(qp(4) * (qp(3) - 1u32)), qm1.pow(2u32), w(2, 1, 0, 0)),
        Family::TriD4 => (rat(qp(16)), &qm1 * (qp(3) - 1u32), w(2, 1, 0, 0)),
        Family::TwistedF4 => (rat(qp(6) * &qm1 * (qp(3) + 1u32)), qm1.pow(2u32), w(4, 0, 0, 0)),
        Family::TwistedG2 => (rat(qp(2) * (qp(2) + q + 1u32)), qm1, w(1, 0, 0, 0)),
        Family::TwistedB2 => (rat(qp(2) * &qm1), qm1, w(1, 0, 0, 0)),
        _ => unreachable!("classical family"),
    }
}

/// Which class-size bound plays the role of `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MChoice {
    /// Every nontrivial Cartan element has `ν ≥ 2`, or an exceptional family.
    M0,
    /// Cartan elements with `ν = 1` exist; `r_m` from the table.
    M1,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LieBoundReport {
    /// The family actually checked (`B` with even `q` becomes `C`).
    pub family: Family,
    pub requested_family: Family,
    pub l: u32,
    pub q: u64,
    pub m_choice: MChoice,
    #[serde(serialize_with = "serialize_ratio")]
    pub m: BigRational,
    #[serde(serialize_with = "serialize_ratio")]
    pub r_m: BigRational,
    #[serde(serialize_with = "serialize_ratio")]
    pub lhs: BigRational,
    #[serde(serialize_with = "serialize_ratio")]
    pub rhs: BigRational,
    pub holds: bool,
    /// `l ≥ l₀` and `q ≥ a·l`; `None` for exceptional families.
    pub in_class_l: Option<bool>,
    pub data: LieFamilyData,
    pub notes: Vec<String>,
}

/// Evaluates `k/m + r_m/m₀ ≤ 1/(2wk)` exactly. For the exceptional families
/// `m = m₀` and `r_m = 0`, so this is `m₀ ≥ 2wk²`.
pub fn lie_bound_check(family: Family, l: u32, q: u64) -> Result<LieBoundReport, LieError> {
    let mut notes = Vec::new();
    match validate(family, l, q) {
        Ok(()) => {}
        Err(LieError::WrongField { .. }) => {
            notes.push(format!("q = {q} is not a field order for {family}; evaluated as arithmetic only"))
        }
        Err(e) => return Err(e),
    }
    let requested_family = family;
    let family = if family == Family::B && q.is_even() {
        notes.push(format!("B{l}({q}) is isomorphic to C{l}({q}) for even q; checked as C"));
        Family::C
    } else {
        family
    };
    let data = lie_family_data(family, l, q);
    let (m_choice, m, r_m) = match (&data.m1, &data.r_m) {
        (Some(m1), Some(r)) => (MChoice::M1, m1.clone(), r.clone()),
        _ => (MChoice::M0, data.m0.clone(), BigRational::zero()),
    };
    let k = &data.h_bound;
    let w = rat(BigInt::from(data.w.clone()));
    let lhs = k / &m + &r_m / &data.m0;
    let rhs = BigRational::one() / (rat(int(2)) * w * k);
    let in_class_l = match (data.l0, data.a) {
        (Some(l0), Some(a)) => {
            let inside = l >= l0 && q >= a as u64 * l as u64;
            if !inside {
                notes.push(format!("outside class L (needs l >= {l0} and q >= {a}l)"));
            }
            Some(inside)
        }
        _ => None,
    };
    Ok(LieBoundReport { family, requested_family, l, q, m_choice, holds: lhs <= rhs, m, r_m, lhs, rhs, in_class_l, data, notes })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: u64, d: u64) -> BigRational {
        frac(int(n), int(d))
    }

    #[test]
    fn table_spot_values() {
        let a = lie_family_data(Family::A, 7, 29);
        assert_eq!(a.m0, frac(int(29).pow(14u32), int(2)));
        assert_eq!(a.r_m, Some(rat(int(7 * 8 * 28 * 28 / 2 - 1))));
        assert_eq!(a.w, BigUint::from(40320u32));
        let c = lie_family_data(Family::C, 3, 13);
        assert_eq!(c.m0, frac(int(13).pow(8u32), int(2)));
        assert_eq!(c.h_bound, rat(int(12u64.pow(3))));
        assert_eq!(c.w, BigUint::from(48u32));
        let b = lie_family_data(Family::B, 4, 17);
        // 4·16/2 = 32 is even
        assert_eq!(b.m1, Some(frac(int(17).pow(15u32), int(72))));
        assert_eq!(b.r_m, Some(r(4 * 14 + 2, 2)));
        let b_odd = lie_family_data(Family::B, 3, 3);
        assert!(b_odd.m1.is_none());
        let ta = lie_family_data(Family::TwistedA, 6, 25);
        assert_eq!(ta.h_bound, rat(int(24).pow(3u32) * int(26).pow(3u32)));
        assert_eq!(ta.w, BigUint::from(8u32 * 6));
        assert_eq!(ta.r_m, Some(frac(int(7 * 26 * 26), int(2)) + rat(int(25))));
        let d = lie_family_data(Family::TwistedD, 4, 8);
        assert_eq!(d.h_bound, rat(int(7 * 7 * 7 * 9)));
        assert_eq!(d.w, BigUint::from(192u32));
        let e8 = lie_family_data(Family::E8, 8, 2);
        assert_eq!(e8.w, BigUint::from(696729600u64));
        assert_eq!(e8.h_bound, rat(int(1)));
        let g2 = lie_family_data(Family::G2, 2, 3);
        assert_eq!(g2.m0, rat(int(81 * 26)));
    }

    #[test]
    fn checks_in_class_l() {
        for (f, l, q) in [(Family::C, 3, 13), (Family::A, 7, 29), (Family::TwistedA, 6, 25), (Family::D, 4, 8)] {
            let rep = lie_bound_check(f, l, q).unwrap();
            assert!(rep.holds, "{f}{l}({q})");
            assert_eq!(rep.in_class_l, Some(true));
        }
        assert_eq!(lie_bound_check(Family::A, 7, 29).unwrap().m_choice, MChoice::M1);
    }

    #[test]
    fn small_parameters_are_flagged() {
        let rep = lie_bound_check(Family::A, 2, 5).unwrap();
        assert_eq!(rep.in_class_l, Some(false));
        assert!(!rep.holds);
        let redirected = lie_bound_check(Family::B, 3, 16).unwrap();
        assert_eq!(redirected.family, Family::C);
        assert!(lie_bound_check(Family::E8, 7, 2).is_err());
        let suzuki = lie_bound_check(Family::TwistedB2, 2, 3).unwrap();
        assert_eq!(suzuki.notes.len(), 1);
    }

    #[test]
    fn fractions_print_in_lowest_terms() {
        assert_eq!(format_ratio(&r(6, 4)), "3/2");
        assert_eq!(format_ratio(&r(4, 2)), "2");
    }
}
