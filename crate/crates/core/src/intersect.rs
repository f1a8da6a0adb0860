//! Homological intersection numbers of almost complex structures, viewed as
//! sections of the positive twistor space.
//!
//! The closed forms are evaluated directly from Chern classes. The oracle
//! multiplies Poincaré duals in the quotient ring and integrates, so the two
//! paths only share the ring arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::algebra::{format_scalar, ratio, shift_generator, Orientation, Scalar};
use crate::error::{Error, ErrorCode, Result};
use crate::manifold::{AcsData, SixManifold};
use crate::twistor::{
    change_generator, pd_polynomial, require_integer, twistor_relation6_unchecked,
};

/// `∫(c1c2 - c3)` for a named structure; works for Chern-number-only data.
pub fn self_intersection(m: &SixManifold, acs: &str) -> Result<BigInt> {
    let n = m.chern_numbers(acs)?;
    require_integer(&(n.c1c2 - n.c3), "self-intersection")
}

/// `∫(c1c2 - c3)` from ring data.
pub fn self_intersection_acs(j: &AcsData) -> Result<BigInt> {
    let v = j.c1.mul(&j.c2)?.sub(&j.c3)?.integrate()?;
    require_integer(&v, "self-intersection")
}

/// The closed form with the weight of the cubic terms as a parameter;
/// the true formula uses `1/8`.
#[doc(hidden)]
pub fn intersection_closed_form_weighted(
    j: &AcsData,
    jp: &AcsData,
    cubic_weight: &Scalar,
) -> Result<Scalar> {
    let (c1, c1p) = (&j.c1, &jp.c1);
    let cubic = c1
        .pow(3)?
        .add(&c1.mul(c1)?.mul(c1p)?)?
        .sub(&c1.mul(&c1p.mul(c1p)?)?)?
        .sub(&c1p.pow(3)?)?;
    let mixed = c1.mul(&jp.c2)?.add(&c1p.mul(&jp.c2)?)?;
    cubic
        .scale(cubic_weight)
        .add(&mixed.scale(&ratio(1, 2)))?
        .sub(&j.c3)?
        .integrate()
}

/// `∫[(c1³ + c1²c1' - c1c1'² - c1'³)/8 + (c1c2' + c1'c2')/2 - c3]`, exact.
pub fn intersection_closed_form(j: &AcsData, jp: &AcsData) -> Result<Scalar> {
    intersection_closed_form_weighted(j, jp, &ratio(1, 8))
}

/// Intersection number of the sections of `J` and `J'`; a non-integral
/// value means the Chern data is inconsistent.
pub fn intersection(j: &AcsData, jp: &AcsData) -> Result<BigInt> {
    require_integer(&intersection_closed_form(j, jp)?, "intersection")
}

/// The product of Poincaré duals, with the dual of `J'` rewritten through
/// `t' = t + (c1 - c1')/2`, integrated over `Z+`.
pub fn intersection_oracle(j: &AcsData, jp: &AcsData) -> Result<Scalar> {
    let ring = twistor_relation6_unchecked(j, Orientation::Positive)?;
    let q = ring.quotient();
    let pd = q.from_polynomial(6, pd_polynomial(j)?)?;
    let change = change_generator(j, jp)?;
    let shifted = shift_generator(6, &pd_polynomial(jp)?, &change.a)?;
    let pd_prime = q.from_polynomial(6, shifted)?;
    pd.mul(&pd_prime)?.integrate(Orientation::Positive)
}

/// Both evaluations of one intersection number.
#[derive(Debug, Clone, PartialEq)]
pub struct IntersectionReport {
    pub manifold: String,
    pub acs: (String, String),
    pub closed_form: Scalar,
    pub oracle: Scalar,
    pub agree: bool,
    pub integral: bool,
}

impl IntersectionReport {
    /// The common integer value, if both paths agree on one.
    pub fn value(&self) -> Option<BigInt> {
        (self.agree && self.integral).then(|| self.closed_form.to_integer())
    }
}

impl fmt::Display for IntersectionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} `{}` · `{}`: closed form {}, oracle {}",
            self.manifold,
            self.acs.0,
            self.acs.1,
            format_scalar(&self.closed_form),
            format_scalar(&self.oracle)
        )
    }
}

pub fn intersection_report(m: &SixManifold, a: &str, b: &str) -> Result<IntersectionReport> {
    let (j, jp) = (m.acs(a)?, m.acs(b)?);
    let closed_form = intersection_closed_form(j, jp)?;
    let oracle = intersection_oracle(j, jp)?;
    Ok(IntersectionReport {
        manifold: m.name.clone(),
        acs: (a.to_string(), b.to_string()),
        agree: closed_form == oracle,
        integral: closed_form.is_integer(),
        closed_form,
        oracle,
    })
}

/// Pairwise intersection numbers in declaration order, checked against the
/// oracle cell by cell.
pub fn intersection_matrix(m: &SixManifold, names: &[&str]) -> Result<Vec<Vec<BigInt>>> {
    let mut rows = Vec::with_capacity(names.len());
    for a in names {
        let mut row = Vec::with_capacity(names.len());
        for b in names {
            let report = intersection_report(m, a, b)?;
            let value = report
                .value()
                .ok_or_else(|| Error::new(ErrorCode::NonIntegralResult, report.to_string()))?;
            row.push(value);
        }
        rows.push(row);
    }
    Ok(rows)
}

/// `k³ + k²ℓ + kℓ² + ℓ³ - 2k - 2ℓ - 4` for the structures `c1 = 2kx`,
/// `c1' = 2ℓx` on CP3.
pub fn cp3_closed_form(k: i64, l: i64) -> BigInt {
    let (k, l) = (BigInt::from(k), BigInt::from(l));
    &k * &k * &k + &k * &k * &l + &k * &l * &l + &l * &l * &l - 2 * &k - 2 * &l - 4
}

/// Sign of a self-intersection: a negative value rules out a holomorphic
/// representative of the section's homology class.
pub fn is_negative(v: &BigInt) -> bool {
    v.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;
    use crate::manifold::{builtin, cp3_acs_name};

    fn six(name: &str, params: &[i64]) -> SixManifold {
        builtin(name, params).unwrap().six().unwrap().clone()
    }

    #[test]
    fn self_intersection_examples() {
        assert_eq!(
            self_intersection(&six("S6", &[]), "std").unwrap(),
            BigInt::from(-2)
        );
        assert_eq!(
            self_intersection(&six("gS3xS3", &[4]), "std").unwrap(),
            BigInt::from(6)
        );
        assert_eq!(
            self_intersection(&six("CP3", &[]), "k=3").unwrap(),
            BigInt::from(92)
        );
    }

    #[test]
    fn cp3_pairs() {
        let m = six("CP3", &[]);
        let std = m.acs("std").unwrap();
        let other = m.acs("k=-1").unwrap();
        assert_eq!(intersection(std, other).unwrap(), BigInt::from(-1));
        assert_eq!(intersection_oracle(std, other).unwrap(), int(-1));
        assert_eq!(intersection_oracle(std, std).unwrap(), int(20));
        for l in -5..=-1 {
            let v = intersection(std, m.acs(&cp3_acs_name(l)).unwrap()).unwrap();
            assert!(is_negative(&v), "l = {l}");
        }
    }

    #[test]
    fn cp3_closed_form_values() {
        assert_eq!(cp3_closed_form(2, 2), BigInt::from(20));
        assert_eq!(cp3_closed_form(2, -1), BigInt::from(-1));
        for k in -5..=5 {
            assert_eq!(
                cp3_closed_form(k, k),
                BigInt::from(4 * k * k * k - 4 * k - 4)
            );
        }
    }

    #[test]
    fn s2s4_oracle_is_constant() {
        let m = six("gS2xS4", &[1]);
        let names = m.acs_names();
        for a in &names {
            for b in &names {
                let r = intersection_report(&m, a, b).unwrap();
                assert_eq!(r.value(), Some(BigInt::from(-4)), "{a} {b}");
            }
        }
    }

    #[test]
    fn matrix_diagonal_and_symmetry() {
        let m = six("CP3", &[-1, 2]);
        let names = ["k=-1", "k=0", "k=1", "std"];
        let mx = intersection_matrix(&m, &names).unwrap();
        let diag: Vec<BigInt> = (0..4).map(|i| mx[i][i].clone()).collect();
        assert_eq!(diag, [-4, -4, -4, 20].map(BigInt::from));
        for (i, row) in mx.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                assert_eq!(v, &mx[j][i]);
            }
        }
    }

    #[test]
    fn stubs_need_ring_data_for_pairs() {
        let m = six("K3xS2", &[]);
        assert_eq!(self_intersection(&m, "m=2").unwrap(), BigInt::from(48));
        let err = intersection_report(&m, "m=1", "m=2").unwrap_err();
        assert_eq!(err.code, ErrorCode::InsufficientRingData);
    }

    #[test]
    fn wrong_weight_breaks_oracle_agreement() {
        let m = six("CP3", &[]);
        let (j, jp) = (m.acs("std").unwrap(), m.acs("k=-1").unwrap());
        let mutated = intersection_closed_form_weighted(j, jp, &ratio(1, 4)).unwrap();
        assert_ne!(mutated, intersection_oracle(j, jp).unwrap());
    }
}
