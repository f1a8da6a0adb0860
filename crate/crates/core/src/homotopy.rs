//! Rational homotopy of the component of the space of almost complex
//! structures containing a given `J`, for simply connected base manifolds
//! in the rational sense (`b1 = 0`).

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, ErrorCode, Result};
use crate::intersect::self_intersection;
use crate::manifold::SixManifold;

/// A cyclic fundamental group. `order = 0` with `infinite = true` is `Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pi1 {
    pub order: BigInt,
    pub infinite: bool,
}

impl Pi1 {
    fn cyclic(order: BigInt) -> Self {
        let infinite = order.is_zero();
        Pi1 { order, infinite }
    }
}

impl fmt::Display for Pi1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.infinite {
            f.write_str("Z")
        } else if self.order == BigInt::from(1) {
            f.write_str("1")
        } else {
            write!(f, "Z/{}", self.order)
        }
    }
}

fn require_b1_zero(m: &SixManifold) -> Result<()> {
    let betti = m.betti.ok_or_else(|| {
        Error::new(
            ErrorCode::MissingBetti,
            format!("`{}` has no Betti numbers", m.name),
        )
    })?;
    if betti.b1 != 0 {
        return Err(Error::new(
            ErrorCode::B1Nonzero,
            format!("`{}` has b1 = {}; only b1 = 0 is handled", m.name, betti.b1),
        ));
    }
    Ok(())
}

/// `|∫(c1c2 - c3)|`, the order of `π1` of the component of `J`.
pub fn pi1_order(m: &SixManifold, acs: &str) -> Result<Pi1> {
    require_b1_zero(m)?;
    Ok(Pi1::cyclic(self_intersection(m, acs)?.abs()))
}

/// The differential of the minimal model. Only the zero differential occurs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Differential {
    Zero,
}

/// Free generators `(degree, multiplicity)` of a minimal model with zero
/// differential, with the fundamental group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelReport {
    pub manifold: String,
    pub acs: String,
    pub pi1: Pi1,
    /// Sorted by decreasing degree; zero multiplicities are omitted.
    pub generators: Vec<(u32, u64)>,
    pub differential: Differential,
    pub formal: bool,
}

impl ModelReport {
    pub fn generator_count(&self) -> u64 {
        self.generators.iter().map(|(_, n)| n).sum()
    }

    pub fn multiplicity(&self, degree: u32) -> u64 {
        self.generators
            .iter()
            .find(|(d, _)| *d == degree)
            .map_or(0, |(_, n)| *n)
    }

    /// `Λ(z7, z5, z3)` style listing without the group.
    pub fn algebra(&self) -> String {
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|&(d, n)| {
                if n == 1 {
                    format!("z{d}")
                } else {
                    format!("z{d}^{n}")
                }
            })
            .collect();
        format!("Λ({}; d=0)", gens.join(", "))
    }
}

impl fmt::Display for ModelReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, π1 = {}", self.algebra(), self.pi1)?;
        if self.formal {
            f.write_str(", formal")?;
        }
        Ok(())
    }
}

/// Minimal model `Λ(z7, z5^b2, z4^b3, z3^b2)` with `d = 0`. Requires
/// `b1 = 0` and `∫(c1c2 - c3) ≠ 0`; the vanishing case has no general answer
/// here and is reported as `chern-number-zero`.
pub fn minimal_model(m: &SixManifold, acs: &str) -> Result<ModelReport> {
    let pi1 = pi1_order(m, acs)?;
    if pi1.infinite {
        return Err(Error::new(
            ErrorCode::ChernNumberZero,
            format!(
                "∫(c1c2 - c3) = 0 for `{acs}` on `{}`; the minimal model is not determined by this data",
                m.name
            ),
        ));
    }
    let betti = m.betti.expect("checked by pi1_order");
    let (b2, b3) = (u64::from(betti.b2), u64::from(betti.b3));
    let generators = [(7, 1), (5, b2), (4, b3), (3, b2)]
        .into_iter()
        .filter(|&(_, n)| n > 0)
        .collect();
    Ok(ModelReport {
        manifold: m.name.clone(),
        acs: acs.to_string(),
        pi1,
        generators,
        differential: Differential::Zero,
        formal: true,
    })
}
