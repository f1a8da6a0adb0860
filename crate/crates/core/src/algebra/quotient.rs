//! Free modules `H*(M){1, t, ..., t^(n-1)}` with a monic relation
//! `t^n + r_(n-1) t^(n-1) + ... + r_0 = 0`, the shape of the cohomology of a
//! projectivized bundle.

use std::fmt;
use std::sync::Arc;

use num_traits::One;

use super::class::{same_ring, ManifoldClass};
use super::ring::ManifoldRing;
use super::scalar::{binomial, int, Scalar};
use crate::error::{Error, ErrorCode, Result};

/// Which component of the twistor space. Fixes the sign of fiber integration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Positive,
    Negative,
}

impl Orientation {
    /// `+1` for `Z+`, `-1` for `Z-`: the `Z-` total space is integrated
    /// against the orientation-reversed base.
    pub fn integration_sign(self) -> Scalar {
        match self {
            Orientation::Positive => int(1),
            Orientation::Negative => int(-1),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Orientation::Positive => "+",
            Orientation::Negative => "-",
        }
    }

    pub fn flipped(self) -> Orientation {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl std::str::FromStr for Orientation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" | "positive" => Ok(Orientation::Positive),
            "-" | "minus" | "negative" => Ok(Orientation::Negative),
            _ => Err(Error::new(
                ErrorCode::InvalidParams,
                format!("orientation must be `+` or `-`, got `{s}`"),
            )),
        }
    }
}

/// `H*(M)[t] / (t^n + r_(n-1) t^(n-1) + ... + r_0)` with `deg t = 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientRing {
    base: Arc<ManifoldRing>,
    relation: Vec<ManifoldClass>,
}

impl QuotientRing {
    /// `relation[i]` is the coefficient of `t^i` and must have degree `2(n - i)`.
    pub fn new(base: Arc<ManifoldRing>, relation: Vec<ManifoldClass>) -> Result<Arc<Self>> {
        let n = relation.len();
        if n == 0 {
            return Err(Error::new(ErrorCode::RelationMismatch, "empty relation"));
        }
        for (i, r) in relation.iter().enumerate() {
            if !same_ring(r.ring(), &base) {
                return Err(Error::new(
                    ErrorCode::RingMismatch,
                    "relation coefficient lives in another ring",
                ));
            }
            if r.degree() != 2 * (n - i) as i32 {
                return Err(Error::new(
                    ErrorCode::DegreeMismatch,
                    format!(
                        "coefficient of t^{i} must have degree {}, got {}",
                        2 * (n - i),
                        r.degree()
                    ),
                ));
            }
        }
        Ok(Arc::new(QuotientRing { base, relation }))
    }

    pub fn base(&self) -> &Arc<ManifoldRing> {
        &self.base
    }

    pub fn module_rank(&self) -> usize {
        self.relation.len()
    }

    /// Lower coefficients `r_0, ..., r_(n-1)` of the monic relation.
    pub fn relation(&self) -> &[ManifoldClass] {
        &self.relation
    }

    /// Real dimension of the total space.
    pub fn top_degree(&self) -> i32 {
        self.base.dim() as i32 + 2 * (self.module_rank() as i32 - 1)
    }

    pub fn element(
        self: &Arc<Self>,
        degree: i32,
        components: Vec<ManifoldClass>,
    ) -> Result<TwistorElement> {
        if components.len() != self.module_rank() {
            return Err(Error::new(
                ErrorCode::DegreeMismatch,
                format!(
                    "expected {} components, got {}",
                    self.module_rank(),
                    components.len()
                ),
            ));
        }
        self.from_polynomial(degree, components)
    }

    /// Reduces `sum_k coeffs[k] t^k` (any length) modulo the relation.
    pub fn from_polynomial(
        self: &Arc<Self>,
        degree: i32,
        mut coeffs: Vec<ManifoldClass>,
    ) -> Result<TwistorElement> {
        let n = self.module_rank();
        for (k, c) in coeffs.iter().enumerate() {
            if !same_ring(c.ring(), &self.base) {
                return Err(Error::new(
                    ErrorCode::RingMismatch,
                    "component lives in another ring",
                ));
            }
            if c.degree() != degree - 2 * k as i32 {
                return Err(Error::new(
                    ErrorCode::DegreeMismatch,
                    format!(
                        "coefficient of t^{k} must have degree {}, got {}",
                        degree - 2 * k as i32,
                        c.degree()
                    ),
                ));
            }
        }
        while coeffs.len() < n {
            let k = coeffs.len() as i32;
            coeffs.push(self.base.zero(degree - 2 * k));
        }
        // t^k = -t^(k-n) (r_(n-1) t^(n-1) + ... + r_0), highest power first.
        while coeffs.len() > n {
            let k = coeffs.len() - 1;
            let lead = coeffs.pop().expect("non-empty");
            if lead.is_zero() {
                continue;
            }
            for (i, r) in self.relation.iter().enumerate() {
                let target = k - n + i;
                let term = lead.mul_truncated(r)?;
                coeffs[target] = coeffs[target].sub(&term)?;
            }
        }
        Ok(TwistorElement {
            ring: self.clone(),
            degree,
            components: coeffs,
        })
    }

    pub fn zero(self: &Arc<Self>, degree: i32) -> TwistorElement {
        let components = (0..self.module_rank())
            .map(|i| self.base.zero(degree - 2 * i as i32))
            .collect();
        TwistorElement {
            ring: self.clone(),
            degree,
            components,
        }
    }

    pub fn one(self: &Arc<Self>) -> TwistorElement {
        self.pullback(&self.base.one())
            .expect("unit lives in the base ring")
    }

    /// The generator `t` itself (as `t^1`, reduced when `n = 1`).
    pub fn t(self: &Arc<Self>) -> TwistorElement {
        self.t_power(1)
    }

    pub fn t_power(self: &Arc<Self>, k: usize) -> TwistorElement {
        let degree = 2 * k as i32;
        let mut coeffs: Vec<ManifoldClass> = (0..k)
            .map(|i| self.base.zero(degree - 2 * i as i32))
            .collect();
        coeffs.push(self.base.one());
        self.from_polynomial(degree, coeffs)
            .expect("powers of t are well formed")
    }

    /// The pullback `π*γ` of a base class.
    pub fn pullback(self: &Arc<Self>, class: &ManifoldClass) -> Result<TwistorElement> {
        self.from_polynomial(class.degree(), vec![class.clone()])
    }

    fn check_same(&self, other: &Arc<QuotientRing>) -> Result<()> {
        if std::ptr::eq(self, &**other) || self == &**other {
            Ok(())
        } else {
            Err(Error::new(
                ErrorCode::RelationMismatch,
                "elements belong to quotient rings with different relations",
            ))
        }
    }
}

/// A homogeneous element `sum_i components[i] t^i` of a [`QuotientRing`].
#[derive(Debug, Clone)]
pub struct TwistorElement {
    ring: Arc<QuotientRing>,
    degree: i32,
    components: Vec<ManifoldClass>,
}

impl PartialEq for TwistorElement {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.components == other.components
            && (Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring)
    }
}

impl TwistorElement {
    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    /// Coefficient of `t^i`, a base class of degree `degree - 2i`.
    pub fn component(&self, i: usize) -> &ManifoldClass {
        &self.components[i]
    }

    pub fn components(&self) -> &[ManifoldClass] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(ManifoldClass::is_zero)
    }

    fn check_same_degree(&self, other: &TwistorElement) -> Result<()> {
        self.ring.check_same(&other.ring)?;
        if self.degree != other.degree {
            return Err(Error::new(
                ErrorCode::DegreeMismatch,
                format!(
                    "cannot add degree {} to degree {}",
                    self.degree, other.degree
                ),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &TwistorElement) -> Result<TwistorElement> {
        self.check_same_degree(other)?;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(TwistorElement {
            ring: self.ring.clone(),
            degree: self.degree,
            components,
        })
    }

    pub fn sub(&self, other: &TwistorElement) -> Result<TwistorElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TwistorElement {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, s: &Scalar) -> TwistorElement {
        TwistorElement {
            ring: self.ring.clone(),
            degree: self.degree,
            components: self.components.iter().map(|c| c.scale(s)).collect(),
        }
    }

    /// Product in the quotient ring: polynomial multiplication in `t` with
    /// cup-product coefficients, then reduction by the relation.
    pub fn mul(&self, other: &TwistorElement) -> Result<TwistorElement> {
        self.ring.check_same(&other.ring)?;
        let degree = self.degree + other.degree;
        let base = self.ring.base();
        let len = self.components.len() + other.components.len() - 1;
        let mut coeffs: Vec<ManifoldClass> =
            (0..len).map(|k| base.zero(degree - 2 * k as i32)).collect();
        for (i, a) in self.components.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.components.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul_truncated(b)?)?;
            }
        }
        self.ring.from_polynomial(degree, coeffs)
    }

    /// Multiplies by a base class pulled back to the total space.
    pub fn mul_base(&self, class: &ManifoldClass) -> Result<TwistorElement> {
        self.mul(&self.ring.pullback(class)?)
    }

    pub fn pow(&self, n: u32) -> Result<TwistorElement> {
        let mut acc = self.ring.one();
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Fiber integration followed by base integration: the integral of the
    /// `t^(n-1)` component, times the orientation's sign.
    pub fn integrate(&self, orientation: Orientation) -> Result<Scalar> {
        let top = self.ring.top_degree();
        if self.degree != top {
            return Err(Error::new(
                ErrorCode::NonTopDegree,
                format!(
                    "cannot integrate a degree {} element over a {}-dimensional total space",
                    self.degree, top
                ),
            ));
        }
        let n = self.ring.module_rank();
        Ok(orientation.integration_sign() * self.components[n - 1].integrate()?)
    }
}

impl fmt::Display for TwistorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.components.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let power = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            if c.degree() == 0 && c.coefficients()[0].is_one() && i > 0 {
                f.write_str(&power)?;
            } else if i == 0 {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{power}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Coefficients of `p(t + a)` where `p(t) = sum_k coeffs[k] t^k` is
/// homogeneous of degree `degree` and `a` has degree 2. No reduction is
/// applied; products above the top base degree vanish.
pub fn shift_generator(
    degree: i32,
    coeffs: &[ManifoldClass],
    a: &ManifoldClass,
) -> Result<Vec<ManifoldClass>> {
    if a.degree() != 2 {
        return Err(Error::new(
            ErrorCode::DegreeMismatch,
            "generator shift must have degree 2",
        ));
    }
    let ring = a.ring();
    let mut powers = vec![ring.one()];
    for k in 1..coeffs.len() {
        let next = powers[k - 1].mul_truncated(a)?;
        powers.push(next);
    }
    let mut out: Vec<ManifoldClass> = (0..coeffs.len())
        .map(|j| ring.zero(degree - 2 * j as i32))
        .collect();
    for (k, c) in coeffs.iter().enumerate() {
        for (j, slot) in out.iter_mut().enumerate().take(k + 1) {
            let term = c.mul_truncated(&powers[k - j])?.scale(&binomial(k, j));
            *slot = slot.add(&term)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::{Betti, RingBuilder};

    fn cp3() -> Arc<ManifoldRing> {
        RingBuilder::new("CP3", 6)
            .betti(Betti {
                b1: 0,
                b2: 1,
                b3: 0,
            })
            .basis("x", 2)
            .basis("x2", 4)
            .basis("vol", 6)
            .product("x", "x", vec![(int(1), "x2".into())])
            .product("x", "x2", vec![(int(1), "vol".into())])
            .build()
            .unwrap()
    }

    fn s4() -> Arc<ManifoldRing> {
        RingBuilder::new("S4", 4).basis("g", 4).build().unwrap()
    }

    /// t^4 + 8x t^3 + 22x^2 t^2 + 20x^3 t over CP3.
    fn cp3_standard(r: &Arc<ManifoldRing>) -> Arc<QuotientRing> {
        QuotientRing::new(
            r.clone(),
            vec![
                r.zero(8),
                r.class(6, &[(20, "vol")]).unwrap(),
                r.class(4, &[(22, "x2")]).unwrap(),
                r.class(2, &[(8, "x")]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn one_reduction_step() {
        let r = cp3();
        let q = cp3_standard(&r);
        let product = q.t().mul(&q.t_power(3)).unwrap();
        let expected = q
            .element(
                8,
                vec![
                    r.zero(8),
                    r.class(6, &[(-20, "vol")]).unwrap(),
                    r.class(4, &[(-22, "x2")]).unwrap(),
                    r.class(2, &[(-8, "x")]).unwrap(),
                ],
            )
            .unwrap();
        assert_eq!(product, expected);
    }

    #[test]
    fn unit_is_neutral() {
        let r = cp3();
        let q = cp3_standard(&r);
        let u = q
            .pullback(&r.class(2, &[(5, "x")]).unwrap())
            .unwrap()
            .add(&q.t().scale(&int(3)))
            .unwrap();
        assert_eq!(u.mul(&q.one()).unwrap(), u);
        assert_eq!(q.one().mul(&u).unwrap(), u);
    }

    #[test]
    fn s4_generator_squares_to_volume() {
        let r = s4();
        let g = r.class(4, &[(1, "g")]).unwrap();
        let q = QuotientRing::new(r.clone(), vec![g.neg(), r.zero(2)]).unwrap();
        let tt = q.t().mul(&q.t()).unwrap();
        assert_eq!(tt, q.pullback(&g).unwrap());
    }

    #[test]
    fn integration_extracts_top_coefficient() {
        let r = cp3();
        let q = cp3_standard(&r);
        let x3 = r.class(6, &[(20, "vol")]).unwrap();
        let u = q.pullback(&x3).unwrap().mul(&q.t_power(3)).unwrap();
        assert_eq!(u.integrate(Orientation::Positive).unwrap(), int(20));
        assert_eq!(u.integrate(Orientation::Negative).unwrap(), int(-20));
        assert_eq!(
            q.t().integrate(Orientation::Positive).unwrap_err().code,
            ErrorCode::NonTopDegree
        );
    }

    #[test]
    fn pullbacks_integrate_to_zero() {
        let r = s4();
        let g = r.class(4, &[(1, "g")]).unwrap();
        let q = QuotientRing::new(r.clone(), vec![g.neg(), r.zero(2)]).unwrap();
        // A degree-6 pullback has no room in H*(S4) and is zero.
        let u = q.pullback(&r.zero(6)).unwrap();
        assert_eq!(u.integrate(Orientation::Positive).unwrap(), int(0));
    }

    #[test]
    fn different_relations_do_not_multiply() {
        let r = cp3();
        let q1 = cp3_standard(&r);
        let q2 =
            QuotientRing::new(r.clone(), vec![r.zero(8), r.zero(6), r.zero(4), r.zero(2)]).unwrap();
        assert_eq!(
            q1.t().mul(&q2.t()).unwrap_err().code,
            ErrorCode::RelationMismatch
        );
    }

    #[test]
    fn shift_by_zero_is_identity() {
        let r = cp3();
        let coeffs = vec![
            r.class(6, &[(20, "vol")]).unwrap(),
            r.class(4, &[(22, "x2")]).unwrap(),
            r.class(2, &[(8, "x")]).unwrap(),
            r.one(),
        ];
        assert_eq!(shift_generator(6, &coeffs, &r.zero(2)).unwrap(), coeffs);
    }

    #[test]
    fn shift_matches_binomial_expansion() {
        // (t + x)^3 = t^3 + 3x t^2 + 3x^2 t + x^3
        let r = cp3();
        let coeffs = vec![r.zero(6), r.zero(4), r.zero(2), r.one()];
        let x = r.class(2, &[(1, "x")]).unwrap();
        let out = shift_generator(6, &coeffs, &x).unwrap();
        assert_eq!(out[0], r.class(6, &[(1, "vol")]).unwrap());
        assert_eq!(out[1], r.class(4, &[(3, "x2")]).unwrap());
        assert_eq!(out[2], r.class(2, &[(3, "x")]).unwrap());
        assert_eq!(out[3], r.one());
    }
}
