use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::ring::{BasisRef, ManifoldRing};
use super::scalar::Scalar;
use crate::error::{Error, ErrorCode, Result};

/// A homogeneous even-degree cohomology class of a [`ManifoldRing`].
///
/// Degrees outside `0..=dim` are allowed and carry an empty coefficient
/// vector; such a class is necessarily zero. This is what lets twistor
/// module components above the degree budget vanish without special cases.
#[derive(Debug, Clone)]
pub struct ManifoldClass {
    ring: Arc<ManifoldRing>,
    degree: i32,
    coeffs: Vec<Scalar>,
}

pub(crate) fn same_ring(a: &Arc<ManifoldRing>, b: &Arc<ManifoldRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for ManifoldClass {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.coeffs == other.coeffs
            && same_ring(&self.ring, &other.ring)
    }
}

impl ManifoldClass {
    pub(crate) fn from_parts(ring: Arc<ManifoldRing>, degree: i32, coeffs: Vec<Scalar>) -> Self {
        debug_assert_eq!(coeffs.len(), ring.rank(degree));
        ManifoldClass {
            ring,
            degree,
            coeffs,
        }
    }

    pub fn zero(ring: Arc<ManifoldRing>, degree: i32) -> Self {
        let coeffs = vec![Scalar::zero(); ring.rank(degree)];
        ManifoldClass {
            ring,
            degree,
            coeffs,
        }
    }

    /// Builds a class from a coefficient vector over the basis of `degree`.
    pub fn from_coefficients(
        ring: &Arc<ManifoldRing>,
        degree: i32,
        coeffs: Vec<Scalar>,
    ) -> Result<Self> {
        if coeffs.len() != ring.rank(degree) {
            return Err(Error::new(
                ErrorCode::DegreeMismatch,
                format!(
                    "degree {degree} has rank {} but {} coefficients were given",
                    ring.rank(degree),
                    coeffs.len()
                ),
            ));
        }
        Ok(Self::from_parts(ring.clone(), degree, coeffs))
    }

    pub fn ring(&self) -> &Arc<ManifoldRing> {
        &self.ring
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn coefficients(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    fn check_ring(&self, other: &ManifoldClass) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::new(
                ErrorCode::RingMismatch,
                format!(
                    "classes live in different rings `{}` and `{}`",
                    self.ring.name(),
                    other.ring.name()
                ),
            ))
        }
    }

    fn check_same_degree(&self, other: &ManifoldClass) -> Result<()> {
        self.check_ring(other)?;
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

    pub fn add(&self, other: &ManifoldClass) -> Result<ManifoldClass> {
        self.check_same_degree(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self::from_parts(self.ring.clone(), self.degree, coeffs))
    }

    pub fn sub(&self, other: &ManifoldClass) -> Result<ManifoldClass> {
        self.check_same_degree(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self::from_parts(self.ring.clone(), self.degree, coeffs))
    }

    pub fn neg(&self) -> ManifoldClass {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, s: &Scalar) -> ManifoldClass {
        let coeffs = self.coeffs.iter().map(|c| c * s).collect();
        Self::from_parts(self.ring.clone(), self.degree, coeffs)
    }

    /// Cup product. A product landing above the top degree is an error.
    pub fn mul(&self, other: &ManifoldClass) -> Result<ManifoldClass> {
        self.check_ring(other)?;
        let degree = self.degree + other.degree;
        if degree > self.ring.dim() as i32 {
            return Err(Error::new(
                ErrorCode::DegreeOverflow,
                format!(
                    "product of degrees {} and {} exceeds dimension {}",
                    self.degree,
                    other.degree,
                    self.ring.dim()
                ),
            ));
        }
        Ok(self.mul_unchecked(other, degree))
    }

    /// Cup product in which anything above the top degree is zero.
    pub(crate) fn mul_truncated(&self, other: &ManifoldClass) -> Result<ManifoldClass> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other, self.degree + other.degree))
    }

    fn mul_unchecked(&self, other: &ManifoldClass, degree: i32) -> ManifoldClass {
        let mut out = vec![Scalar::zero(); self.ring.rank(degree)];
        if out.is_empty() {
            return Self::from_parts(self.ring.clone(), degree, out);
        }
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            let ra = BasisRef {
                degree: self.degree as u32,
                index: i,
            };
            for (j, b) in other
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, b)| !b.is_zero())
            {
                let rb = BasisRef {
                    degree: other.degree as u32,
                    index: j,
                };
                let ab = a * b;
                for (o, p) in out.iter_mut().zip(self.ring.basis_product(ra, rb)) {
                    if !p.is_zero() {
                        *o += &ab * p;
                    }
                }
            }
        }
        Self::from_parts(self.ring.clone(), degree, out)
    }

    pub fn pow(&self, n: u32) -> Result<ManifoldClass> {
        let mut acc = self.ring.one();
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Pairing with the fundamental class; defined on top-degree classes only.
    pub fn integrate(&self) -> Result<Scalar> {
        if self.degree != self.ring.dim() as i32 {
            return Err(Error::new(
                ErrorCode::NonTopDegree,
                format!(
                    "cannot integrate a degree {} class over a {}-manifold",
                    self.degree,
                    self.ring.dim()
                ),
            ));
        }
        Ok(&self.coeffs[0] * self.ring.volume_integral())
    }

    /// `self / 2` if every coefficient is an even integer.
    pub fn halve_integral(&self) -> Option<ManifoldClass> {
        let two = Scalar::from_integer(2.into());
        let half = self.scale(&(Scalar::one() / two));
        half.is_integral().then_some(half)
    }
}

impl fmt::Display for ManifoldClass {
    /// Writes the class in the DSL's linear-combination syntax, e.g. `4 x - 2 y`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.ring.basis_names(self.degree.max(0) as u32);
        let mut first = true;
        for (c, name) in self.coeffs.iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            let mag = super::scalar::format_scalar(&c.abs());
            if first {
                if c.is_negative() {
                    write!(f, "-{mag} {name}")?;
                } else {
                    write!(f, "{mag} {name}")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - {mag} {name}")?;
            } else {
                write!(f, " + {mag} {name}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::{Betti, RingBuilder};
    use crate::algebra::scalar::int;

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

    fn cp2() -> Arc<ManifoldRing> {
        RingBuilder::new("CP2", 4)
            .betti(Betti {
                b1: 0,
                b2: 1,
                b3: 0,
            })
            .basis("h", 2)
            .basis("h2", 4)
            .product("h", "h", vec![(int(1), "h2".into())])
            .build()
            .unwrap()
    }

    fn s2xs4() -> Arc<ManifoldRing> {
        RingBuilder::new("S2xS4", 6)
            .betti(Betti {
                b1: 0,
                b2: 1,
                b3: 0,
            })
            .basis("a", 2)
            .basis("b", 4)
            .basis("vol", 6)
            .product("a", "b", vec![(int(1), "vol".into())])
            .build()
            .unwrap()
    }

    #[test]
    fn cp3_structure_constants() {
        let r = cp3();
        let x = r.class(2, &[(1, "x")]).unwrap();
        let x2 = r.class(4, &[(1, "x2")]).unwrap();
        let vol = r.class(6, &[(1, "vol")]).unwrap();
        assert_eq!(x.mul(&x).unwrap(), x2);
        assert_eq!(x.mul(&x2).unwrap(), vol);
    }

    #[test]
    fn s2_factor_squares_to_zero() {
        let r = s2xs4();
        let a = r.class(2, &[(1, "a")]).unwrap();
        let sq = a.mul(&a).unwrap();
        assert_eq!(sq.degree(), 4);
        assert!(sq.is_zero());
    }

    #[test]
    fn integration_reads_the_volume_coefficient() {
        let r = cp3();
        assert_eq!(
            r.class(6, &[(1, "vol")]).unwrap().integrate().unwrap(),
            int(1)
        );
        assert_eq!(
            r.class(6, &[(20, "vol")]).unwrap().integrate().unwrap(),
            int(20)
        );
        let c = cp2();
        let h = c.class(2, &[(1, "h")]).unwrap();
        assert_eq!(h.mul(&h).unwrap().integrate().unwrap(), int(1));
        assert_eq!(h.integrate().unwrap_err().code, ErrorCode::NonTopDegree);
    }

    #[test]
    fn overflow_and_ring_mismatch_are_errors() {
        let r = cp3();
        let x2 = r.class(4, &[(1, "x2")]).unwrap();
        assert_eq!(x2.mul(&x2).unwrap_err().code, ErrorCode::DegreeOverflow);
        assert!(x2.mul_truncated(&x2).unwrap().is_zero());
        let h = cp2().class(2, &[(1, "h")]).unwrap();
        assert_eq!(h.mul(&r.one()).unwrap_err().code, ErrorCode::RingMismatch);
    }

    #[test]
    fn zero_class_is_additive_identity() {
        let r = cp3();
        let z = r.zero(4);
        assert_eq!(z.add(&z).unwrap(), z);
        let x2 = r.class(4, &[(3, "x2")]).unwrap();
        assert_eq!(x2.add(&z).unwrap(), x2);
        assert_eq!(r.zero(2).to_string(), "0");
    }

    #[test]
    fn display_uses_signed_terms() {
        let r = RingBuilder::new("T", 4)
            .betti(Betti {
                b1: 0,
                b2: 2,
                b3: 0,
            })
            .basis("a", 2)
            .basis("b", 2)
            .basis("v", 4)
            .product("a", "b", vec![(int(1), "v".into())])
            .build()
            .unwrap();
        let c = r.class(2, &[(-2, "a"), (3, "b")]).unwrap();
        assert_eq!(c.to_string(), "-2 a + 3 b");
        let c = r.class(2, &[(4, "a"), (-1, "b")]).unwrap();
        assert_eq!(c.to_string(), "4 a - 1 b");
    }

    #[test]
    fn halving_requires_even_coefficients() {
        let r = cp3();
        let six = r.class(2, &[(6, "x")]).unwrap();
        assert_eq!(
            six.halve_integral().unwrap(),
            r.class(2, &[(3, "x")]).unwrap()
        );
        assert!(r.class(2, &[(3, "x")]).unwrap().halve_integral().is_none());
    }
}
