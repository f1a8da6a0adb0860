use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::class::ManifoldClass;
use super::scalar::Scalar;
use crate::error::{Error, ErrorCode, Result};

/// Name reserved for the degree-0 unit.
pub const UNIT: &str = "1";

/// Position of a basis element: its (even) degree and index within that degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisRef {
    pub degree: u32,
    pub index: usize,
}

impl BasisRef {
    pub const UNIT: BasisRef = BasisRef {
        degree: 0,
        index: 0,
    };
}

/// Betti numbers of a closed connected manifold. `b3` is only meaningful in
/// dimension 6; the rest are determined by Poincaré duality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Betti {
    pub b1: u32,
    pub b2: u32,
    pub b3: u32,
}

impl Betti {
    pub fn euler_characteristic(&self, dim: u32) -> i64 {
        let (b1, b2, b3) = (self.b1 as i64, self.b2 as i64, self.b3 as i64);
        match dim {
            4 => 2 - 2 * b1 + b2,
            _ => 2 - 2 * b1 + 2 * b2 - b3,
        }
    }
}

/// A list of `(coefficient, basis name)` terms.
pub type Terms = Vec<(Scalar, String)>;

/// Even-degree cohomology of a closed oriented 4- or 6-manifold, given by a
/// graded basis and structure constants.
#[derive(Debug, Clone, PartialEq)]
pub struct ManifoldRing {
    name: String,
    dim: u32,
    basis: Vec<Vec<String>>,
    products: HashMap<(BasisRef, BasisRef), Vec<Scalar>>,
    volume_integral: Scalar,
    betti: Betti,
    p1: Option<Vec<Scalar>>,
    euler: Option<Vec<Scalar>>,
}

impl ManifoldRing {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn betti(&self) -> Betti {
        self.betti
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti.euler_characteristic(self.dim)
    }

    /// Rank of the basis in `degree`; zero for odd, negative or out-of-range degrees.
    pub fn rank(&self, degree: i32) -> usize {
        if degree < 0 || degree % 2 != 0 || degree as u32 > self.dim {
            0
        } else {
            self.basis[degree as usize / 2].len()
        }
    }

    pub fn basis_names(&self, degree: u32) -> &[String] {
        self.basis
            .get(degree as usize / 2)
            .filter(|_| degree.is_multiple_of(2))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn basis_name(&self, b: BasisRef) -> &str {
        &self.basis[b.degree as usize / 2][b.index]
    }

    pub fn lookup(&self, name: &str) -> Option<BasisRef> {
        self.basis.iter().enumerate().find_map(|(half, names)| {
            names.iter().position(|n| n == name).map(|index| BasisRef {
                degree: 2 * half as u32,
                index,
            })
        })
    }

    /// All basis elements, ordered by degree then declaration order.
    pub fn basis_refs(&self) -> impl Iterator<Item = BasisRef> + '_ {
        self.basis.iter().enumerate().flat_map(|(half, names)| {
            (0..names.len()).map(move |index| BasisRef {
                degree: 2 * half as u32,
                index,
            })
        })
    }

    pub fn volume_name(&self) -> &str {
        &self.basis[self.dim as usize / 2][0]
    }

    /// Value of the fundamental-class pairing on the volume basis element.
    pub fn volume_integral(&self) -> &Scalar {
        &self.volume_integral
    }

    /// Product of two basis elements as a coefficient vector in degree
    /// `a.degree + b.degree`. Callers guarantee the sum is at most `dim`.
    pub(crate) fn basis_product(&self, a: BasisRef, b: BasisRef) -> Vec<Scalar> {
        let degree = a.degree + b.degree;
        let mut out = vec![Scalar::zero(); self.rank(degree as i32)];
        if a == BasisRef::UNIT {
            out[b.index] = Scalar::one();
        } else if b == BasisRef::UNIT {
            out[a.index] = Scalar::one();
        } else if let Some(v) = self.products.get(&(a, b)) {
            out.clone_from(v);
        }
        out
    }

    /// Declared product of two non-unit basis elements, if non-zero.
    pub fn structure_constant(&self, a: BasisRef, b: BasisRef) -> Option<&[Scalar]> {
        self.products.get(&(a, b)).map(Vec::as_slice)
    }

    pub fn p1_coefficients(&self) -> Option<&[Scalar]> {
        self.p1.as_deref()
    }

    pub fn euler_coefficients(&self) -> Option<&[Scalar]> {
        self.euler.as_deref()
    }

    pub fn p1(self: &Arc<Self>) -> Option<ManifoldClass> {
        self.p1
            .clone()
            .map(|c| ManifoldClass::from_parts(self.clone(), 4, c))
    }

    pub fn euler_class(self: &Arc<Self>) -> Option<ManifoldClass> {
        self.euler
            .clone()
            .map(|c| ManifoldClass::from_parts(self.clone(), self.dim as i32, c))
    }

    pub fn zero(self: &Arc<Self>, degree: i32) -> ManifoldClass {
        ManifoldClass::zero(self.clone(), degree)
    }

    pub fn one(self: &Arc<Self>) -> ManifoldClass {
        self.basis_class(BasisRef::UNIT)
    }

    pub fn basis_class(self: &Arc<Self>, b: BasisRef) -> ManifoldClass {
        let mut c = vec![Scalar::zero(); self.rank(b.degree as i32)];
        c[b.index] = Scalar::one();
        ManifoldClass::from_parts(self.clone(), b.degree as i32, c)
    }

    /// The class `vol / ∫vol`, whose integral is 1.
    pub fn orientation_dual(self: &Arc<Self>) -> ManifoldClass {
        let c = vec![Scalar::one() / &self.volume_integral];
        ManifoldClass::from_parts(self.clone(), self.dim as i32, c)
    }

    /// Builds a class of the given degree from `(coefficient, basis name)` terms.
    pub fn class(self: &Arc<Self>, degree: u32, terms: &[(i64, &str)]) -> Result<ManifoldClass> {
        let terms: Terms = terms
            .iter()
            .map(|(c, n)| (super::scalar::int(*c), n.to_string()))
            .collect();
        self.class_from_terms(degree, &terms)
    }

    pub fn class_from_terms(self: &Arc<Self>, degree: u32, terms: &Terms) -> Result<ManifoldClass> {
        let coeffs = resolve_terms(&self.basis, degree, terms)?;
        Ok(ManifoldClass::from_parts(
            self.clone(),
            degree as i32,
            coeffs,
        ))
    }
}

fn resolve_terms(basis: &[Vec<String>], degree: u32, terms: &Terms) -> Result<Vec<Scalar>> {
    let slot = basis
        .get(degree as usize / 2)
        .filter(|_| degree.is_multiple_of(2));
    let mut coeffs = vec![Scalar::zero(); slot.map_or(0, Vec::len)];
    for (c, name) in terms {
        let Some(index) = slot.and_then(|names| names.iter().position(|n| n == name)) else {
            let declared = basis.iter().flatten().any(|n| n == name);
            return Err(if declared {
                Error::new(
                    ErrorCode::DegreeMismatch,
                    format!("basis element `{name}` does not have degree {degree}"),
                )
            } else {
                Error::new(
                    ErrorCode::UndeclaredBasis,
                    format!("`{name}` is not a declared basis element"),
                )
            });
        };
        coeffs[index] += c;
    }
    Ok(coeffs)
}

/// Incremental constructor for [`ManifoldRing`]; `build` runs every ring
/// consistency check.
#[derive(Debug, Clone)]
pub struct RingBuilder {
    name: String,
    dim: u32,
    basis: Vec<(String, u32)>,
    products: Vec<(String, String, Terms)>,
    volume_integral: Option<Scalar>,
    betti: Betti,
    p1: Option<Terms>,
    euler: Option<Terms>,
}

impl RingBuilder {
    pub fn new(name: impl Into<String>, dim: u32) -> Self {
        RingBuilder {
            name: name.into(),
            dim,
            basis: Vec::new(),
            products: Vec::new(),
            volume_integral: None,
            betti: Betti {
                b1: 0,
                b2: 0,
                b3: 0,
            },
            p1: None,
            euler: None,
        }
    }

    pub fn basis(mut self, name: impl Into<String>, degree: u32) -> Self {
        self.basis.push((name.into(), degree));
        self
    }

    pub fn betti(mut self, betti: Betti) -> Self {
        self.betti = betti;
        self
    }

    pub fn product(mut self, a: impl Into<String>, b: impl Into<String>, result: Terms) -> Self {
        self.products.push((a.into(), b.into(), result));
        self
    }

    pub fn volume_integral(mut self, value: Scalar) -> Self {
        self.volume_integral = Some(value);
        self
    }

    pub fn p1(mut self, terms: Terms) -> Self {
        self.p1 = Some(terms);
        self
    }

    pub fn euler(mut self, terms: Terms) -> Self {
        self.euler = Some(terms);
        self
    }

    pub fn build(self) -> Result<Arc<ManifoldRing>> {
        let dim = self.dim;
        if dim != 4 && dim != 6 {
            return Err(Error::new(
                ErrorCode::InvalidRing,
                format!("dimension must be 4 or 6, got {dim}"),
            ));
        }
        let mut basis: Vec<Vec<String>> = vec![Vec::new(); dim as usize / 2 + 1];
        basis[0].push(UNIT.to_string());
        for (name, degree) in &self.basis {
            if *degree == 0 || degree % 2 != 0 || *degree > dim {
                return Err(Error::new(
                    ErrorCode::InvalidRing,
                    format!("basis element `{name}` has invalid degree {degree}"),
                ));
            }
            if basis.iter().flatten().any(|n| n == name) {
                return Err(Error::new(
                    ErrorCode::DuplicateName,
                    format!("basis element `{name}` declared twice"),
                ));
            }
            basis[*degree as usize / 2].push(name.clone());
        }
        let top = basis[dim as usize / 2].len();
        if top != 1 {
            return Err(Error::new(
                ErrorCode::InvalidRing,
                format!("top degree {dim} must have exactly one basis element, found {top}"),
            ));
        }

        let lookup = |name: &str| -> Result<BasisRef> {
            basis
                .iter()
                .enumerate()
                .find_map(|(half, names)| {
                    names.iter().position(|n| n == name).map(|index| BasisRef {
                        degree: 2 * half as u32,
                        index,
                    })
                })
                .ok_or_else(|| {
                    Error::new(
                        ErrorCode::UndeclaredBasis,
                        format!("`{name}` is not a declared basis element"),
                    )
                })
        };

        let mut products: HashMap<(BasisRef, BasisRef), Vec<Scalar>> = HashMap::new();
        for (a, b, terms) in &self.products {
            let (ra, rb) = (lookup(a)?, lookup(b)?);
            if ra == BasisRef::UNIT || rb == BasisRef::UNIT {
                return Err(Error::new(
                    ErrorCode::InvalidRing,
                    format!("products with the unit are implicit: `{a} * {b}`"),
                ));
            }
            let degree = ra.degree + rb.degree;
            if degree > dim {
                return Err(Error::new(
                    ErrorCode::DegreeOverflow,
                    format!("`{a} * {b}` has degree {degree} > {dim}"),
                ));
            }
            let value = resolve_terms(&basis, degree, terms)?;
            for key in [(ra, rb), (rb, ra)] {
                match products.get(&key) {
                    Some(existing) if *existing != value => {
                        return Err(Error::new(
                            ErrorCode::AsymmetricProduct,
                            format!("conflicting values declared for `{a} * {b}`"),
                        ));
                    }
                    _ => {
                        products.insert(key, value.clone());
                    }
                }
            }
        }
        products.retain(|_, v| v.iter().any(|c| !c.is_zero()));

        let volume_integral = self.volume_integral.unwrap_or_else(Scalar::one);
        if volume_integral.is_zero() {
            return Err(Error::new(
                ErrorCode::InvalidRing,
                "the volume element must pair non-trivially with the fundamental class",
            ));
        }

        let p1 = self
            .p1
            .as_ref()
            .map(|t| resolve_terms(&basis, 4, t))
            .transpose()?;
        let euler = self
            .euler
            .as_ref()
            .map(|t| resolve_terms(&basis, dim, t))
            .transpose()?;

        let ring = ManifoldRing {
            name: self.name,
            dim,
            basis,
            products,
            volume_integral,
            betti: self.betti,
            p1,
            euler,
        };
        ring.check_betti()?;
        ring.check_associative()?;
        Ok(Arc::new(ring))
    }
}

impl ManifoldRing {
    fn check_betti(&self) -> Result<()> {
        let b2 = self.betti.b2 as usize;
        let mut ok = self.rank(2) == b2;
        if self.dim == 6 {
            ok &= self.rank(4) == b2;
        }
        if ok {
            Ok(())
        } else {
            Err(Error::new(
                ErrorCode::BettiMismatch,
                format!(
                    "b2 = {} but the basis has rank {} in degree 2 and {} in degree 4",
                    b2,
                    self.rank(2),
                    self.rank(4)
                ),
            ))
        }
    }

    fn check_associative(&self) -> Result<()> {
        let refs: Vec<BasisRef> = self.basis_refs().collect();
        for &a in &refs {
            for &b in &refs {
                for &c in &refs {
                    if a.degree + b.degree + c.degree > self.dim {
                        continue;
                    }
                    let left =
                        self.vector_times_basis(a.degree + b.degree, &self.basis_product(a, b), c);
                    let right =
                        self.basis_times_vector(a, b.degree + c.degree, &self.basis_product(b, c));
                    if left != right {
                        return Err(Error::new(
                            ErrorCode::NonAssociative,
                            format!(
                                "({0} * {1}) * {2} != {0} * ({1} * {2})",
                                self.basis_name(a),
                                self.basis_name(b),
                                self.basis_name(c)
                            ),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    fn vector_times_basis(&self, degree: u32, v: &[Scalar], c: BasisRef) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.rank((degree + c.degree) as i32)];
        for (i, coeff) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            let p = self.basis_product(BasisRef { degree, index: i }, c);
            for (o, x) in out.iter_mut().zip(p) {
                *o += coeff * x;
            }
        }
        out
    }

    fn basis_times_vector(&self, a: BasisRef, degree: u32, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.rank((degree + a.degree) as i32)];
        for (i, coeff) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            let p = self.basis_product(a, BasisRef { degree, index: i });
            for (o, x) in out.iter_mut().zip(p) {
                *o += coeff * x;
            }
        }
        out
    }
}
