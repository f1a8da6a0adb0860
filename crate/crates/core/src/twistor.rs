//! Twistor spaces: cohomology presentations, the Chern classes of their
//! canonical almost complex structure, Poincaré duals of sections and the
//! change of fiber generator between two structures.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{
    int, ratio, shift_generator, Betti, ManifoldClass, ManifoldRing, Orientation, QuotientRing,
    RingBuilder, Scalar, Terms, TwistorElement, UNIT,
};
use crate::error::{Error, ErrorCode, Result};
use crate::manifold::{
    check_spinc_lift, validate_acs, AcsData, ChernNumberData, ChernNumbers, FourManifoldData,
    SixData, SixManifold,
};

/// A presentation `H*(M)[t]/(relation)` of the cohomology of `Z±(M)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistorRing {
    quotient: Arc<QuotientRing>,
    sign: Orientation,
    /// What the relation was built from, e.g. ``acs `std` `` or `α = 3 h`.
    pub source: String,
}

impl TwistorRing {
    pub fn quotient(&self) -> &Arc<QuotientRing> {
        &self.quotient
    }

    pub fn sign(&self) -> Orientation {
        self.sign
    }

    pub fn base(&self) -> &Arc<ManifoldRing> {
        self.quotient.base()
    }

    pub fn module_rank(&self) -> usize {
        self.quotient.module_rank()
    }

    /// Lower relation coefficients, `relation()[i]` multiplying `t^i`.
    pub fn relation(&self) -> &[ManifoldClass] {
        self.quotient.relation()
    }

    pub fn t(&self) -> TwistorElement {
        self.quotient.t()
    }

    pub fn one(&self) -> TwistorElement {
        self.quotient.one()
    }

    pub fn pullback(&self, class: &ManifoldClass) -> Result<TwistorElement> {
        self.quotient.pullback(class)
    }

    /// Integration over the total space with this ring's orientation.
    pub fn integrate(&self, u: &TwistorElement) -> Result<Scalar> {
        u.integrate(self.sign)
    }
}

impl fmt::Display for TwistorRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.module_rank();
        write!(f, "t^{n}")?;
        for i in (0..n).rev() {
            let r = &self.relation()[i];
            if r.is_zero() {
                continue;
            }
            let power = match i {
                0 => String::new(),
                1 => "*t".to_string(),
                _ => format!("*t^{i}"),
            };
            write!(f, " + ({r}){power}")?;
        }
        Ok(())
    }
}

/// Chern classes of an almost complex structure on a twistor space, with
/// its Chern numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct ChernPackage {
    pub ring: TwistorRing,
    pub c1: TwistorElement,
    pub c2: TwistorElement,
    pub c3: TwistorElement,
    pub numbers: ChernNumbers,
}

fn relation6_coefficients(acs: &AcsData, sign: Orientation) -> Result<Vec<ManifoldClass>> {
    let ring = acs.ring();
    let c1c2 = acs.c1.mul(&acs.c2)?;
    let r1 = match sign {
        Orientation::Positive => c1c2.sub(&acs.c3)?,
        Orientation::Negative => c1c2.add(&acs.c3)?,
    };
    Ok(vec![
        ring.zero(8),
        r1,
        acs.c1.mul(&acs.c1)?.add(&acs.c2)?,
        acs.c1.scale(&int(2)),
    ])
}

/// `t^4 + 2c1 t^3 + (c1² + c2) t^2 + (c1c2 ∓ c3) t` for a 6-manifold, after
/// checking the structure against the manifold data.
pub fn twistor_relation6(acs: &AcsData, sign: Orientation) -> Result<TwistorRing> {
    validate_acs(acs.ring(), acs).into_result()?;
    twistor_relation6_unchecked(acs, sign)
}

/// [`twistor_relation6`] without validation.
pub fn twistor_relation6_unchecked(acs: &AcsData, sign: Orientation) -> Result<TwistorRing> {
    if acs.ring().dim() != 6 {
        return Err(Error::new(
            ErrorCode::WrongDimension,
            "the degree-4 relation needs a 6-manifold",
        ));
    }
    let quotient = QuotientRing::new(acs.ring().clone(), relation6_coefficients(acs, sign)?)?;
    Ok(TwistorRing {
        quotient,
        sign,
        source: format!("acs `{}`", acs.name),
    })
}

fn pontryagin_and_euler(m: &FourManifoldData) -> Result<(ManifoldClass, ManifoldClass)> {
    let ring = m.require_ring()?;
    match (ring.p1(), ring.euler_class()) {
        (Some(p1), Some(e)) => Ok((p1, e)),
        _ => Err(Error::new(
            ErrorCode::MissingField,
            format!("`{}` needs p1 and e", m.name),
        )),
    }
}

/// `t^2 + α t - (p1 ± 2e - α²)/4` for a 4-manifold in ring mode.
pub fn twistor_relation4(
    m: &FourManifoldData,
    alpha: &ManifoldClass,
    sign: Orientation,
) -> Result<TwistorRing> {
    let check = check_spinc_lift(m, alpha)?;
    if !check.passed {
        return Err(Error::new(ErrorCode::NotASpincLift, check.detail));
    }
    let (p1, e) = pontryagin_and_euler(m)?;
    let two_e = e.scale(&int(2));
    let shifted = match sign {
        Orientation::Positive => p1.add(&two_e)?,
        Orientation::Negative => p1.sub(&two_e)?,
    };
    let r0 = shifted.sub(&alpha.mul(alpha)?)?.scale(&ratio(-1, 4));
    let quotient = QuotientRing::new(m.require_ring()?.clone(), vec![r0, alpha.clone()])?;
    Ok(TwistorRing {
        quotient,
        sign,
        source: format!("α = {alpha}"),
    })
}

/// [`twistor_relation4`] using a named spin-c lift.
pub fn twistor_relation4_lift(
    m: &FourManifoldData,
    lift: &str,
    sign: Orientation,
) -> Result<TwistorRing> {
    let alpha = m.lift(lift)?.alpha.clone();
    let mut ring = twistor_relation4(m, &alpha, sign)?;
    ring.source = format!("spinc `{lift}`");
    Ok(ring)
}

fn default_alpha(m: &FourManifoldData) -> Result<&ManifoldClass> {
    m.require_ring()?;
    m.lifts.first().map(|l| &l.alpha).ok_or_else(|| {
        Error::new(
            ErrorCode::UnknownSpinLift,
            format!("`{}` declares no spin-c lift", m.name),
        )
    })
}

/// Chern classes `1 + (4t + 2α) + (p1 ± 3e) ± (α + 2t)e` of the canonical
/// structure on `Z±(M)`, using the first declared spin-c lift.
pub fn ahs_total_chern(m: &FourManifoldData, sign: Orientation) -> Result<ChernPackage> {
    ahs_total_chern_with(m, default_alpha(m)?, sign)
}

pub fn ahs_total_chern_with(
    m: &FourManifoldData,
    alpha: &ManifoldClass,
    sign: Orientation,
) -> Result<ChernPackage> {
    ahs_total_chern_integrated(m, alpha, sign, sign)
}

/// [`ahs_total_chern_with`] with the orientation used for Chern numbers
/// given separately, so a wrong convention can be exercised.
#[doc(hidden)]
pub fn ahs_total_chern_integrated(
    m: &FourManifoldData,
    alpha: &ManifoldClass,
    sign: Orientation,
    integration: Orientation,
) -> Result<ChernPackage> {
    let ring = twistor_relation4(m, alpha, sign)?;
    let (p1, e) = pontryagin_and_euler(m)?;
    let t = ring.t();
    let a = ring.pullback(alpha)?;
    let c1 = t.scale(&int(4)).add(&a.scale(&int(2)))?;
    let three_e = e.scale(&int(3));
    let c2 = ring.pullback(&match sign {
        Orientation::Positive => p1.add(&three_e)?,
        Orientation::Negative => p1.sub(&three_e)?,
    })?;
    let c3 = a
        .add(&t.scale(&int(2)))?
        .mul_base(&e)?
        .scale(&sign.integration_sign());
    let numbers = ChernNumbers {
        c1_cubed: Some(c1.pow(3)?.integrate(integration)?),
        c1c2: c1.mul(&c2)?.integrate(integration)?,
        c3: c3.integrate(integration)?,
    };
    Ok(ChernPackage {
        ring,
        c1,
        c2,
        c3,
        numbers,
    })
}

/// Chern numbers of `Z±(M)` from `(σ, χ)` alone:
/// `∫c1³ = 32χ ± 48σ`, `∫c1c2 = 12(χ ± σ)`, `∫c3 = 2χ`.
pub fn ahs_chern_numbers(m: &FourManifoldData, sign: Orientation) -> ChernNumbers {
    let s = match sign {
        Orientation::Positive => m.signature,
        Orientation::Negative => -m.signature,
    };
    let chi = m.euler;
    ChernNumbers {
        c1_cubed: Some(int(32 * chi + 48 * s)),
        c1c2: int(12 * (chi + s)),
        c3: int(2 * chi),
    }
}

/// Checks [`ahs_chern_numbers`] against the ring engine on the ring-mode
/// builtins `S4`, `CP2` and `CP2bar` for both orientations.
pub fn closed_form_gate() -> Result<()> {
    for sign in [Orientation::Positive, Orientation::Negative] {
        closed_form_gate_with(sign, sign)?;
    }
    Ok(())
}

/// Gate for one orientation, integrating the ring side with `integration`.
#[doc(hidden)]
pub fn closed_form_gate_with(sign: Orientation, integration: Orientation) -> Result<()> {
    for name in ["S4", "CP2", "CP2bar"] {
        let file = crate::manifold::builtin(name, &[])?;
        let m = file.four()?;
        let ring = ahs_total_chern_integrated(m, default_alpha(m)?, sign, integration)?;
        if ring.numbers != ahs_chern_numbers(m, sign) {
            return Err(Error::new(
                ErrorCode::ClosedFormUnverified,
                format!(
                    "closed-form Chern numbers of Z{}({name}) disagree with the ring engine",
                    sign.symbol()
                ),
            ));
        }
    }
    Ok(())
}

/// Name of the twistor space, e.g. `Z+(S4)`.
pub fn twistor_space_name(m: &FourManifoldData, sign: Orientation) -> String {
    format!("Z{}({})", sign.symbol(), m.name)
}

pub const AHS_ACS_NAME: &str = "ahs";

const FIBER: &str = "t";

fn fiber_name(base_name: &str) -> String {
    if base_name == UNIT {
        FIBER.to_string()
    } else {
        format!("{FIBER}_{base_name}")
    }
}

/// Rewrites `c0 + c1 t` as a class on the total space ring built by
/// [`total_space_ring`].
fn to_total(total: &Arc<ManifoldRing>, u: &TwistorElement) -> Result<ManifoldClass> {
    let base = u.ring().base();
    let degree = u.degree();
    let mut terms: Terms = Vec::new();
    for (i, comp) in u.components().iter().enumerate() {
        let d = comp.degree();
        if d < 0 || d > base.dim() as i32 {
            continue;
        }
        for (name, c) in base.basis_names(d as u32).iter().zip(comp.coefficients()) {
            let name = if i == 0 {
                name.clone()
            } else {
                fiber_name(name)
            };
            terms.push((c.clone(), name));
        }
    }
    total.class_from_terms(degree as u32, &terms)
}

fn total_space_ring(ring: &TwistorRing, name: &str) -> Result<Arc<ManifoldRing>> {
    let q = ring.quotient();
    let base = q.base();
    let clash = base
        .basis_refs()
        .any(|b| base.basis_name(b) == FIBER || base.basis_name(b).starts_with("t_"));
    if clash {
        return Err(Error::new(
            ErrorCode::InvalidRing,
            format!(
                "basis names of `{}` clash with the fiber generator `t`",
                base.name()
            ),
        ));
    }
    // Each total basis element with its representative in the quotient ring.
    let mut elements: Vec<(String, TwistorElement)> = Vec::new();
    for b in base.basis_refs() {
        let class = base.basis_class(b);
        if b.degree > 0 {
            elements.push((base.basis_name(b).to_string(), q.pullback(&class)?));
        }
        elements.push((fiber_name(base.basis_name(b)), q.t().mul_base(&class)?));
    }
    let Betti { b1, b2, .. } = base.betti();
    let mut builder = RingBuilder::new(name, 6)
        .betti(Betti {
            b1,
            b2: b2 + 1,
            b3: 2 * b1,
        })
        .volume_integral(base.volume_integral() * ring.sign().integration_sign());
    for (n, u) in &elements {
        builder = builder.basis(n.clone(), u.degree() as u32);
    }
    for (i, (na, ua)) in elements.iter().enumerate() {
        for (nb, ub) in &elements[i..] {
            if ua.degree() + ub.degree() > 6 {
                continue;
            }
            let p = ua.mul(ub)?;
            let mut terms: Terms = Vec::new();
            for (k, comp) in p.components().iter().enumerate() {
                let d = comp.degree();
                if d < 0 || d > base.dim() as i32 {
                    continue;
                }
                for (bn, c) in base.basis_names(d as u32).iter().zip(comp.coefficients()) {
                    if !c.is_zero() {
                        let bn = if k == 0 { bn.clone() } else { fiber_name(bn) };
                        terms.push((c.clone(), bn));
                    }
                }
            }
            if !terms.is_empty() {
                builder = builder.product(na.clone(), nb.clone(), terms);
            }
        }
    }
    builder.build()
}

/// The twistor space `Z±(M)` as an almost complex 6-manifold carrying its
/// canonical structure `ahs`. Ring-mode input gives full ring data (using
/// the first spin-c lift); numeric input gives Chern numbers only.
pub fn ahs_as_acs(m: &FourManifoldData, sign: Orientation) -> Result<SixManifold> {
    ahs_as_acs_named(m, sign, &twistor_space_name(m, sign))
}

/// [`ahs_as_acs`] with an explicit name for the total space.
pub fn ahs_as_acs_named(
    m: &FourManifoldData,
    sign: Orientation,
    name: &str,
) -> Result<SixManifold> {
    let name = name.to_string();
    if !m.is_ring_mode() {
        let n = ahs_chern_numbers(m, sign);
        let as_int = |s: &Scalar| s.to_integer();
        return Ok(SixManifold {
            name,
            betti: None,
            data: SixData::Numbers {
                acs: vec![ChernNumberData {
                    name: AHS_ACS_NAME.to_string(),
                    c1c2: as_int(&n.c1c2),
                    c3: as_int(&n.c3),
                    c1_cubed: n.c1_cubed.as_ref().map(as_int),
                }],
            },
        });
    }
    let package = ahs_total_chern(m, sign)?;
    let total = total_space_ring(&package.ring, &name)?;
    let acs = AcsData {
        name: AHS_ACS_NAME.to_string(),
        c1: to_total(&total, &package.c1)?,
        c2: to_total(&total, &package.c2)?,
        c3: to_total(&total, &package.c3)?,
    };
    Ok(SixManifold::from_ring(total, vec![acs]))
}

/// Coefficients of `t^3 + 2c1 t^2 + (c1² + c2) t + (c1c2 - c3)`, lowest first.
pub fn pd_polynomial(acs: &AcsData) -> Result<Vec<ManifoldClass>> {
    Ok(vec![
        acs.c1.mul(&acs.c2)?.sub(&acs.c3)?,
        acs.c1.mul(&acs.c1)?.add(&acs.c2)?,
        acs.c1.scale(&int(2)),
        acs.ring().one(),
    ])
}

/// Poincaré dual of the section defined by `acs`, in the `Z+` ring of `acs`.
pub fn pd_section(acs: &AcsData) -> Result<TwistorElement> {
    let ring = twistor_relation6_unchecked(acs, Orientation::Positive)?;
    ring.quotient().from_polynomial(6, pd_polynomial(acs)?)
}

/// The shift `a = (c1 - c1')/2` relating the fiber generators of the
/// presentations for `J` and `J'`: `t' = t + a`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorChange {
    pub a: ManifoldClass,
}

fn full_relation(acs: &AcsData) -> Result<Vec<ManifoldClass>> {
    let mut r = relation6_coefficients(acs, Orientation::Positive)?;
    r.push(acs.ring().one());
    Ok(r)
}

/// Computes `a = (c1 - c1')/2` and checks that substituting `t' = t + a`
/// into the relation of `J'` yields the relation of `J`.
pub fn change_generator(j: &AcsData, j_prime: &AcsData) -> Result<GeneratorChange> {
    let change = change_generator_unchecked(j, j_prime)?;
    let shifted = shift_generator(8, &full_relation(j_prime)?, &change.a)?;
    if shifted != full_relation(j)? {
        return Err(Error::new(
            ErrorCode::SubstitutionIdentity,
            format!(
                "t' = t + ({}) does not carry the relation of `{}` to that of `{}`",
                change.a, j_prime.name, j.name
            ),
        ));
    }
    Ok(change)
}

/// [`change_generator`] without the substitution check.
pub fn change_generator_unchecked(j: &AcsData, j_prime: &AcsData) -> Result<GeneratorChange> {
    if !Arc::ptr_eq(j.ring(), j_prime.ring()) && **j.ring() != **j_prime.ring() {
        return Err(Error::new(
            ErrorCode::RingMismatch,
            "almost complex structures live on different manifolds",
        ));
    }
    let diff = j.c1.sub(&j_prime.c1)?;
    let a = diff.halve_integral().ok_or_else(|| {
        Error::new(
            ErrorCode::HalvingObstructed,
            format!(
                "c1 - c1' = {diff} is not divisible by 2 (`{}` vs `{}`)",
                j.name, j_prime.name
            ),
        )
    })?;
    Ok(GeneratorChange { a })
}

/// Exact integer value of a scalar, or `non-integral-result`.
pub(crate) fn require_integer(s: &Scalar, what: &str) -> Result<BigInt> {
    if s.is_integer() {
        Ok(s.to_integer())
    } else {
        Err(Error::new(
            ErrorCode::NonIntegralResult,
            format!(
                "{what} = {} is not an integer",
                crate::algebra::format_scalar(s)
            ),
        ))
    }
}
