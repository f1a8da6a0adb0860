use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;

use super::{AcsData, FourManifoldData, ManifoldFile, SixData, SixManifold};
use crate::algebra::{format_scalar, int, to_integer, ManifoldClass, ManifoldRing, Scalar};
use crate::error::{Error, ErrorCode, Result};

/// Outcome of one consistency check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub passed: bool,
    /// Code reported when the check fails.
    pub code: ErrorCode,
    pub detail: String,
    /// Set when the check is a necessary condition standing in for one that
    /// cannot be verified from the available data.
    pub proxy: bool,
}

impl Check {
    fn new(id: impl Into<String>, passed: bool, code: ErrorCode, detail: String) -> Self {
        Check {
            id: id.into(),
            passed,
            code,
            detail,
            proxy: false,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "pass" } else { "FAIL" };
        write!(f, "{status} {}", self.id)?;
        if !self.passed {
            write!(f, " [{}]", self.code)?;
        }
        if self.proxy {
            f.write_str(" (proxy)")?;
        }
        write!(f, ": {}", self.detail)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.failures().next()
    }

    pub fn has_failure(&self, code: ErrorCode) -> bool {
        self.failures().any(|c| c.code == code)
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.checks.extend(other.checks);
    }

    /// Turns the first failed check into an error.
    pub fn into_result(self) -> Result<Self> {
        match self.first_failure() {
            Some(c) => Err(Error::new(c.code, format!("{}: {}", c.id, c.detail))),
            None => Ok(self),
        }
    }
}

fn signature_from_p1(ring: &Arc<ManifoldRing>) -> Option<Scalar> {
    let p1 = ring.p1()?;
    p1.integrate().ok().map(|v| v / int(3))
}

fn hirzebruch_check(id: &str, euler: &Scalar, signature: &Scalar) -> Check {
    let sum = euler + signature;
    let passed = to_integer(&sum).is_some_and(|s| s.mod_floor(&BigInt::from(4)) == BigInt::from(0));
    Check::new(
        id,
        passed,
        ErrorCode::HirzebruchCongruence,
        format!(
            "χ + σ = {} {} 0 mod 4",
            format_scalar(&sum),
            if passed { "≡" } else { "≢" }
        ),
    )
}

/// Checks one almost complex structure against the manifold's data: the top
/// Chern class integrates to `χ`, `c1^2 - 2c2 = p1` when `p1` is declared, and
/// on 4-manifolds Hirzebruch's congruence `χ + σ ≡ 0 mod 4`.
pub fn validate_acs(ring: &Arc<ManifoldRing>, acs: &AcsData) -> ValidationReport {
    let mut report = ValidationReport::default();
    let chi = int(ring.euler_characteristic());
    let prefix = format!("acs `{}`", acs.name);
    let top = if ring.dim() == 6 { &acs.c3 } else { &acs.c2 };
    let top_name = if ring.dim() == 6 { "c3" } else { "c2" };
    match top.integrate() {
        Ok(v) => report.checks.push(Check::new(
            format!("{prefix}: euler"),
            v == chi,
            ErrorCode::EulerMismatch,
            format!(
                "∫{top_name} = {}, χ = {}",
                format_scalar(&v),
                format_scalar(&chi)
            ),
        )),
        Err(e) => report.checks.push(Check::new(
            format!("{prefix}: euler"),
            false,
            ErrorCode::EulerMismatch,
            e.to_string(),
        )),
    }
    if let Some(p1) = ring.p1() {
        let passed = acs.pontryagin().is_ok_and(|p| p == p1);
        report.checks.push(Check::new(
            format!("{prefix}: p1"),
            passed,
            ErrorCode::P1Mismatch,
            match acs.pontryagin() {
                Ok(p) => format!("c1² - 2c2 = {p}, p1 = {p1}"),
                Err(e) => e.to_string(),
            },
        ));
    }
    if ring.dim() == 4 {
        if let Some(sigma) = signature_from_p1(ring) {
            report.checks.push(hirzebruch_check(
                &format!("{prefix}: hirzebruch"),
                &chi,
                &sigma,
            ));
        }
    }
    report
}

/// Whether a 4-manifold could carry an almost complex structure inducing its
/// orientation, as far as `(σ, χ)` can tell.
pub fn validate_orientation_compatible(m: &FourManifoldData) -> ValidationReport {
    ValidationReport {
        checks: vec![hirzebruch_check(
            "hirzebruch",
            &int(m.euler),
            &int(m.signature),
        )],
    }
}

/// Divisibility of `∫(p1 ± 2e - α²)` by 4 for both signs. This is necessary
/// for `α` to reduce to `w2`; it is reported as a proxy check.
pub fn check_spinc_lift(m: &FourManifoldData, alpha: &ManifoldClass) -> Result<Check> {
    let ring = m.require_ring()?;
    let id = "spinc-lift".to_string();
    let (Some(p1), Some(e)) = (ring.p1(), ring.euler_class()) else {
        return Err(Error::new(
            ErrorCode::MissingField,
            format!("`{}` needs p1 and e to test a spin-c lift", m.name),
        ));
    };
    let a2 = alpha.mul(alpha)?;
    let two_e = e.scale(&int(2));
    let plus = p1.add(&two_e)?.sub(&a2)?.integrate()?;
    let minus = p1.sub(&two_e)?.sub(&a2)?.integrate()?;
    let four = int(4);
    let divisible = |v: &Scalar| (v / &four).is_integer();
    let passed = divisible(&plus) && divisible(&minus);
    Ok(Check {
        id,
        passed,
        code: ErrorCode::NotASpincLift,
        detail: format!(
            "α = {alpha}: ∫(p1 + 2e - α²) = {}, ∫(p1 - 2e - α²) = {}",
            format_scalar(&plus),
            format_scalar(&minus)
        ),
        proxy: true,
    })
}

fn validate_six(m: &SixManifold) -> ValidationReport {
    let mut report = ValidationReport::default();
    match &m.data {
        SixData::Ring { ring, acs } => {
            if let Some(e) = ring.euler_class() {
                let chi = int(ring.euler_characteristic());
                let v = e.integrate().unwrap_or_else(|_| int(0));
                report.checks.push(Check::new(
                    "euler-class",
                    v == chi,
                    ErrorCode::EulerMismatch,
                    format!("∫e = {}, χ = {}", format_scalar(&v), format_scalar(&chi)),
                ));
            }
            for a in acs {
                report.extend(validate_acs(ring, a));
            }
            if let Some((first, rest)) = acs.split_first() {
                let p_first = first.pontryagin().ok();
                for a in rest {
                    let same_p = p_first.is_some() && a.pontryagin().ok() == p_first;
                    let same_c3 = a.c3 == first.c3;
                    report.checks.push(Check::new(
                        format!("acs `{}` vs `{}`: consistency", a.name, first.name),
                        same_p && same_c3,
                        ErrorCode::AcsInconsistent,
                        format!(
                            "c1² - 2c2 {}, c3 {}",
                            if same_p { "agrees" } else { "differs" },
                            if same_c3 { "agrees" } else { "differs" }
                        ),
                    ));
                }
            }
        }
        SixData::Numbers { acs } => {
            if let Some(chi) = m.euler_characteristic() {
                for a in acs {
                    report.checks.push(Check::new(
                        format!("acs `{}`: euler", a.name),
                        a.c3 == BigInt::from(chi),
                        ErrorCode::EulerMismatch,
                        format!("∫c3 = {}, χ = {chi}", a.c3),
                    ));
                }
            }
        }
    }
    report
}

fn validate_four(m: &FourManifoldData) -> Result<ValidationReport> {
    let mut report = ValidationReport::default();
    report.checks.push(Check::new(
        "parity",
        (m.euler + m.signature) % 2 == 0,
        ErrorCode::SignatureMismatch,
        format!("χ + σ = {} must be even", m.euler + m.signature),
    ));
    let Some(ring) = &m.ring else {
        return Ok(report);
    };
    let chi = int(m.euler);
    let ring_chi = int(ring.euler_characteristic());
    report.checks.push(Check::new(
        "betti-euler",
        chi == ring_chi,
        ErrorCode::EulerMismatch,
        format!(
            "χ = {}, from Betti numbers {}",
            m.euler,
            format_scalar(&ring_chi)
        ),
    ));
    if let Some(p1) = ring.p1() {
        let v = p1.integrate()?;
        report.checks.push(Check::new(
            "signature",
            v == int(3 * m.signature),
            ErrorCode::SignatureMismatch,
            format!("∫p1 = {}, 3σ = {}", format_scalar(&v), 3 * m.signature),
        ));
    }
    if let Some(e) = ring.euler_class() {
        let v = e.integrate()?;
        report.checks.push(Check::new(
            "euler-class",
            v == chi,
            ErrorCode::EulerMismatch,
            format!("∫e = {}, χ = {}", format_scalar(&v), m.euler),
        ));
    }
    for lift in &m.lifts {
        let mut c = check_spinc_lift(m, &lift.alpha)?;
        c.id = format!("spinc `{}`: lift", lift.name);
        report.checks.push(c);
    }
    for a in &m.acs {
        report.extend(validate_acs(ring, a));
    }
    Ok(report)
}

/// Every consistency check that applies to a parsed file.
pub fn validate_file(file: &ManifoldFile) -> Result<ValidationReport> {
    match file {
        ManifoldFile::Six(m) => Ok(validate_six(m)),
        ManifoldFile::Four(m) => validate_four(m),
    }
}
