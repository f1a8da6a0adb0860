//! Manifold descriptions: the text format, the builtin library, and the
//! consistency checks applied to cohomology and almost complex structure data.

mod builtin;
mod dsl;
mod print;
mod validate;

use std::sync::Arc;

use num_bigint::BigInt;

use crate::algebra::{Betti, ManifoldClass, ManifoldRing, Scalar};
use crate::error::{Error, ErrorCode, Result};

pub use builtin::{builtin, cp3_acs_name, BUILTIN_NAMES};
pub use dsl::{parse_manifold, parse_manifold_lenient};
pub use print::print_manifold;
pub use validate::{
    check_spinc_lift, validate_acs, validate_file, validate_orientation_compatible, Check,
    ValidationReport,
};

/// Chern classes of an almost complex structure. On a 4-manifold `c3` is the
/// (necessarily zero) degree-6 class.
#[derive(Debug, Clone, PartialEq)]
pub struct AcsData {
    pub name: String,
    pub c1: ManifoldClass,
    pub c2: ManifoldClass,
    pub c3: ManifoldClass,
}

/// The Chern numbers of an almost complex 6-manifold.
#[derive(Debug, Clone, PartialEq)]
pub struct ChernNumbers {
    pub c1_cubed: Option<Scalar>,
    pub c1c2: Scalar,
    pub c3: Scalar,
}

impl AcsData {
    pub fn ring(&self) -> &Arc<ManifoldRing> {
        self.c1.ring()
    }

    /// `c1^2 - 2 c2`, which equals `p1` for any almost complex structure.
    pub fn pontryagin(&self) -> Result<ManifoldClass> {
        self.c1
            .mul(&self.c1)?
            .sub(&self.c2.scale(&crate::algebra::int(2)))
    }

    pub fn chern_numbers(&self) -> Result<ChernNumbers> {
        if self.ring().dim() != 6 {
            return Err(Error::new(
                ErrorCode::WrongDimension,
                "Chern numbers are defined here for 6-manifolds only",
            ));
        }
        Ok(ChernNumbers {
            c1_cubed: Some(self.c1.pow(3)?.integrate()?),
            c1c2: self.c1.mul(&self.c2)?.integrate()?,
            c3: self.c3.integrate()?,
        })
    }
}

/// Chern numbers declared directly, for manifolds whose cohomology ring is
/// not entered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernNumberData {
    pub name: String,
    pub c1c2: BigInt,
    pub c3: BigInt,
    pub c1_cubed: Option<BigInt>,
}

impl ChernNumberData {
    pub fn numbers(&self) -> ChernNumbers {
        ChernNumbers {
            c1_cubed: self.c1_cubed.clone().map(Scalar::from_integer),
            c1c2: Scalar::from_integer(self.c1c2.clone()),
            c3: Scalar::from_integer(self.c3.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SixData {
    Ring {
        ring: Arc<ManifoldRing>,
        acs: Vec<AcsData>,
    },
    Numbers {
        acs: Vec<ChernNumberData>,
    },
}

/// A closed 6-manifold together with its almost complex structures, given
/// either by full ring data or by Chern numbers only.
#[derive(Debug, Clone, PartialEq)]
pub struct SixManifold {
    pub name: String,
    pub betti: Option<Betti>,
    pub data: SixData,
}

impl SixManifold {
    pub fn from_ring(ring: Arc<ManifoldRing>, acs: Vec<AcsData>) -> Self {
        SixManifold {
            name: ring.name().to_string(),
            betti: Some(ring.betti()),
            data: SixData::Ring { ring, acs },
        }
    }

    pub fn ring(&self) -> Option<&Arc<ManifoldRing>> {
        match &self.data {
            SixData::Ring { ring, .. } => Some(ring),
            SixData::Numbers { .. } => None,
        }
    }

    pub fn acs_names(&self) -> Vec<&str> {
        match &self.data {
            SixData::Ring { acs, .. } => acs.iter().map(|a| a.name.as_str()).collect(),
            SixData::Numbers { acs } => acs.iter().map(|a| a.name.as_str()).collect(),
        }
    }

    pub fn acs_list(&self) -> &[AcsData] {
        match &self.data {
            SixData::Ring { acs, .. } => acs,
            SixData::Numbers { .. } => &[],
        }
    }

    /// The ring-level data of a structure; fails for Chern-numbers-only entries.
    pub fn acs(&self, name: &str) -> Result<&AcsData> {
        match &self.data {
            SixData::Ring { acs, .. } => acs.iter().find(|a| a.name == name).ok_or_else(|| {
                Error::new(
                    ErrorCode::UnknownAcs,
                    format!("`{}` has no almost complex structure `{name}`", self.name),
                )
            }),
            SixData::Numbers { acs } => {
                if acs.iter().any(|a| a.name == name) {
                    Err(Error::new(
                        ErrorCode::InsufficientRingData,
                        format!(
                            "`{}` is given by Chern numbers only; ring data is required",
                            self.name
                        ),
                    ))
                } else {
                    Err(Error::new(
                        ErrorCode::UnknownAcs,
                        format!("`{}` has no almost complex structure `{name}`", self.name),
                    ))
                }
            }
        }
    }

    pub fn chern_numbers(&self, name: &str) -> Result<ChernNumbers> {
        match &self.data {
            SixData::Ring { .. } => self.acs(name)?.chern_numbers(),
            SixData::Numbers { acs } => acs
                .iter()
                .find(|a| a.name == name)
                .map(ChernNumberData::numbers)
                .ok_or_else(|| {
                    Error::new(
                        ErrorCode::UnknownAcs,
                        format!("`{}` has no almost complex structure `{name}`", self.name),
                    )
                }),
        }
    }

    pub fn euler_characteristic(&self) -> Option<i64> {
        self.betti.map(|b| b.euler_characteristic(6))
    }
}

/// An integral class reducing to `w2`, used to present the twistor
/// cohomology of a 4-manifold.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinLift {
    pub name: String,
    pub alpha: ManifoldClass,
}

/// A closed oriented 4-manifold, either by signature and Euler characteristic
/// alone (numeric mode) or with its cohomology ring (ring mode).
#[derive(Debug, Clone, PartialEq)]
pub struct FourManifoldData {
    pub name: String,
    pub signature: i64,
    pub euler: i64,
    pub ring: Option<Arc<ManifoldRing>>,
    pub lifts: Vec<SpinLift>,
    pub acs: Vec<AcsData>,
}

impl FourManifoldData {
    pub fn numeric(name: impl Into<String>, signature: i64, euler: i64) -> Self {
        FourManifoldData {
            name: name.into(),
            signature,
            euler,
            ring: None,
            lifts: Vec::new(),
            acs: Vec::new(),
        }
    }

    /// Drops ring data, keeping `(σ, χ)`.
    pub fn to_numeric(&self) -> Self {
        Self::numeric(self.name.clone(), self.signature, self.euler)
    }

    pub fn is_ring_mode(&self) -> bool {
        self.ring.is_some()
    }

    pub fn require_ring(&self) -> Result<&Arc<ManifoldRing>> {
        self.ring.as_ref().ok_or_else(|| {
            Error::new(
                ErrorCode::InsufficientRingData,
                format!(
                    "`{}` is given by (σ, χ) only; ring data is required",
                    self.name
                ),
            )
        })
    }

    pub fn lift(&self, name: &str) -> Result<&SpinLift> {
        self.lifts.iter().find(|l| l.name == name).ok_or_else(|| {
            Error::new(
                ErrorCode::UnknownSpinLift,
                format!("`{}` has no spin-c lift `{name}`", self.name),
            )
        })
    }

    /// The same manifold with the opposite orientation: `σ ↦ -σ`, `χ ↦ χ`.
    pub fn reverse(&self) -> Self {
        Self::numeric(format!("rev({})", self.name), -self.signature, self.euler)
    }

    /// Connected sum: `σ` adds, `χ` adds with a correction of `-2`.
    pub fn connected_sum(&self, other: &FourManifoldData) -> Self {
        Self::numeric(
            format!("{}#{}", self.name, other.name),
            self.signature + other.signature,
            self.euler + other.euler - 2,
        )
    }

    /// `self # k·other`.
    pub fn connected_sum_copies(&self, other: &FourManifoldData, k: u32) -> Self {
        let mut out = self.to_numeric();
        for _ in 0..k {
            out.signature += other.signature;
            out.euler += other.euler - 2;
        }
        out.name = format!("{}#{}{}", self.name, k, other.name);
        out
    }
}

/// Free-function form of [`FourManifoldData::connected_sum`].
pub fn connected_sum4(a: &FourManifoldData, b: &FourManifoldData) -> FourManifoldData {
    a.connected_sum(b)
}

/// A parsed manifold description.
#[derive(Debug, Clone, PartialEq)]
pub enum ManifoldFile {
    Six(SixManifold),
    Four(FourManifoldData),
}

impl ManifoldFile {
    pub fn name(&self) -> &str {
        match self {
            ManifoldFile::Six(m) => &m.name,
            ManifoldFile::Four(m) => &m.name,
        }
    }

    pub fn six(&self) -> Result<&SixManifold> {
        match self {
            ManifoldFile::Six(m) => Ok(m),
            ManifoldFile::Four(m) => Err(Error::new(
                ErrorCode::WrongDimension,
                format!("`{}` is a 4-manifold; a 6-manifold is required", m.name),
            )),
        }
    }

    pub fn four(&self) -> Result<&FourManifoldData> {
        match self {
            ManifoldFile::Four(m) => Ok(m),
            ManifoldFile::Six(m) => Err(Error::new(
                ErrorCode::WrongDimension,
                format!("`{}` is a 6-manifold; a 4-manifold is required", m.name),
            )),
        }
    }

    pub fn ring(&self) -> Option<&Arc<ManifoldRing>> {
        match self {
            ManifoldFile::Six(m) => m.ring(),
            ManifoldFile::Four(m) => m.ring.as_ref(),
        }
    }
}
