//! Exact graded-commutative arithmetic: rational scalars, even-degree
//! manifold cohomology rings, and monic quotient modules over them.

pub mod class;
pub mod quotient;
pub mod ring;
pub mod scalar;

pub use class::ManifoldClass;
pub use quotient::{shift_generator, Orientation, QuotientRing, TwistorElement};
pub use ring::{BasisRef, Betti, ManifoldRing, RingBuilder, Terms, UNIT};
pub use scalar::{format_scalar, int, ratio, to_integer, Scalar};
