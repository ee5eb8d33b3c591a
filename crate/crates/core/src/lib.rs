//! Rings of polynomials bounded on semi-algebraic sets cut out by monomial
//! inequalities.
//!
//! Two independent routes compute the ring `B(S)`:
//!
//! * [`boundedring`] dualizes the recession cones of the log-images of the
//!   pieces of `S` and takes the Hilbert basis of the resulting exponent
//!   monoid;
//! * [`completion2d`] (planar sets only) builds a smooth toric completion of
//!   the affine plane by blowing up torus-fixed points at infinity until
//!   every boundary divisor is either densely met by `S` or missed by its
//!   closure, and reads the ring off as sections regular along the touched
//!   divisors.
//!
//! [`oracle`] certifies unboundedness numerically along monomial curves and
//! is used to cross-check both.

pub mod algebra;
pub mod boundedring;
pub mod completion2d;
pub mod linalg;
pub mod oracle;
pub mod polyhedra;
pub mod scalar;
pub mod setmodel;
pub mod valuation;

pub use algebra::{ExponentVector, Polynomial};
pub use boundedring::{BoundedMonoid, MembershipVerdict, RingError};
pub use completion2d::{CompletionReport, Fan2D, Verdict};
pub use oracle::{GrowthVerdict, OracleParams};
pub use polyhedra::{HilbertBasis, LatticeCone, MultiplicativeSystem};
pub use setmodel::{DensityDiagnostics, MonomialConstraint, SetSpec, SignRegime, Tentacle};

/// Exact rational scalar used by all symbolic routes.
pub type Rational = num_rational::BigRational;
/// Polynomials with exact rational coefficients.
pub type Poly = Polynomial<Rational>;
/// Polynomials with `f64` coefficients, for quick numeric evaluation.
pub type FloatPoly = Polynomial<f64>;

/// Integer as a [`Rational`].
pub fn rat(v: i64) -> Rational {
    Rational::from_integer(v.into())
}
