//! Exact rational polyhedral cones: both representations, duality,
//! extreme rays, Hilbert bases, lattice membership and log-linear
//! feasibility.

mod cone;
mod dd;
mod feasibility;
mod hilbert;
mod lattice;

pub use cone::{ExtremeRays, IntVector, LatticeCone};
pub use feasibility::{feasible, fourier_motzkin_point, MultiplicativeSystem};
pub use hilbert::{hilbert_basis, HilbertBasis, DEGREE_CAP};
pub use lattice::{lattice_contains, lattice_rank, smith_normal_form, SmithForm};

pub(crate) use cone::{dot, is_primitive};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyhedraError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("integer overflow in cone arithmetic")]
    Overflow,
    #[error("cone is not contained in the nonnegative orthant")]
    NotInOrthant,
    #[error("Hilbert basis search needs degree {needed}, above the cap {cap}")]
    DegreeCapExceeded { needed: i64, cap: i64 },
}

pub fn dual_cone(c: &LatticeCone) -> LatticeCone {
    c.dual()
}

pub fn extreme_rays(c: &LatticeCone) -> ExtremeRays {
    c.extreme_rays()
}

pub fn cone_dimension(c: &LatticeCone) -> usize {
    c.dimension()
}

pub fn relative_interior_point(c: &LatticeCone) -> Option<IntVector> {
    c.relative_interior_point()
}

pub fn minkowski_sum(a: &LatticeCone, b: &LatticeCone) -> Result<LatticeCone, PolyhedraError> {
    a.minkowski_sum(b)
}

pub fn intersect(a: &LatticeCone, b: &LatticeCone) -> Result<LatticeCone, PolyhedraError> {
    a.intersect(b)
}
