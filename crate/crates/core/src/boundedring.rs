//! The direct route: `B(S)` as a monomial algebra.
//!
//! `x^e` is bounded on a tentacle iff `<e, d> <= 0` for every asymptotic
//! direction `d` of its log polyhedron. Over a union the conditions add up,
//! so the exponent monoid of `B(S)` is the lattice points of
//!
//! ```text
//! E = R_{>=0}^n ∩ (σ_1 + ... + σ_k)^∨
//! ```
//!
//! and its Hilbert basis generates `B(S)`. On full-dimensional tentacles
//! distinct exponents are separated by generic directions, so a polynomial
//! is bounded iff each of its monomials is.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::{format_monomial, ExponentVector};
use crate::polyhedra::{
    dot, hilbert_basis, lattice_contains, HilbertBasis, IntVector, LatticeCone, PolyhedraError,
};
use crate::setmodel::{recession_cones, validate, DensityDiagnostics, SetError, SetSpec};
use crate::valuation::MonomialValuation;
use crate::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("set failed validation")]
    Invalid(Box<DensityDiagnostics>),
    #[error("dimension mismatch: set has {expected} variables, input has {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("exponent {0} has a negative entry")]
    NegativeExponent(ExponentVector),
    #[error(transparent)]
    Set(#[from] SetError),
    #[error(transparent)]
    Polyhedra(#[from] PolyhedraError),
}

/// The exponent monoid of `B(S)` together with its cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedMonoid {
    pub basis: HilbertBasis,
    /// `{e >= 0 : <e, d> <= 0 for every asymptotic direction d}`.
    pub exponent_cone: LatticeCone,
    pub trdeg: usize,
}

impl BoundedMonoid {
    /// Monoid of lattice points of a cone inside the orthant.
    pub fn from_cone(exponent_cone: LatticeCone) -> Result<Self, PolyhedraError> {
        let basis = hilbert_basis(&exponent_cone)?;
        let trdeg = basis.rank;
        Ok(BoundedMonoid {
            basis,
            exponent_cone,
            trdeg,
        })
    }

    pub fn contains(&self, e: &ExponentVector) -> bool {
        e.is_nonnegative() && self.exponent_cone.contains(e.as_slice())
    }

    /// Generators rendered as monomials, in basis order.
    pub fn generator_strings(&self, vars: &[String]) -> Vec<String> {
        self.basis
            .elements
            .iter()
            .map(|e| format_monomial(e, vars))
            .collect()
    }

    /// Weights `w` of the facets of the exponent cone that reach infinity
    /// (some negative entry): `x^e` is in the monoid iff `v_w(x^e) >= 0` for
    /// all of them and `e >= 0`.
    pub fn boundary_weights(&self) -> Vec<IntVector> {
        let mut ws: Vec<IntVector> = self
            .exponent_cone
            .normals()
            .into_iter()
            .map(|a| a.into_iter().map(|x| -x).collect::<IntVector>())
            .filter(|w| w.iter().any(|&x| x < 0))
            .collect();
        ws.sort();
        ws.dedup();
        ws
    }
}

/// `R_{>=0}^n ∩ (σ_1 + ... + σ_k)^∨`.
pub fn exponent_cone(n: usize, cones: &[LatticeCone]) -> Result<LatticeCone, PolyhedraError> {
    let mut sum = LatticeCone::zero(n);
    for c in cones {
        sum = sum.minkowski_sum(c)?;
    }
    LatticeCone::orthant(n).intersect(&sum.dual())
}

fn checked_cones(s: &SetSpec) -> Result<Vec<LatticeCone>, RingError> {
    let diagnostics = validate(s);
    if !diagnostics.is_valid() {
        return Err(RingError::Invalid(Box::new(diagnostics)));
    }
    Ok(recession_cones(s)?)
}

pub fn bounded_monoid(s: &SetSpec) -> Result<BoundedMonoid, RingError> {
    let cones = checked_cones(s)?;
    Ok(BoundedMonoid::from_cone(exponent_cone(s.nvars(), &cones)?)?)
}

/// Outcome of a membership query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipVerdict {
    pub bounded: bool,
    pub violating_exponent: Option<ExponentVector>,
    /// An asymptotic direction `d` of some tentacle with
    /// `<violating_exponent, d> > 0`, chosen to maximize that pairing.
    pub violating_direction: Option<IntVector>,
    /// `v_w(f)` for each boundary weight of the exponent cone; `None` is
    /// `+inf`.
    pub per_divisor_values: BTreeMap<IntVector, Option<i64>>,
}

pub fn is_bounded(f: &Poly, s: &SetSpec) -> Result<MembershipVerdict, RingError> {
    if f.nvars() != s.nvars() {
        return Err(RingError::DimensionMismatch {
            expected: s.nvars(),
            got: f.nvars(),
        });
    }
    let cones = checked_cones(s)?;
    let monoid = BoundedMonoid::from_cone(exponent_cone(s.nvars(), &cones)?)?;
    let per_divisor_values = monoid
        .boundary_weights()
        .into_iter()
        .map(|w| {
            let v = MonomialValuation::new(w.clone()).expect("cone normals are primitive");
            (w, v.value(f))
        })
        .collect();

    let mut support: Vec<&ExponentVector> = f.terms().map(|(e, _)| e).collect();
    support.sort_by(|a, b| b.grlex_cmp(a));
    let violating = support.into_iter().find(|e| !monoid.contains(e));
    let (violating_exponent, violating_direction) = match violating {
        None => (None, None),
        Some(e) => {
            let mut best: Option<(i64, IntVector)> = None;
            for g in cones.iter().flat_map(|c| c.generators()) {
                let v = dot(e.as_slice(), &g);
                if v > 0 && best.as_ref().is_none_or(|(bv, _)| v > *bv) {
                    best = Some((v, g));
                }
            }
            (Some(e.clone()), best.map(|(_, g)| g))
        }
    };
    Ok(MembershipVerdict {
        bounded: violating_exponent.is_none(),
        violating_exponent,
        violating_direction,
        per_divisor_values,
    })
}

pub fn trdeg(s: &SetSpec) -> Result<usize, RingError> {
    Ok(bounded_monoid(s)?.trdeg)
}

/// Whether `x^e` lies in the fraction field of `B(S)`, decided as membership
/// of `e` in the group generated by the Hilbert basis.
pub fn fraction_field_contains(e: &ExponentVector, s: &SetSpec) -> Result<bool, RingError> {
    if e.len() != s.nvars() {
        return Err(RingError::DimensionMismatch {
            expected: s.nvars(),
            got: e.len(),
        });
    }
    if !e.is_nonnegative() {
        return Err(RingError::NegativeExponent(e.clone()));
    }
    let monoid = bounded_monoid(s)?;
    Ok(lattice_contains(&monoid.basis.as_vectors(), e.as_slice()))
}

/// A proper bounded monomial, if one exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessResult {
    pub witness: Option<ExponentVector>,
    pub reason: String,
}

/// `e >= 0`, `e != 0`, and `<e, d> < 0` for every nonzero asymptotic
/// direction `d` of every tentacle.
pub fn verify_witness(e: &ExponentVector, s: &SetSpec) -> Result<bool, RingError> {
    if e.len() != s.nvars() {
        return Err(RingError::DimensionMismatch {
            expected: s.nvars(),
            got: e.len(),
        });
    }
    let cones = checked_cones(s)?;
    Ok(strictly_negative_on(e, &cones))
}

fn strictly_negative_on(e: &ExponentVector, cones: &[LatticeCone]) -> bool {
    e.is_nonnegative()
        && !e.is_zero()
        && cones.iter().all(|c| {
            c.is_pointed() && c.rays().iter().all(|d| dot(e.as_slice(), d) < 0)
        })
}

/// Finds `h = x^e` bounded on `S` whose nonzero level sets meet `S`
/// compactly. Such `e` exists iff the exponent cone is full-dimensional;
/// the candidate is the primitive sum of its extreme rays, which is then
/// verified against every asymptotic direction.
pub fn proper_witness(s: &SetSpec) -> Result<WitnessResult, RingError> {
    let cones = checked_cones(s)?;
    let n = s.nvars();
    let cone = exponent_cone(n, &cones)?;
    if cone.dimension() < n {
        return Ok(WitnessResult {
            witness: None,
            reason: format!(
                "trdeg {} < {}: no such h exists",
                cone.dimension(),
                n
            ),
        });
    }
    let e = ExponentVector::from(
        cone.relative_interior_point()
            .expect("full-dimensional cone is nonzero"),
    );
    if strictly_negative_on(&e, &cones) {
        Ok(WitnessResult {
            witness: Some(e),
            reason: "sum of the extreme rays of the exponent cone; strictly negative on every asymptotic direction".into(),
        })
    } else {
        Ok(WitnessResult {
            witness: None,
            reason: "interior candidate failed strict verification".into(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial;
    use crate::rat;
    use crate::setmodel::{MonomialConstraint, SignRegime, Tentacle};

    fn set(normals: &[[i64; 2]]) -> SetSpec {
        let cs = normals
            .iter()
            .map(|a| MonomialConstraint::from_normal(a, rat(1)).unwrap())
            .collect();
        SetSpec::single(Tentacle::new(2, cs, SignRegime::Absolute).unwrap())
    }

    fn p(s: &str) -> Poly {
        parse_polynomial(s, &["x".to_string(), "y".to_string()]).unwrap()
    }

    fn basis(s: &SetSpec) -> Vec<Vec<i64>> {
        bounded_monoid(s).unwrap().basis.as_vectors()
    }

    #[test]
    fn golden_rings() {
        assert_eq!(basis(&set(&[[1, 0]])), vec![vec![1, 0]]);
        assert_eq!(basis(&set(&[[1, 0], [1, 1]])), vec![vec![1, 0], vec![1, 1]]);
        assert_eq!(basis(&set(&[[2, 1], [2, 3]])), vec![vec![1, 1], vec![2, 1], vec![2, 3]]);
    }

    #[test]
    fn membership_examples() {
        let strip = set(&[[1, 0]]);
        let v = is_bounded(&p("y"), &strip).unwrap();
        assert!(!v.bounded);
        assert_eq!(v.violating_direction, Some(vec![0, 1]));
        assert_eq!(v.violating_exponent, Some(ExponentVector::from([0, 1])));
        assert_eq!(v.per_divisor_values.get(&vec![0, -1]), Some(&Some(-1)));

        let t = set(&[[1, 0], [1, 1]]);
        assert!(is_bounded(&p("x*y"), &t).unwrap().bounded);
        let v = is_bounded(&p("x*y^2"), &t).unwrap();
        assert!(!v.bounded);
        assert_eq!(v.violating_direction, Some(vec![-1, 1]));
        assert!(is_bounded(&p("7"), &t).unwrap().bounded);
        assert!(is_bounded(&p("0"), &strip).unwrap().bounded);
    }

    #[test]
    fn trdeg_examples() {
        assert_eq!(trdeg(&set(&[[1, 0]])).unwrap(), 1);
        assert_eq!(trdeg(&set(&[[1, 0], [1, 1]])).unwrap(), 2);
        assert_eq!(trdeg(&set(&[])).unwrap(), 0);
    }

    #[test]
    fn fraction_field_examples() {
        let ex = set(&[[2, 1], [2, 3]]);
        assert!(fraction_field_contains(&ExponentVector::from([0, 1]), &ex).unwrap());
        let strip = set(&[[1, 0]]);
        assert!(!fraction_field_contains(&ExponentVector::from([0, 1]), &strip).unwrap());
        assert!(fraction_field_contains(&ExponentVector::zero(2), &set(&[])).unwrap());
        assert!(fraction_field_contains(&ExponentVector::from([-1, 0]), &strip).is_err());
    }

    #[test]
    fn witness_examples() {
        let ex = set(&[[2, 1], [2, 3]]);
        let w = proper_witness(&ex).unwrap().witness.unwrap();
        assert_eq!(w, ExponentVector::from([1, 1]));
        assert!(verify_witness(&ExponentVector::from([1, 1]), &ex).unwrap());

        let strip = set(&[[1, 0]]);
        let r = proper_witness(&strip).unwrap();
        assert!(r.witness.is_none());
        assert!(r.reason.contains("no such h exists"));

        let t = set(&[[1, 0], [1, 1]]);
        let w = proper_witness(&t).unwrap().witness.unwrap();
        assert_eq!(w, ExponentVector::from([2, 1]));
        assert!(!verify_witness(&ExponentVector::from([1, 1]), &t).unwrap());
    }

    #[test]
    fn invalid_sets_are_rejected() {
        let diag = set(&[[1, -1], [-1, 1]]);
        assert!(matches!(bounded_monoid(&diag), Err(RingError::Invalid(_))));
    }
}
