//! Tentacle sets: finite unions of regions `|x^alpha| <= C |x^beta|`.
//!
//! Under `u_i = log |x_i|` each region becomes a rational polyhedron whose
//! recession cone records the directions in which the region runs off to
//! infinity. Points with a vanishing coordinate are treated as limits of
//! points of the torus, i.e. a tentacle means the closure of its
//! intersection with `(R^*)^n`.

use std::fmt;

use num_traits::{One, Signed};
use thiserror::Error;

use crate::algebra::ExponentVector;
use crate::polyhedra::{IntVector, LatticeCone, MultiplicativeSystem, PolyhedraError};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetError {
    #[error("constraint exponents have lengths {alpha} and {beta}, expected {expected}")]
    DimensionMismatch {
        alpha: usize,
        beta: usize,
        expected: usize,
    },
    #[error("constraint exponents must be nonnegative")]
    NegativeExponent,
    #[error("constraint bound must be positive")]
    NonPositiveBound,
    #[error("a set needs at least one tentacle")]
    Empty,
    #[error("tentacle is empty (its log model is infeasible)")]
    Infeasible,
    #[error(transparent)]
    Polyhedra(#[from] PolyhedraError),
}

/// Which points a tentacle admits before the constraints are applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignRegime {
    /// All sign patterns; the constraints only see absolute values.
    Absolute,
    /// Only the open positive orthant (and its closure).
    PositiveOrthant,
}

/// `|x^alpha| <= bound * |x^beta|`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialConstraint {
    alpha: ExponentVector,
    beta: ExponentVector,
    bound: Rational,
}

impl MonomialConstraint {
    pub fn new(alpha: ExponentVector, beta: ExponentVector, bound: Rational) -> Result<Self, SetError> {
        if alpha.len() != beta.len() {
            return Err(SetError::DimensionMismatch {
                alpha: alpha.len(),
                beta: beta.len(),
                expected: alpha.len(),
            });
        }
        if !alpha.is_nonnegative() || !beta.is_nonnegative() {
            return Err(SetError::NegativeExponent);
        }
        if !bound.is_positive() {
            return Err(SetError::NonPositiveBound);
        }
        Ok(MonomialConstraint { alpha, beta, bound })
    }

    /// `|x^normal| <= bound` with `alpha`, `beta` the positive and negative
    /// parts of `normal`.
    pub fn from_normal(normal: &[i64], bound: Rational) -> Result<Self, SetError> {
        let alpha: Vec<i64> = normal.iter().map(|&a| a.max(0)).collect();
        let beta: Vec<i64> = normal.iter().map(|&a| (-a).max(0)).collect();
        Self::new(alpha.into(), beta.into(), bound)
    }

    pub fn alpha(&self) -> &ExponentVector {
        &self.alpha
    }

    pub fn beta(&self) -> &ExponentVector {
        &self.beta
    }

    pub fn bound(&self) -> &Rational {
        &self.bound
    }

    pub fn nvars(&self) -> usize {
        self.alpha.len()
    }

    /// `alpha - beta`, unscaled.
    pub fn normal(&self) -> IntVector {
        self.alpha.sub(&self.beta).into_vec()
    }

    pub fn is_constant(&self) -> bool {
        self.alpha == self.beta
    }

    /// Exact membership test of a rational point.
    pub fn holds_at(&self, point: &[Rational]) -> bool {
        let mono = |e: &ExponentVector| {
            point
                .iter()
                .zip(e.as_slice())
                .fold(Rational::one(), |acc, (x, &k)| acc * num_traits::pow(x.abs(), k as usize))
        };
        mono(&self.alpha) <= &self.bound * mono(&self.beta)
    }
}

/// A conjunction of monomial constraints.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tentacle {
    n: usize,
    constraints: Vec<MonomialConstraint>,
    regime: SignRegime,
}

impl Tentacle {
    pub fn new(n: usize, constraints: Vec<MonomialConstraint>, regime: SignRegime) -> Result<Self, SetError> {
        if let Some(c) = constraints.iter().find(|c| c.nvars() != n) {
            return Err(SetError::DimensionMismatch {
                alpha: c.alpha.len(),
                beta: c.beta.len(),
                expected: n,
            });
        }
        Ok(Tentacle { n, constraints, regime })
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn constraints(&self) -> &[MonomialConstraint] {
        &self.constraints
    }

    pub fn regime(&self) -> SignRegime {
        self.regime
    }

    pub fn with_constraint(&self, c: MonomialConstraint) -> Result<Self, SetError> {
        let mut cs = self.constraints.clone();
        cs.push(c);
        Self::new(self.n, cs, self.regime)
    }

    /// Exact membership of a point of the torus.
    pub fn contains(&self, point: &[Rational]) -> bool {
        if point.len() != self.n {
            return false;
        }
        if self.regime == SignRegime::PositiveOrthant && point.iter().any(|x| !x.is_positive()) {
            return false;
        }
        self.constraints.iter().all(|c| c.holds_at(point))
    }
}

/// A finite union of tentacles in `n` variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetSpec {
    n: usize,
    tentacles: Vec<Tentacle>,
}

impl SetSpec {
    pub fn new(n: usize, tentacles: Vec<Tentacle>) -> Result<Self, SetError> {
        if tentacles.is_empty() {
            return Err(SetError::Empty);
        }
        if let Some(t) = tentacles.iter().find(|t| t.n != n) {
            return Err(SetError::DimensionMismatch {
                alpha: t.n,
                beta: t.n,
                expected: n,
            });
        }
        Ok(SetSpec { n, tentacles })
    }

    pub fn single(t: Tentacle) -> Self {
        SetSpec {
            n: t.n,
            tentacles: vec![t],
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn tentacles(&self) -> &[Tentacle] {
        &self.tentacles
    }

    /// `self ∪ other`.
    pub fn union(&self, other: &SetSpec) -> Result<SetSpec, SetError> {
        let mut ts = self.tentacles.clone();
        ts.extend(other.tentacles.iter().cloned());
        SetSpec::new(self.n, ts)
    }

    pub fn contains(&self, point: &[Rational]) -> bool {
        self.tentacles.iter().any(|t| t.contains(point))
    }
}

/// The log image of a tentacle: one row `(alpha - beta, C)` per constraint.
/// The model is the same in every sign chamber.
pub fn log_model(t: &Tentacle) -> MultiplicativeSystem {
    MultiplicativeSystem::new(
        t.n,
        t.constraints
            .iter()
            .map(|c| (c.normal(), c.bound.clone()))
            .collect(),
    )
}

/// `{d : <alpha - beta, d> <= 0}` for a feasible tentacle.
pub fn recession_cone(t: &Tentacle) -> Result<LatticeCone, SetError> {
    if !log_model(t).feasible() {
        return Err(SetError::Infeasible);
    }
    let normals: Vec<IntVector> = t
        .constraints
        .iter()
        .filter(|c| !c.is_constant())
        .map(|c| c.normal())
        .collect();
    Ok(LatticeCone::from_normals(t.n, &normals)?)
}

/// Whether a recession cone leaves the nonpositive orthant, i.e. whether
/// some coordinate grows without bound on the tentacle.
pub fn cone_is_unbounded(c: &LatticeCone) -> bool {
    c.generators().iter().any(|g| g.iter().any(|&x| x > 0))
}

/// Findings for one tentacle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TentacleReport {
    pub feasible: bool,
    pub full_dimensional: bool,
    pub unbounded: bool,
    pub recession_cone: Option<LatticeCone>,
}

/// Set-level density and noetherianity findings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityDiagnostics {
    /// Outside every compact set, `S` is still Zariski dense.
    pub zariski_dense_at_infinity: bool,
    pub unbounded: bool,
    /// The conductor of `B(S)` in the coordinate ring is zero.
    pub conductor_zero: bool,
    /// `S` is unbounded but not dense at infinity, so `B(S)` is not
    /// noetherian.
    pub noetherian_obstruction: bool,
    pub messages: Vec<String>,
    pub tentacles: Vec<TentacleReport>,
}

pub const NOT_NOETHERIAN_MESSAGE: &str =
    "S is unbounded but not Zariski dense at infinity: B_V(S) is not noetherian";

impl DensityDiagnostics {
    /// All tentacles feasible and full-dimensional: the precondition of the
    /// ring computations.
    pub fn is_valid(&self) -> bool {
        self.tentacles.iter().all(|t| t.feasible && t.full_dimensional)
    }

    /// `S` is bounded, so every polynomial is bounded on it.
    pub fn is_bounded_set(&self) -> bool {
        !self.unbounded
    }
}

impl fmt::Display for DensityDiagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.messages {
            writeln!(f, "{m}")?;
        }
        Ok(())
    }
}

/// Per-tentacle feasibility and dimension checks, plus the set-level
/// density diagnostics.
///
/// A full-dimensional unbounded tentacle contains an open set running off
/// to infinity, so it alone makes `S` dense at infinity. Lower-dimensional
/// tentacles lie on binomial hypersurfaces and never do; bounded ones do
/// not reach infinity. The conductor is the vanishing ideal of the Zariski
/// closure at infinity, hence zero exactly when `S` is dense there.
pub fn validate(s: &SetSpec) -> DensityDiagnostics {
    let mut messages = Vec::new();
    let mut reports = Vec::new();
    for (i, t) in s.tentacles.iter().enumerate() {
        let sys = log_model(t);
        let feasible = sys.feasible();
        let full_dimensional = feasible && sys.strictly_feasible();
        let cone = if feasible { recession_cone(t).ok() } else { None };
        let unbounded = cone.as_ref().is_some_and(cone_is_unbounded);
        if !feasible {
            messages.push(format!("tentacle {}: empty (log model infeasible)", i + 1));
        } else if !full_dimensional {
            messages.push(format!(
                "tentacle {}: log polyhedron is not full-dimensional (binomial equality forced)",
                i + 1
            ));
        }
        reports.push(TentacleReport {
            feasible,
            full_dimensional,
            unbounded,
            recession_cone: cone,
        });
    }
    let unbounded = reports.iter().any(|r| r.unbounded);
    let dense = reports.iter().any(|r| r.unbounded && r.full_dimensional);
    let obstruction = unbounded && !dense;
    if !unbounded {
        messages.push("S is bounded: B(S) = R[V]".to_string());
    } else if dense {
        messages.push("S is Zariski dense at infinity; the conductor of B(S) is zero".to_string());
    }
    if obstruction {
        messages.push(NOT_NOETHERIAN_MESSAGE.to_string());
    }
    DensityDiagnostics {
        zariski_dense_at_infinity: dense,
        unbounded,
        conductor_zero: dense,
        noetherian_obstruction: obstruction,
        messages,
        tentacles: reports,
    }
}

/// Recession cones of all tentacles of a validated set.
pub fn recession_cones(s: &SetSpec) -> Result<Vec<LatticeCone>, SetError> {
    s.tentacles.iter().map(recession_cone).collect()
}
