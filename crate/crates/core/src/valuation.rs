//! Monomial valuations `v_w(f) = min { <w, e> : e in supp f }`.
//!
//! In toric terms `v_w` is the order of vanishing along the boundary divisor
//! of the ray `w`; a polynomial with a pole along a divisor compatible with
//! `S` is unbounded on `S`.

use thiserror::Error;

use crate::algebra::ExponentVector;
use crate::polyhedra::is_primitive;
use crate::setmodel::{recession_cone, SetSpec};
use crate::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValuationError {
    #[error("valuation weight must be a nonzero primitive vector")]
    NotPrimitive,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialValuation {
    weight: Vec<i64>,
}

impl MonomialValuation {
    pub fn new(weight: Vec<i64>) -> Result<Self, ValuationError> {
        if !is_primitive(&weight) {
            return Err(ValuationError::NotPrimitive);
        }
        Ok(MonomialValuation { weight })
    }

    pub fn weight(&self) -> &[i64] {
        &self.weight
    }

    /// `None` stands for `+inf` (the zero polynomial).
    pub fn value(&self, f: &Poly) -> Option<i64> {
        f.terms().map(|(e, _)| e.dot(&self.weight)).min()
    }

    pub fn value_of_monomial(&self, e: &ExponentVector) -> i64 {
        e.dot(&self.weight)
    }

    /// `v_w(f) >= 0`.
    pub fn is_regular_along(&self, f: &Poly) -> bool {
        self.value(f).is_none_or(|v| v >= 0)
    }

    /// Whether the divisor of `w` is densely met by (the closure of) `s`:
    /// `-w` is an asymptotic direction of some tentacle. Tentacles whose log
    /// model is infeasible contribute nothing.
    pub fn compatible_with(&self, s: &SetSpec) -> bool {
        let minus_w: Vec<i64> = self.weight.iter().map(|x| -x).collect();
        s.tentacles()
            .iter()
            .filter_map(|t| recession_cone(t).ok())
            .any(|c| c.contains(&minus_w))
    }
}

pub fn value(v: &MonomialValuation, f: &Poly) -> Option<i64> {
    v.value(f)
}

pub fn is_regular_along(v: &MonomialValuation, f: &Poly) -> bool {
    v.is_regular_along(f)
}

pub fn compatible_with(v: &MonomialValuation, s: &SetSpec) -> bool {
    v.compatible_with(s)
}
