use std::cmp::Ordering;
use std::fmt;

use super::AlgebraError;

/// Largest absolute exponent accepted from user input.
pub const MAX_EXPONENT: i64 = 1 << 31;

/// A multi-index `(e_1, ..., e_n)`.
///
/// Polynomial supports only ever hold nonnegative entries; constraint
/// normals (`alpha - beta`) and valuation weights may be negative.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<i64>);

impl ExponentVector {
    pub fn new(entries: Vec<i64>) -> Self {
        ExponentVector(entries)
    }

    pub fn zero(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    /// The `i`-th unit vector of length `n`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        ExponentVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    /// Total degree (sum of entries).
    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn dot(&self, w: &[i64]) -> i64 {
        debug_assert_eq!(self.0.len(), w.len());
        self.0.iter().zip(w).map(|(a, b)| a * b).sum()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.len() != other.len() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        let entries = self
            .0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| {
                a.checked_add(*b)
                    .filter(|s| s.abs() <= 2 * MAX_EXPONENT)
                    .ok_or(AlgebraError::ExponentOverflow)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ExponentVector(entries))
    }

    pub fn sub(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Self {
        ExponentVector(self.0.iter().map(|a| a * k).collect())
    }

    /// Graded lexicographic comparison: total degree first, then the entries
    /// lexicographically (so `x > y` when variables are listed as `x, y`).
    pub fn grlex_cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }

    /// Ascending generator order used for reporting: increasing degree, and
    /// within one degree the lexicographically larger exponent first.
    pub fn report_cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl From<Vec<i64>> for ExponentVector {
    fn from(v: Vec<i64>) -> Self {
        ExponentVector(v)
    }
}

impl From<&[i64]> for ExponentVector {
    fn from(v: &[i64]) -> Self {
        ExponentVector(v.to_vec())
    }
}

impl<const N: usize> From<[i64; N]> for ExponentVector {
    fn from(v: [i64; N]) -> Self {
        ExponentVector(v.to_vec())
    }
}

impl std::ops::Index<usize> for ExponentVector {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Renders `x^e` with the given variable names, e.g. `x^2*y`. The zero
/// exponent renders as `1`.
pub fn format_monomial(e: &ExponentVector, vars: &[String]) -> String {
    let parts: Vec<String> = e
        .as_slice()
        .iter()
        .zip(vars)
        .filter(|(k, _)| **k != 0)
        .map(|(k, v)| if *k == 1 { v.clone() } else { format!("{v}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}
