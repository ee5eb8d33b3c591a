use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::exponent::{format_monomial, ExponentVector};
use super::AlgebraError;
use crate::scalar::Scalar;
use crate::Rational;

/// Sparse multivariate polynomial in `n` variables with coefficients in `T`.
///
/// Invariant: no stored coefficient is zero and every key is a nonnegative
/// exponent vector of length `n`.
#[derive(Clone, PartialEq)]
pub struct Polynomial<T> {
    n: usize,
    terms: BTreeMap<ExponentVector, T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn zero(n: usize) -> Self {
        Polynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: T) -> Self {
        Self::monomial(ExponentVector::zero(n), c)
    }

    /// `c * x^e`. Panics if `e` has a negative entry.
    pub fn monomial(e: ExponentVector, c: T) -> Self {
        assert!(e.is_nonnegative(), "polynomial exponents must be nonnegative");
        let n = e.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Polynomial { n, terms }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, collecting
    /// like terms.
    pub fn from_terms(
        n: usize,
        terms: impl IntoIterator<Item = (ExponentVector, T)>,
    ) -> Result<Self, AlgebraError> {
        let mut p = Self::zero(n);
        for (e, c) in terms {
            if e.len() != n {
                return Err(AlgebraError::DimensionMismatch {
                    expected: n,
                    got: e.len(),
                });
            }
            if !e.is_nonnegative() {
                return Err(AlgebraError::NegativeExponent { pos: 0 });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: ExponentVector, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&e) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(e, s);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &T)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> Option<&T> {
        self.terms.get(e)
    }

    pub fn support(&self) -> BTreeSet<ExponentVector> {
        self.terms.keys().cloned().collect()
    }

    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.degree()).max()
    }

    /// Terms in descending graded-lex order (the printing order).
    pub fn sorted_terms(&self) -> Vec<(&ExponentVector, &T)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.grlex_cmp(a.0));
        v
    }

    pub fn evaluate(&self, point: &[T]) -> Result<T, AlgebraError> {
        if point.len() != self.n {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.n,
                got: point.len(),
            });
        }
        let mut acc = T::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e.as_slice()) {
                term = term * num_traits::pow(x.clone(), k as usize);
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.n != other.n {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let mut out = Self::zero(self.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.checked_add(eb)?, ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn checked_pow(&self, k: u32) -> Result<Self, AlgebraError> {
        let mut acc = Self::constant(self.n, T::one());
        for _ in 0..k {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = Self::zero(self.n);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a.clone() * c.clone());
        }
        out
    }

    pub fn map_coeffs<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Polynomial<U> {
        let mut out = Polynomial::zero(self.n);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    fn combine(&self, other: &Self, sign: bool) -> Self {
        assert_eq!(self.n, other.n, "polynomials over different variable counts");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            let c = if sign { c.clone() } else { -c.clone() };
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl Polynomial<Rational> {
    /// Renders the polynomial in descending graded-lex order, e.g.
    /// `x^2*y - 3/4*x*y^3 + 1`.
    pub fn format_with(&self, vars: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let negative = c < &Rational::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = format_monomial(e, vars);
            if e.is_zero() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{abs}*{mono}"));
            }
        }
        out
    }
}

impl<T: Scalar> Add for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn add(self, rhs: Self) -> Polynomial<T> {
        self.combine(rhs, true)
    }
}

impl<T: Scalar> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn sub(self, rhs: Self) -> Polynomial<T> {
        self.combine(rhs, false)
    }
}

impl<T: Scalar> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn neg(self) -> Polynomial<T> {
        self.scale(&-T::one())
    }
}

/// Panics on exponent overflow; use [`Polynomial::checked_mul`] on untrusted
/// input.
impl<T: Scalar> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn mul(self, rhs: Self) -> Polynomial<T> {
        self.checked_mul(rhs).expect("exponent overflow in polynomial product")
    }
}

impl<T: Scalar> fmt::Debug for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn xy() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn evaluate_examples() {
        let f = Polynomial::monomial(ExponentVector::from([2, 1]), rat(1));
        assert_eq!(f.evaluate(&[rat(2), rat(3)]).unwrap(), rat(12));

        let g = &Polynomial::monomial(ExponentVector::from([1, 1]), rat(1))
            - &Polynomial::constant(2, rat(1));
        assert_eq!(g.evaluate(&[rat(1), rat(1)]).unwrap(), rat(0));
        assert_eq!(g.evaluate(&[rat(0), rat(0)]).unwrap(), rat(-1));
    }

    #[test]
    fn evaluate_rejects_wrong_dimension() {
        let f = Polynomial::constant(2, rat(5));
        assert_eq!(
            f.evaluate(&[rat(1)]),
            Err(AlgebraError::DimensionMismatch { expected: 2, got: 1 })
        );
    }

    #[test]
    fn support_examples() {
        let f = Polynomial::from_terms(
            2,
            [(ExponentVector::from([2, 3]), rat(1)), (ExponentVector::from([1, 0]), rat(1))],
        )
        .unwrap();
        let s: Vec<_> = f.support().into_iter().collect();
        assert_eq!(s, vec![ExponentVector::from([1, 0]), ExponentVector::from([2, 3])]);
        assert!(Polynomial::<Rational>::zero(2).support().is_empty());
        assert_eq!(
            Polynomial::constant(2, rat(5)).support().into_iter().collect::<Vec<_>>(),
            vec![ExponentVector::zero(2)]
        );
    }

    #[test]
    fn cancellation_removes_terms() {
        let f = Polynomial::monomial(ExponentVector::from([1, 1]), rat(3));
        assert!((&f - &f).is_zero());
    }

    #[test]
    fn formatting_is_grlex_descending() {
        let f = Polynomial::from_terms(
            2,
            [
                (ExponentVector::from([0, 0]), rat(1)),
                (ExponentVector::from([2, 1]), rat(1)),
                (ExponentVector::from([1, 3]), Rational::new(3.into(), 4.into())),
                (ExponentVector::from([1, 0]), rat(-1)),
            ],
        )
        .unwrap();
        assert_eq!(f.format_with(&xy()), "3/4*x*y^3 + x^2*y - x + 1");
        assert_eq!(Polynomial::<Rational>::zero(2).format_with(&xy()), "0");
    }

    #[test]
    fn float_instantiation_evaluates() {
        let f: Polynomial<f64> = Polynomial::monomial(ExponentVector::from([2, 1]), 1.5);
        assert_eq!(f.evaluate(&[2.0, 3.0]).unwrap(), 18.0);
    }
}
