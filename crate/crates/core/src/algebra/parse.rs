//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*        -- "/" only by nonzero constants
//! unary  := "-" unary | "+" unary | power
//! power  := atom ("^" uint)?
//! atom   := number | ident | "(" expr ")"
//! number := digits ("." digits)?
//! ```

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::exponent::{ExponentVector, MAX_EXPONENT};
use super::polynomial::Polynomial;
use super::AlgebraError;
use crate::{Poly, Rational};

/// Parses `text` as a polynomial in the ordered variables `vars`.
pub fn parse_polynomial(text: &str, vars: &[String]) -> Result<Poly, AlgebraError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(out)
}

/// Parses a nonnegative rational literal such as `3`, `1/2` or `0.25`.
pub fn parse_rational(text: &str) -> Result<Rational, AlgebraError> {
    let t = text.trim();
    let bad = || AlgebraError::Syntax {
        pos: 0,
        message: format!("invalid rational literal `{t}`"),
    };
    if let Some((a, b)) = t.split_once('/') {
        let num: BigInt = a.trim().parse().map_err(|_| bad())?;
        let den: BigInt = b.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Rational::new(num, den))
    } else if let Some((a, b)) = t.split_once('.') {
        if a.is_empty() || b.is_empty() || !b.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let int: BigInt = a.parse().map_err(|_| bad())?;
        let frac: BigInt = b.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), b.len());
        let sign = if a.starts_with('-') { -1 } else { 1 };
        Ok(Rational::new(int * &scale + frac * sign, scale))
    } else {
        let v: BigInt = t.parse().map_err(|_| bad())?;
        Ok(Rational::from_integer(v))
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn n(&self) -> usize {
        self.vars.len()
    }

    fn syntax(&self, message: &str) -> AlgebraError {
        AlgebraError::Syntax {
            pos: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly, AlgebraError> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, AlgebraError> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.unary()?;
            if c == b'*' {
                acc = acc.checked_mul(&rhs)?;
            } else {
                let divisor = constant_value(&rhs).ok_or(AlgebraError::Syntax {
                    pos: at,
                    message: "division is only allowed by constants".into(),
                })?;
                if divisor.is_zero() {
                    return Err(AlgebraError::DivisionByZero);
                }
                acc = acc.scale(&divisor.recip());
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly, AlgebraError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly, AlgebraError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let k = self.exponent()?;
        base.checked_pow(k)
    }

    fn exponent(&mut self) -> Result<u32, AlgebraError> {
        let start = match self.peek() {
            Some(b'-') => return Err(AlgebraError::NegativeExponent { pos: self.pos }),
            Some(c) if c.is_ascii_digit() => self.pos,
            _ => return Err(self.syntax("expected an exponent")),
        };
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.src.get(self.pos) == Some(&b'.') || self.src.get(self.pos) == Some(&b'/') {
            return Err(AlgebraError::NonIntegerExponent { pos: start });
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        match digits.parse::<i64>() {
            Ok(k) if k <= MAX_EXPONENT => Ok(k as u32),
            _ => Err(AlgebraError::ExponentOverflow),
        }
    }

    fn atom(&mut self) -> Result<Poly, AlgebraError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.syntax("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.')
                {
                    self.pos += 1;
                }
                let lit = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let value = parse_rational(lit).map_err(|_| AlgebraError::Syntax {
                    pos: start,
                    message: format!("invalid number `{lit}`"),
                })?;
                Ok(Polynomial::constant(self.n(), value))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let i = self
                    .vars
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| AlgebraError::UnknownVariable {
                        name: name.to_string(),
                        pos: start,
                    })?;
                Ok(Polynomial::monomial(
                    ExponentVector::unit(self.n(), i),
                    Rational::one(),
                ))
            }
            Some(_) => Err(self.syntax("unexpected character")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }
}

fn constant_value(p: &Poly) -> Option<Rational> {
    if p.is_zero() {
        return Some(Rational::zero());
    }
    let mut it = p.terms();
    let (e, c) = it.next()?;
    if it.next().is_none() && e.is_zero() {
        Some(c.clone())
    } else {
        None
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
    fn reads_terms_directly() {
        let f = parse_polynomial("x^2*y - 3*x*y^3", &xy()).unwrap();
        let terms: Vec<_> = f.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
        assert_eq!(
            terms,
            vec![
                (ExponentVector::from([1, 3]), rat(-3)),
                (ExponentVector::from([2, 1]), rat(1)),
            ]
        );
    }

    #[test]
    fn zero_and_like_terms() {
        assert!(parse_polynomial("0", &xy()).unwrap().is_zero());
        let f = parse_polynomial("x*y + x*y", &xy()).unwrap();
        assert_eq!(f.terms().count(), 1);
        assert_eq!(f.coefficient(&ExponentVector::from([1, 1])), Some(&rat(2)));
    }

    #[test]
    fn parentheses_and_division() {
        let f = parse_polynomial("(x + y)^2 / 2", &xy()).unwrap();
        assert_eq!(f.format_with(&xy()), "1/2*x^2 + x*y + 1/2*y^2");
        let g = parse_polynomial("0.25*x", &xy()).unwrap();
        assert_eq!(g.format_with(&xy()), "1/4*x");
    }

    #[test]
    fn error_paths() {
        assert!(matches!(
            parse_polynomial("x + z", &xy()),
            Err(AlgebraError::UnknownVariable { ref name, pos: 4 }) if name == "z"
        ));
        assert!(matches!(
            parse_polynomial("x^1.5", &xy()),
            Err(AlgebraError::NonIntegerExponent { pos: 2 })
        ));
        assert!(matches!(
            parse_polynomial("x^-1", &xy()),
            Err(AlgebraError::NegativeExponent { pos: 2 })
        ));
        assert!(matches!(
            parse_polynomial("x +* y", &xy()),
            Err(AlgebraError::Syntax { pos: 3, .. })
        ));
        assert!(matches!(
            parse_polynomial("x / y", &xy()),
            Err(AlgebraError::Syntax { .. })
        ));
        assert!(matches!(
            parse_polynomial("x^99999999999", &xy()),
            Err(AlgebraError::ExponentOverflow)
        ));
        assert!(matches!(
            parse_polynomial("(x + y", &xy()),
            Err(AlgebraError::Syntax { .. })
        ));
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("1/2").unwrap(), Rational::new(1.into(), 2.into()));
        assert_eq!(parse_rational("1.5").unwrap(), Rational::new(3.into(), 2.into()));
        assert_eq!(parse_rational("7").unwrap(), rat(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }
}
