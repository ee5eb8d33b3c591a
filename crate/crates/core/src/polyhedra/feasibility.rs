//! Exact feasibility of log-linear systems `<a_i, u> <= log C_i`.
//!
//! By Farkas' lemma the system is infeasible iff some `lambda >= 0` with
//! `sum lambda_i a_i = 0` has `sum lambda_i log C_i < 0`, i.e.
//! `prod C_i^lambda_i < 1`. It suffices to test the extreme rays of the
//! dependency cone, and those are integral, so the comparison is an exact
//! big-integer comparison.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::cone::IntVector;
use super::dd;
use crate::Rational;

/// Rows `(a, C)` each meaning `<a, u> <= log C` with `C > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicativeSystem {
    n: usize,
    rows: Vec<(IntVector, Rational)>,
}

impl MultiplicativeSystem {
    /// Panics if a row has the wrong length or a nonpositive constant.
    pub fn new(n: usize, rows: Vec<(IntVector, Rational)>) -> Self {
        for (a, c) in &rows {
            assert_eq!(a.len(), n, "row length");
            assert!(c.is_positive(), "multiplicative constants must be positive");
        }
        MultiplicativeSystem { n, rows }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[(IntVector, Rational)] {
        &self.rows
    }

    /// Multiplies every constant by `factor`.
    pub fn scaled(&self, factor: &Rational) -> Self {
        MultiplicativeSystem {
            n: self.n,
            rows: self.rows.iter().map(|(a, c)| (a.clone(), c * factor)).collect(),
        }
    }

    fn nonconstant(&self) -> Vec<usize> {
        (0..self.rows.len())
            .filter(|&i| self.rows[i].0.iter().any(|&x| x != 0))
            .collect()
    }

    /// Extreme rays of `{lambda >= 0 : sum lambda_i a_i = 0}` over the
    /// nonconstant rows, as `(row index, multiplier)` lists.
    fn dependency_rays(&self) -> Vec<Vec<(usize, BigInt)>> {
        let idx = self.nonconstant();
        let m = idx.len();
        if m == 0 {
            return Vec::new();
        }
        let mut normals: Vec<dd::BigVec> = Vec::new();
        for i in 0..m {
            normals.push((0..m).map(|j| if i == j { -BigInt::one() } else { BigInt::zero() }).collect());
        }
        for coord in 0..self.n {
            let col: dd::BigVec = idx.iter().map(|&r| BigInt::from(self.rows[r].0[coord])).collect();
            normals.push(col.iter().map(|x| -x).collect());
            normals.push(col);
        }
        let g = dd::generators_of(m, &normals);
        debug_assert!(g.lineality.is_empty());
        g.rays
            .into_iter()
            .map(|lam| {
                idx.iter()
                    .zip(lam)
                    .filter(|(_, l)| !l.is_zero())
                    .map(|(&r, l)| (r, l))
                    .collect()
            })
            .collect()
    }

    /// Compares `prod C_i^lambda_i` with 1.
    fn product_cmp_one(&self, lam: &[(usize, BigInt)]) -> Ordering {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (r, l) in lam {
            let k = l.to_usize().expect("dependency multiplier fits in usize");
            let c = &self.rows[*r].1;
            num *= num_traits::pow(c.numer().clone(), k);
            den *= num_traits::pow(c.denom().clone(), k);
        }
        num.cmp(&den)
    }

    /// Constant rows read `0 <= log C`; they never cut the space, they can
    /// only make it empty.
    fn constants_ok(&self) -> bool {
        self.rows
            .iter()
            .all(|(a, c)| a.iter().any(|&x| x != 0) || c >= &Rational::one())
    }

    /// Farkas certificate of infeasibility: multipliers per row.
    pub fn infeasibility_certificate(&self) -> Option<Vec<i64>> {
        if let Some(i) = self
            .rows
            .iter()
            .position(|(a, c)| a.iter().all(|&x| x == 0) && c < &Rational::one())
        {
            let mut lam = vec![0; self.rows.len()];
            lam[i] = 1;
            return Some(lam);
        }
        self.dependency_rays()
            .into_iter()
            .find(|lam| self.product_cmp_one(lam) == Ordering::Less)
            .map(|lam| {
                let mut out = vec![0i64; self.rows.len()];
                for (r, l) in lam {
                    out[r] = l.to_i64().expect("small multiplier");
                }
                out
            })
    }

    /// Exact nonemptiness of `{u : <a_i, u> <= log C_i}`.
    pub fn feasible(&self) -> bool {
        self.infeasibility_certificate().is_none()
    }

    /// Nonemptiness of the open system over the nonconstant rows, i.e.
    /// full-dimensionality of the (feasible) polyhedron.
    pub fn strictly_feasible(&self) -> bool {
        self.constants_ok()
            && self
                .dependency_rays()
                .iter()
                .all(|lam| self.product_cmp_one(lam) == Ordering::Greater)
    }
}

/// Convenience wrapper matching the free-function form of the contract.
pub fn feasible(sys: &MultiplicativeSystem) -> bool {
    sys.feasible()
}

/// A point of `{x : a x <= b}` over the rationals found by Fourier-Motzkin
/// elimination, or `None` if the system is empty. The point is chosen
/// centrally where both bounds exist.
pub fn fourier_motzkin_point(n: usize, a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let rows: Vec<(Vec<Rational>, Rational)> = a.iter().cloned().zip(b.iter().cloned()).collect();
    let mut levels = vec![rows];
    for k in (0..n).rev() {
        let cur = levels.last().expect("level");
        let mut next = Vec::new();
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for (row, rhs) in cur {
            if row[k].is_positive() {
                pos.push((row, rhs));
            } else if row[k].is_negative() {
                neg.push((row, rhs));
            } else {
                next.push((row.clone(), rhs.clone()));
            }
        }
        for (p, bp) in &pos {
            for (q, bq) in &neg {
                let fp = -q[k].clone();
                let fq = p[k].clone();
                let row: Vec<Rational> = p.iter().zip(q.iter()).map(|(x, y)| x * &fp + y * &fq).collect();
                next.push((row, *bp * &fp + *bq * &fq));
            }
        }
        levels.push(next);
    }
    // after reversal levels[k] mentions only variables 0..k
    levels.reverse();
    if levels[0].iter().any(|(_, rhs)| rhs.is_negative()) {
        return None;
    }
    let mut x: Vec<Rational> = Vec::with_capacity(n);
    for k in 0..n {
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        for (row, rhs) in &levels[k + 1] {
            let rest: Rational = row[..k].iter().zip(&x).map(|(c, v)| c * v).sum();
            let slack = rhs - rest;
            let coef = &row[k];
            if coef.is_zero() {
                if slack.is_negative() {
                    return None;
                }
                continue;
            }
            let bound = &slack / coef;
            if coef.is_positive() {
                hi = Some(match hi {
                    Some(h) if h < bound => h,
                    _ => bound,
                });
            } else {
                lo = Some(match lo {
                    Some(l) if l > bound => l,
                    _ => bound,
                });
            }
        }
        let v = match (lo, hi) {
            (Some(l), Some(h)) => {
                if l > h {
                    return None;
                }
                (l + h) / Rational::from_integer(2.into())
            }
            (Some(l), None) => l + Rational::one(),
            (None, Some(h)) => h - Rational::one(),
            (None, None) => Rational::zero(),
        };
        x.push(v);
    }
    Some(x)
}
