//! Dense exact linear algebra over an ordered field.

use crate::scalar::Field;

/// Reduced row echelon form; zero rows are dropped.
pub fn rref<T: Field>(mut rows: Vec<Vec<T>>) -> Vec<Vec<T>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for col in 0..ncols {
        let Some(p) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, p);
        let inv = T::one() / rows[pivot_row][col].clone();
        for x in rows[pivot_row].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for r in 0..rows.len() {
            if r != pivot_row && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in 0..ncols {
                    let d = rows[pivot_row][c].clone() * f.clone();
                    rows[r][c] = rows[r][c].clone() - d;
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.truncate(pivot_row);
    rows
}

pub fn rank<T: Field>(rows: &[Vec<T>]) -> usize {
    rref(rows.to_vec()).len()
}

/// Basis of `{x : rows * x = 0}` in `ncols` unknowns.
pub fn nullspace<T: Field>(rows: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    let r = rref(rows.to_vec());
    let pivots: Vec<usize> = r
        .iter()
        .map(|row| row.iter().position(|x| !x.is_zero()).expect("nonzero row"))
        .collect();
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![T::zero(); ncols];
        v[free] = T::one();
        for (row, &p) in r.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Solves the square system `a x = b`; `None` when `a` is singular.
pub fn solve<T: Field>(a: &[Vec<T>], b: &[T]) -> Option<Vec<T>> {
    let n = a.len();
    let aug: Vec<Vec<T>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let r = rref(aug);
    if r.len() < n || r.iter().any(|row| row[..n].iter().all(|x| x.is_zero())) {
        return None;
    }
    Some(r.into_iter().map(|row| row[n].clone()).collect())
}

/// Orthogonal projection of `v` onto the complement of the row span of
/// `basis`.
pub fn project_out<T: Field>(v: &[T], basis: &[Vec<T>]) -> Vec<T> {
    let b = rref(basis.to_vec());
    if b.is_empty() {
        return v.to_vec();
    }
    let dot = |x: &[T], y: &[T]| {
        x.iter()
            .zip(y)
            .fold(T::zero(), |acc, (a, c)| acc + a.clone() * c.clone())
    };
    let gram: Vec<Vec<T>> = b.iter().map(|bi| b.iter().map(|bj| dot(bi, bj)).collect()).collect();
    let rhs: Vec<T> = b.iter().map(|bi| dot(bi, v)).collect();
    let c = solve(&gram, &rhs).expect("independent rows have a nonsingular Gram matrix");
    let mut out = v.to_vec();
    for (ci, bi) in c.iter().zip(&b) {
        for (o, x) in out.iter_mut().zip(bi) {
            *o = o.clone() - ci.clone() * x.clone();
        }
    }
    out
}

/// Coefficients `c_0, ..., c_n` of `det(t I - m)` (so `c_n = 1`), by the
/// Faddeev-LeVerrier recursion.
pub fn characteristic_polynomial<T: Field>(m: &[Vec<T>]) -> Vec<T> {
    let n = m.len();
    let mut coeffs = vec![T::zero(); n + 1];
    coeffs[n] = T::one();
    let mut prev = vec![vec![T::zero(); n]; n];
    for k in 1..=n {
        // M_k = m * M_{k-1} + c_{n-k+1} I
        let mut cur = vec![vec![T::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = T::zero();
                for l in 0..n {
                    s = s + m[i][l].clone() * prev[l][j].clone();
                }
                if i == j {
                    s = s + coeffs[n - k + 1].clone();
                }
                cur[i][j] = s;
            }
        }
        let mut trace = T::zero();
        for i in 0..n {
            for l in 0..n {
                trace = trace + m[i][l].clone() * cur[l][i].clone();
            }
        }
        let mut kk = T::zero();
        for _ in 0..k {
            kk = kk + T::one();
        }
        coeffs[n - k] = -(trace / kk);
        prev = cur;
    }
    coeffs
}

/// Inertia of a real symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

/// Exact inertia from the characteristic polynomial. All eigenvalues of a
/// symmetric matrix are real, so Descartes' rule of signs counts the
/// positive roots exactly.
pub fn inertia<T: Field>(m: &[Vec<T>]) -> Inertia {
    let n = m.len();
    let p = characteristic_polynomial(m);
    let zero = p.iter().take_while(|c| c.is_zero()).count();
    let sign_changes = |coeffs: &mut dyn Iterator<Item = T>| {
        let mut last: Option<bool> = None;
        let mut changes = 0;
        for c in coeffs {
            if c.is_zero() {
                continue;
            }
            let pos = c.is_positive();
            if last.is_some_and(|l| l != pos) {
                changes += 1;
            }
            last = Some(pos);
        }
        changes
    };
    let positive = sign_changes(&mut p.iter().cloned());
    let negative = sign_changes(&mut p.iter().enumerate().map(|(i, c)| {
        if i % 2 == 1 {
            -c.clone()
        } else {
            c.clone()
        }
    }));
    debug_assert_eq!(positive + negative + zero, n);
    Inertia {
        positive,
        negative,
        zero,
    }
}
