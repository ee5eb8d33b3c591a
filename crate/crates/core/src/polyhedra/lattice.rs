//! Integer lattices: Smith normal form and lattice membership.

use num_integer::Integer;
use num_traits::Signed;

/// Result of `U * A * V = D` with `U`, `V` unimodular and `D` diagonal with
/// each diagonal entry dividing the next. Only `U` is tracked; it is all
/// membership tests need.
#[derive(Debug, Clone)]
pub struct SmithForm<I> {
    pub diagonal: Vec<I>,
    pub left: Vec<Vec<I>>,
}

impl<I: Integer + Signed + Clone> SmithForm<I> {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

/// Smith normal form of the `m x k` matrix `a` (row-major).
pub fn smith_normal_form<I: Integer + Signed + Clone>(a: &[Vec<I>]) -> SmithForm<I> {
    let m = a.len();
    let k = a.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<I>> = a.to_vec();
    let mut u: Vec<Vec<I>> = (0..m)
        .map(|i| (0..m).map(|j| if i == j { I::one() } else { I::zero() }).collect())
        .collect();
    let mut diagonal = Vec::new();

    for t in 0..m.min(k) {
        // smallest nonzero entry of the trailing block
        let pick = |a: &Vec<Vec<I>>| {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..k {
                    if !a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            best
        };
        let Some((pi, pj)) = pick(&a) else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }

        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in 0..k {
                    let d = q.clone() * a[t][j].clone();
                    a[i][j] = a[i][j].clone() - d;
                }
                for j in 0..m {
                    let d = q.clone() * u[t][j].clone();
                    u[i][j] = u[i][j].clone() - d;
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..k {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut() {
                    let d = q.clone() * row[t].clone();
                    row[j] = row[j].clone() - d;
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // divisibility: fold an offending row into the pivot row
                let offending = (t + 1..m)
                    .find(|&i| (t + 1..k).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
                match offending {
                    Some(i) => {
                        for j in 0..k {
                            let v = a[i][j].clone();
                            a[t][j] = a[t][j].clone() + v;
                        }
                        for j in 0..m {
                            let v = u[i][j].clone();
                            u[t][j] = u[t][j].clone() + v;
                        }
                    }
                    None => break,
                }
            }
            // re-pivot on the smallest entry of row/column t
            let mut best = (t, t);
            for i in t..m {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..k {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                a.swap(t, best.0);
                u.swap(t, best.0);
            }
            if best.1 != t {
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
            }
        }
        diagonal.push(a[t][t].abs());
    }
    SmithForm { diagonal, left: u }
}

/// Whether `v` lies in the subgroup of `Z^n` generated by `generators`.
pub fn lattice_contains<I: Integer + Signed + Clone>(generators: &[Vec<I>], v: &[I]) -> bool {
    let n = v.len();
    if generators.is_empty() {
        return v.iter().all(|x| x.is_zero());
    }
    // columns are generators
    let a: Vec<Vec<I>> = (0..n)
        .map(|i| generators.iter().map(|g| g[i].clone()).collect())
        .collect();
    let snf = smith_normal_form(&a);
    let uv: Vec<I> = snf
        .left
        .iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(I::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
        })
        .collect();
    uv.iter().enumerate().all(|(i, c)| match snf.diagonal.get(i) {
        Some(d) => c.is_multiple_of(d),
        None => c.is_zero(),
    })
}

/// Index-free rank of the lattice generated by `generators`.
pub fn lattice_rank<I: Integer + Signed + Clone>(generators: &[Vec<I>], n: usize) -> usize {
    if generators.is_empty() {
        return 0;
    }
    let a: Vec<Vec<I>> = (0..n)
        .map(|i| generators.iter().map(|g| g[i].clone()).collect())
        .collect();
    smith_normal_form(&a).rank()
}
