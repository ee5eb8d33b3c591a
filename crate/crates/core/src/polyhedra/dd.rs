//! Double description conversion from half-spaces to generators.
//!
//! Input rows `a` describe `{d : <a, d> <= 0}`. Output is a lineality basis
//! plus the extreme rays of the pointed part, each primitive and in a
//! canonical form: the lineality basis is the primitive-scaled reduced row
//! echelon basis and every ray is orthogonal to the lineality space.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg;
use crate::Rational;

pub(crate) type BigVec = Vec<BigInt>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Generators {
    pub rays: Vec<BigVec>,
    pub lineality: Vec<BigVec>,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Scales `v` to the primitive integer vector on the same ray.
pub(crate) fn primitive(v: &[BigInt]) -> BigVec {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Clears denominators of a rational vector and makes it primitive.
pub(crate) fn primitive_from_rational(v: &[Rational]) -> BigVec {
    let l = v
        .iter()
        .fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
    primitive(&ints)
}

fn to_rational(v: &[BigInt]) -> Vec<Rational> {
    v.iter().cloned().map(Rational::from_integer).collect()
}

struct Ray {
    v: BigVec,
    zeros: BTreeSet<usize>,
}

/// Converts `{d : <a, d> <= 0 for all a in normals}` into generators.
pub(crate) fn generators_of(n: usize, normals: &[BigVec]) -> Generators {
    let mut lineality: Vec<BigVec> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, a) in normals.iter().enumerate() {
        if a.iter().all(Zero::is_zero) {
            continue;
        }
        if let Some(idx) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lineality.remove(idx);
            let mut s0 = dot(a, &l0);
            if s0.is_positive() {
                l0 = l0.iter().map(|x| -x).collect();
                s0 = -s0;
            }
            // s0 < 0: project the remaining generators onto the hyperplane
            let neg_s0 = -&s0;
            for l in lineality.iter_mut() {
                let al = dot(a, l);
                if !al.is_zero() {
                    let nl: BigVec = l.iter().zip(&l0).map(|(x, y)| &neg_s0 * x + &al * y).collect();
                    *l = primitive(&nl);
                }
            }
            for r in rays.iter_mut() {
                let ar = dot(a, &r.v);
                if !ar.is_zero() {
                    let nv: BigVec = r.v.iter().zip(&l0).map(|(x, y)| &neg_s0 * x + &ar * y).collect();
                    r.v = primitive(&nv);
                }
                r.zeros.insert(k);
            }
            let zeros: BTreeSet<usize> = (0..k).collect();
            rays.push(Ray {
                v: primitive(&l0),
                zeros,
            });
            continue;
        }

        let vals: Vec<BigInt> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        if pos.is_empty() {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.zeros.insert(k);
                }
            }
            continue;
        }
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();

        let mut fresh = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common: BTreeSet<usize> = rays[p].zeros.intersection(&rays[q].zeros).copied().collect();
                let adjacent = (0..rays.len())
                    .filter(|&r| r != p && r != q)
                    .all(|r| !common.is_subset(&rays[r].zeros));
                if !adjacent {
                    continue;
                }
                let v: BigVec = rays[q]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(x, y)| &vals[p] * x - &vals[q] * y)
                    .collect();
                let mut zeros = common;
                zeros.insert(k);
                fresh.push(Ray {
                    v: primitive(&v),
                    zeros,
                });
            }
        }
        let mut kept: Vec<Ray> = Vec::new();
        for (i, mut r) in rays.into_iter().enumerate() {
            if vals[i].is_positive() {
                continue;
            }
            if vals[i].is_zero() {
                r.zeros.insert(k);
            }
            kept.push(r);
        }
        kept.extend(fresh);
        rays = kept;
    }

    canonical(n, rays.into_iter().map(|r| r.v).collect(), lineality)
}

/// Canonical representatives: rref lineality basis, rays projected off the
/// lineality space, deduplicated and sorted.
pub(crate) fn canonical(n: usize, rays: Vec<BigVec>, lineality: Vec<BigVec>) -> Generators {
    let lin_q: Vec<Vec<Rational>> = lineality.iter().map(|l| to_rational(l)).collect();
    let basis = linalg::rref(lin_q);
    let mut lin: Vec<BigVec> = basis.iter().map(|b| primitive_from_rational(b)).collect();
    lin.sort();

    let mut out: BTreeSet<BigVec> = BTreeSet::new();
    for r in rays {
        let p = linalg::project_out(&to_rational(&r), &basis);
        let v = primitive_from_rational(&p);
        if v.iter().any(|x| !x.is_zero()) {
            debug_assert_eq!(v.len(), n);
            out.insert(v);
        }
    }
    Generators {
        rays: out.into_iter().collect(),
        lineality: lin,
    }
}
