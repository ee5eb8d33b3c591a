use num_integer::Integer;

use super::cone::{IntVector, LatticeCone};
use super::PolyhedraError;
use crate::algebra::ExponentVector;

/// Largest total degree the enumeration path will search. Cones whose
/// degree bound exceeds it are rejected rather than silently truncated.
pub const DEGREE_CAP: i64 = 60;

/// Minimal generating set of the monoid `C ∩ Z^n` of a pointed cone inside
/// the nonnegative orthant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertBasis {
    /// Sorted by increasing degree, lexicographically larger first within a
    /// degree.
    pub elements: Vec<ExponentVector>,
    /// Rank of the lattice the elements generate.
    pub rank: usize,
}

impl HilbertBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn as_vectors(&self) -> Vec<IntVector> {
        self.elements.iter().map(|e| e.as_slice().to_vec()).collect()
    }
}

fn det2(a: &[i64], b: &[i64]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Walks from `v1` to `v2` along the boundary of the convex hull of the
/// nonzero lattice points of the cone (Hirzebruch-Jung continued fraction).
/// Requires `det(v1, v2) > 0`.
fn planar_basis(v1: &[i64], v2: &[i64]) -> Vec<IntVector> {
    let mut out = vec![v1.to_vec()];
    let mut cur = v1.to_vec();
    loop {
        let d = det2(&cur, v2);
        debug_assert!(d >= 0);
        if d == 0 {
            break;
        }
        if d == 1 {
            out.push(v2.to_vec());
            break;
        }
        // w0 with det(cur, w0) = 1
        let eg = cur[0].extended_gcd(&cur[1]);
        debug_assert_eq!(eg.gcd, 1);
        let w0 = [-eg.y, eg.x];
        // smallest k with det(w0 + k cur, v2) >= 0
        let k = Integer::div_ceil(&-det2(&w0, v2), &d);
        let next = vec![w0[0] + k * cur[0], w0[1] + k * cur[1]];
        out.push(next.clone());
        if next == v2 {
            break;
        }
        cur = next;
    }
    out
}

/// Enumerates the lattice points of the cone by total degree and keeps the
/// irreducible ones.
fn enumerated_basis(c: &LatticeCone, max_degree: i64) -> Vec<IntVector> {
    let n = c.ambient_dim();
    let mut points: Vec<IntVector> = Vec::new();
    let mut cur = vec![0i64; n];
    fn rec(
        i: usize,
        left: i64,
        cur: &mut Vec<i64>,
        c: &LatticeCone,
        out: &mut Vec<IntVector>,
    ) {
        if i == cur.len() {
            if cur.iter().any(|&x| x != 0) && c.contains(cur) {
                out.push(cur.clone());
            }
            return;
        }
        for v in 0..=left {
            cur[i] = v;
            rec(i + 1, left - v, cur, c, out);
        }
        cur[i] = 0;
    }
    rec(0, max_degree, &mut cur, c, &mut points);
    points.sort_by_key(|p| p.iter().sum::<i64>());

    let mut basis: Vec<IntVector> = Vec::new();
    for p in points {
        let reducible = basis.iter().any(|h| {
            let diff: IntVector = p.iter().zip(h).map(|(a, b)| a - b).collect();
            diff.iter().all(|&x| x >= 0) && c.contains(&diff)
        });
        if !reducible {
            basis.push(p);
        }
    }
    basis
}

/// Hilbert basis of the monoid of lattice points of `c`.
///
/// Planar full-dimensional cones use the continued-fraction walk; all other
/// cones enumerate lattice points up to the sum of the degrees of the
/// `dim` largest extreme rays, which bounds every basis element (each lies
/// in the half-open parallelepiped of some simplicial piece).
pub fn hilbert_basis(c: &LatticeCone) -> Result<HilbertBasis, PolyhedraError> {
    let gens = c.generators();
    if gens.iter().any(|g| g.iter().any(|&x| x < 0)) {
        return Err(PolyhedraError::NotInOrthant);
    }
    let dim = c.dimension();
    let mut elements: Vec<IntVector> = match dim {
        0 => Vec::new(),
        1 => c.rays().to_vec(),
        2 if c.ambient_dim() == 2 => {
            let rays = c.rays();
            let (a, b) = (&rays[0], &rays[1]);
            if det2(a, b) > 0 {
                planar_basis(a, b)
            } else {
                planar_basis(b, a)
            }
        }
        _ => {
            let mut degrees: Vec<i64> = c.rays().iter().map(|r| r.iter().sum()).collect();
            degrees.sort_unstable_by(|a, b| b.cmp(a));
            let bound: i64 = degrees.iter().take(dim).sum();
            if bound > DEGREE_CAP {
                return Err(PolyhedraError::DegreeCapExceeded {
                    needed: bound,
                    cap: DEGREE_CAP,
                });
            }
            enumerated_basis(c, bound)
        }
    };
    elements.sort_by(|a, b| ExponentVector::from(a.clone()).report_cmp(&ExponentVector::from(b.clone())));
    Ok(HilbertBasis {
        rank: super::lattice::lattice_rank(&elements, c.ambient_dim()),
        elements: elements.into_iter().map(ExponentVector::from).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis_of(gens: &[&[i64]]) -> Vec<IntVector> {
        let n = gens[0].len();
        let c = LatticeCone::from_generators(n, &gens.iter().map(|g| g.to_vec()).collect::<Vec<_>>()).unwrap();
        hilbert_basis(&c).unwrap().as_vectors()
    }

    #[test]
    fn example_cone_basis() {
        assert_eq!(basis_of(&[&[2, 1], &[2, 3]]), vec![vec![1, 1], vec![2, 1], vec![2, 3]]);
    }

    #[test]
    fn ray_and_orthant() {
        assert_eq!(basis_of(&[&[1, 0]]), vec![vec![1, 0]]);
        assert_eq!(basis_of(&[&[1, 0], &[0, 1]]), vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn zero_cone_has_empty_basis() {
        let b = hilbert_basis(&LatticeCone::zero(2)).unwrap();
        assert!(b.is_empty());
        assert_eq!(b.rank, 0);
    }

    #[test]
    fn classic_planar_cone() {
        // cone{(0,1),(3,-? )} within orthant: cone{(1,0),(1,3)} has basis
        // (1,0),(1,1),(1,2),(1,3)
        assert_eq!(
            basis_of(&[&[1, 0], &[1, 3]]),
            vec![vec![1, 0], vec![1, 1], vec![1, 2], vec![1, 3]]
        );
    }

    #[test]
    fn three_dimensional_enumeration() {
        // cone over (1,0,0),(0,1,0),(1,1,2): the extra element (1,1,1)
        let b = basis_of(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 2]]);
        assert_eq!(b, vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 1], vec![1, 1, 2]]);
    }

    #[test]
    fn rejects_cones_outside_orthant() {
        let c = LatticeCone::from_generators(2, &[vec![1, -1]]).unwrap();
        assert_eq!(hilbert_basis(&c), Err(PolyhedraError::NotInOrthant));
    }

    #[test]
    fn degree_cap_is_explicit() {
        let c = LatticeCone::from_generators(3, &[vec![40, 1, 0], vec![0, 1, 40], vec![1, 0, 0]]).unwrap();
        assert!(matches!(hilbert_basis(&c), Err(PolyhedraError::DegreeCapExceeded { .. })));
    }
}
