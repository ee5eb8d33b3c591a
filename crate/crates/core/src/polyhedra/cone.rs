use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::dd::{self, BigVec, Generators};
use super::PolyhedraError;
use crate::linalg;
use crate::Rational;

/// Integer vector used for rays, normals and lattice points.
pub type IntVector = Vec<i64>;

/// A rational polyhedral cone in `R^n` kept in both representations.
///
/// * V-representation: `rays` plus a `lineality` basis; the cone is
///   `cone(rays) + span(lineality)`.
/// * H-representation: the polar cone's rays and lineality, so the cone is
///   `{d : <a, d> <= 0}` for `a` in `normal_rays` and `a = +-l` for `l` in
///   `normal_lineality` (the latter are implicit equalities).
///
/// Every stored vector is primitive and canonical, so two cones are equal
/// as sets iff they compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeCone {
    n: usize,
    rays: Vec<IntVector>,
    lineality: Vec<IntVector>,
    normal_rays: Vec<IntVector>,
    normal_lineality: Vec<IntVector>,
}

/// Minimal generators of a cone modulo its lineality space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremeRays {
    pub rays: Vec<IntVector>,
    /// Lineality reported as `+-` pairs.
    pub lineality: Vec<IntVector>,
}

fn to_big(v: &[i64]) -> BigVec {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn to_small(v: &[BigInt]) -> Result<IntVector, PolyhedraError> {
    v.iter()
        .map(|x| x.to_i64().ok_or(PolyhedraError::Overflow))
        .collect()
}

fn to_small_all(vs: &[BigVec]) -> Result<Vec<IntVector>, PolyhedraError> {
    vs.iter().map(|v| to_small(v)).collect()
}

fn plus_minus(vs: &[BigVec]) -> Vec<BigVec> {
    vs.iter()
        .flat_map(|v| [v.clone(), v.iter().map(|x| -x).collect()])
        .collect()
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl LatticeCone {
    fn check_dims(n: usize, vs: &[IntVector]) -> Result<(), PolyhedraError> {
        match vs.iter().find(|v| v.len() != n) {
            Some(v) => Err(PolyhedraError::DimensionMismatch {
                expected: n,
                got: v.len(),
            }),
            None => Ok(()),
        }
    }

    fn assemble(n: usize, primal: Generators, polar: Generators) -> Result<Self, PolyhedraError> {
        Ok(LatticeCone {
            n,
            rays: to_small_all(&primal.rays)?,
            lineality: to_small_all(&primal.lineality)?,
            normal_rays: to_small_all(&polar.rays)?,
            normal_lineality: to_small_all(&polar.lineality)?,
        })
    }

    /// `{d : <a, d> <= 0 for every a in normals}`.
    pub fn from_normals(n: usize, normals: &[IntVector]) -> Result<Self, PolyhedraError> {
        Self::check_dims(n, normals)?;
        let primal = dd::generators_of(n, &normals.iter().map(|a| to_big(a)).collect::<Vec<_>>());
        let polar = dd::generators_of(n, &plus_minus_gens(&primal));
        Self::assemble(n, primal, polar)
    }

    /// Nonnegative combinations of `generators`.
    pub fn from_generators(n: usize, generators: &[IntVector]) -> Result<Self, PolyhedraError> {
        Self::check_dims(n, generators)?;
        let polar = dd::generators_of(n, &generators.iter().map(|g| to_big(g)).collect::<Vec<_>>());
        let primal = dd::generators_of(n, &plus_minus_gens(&polar));
        Self::assemble(n, primal, polar)
    }

    pub fn zero(n: usize) -> Self {
        Self::from_generators(n, &[]).expect("zero cone")
    }

    pub fn full_space(n: usize) -> Self {
        Self::from_normals(n, &[]).expect("full space")
    }

    /// The closed nonnegative orthant.
    pub fn orthant(n: usize) -> Self {
        let units: Vec<IntVector> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        Self::from_generators(n, &units).expect("orthant")
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    /// Generators with lineality expanded into `+-` pairs.
    pub fn generators(&self) -> Vec<IntVector> {
        let mut out = self.rays.clone();
        for l in &self.lineality {
            out.push(l.clone());
            out.push(l.iter().map(|x| -x).collect());
        }
        out
    }

    /// Normals with implicit equalities expanded into `+-` pairs.
    pub fn normals(&self) -> Vec<IntVector> {
        let mut out = self.normal_rays.clone();
        for l in &self.normal_lineality {
            out.push(l.clone());
            out.push(l.iter().map(|x| -x).collect());
        }
        out
    }

    pub fn rays(&self) -> &[IntVector] {
        &self.rays
    }

    pub fn lineality_basis(&self) -> &[IntVector] {
        &self.lineality
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn contains(&self, d: &[i64]) -> bool {
        d.len() == self.n && self.normals().iter().all(|a| dot(a, d) <= 0)
    }

    /// Whether `d` is in the relative interior: every non-equality normal is
    /// strictly negative on it.
    pub fn contains_in_relative_interior(&self, d: &[i64]) -> bool {
        self.contains(d) && self.normal_rays.iter().all(|a| dot(a, d) < 0)
    }

    pub fn contains_cone(&self, other: &LatticeCone) -> bool {
        other.generators().iter().all(|g| self.contains(g))
    }

    /// Mutual containment check of the two representations.
    pub fn is_consistent(&self) -> bool {
        let normals = self.normals();
        self.generators()
            .iter()
            .all(|g| normals.iter().all(|a| dot(a, g) <= 0))
            && self
                .rays
                .iter()
                .chain(&self.lineality)
                .chain(&self.normal_rays)
                .chain(&self.normal_lineality)
                .all(|v| is_primitive(v))
    }

    pub fn dimension(&self) -> usize {
        let rows: Vec<Vec<Rational>> = self
            .generators()
            .iter()
            .map(|g| g.iter().map(|&x| Rational::from_integer(x.into())).collect())
            .collect();
        linalg::rank(&rows)
    }

    pub fn extreme_rays(&self) -> ExtremeRays {
        let mut lineality = Vec::new();
        for l in &self.lineality {
            lineality.push(l.clone());
            lineality.push(l.iter().map(|x| -x).collect());
        }
        ExtremeRays {
            rays: self.rays.clone(),
            lineality,
        }
    }

    /// `{e : <e, d> <= 0 for all d in self}`.
    pub fn dual(&self) -> LatticeCone {
        LatticeCone {
            n: self.n,
            rays: self.normal_rays.clone(),
            lineality: self.normal_lineality.clone(),
            normal_rays: self.rays.clone(),
            normal_lineality: self.lineality.clone(),
        }
    }

    pub fn minkowski_sum(&self, other: &LatticeCone) -> Result<LatticeCone, PolyhedraError> {
        if self.n != other.n {
            return Err(PolyhedraError::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let mut gens = self.generators();
        gens.extend(other.generators());
        Self::from_generators(self.n, &gens)
    }

    pub fn intersect(&self, other: &LatticeCone) -> Result<LatticeCone, PolyhedraError> {
        if self.n != other.n {
            return Err(PolyhedraError::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let mut normals = self.normals();
        normals.extend(other.normals());
        Self::from_normals(self.n, &normals)
    }

    /// Sum of the generators: a lattice point in the relative interior, or
    /// `None` for the zero cone. Returned primitive.
    pub fn relative_interior_point(&self) -> Option<IntVector> {
        if self.is_zero() {
            return None;
        }
        let mut s = vec![0i64; self.n];
        for r in &self.rays {
            for (a, b) in s.iter_mut().zip(r) {
                *a += b;
            }
        }
        Some(to_small(&dd::primitive(&to_big(&s))).expect("primitive of small vector"))
    }
}

fn plus_minus_gens(g: &Generators) -> Vec<BigVec> {
    let mut out = g.rays.clone();
    out.extend(plus_minus(&g.lineality));
    out
}

pub(crate) fn is_primitive(v: &[i64]) -> bool {
    let g = v.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
    g == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cone(gens: &[[i64; 2]]) -> LatticeCone {
        LatticeCone::from_generators(2, &gens.iter().map(|g| g.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn dual_of_example_cone() {
        let c = cone(&[[1, -2], [-3, 2]]);
        let d = c.dual();
        assert_eq!(d.rays(), &[vec![2, 1], vec![2, 3]]);
        assert_eq!(d.dual(), c);
    }

    #[test]
    fn dual_of_trivial_cones() {
        assert_eq!(LatticeCone::zero(2).dual(), LatticeCone::full_space(2));
        assert_eq!(LatticeCone::full_space(2).dual(), LatticeCone::zero(2));
    }

    #[test]
    fn extreme_rays_examples() {
        let c = LatticeCone::from_normals(2, &[vec![1, 0], vec![1, 1]]).unwrap();
        assert_eq!(c.extreme_rays().rays, vec![vec![-1, 1], vec![0, -1]]);

        let half = LatticeCone::from_normals(2, &[vec![1, 0]]).unwrap();
        let er = half.extreme_rays();
        assert_eq!(er.lineality, vec![vec![0, 1], vec![0, -1]]);
        assert_eq!(er.rays, vec![vec![-1, 0]]);

        assert_eq!(LatticeCone::orthant(2).extreme_rays().rays, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(cone(&[[2, 1], [2, 3]]).dimension(), 2);
        assert_eq!(cone(&[[1, 0]]).dimension(), 1);
        assert_eq!(LatticeCone::zero(2).dimension(), 0);
    }

    #[test]
    fn interior_point_examples() {
        let c = cone(&[[2, 1], [2, 3]]);
        let p = c.relative_interior_point().unwrap();
        assert!(c.contains_in_relative_interior(&p));
        assert_eq!(p, vec![1, 1]);
        assert_eq!(cone(&[[1, 0]]).relative_interior_point(), Some(vec![1, 0]));
        assert_eq!(LatticeCone::zero(2).relative_interior_point(), None);
    }

    #[test]
    fn sum_and_intersection() {
        assert_eq!(cone(&[[1, 0]]).minkowski_sum(&cone(&[[0, 1]])).unwrap(), LatticeCone::orthant(2));
        let below_diag = LatticeCone::from_normals(2, &[vec![-1, 1]]).unwrap();
        let c = LatticeCone::orthant(2).intersect(&below_diag).unwrap();
        assert_eq!(c, cone(&[[1, 0], [1, 1]]));
        let t = cone(&[[2, 1], [2, 3]]);
        assert_eq!(t.intersect(&LatticeCone::full_space(2)).unwrap(), t);
    }

    #[test]
    fn representations_agree() {
        for c in [
            cone(&[[2, 1], [2, 3]]),
            cone(&[[1, 0], [-1, 0], [0, 1]]),
            LatticeCone::full_space(3),
            LatticeCone::from_normals(3, &[vec![1, 1, 0], vec![0, -1, 2]]).unwrap(),
        ] {
            assert!(c.is_consistent(), "{c:?}");
        }
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        assert!(LatticeCone::from_generators(2, &[vec![1, 0, 0]]).is_err());
    }
}
