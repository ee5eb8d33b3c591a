//! The geometric route in the plane: a smooth toric completion of `A^2`
//! refined by stellar subdivisions until every boundary divisor is either
//! densely touched by `S` or disjoint from its closure.
//!
//! A fan ray `w` with a negative entry is a divisor at infinity. It is
//! touched iff `-w` is an asymptotic direction of some tentacle. Removing the
//! untouched divisors leaves an open surface whose regular functions are the
//! monomials with `<w, e> >= 0` on every touched `w`.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::boundedring::{BoundedMonoid, RingError};
use crate::linalg::inertia;
use crate::polyhedra::{is_primitive, IntVector, LatticeCone, PolyhedraError};
use crate::setmodel::{recession_cones, validate, SetSpec};
use crate::Rational;

pub type Ray = [i64; 2];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompletionError {
    #[error("the completion route needs n = 2, got n = {0}")]
    NotPlanar(usize),
    #[error("ray {0:?} is zero or not primitive")]
    BadRay(Ray),
    #[error("intersection matrix says trdeg {verdict}, monoid has trdeg {trdeg}")]
    VerdictContradiction { verdict: Verdict, trdeg: usize },
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Polyhedra(#[from] PolyhedraError),
}

fn det(a: Ray, b: Ray) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

/// 0 for the upper half plane (angle in `[0, pi)`), 1 otherwise.
fn half(v: Ray) -> u8 {
    if v[1] > 0 || (v[1] == 0 && v[0] > 0) {
        0
    } else {
        1
    }
}

/// Counterclockwise angle order starting from `(1, 0)`.
pub fn angle_cmp(a: Ray, b: Ray) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&det(a, b)))
}

/// A complete fan in `Z^2`, rays sorted counterclockwise from `(1, 0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan2D {
    rays: Vec<Ray>,
    labels: Vec<String>,
    exceptional: usize,
}

pub fn initial_fan() -> Fan2D {
    Fan2D {
        rays: vec![[1, 0], [0, 1], [-1, -1]],
        labels: vec!["H1".into(), "H2".into(), "L".into()],
        exceptional: 0,
    }
}

impl Fan2D {
    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn position(&self, r: Ray) -> Option<usize> {
        self.rays.iter().position(|&x| x == r)
    }

    pub fn label_of(&self, r: Ray) -> Option<&str> {
        self.position(r).map(|i| self.labels[i].as_str())
    }

    /// Neighbours of ray `i` in cyclic order.
    pub fn neighbours(&self, i: usize) -> (Ray, Ray) {
        let k = self.rays.len();
        (self.rays[(i + k - 1) % k], self.rays[(i + 1) % k])
    }

    pub fn is_smooth(&self) -> bool {
        let k = self.rays.len();
        (0..k).all(|i| det(self.rays[i], self.rays[(i + 1) % k]) == 1)
    }

    /// Consecutive rays turn strictly counterclockwise, and the turns add
    /// up to one full winding.
    pub fn is_complete(&self) -> bool {
        let k = self.rays.len();
        if k < 3 {
            return false;
        }
        let sorted = self
            .rays
            .windows(2)
            .all(|w| angle_cmp(w[0], w[1]) == Ordering::Less);
        sorted && (0..k).all(|i| det(self.rays[i], self.rays[(i + 1) % k]) > 0)
    }

    pub fn contains_affine_chart(&self) -> bool {
        self.position([1, 0]).is_some() && self.position([0, 1]).is_some()
    }

    /// Self-intersection `c` of the divisor of ray `i`:
    /// `u_prev + u_next = -c u`.
    pub fn self_intersection(&self, i: usize) -> i64 {
        let (p, q) = self.neighbours(i);
        let s = [p[0] + q[0], p[1] + q[1]];
        let u = self.rays[i];
        let c = if u[0] != 0 { -s[0] / u[0] } else { -s[1] / u[1] };
        debug_assert_eq!([s[0] + c * u[0], s[1] + c * u[1]], [0, 0]);
        c
    }

    /// Index `i` such that `target` lies in `cone(rays[i], rays[i + 1])`.
    fn cone_containing(&self, target: Ray) -> usize {
        let k = self.rays.len();
        (0..k)
            .find(|&i| {
                let (a, b) = (self.rays[i], self.rays[(i + 1) % k]);
                det(a, target) >= 0 && det(target, b) >= 0
            })
            .expect("complete fan covers the plane")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupStep {
    pub inserted_ray: Ray,
    pub parent_cone: (Ray, Ray),
    pub label: String,
}

impl fmt::Display for BlowupStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.parent_cone;
        write!(
            f,
            "{} = ({},{}) = ({},{}) + ({},{})",
            self.label, self.inserted_ray[0], self.inserted_ray[1], a[0], a[1], b[0], b[1]
        )
    }
}

/// Stellar subdivisions toward `target` until it is a ray of the fan.
pub fn insert_ray(fan: &Fan2D, target: Ray) -> Result<(Fan2D, Vec<BlowupStep>), CompletionError> {
    if !is_primitive(&target) {
        return Err(CompletionError::BadRay(target));
    }
    let mut fan = fan.clone();
    let mut steps = Vec::new();
    while fan.position(target).is_none() {
        let i = fan.cone_containing(target);
        // (1, 0) is always the first ray, so insertion keeps angle order
        let k = fan.rays.len();
        let (a, b) = (fan.rays[i], fan.rays[(i + 1) % k]);
        let new = [a[0] + b[0], a[1] + b[1]];
        fan.exceptional += 1;
        let label = format!("E{}", fan.exceptional);
        fan.rays.insert(i + 1, new);
        fan.labels.insert(i + 1, label.clone());
        steps.push(BlowupStep {
            inserted_ray: new,
            parent_cone: (a, b),
            label,
        });
    }
    Ok((fan, steps))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorRecord {
    pub ray: Ray,
    pub at_infinity: bool,
    pub touched: bool,
    pub self_intersection: i64,
    pub label: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Zero,
    Two,
    Inconclusive,
    NotComputed,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Zero => "zero",
            Verdict::Two => "two",
            Verdict::Inconclusive => "inconclusive",
            Verdict::NotComputed => "not-computed",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletionReport {
    pub fan: Fan2D,
    pub blowups: Vec<BlowupStep>,
    pub divisors: Vec<DivisorRecord>,
    pub ring: BoundedMonoid,
    pub m_d: Vec<Vec<i64>>,
    pub trdeg_verdict: Verdict,
}

impl CompletionReport {
    pub fn touched(&self) -> Vec<Ray> {
        self.divisors.iter().filter(|d| d.touched).map(|d| d.ray).collect()
    }

    /// Untouched divisors at infinity, in angle order.
    pub fn untouched(&self) -> Vec<Ray> {
        self.divisors
            .iter()
            .filter(|d| d.at_infinity && !d.touched)
            .map(|d| d.ray)
            .collect()
    }
}

fn at_infinity(w: Ray) -> bool {
    w[0] < 0 || w[1] < 0
}

/// Directions spanning the boundary of a planar cone: its extreme rays when
/// pointed, the two lineality directions of a half plane or line, nothing
/// for the whole plane.
fn boundary_directions(c: &LatticeCone) -> Vec<IntVector> {
    match c.lineality_basis() {
        [] => c.rays().to_vec(),
        [l] => vec![l.clone(), l.iter().map(|x| -x).collect()],
        _ => Vec::new(),
    }
}

/// Rays to insert: `-d` for every boundary direction `d` of every
/// asymptotic cone, kept when it points to infinity. Sorted by angle.
fn targets(cones: &[LatticeCone]) -> Vec<Ray> {
    let mut out: Vec<Ray> = cones
        .iter()
        .flat_map(boundary_directions)
        .map(|d| [-d[0], -d[1]])
        .filter(|&w| at_infinity(w))
        .collect();
    out.sort_by(|a, b| angle_cmp(*a, *b));
    out.dedup();
    out
}

/// Builds the completion and checks the intersection-matrix verdict
/// against the monoid.
pub fn compatible_completion(s: &SetSpec) -> Result<CompletionReport, CompletionError> {
    if s.nvars() != 2 {
        return Err(CompletionError::NotPlanar(s.nvars()));
    }
    let diagnostics = validate(s);
    if !diagnostics.is_valid() {
        return Err(RingError::Invalid(Box::new(diagnostics)).into());
    }
    let cones = recession_cones(s).map_err(RingError::from)?;
    completion_from_cones(&cones)
}

pub(crate) fn completion_from_cones(cones: &[LatticeCone]) -> Result<CompletionReport, CompletionError> {
    let mut fan = initial_fan();
    let mut blowups = Vec::new();
    for t in targets(cones) {
        let (next, steps) = insert_ray(&fan, t)?;
        fan = next;
        blowups.extend(steps);
    }

    let divisors: Vec<DivisorRecord> = (0..fan.len())
        .map(|i| {
            let w = fan.rays[i];
            let inf = at_infinity(w);
            DivisorRecord {
                ray: w,
                at_infinity: inf,
                touched: inf && cones.iter().any(|c| c.contains(&[-w[0], -w[1]])),
                self_intersection: fan.self_intersection(i),
                label: fan.labels[i].clone(),
            }
        })
        .collect();

    let normals: Vec<IntVector> = divisors
        .iter()
        .filter(|d| d.touched)
        .map(|d| vec![-d.ray[0], -d.ray[1]])
        .collect();
    let ring_cone = LatticeCone::orthant(2).intersect(&LatticeCone::from_normals(2, &normals)?)?;
    let ring = BoundedMonoid::from_cone(ring_cone)?;

    let mut report = CompletionReport {
        fan,
        blowups,
        divisors,
        ring,
        m_d: Vec::new(),
        trdeg_verdict: Verdict::NotComputed,
    };
    report.m_d = intersection_matrix(&report);
    report.trdeg_verdict = definiteness_verdict(&report.m_d, report.ring.trdeg)?;
    Ok(report)
}

/// Intersection matrix of the untouched divisors at infinity.
pub fn intersection_matrix(report: &CompletionReport) -> Vec<Vec<i64>> {
    let fan = &report.fan;
    let k = fan.len();
    let idx: Vec<usize> = report
        .divisors
        .iter()
        .enumerate()
        .filter(|(_, d)| d.at_infinity && !d.touched)
        .map(|(i, _)| i)
        .collect();
    idx.iter()
        .map(|&i| {
            idx.iter()
                .map(|&j| {
                    if i == j {
                        report.divisors[i].self_intersection
                    } else if (i + 1) % k == j || (j + 1) % k == i {
                        1
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect()
}

/// Signature test: negative definite means trdeg 0, a positive eigenvalue
/// means trdeg 2. A verdict that disagrees with `monoid_trdeg` is an error.
pub fn definiteness_verdict(m: &[Vec<i64>], monoid_trdeg: usize) -> Result<Verdict, CompletionError> {
    let q: Vec<Vec<Rational>> = m
        .iter()
        .map(|row| row.iter().map(|&x| Rational::from_integer(x.into())).collect())
        .collect();
    let sig = inertia(&q);
    let verdict = if sig.positive > 0 {
        Verdict::Two
    } else if sig.zero == 0 {
        Verdict::Zero
    } else {
        Verdict::Inconclusive
    };
    let contradicts = match verdict {
        Verdict::Two => monoid_trdeg != 2,
        Verdict::Zero => monoid_trdeg != 0,
        _ => false,
    };
    if contradicts {
        return Err(CompletionError::VerdictContradiction {
            verdict,
            trdeg: monoid_trdeg,
        });
    }
    Ok(verdict)
}
