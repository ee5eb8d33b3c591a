//! Numeric certification of unboundedness, independent of the monoid
//! computation.
//!
//! A tentacle contains the curves `x_i = s_i * p_i * lambda^{d_i}` for any
//! base point `p` of its positive part and any asymptotic direction `d`:
//! every constraint `|x^a| <= C |x^b|` picks up the factor
//! `lambda^{<a - b, d>} <= 1`. Sampling `|f|` along `lambda = 2^k` is done in
//! exact rational arithmetic, so a certificate is a proof that `f` exceeds
//! the threshold on the set, with growth that does not stall.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::ExponentVector;
use crate::boundedring::{is_bounded, RingError};
use crate::polyhedra::{fourier_motzkin_point, IntVector, MultiplicativeSystem};
use crate::setmodel::{log_model, recession_cones, validate, SetSpec, SignRegime, Tentacle};
use crate::{Poly, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct OracleParams {
    /// Number of doublings `K`; samples are taken at `2^0, ..., 2^K`.
    pub scales: u32,
    pub threshold: Rational,
    /// Required growth factor between consecutive samples in the window.
    pub ratio: Rational,
    pub window: usize,
}

impl Default for OracleParams {
    fn default() -> Self {
        OracleParams {
            scales: 40,
            threshold: Rational::from_integer(BigInt::from(1_000_000)),
            ratio: Rational::new(3.into(), 2.into()),
            window: 5,
        }
    }
}

impl OracleParams {
    pub fn with_scales(scales: u32) -> Self {
        OracleParams {
            scales,
            ..Self::default()
        }
    }
}

/// `x_i(k) = signs_i * base_i * 2^(k d_i)`; `base` is `exp(u0)` for a point
/// `u0` of the log polyhedron.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveSpec {
    pub direction: IntVector,
    pub base: Vec<Rational>,
    pub signs: Vec<i8>,
    pub scales: u32,
}

impl CurveSpec {
    pub fn point(&self, k: u32) -> Vec<Rational> {
        let two = Rational::from_integer(BigInt::from(2));
        self.base
            .iter()
            .zip(&self.direction)
            .zip(&self.signs)
            .map(|((p, &d), &s)| {
                let e = i32::try_from(i64::from(k) * d).expect("curve exponent fits in i32");
                let v = p * two.pow(e);
                if s < 0 {
                    -v
                } else {
                    v
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthVerdict {
    pub unbounded_certified: bool,
    /// Largest sampled `|f|`; saturates to `inf` past `f64` range.
    pub max_abs: f64,
    /// `log10 |f|` at each sample of the reported curve.
    pub trace: Vec<f64>,
    pub curve: Option<CurveSpec>,
}

impl GrowthVerdict {
    fn none() -> Self {
        GrowthVerdict {
            unbounded_certified: false,
            max_abs: 0.0,
            trace: Vec::new(),
            curve: None,
        }
    }
}

fn log2_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        x.to_f64().expect("finite").log2()
    } else {
        let shift = bits - 64;
        (x >> shift).to_f64().expect("finite").log2() + shift as f64
    }
}

/// A rational point with positive entries inside the tentacle, found at a
/// shrunken copy of its constants so that rounding `exp` stays inside.
pub fn base_point(t: &Tentacle) -> Option<Vec<Rational>> {
    let n = t.nvars();
    // constant rows do not depend on the point; shrinking them would only
    // make the system empty
    let full = log_model(t);
    let rows: Vec<_> = full
        .rows()
        .iter()
        .filter(|(a, _)| a.iter().any(|&x| x != 0))
        .cloned()
        .collect();
    let sys = MultiplicativeSystem::new(n, rows.clone());
    let a: Vec<Vec<Rational>> = rows
        .iter()
        .map(|(a, _)| a.iter().map(|&x| Rational::from_integer(x.into())).collect())
        .collect();
    for m in 1..=24 {
        let shrink = Rational::one() - Rational::new(1.into(), BigInt::from(1u64 << m));
        if !sys.scaled(&shrink).feasible() {
            continue;
        }
        let b: Vec<Rational> = rows
            .iter()
            .map(|(_, c)| {
                let l = (c * &shrink).to_f64().expect("finite constant").ln();
                let lower = l - 1e-9 * (1.0 + l.abs());
                Rational::from_float(lower).expect("finite")
            })
            .collect();
        let Some(u) = fourier_motzkin_point(n, &a, &b) else {
            continue;
        };
        let p: Option<Vec<Rational>> = u
            .iter()
            .map(|ui| Rational::from_float(ui.to_f64()?.exp()).filter(|v| v.is_positive()))
            .collect();
        if let Some(p) = p {
            if t.contains(&p) {
                return Some(p);
            }
        }
    }
    None
}

fn sign_patterns(n: usize, regime: SignRegime) -> Vec<Vec<i8>> {
    match regime {
        SignRegime::PositiveOrthant => vec![vec![1; n]],
        SignRegime::Absolute => (0..1u32 << n)
            .map(|mask| (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect())
            .collect(),
    }
}

/// `mant * 2^exp / den`, kept unreduced to avoid gcds in the sampling loop.
#[derive(Debug, Clone)]
struct Magnitude {
    mant: BigInt,
    exp: i64,
    den: BigInt,
}

impl Magnitude {
    fn from_rational(r: &Rational) -> Self {
        Magnitude {
            mant: r.numer().abs(),
            exp: 0,
            den: r.denom().clone(),
        }
    }

    fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    fn scaled(&self, r: &Rational) -> Self {
        Magnitude {
            mant: &self.mant * r.numer(),
            exp: self.exp,
            den: &self.den * r.denom(),
        }
    }

    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let mut a = &self.mant * &other.den;
        let mut b = &other.mant * &self.den;
        let d = self.exp - other.exp;
        if d >= 0 {
            a <<= d as usize;
        } else {
            b <<= (-d) as usize;
        }
        a.cmp(&b)
    }

    fn log10(&self) -> f64 {
        if self.mant.is_zero() {
            return f64::NEG_INFINITY;
        }
        (log2_big(&self.mant) + self.exp as f64 - log2_big(&self.den)) * std::f64::consts::LOG10_2
    }
}

/// `r = m * 2^e` with `m` an integer, when `r` is dyadic.
fn dyadic(r: &Rational) -> Option<(BigInt, i64)> {
    let den = r.denom();
    let j = den.trailing_zeros().unwrap_or(0);
    if den != &(BigInt::one() << j) {
        return None;
    }
    let tz = r.numer().trailing_zeros().unwrap_or(0);
    Some((r.numer() >> tz, tz as i64 - j as i64))
}

/// `|f|` at every sample of a curve with dyadic base point, using integer
/// arithmetic and a shared binary exponent per sample.
fn dyadic_magnitudes(f: &Poly, curve: &CurveSpec, base: &[(BigInt, i64)]) -> Vec<Magnitude> {
    let lcm = f
        .terms()
        .fold(BigInt::one(), |acc, (_, c)| num_integer::Integer::lcm(&acc, c.denom()));
    let terms: Vec<(BigInt, i64, i64)> = f
        .terms()
        .map(|(e, c)| {
            let mut m = c.numer() * (&lcm / c.denom());
            let mut shift = 0i64;
            for ((&a, (bm, be)), &s) in e.as_slice().iter().zip(base).zip(&curve.signs) {
                m *= num_traits::pow(bm.clone(), a as usize);
                if s < 0 && a % 2 == 1 {
                    m = -m;
                }
                shift += a * be;
            }
            (m, shift, e.dot(&curve.direction))
        })
        .collect();
    (0..=curve.scales as i64)
        .map(|k| {
            let exps: Vec<i64> = terms.iter().map(|(_, s, d)| s + k * d).collect();
            let low = exps.iter().copied().min().unwrap_or(0);
            let sum: BigInt = terms
                .iter()
                .zip(&exps)
                .map(|((m, _, _), &x)| m << (x - low) as usize)
                .sum();
            Magnitude {
                mant: sum.abs(),
                exp: low,
                den: lcm.clone(),
            }
        })
        .collect()
}

/// Samples `f` along one curve.
pub fn sample(f: &Poly, curve: &CurveSpec, params: &OracleParams) -> GrowthVerdict {
    let base: Option<Vec<(BigInt, i64)>> = curve.base.iter().map(dyadic).collect();
    let mags: Vec<Magnitude> = match base {
        Some(base) => dyadic_magnitudes(f, curve, &base),
        None => (0..=curve.scales)
            .map(|k| Magnitude::from_rational(&f.evaluate(&curve.point(k)).expect("dimensions checked")))
            .collect(),
    };
    let trace: Vec<f64> = mags.iter().map(Magnitude::log10).collect();
    let threshold = Magnitude::from_rational(&params.threshold);
    let top = trace.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let max_abs = if top == f64::NEG_INFINITY { 0.0 } else { 10f64.powf(top) };
    let k = mags.len();
    let certified = params.window < k
        && mags[k - 1 - params.window].is_positive()
        && (k - params.window..k).all(|i| mags[i].cmp(&mags[i - 1].scaled(&params.ratio)).is_ge())
        && mags[k - 1].cmp(&threshold).is_gt();
    GrowthVerdict {
        unbounded_certified: certified,
        max_abs,
        trace,
        curve: Some(curve.clone()),
    }
}

/// The curves tried: every tentacle admitting the hint direction, or every
/// generator of every asymptotic cone when there is no hint, crossed with
/// every sign pattern of the regime.
pub fn curves(s: &SetSpec, hint: Option<&[i64]>, scales: u32) -> Vec<CurveSpec> {
    let n = s.nvars();
    let Ok(cones) = recession_cones(s) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for (t, c) in s.tentacles().iter().zip(&cones) {
        let dirs: Vec<IntVector> = match hint {
            Some(h) if c.contains(h) => vec![h.to_vec()],
            Some(_) => continue,
            None => {
                let g = c.generators();
                if g.is_empty() {
                    vec![vec![0; n]]
                } else {
                    g
                }
            }
        };
        let Some(base) = base_point(t) else { continue };
        for signs in sign_patterns(n, t.regime()) {
            for d in &dirs {
                out.push(CurveSpec {
                    direction: d.clone(),
                    base: base.clone(),
                    signs: signs.clone(),
                    scales,
                });
            }
        }
    }
    out
}

/// One-sided: a certificate proves unboundedness, its absence proves
/// nothing. Returns the first certifying curve, or else the curve with the
/// largest sample.
pub fn certify_unbounded(
    f: &Poly,
    s: &SetSpec,
    hint: Option<&[i64]>,
    params: &OracleParams,
) -> GrowthVerdict {
    if f.nvars() != s.nvars() || !validate(s).is_valid() {
        return GrowthVerdict::none();
    }
    certify_on(f, &curves(s, hint, params.scales), params)
}

/// [`certify_unbounded`] over a precomputed curve list.
pub fn certify_on(f: &Poly, curves: &[CurveSpec], params: &OracleParams) -> GrowthVerdict {
    let mut best = GrowthVerdict::none();
    for curve in curves {
        let v = sample(f, curve, params);
        if v.unbounded_certified {
            return v;
        }
        if best.curve.is_none() || v.max_abs > best.max_abs {
            best = v;
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disagreement {
    pub exponent: ExponentVector,
    pub symbolic_bounded: bool,
    pub direction: Option<IntVector>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub checked: usize,
    pub disagreements: Vec<Disagreement>,
}

impl ConsistencyReport {
    pub fn is_consistent(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// All exponents `e >= 0` with coordinate sum at most `bound`, in grlex
/// order.
pub fn monomials_up_to(n: usize, bound: i64) -> Vec<ExponentVector> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                let used: i64 = v.iter().sum();
                (0..=bound - used).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    let mut es: Vec<ExponentVector> = out.into_iter().map(ExponentVector::from).collect();
    es.sort_by(|a, b| a.grlex_cmp(b));
    es
}

/// Runs the symbolic membership test and the oracle on every monomial up
/// to `degree_bound`. Unbounded monomials must be certified along the
/// reported direction; bounded ones must never be certified.
pub fn consistency_check(
    s: &SetSpec,
    degree_bound: i64,
    params: &OracleParams,
) -> Result<ConsistencyReport, RingError> {
    let n = s.nvars();
    let mut disagreements = Vec::new();
    let monomials = monomials_up_to(n, degree_bound);
    let mut cache: HashMap<Option<IntVector>, Vec<CurveSpec>> = HashMap::new();
    for e in &monomials {
        let f = Poly::monomial(e.clone(), Rational::one());
        let verdict = is_bounded(&f, s)?;
        let hint = if verdict.bounded {
            None
        } else {
            verdict.violating_direction.clone()
        };
        let tried = cache
            .entry(hint.clone())
            .or_insert_with(|| curves(s, hint.as_deref(), params.scales));
        let certified = certify_on(&f, tried, params).unbounded_certified;
        // a missing direction on an unbounded monomial is itself a failure
        let wrong = if verdict.bounded {
            certified
        } else {
            hint.is_none() || !certified
        };
        if wrong {
            disagreements.push(Disagreement {
                exponent: e.clone(),
                symbolic_bounded: verdict.bounded,
                direction: verdict.violating_direction,
            });
        }
    }
    Ok(ConsistencyReport {
        checked: monomials.len(),
        disagreements,
    })
}
