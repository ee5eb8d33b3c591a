//! Machine-readable report. Field names and nesting are stable; absent
//! sections are `null`.

use boundring_core::algebra::parse_rational;
use boundring_core::completion2d::CompletionReport;
use boundring_core::{DensityDiagnostics, ExponentVector, MonomialConstraint, SetSpec, SignRegime, Tentacle};
use serde::{Deserialize, Serialize};

use crate::dsl::{to_dsl, ParsedSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintJson {
    pub alpha: Vec<i64>,
    pub beta: Vec<i64>,
    pub bound: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TentacleJson {
    /// `"absolute"` or `"positive"`.
    pub regime: String,
    pub constraints: Vec<ConstraintJson>,
}

/// The input set, enough to rebuild it exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecJson {
    pub name: String,
    pub vars: Vec<String>,
    pub tentacles: Vec<TentacleJson>,
    pub dsl: String,
}

impl SpecJson {
    pub fn from_parsed(p: &ParsedSet) -> Self {
        let tentacles = p
            .spec
            .tentacles()
            .iter()
            .map(|t| TentacleJson {
                regime: match t.regime() {
                    SignRegime::Absolute => "absolute".into(),
                    SignRegime::PositiveOrthant => "positive".into(),
                },
                constraints: t
                    .constraints()
                    .iter()
                    .map(|c| ConstraintJson {
                        alpha: c.alpha().as_slice().to_vec(),
                        beta: c.beta().as_slice().to_vec(),
                        bound: c.bound().to_string(),
                    })
                    .collect(),
            })
            .collect();
        SpecJson {
            name: p.name.clone(),
            vars: p.vars.clone(),
            tentacles,
            dsl: to_dsl(&p.vars, &p.name, &p.spec),
        }
    }

    pub fn to_parsed(&self) -> Result<ParsedSet, String> {
        let n = self.vars.len();
        let tentacles = self
            .tentacles
            .iter()
            .map(|t| {
                let regime = match t.regime.as_str() {
                    "absolute" => SignRegime::Absolute,
                    "positive" => SignRegime::PositiveOrthant,
                    r => return Err(format!("unknown regime '{r}'")),
                };
                let cs = t
                    .constraints
                    .iter()
                    .map(|c| {
                        let bound = parse_rational(&c.bound).map_err(|e| e.to_string())?;
                        MonomialConstraint::new(
                            ExponentVector::from(c.alpha.clone()),
                            ExponentVector::from(c.beta.clone()),
                            bound,
                        )
                        .map_err(|e| e.to_string())
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Tentacle::new(n, cs, regime).map_err(|e| e.to_string())
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ParsedSet {
            vars: self.vars.clone(),
            name: self.name.clone(),
            spec: SetSpec::new(n, tentacles).map_err(|e| e.to_string())?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TentacleDiagnosticsJson {
    pub feasible: bool,
    pub full_dimensional: bool,
    pub unbounded: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagnosticsJson {
    pub valid: bool,
    pub bounded_set: bool,
    pub zariski_dense_at_infinity: bool,
    pub unbounded: bool,
    pub conductor_zero: bool,
    pub noetherian_obstruction: bool,
    pub messages: Vec<String>,
    pub tentacles: Vec<TentacleDiagnosticsJson>,
}

impl From<&DensityDiagnostics> for DiagnosticsJson {
    fn from(d: &DensityDiagnostics) -> Self {
        DiagnosticsJson {
            valid: d.is_valid(),
            bounded_set: d.is_bounded_set(),
            zariski_dense_at_infinity: d.zariski_dense_at_infinity,
            unbounded: d.unbounded,
            conductor_zero: d.conductor_zero,
            noetherian_obstruction: d.noetherian_obstruction,
            messages: d.messages.clone(),
            tentacles: d
                .tentacles
                .iter()
                .map(|t| TentacleDiagnosticsJson {
                    feasible: t.feasible,
                    full_dimensional: t.full_dimensional,
                    unbounded: t.unbounded,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupJson {
    pub label: String,
    pub ray: [i64; 2],
    pub parent_cone: [[i64; 2]; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorJson {
    pub label: String,
    pub ray: [i64; 2],
    pub at_infinity: bool,
    pub touched: bool,
    pub self_intersection: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletionJson {
    pub rays: Vec<[i64; 2]>,
    pub blowups: Vec<BlowupJson>,
    pub divisors: Vec<DivisorJson>,
    pub touched: Vec<[i64; 2]>,
    pub untouched: Vec<[i64; 2]>,
    pub m_d: Vec<Vec<i64>>,
    pub verdict: String,
    pub hilbert_basis: Vec<Vec<i64>>,
}

impl From<&CompletionReport> for CompletionJson {
    fn from(r: &CompletionReport) -> Self {
        CompletionJson {
            rays: r.fan.rays().to_vec(),
            blowups: r
                .blowups
                .iter()
                .map(|b| BlowupJson {
                    label: b.label.clone(),
                    ray: b.inserted_ray,
                    parent_cone: [b.parent_cone.0, b.parent_cone.1],
                })
                .collect(),
            divisors: r
                .divisors
                .iter()
                .map(|d| DivisorJson {
                    label: d.label.clone(),
                    ray: d.ray,
                    at_infinity: d.at_infinity,
                    touched: d.touched,
                    self_intersection: d.self_intersection,
                })
                .collect(),
            touched: r.touched(),
            untouched: r.untouched(),
            m_d: r.m_d.clone(),
            verdict: r.trdeg_verdict.to_string(),
            hilbert_basis: r.ring.basis.as_vectors(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightValueJson {
    pub weight: Vec<i64>,
    /// `null` is `+inf` (zero polynomial).
    pub value: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleJson {
    pub certified: bool,
    /// `log10` of the largest sampled `|f|`; `null` when nothing was sampled
    /// or every sample vanished.
    pub max_log10: Option<f64>,
    pub direction: Option<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MemberJson {
    pub polynomial: String,
    pub bounded: bool,
    pub violating_exponent: Option<Vec<i64>>,
    pub violating_direction: Option<Vec<i64>>,
    pub per_divisor_values: Vec<WeightValueJson>,
    pub oracle: Option<OracleJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub exponent: Option<Vec<i64>>,
    pub monomial: Option<String>,
    pub verified: bool,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisagreementJson {
    pub exponent: Vec<i64>,
    pub symbolic_bounded: bool,
    pub direction: Option<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    /// `null` when the completion route does not apply.
    pub route_equivalence: Option<bool>,
    pub degree_bound: i64,
    pub monomials_checked: usize,
    pub disagreements: Vec<DisagreementJson>,
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub set: SpecJson,
    pub diagnostics: DiagnosticsJson,
    pub generators: Option<Vec<String>>,
    pub hilbert_basis: Option<Vec<Vec<i64>>>,
    pub trdeg: Option<usize>,
    pub completion: Option<CompletionJson>,
    pub member: Option<MemberJson>,
    pub witness: Option<WitnessJson>,
    pub check: Option<CheckJson>,
}

impl Report {
    pub fn new(command: &str, parsed: &ParsedSet, diagnostics: &DensityDiagnostics) -> Self {
        Report {
            command: command.to_string(),
            set: SpecJson::from_parsed(parsed),
            diagnostics: diagnostics.into(),
            generators: None,
            hilbert_basis: None,
            trdeg: None,
            completion: None,
            member: None,
            witness: None,
            check: None,
        }
    }
}
