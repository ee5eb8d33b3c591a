use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use boundring_core::algebra::{format_monomial, parse_polynomial};
use boundring_core::boundedring::{bounded_monoid, is_bounded, proper_witness, verify_witness, RingError};
use boundring_core::completion2d::{compatible_completion, CompletionError};
use boundring_core::oracle::{certify_unbounded, consistency_check, OracleParams};
use boundring_core::setmodel::validate;
use clap::{Parser, Subcommand};
use thiserror::Error;

use crate::dsl::{parse_set, ParsedSet};
use crate::report::{
    CheckJson, CompletionJson, DisagreementJson, MemberJson, OracleJson, Report, WeightValueJson,
    WitnessJson,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_CONTRADICTION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "boundring", version, about = "Rings of polynomials bounded on monomial semi-algebraic sets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Input `.set` file; standard input when omitted or `-`.
    #[arg(short = 'f', long = "file", global = true)]
    pub file: Option<PathBuf>,
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest monomial degree examined by `check`.
    #[arg(long = "degree-bound", global = true, default_value_t = 6)]
    pub degree_bound: i64,
    /// Number of scale doublings sampled by the oracle.
    #[arg(long = "oracle-scales", global = true, default_value_t = 40)]
    pub oracle_scales: u32,
    /// Use the direct route only.
    #[arg(long = "no-completion", global = true)]
    pub no_completion: bool,
    /// Number of variables (names default to x, y, z or x1, x2, ...).
    #[arg(long = "n", global = true)]
    pub n: Option<usize>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Generators of the ring of bounded polynomials.
    Ring,
    /// Decide whether a polynomial is bounded on the set.
    Member { polynomial: String },
    /// Transcendence degree of the ring.
    Trdeg,
    /// Compatible toric completion of the plane (n = 2).
    Completion,
    /// A proper bounded monomial, if any.
    Witness,
    /// Cross-check the routes and the numeric oracle.
    Check,
    /// Feasibility, density and noetherianity diagnostics.
    Diagnose,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Ring => "ring",
            Command::Member { .. } => "member",
            Command::Trdeg => "trdeg",
            Command::Completion => "completion",
            Command::Witness => "witness",
            Command::Check => "check",
            Command::Diagnose => "diagnose",
        }
    }
}

#[derive(Debug, Error)]
enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("set failed validation")]
    Invalid,
    #[error("{0}")]
    Contradiction(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Invalid => EXIT_INVALID,
            Failure::Contradiction(_) => EXIT_CONTRADICTION,
        }
    }
}

impl From<RingError> for Failure {
    fn from(e: RingError) -> Self {
        match e {
            RingError::Invalid(_) => Failure::Invalid,
            e => Failure::Usage(e.to_string()),
        }
    }
}

impl From<CompletionError> for Failure {
    fn from(e: CompletionError) -> Self {
        match e {
            CompletionError::Ring(r) => r.into(),
            e @ CompletionError::VerdictContradiction { .. } => Failure::Contradiction(e.to_string()),
            e => Failure::Usage(e.to_string()),
        }
    }
}

fn vec_str(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

fn read_input(cli: &Cli, stdin: &mut dyn Read) -> Result<(String, String), Failure> {
    match &cli.file {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map(|t| (t, p.display().to_string()))
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", p.display()))),
        _ => {
            let mut t = String::new();
            stdin
                .read_to_string(&mut t)
                .map_err(|e| Failure::Usage(format!("cannot read standard input: {e}")))?;
            Ok((t, "<stdin>".into()))
        }
    }
}

fn completion_wanted(cli: &Cli, parsed: &ParsedSet) -> bool {
    !cli.no_completion && parsed.vars.len() == 2
}

fn fill_ring(report: &mut Report, parsed: &ParsedSet) -> Result<(), Failure> {
    let monoid = bounded_monoid(&parsed.spec)?;
    report.generators = Some(monoid.generator_strings(&parsed.vars));
    report.hilbert_basis = Some(monoid.basis.as_vectors());
    report.trdeg = Some(monoid.trdeg);
    Ok(())
}

/// Runs the completion route and checks it against the direct route.
fn fill_completion(report: &mut Report, parsed: &ParsedSet) -> Result<(), Failure> {
    let completion = compatible_completion(&parsed.spec)?;
    let json = CompletionJson::from(&completion);
    let agree = report.hilbert_basis.as_ref().is_none_or(|b| *b == json.hilbert_basis);
    report.completion = Some(json);
    if !agree {
        return Err(Failure::Contradiction(
            "direct and completion routes give different Hilbert bases".into(),
        ));
    }
    Ok(())
}

fn execute(cli: &Cli, parsed: &ParsedSet, report: &mut Report) -> Result<(), Failure> {
    let diagnostics = validate(&parsed.spec);
    if matches!(cli.command, Command::Diagnose) {
        return if diagnostics.is_valid() && !diagnostics.noetherian_obstruction {
            Ok(())
        } else {
            Err(Failure::Invalid)
        };
    }
    if !diagnostics.is_valid() {
        return Err(Failure::Invalid);
    }
    let params = OracleParams::with_scales(cli.oracle_scales);
    match &cli.command {
        Command::Ring | Command::Trdeg | Command::Witness => {
            fill_ring(report, parsed)?;
            if completion_wanted(cli, parsed) {
                fill_completion(report, parsed)?;
            }
            if matches!(cli.command, Command::Witness) {
                let w = proper_witness(&parsed.spec)?;
                let verified = match &w.witness {
                    Some(e) => verify_witness(e, &parsed.spec)?,
                    None => false,
                };
                report.witness = Some(WitnessJson {
                    exponent: w.witness.as_ref().map(|e| e.as_slice().to_vec()),
                    monomial: w.witness.as_ref().map(|e| format_monomial(e, &parsed.vars)),
                    verified,
                    reason: w.reason,
                });
            }
        }
        Command::Completion => {
            if cli.no_completion {
                return Err(Failure::Usage("'completion' conflicts with --no-completion".into()));
            }
            if parsed.vars.len() != 2 {
                return Err(Failure::Usage(format!(
                    "the completion route needs 2 variables, the set has {}",
                    parsed.vars.len()
                )));
            }
            fill_ring(report, parsed)?;
            fill_completion(report, parsed)?;
        }
        Command::Member { polynomial } => {
            fill_ring(report, parsed)?;
            let f = parse_polynomial(polynomial, &parsed.vars)
                .map_err(|e| Failure::Usage(format!("polynomial '{polynomial}': {e}")))?;
            let v = is_bounded(&f, &parsed.spec)?;
            let oracle = v.violating_direction.as_ref().map(|d| {
                let g = certify_unbounded(&f, &parsed.spec, Some(d), &params);
                let top = g.trace.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                OracleJson {
                    certified: g.unbounded_certified,
                    max_log10: top.is_finite().then_some(top),
                    direction: Some(d.clone()),
                }
            });
            report.member = Some(MemberJson {
                polynomial: f.format_with(&parsed.vars),
                bounded: v.bounded,
                violating_exponent: v.violating_exponent.map(|e| e.into_vec()),
                violating_direction: v.violating_direction,
                per_divisor_values: v
                    .per_divisor_values
                    .into_iter()
                    .map(|(weight, value)| WeightValueJson { weight, value })
                    .collect(),
                oracle,
            });
        }
        Command::Check => {
            fill_ring(report, parsed)?;
            let mut route = None;
            if completion_wanted(cli, parsed) {
                route = Some(match fill_completion(report, parsed) {
                    Ok(()) => true,
                    Err(Failure::Contradiction(_)) => false,
                    Err(e) => return Err(e),
                });
            }
            let c = consistency_check(&parsed.spec, cli.degree_bound, &params)?;
            let consistent = c.is_consistent() && route != Some(false);
            report.check = Some(CheckJson {
                route_equivalence: route,
                degree_bound: cli.degree_bound,
                monomials_checked: c.checked,
                disagreements: c
                    .disagreements
                    .into_iter()
                    .map(|d| DisagreementJson {
                        exponent: d.exponent.into_vec(),
                        symbolic_bounded: d.symbolic_bounded,
                        direction: d.direction,
                    })
                    .collect(),
                consistent,
            });
            if !consistent {
                return Err(Failure::Contradiction("cross-check found disagreements".into()));
            }
        }
        Command::Diagnose => unreachable!("handled above"),
    }
    Ok(())
}

fn render_human(report: &Report, vars: &[String]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "set {} in {}", report.set.name, vars.join(", "));
    if report.command == "diagnose" || !report.diagnostics.valid {
        for m in &report.diagnostics.messages {
            let _ = writeln!(s, "{m}");
        }
        for (i, t) in report.diagnostics.tentacles.iter().enumerate() {
            let _ = writeln!(
                s,
                "tentacle {}: feasible={} full_dimensional={} unbounded={}",
                i + 1,
                t.feasible,
                t.full_dimensional,
                t.unbounded
            );
        }
    }
    if let Some(gens) = &report.generators {
        if gens.is_empty() {
            let _ = writeln!(s, "B(S) = R");
        } else {
            let _ = writeln!(s, "B(S) = R[{}]", gens.join(", "));
        }
    }
    if let Some(basis) = &report.hilbert_basis {
        let parts: Vec<String> = basis.iter().map(|e| vec_str(e)).collect();
        let shown = if parts.is_empty() { "(empty)".to_string() } else { parts.join(" ") };
        let _ = writeln!(s, "hilbert basis: {shown}");
    }
    if let Some(t) = report.trdeg {
        let _ = writeln!(s, "trdeg: {t}");
    }
    if let Some(c) = &report.completion {
        if report.command == "completion" {
            if c.blowups.is_empty() {
                let _ = writeln!(s, "no blow-ups needed");
            }
            for b in &c.blowups {
                let _ = writeln!(
                    s,
                    "blow-up {} = {} in cone {} {}",
                    b.label,
                    vec_str(&b.ray),
                    vec_str(&b.parent_cone[0]),
                    vec_str(&b.parent_cone[1])
                );
            }
            for d in &c.divisors {
                let state = match (d.at_infinity, d.touched) {
                    (false, _) => "affine",
                    (true, true) => "touched",
                    (true, false) => "untouched",
                };
                let _ = writeln!(
                    s,
                    "divisor {:<4} {:<8} {:<9} self-intersection {}",
                    d.label,
                    vec_str(&d.ray),
                    state,
                    d.self_intersection
                );
            }
            let rows: Vec<String> = c
                .m_d
                .iter()
                .map(|r| format!("[{}]", r.iter().map(i64::to_string).collect::<Vec<_>>().join(", ")))
                .collect();
            let _ = writeln!(s, "M_D = [{}]", rows.join(", "));
        }
        let _ = writeln!(s, "intersection-matrix verdict: {}", c.verdict);
    }
    if let Some(m) = &report.member {
        let _ = writeln!(s, "{}: {}", m.polynomial, if m.bounded { "bounded" } else { "unbounded" });
        if let Some(e) = &m.violating_exponent {
            let _ = writeln!(s, "violating exponent: {}", vec_str(e));
        }
        if let Some(d) = &m.violating_direction {
            let _ = writeln!(s, "violating direction: {}", vec_str(d));
        }
        for wv in &m.per_divisor_values {
            let v = wv.value.map_or("+inf".to_string(), |v| v.to_string());
            let _ = writeln!(s, "v_{} = {v}", vec_str(&wv.weight));
        }
        if let Some(o) = &m.oracle {
            let _ = writeln!(
                s,
                "oracle: {}",
                if o.certified { "growth certified" } else { "no certificate" }
            );
        }
    }
    if let Some(w) = &report.witness {
        match &w.monomial {
            Some(h) => {
                let _ = writeln!(s, "witness: h = {h} (verified: {})", w.verified);
            }
            None => {
                let _ = writeln!(s, "witness: none");
            }
        }
        let _ = writeln!(s, "{}", w.reason);
    }
    if let Some(c) = &report.check {
        if let Some(r) = c.route_equivalence {
            let _ = writeln!(s, "route equivalence: {}", if r { "ok" } else { "MISMATCH" });
        }
        let _ = writeln!(
            s,
            "oracle consistency: {} monomials up to degree {}, {} disagreements",
            c.monomials_checked,
            c.degree_bound,
            c.disagreements.len()
        );
        for d in &c.disagreements {
            let _ = writeln!(
                s,
                "  {}: symbolic says {}",
                vec_str(&d.exponent),
                if d.symbolic_bounded { "bounded" } else { "unbounded" }
            );
        }
    }
    s
}

/// Runs one invocation and returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let shown = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{shown}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{shown}");
                    EXIT_USAGE
                }
            };
        }
    };
    let (text, source) = match read_input(&cli, stdin) {
        Ok(x) => x,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return e.code();
        }
    };
    let parsed = match parse_set(&text, cli.n) {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {source}: {e}");
            return EXIT_USAGE;
        }
    };
    let diagnostics = validate(&parsed.spec);
    let mut report = Report::new(cli.command.name(), &parsed, &diagnostics);
    let outcome = execute(&cli, &parsed, &mut report);
    let code = match &outcome {
        Ok(()) => EXIT_OK,
        Err(f) => f.code(),
    };
    if code == EXIT_USAGE {
        if let Err(e) = &outcome {
            let _ = writeln!(err, "error: {e}");
        }
        return code;
    }
    if cli.json {
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        let text = render_human(&report, &parsed.vars);
        if code == EXIT_INVALID && report.command != "diagnose" {
            let _ = write!(err, "{text}");
        } else {
            let _ = write!(out, "{text}");
        }
    }
    if let Err(e @ Failure::Contradiction(_)) = &outcome {
        let _ = writeln!(err, "error: {e}");
    }
    code
}
