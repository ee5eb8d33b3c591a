//! Acceptance gate: one line per criterion, nonzero exit if any fails.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::Instant;

use boundring::dsl::{parse_set, ParsedSet};
use boundring_core::boundedring::{
    bounded_monoid, exponent_cone, fraction_field_contains, proper_witness, verify_witness,
    BoundedMonoid,
};
use boundring_core::completion2d::{compatible_completion, Verdict};
use boundring_core::oracle::{certify_unbounded, consistency_check, curves, sample, OracleParams};
use boundring_core::polyhedra::lattice_rank;
use boundring_core::setmodel::{recession_cones, validate};
use boundring_core::valuation::MonomialValuation;
use boundring_core::{
    rat, ExponentVector, MonomialConstraint, Poly, Rational, SetSpec, SignRegime, Tentacle,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn load(text: &str) -> ParsedSet {
    parse_set(text, None).expect("golden set parses")
}

fn strip() -> ParsedSet {
    load(include_str!("../sets/strip.set"))
}

fn t_set() -> ParsedSet {
    load(include_str!("../sets/T.set"))
}

fn wedge() -> ParsedSet {
    load(include_str!("../sets/wedge.set"))
}

fn generators(p: &ParsedSet) -> Result<HashSet<String>, String> {
    let m = bounded_monoid(&p.spec).map_err(|e| e.to_string())?;
    Ok(m.generator_strings(&p.vars).into_iter().collect())
}

fn set_of(items: &[&str]) -> HashSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn random_tentacle(rng: &mut ChaCha8Rng) -> Tentacle {
    let k = rng.gen_range(1..=3);
    let cs = (0..k)
        .map(|_| {
            let a = [rng.gen_range(-4..=4), rng.gen_range(-4..=4)];
            let c = match rng.gen_range(0..3) {
                0 => Rational::new(1.into(), 2.into()),
                1 => rat(1),
                _ => rat(2),
            };
            MonomialConstraint::from_normal(&a, c).expect("valid constraint")
        })
        .collect();
    Tentacle::new(2, cs, SignRegime::Absolute).expect("planar tentacle")
}

/// Valid planar sets with 1 to 3 tentacles.
fn random_sets(seed: u64, count: usize) -> Vec<SetSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let k = rng.gen_range(1..=3);
        let ts = (0..k).map(|_| random_tentacle(&mut rng)).collect();
        let s = SetSpec::new(2, ts).expect("nonempty");
        if validate(&s).is_valid() {
            out.push(s);
        }
    }
    out
}

fn random_poly(rng: &mut ChaCha8Rng) -> Poly {
    let k = rng.gen_range(1..=6);
    let terms = (0..k).map(|_| {
        let e = ExponentVector::from([rng.gen_range(0..=6), rng.gen_range(0..=6)]);
        let c = loop {
            let c = rng.gen_range(-5i64..=5);
            if c != 0 {
                break c;
            }
        };
        (e, rat(c))
    });
    Poly::from_terms(2, terms).expect("small exponents")
}

/// `min { <w, e> : a_e != 0 }` computed straight from the coefficients.
fn brute_valuation(f: &Poly, w: [i64; 2]) -> Option<i64> {
    f.terms()
        .filter(|(_, c)| **c != rat(0))
        .map(|(e, _)| w[0] * e[0] + w[1] * e[1])
        .min()
}

fn c1_strip() -> Check {
    let p = strip();
    let g = generators(&p)?;
    ensure(g == set_of(&["x"]), || format!("generators {g:?}"))?;
    let r = compatible_completion(&p.spec).map_err(|e| e.to_string())?;
    let rays: Vec<[i64; 2]> = r.blowups.iter().map(|b| b.inserted_ray).collect();
    ensure(rays == vec![[0, -1]], || format!("blow-ups {rays:?}"))?;
    let v = MonomialValuation::new(vec![0, -1]).expect("primitive");
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..50 {
        let f = random_poly(&mut rng);
        // min{-j : a_ij != 0}
        let expected = f.terms().map(|(e, _)| -e[1]).min();
        ensure(v.value(&f) == expected && expected == brute_valuation(&f, [0, -1]), || {
            format!("valuation mismatch on {}", f.format_with(&p.vars))
        })?;
    }
    Ok(())
}

fn c2_t() -> Check {
    let p = t_set();
    let g = generators(&p)?;
    ensure(g == set_of(&["x", "x*y"]), || format!("generators {g:?}"))?;
    let r = compatible_completion(&p.spec).map_err(|e| e.to_string())?;
    let rays: Vec<[i64; 2]> = r.blowups.iter().map(|b| b.inserted_ray).collect();
    ensure(rays == vec![[0, -1], [1, -1]], || format!("blow-ups {rays:?}"))?;
    ensure(r.touched() == vec![[1, -1]], || format!("touched {:?}", r.touched()))?;
    let untouched: HashSet<[i64; 2]> = r.untouched().into_iter().collect();
    ensure(untouched == HashSet::from([[-1, -1], [0, -1]]), || format!("untouched {untouched:?}"))?;
    let target = [[0, 1], [1, -2]];
    let permuted = [[-2, 1], [1, 0]];
    let m: Vec<[i64; 2]> = r
        .m_d
        .iter()
        .map(|row| <[i64; 2]>::try_from(row.as_slice()).unwrap_or([i64::MIN; 2]))
        .collect();
    ensure(m == target || m == permuted, || format!("M_D {:?}", r.m_d))?;
    ensure(r.trdeg_verdict == Verdict::Two, || format!("verdict {}", r.trdeg_verdict))?;
    // min{i - j : a_ij != 0} along the touched divisor
    let v = MonomialValuation::new(vec![1, -1]).expect("primitive");
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..50 {
        let f = random_poly(&mut rng);
        let expected = f.terms().map(|(e, _)| e[0] - e[1]).min();
        ensure(v.value(&f) == expected, || format!("valuation mismatch on {}", f.format_with(&p.vars)))?;
    }
    Ok(())
}

fn c3_wedge() -> Check {
    let p = wedge();
    let g = generators(&p)?;
    ensure(g == set_of(&["x*y", "x^2*y", "x^2*y^3"]), || format!("generators {g:?}"))?;
    let w = proper_witness(&p.spec).map_err(|e| e.to_string())?;
    let e = w.witness.ok_or_else(|| format!("no witness: {}", w.reason))?;
    let cones = recession_cones(&p.spec).map_err(|e| e.to_string())?;
    for c in &cones {
        for d in c.rays() {
            ensure(e.dot(d) < 0, || format!("witness {e} pairs {} with {d:?}", e.dot(d)))?;
        }
        ensure(c.rays().len() == 2 && c.is_pointed(), || "expected two extreme directions".into())?;
    }
    let h = ExponentVector::from([1, 1]);
    ensure(verify_witness(&h, &p.spec).map_err(|e| e.to_string())?, || "xy rejected".into())
}

fn c4_routes() -> Check {
    for (i, s) in random_sets(4, 200).iter().enumerate() {
        let direct = bounded_monoid(s).map_err(|e| e.to_string())?;
        let geometric = compatible_completion(s).map_err(|e| format!("set {i}: {e}"))?;
        ensure(direct.basis == geometric.ring.basis, || {
            format!(
                "set {i}: direct {:?} vs completion {:?}",
                direct.basis.as_vectors(),
                geometric.ring.basis.as_vectors()
            )
        })?;
    }
    Ok(())
}

fn lattice_points(m: &BoundedMonoid, bound: i64) -> Vec<[i64; 2]> {
    let mut pts: Vec<[i64; 2]> = (0..=bound)
        .flat_map(|a| (0..=bound - a).map(move |b| [a, b]))
        .filter(|p| m.exponent_cone.contains(p))
        .collect();
    pts.sort_by_key(|p| p[0] + p[1]);
    pts
}

fn check_basis(m: &BoundedMonoid) -> Check {
    let basis: Vec<[i64; 2]> = m.basis.as_vectors().iter().map(|v| [v[0], v[1]]).collect();
    let pts = lattice_points(m, 12);
    let mut reach: HashSet<[i64; 2]> = HashSet::from([[0, 0]]);
    for p in &pts {
        if basis.iter().any(|h| reach.contains(&[p[0] - h[0], p[1] - h[1]])) {
            reach.insert(*p);
        }
        ensure(reach.contains(p), || format!("{p:?} not generated by {basis:?}"))?;
    }
    for h in &basis {
        let redundant = pts.iter().any(|a| {
            *a != [0, 0] && a != h && {
                let b = [h[0] - a[0], h[1] - a[1]];
                b[0] >= 0 && b[1] >= 0 && m.exponent_cone.contains(&b)
            }
        });
        ensure(!redundant, || format!("{h:?} is redundant in {basis:?}"))?;
    }
    Ok(())
}

fn golden_specs() -> Vec<SetSpec> {
    vec![strip().spec, t_set().spec, wedge().spec]
}

fn c5_brute_force() -> Check {
    for s in golden_specs().iter().chain(&random_sets(5, 50)) {
        check_basis(&bounded_monoid(s).map_err(|e| e.to_string())?)?;
    }
    Ok(())
}

fn c6_saturation() -> Check {
    for s in golden_specs().iter().chain(&random_sets(6, 50)) {
        let m = bounded_monoid(s).map_err(|e| e.to_string())?;
        for a in 0..=8 {
            for b in 0..=8 - a {
                let e = ExponentVector::from([a, b]);
                for k in 1..=4 {
                    if m.contains(&e.scale(k)) {
                        ensure(m.contains(&e), || format!("{k}*{e} in monoid but {e} is not"))?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn c7_union() -> Check {
    let u = strip().spec.union(&t_set().spec).map_err(|e| e.to_string())?;
    let m = bounded_monoid(&u).map_err(|e| e.to_string())?;
    ensure(m.basis.as_vectors() == vec![vec![1, 0]], || format!("B(strip or T) basis {:?}", m.basis.as_vectors()))?;
    let a = random_sets(71, 50);
    let b = random_sets(72, 50);
    for (s, t) in a.iter().zip(&b) {
        let u = s.union(t).map_err(|e| e.to_string())?;
        let mu = bounded_monoid(&u).map_err(|e| e.to_string())?;
        let ms = bounded_monoid(s).map_err(|e| e.to_string())?;
        let mt = bounded_monoid(t).map_err(|e| e.to_string())?;
        let meet = ms.exponent_cone.intersect(&mt.exponent_cone).map_err(|e| e.to_string())?;
        let expected = BoundedMonoid::from_cone(meet).map_err(|e| e.to_string())?;
        ensure(mu == expected, || {
            format!("union {:?} vs intersection {:?}", mu.basis.as_vectors(), expected.basis.as_vectors())
        })?;
    }
    Ok(())
}

fn run_cli(args: &[&str], input: &str) -> (i32, String, String) {
    let mut stdin = input.as_bytes();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut argv = vec!["boundring"];
    argv.extend_from_slice(args);
    let code = boundring::run(argv, &mut stdin, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).expect("utf8"),
        String::from_utf8(err).expect("utf8"),
    )
}

fn c8_diagnostics() -> Check {
    let degenerate = include_str!("../sets/diagonal.set");
    let d = validate(&load(degenerate).spec);
    ensure(d.noetherian_obstruction, || "obstruction not raised".into())?;
    for cmd in ["diagnose", "ring"] {
        let (code, out, err) = run_cli(&[cmd], degenerate);
        ensure(code == 2, || format!("{cmd}: exit code {code}"))?;
        ensure((out + &err).contains("B_V(S) is not noetherian"), || format!("{cmd}: message missing"))?;
    }
    let bx = load(include_str!("../sets/box.set"));
    let d = validate(&bx.spec);
    ensure(d.is_bounded_set() && !d.noetherian_obstruction && d.is_valid(), || format!("box diagnostics {d:?}"))?;
    let g = generators(&bx)?;
    ensure(g == set_of(&["x", "y"]), || format!("box generators {g:?}"))?;
    let (code, out, _) = run_cli(&["diagnose"], include_str!("../sets/box.set"));
    ensure(code == 0 && out.contains("S is bounded"), || format!("box diagnose exit {code}"))
}

fn c9_compatibility() -> Check {
    let cone = load(include_str!("../sets/cone.set"));
    let r = compatible_completion(&cone.spec).map_err(|e| e.to_string())?;
    ensure(r.blowups.is_empty(), || format!("{} blow-ups for the open cone", r.blowups.len()))?;
    ensure(r.ring.basis.is_empty(), || format!("B = R[{:?}]", r.ring.basis.as_vectors()))?;
    ensure(bounded_monoid(&cone.spec).map_err(|e| e.to_string())?.basis.is_empty(), || "direct route not R".into())?;
    let r = compatible_completion(&strip().spec).map_err(|e| e.to_string())?;
    ensure(r.blowups.len() == 1, || format!("{} blow-ups for the strip", r.blowups.len()))
}

fn c10_oracle() -> Check {
    let params = OracleParams::default();
    for p in [strip(), t_set(), wedge()] {
        let r = consistency_check(&p.spec, 6, &params).map_err(|e| e.to_string())?;
        ensure(r.checked == 28 && r.is_consistent(), || {
            format!("set {}: {} disagreements", p.name, r.disagreements.len())
        })?;
    }
    let y = Poly::monomial(ExponentVector::from([0, 1]), rat(1));
    let g = certify_unbounded(&y, &strip().spec, Some(&[0, 1]), &params);
    ensure(g.unbounded_certified, || "y not certified on the strip".into())?;
    let xy = Poly::monomial(ExponentVector::from([1, 1]), rat(1));
    let t = t_set().spec;
    let tried = curves(&t, None, params.scales);
    ensure(tried.len() == 8, || format!("expected 2 directions x 4 sign patterns, got {}", tried.len()))?;
    for c in &tried {
        ensure(!sample(&xy, c, &params).unbounded_certified, || format!("xy certified along {:?}", c.direction))?;
    }
    ensure(!certify_unbounded(&xy, &t, None, &params).unbounded_certified, || "xy certified on T".into())
}

fn c11_full_rank() -> Check {
    let mut full = 0;
    let sets = random_sets(11, 100);
    for (i, s) in sets.iter().enumerate() {
        let m = bounded_monoid(s).map_err(|e| e.to_string())?;
        let a = m.trdeg == 2;
        let b = lattice_rank(&m.basis.as_vectors(), 2) == 2
            && fraction_field_contains(&ExponentVector::from([1, 0]), s).map_err(|e| e.to_string())?
            && fraction_field_contains(&ExponentVector::from([0, 1]), s).map_err(|e| e.to_string())?;
        let c = proper_witness(s).map_err(|e| e.to_string())?.witness.is_some();
        ensure(a == b && b == c, || format!("set {i}: trdeg2={a} lattice={b} witness={c}"))?;
        let cone = exponent_cone(2, &recession_cones(s).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(cone == m.exponent_cone, || format!("set {i}: exponent cone differs"))?;
        full += usize::from(a);
    }
    ensure(full > 0 && full < sets.len(), || format!("sample not mixed: {full} of {} full rank", sets.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 11] = [
        ("strip reproduction", c1_strip),
        ("T reproduction", c2_t),
        ("wedge reproduction", c3_wedge),
        ("route equivalence (200 random sets)", c4_routes),
        ("brute-force monoid oracle", c5_brute_force),
        ("saturation", c6_saturation),
        ("union law", c7_union),
        ("diagnostics", c8_diagnostics),
        ("compatibility criterion", c9_compatibility),
        ("oracle consistency", c10_oracle),
        ("full-rank equivalence (100 random sets)", c11_full_rank),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let ms = start.elapsed().as_millis();
        match result {
            Ok(()) => println!("criterion {:>2} PASS  {name} ({ms} ms)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({ms} ms): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
