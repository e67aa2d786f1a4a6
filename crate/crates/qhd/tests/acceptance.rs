//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines always reach the console.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_integer::Integer;
use qhd::curves::{CurveConfiguration, DualFamily, Role};
use qhd::embed::{verify_proposition, EmbeddingProblem, Verdict, VerificationReport, DEFAULT_NODE_BUDGET, PROPOSITIONS};
use qhd::family::{dual_star, generate_family, FamilyTag};
use qhd::field::FieldElement;
use qhd::hj::{dual_expansion, hj_evaluate, hj_expand};
use qhd::plane::{
    intersection_multiplicity, parse_monomial, shipped_claims, verify_claims, PlaneCurve, ProjectivePoint,
    Singularity, SHIPPED_CLAIMS,
};
use qhd::templates::shipped_templates;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

// Pinned limits.
const LIMIT_HJ: Duration = Duration::from_secs(10);
const LIMIT_DUALITY: Duration = Duration::from_secs(10);
const LIMIT_DEFINITE: Duration = Duration::from_secs(120);
const LIMIT_PROPOSITIONS: Duration = Duration::from_secs(600);
const LIMIT_PLANE: Duration = Duration::from_secs(5);
const HJ_MAX_N: u64 = 500;
const HJ_DUAL_MAX_N: u64 = 200;
const DUALITY_SAMPLES: usize = 100;
const DUALITY_MAX_N: u64 = 50;
const TEMPLATE_PARAM_CAP: i64 = 5;
const FAMILY_MAX_VERTICES: usize = 12;
const PROP_MAX_K: usize = 6;
const ORACLE_RANDOM_INSTANCES: u64 = 120;
const ORACLE_MAX_CURVES: usize = 7;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let out = f();
    let took = start.elapsed();
    let detail = match limit {
        Some(l) => format!("{:.2} s, limit {} s", took.as_secs_f64(), l.as_secs()),
        None => format!("{:.2} s", took.as_secs_f64()),
    };
    match out {
        Ok(s) if limit.is_none_or(|l| took <= l) => Ok(format!("{s} ({detail})")),
        Ok(s) => Err(format!("{s}, but over time ({detail})")),
        Err(e) => Err(format!("{e} ({detail})")),
    }
}

fn continued_fractions() -> Outcome {
    let mut pairs = 0;
    for n in 2..=HJ_MAX_N {
        for m in 1..n {
            if n.gcd(&m) != 1 {
                continue;
            }
            pairs += 1;
            let e = hj_expand(n, m).map_err(|e| e.to_string())?;
            check(hj_evaluate(&e).map_err(|e| e.to_string())? == (n, m), || format!("round trip fails at {n}/{m}"))?;
            if n <= HJ_DUAL_MAX_N {
                let d = dual_expansion(n, m).map_err(|e| e.to_string())?;
                check(d.dual() == e, || format!("dual is not an involution at {n}/{m}"))?;
                let width = e.coefficients().iter().map(|a| a - 2).sum::<u64>() + 1;
                check(d.len() as u64 == width, || format!("length law fails at {n}/{m}"))?;
            }
        }
    }
    Ok(format!("{pairs} coprime pairs"))
}

fn duality() -> Outcome {
    let mut rng = StdRng::seed_from_u64(2024);
    for i in 0..DUALITY_SAMPLES {
        let legs = rng.gen_range(3..=5);
        let g = common::random_star(&mut rng, legs, DUALITY_MAX_N);
        let d = dual_star(&g).map_err(|e| e.to_string())?;
        let dd = dual_star(&d).map_err(|e| e.to_string())?;
        check(dd.is_isomorphic(&g), || format!("sample {i}: dual of dual differs for {}", g.canonical_form()))?;
    }
    Ok(format!("{DUALITY_SAMPLES} random stars"))
}

fn definiteness() -> Outcome {
    let mut instances = 0;
    for t in shipped_templates() {
        for p in t.assignments(TEMPLATE_PARAM_CAP) {
            // parameter sets outside a template's domain fail to instantiate
            let Ok(g) = t.instantiate(&p) else { continue };
            instances += 1;
            check(g.is_negative_definite() && g.edges().len() + 1 == g.len(), || {
                format!("{} {p:?} is not a negative definite tree", t.family_label)
            })?;
        }
    }
    let mut members = 0;
    for tag in FamilyTag::ALL {
        for g in generate_family(&tag.spec(), FAMILY_MAX_VERTICES) {
            members += 1;
            check(g.is_negative_definite(), || format!("{tag} member {} is not negative definite", g.canonical_form()))?;
        }
    }
    Ok(format!("{instances} template instances, {members} family members"))
}

/// Framing tuples quoted explicitly for three of the propositions.
fn quoted_tuple(id: &str, k: usize) -> Option<Vec<i64>> {
    let k_i = k as i64;
    let mut t = vec![-2; k + 1];
    match id {
        "p:c6" => t[0] = 2 - k_i,
        "p:c4leg" => t[0] = -k_i - 3,
        "p:a4leg" if k >= 2 => {
            t[0] = -k_i;
            t[2] = -3;
        }
        _ => return None,
    }
    Some(t)
}

fn propositions(reports: &mut Vec<VerificationReport>) -> Outcome {
    let mut extras = 0;
    for prop in PROPOSITIONS {
        for k in prop.min_k..=PROP_MAX_K {
            let r = verify_proposition(prop.id, k, DEFAULT_NODE_BUDGET).map_err(|e| format!("{} k={k}: {e}", prop.id))?;
            check(matches!(r.verdict, Verdict::ExactMatch | Verdict::SuperSet) && r.missing.is_empty(), || {
                format!("{} k={k}: {:?}, missing {:?}", prop.id, r.verdict, r.missing)
            })?;
            if let Some(t) = quoted_tuple(prop.id, k) {
                check(r.found.iter().any(|f| f.framings == t), || format!("{} k={k}: tuple {t:?} not found", prop.id))?;
            }
            extras += r.extras.len();
            reports.push(r);
        }
    }
    Ok(format!("{} (proposition, k) cases, {extras} extra solutions", reports.len()))
}

fn blow_down_states(reports: &[VerificationReport]) -> Outcome {
    let mut replayed = 0;
    for r in reports {
        let family: DualFamily = r.family.parse().map_err(|e: qhd::curves::CurveError| e.to_string())?;
        let p = EmbeddingProblem::for_family(family, r.k).map_err(|e| e.to_string())?;
        let components = p.base.len();
        match family {
            DualFamily::C6 => check(components == r.k + 2, || format!("C6 k={}: {components} components", r.k))?,
            DualFamily::C3 => check(components == r.k + 5, || format!("C3 k={}: {components} components", r.k))?,
            _ => {}
        }
        for f in &r.found {
            let mut framings = BTreeMap::from([("D".to_string(), f.framings[0])]);
            for i in 1..=r.k {
                framings.insert(format!("C{i}"), f.framings[i]);
            }
            let mut cfg: CurveConfiguration = p.instance(&framings, &f.incidences).map_err(|e| e.to_string())?;
            // the divisor components span H2 of the closed surface; every
            // blow-down lowers b2 by one and the plane has b2 = 1
            let mut b2 = components;
            for e in &f.order {
                cfg = cfg.blow_down_step(e).map_err(|err| format!("{} k={}: {e}: {err}", r.proposition, r.k))?;
                b2 -= 1;
            }
            check(b2 == 1, || format!("{} k={} {:?}: b2 ends at {b2}", r.proposition, r.k, f.framings))?;
            for c in cfg.curves() {
                let delta: i64 = c.history.iter().map(|m| m * (m - 1) / 2).sum();
                let ok = match c.role {
                    Role::Cubic => c.square == 9 && delta == 1,
                    Role::Line => c.square == 1 && delta == 0,
                    _ => false,
                };
                check(ok, || format!("{} k={} {:?}: {} ends with square {} and delta {delta}", r.proposition, r.k, f.framings, c.id, c.square))?;
            }
            replayed += 1;
        }
    }
    Ok(format!("{replayed} solutions replayed"))
}

fn oracle_equivalence() -> Outcome {
    let mut instances = 0;
    let mut solutions = 0;
    let mut problems: Vec<(String, EmbeddingProblem)> = Vec::new();
    for k in 3..=4 {
        problems.push((format!("C6 k={k}"), EmbeddingProblem::for_family(DualFamily::C6, k).map_err(|e| e.to_string())?));
    }
    for seed in 0..ORACLE_RANDOM_INSTANCES {
        problems.push((format!("seed {seed}"), common::random_problem(seed)));
    }
    for (name, p) in problems {
        check(p.base.len() + p.num_exceptional <= ORACLE_MAX_CURVES, || format!("{name} is too large"))?;
        let pruned = common::keys(&p);
        let brute = common::brute_force(&p);
        let missed = brute.difference(&pruned).count();
        let phantom = pruned.difference(&brute).count();
        check(missed == 0 && phantom == 0, || format!("{name}: {missed} missed, {phantom} phantom"))?;
        instances += 1;
        solutions += brute.len();
    }
    Ok(format!("{instances} instances, {solutions} solutions, 0 missed, 0 phantom"))
}

struct Claims {
    curves: BTreeMap<String, PlaneCurve>,
    points: BTreeMap<String, ProjectivePoint>,
}

fn field(v: &Value) -> FieldElement {
    let n: Vec<i64> = v.as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
    match n.as_slice() {
        [a] => FieldElement::int(*a),
        [a, b] => FieldElement::rational(*a, *b),
        [a, b, c, d] => FieldElement::from_parts(*a, *b, *c, *d),
        _ => panic!("bad field element {v}"),
    }
}

fn load(name: &str) -> Claims {
    let v: Value = serde_json::from_str(shipped_claims(name).unwrap()).unwrap();
    let curves = v["curves"]
        .as_object()
        .unwrap()
        .iter()
        .map(|(n, t)| {
            let terms: Vec<_> =
                t.as_object().unwrap().iter().map(|(m, c)| (field(c), parse_monomial(m).unwrap())).collect();
            (n.clone(), PlaneCurve::from_terms(&terms).unwrap())
        })
        .collect();
    let points = v["points"]
        .as_object()
        .unwrap()
        .iter()
        .map(|(n, c)| {
            let c = c.as_array().unwrap();
            (n.clone(), ProjectivePoint::new(field(&c[0]), field(&c[1]), field(&c[2])).unwrap())
        })
        .collect();
    Claims { curves, points }
}

impl Claims {
    fn i(&self, a: &str, b: &str, p: &str) -> Result<u32, String> {
        intersection_multiplicity(&self.curves[a], &self.curves[b], &self.points[p]).map_err(|e| format!("I({a},{b};{p}): {e}"))
    }

    fn expect_i(&self, a: &str, b: &str, p: &str, want: u32) -> Result<(), String> {
        let got = self.i(a, b, p)?;
        check(got == want, || format!("I({a},{b};{p}) = {got}, expected {want}"))
    }

    fn expect_node(&self, c: &str, p: &str) -> Result<(), String> {
        let m = self.curves[c].multiplicity_at(&self.points[p]).map_err(|e| e.to_string())?;
        check(m.order == 2 && m.kind == Some(Singularity::Node), || format!("{c} at {p}: {m:?}, expected a node"))
    }
}

fn plane_curves() -> Outcome {
    let mut claims = 0;
    for (name, json) in SHIPPED_CLAIMS {
        let r = verify_claims(json).map_err(|e| format!("{name}: {e}"))?;
        check(r.all_passed(), || format!("{name}: a shipped claim fails"))?;
        claims += r.results.len();
    }
    let c6 = load("c6-existence");
    let (qc, qb, qa) = (load("qhd4-c"), load("qhd4-b"), load("qhd4-a"));
    // the points are the ones listed, exactly
    let w = FieldElement::omega();
    let p_expected = ProjectivePoint::new(
        FieldElement::rational(-4, 3),
        &FieldElement::rational(-4, 9) * &w,
        FieldElement::one(),
    )
    .unwrap();
    check(qa.points["p"] == p_expected && c6.points["p"] == p_expected, || "p is not [-4/3:-(4/9)w:1]".into())?;
    let s_expected =
        ProjectivePoint::new(FieldElement::rational(-2, 3), FieldElement::rational(-1, 3), FieldElement::one()).unwrap();
    check(qc.points["S"] == s_expected, || "S is not [-2/3:-1/3:1]".into())?;
    check(qb.points["R"] == ProjectivePoint::ints(-1, 0, 1).unwrap(), || "R is not [-1:0:1]".into())?;

    c6.expect_i("C", "L", "Q", 3)?;
    qc.expect_i("D", "D1", "O", 6)?;
    qb.expect_i("D", "D2", "O", 4)?;
    qb.expect_i("D", "D2", "R", 2)?;
    qc.expect_node("D", "O")?;
    qc.expect_node("D1", "S")?;
    qb.expect_node("D2", "R")?;
    qa.expect_node("D3", "p")?;
    qc.expect_i("D", "L", "Q", 3)?;
    qc.expect_i("D1", "L", "Q", 3)?;
    qb.expect_i("D2", "L", "Q", 3)?;
    qa.expect_i("D3", "L", "Q", 3)?;
    qa.expect_i("D", "N", "p", 3)?;
    for (set, other, pts) in
        [(&qc, "D1", &["Q", "O"][..]), (&qb, "D2", &["Q", "O", "R"]), (&qa, "D3", &["Q", "O", "p"])]
    {
        let mut total = 0;
        for p in pts {
            total += set.i("D", other, p)?;
        }
        check(total == 9, || format!("Bezout total for D,{other} is {total}"))?;
    }
    Ok(format!("{claims} shipped claims and the listed invariants"))
}

fn main() -> ExitCode {
    // libtest-style filter/list arguments are accepted and ignored
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let mut reports = Vec::new();
    let mut results: Vec<(u8, &str, Outcome)> = vec![
        (1, "continued fractions", timed(Some(LIMIT_HJ), continued_fractions)),
        (2, "duality involution", timed(Some(LIMIT_DUALITY), duality)),
        (3, "definiteness", timed(Some(LIMIT_DEFINITE), definiteness)),
        (4, "proposition reproduction", timed(Some(LIMIT_PROPOSITIONS), || propositions(&mut reports))),
    ];
    results.push((5, "blow-down states", timed(None, || blow_down_states(&reports))));
    results.push((6, "oracle equivalence", timed(None, oracle_equivalence)));
    results.push((7, "plane curves", timed(Some(LIMIT_PLANE), plane_curves)));
    let mut failed = 0;
    for (n, name, out) in &results {
        match out {
            Ok(s) => println!("criterion {n} ({name}): PASS - {s}"),
            Err(e) => {
                failed += 1;
                println!("criterion {n} ({name}): FAIL - {e}");
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
