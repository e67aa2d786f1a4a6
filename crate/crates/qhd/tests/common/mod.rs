#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use qhd::curves::{filter_exc_curve_forced, is_plane_state, CurveConfiguration, FilterSet, Role};
use qhd::embed::{EmbeddingProblem, Unknown};
use qhd::plumbing::PlumbingGraph;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// `(incidences, framings)` of one solution.
pub type Key = (Vec<BTreeMap<String, i64>>, BTreeMap<String, i64>);

/// Unpruned enumeration: every multiset of nonzero incidence vectors (entries
/// `0..=max_multiplicity` against every base curve, the line included), every
/// blow-down order through the labelled calculus, then a checked replay of
/// the concrete configuration with the filters tested at every stage.
pub fn brute_force(p: &EmbeddingProblem) -> BTreeSet<Key> {
    let ids: Vec<String> = p.base.curves().iter().map(|c| c.id.clone()).collect();
    let mut vectors: Vec<BTreeMap<String, i64>> = Vec::new();
    let mut v = vec![0i64; ids.len()];
    'outer: loop {
        let mut i = 0;
        loop {
            if i == ids.len() {
                break 'outer;
            }
            if v[i] < p.max_multiplicity {
                v[i] += 1;
                break;
            }
            v[i] = 0;
            i += 1;
        }
        // an exceptional curve meeting nothing is not a placement
        vectors.push(ids.iter().zip(&v).filter(|(_, &m)| m > 0).map(|(id, &m)| (id.clone(), m)).collect());
    }
    let mut out = BTreeSet::new();
    let mut chosen = Vec::new();
    multisets(p, &vectors, 0, &mut chosen, &mut out);
    out
}

fn multisets(
    p: &EmbeddingProblem,
    vectors: &[BTreeMap<String, i64>],
    start: usize,
    chosen: &mut Vec<usize>,
    out: &mut BTreeSet<Key>,
) {
    if chosen.len() == p.num_exceptional {
        let mut incidences: Vec<BTreeMap<String, i64>> = chosen.iter().map(|&i| vectors[i].clone()).collect();
        incidences.sort();
        solve_pattern(p, &incidences, out);
        return;
    }
    for i in start..vectors.len() {
        chosen.push(i);
        multisets(p, vectors, i, chosen, out);
        chosen.pop();
    }
}

fn unknown<'a>(p: &'a EmbeddingProblem, id: &str) -> Option<&'a Unknown> {
    p.unknowns.iter().find(|u| u.curve == id)
}

fn solve_pattern(p: &EmbeddingProblem, incidences: &[BTreeMap<String, i64>], out: &mut BTreeSet<Key>) {
    let mut cfg = p.base.clone();
    for (j, inc) in incidences.iter().enumerate() {
        cfg.add_exceptional(&format!("E{}", j + 1), inc).unwrap();
    }
    let mut order = Vec::new();
    let mut framings = BTreeMap::new();
    orders(p, incidences, &cfg, &mut order, &mut framings, out);
}

fn orders(
    p: &EmbeddingProblem,
    incidences: &[BTreeMap<String, i64>],
    cfg: &CurveConfiguration,
    order: &mut Vec<String>,
    framings: &mut BTreeMap<String, i64>,
    out: &mut BTreeSet<Key>,
) {
    if cfg.curves().iter().all(|c| cfg.meets_line(&c.id)) {
        finish(p, incidences, cfg, order, framings, out);
        return;
    }
    let ids: Vec<String> = cfg.curves().iter().map(|c| c.id.clone()).collect();
    for e in ids {
        let c = cfg.curve(&e).unwrap();
        if !c.role.contractible() || cfg.intersection(&e, cfg.line()) > 0 {
            continue;
        }
        let solved = match unknown(p, &e) {
            Some(u) => {
                let gain = c.square - p.base.square(&e).unwrap();
                let f = -1 - u.offset - gain;
                if f > u.max_framing {
                    continue;
                }
                Some(f)
            }
            None if c.square == -1 => None,
            None => continue,
        };
        let mut next = cfg.clone();
        next.contract_unchecked(&e).unwrap();
        if let Some(f) = solved {
            framings.insert(e.clone(), f);
        }
        order.push(e.clone());
        orders(p, incidences, &next, order, framings, out);
        order.pop();
        framings.remove(&e);
    }
}

fn finish(
    p: &EmbeddingProblem,
    incidences: &[BTreeMap<String, i64>],
    cfg: &CurveConfiguration,
    order: &[String],
    framings: &BTreeMap<String, i64>,
    out: &mut BTreeSet<Key>,
) {
    let mut framings = framings.clone();
    for u in &p.unknowns {
        if let Some(c) = cfg.curve(&u.curve) {
            let Some(d) = c.role.degree() else { return };
            let gain = c.square - p.base.square(&u.curve).unwrap();
            let f = d * d - u.offset - gain;
            if f > u.max_framing {
                return;
            }
            framings.insert(u.curve.clone(), f);
        }
    }
    // concrete replay with every check
    let Ok(mut state) = p.instance(&framings, incidences) else { return };
    if !p.filters.passes(&state) {
        return;
    }
    for e in order {
        match state.blow_down_step(e) {
            Ok(next) => state = next,
            Err(_) => return,
        }
        if !p.filters.passes(&state) {
            return;
        }
    }
    if is_plane_state(&state) && !filter_exc_curve_forced(&state) {
        out.insert((incidences.to_vec(), framings));
    }
}

pub fn keys(p: &EmbeddingProblem) -> BTreeSet<Key> {
    qhd::embed::enumerate_solutions(p).unwrap().solutions.iter().map(|s| s.key()).collect()
}

/// Small random configuration: L, a cubic and/or a second line meeting L,
/// and a forest of curves disjoint from L; at most seven curves including
/// the exceptional ones.
pub fn random_problem(seed: u64) -> EmbeddingProblem {
    let mut rng = StdRng::seed_from_u64(seed);
    let num_exc = rng.gen_range(1..=2);
    let mut cfg = CurveConfiguration::with_line("L");
    let mut unknowns = Vec::new();
    let mut on_l: Vec<String> = Vec::new();
    let kind = rng.gen_range(0..3);
    if kind != 1 {
        let d_unknown = rng.gen_bool(0.5);
        let sq = if d_unknown { 2 } else { rng.gen_range(1..=6) };
        cfg.add_curve("D", sq, Role::Cubic).unwrap();
        cfg.add_event("L", "D", "P", 3).unwrap();
        if d_unknown {
            unknowns.push(Unknown { curve: "D".into(), offset: 3, max_framing: -1 });
        }
        on_l.push("D".into());
    }
    if kind != 0 {
        cfg.add_curve("M", rng.gen_range(-2..=0), Role::Line).unwrap();
        let at_p = on_l.contains(&"D".to_string()) && rng.gen_bool(0.5);
        let label = if at_p { "P" } else { "Q" };
        cfg.add_event("M", "L", label, 1).unwrap();
        if at_p {
            cfg.add_event("M", "D", "P", 1).unwrap();
        } else if on_l.contains(&"D".to_string()) {
            cfg.add_event("M", "D", "R", rng.gen_range(1..=2)).unwrap();
        }
        on_l.push("M".into());
    }
    let room = 7 - num_exc - cfg.len();
    let off = rng.gen_range(0..=room);
    let mut placed: Vec<String> = on_l.clone();
    for i in 1..=off {
        let id = format!("C{i}");
        let unknown = unknowns.iter().all(|u: &Unknown| u.curve.starts_with('D')) && rng.gen_bool(0.3);
        let sq = if unknown { -2 } else { rng.gen_range(-4..=-1) };
        cfg.add_curve(&id, sq, Role::Contract).unwrap();
        if unknown {
            unknowns.push(Unknown { curve: id.clone(), offset: 0, max_framing: -2 });
        }
        let to = placed[rng.gen_range(0..placed.len())].clone();
        cfg.add_event(&id, &to, &format!("{to}.{id}"), 1).unwrap();
        placed.push(id);
    }
    let mut p = EmbeddingProblem::new(cfg, num_exc, unknowns);
    p.max_multiplicity = if p.base.len() + num_exc <= 5 { 3 } else { 2 };
    p
}

pub fn with_filters(mut p: EmbeddingProblem, filters: FilterSet) -> EmbeddingProblem {
    p.filters = filters;
    p
}

/// Tiny deterministic generator for random stars, shared by several suites.
pub fn random_star(rng: &mut StdRng, legs: usize, max_n: u64) -> PlumbingGraph {
    let mut ls = Vec::new();
    for _ in 0..legs {
        let n = rng.gen_range(2..=max_n);
        let m = loop {
            let m = rng.gen_range(1..n);
            if num_integer::gcd(n, m) == 1 {
                break m;
            }
        };
        ls.push(qhd::hj::hj_expand(n, m).unwrap().to_framings());
    }
    let center = -(rng.gen_range(1..=legs as i64 + 2));
    PlumbingGraph::star(center, &ls)
}
