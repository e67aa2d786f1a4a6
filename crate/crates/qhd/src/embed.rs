//! Exhaustive search for the placement of the unknown (-1)-curves and for
//! blow-down sequences ending in a line and cubics in the plane.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::curves::{
    chain_id, count_required_exceptional, filter_exc_curve_forced, is_plane_state, CurveConfiguration, CurveError,
    DualFamily, FilterSet, Role,
};
use crate::family::{dual_star, is_in_family, normalize};
use crate::plumbing::PlumbingGraph;
use crate::templates::{recognize_qhd, shipped_templates, QhdTemplate};

pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error("search exceeded the node budget of {0}; raise --max-nodes or narrow the bounds")]
    BoundsTooLoose(u64),
    #[error("unknown proposition `{0}`")]
    UnknownProposition(String),
    #[error("k = {k} is outside the admissible range (k >= {min})")]
    KOutOfRange { k: usize, min: usize },
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// A curve whose framing is unknown: its square is `framing + offset`, and
/// the framing must be at most `max_framing`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Unknown {
    pub curve: String,
    pub offset: i64,
    pub max_framing: i64,
}

#[derive(Clone, Debug)]
pub struct EmbeddingProblem {
    /// Squares of unknown curves in `base` are placeholders.
    pub base: CurveConfiguration,
    pub num_exceptional: usize,
    pub unknowns: Vec<Unknown>,
    pub filters: FilterSet,
    /// Upper bound on the intersection of an exceptional curve with any curve.
    pub max_multiplicity: i64,
    pub node_budget: u64,
    /// Blow-downs already performed before `base` (counted for the
    /// second-homology check).
    pub preliminary_blowdowns: usize,
}

impl EmbeddingProblem {
    pub fn new(base: CurveConfiguration, num_exceptional: usize, unknowns: Vec<Unknown>) -> Self {
        EmbeddingProblem {
            base,
            num_exceptional,
            unknowns,
            filters: FilterSet::default(),
            max_multiplicity: 3,
            node_budget: DEFAULT_NODE_BUDGET,
            preliminary_blowdowns: 0,
        }
    }

    /// The line alone, nothing to place.
    pub fn trivial() -> Self {
        Self::new(CurveConfiguration::with_line("L"), 0, Vec::new())
    }

    /// Family configuration with `c, c1, ..., ck` unknown.
    pub fn for_family(family: DualFamily, k: usize) -> Result<Self, CurveError> {
        if k < family.min_k() {
            return Err(CurveError::BadParameters(format!("{family} needs k >= {}", family.min_k())));
        }
        let mut placeholder = vec![-2; k + 1];
        placeholder[0] = -1;
        let base = CurveConfiguration::family_layout(family, k, &placeholder);
        let mut unknowns = vec![Unknown { curve: "D".into(), offset: 3, max_framing: -1 }];
        unknowns.extend((1..=k).map(|i| Unknown { curve: chain_id(i), offset: 0, max_framing: -2 }));
        let mut p = Self::new(base, count_required_exceptional(family), unknowns);
        p.preliminary_blowdowns = 3;
        Ok(p)
    }

    /// `base` with the unknown squares filled in from `framings`.
    pub fn concrete(&self, framings: &BTreeMap<String, i64>) -> Result<CurveConfiguration, CurveError> {
        let mut cfg = self.base.clone();
        for u in &self.unknowns {
            let f = framings.get(&u.curve).ok_or_else(|| CurveError::UnknownCurve(u.curve.clone()))?;
            cfg.set_square(&u.curve, f + u.offset)?;
        }
        Ok(cfg)
    }

    /// Concrete configuration with the exceptional curves `E1, E2, ...` added.
    pub fn instance(
        &self,
        framings: &BTreeMap<String, i64>,
        incidences: &[BTreeMap<String, i64>],
    ) -> Result<CurveConfiguration, CurveError> {
        let mut cfg = self.concrete(framings)?;
        for (j, inc) in incidences.iter().enumerate() {
            cfg.add_exceptional(&format!("E{}", j + 1), inc)?;
        }
        Ok(cfg)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FinalCurve {
    pub id: String,
    pub degree: i64,
    pub square: i64,
    pub double_points: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingSolution {
    /// Intersection numbers of `E1, E2, ...` with the base curves.
    pub incidences: Vec<BTreeMap<String, i64>>,
    /// Solved framings of the unknown curves.
    pub framings: BTreeMap<String, i64>,
    pub order: Vec<String>,
    pub final_state: Vec<FinalCurve>,
    pub preliminary_blowdowns: usize,
}

impl EmbeddingSolution {
    /// `(incidences, framings)`, which identifies a solution up to order.
    pub fn key(&self) -> (Vec<BTreeMap<String, i64>>, BTreeMap<String, i64>) {
        (self.incidences.clone(), self.framings.clone())
    }

    /// `[c, c1, ..., ck]` for family problems.
    pub fn framing_tuple(&self, k: usize) -> Vec<i64> {
        let mut out = vec![self.framings.get("D").copied().unwrap_or(0)];
        out.extend((1..=k).map(|i| self.framings.get(&chain_id(i)).copied().unwrap_or(0)));
        out
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub solutions: Vec<EmbeddingSolution>,
    pub patterns: usize,
    pub nodes: u64,
}

/// Compare the number of blow-ups rebuilding the surface from the plane with
/// the size of the dual graph.
pub fn pinkham_count_check(sol: &EmbeddingSolution, dual: &PlumbingGraph) -> bool {
    1 + sol.order.len() + sol.preliminary_blowdowns == dual.len()
}

/// Static data of a search, indexed by curve position (exceptional curves last).
struct Layout {
    ids: Vec<String>,
    role: Vec<Role>,
    degree: Vec<i64>,
    on_line: Vec<bool>,
    base_square: Vec<i64>,
    unknown: Vec<Option<(i64, i64)>>,
    base_inter: Vec<i64>,
    n: usize,
    nb: usize,
    line: usize,
    filters: FilterSet,
}

impl Layout {
    fn new(p: &EmbeddingProblem) -> Self {
        let base = &p.base;
        let nb = base.len();
        let n = nb + p.num_exceptional;
        let mut ids: Vec<String> = base.curves().iter().map(|c| c.id.clone()).collect();
        ids.extend((1..=p.num_exceptional).map(|j| format!("E{j}")));
        let mut role: Vec<Role> = base.curves().iter().map(|c| c.role).collect();
        role.extend(std::iter::repeat_n(Role::Exceptional, p.num_exceptional));
        let degree = role.iter().map(|r| r.degree().unwrap_or(0)).collect();
        let on_line = (0..n).map(|i| i < nb && base.meets_line(&ids[i])).collect();
        let mut base_square: Vec<i64> = base.curves().iter().map(|c| c.square).collect();
        base_square.extend(std::iter::repeat_n(-1, p.num_exceptional));
        let unknown = ids
            .iter()
            .map(|id| p.unknowns.iter().find(|u| &u.curve == id).map(|u| (u.offset, u.max_framing)))
            .collect();
        let mut base_inter = vec![0; n * n];
        for a in 0..nb {
            for b in 0..nb {
                if a != b {
                    base_inter[a * n + b] = base.intersection(&ids[a], &ids[b]);
                }
            }
        }
        let line = base.index(base.line()).expect("line present");
        Layout { ids, role, degree, on_line, base_square, unknown, base_inter, n, nb, line, filters: p.filters }
    }

    fn nb(&self) -> usize {
        self.nb
    }
}

#[derive(Clone)]
struct State {
    inter: Vec<i64>,
    gain: Vec<i64>,
    alive: Vec<bool>,
    double_points: Vec<i64>,
    singular_events: Vec<i64>,
    max_mult: Vec<i64>,
    framing: Vec<Option<i64>>,
    order: Vec<usize>,
}

struct Search<'a> {
    lay: &'a Layout,
    nodes: &'a AtomicU64,
    budget: u64,
    abort: &'a AtomicBool,
    found: Vec<(Vec<usize>, Vec<Option<i64>>, Vec<FinalCurve>)>,
}

fn find(p: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while p[r] != r {
        r = p[r];
    }
    let mut y = x;
    while p[y] != r {
        let nx = p[y];
        p[y] = r;
        y = nx;
    }
    r
}

impl<'a> Search<'a> {
    fn eligible(&self, s: &State, e: usize) -> bool {
        let lay = self.lay;
        if !s.alive[e] || !lay.role[e].contractible() || s.inter[e * lay.n + lay.line] != 0 {
            return false;
        }
        match lay.unknown[e] {
            Some((offset, max)) => -1 - offset - s.gain[e] <= max,
            None => lay.base_square[e] + s.gain[e] == -1,
        }
    }

    fn contract(&self, s: &State, e: usize) -> State {
        let lay = self.lay;
        let n = lay.n;
        let mut t = s.clone();
        if let Some((offset, _)) = lay.unknown[e] {
            t.framing[e] = Some(-1 - offset - s.gain[e]);
        }
        let m: Vec<i64> = (0..n).map(|x| if s.alive[x] && x != e { s.inter[e * n + x] } else { 0 }).collect();
        for x in 0..n {
            if m[x] == 0 {
                continue;
            }
            t.gain[x] += m[x] * m[x];
            t.double_points[x] += m[x] * (m[x] - 1) / 2;
            if m[x] >= 2 {
                t.singular_events[x] += 1;
            }
            t.max_mult[x] = t.max_mult[x].max(m[x]);
            for y in 0..n {
                if y != x && m[y] != 0 {
                    t.inter[x * n + y] += m[x] * m[y];
                }
            }
        }
        t.alive[e] = false;
        t.order.push(e);
        t
    }

    /// Monotone conditions: once violated, no continuation can succeed.
    fn dead(&self, s: &State) -> bool {
        let lay = self.lay;
        let n = lay.n;
        for x in 0..n {
            if !s.alive[x] {
                continue;
            }
            if lay.on_line[x] {
                // Every live curve off L must still be contracted, and
                // intersection numbers never decrease, so each of them adds
                // at least its current contribution to squares, double
                // points and pairwise intersections.
                let d = lay.degree[x];
                let (mut sq, mut dp) = (0, 0);
                for y in 0..n {
                    if s.alive[y] && !lay.on_line[y] {
                        let m = s.inter[x * n + y];
                        sq += m * m;
                        dp += m * (m - 1) / 2;
                    }
                }
                if lay.unknown[x].is_none() && lay.base_square[x] + s.gain[x] + sq > d * d {
                    return true;
                }
                // a line stays smooth, a cubic gets exactly one double point
                if s.double_points[x] + dp > (d - 1) * (d - 2) / 2 {
                    return true;
                }
                for z in x + 1..n {
                    if !s.alive[z] || !lay.on_line[z] {
                        continue;
                    }
                    let mut pair = s.inter[x * n + z];
                    for y in 0..n {
                        if s.alive[y] && !lay.on_line[y] {
                            pair += s.inter[x * n + y] * s.inter[z * n + y];
                        }
                    }
                    if pair > d * lay.degree[z] {
                        return true;
                    }
                }
            } else {
                // squares only grow, so a curve already above -1 can never
                // be contracted
                if lay.role[x].contractible() && lay.unknown[x].is_none() && lay.base_square[x] + s.gain[x] > -1 {
                    return true;
                }
                if lay.filters.no_cycle && s.singular_events[x] > 0 {
                    return true;
                }
                if lay.filters.no_nonneg_off_l && lay.unknown[x].is_none() && lay.base_square[x] + s.gain[x] >= 0 {
                    return true;
                }
            }
        }
        if lay.filters.no_cycle {
            let mut parent: Vec<usize> = (0..n).collect();
            for x in 0..n {
                if !s.alive[x] || lay.on_line[x] {
                    continue;
                }
                for y in x + 1..n {
                    if !s.alive[y] || lay.on_line[y] {
                        continue;
                    }
                    for _ in 0..s.inter[x * n + y] {
                        let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                        if a == b {
                            return true;
                        }
                        parent[a] = b;
                    }
                }
            }
        }
        false
    }

    fn terminal(&self, s: &State) -> Option<(Vec<Option<i64>>, Vec<FinalCurve>)> {
        let lay = self.lay;
        let n = lay.n;
        let mut framing = s.framing.clone();
        let mut finals = Vec::new();
        for x in 0..n {
            if !s.alive[x] {
                continue;
            }
            let d = lay.degree[x];
            if d == 0 {
                return None;
            }
            match lay.unknown[x] {
                Some((offset, max)) => {
                    let f = d * d - offset - s.gain[x];
                    if f > max {
                        return None;
                    }
                    framing[x] = Some(f);
                }
                None => {
                    if lay.base_square[x] + s.gain[x] != d * d {
                        return None;
                    }
                }
            }
            if s.double_points[x] != (d - 1) * (d - 2) / 2 {
                return None;
            }
            for y in x + 1..n {
                if s.alive[y] && s.inter[x * n + y] != d * lay.degree[y] {
                    return None;
                }
            }
            finals.push(FinalCurve { id: lay.ids[x].clone(), degree: d, square: d * d, double_points: s.double_points[x] });
        }
        Some((framing, finals))
    }

    /// Depth-first over blow-down orders. Orders differing by swapping two
    /// adjacent disjoint contractions reach the same state; only the one with
    /// the smaller index first is explored.
    fn dfs(&mut self, s: &State, prev: Option<usize>, disjoint_from_prev: &[bool]) {
        if self.abort.load(Ordering::Relaxed) {
            return;
        }
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            self.abort.store(true, Ordering::Relaxed);
            return;
        }
        let lay = self.lay;
        let n = lay.n;
        if (0..n).all(|x| !s.alive[x] || lay.on_line[x]) {
            if let Some((framing, finals)) = self.terminal(s) {
                self.found.push((s.order.clone(), framing, finals));
            }
            return;
        }
        for e in 0..n {
            if !self.eligible(s, e) {
                continue;
            }
            if let Some(p) = prev {
                if e < p && disjoint_from_prev[e] {
                    continue;
                }
            }
            let t = self.contract(s, e);
            if self.dead(&t) {
                continue;
            }
            let disjoint: Vec<bool> = (0..n).map(|y| s.inter[e * n + y] == 0).collect();
            self.dfs(&t, Some(e), &disjoint);
        }
    }
}

/// Candidate intersection vectors of one exceptional curve with the base
/// curves, after the conditions that involve that curve alone.
fn candidate_vectors(p: &EmbeddingProblem, lay: &Layout) -> Vec<Vec<i64>> {
    let nb = lay.nb();
    let bound: Vec<i64> = (0..nb)
        .map(|x| match lay.role[x] {
            _ if x == lay.line => 0,
            Role::Contract if p.filters.no_cycle => 1,
            Role::Line => 1,
            Role::Cubic => 2,
            _ => p.max_multiplicity,
        })
        .map(|b| b.min(p.max_multiplicity))
        .collect();
    let mut out = Vec::new();
    let mut v = vec![0i64; nb];
    loop {
        if v.iter().any(|&x| x > 0) && single_ok(&v, lay) {
            out.push(v.clone());
        }
        let mut i = 0;
        loop {
            if i == nb {
                return out;
            }
            if v[i] < bound[i] {
                v[i] += 1;
                break;
            }
            v[i] = 0;
            i += 1;
        }
    }
}

fn single_ok(v: &[i64], lay: &Layout) -> bool {
    let nb = v.len();
    let n = lay.n;
    for x in 0..nb {
        if lay.on_line[x] {
            let d = lay.degree[x];
            if lay.unknown[x].is_none() && lay.base_square[x] + v[x] * v[x] > d * d {
                return false;
            }
            for y in x + 1..nb {
                if lay.on_line[y] && lay.base_inter[x * n + y] + v[x] * v[y] > d * lay.degree[y] {
                    return false;
                }
            }
        }
    }
    true
}

/// Multisets of candidate vectors (one per exceptional curve) meeting the
/// joint square, pair and cycle budgets.
fn patterns(p: &EmbeddingProblem, lay: &Layout, cands: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let nb = lay.nb();
    let n = lay.n;
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    // off-line union-find over the base curves plus one node per chosen E
    let mut parent: Vec<usize> = (0..nb + p.num_exceptional).collect();
    let mut base_cycle = false;
    if p.filters.no_cycle {
        for x in 0..nb {
            for y in x + 1..nb {
                if lay.on_line[x] || lay.on_line[y] {
                    continue;
                }
                for _ in 0..lay.base_inter[x * n + y] {
                    let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                    if a == b {
                        base_cycle = true;
                    }
                    parent[a] = b;
                }
            }
        }
    }
    if base_cycle {
        return out;
    }
    let sq_used = vec![0i64; nb];
    let pair_used = vec![0i64; nb * nb];
    rec(p, lay, cands, 0, &mut chosen, &parent, (&sq_used, &sq_used), &pair_used, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn rec(
    p: &EmbeddingProblem,
    lay: &Layout,
    cands: &[Vec<i64>],
    start: usize,
    chosen: &mut Vec<usize>,
    parent: &[usize],
    (sq_used, dp_used): (&[i64], &[i64]),
    pair_used: &[i64],
    out: &mut Vec<Vec<usize>>,
) {
    let nb = lay.nb();
    let n = lay.n;
    if chosen.len() == p.num_exceptional {
        if components_reachable(lay, cands, chosen) {
            out.push(chosen.clone());
        }
        return;
    }
    let node = nb + chosen.len();
    'cand: for (ci, v) in cands.iter().enumerate().skip(start) {
        let mut sq = sq_used.to_vec();
        let mut dp = dp_used.to_vec();
        let mut pr = pair_used.to_vec();
        for x in 0..nb {
            if !lay.on_line[x] || v[x] == 0 {
                continue;
            }
            let d = lay.degree[x];
            sq[x] += v[x] * v[x];
            if lay.unknown[x].is_none() && lay.base_square[x] + sq[x] > d * d {
                continue 'cand;
            }
            dp[x] += v[x] * (v[x] - 1) / 2;
            if dp[x] > (d - 1) * (d - 2) / 2 {
                continue 'cand;
            }
            for y in x + 1..nb {
                if lay.on_line[y] && v[y] != 0 {
                    pr[x * nb + y] += v[x] * v[y];
                    if lay.base_inter[x * n + y] + pr[x * nb + y] > d * lay.degree[y] {
                        continue 'cand;
                    }
                }
            }
        }
        let mut par = parent.to_vec();
        if p.filters.no_cycle {
            for x in 0..nb {
                if lay.on_line[x] {
                    continue;
                }
                for _ in 0..v[x] {
                    let (a, b) = (find(&mut par, node), find(&mut par, x));
                    if a == b {
                        continue 'cand;
                    }
                    par[a] = b;
                }
            }
        }
        chosen.push(ci);
        rec(p, lay, cands, ci, chosen, &par, (&sq, &dp), &pr, out);
        chosen.pop();
    }
}

/// Every connected group of contractible base curves must be able to start:
/// either some exceptional curve meets it, or it holds a known (-1)-curve.
fn components_reachable(lay: &Layout, cands: &[Vec<i64>], chosen: &[usize]) -> bool {
    let nb = lay.nb();
    let n = lay.n;
    let mut parent: Vec<usize> = (0..nb).collect();
    for x in 0..nb {
        for y in x + 1..nb {
            if !lay.on_line[x] && !lay.on_line[y] && lay.base_inter[x * n + y] > 0 {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                parent[a] = b;
            }
        }
    }
    let mut ok: BTreeSet<usize> = BTreeSet::new();
    for x in 0..nb {
        if lay.on_line[x] {
            continue;
        }
        let met = chosen.iter().any(|&c| cands[c][x] > 0);
        let minus_one = lay.unknown[x].is_none() && lay.base_square[x] == -1;
        if met || minus_one {
            ok.insert(find(&mut parent, x));
        }
    }
    (0..nb).filter(|&x| !lay.on_line[x]).all(|x| ok.contains(&find(&mut parent, x)))
}

/// All solutions within the problem's bounds, deterministically ordered.
pub fn enumerate_solutions(p: &EmbeddingProblem) -> Result<SearchOutcome, EmbedError> {
    let lay = Layout::new(p);
    let nb = lay.nb();
    let n = lay.n;
    let cands = candidate_vectors(p, &lay);
    let pats = patterns(p, &lay, &cands);
    let nodes = AtomicU64::new(0);
    let abort = AtomicBool::new(false);

    let per_pattern: Vec<Vec<EmbeddingSolution>> = pats
        .par_iter()
        .map(|pat| {
            // exceptional curves named in the order of their sorted incidence maps
            let mut vecs: Vec<&Vec<i64>> = pat.iter().map(|&c| &cands[c]).collect();
            let as_map = |v: &Vec<i64>| -> BTreeMap<String, i64> {
                (0..nb).filter(|&x| v[x] > 0).map(|x| (lay.ids[x].clone(), v[x])).collect()
            };
            vecs.sort_by_key(|v| as_map(v));
            let incidences: Vec<BTreeMap<String, i64>> = vecs.iter().map(|v| as_map(v)).collect();

            let mut inter = lay.base_inter.clone();
            for (j, v) in vecs.iter().enumerate() {
                let e = nb + j;
                for x in 0..nb {
                    inter[e * n + x] = v[x];
                    inter[x * n + e] = v[x];
                }
            }
            let s = State {
                inter,
                gain: vec![0; n],
                alive: vec![true; n],
                double_points: vec![0; n],
                singular_events: vec![0; n],
                max_mult: vec![0; n],
                framing: vec![None; n],
                order: Vec::new(),
            };
            let mut search = Search { lay: &lay, nodes: &nodes, budget: p.node_budget, abort: &abort, found: Vec::new() };
            if !search.dead(&s) {
                search.dfs(&s, None, &vec![false; n]);
            }
            let mut sols: BTreeMap<_, EmbeddingSolution> = BTreeMap::new();
            for (order, framing, finals) in search.found {
                let framings: BTreeMap<String, i64> = (0..n)
                    .filter_map(|x| framing[x].map(|f| (lay.ids[x].clone(), f)))
                    .collect();
                let sol = EmbeddingSolution {
                    incidences: incidences.clone(),
                    framings,
                    order: order.iter().map(|&x| lay.ids[x].clone()).collect(),
                    final_state: finals,
                    preliminary_blowdowns: p.preliminary_blowdowns,
                };
                sols.entry(sol.key()).or_insert(sol);
            }
            sols.into_values().collect()
        })
        .collect();
    if abort.load(Ordering::Relaxed) {
        return Err(EmbedError::BoundsTooLoose(p.node_budget));
    }
    let mut merged: BTreeMap<_, EmbeddingSolution> = BTreeMap::new();
    for sol in per_pattern.into_iter().flatten() {
        merged.entry(sol.key()).or_insert(sol);
    }
    Ok(SearchOutcome { solutions: merged.into_values().collect(), patterns: pats.len(), nodes: nodes.into_inner() })
}

/// Replay a solution through the labelled configuration calculus, checking
/// every enabled filter at every stage and the plane state at the end.
pub fn replay(p: &EmbeddingProblem, sol: &EmbeddingSolution) -> Result<CurveConfiguration, String> {
    let mut cfg = p.instance(&sol.framings, &sol.incidences).map_err(|e| e.to_string())?;
    if !p.filters.passes(&cfg) {
        return Err("filters fail before any blow-down".into());
    }
    for e in &sol.order {
        cfg = cfg.blow_down_step(e).map_err(|err| format!("blowing down {e}: {err}"))?;
        if !p.filters.passes(&cfg) {
            return Err(format!("filters fail after blowing down {e}"));
        }
    }
    if !is_plane_state(&cfg) || filter_exc_curve_forced(&cfg) {
        return Err("final state is not a line with cubics in the plane".into());
    }
    Ok(cfg)
}

// ---------------------------------------------------------------------------
// Propositions

#[derive(Clone, Copy, Debug)]
struct ExpectedCase {
    /// Curves met by each exceptional curve; `Ck` is the last chain curve.
    incidences: &'static [&'static [&'static str]],
    /// `c = c_shift - k`
    c_shift: i64,
    special: &'static [(usize, i64)],
    /// The tuple as printed, when it differs from the corrected one.
    printed: Option<(i64, &'static [(usize, i64)])>,
}

#[derive(Clone, Copy, Debug)]
pub struct Proposition {
    pub id: &'static str,
    pub family: DualFamily,
    pub min_k: usize,
    cases: &'static [ExpectedCase],
}

const fn case(
    incidences: &'static [&'static [&'static str]],
    c_shift: i64,
    special: &'static [(usize, i64)],
) -> ExpectedCase {
    ExpectedCase { incidences, c_shift, special, printed: None }
}

pub const PROPOSITIONS: [Proposition; 9] = [
    Proposition { id: "p:c6", family: DualFamily::C6, min_k: 3, cases: &[case(&[&["D", "Ck"]], 2, &[])] },
    Proposition {
        id: "p:c3pr",
        family: DualFamily::C3,
        min_k: 1,
        cases: &[case(&[&["B1", "D"], &["D", "Ck"]], -1, &[]), case(&[&["B2", "C1"], &["D", "Ck"]], 2, &[(1, -5)])],
    },
    Proposition {
        id: "p:c2pr",
        family: DualFamily::C2,
        min_k: 1,
        cases: &[
            case(&[&["A2", "D"], &["D", "Ck"]], -2, &[]),
            ExpectedCase {
                incidences: &[&["A4", "C1"], &["D", "Ck"]],
                c_shift: 2,
                special: &[(1, -5), (2, -3)],
                printed: Some((3, &[(1, -5), (3, -3)])),
            },
            case(&[&["A4", "C2"], &["D", "Ck"]], 2, &[(2, -6)]),
        ],
    },
    Proposition {
        id: "p:casea",
        family: DualFamily::A3,
        min_k: 3,
        cases: &[case(&[&["A", "C1"], &["D", "Ck"]], 2, &[(2, -3)]), case(&[&["A", "C2"], &["D", "Ck"]], 2, &[(2, -3)])],
    },
    Proposition { id: "p:b4pr", family: DualFamily::B4, min_k: 3, cases: &[case(&[&["G", "C1"], &["D", "Ck"]], 2, &[(1, -3)])] },
    Proposition {
        id: "p:caseb2",
        family: DualFamily::B2,
        min_k: 1,
        cases: &[
            case(&[&["D", "G", "A2"], &["A1", "C1"], &["D", "Ck"]], 0, &[(1, -3)]),
            case(&[&["G", "C1"], &["A2", "C2"], &["D", "Ck"]], 2, &[(1, -3), (2, -4)]),
            case(&[&["G", "C2"], &["A2", "C1"], &["D", "Ck"]], 2, &[(1, -3), (2, -4)]),
        ],
    },
    Proposition { id: "p:c4leg", family: DualFamily::C4Leg, min_k: 1, cases: &[case(&[&["D", "F", "B4"], &["D", "Ck"]], -3, &[])] },
    Proposition {
        id: "p:b4leg",
        family: DualFamily::B4Leg,
        min_k: 1,
        cases: &[ExpectedCase {
            incidences: &[&["D", "F", "B2"], &["F", "G", "C1"], &["D", "Ck"]],
            c_shift: -1,
            special: &[(1, -3)],
            printed: Some((-2, &[(1, -3)])),
        }],
    },
    Proposition {
        id: "p:a4leg",
        family: DualFamily::A4Leg,
        min_k: 1,
        cases: &[
            case(&[&["D", "F", "B"], &["A", "F", "C1"], &["D", "Ck"]], 0, &[(2, -3)]),
            case(&[&["D", "F", "B"], &["A", "F", "C2"], &["D", "Ck"]], 0, &[(2, -3)]),
        ],
    },
];

pub fn proposition(id: &str) -> Result<&'static Proposition, EmbedError> {
    PROPOSITIONS.iter().find(|p| p.id == id).ok_or_else(|| EmbedError::UnknownProposition(id.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ExpectedSolution {
    pub incidences: Vec<BTreeMap<String, i64>>,
    /// `[c, c1, ..., ck]`
    pub framings: Vec<i64>,
}

fn tuple(k: usize, c_shift: i64, special: &[(usize, i64)]) -> Option<Vec<i64>> {
    let mut t = vec![-2; k + 1];
    t[0] = c_shift - k as i64;
    for &(i, v) in special {
        if i > k {
            return None;
        }
        t[i] = v;
    }
    (t[0] <= -1 && t[1..].iter().all(|&f| f <= -2)).then_some(t)
}

fn resolve_incidences(k: usize, inc: &[&[&str]]) -> Option<Vec<BTreeMap<String, i64>>> {
    let mut out = Vec::new();
    for set in inc {
        let mut m = BTreeMap::new();
        for &name in *set {
            let name = if name == "Ck" { chain_id(k) } else { name.to_string() };
            if let Some(i) = name.strip_prefix('C').and_then(|s| s.parse::<usize>().ok()) {
                if i == 0 || i > k {
                    return None;
                }
            }
            *m.entry(name).or_insert(0) += 1;
        }
        out.push(m);
    }
    out.sort();
    Some(out)
}

impl Proposition {
    /// The solutions the classification predicts at this `k`.
    pub fn expected(&self, k: usize) -> Vec<ExpectedSolution> {
        let mut out: Vec<ExpectedSolution> = self
            .cases
            .iter()
            .filter_map(|c| {
                Some(ExpectedSolution {
                    incidences: resolve_incidences(k, c.incidences)?,
                    framings: tuple(k, c.c_shift, c.special)?,
                })
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Tuples as printed where they differ from [`Proposition::expected`].
    pub fn printed_variants(&self, k: usize) -> Vec<ExpectedSolution> {
        self.cases
            .iter()
            .filter_map(|c| {
                let (shift, special) = c.printed?;
                Some(ExpectedSolution {
                    incidences: resolve_incidences(k, c.incidences)?,
                    framings: tuple(k, shift, special)?,
                })
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    ExactMatch,
    SuperSet,
    Mismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphAnalysis {
    /// Dual-side star before blowing down, as `star(...)`.
    pub dual_side: String,
    pub dual_side_vertices: usize,
    /// The resolution graph, when the dual side is a valid star.
    pub gamma: Option<String>,
    pub legs: Option<usize>,
    pub negative_definite: bool,
    pub families: Vec<String>,
    pub templates: Vec<String>,
    pub tags: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FoundSolution {
    pub incidences: Vec<BTreeMap<String, i64>>,
    pub framings: Vec<i64>,
    pub order: Vec<String>,
    pub pinkham_count: bool,
    pub replay_ok: bool,
    pub analysis: GraphAnalysis,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub proposition: String,
    pub family: String,
    pub k: usize,
    pub expected: Vec<ExpectedSolution>,
    pub found: Vec<FoundSolution>,
    pub missing: Vec<ExpectedSolution>,
    pub extras: Vec<FoundSolution>,
    pub verdict: Verdict,
    pub patterns: usize,
    pub nodes: u64,
}

/// Dual-side star of a family member with long leg `[c, c1, ..., ck]`.
pub fn dual_side_graph(family: DualFamily, framings: &[i64]) -> PlumbingGraph {
    let mut legs = family.short_legs();
    legs.push(framings.to_vec());
    PlumbingGraph::star(-1, &legs)
}

pub fn analyze_framings(family: DualFamily, framings: &[i64], templates: &[QhdTemplate]) -> GraphAnalysis {
    let side = dual_side_graph(family, framings);
    let side_text = side.star_decomposition().map(|s| s.to_string()).unwrap_or_default();
    let mut a = GraphAnalysis {
        dual_side: side_text,
        dual_side_vertices: side.len(),
        gamma: None,
        legs: None,
        negative_definite: false,
        families: Vec::new(),
        templates: Vec::new(),
        tags: Vec::new(),
    };
    let reduced = normalize(&side);
    let gamma = match dual_star(&reduced) {
        Ok(g) => g,
        Err(_) => {
            a.tags.push("dual-side-degenerates".into());
            return a;
        }
    };
    let shape = gamma.star_decomposition().expect("dual star is a star");
    a.gamma = Some(shape.to_string());
    a.legs = Some(shape.num_legs());
    a.negative_definite = gamma.is_negative_definite();
    a.families = crate::family::families_containing(&gamma).iter().map(|t| t.to_string()).collect();
    a.templates = recognize_qhd(&gamma, templates).matches.iter().map(|m| m.label.clone()).collect();
    a.templates.dedup();
    if shape.num_legs() != family.legs() {
        a.tags.push(format!("reduces-to-{}-legged", shape.num_legs()));
    }
    if family.legs() == 4 && shape.center_framing >= -2 {
        a.tags.push("central-framing-not-below-minus-2".into());
    }
    if !a.negative_definite {
        a.tags.push("not-negative-definite".into());
    }
    if !is_in_family(&gamma, &family.tag().spec()) {
        a.tags.push("dual-graph-outside-family".into());
    }
    a
}

pub fn verify_proposition(prop_id: &str, k: usize, node_budget: u64) -> Result<VerificationReport, EmbedError> {
    let prop = proposition(prop_id)?;
    if k < prop.min_k {
        return Err(EmbedError::KOutOfRange { k, min: prop.min_k });
    }
    let mut problem = EmbeddingProblem::for_family(prop.family, k)?;
    problem.node_budget = node_budget;
    let outcome = enumerate_solutions(&problem)?;
    let templates = shipped_templates();
    let expected = prop.expected(k);
    let mut found: Vec<FoundSolution> = outcome
        .solutions
        .iter()
        .map(|sol| {
            let framings = sol.framing_tuple(k);
            let side = dual_side_graph(prop.family, &framings);
            let mut analysis = analyze_framings(prop.family, &framings, &templates);
            let replay_ok = replay(&problem, sol).is_ok();
            if !replay_ok {
                analysis.tags.push("replay-failed".into());
            }
            FoundSolution {
                incidences: sol.incidences.clone(),
                framings,
                order: sol.order.clone(),
                pinkham_count: pinkham_count_check(sol, &side),
                replay_ok,
                analysis,
            }
        })
        .collect();
    found.sort_by(|a, b| (&a.framings, &a.incidences).cmp(&(&b.framings, &b.incidences)));
    let is_expected = |f: &FoundSolution| {
        expected.iter().any(|e| e.incidences == f.incidences && e.framings == f.framings)
    };
    let missing: Vec<ExpectedSolution> = expected
        .iter()
        .filter(|e| !found.iter().any(|f| e.incidences == f.incidences && e.framings == f.framings))
        .cloned()
        .collect();
    let mut extras: Vec<FoundSolution> = found.iter().filter(|f| !is_expected(f)).cloned().collect();
    for x in extras.iter_mut() {
        if x.analysis.tags.is_empty() {
            x.analysis.tags.push("homologically-consistent".into());
        }
    }
    let verdict = if !missing.is_empty() {
        Verdict::Mismatch
    } else if extras.is_empty() {
        Verdict::ExactMatch
    } else {
        Verdict::SuperSet
    };
    Ok(VerificationReport {
        proposition: prop.id.to_string(),
        family: prop.family.to_string(),
        k,
        expected,
        found,
        missing,
        extras,
        verdict,
        patterns: outcome.patterns,
        nodes: outcome.nodes,
    })
}
