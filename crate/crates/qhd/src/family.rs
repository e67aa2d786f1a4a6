//! Blow-up calculus and the three families of nonminimal plumbing trees.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::hj::{HJExpansion, HjError};
use crate::plumbing::{CanonicalForm, GraphError, PlumbingGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("invalid blow-up target: {0}")]
    InvalidTarget(String),
    #[error("vertex `{0}` cannot be blown down (needs framing -1 and valency <= 2)")]
    NotBlowableDown(String),
    #[error("graph is not star-shaped")]
    NotStarShaped,
    #[error("invalid leg {0:?}: every leg framing must be <= -2")]
    InvalidLeg(Vec<i64>),
    #[error("unknown family `{0}` (expected A, B or C)")]
    UnknownFamily(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Hj(#[from] HjError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlowupMove {
    VertexBlowup(String),
    EdgeBlowup(String, String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyTag {
    A,
    B,
    C,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 3] = [FamilyTag::A, FamilyTag::B, FamilyTag::C];

    pub fn spec(self) -> FamilySpec {
        FamilySpec::new(self)
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyTag::A => "A",
            FamilyTag::B => "B",
            FamilyTag::C => "C",
        })
    }
}

impl FromStr for FamilyTag {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" | "𝒜" => Ok(FamilyTag::A),
            "B" | "ℬ" => Ok(FamilyTag::B),
            "C" | "𝒞" => Ok(FamilyTag::C),
            _ => Err(FamilyError::UnknownFamily(s.to_string())),
        }
    }
}

/// Which vertex blow-ups are admissible during generation. Edge blow-ups at
/// the (-1)-vertex are always allowed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum VertexBlowupPolicy {
    /// Vertex blow-ups only when the result stays star-shaped, i.e. at the
    /// center or at a (-1)-leaf.
    #[default]
    StarPreserving,
    /// Edge blow-ups only.
    Never,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub tag: FamilyTag,
    pub base: PlumbingGraph,
    pub terminal_framing: i64,
}

impl FamilySpec {
    pub fn new(tag: FamilyTag) -> Self {
        let (legs, terminal) = match tag {
            FamilyTag::A => ([-3, -3, -3], -4),
            FamilyTag::B => ([-2, -4, -4], -3),
            FamilyTag::C => ([-2, -6, -3], -2),
        };
        let legs: Vec<Vec<i64>> = legs.iter().map(|&f| vec![f]).collect();
        FamilySpec { tag, base: PlumbingGraph::star(-1, &legs), terminal_framing: terminal }
    }
}

pub fn blow_up(g: &PlumbingGraph, mv: &BlowupMove) -> Result<PlumbingGraph, FamilyError> {
    let mut ids: Vec<String> = g.ids().to_vec();
    let mut framings: Vec<i64> = g.framings().to_vec();
    let mut edges = g.edges();
    let w = ids.len();
    let new_id = g.fresh_id("e");
    match mv {
        BlowupMove::VertexBlowup(v) => {
            let iv = g.index_of(v).ok_or_else(|| FamilyError::InvalidTarget(format!("no vertex `{v}`")))?;
            framings[iv] -= 1;
            edges.push((iv, w));
        }
        BlowupMove::EdgeBlowup(u, v) => {
            let iu = g.index_of(u).ok_or_else(|| FamilyError::InvalidTarget(format!("no vertex `{u}`")))?;
            let iv = g.index_of(v).ok_or_else(|| FamilyError::InvalidTarget(format!("no vertex `{v}`")))?;
            let pos = edges
                .iter()
                .position(|&(a, b)| (a, b) == (iu.min(iv), iu.max(iv)))
                .ok_or_else(|| FamilyError::InvalidTarget(format!("no edge `{u}`-`{v}`")))?;
            edges.remove(pos);
            framings[iu] -= 1;
            framings[iv] -= 1;
            edges.push((iu, w));
            edges.push((w, iv));
        }
    }
    ids.push(new_id);
    framings.push(-1);
    Ok(PlumbingGraph::from_indexed(ids, framings, &edges)?)
}

pub fn blow_down(g: &PlumbingGraph, v: &str) -> Result<PlumbingGraph, FamilyError> {
    let iv = g.index_of(v).ok_or_else(|| FamilyError::InvalidTarget(format!("no vertex `{v}`")))?;
    blow_down_at(g, iv).ok_or_else(|| FamilyError::NotBlowableDown(v.to_string()))
}

fn blow_down_at(g: &PlumbingGraph, iv: usize) -> Option<PlumbingGraph> {
    let nbrs = g.neighbors_at(iv).to_vec();
    if g.framing_at(iv) != -1 || nbrs.len() > 2 {
        return None;
    }
    let keep: Vec<usize> = (0..g.len()).filter(|&i| i != iv).collect();
    let remap = |i: usize| if i > iv { i - 1 } else { i };
    let ids = keep.iter().map(|&i| g.id_at(i).to_string()).collect();
    let framings = keep
        .iter()
        .map(|&i| g.framing_at(i) + i64::from(nbrs.contains(&i)))
        .collect();
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|&(a, b)| a != iv && b != iv)
        .map(|(a, b)| (remap(a), remap(b)))
        .collect();
    if nbrs.len() == 2 {
        edges.push((remap(nbrs[0]), remap(nbrs[1])));
    }
    PlumbingGraph::from_indexed(ids, framings, &edges).ok()
}

/// Repeatedly blow down (-1)-vertices of valency at most two.
pub fn normalize(g: &PlumbingGraph) -> PlumbingGraph {
    let mut cur = g.clone();
    while cur.len() > 1 {
        let next = (0..cur.len()).find(|&v| cur.framing_at(v) == -1 && cur.valency_at(v) <= 2);
        match next.and_then(|v| blow_down_at(&cur, v)) {
            Some(g) => cur = g,
            None => break,
        }
    }
    cur
}

fn unique_minus_one(g: &PlumbingGraph) -> Option<usize> {
    let ones: Vec<usize> = (0..g.len()).filter(|&v| g.framing_at(v) == -1).collect();
    match ones.as_slice() {
        [v] => Some(*v),
        _ => None,
    }
}

fn admissible_moves(g: &PlumbingGraph, m: usize, policy: VertexBlowupPolicy) -> Vec<BlowupMove> {
    let id = g.id_at(m).to_string();
    let mut moves = Vec::new();
    if policy == VertexBlowupPolicy::StarPreserving && g.valency_at(m) != 2 {
        moves.push(BlowupMove::VertexBlowup(id.clone()));
    }
    for &u in g.neighbors_at(m) {
        moves.push(BlowupMove::EdgeBlowup(id.clone(), g.id_at(u).to_string()));
    }
    moves
}

/// Breadth-first generation with canonical-form deduplication. The result is
/// sorted by canonical form.
pub fn generate_family(spec: &FamilySpec, max_vertices: usize) -> Vec<PlumbingGraph> {
    generate_family_with(spec, max_vertices, VertexBlowupPolicy::default())
}

pub fn generate_family_with(
    spec: &FamilySpec,
    max_vertices: usize,
    policy: VertexBlowupPolicy,
) -> Vec<PlumbingGraph> {
    let mut seen: HashSet<CanonicalForm> = HashSet::new();
    let mut out: BTreeMap<CanonicalForm, PlumbingGraph> = BTreeMap::new();
    let mut frontier = vec![spec.base.clone()];
    seen.insert(spec.base.canonical_form());
    while !frontier.is_empty() {
        for g in &frontier {
            let m = unique_minus_one(g).expect("admissible moves keep a unique (-1)-vertex");
            let member = g.with_framing_at(m, spec.terminal_framing);
            if member.len() <= max_vertices {
                out.entry(member.canonical_form()).or_insert(member);
            }
        }
        let children: Vec<Vec<(CanonicalForm, PlumbingGraph)>> = frontier
            .par_iter()
            .filter(|g| g.len() < max_vertices)
            .map(|g| {
                let m = unique_minus_one(g).expect("unique (-1)-vertex");
                admissible_moves(g, m, policy)
                    .iter()
                    .filter_map(|mv| blow_up(g, mv).ok())
                    .map(|h| (h.canonical_form(), h))
                    .collect()
            })
            .collect();
        let mut next = Vec::new();
        for (cf, h) in children.into_iter().flatten() {
            if seen.insert(cf) {
                next.push(h);
            }
        }
        frontier = next;
    }
    out.into_values().collect()
}

/// Membership by reverse search: undo the terminal substitution at each
/// candidate vertex, then undo blow-ups one at a time back to the base.
pub fn is_in_family(g: &PlumbingGraph, spec: &FamilySpec) -> bool {
    is_in_family_with(g, spec, VertexBlowupPolicy::default())
}

pub fn is_in_family_with(g: &PlumbingGraph, spec: &FamilySpec, policy: VertexBlowupPolicy) -> bool {
    if !g.is_star_shaped() || g.len() < spec.base.len() {
        return false;
    }
    let base = spec.base.canonical_form();
    (0..g.len())
        .filter(|&v| g.framing_at(v) == spec.terminal_framing)
        .any(|v| {
            let pre = g.with_framing_at(v, -1);
            unique_minus_one(&pre).is_some() && reverse_to_base(pre, &base, spec.base.len(), policy)
        })
}

fn reverse_to_base(mut g: PlumbingGraph, base: &CanonicalForm, base_len: usize, policy: VertexBlowupPolicy) -> bool {
    loop {
        if g.len() == base_len {
            return g.canonical_form() == *base;
        }
        let Some(m) = unique_minus_one(&g) else { return false };
        let valency = g.valency_at(m);
        if valency > 2 || (valency == 1 && policy == VertexBlowupPolicy::Never) {
            return false;
        }
        let nbrs: Vec<usize> = g.neighbors_at(m).to_vec();
        let Some(prev) = blow_down_at(&g, m) else { return false };
        // the vertex that carried the (-1) before the last blow-up must be a
        // neighbour of m, and must be the unique (-1) afterwards
        let Some(p) = unique_minus_one(&prev) else { return false };
        let p_old = if p >= m { p + 1 } else { p };
        if !nbrs.contains(&p_old) || !prev.is_star_shaped() {
            return false;
        }
        if valency == 1 && policy == VertexBlowupPolicy::StarPreserving && prev.valency_at(p) == 2 {
            // a vertex blow-up at a valency-2 vertex would not have been star-shaped
            return false;
        }
        g = prev;
    }
}

/// Which of the three families contain `g`.
pub fn families_containing(g: &PlumbingGraph) -> Vec<FamilyTag> {
    FamilyTag::ALL.into_iter().filter(|t| is_in_family(g, &t.spec())).collect()
}

/// Dual star graph: central framing `-b` becomes `b - s`, legs are dualized.
pub fn dual_star(g: &PlumbingGraph) -> Result<PlumbingGraph, FamilyError> {
    let shape = g.star_decomposition().map_err(|_| FamilyError::NotStarShaped)?;
    let s = shape.num_legs() as i64;
    let legs = shape
        .legs
        .iter()
        .map(|leg| {
            let e = HJExpansion::from_framings(leg).map_err(|_| FamilyError::InvalidLeg(leg.clone()))?;
            Ok(e.dual().to_framings())
        })
        .collect::<Result<Vec<_>, FamilyError>>()?;
    Ok(PlumbingGraph::star(-shape.center_framing - s, &legs))
}
