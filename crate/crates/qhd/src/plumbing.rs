//! Decorated plumbing trees: intersection forms, definiteness, star shape and
//! canonical forms.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("self-loop at vertex `{0}`")]
    SelfLoop(String),
    #[error("parallel edge between `{0}` and `{1}`")]
    ParallelEdge(String, String),
    #[error("edge set is not a tree: {0}")]
    NotATree(String),
    #[error("graph is not star-shaped: {0} vertices of valency >= 3")]
    NotStarShaped(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A plumbing tree. Vertices keep their insertion order; adjacency lists are
/// sorted by vertex index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlumbingGraph {
    ids: Vec<String>,
    framings: Vec<i64>,
    adj: Vec<Vec<usize>>,
}

/// Star decomposition: center plus legs read outward from the center.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarShape {
    pub center: String,
    pub center_framing: i64,
    pub legs: Vec<Vec<i64>>,
    pub leg_ids: Vec<Vec<String>>,
}

/// Intersection matrix together with the vertex order used for rows/columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionMatrix {
    pub order: Vec<String>,
    pub entries: Vec<Vec<i64>>,
}

/// Canonical encoding of a framed tree; equal encodings iff isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(pub String);

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl PlumbingGraph {
    pub fn new(vertices: Vec<(String, i64)>, edges: Vec<(String, String)>) -> Result<Self, GraphError> {
        let mut index = HashMap::new();
        let mut ids = Vec::with_capacity(vertices.len());
        let mut framings = Vec::with_capacity(vertices.len());
        for (id, f) in vertices {
            if index.insert(id.clone(), ids.len()).is_some() {
                return Err(GraphError::DuplicateVertex(id));
            }
            ids.push(id);
            framings.push(f);
        }
        let mut pairs = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let ia = *index.get(&a).ok_or_else(|| GraphError::UnknownVertex(a.clone()))?;
            let ib = *index.get(&b).ok_or_else(|| GraphError::UnknownVertex(b.clone()))?;
            pairs.push((ia, ib));
        }
        Self::from_indexed(ids, framings, &pairs)
    }

    pub(crate) fn from_indexed(
        ids: Vec<String>,
        framings: Vec<i64>,
        edges: &[(usize, usize)],
    ) -> Result<Self, GraphError> {
        let n = ids.len();
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a == b {
                return Err(GraphError::SelfLoop(ids[a].clone()));
            }
            if adj[a].contains(&b) {
                return Err(GraphError::ParallelEdge(ids[a].clone(), ids[b].clone()));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
        }
        let g = PlumbingGraph { ids, framings, adj };
        if n > 0 {
            if edges.len() != n - 1 {
                return Err(GraphError::NotATree(format!(
                    "{} vertices but {} edges",
                    n,
                    edges.len()
                )));
            }
            if g.component_size(0) != n {
                return Err(GraphError::NotATree("graph is disconnected".into()));
            }
        }
        Ok(g)
    }

    /// Linear chain with ids `v0, v1, ...`.
    pub fn chain(framings: &[i64]) -> Self {
        let ids = (0..framings.len()).map(|i| format!("v{i}")).collect();
        let edges: Vec<_> = (1..framings.len()).map(|i| (i - 1, i)).collect();
        Self::from_indexed(ids, framings.to_vec(), &edges).expect("chain is a tree")
    }

    /// Star graph with center `c` and leg vertices `l{i}_{j}` (1-based).
    pub fn star(center: i64, legs: &[Vec<i64>]) -> Self {
        let mut ids = vec!["c".to_string()];
        let mut framings = vec![center];
        let mut edges = Vec::new();
        for (i, leg) in legs.iter().enumerate() {
            let mut prev = 0;
            for (j, &f) in leg.iter().enumerate() {
                ids.push(format!("l{}_{}", i + 1, j + 1));
                framings.push(f);
                let cur = ids.len() - 1;
                edges.push((prev, cur));
                prev = cur;
            }
        }
        Self::from_indexed(ids, framings, &edges).expect("star is a tree")
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn framings(&self) -> &[i64] {
        &self.framings
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|v| v == id)
    }

    pub fn framing(&self, id: &str) -> Option<i64> {
        self.index_of(id).map(|i| self.framings[i])
    }

    pub fn framing_at(&self, i: usize) -> i64 {
        self.framings[i]
    }

    pub fn id_at(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn neighbors_at(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn valency_at(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    /// Edges as index pairs `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, list) in self.adj.iter().enumerate() {
            for &b in list {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn edge_ids(&self) -> Vec<(String, String)> {
        self.edges()
            .into_iter()
            .map(|(a, b)| (self.ids[a].clone(), self.ids[b].clone()))
            .collect()
    }

    pub fn with_framing_at(&self, i: usize, framing: i64) -> Self {
        let mut g = self.clone();
        g.framings[i] = framing;
        g
    }

    /// Ids are fresh if not already present; used by blow-ups.
    pub(crate) fn fresh_id(&self, stem: &str) -> String {
        let mut n = self.ids.len();
        loop {
            let candidate = format!("{stem}{n}");
            if self.index_of(&candidate).is_none() {
                return candidate;
            }
            n += 1;
        }
    }

    fn component_size(&self, start: usize) -> usize {
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        let mut count = 0;
        while let Some(v) = queue.pop_front() {
            count += 1;
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        count
    }

    /// Matrix in canonical vertex order (see [`PlumbingGraph::canonical_order`]).
    pub fn intersection_matrix(&self) -> IntersectionMatrix {
        let order = self.canonical_order();
        let pos: HashMap<usize, usize> = order.iter().enumerate().map(|(p, &v)| (v, p)).collect();
        let n = self.len();
        let mut entries = vec![vec![0i64; n]; n];
        for (p, &v) in order.iter().enumerate() {
            entries[p][p] = self.framings[v];
            for &w in &self.adj[v] {
                entries[p][pos[&w]] = 1;
            }
        }
        IntersectionMatrix {
            order: order.iter().map(|&v| self.ids[v].clone()).collect(),
            entries,
        }
    }

    /// Exact LDL elimination, leaves first. For a tree the pivots are
    /// `d_v = framing(v) - sum over children 1/d_child`, and the form is
    /// negative definite iff every pivot is negative.
    pub fn is_negative_definite(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        let (parent, order) = self.bfs_from(0);
        let mut pivot: Vec<BigRational> = self
            .framings
            .iter()
            .map(|&f| BigRational::from_integer(BigInt::from(f)))
            .collect();
        for &v in order.iter().rev() {
            if !pivot[v].is_negative() {
                return false;
            }
            if let Some(p) = parent[v] {
                let correction = BigRational::one() / pivot[v].clone();
                pivot[p] = pivot[p].clone() - correction;
            }
        }
        true
    }

    /// No (-1)-vertex of valency at most two.
    pub fn is_minimal(&self) -> bool {
        (0..self.len()).all(|v| !(self.framings[v] == -1 && self.adj[v].len() <= 2))
    }

    pub fn star_decomposition(&self) -> Result<StarShape, GraphError> {
        let branch: Vec<usize> = (0..self.len()).filter(|&v| self.adj[v].len() >= 3).collect();
        if branch.len() != 1 {
            return Err(GraphError::NotStarShaped(branch.len()));
        }
        let c = branch[0];
        let mut legs: Vec<(Vec<i64>, Vec<String>)> = Vec::new();
        for &start in &self.adj[c] {
            let mut chain = Vec::new();
            let mut ids = Vec::new();
            let (mut prev, mut cur) = (c, start);
            loop {
                chain.push(self.framings[cur]);
                ids.push(self.ids[cur].clone());
                match self.adj[cur].iter().find(|&&w| w != prev) {
                    Some(&next) => {
                        prev = cur;
                        cur = next;
                    }
                    None => break,
                }
            }
            legs.push((chain, ids));
        }
        legs.sort();
        Ok(StarShape {
            center: self.ids[c].clone(),
            center_framing: self.framings[c],
            legs: legs.iter().map(|(f, _)| f.clone()).collect(),
            leg_ids: legs.into_iter().map(|(_, ids)| ids).collect(),
        })
    }

    pub fn is_star_shaped(&self) -> bool {
        self.star_decomposition().is_ok()
    }

    fn bfs_from(&self, root: usize) -> (Vec<Option<usize>>, Vec<usize>) {
        let mut parent = vec![None; self.len()];
        let mut seen = vec![false; self.len()];
        let mut order = Vec::with_capacity(self.len());
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(v);
                    queue.push_back(w);
                }
            }
        }
        (parent, order)
    }

    /// The one or two vertices minimizing eccentricity.
    fn tree_centers(&self) -> Vec<usize> {
        let n = self.len();
        if n <= 2 {
            return (0..n).collect();
        }
        let mut degree: Vec<usize> = self.adj.iter().map(|a| a.len()).collect();
        let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        let mut remaining = n;
        while remaining > 2 {
            remaining -= layer.len();
            let mut next = Vec::new();
            for &leaf in &layer {
                for &w in &self.adj[leaf] {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
            layer = next;
        }
        layer.sort_unstable();
        layer
    }

    fn encode(&self, v: usize, parent: Option<usize>, preorder: &mut Vec<usize>) -> String {
        let mut kids: Vec<(String, Vec<usize>)> = self.adj[v]
            .iter()
            .filter(|&&w| Some(w) != parent)
            .map(|&w| {
                let mut sub = Vec::new();
                let code = self.encode(w, Some(v), &mut sub);
                (code, sub)
            })
            .collect();
        kids.sort();
        preorder.push(v);
        let mut code = format!("({}", self.framings[v]);
        for (c, sub) in kids {
            code.push_str(&c);
            preorder.extend(sub);
        }
        code.push(')');
        code
    }

    fn canonical(&self) -> (String, Vec<usize>) {
        // Rooting at the tree center(s) is enough: centers are preserved by
        // every isomorphism.
        self.tree_centers()
            .into_iter()
            .map(|r| {
                let mut order = Vec::new();
                let code = self.encode(r, None, &mut order);
                (code, order)
            })
            .min()
            .unwrap_or_default()
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        CanonicalForm(self.canonical().0)
    }

    /// Vertex indices in the preorder of the canonical encoding.
    pub fn canonical_order(&self) -> Vec<usize> {
        self.canonical().1
    }

    pub fn is_isomorphic(&self, other: &PlumbingGraph) -> bool {
        self.len() == other.len() && self.canonical_form() == other.canonical_form()
    }

    /// Parse the `v <id> <framing>` / `e <id> <id>` text format.
    pub fn parse_text(text: &str) -> Result<Self, GraphError> {
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| GraphError::Parse { line: lineno + 1, msg: msg.to_string() };
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens.as_slice() {
                ["v", id, framing] => {
                    let f = framing
                        .parse::<i64>()
                        .map_err(|_| err(&format!("bad framing `{framing}`")))?;
                    vertices.push((id.to_string(), f));
                }
                ["e", a, b] => edges.push((a.to_string(), b.to_string())),
                _ => return Err(err(&format!("expected `v <id> <framing>` or `e <id> <id>`, got `{line}`"))),
            }
        }
        Self::new(vertices, edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (id, f) in self.ids.iter().zip(&self.framings) {
            out.push_str(&format!("v {id} {f}\n"));
        }
        for (a, b) in self.edge_ids() {
            out.push_str(&format!("e {a} {b}\n"));
        }
        out
    }

    /// `{"vertices": {id: framing}, "edges": [[a, b], ...]}` with sorted keys
    /// and sorted pairs.
    pub fn to_json(&self) -> Value {
        let vertices: BTreeMap<&str, i64> =
            self.ids.iter().map(String::as_str).zip(self.framings.iter().copied()).collect();
        let mut edges: Vec<(String, String)> = self
            .edge_ids()
            .into_iter()
            .map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
            .collect();
        edges.sort();
        json!({ "vertices": vertices, "edges": edges })
    }

    pub fn from_json(value: &Value) -> Result<Self, GraphError> {
        let bad = |msg: &str| GraphError::Parse { line: 0, msg: msg.to_string() };
        let vmap = value
            .get("vertices")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("missing `vertices` object"))?;
        let mut vertices = Vec::new();
        for (id, f) in vmap {
            let f = f.as_i64().ok_or_else(|| bad(&format!("framing of `{id}` is not an integer")))?;
            vertices.push((id.clone(), f));
        }
        let mut edges = Vec::new();
        if let Some(list) = value.get("edges") {
            for e in list.as_array().ok_or_else(|| bad("`edges` is not an array"))? {
                let pair = e.as_array().filter(|p| p.len() == 2).ok_or_else(|| bad("edge is not a pair"))?;
                let a = pair[0].as_str().ok_or_else(|| bad("edge endpoint is not a string"))?;
                let b = pair[1].as_str().ok_or_else(|| bad("edge endpoint is not a string"))?;
                edges.push((a.to_string(), b.to_string()));
            }
        }
        Self::new(vertices, edges)
    }
}

impl StarShape {
    pub fn num_legs(&self) -> usize {
        self.legs.len()
    }

    /// Rebuild the star with the original vertex ids.
    pub fn to_graph(&self) -> PlumbingGraph {
        let mut ids = vec![self.center.clone()];
        let mut framings = vec![self.center_framing];
        let mut edges = Vec::new();
        for (leg, leg_ids) in self.legs.iter().zip(&self.leg_ids) {
            let mut prev = 0;
            for (f, id) in leg.iter().zip(leg_ids) {
                ids.push(id.clone());
                framings.push(*f);
                edges.push((prev, ids.len() - 1));
                prev = ids.len() - 1;
            }
        }
        PlumbingGraph::from_indexed(ids, framings, &edges).expect("star decomposition came from a tree")
    }
}

impl fmt::Display for StarShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "star({};", self.center_framing)?;
        for (i, leg) in self.legs.iter().enumerate() {
            let parts: Vec<String> = leg.iter().map(|x| x.to_string()).collect();
            write!(f, "{}[{}]", if i == 0 { " " } else { ", " }, parts.join(","))?;
        }
        write!(f, ")")
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(matrix: &[Vec<i64>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = matrix.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}
