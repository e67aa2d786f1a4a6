//! Curve configurations in blow-ups of the projective plane, tracked at the
//! level of homology and labelled intersection points.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("curve `{0}` does not have square -1")]
    NotMinusOne(String),
    #[error("curve `{0}` meets L")]
    MeetsL(String),
    #[error("curve `{0}` is not contractible (role {1})")]
    WrongRole(String, Role),
    #[error("unknown curve `{0}`")]
    UnknownCurve(String),
    #[error("duplicate curve `{0}`")]
    DuplicateCurve(String),
    #[error("class is not represented by a rational curve (delta = {0})")]
    NonRational(i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Role {
    Line,
    Cubic,
    Contract,
    Exceptional,
}

impl Role {
    /// Degree of the image in the plane for curves that survive.
    pub fn degree(self) -> Option<i64> {
        match self {
            Role::Line => Some(1),
            Role::Cubic => Some(3),
            _ => None,
        }
    }

    pub fn contractible(self) -> bool {
        matches!(self, Role::Contract | Role::Exceptional)
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Curve {
    pub id: String,
    pub square: i64,
    pub role: Role,
    /// Intersection numbers with each curve at the moment it was contracted;
    /// these are the multiplicities of the image's class.
    pub history: Vec<i64>,
}

/// An intersection event. `a == b` records a singular point of `a` of the
/// given multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Event {
    pub a: String,
    pub b: String,
    pub label: String,
    pub multiplicity: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveConfiguration {
    curves: Vec<Curve>,
    events: Vec<Event>,
    line: String,
    next_label: usize,
}

/// Class `(d; m1..mN)` in the lattice of signature (1, N).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyClass {
    pub degree: i64,
    pub multipliers: Vec<i64>,
}

impl HomologyClass {
    pub fn new(degree: i64, multipliers: Vec<i64>) -> Self {
        HomologyClass { degree, multipliers }
    }

    pub fn pairing(&self, other: &HomologyClass) -> i64 {
        let n = self.multipliers.len().max(other.multipliers.len());
        let m = |v: &Vec<i64>, i: usize| v.get(i).copied().unwrap_or(0);
        self.degree * other.degree - (0..n).map(|i| m(&self.multipliers, i) * m(&other.multipliers, i)).sum::<i64>()
    }

    pub fn square(&self) -> i64 {
        self.pairing(self)
    }

    /// Pairing with the canonical class `-3h + sum e_i`.
    pub fn canonical_pairing(&self) -> i64 {
        -3 * self.degree + self.multipliers.iter().sum::<i64>()
    }
}

/// Number of double points `(x.x + K.x + 2)/2` of a rational representative.
pub fn adjunction_delta(cls: &HomologyClass) -> Result<i64, CurveError> {
    let twice = cls.square() + cls.canonical_pairing() + 2;
    let delta = twice.div_euclid(2);
    if twice.rem_euclid(2) != 0 || delta < 0 {
        return Err(CurveError::NonRational(delta));
    }
    Ok(delta)
}

/// The nine configurations left after the first three blow-downs of the
/// dual graph of a family member.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum DualFamily {
    C6,
    C3,
    C2,
    A3,
    B4,
    B2,
    C4Leg,
    B4Leg,
    A4Leg,
}

impl DualFamily {
    pub const ALL: [DualFamily; 9] = [
        DualFamily::C6,
        DualFamily::C3,
        DualFamily::C2,
        DualFamily::A3,
        DualFamily::B4,
        DualFamily::B2,
        DualFamily::C4Leg,
        DualFamily::B4Leg,
        DualFamily::A4Leg,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DualFamily::C6 => "C6",
            DualFamily::C3 => "C3",
            DualFamily::C2 => "C2",
            DualFamily::A3 => "A3",
            DualFamily::B4 => "B4",
            DualFamily::B2 => "B2",
            DualFamily::C4Leg => "C4leg",
            DualFamily::B4Leg => "B4leg",
            DualFamily::A4Leg => "A4leg",
        }
    }

    pub fn tag(self) -> crate::family::FamilyTag {
        use crate::family::FamilyTag;
        match self {
            DualFamily::C6 | DualFamily::C3 | DualFamily::C2 | DualFamily::C4Leg => FamilyTag::C,
            DualFamily::A3 | DualFamily::A4Leg => FamilyTag::A,
            DualFamily::B4 | DualFamily::B2 | DualFamily::B4Leg => FamilyTag::B,
        }
    }

    /// Legs of the family member (3 or 4).
    pub fn legs(self) -> usize {
        match self {
            DualFamily::C4Leg | DualFamily::B4Leg | DualFamily::A4Leg => 4,
            _ => 3,
        }
    }

    pub fn min_k(self) -> usize {
        match self {
            DualFamily::C6 => 3,
            _ => 1,
        }
    }

    /// Short legs of the dual-side star (center -1), besides the long leg
    /// `[c, c1, ..., ck]`.
    pub fn short_legs(self) -> Vec<Vec<i64>> {
        let two = |n: usize| vec![-2; n];
        match self {
            DualFamily::C6 => vec![two(1), two(2)],
            DualFamily::C3 => vec![two(1), two(5)],
            DualFamily::C2 => vec![two(2), two(5)],
            DualFamily::A3 => vec![two(2), two(2)],
            DualFamily::B4 => vec![two(1), two(3)],
            DualFamily::B2 => vec![two(3), two(3)],
            DualFamily::C4Leg => vec![two(1), two(5), two(2)],
            DualFamily::B4Leg => vec![two(1), two(3), two(3)],
            DualFamily::A4Leg => vec![two(2), two(2), two(2)],
        }
    }
}

impl fmt::Display for DualFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DualFamily {
    type Err = CurveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DualFamily::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| CurveError::UnknownFamily(s.to_string()))
    }
}

/// Number of unknown (-1)-curves needed to finish the blow-downs.
pub fn count_required_exceptional(family: DualFamily) -> usize {
    match family {
        DualFamily::C6 => 1,
        DualFamily::C3 | DualFamily::C2 | DualFamily::A3 | DualFamily::B4 | DualFamily::C4Leg => 2,
        DualFamily::B2 | DualFamily::B4Leg | DualFamily::A4Leg => 3,
    }
}

pub fn chain_id(i: usize) -> String {
    format!("C{i}")
}

impl CurveConfiguration {
    /// Configuration holding only the line `L` of square 1.
    pub fn with_line(line: &str) -> Self {
        CurveConfiguration {
            curves: vec![Curve { id: line.to_string(), square: 1, role: Role::Line, history: Vec::new() }],
            events: Vec::new(),
            line: line.to_string(),
            next_label: 0,
        }
    }

    pub fn add_curve(&mut self, id: &str, square: i64, role: Role) -> Result<(), CurveError> {
        if self.index(id).is_some() {
            return Err(CurveError::DuplicateCurve(id.to_string()));
        }
        self.curves.push(Curve { id: id.to_string(), square, role, history: Vec::new() });
        Ok(())
    }

    pub fn add_event(&mut self, a: &str, b: &str, label: &str, multiplicity: i64) -> Result<(), CurveError> {
        for id in [a, b] {
            if self.index(id).is_none() {
                return Err(CurveError::UnknownCurve(id.to_string()));
            }
        }
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        self.push_event(a.to_string(), b.to_string(), label.to_string(), multiplicity);
        Ok(())
    }

    fn push_event(&mut self, a: String, b: String, label: String, multiplicity: i64) {
        if let Some(ev) = self.events.iter_mut().find(|e| e.a == a && e.b == b && e.label == label) {
            if a == b {
                ev.multiplicity = ev.multiplicity.max(multiplicity);
            } else {
                ev.multiplicity += multiplicity;
            }
        } else {
            self.events.push(Event { a, b, label, multiplicity });
        }
    }

    fn fresh_label(&mut self) -> String {
        self.next_label += 1;
        format!("p{}", self.next_label)
    }

    /// Add an exceptional (-1)-curve meeting the given curves transversally,
    /// each intersection point at a fresh label.
    pub fn add_exceptional(&mut self, id: &str, incidence: &BTreeMap<String, i64>) -> Result<(), CurveError> {
        self.add_curve(id, -1, Role::Exceptional)?;
        for (other, &m) in incidence {
            if self.index(other).is_none() {
                return Err(CurveError::UnknownCurve(other.clone()));
            }
            for _ in 0..m {
                let label = self.fresh_label();
                self.add_event(id, other, &label, 1)?;
            }
        }
        Ok(())
    }

    /// The configuration obtained from the dual side of a family member
    /// after its first three blow-downs. `framings = [c, c1, ..., ck]`.
    pub fn from_dual_family(family: DualFamily, k: usize, framings: &[i64]) -> Result<Self, CurveError> {
        if k < family.min_k() {
            return Err(CurveError::BadParameters(format!("{family} needs k >= {}", family.min_k())));
        }
        if framings.len() != k + 1 {
            return Err(CurveError::BadParameters(format!("expected {} framings, got {}", k + 1, framings.len())));
        }
        if framings[0] > -1 || framings[1..].iter().any(|&f| f > -2) {
            return Err(CurveError::BadParameters(format!(
                "need c <= -1 and every ci <= -2, got {framings:?}"
            )));
        }
        Ok(Self::family_layout(family, k, framings))
    }

    pub(crate) fn family_layout(family: DualFamily, k: usize, framings: &[i64]) -> Self {
        let mut cfg = Self::with_line("L");
        let ok = "layout ids are distinct";
        cfg.add_curve("D", framings[0] + 3, Role::Cubic).expect(ok);
        cfg.add_event("L", "D", "P", 3).expect(ok);
        for i in 1..=k {
            cfg.add_curve(&chain_id(i), framings[i], Role::Contract).expect(ok);
            let prev = if i == 1 { "D".to_string() } else { chain_id(i - 1) };
            cfg.add_event(&prev, &chain_id(i), &format!("{prev}.{}", chain_id(i)), 1).expect(ok);
        }
        let chain = |cfg: &mut Self, start: &str, names: &[&str]| {
            let mut prev = start.to_string();
            for n in names {
                cfg.add_curve(n, -2, Role::Contract).expect(ok);
                cfg.add_event(&prev, n, &format!("{prev}.{n}"), 1).expect(ok);
                prev = n.to_string();
            }
        };
        let line_at_p = |cfg: &mut Self, id: &str, also: &[&str]| {
            cfg.add_curve(id, -1, Role::Line).expect(ok);
            cfg.add_event(id, "L", "P", 1).expect(ok);
            for o in also {
                cfg.add_event(id, o, "P", 1).expect(ok);
            }
        };
        let own_line = |cfg: &mut Self, id: &str| {
            cfg.add_curve(id, -2, Role::Line).expect(ok);
            cfg.add_event(id, "L", &format!("{id}.L"), 1).expect(ok);
        };
        let cubic_f = |cfg: &mut Self| {
            cfg.add_curve("F", 1, Role::Cubic).expect(ok);
            cfg.add_event("F", "L", "P", 3).expect(ok);
            cfg.add_event("F", "D", "P", 3).expect(ok);
        };
        match family {
            DualFamily::C6 => {}
            DualFamily::C3 => {
                line_at_p(&mut cfg, "G", &["D"]);
                chain(&mut cfg, "G", &["B1", "B2"]);
            }
            DualFamily::C2 => {
                own_line(&mut cfg, "A1");
                chain(&mut cfg, "A1", &["A2", "A3", "A4"]);
            }
            DualFamily::A3 => own_line(&mut cfg, "A"),
            DualFamily::B4 => line_at_p(&mut cfg, "G", &["D"]),
            DualFamily::B2 => {
                line_at_p(&mut cfg, "G", &["D"]);
                own_line(&mut cfg, "A1");
                chain(&mut cfg, "A1", &["A2"]);
            }
            DualFamily::C4Leg => {
                cubic_f(&mut cfg);
                chain(&mut cfg, "F", &["B1", "B2", "B3", "B4"]);
            }
            DualFamily::B4Leg => {
                cubic_f(&mut cfg);
                line_at_p(&mut cfg, "G", &["D", "F"]);
                chain(&mut cfg, "F", &["B1", "B2"]);
            }
            DualFamily::A4Leg => {
                cubic_f(&mut cfg);
                own_line(&mut cfg, "A");
                chain(&mut cfg, "F", &["B"]);
            }
        }
        cfg
    }

    pub fn line(&self) -> &str {
        &self.line
    }

    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn index(&self, id: &str) -> Option<usize> {
        self.curves.iter().position(|c| c.id == id)
    }

    pub fn curve(&self, id: &str) -> Option<&Curve> {
        self.curves.iter().find(|c| c.id == id)
    }

    pub fn square(&self, id: &str) -> Option<i64> {
        self.curve(id).map(|c| c.square)
    }

    pub fn set_square(&mut self, id: &str, square: i64) -> Result<(), CurveError> {
        let i = self.index(id).ok_or_else(|| CurveError::UnknownCurve(id.to_string()))?;
        self.curves[i].square = square;
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    /// Total intersection number of two distinct curves.
    pub fn intersection(&self, a: &str, b: &str) -> i64 {
        if a == b {
            return self.square(a).unwrap_or(0);
        }
        self.events
            .iter()
            .filter(|e| (e.a == a && e.b == b) || (e.a == b && e.b == a))
            .map(|e| e.multiplicity)
            .sum()
    }

    pub fn meets_line(&self, id: &str) -> bool {
        id == self.line || self.intersection(id, &self.line) > 0
    }

    /// Singular points of a curve: `(label, multiplicity)`.
    pub fn singular_points(&self, id: &str) -> Vec<(String, i64)> {
        self.events
            .iter()
            .filter(|e| e.a == id && e.b == id)
            .map(|e| (e.label.clone(), e.multiplicity))
            .collect()
    }

    pub fn num_contractible(&self) -> usize {
        self.curves.iter().filter(|c| c.role.contractible()).count()
    }

    /// Homology class of the eventual plane image of a surviving curve.
    pub fn image_class(&self, id: &str) -> Option<HomologyClass> {
        let c = self.curve(id)?;
        Some(HomologyClass::new(c.role.degree()?, c.history.clone()))
    }

    /// Contract `e` without checking its square or role: squares grow by
    /// `(e.X)^2`, intersections by `(e.X)(e.Y)`, and every curve that met `e`
    /// passes through one new point label.
    pub fn contract_unchecked(&mut self, e: &str) -> Result<(), CurveError> {
        let ie = self.index(e).ok_or_else(|| CurveError::UnknownCurve(e.to_string()))?;
        let mut meet: BTreeMap<String, i64> = BTreeMap::new();
        let mut on_e: BTreeSet<String> = BTreeSet::new();
        for ev in &self.events {
            if ev.a == e || ev.b == e {
                on_e.insert(ev.label.clone());
                if ev.a != ev.b {
                    let other = if ev.a == e { &ev.b } else { &ev.a };
                    *meet.entry(other.clone()).or_insert(0) += ev.multiplicity;
                }
            }
        }
        let p = self.fresh_label();
        let old = std::mem::take(&mut self.events);
        for mut ev in old {
            if ev.a == e || ev.b == e {
                continue;
            }
            if on_e.contains(&ev.label) {
                ev.label = p.clone();
            }
            self.push_event(ev.a, ev.b, ev.label, ev.multiplicity);
        }
        let names: Vec<&String> = meet.keys().collect();
        for (i, x) in names.iter().enumerate() {
            for y in &names[i + 1..] {
                self.push_event((*x).clone(), (*y).clone(), p.clone(), meet[*x] * meet[*y]);
            }
            if meet[*x] >= 2 {
                self.push_event((*x).clone(), (*x).clone(), p.clone(), meet[*x]);
            }
        }
        for c in self.curves.iter_mut() {
            if let Some(&m) = meet.get(&c.id) {
                c.square += m * m;
            }
            if c.id != e {
                c.history.push(meet.get(&c.id).copied().unwrap_or(0));
            }
        }
        self.curves.remove(ie);
        Ok(())
    }

    /// Homology-level record of contracting a (-1)-curve disjoint from L.
    pub fn blow_down_step(&self, e: &str) -> Result<CurveConfiguration, CurveError> {
        let c = self.curve(e).ok_or_else(|| CurveError::UnknownCurve(e.to_string()))?;
        if !c.role.contractible() {
            return Err(CurveError::WrongRole(e.to_string(), c.role));
        }
        if c.square != -1 {
            return Err(CurveError::NotMinusOne(e.to_string()));
        }
        if self.intersection(e, &self.line) > 0 {
            return Err(CurveError::MeetsL(e.to_string()));
        }
        let mut next = self.clone();
        next.contract_unchecked(e)?;
        Ok(next)
    }

    fn off_line(&self) -> Vec<&Curve> {
        self.curves.iter().filter(|c| !self.meets_line(&c.id)).collect()
    }

    pub fn to_json(&self) -> Value {
        let curves: Vec<Value> = self
            .curves
            .iter()
            .map(|c| json!({"id": c.id, "square": c.square, "role": c.role}))
            .collect();
        let mut events = self.events.clone();
        events.sort();
        let events: Vec<Value> = events
            .iter()
            .map(|e| json!({"pair": [e.a, e.b], "label": e.label, "multiplicity": e.multiplicity}))
            .collect();
        json!({"line": self.line, "curves": curves, "events": events})
    }
}

/// The curves disjoint from L, with intersection points (and singular points)
/// as edges, form a forest.
pub fn filter_no_cycle(cfg: &CurveConfiguration) -> bool {
    let off: Vec<&str> = cfg.off_line().iter().map(|c| c.id.as_str()).collect();
    let pos = |id: &str| off.iter().position(|&x| x == id);
    let mut parent: Vec<usize> = (0..off.len()).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for ev in cfg.events() {
        let (Some(a), Some(b)) = (pos(&ev.a), pos(&ev.b)) else { continue };
        if a == b {
            return false;
        }
        for _ in 0..ev.multiplicity {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
    }
    true
}

/// Every curve disjoint from L has negative square.
pub fn filter_no_nonneg_off_l(cfg: &CurveConfiguration) -> bool {
    cfg.off_line().iter().all(|c| c.square <= -1)
}

/// True iff some curve still fails `L.C > 0 and C.C = (L.C)^2`, i.e. a
/// further blow-down is forced.
pub fn filter_exc_curve_forced(cfg: &CurveConfiguration) -> bool {
    cfg.curves().iter().filter(|c| c.id != cfg.line()).any(|c| {
        let lc = cfg.intersection(&c.id, cfg.line());
        !(lc > 0 && c.square == lc * lc)
    })
}

/// Every cubic has at most one singular point, of multiplicity exactly 2.
pub fn filter_cubic_singularity(cfg: &CurveConfiguration) -> bool {
    cfg.curves().iter().filter(|c| c.role == Role::Cubic).all(|c| {
        let sing = cfg.singular_points(&c.id);
        sing.len() <= 1 && sing.iter().all(|(_, m)| *m == 2)
    })
}

/// Which filters a search applies at every stage.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FilterSet {
    pub no_cycle: bool,
    pub no_nonneg_off_l: bool,
    pub cubic_singularity: bool,
}

impl Default for FilterSet {
    fn default() -> Self {
        FilterSet { no_cycle: true, no_nonneg_off_l: true, cubic_singularity: true }
    }
}

impl FilterSet {
    pub fn none() -> Self {
        FilterSet { no_cycle: false, no_nonneg_off_l: false, cubic_singularity: false }
    }

    pub fn passes(&self, cfg: &CurveConfiguration) -> bool {
        (!self.no_cycle || filter_no_cycle(cfg))
            && (!self.no_nonneg_off_l || filter_no_nonneg_off_l(cfg))
            && (!self.cubic_singularity || filter_cubic_singularity(cfg))
    }
}

/// Terminal state: only curves meeting L remain; lines have square 1 and
/// smooth images, cubics square 9 and one double point, and every pair meets
/// in the product of degrees.
pub fn is_plane_state(cfg: &CurveConfiguration) -> bool {
    let curves = cfg.curves();
    for (i, c) in curves.iter().enumerate() {
        let Some(d) = c.role.degree() else { return false };
        if c.square != d * d {
            return false;
        }
        let double_points: i64 = c.history.iter().map(|m| m * (m - 1) / 2).sum();
        if double_points != (d - 1) * (d - 2) / 2 {
            return false;
        }
        for other in &curves[i + 1..] {
            let Some(e) = other.role.degree() else { return false };
            if cfg.intersection(&c.id, &other.id) != d * e {
                return false;
            }
        }
    }
    true
}
