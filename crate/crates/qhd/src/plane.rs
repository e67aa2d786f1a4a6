//! Plane curves over Q(sqrt(-3)): points, multiplicities, local
//! intersection numbers and claim-file verification.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::field::FieldElement;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlaneError {
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("point is not on both curves")]
    NotOnBoth,
    #[error("curves share a component through the point")]
    CommonComponent,
    #[error("polynomial is not homogeneous or is zero")]
    NotHomogeneous,
    #[error("all coordinates of a point are zero")]
    ZeroPoint,
    #[error("malformed claim file: {0}")]
    Malformed(String),
}

/// Homogeneous polynomial in x, y, z keyed by exponent triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCurve {
    terms: BTreeMap<[u32; 3], FieldElement>,
    degree: u32,
}

#[derive(Clone, Debug)]
pub struct ProjectivePoint(pub [FieldElement; 3]);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Singularity {
    Node,
    Cusp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Multiplicity {
    pub order: u32,
    /// Only for points of multiplicity two.
    pub kind: Option<Singularity>,
}

/// Affine polynomial in two variables keyed by `(i, j)` for `u^i v^j`.
type Affine = BTreeMap<(u32, u32), FieldElement>;

impl PlaneCurve {
    pub fn new(terms: BTreeMap<[u32; 3], FieldElement>) -> Result<Self, PlaneError> {
        let terms: BTreeMap<_, _> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let mut degrees = terms.keys().map(|e| e.iter().sum::<u32>());
        let degree = degrees.next().ok_or(PlaneError::NotHomogeneous)?;
        if degrees.any(|d| d != degree) {
            return Err(PlaneError::NotHomogeneous);
        }
        Ok(PlaneCurve { terms, degree })
    }

    /// Build from `(coefficient, [ex, ey, ez])` pairs.
    pub fn from_terms(terms: &[(FieldElement, [u32; 3])]) -> Result<Self, PlaneError> {
        let mut map: BTreeMap<[u32; 3], FieldElement> = BTreeMap::new();
        for (c, e) in terms {
            let cur = map.remove(e).unwrap_or_else(FieldElement::zero);
            map.insert(*e, &cur + c);
        }
        Self::new(map)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<[u32; 3], FieldElement> {
        &self.terms
    }

    pub fn eval(&self, p: &ProjectivePoint) -> FieldElement {
        let mut acc = FieldElement::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..3 {
                t = &t * &p.0[i].pow(e[i]);
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Apply a linear change of coordinates: the new curve is `F(M X)`.
    pub fn transform(&self, m: &[[FieldElement; 3]; 3]) -> Result<Self, PlaneError> {
        // F(M X) expanded monomial by monomial: each variable becomes a linear form
        let mut out: BTreeMap<[u32; 3], FieldElement> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut prod: BTreeMap<[u32; 3], FieldElement> = BTreeMap::from([([0, 0, 0], c.clone())]);
            for (var, &pow) in e.iter().enumerate() {
                for _ in 0..pow {
                    let mut next: BTreeMap<[u32; 3], FieldElement> = BTreeMap::new();
                    for (pe, pc) in &prod {
                        for j in 0..3 {
                            if m[var][j].is_zero() {
                                continue;
                            }
                            let mut ne = *pe;
                            ne[j] += 1;
                            let cur = next.remove(&ne).unwrap_or_else(FieldElement::zero);
                            next.insert(ne, &cur + &(pc * &m[var][j]));
                        }
                    }
                    prod = next;
                }
            }
            for (pe, pc) in prod {
                let cur = out.remove(&pe).unwrap_or_else(FieldElement::zero);
                out.insert(pe, &cur + &pc);
            }
        }
        Self::new(out)
    }

    pub fn contains(&self, p: &ProjectivePoint) -> bool {
        self.eval(p).is_zero()
    }

    fn partial(&self, var: usize) -> BTreeMap<[u32; 3], FieldElement> {
        let mut out = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut ne = *e;
            ne[var] -= 1;
            out.insert(ne, c * &FieldElement::int(e[var] as i64));
        }
        out
    }

    /// Determinant of the matrix of second partial derivatives, if nonzero.
    pub fn hessian(&self) -> Option<PlaneCurve> {
        let second = |i: usize, j: usize| -> BTreeMap<[u32; 3], FieldElement> {
            let fi = PlaneCurve { terms: self.partial(i), degree: self.degree.saturating_sub(1) };
            fi.partial(j)
        };
        let h: Vec<Vec<BTreeMap<[u32; 3], FieldElement>>> =
            (0..3).map(|i| (0..3).map(|j| second(i, j)).collect()).collect();
        let mul = |a: &BTreeMap<[u32; 3], FieldElement>, b: &BTreeMap<[u32; 3], FieldElement>| {
            let mut out: BTreeMap<[u32; 3], FieldElement> = BTreeMap::new();
            for (ea, ca) in a {
                for (eb, cb) in b {
                    let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                    let cur = out.remove(&e).unwrap_or_else(FieldElement::zero);
                    out.insert(e, &cur + &(ca * cb));
                }
            }
            out
        };
        let add = |a: &mut BTreeMap<[u32; 3], FieldElement>, b: BTreeMap<[u32; 3], FieldElement>, sign: i64| {
            for (e, c) in b {
                let cur = a.remove(&e).unwrap_or_else(FieldElement::zero);
                a.insert(e, &cur + &(&c * &FieldElement::int(sign)));
            }
        };
        let mut det = BTreeMap::new();
        for (p, sign) in [([0, 1, 2], 1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([0, 2, 1], -1), ([1, 0, 2], -1), ([2, 1, 0], -1)] {
            let t = mul(&mul(&h[0][p[0]], &h[1][p[1]]), &h[2][p[2]]);
            add(&mut det, t, sign);
        }
        PlaneCurve::new(det).ok()
    }

    /// Dehomogenize so that `p` is the origin of the affine chart.
    fn local_at(&self, p: &ProjectivePoint) -> Affine {
        let (chart, p) = p.normalized();
        let others: Vec<usize> = (0..3).filter(|&i| i != chart).collect();
        let mut out: Affine = BTreeMap::new();
        for (e, c) in &self.terms {
            // prod over the two free variables of (p_j + t_j)^e_j
            let mut poly: Affine = BTreeMap::from([((0, 0), c.clone())]);
            for (slot, &j) in others.iter().enumerate() {
                let mut next: Affine = BTreeMap::new();
                for (&(a, b), pc) in &poly {
                    for r in 0..=e[j] {
                        let coeff = &FieldElement::int(binomial(e[j], r) as i64) * &p.0[j].pow(e[j] - r);
                        if coeff.is_zero() {
                            continue;
                        }
                        let key = if slot == 0 { (a + r, b) } else { (a, b + r) };
                        let cur = next.remove(&key).unwrap_or_else(FieldElement::zero);
                        next.insert(key, &cur + &(pc * &coeff));
                    }
                }
                poly = next;
            }
            for (k, v) in poly {
                let cur = out.remove(&k).unwrap_or_else(FieldElement::zero);
                out.insert(k, &cur + &v);
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn multiplicity_at(&self, p: &ProjectivePoint) -> Result<Multiplicity, PlaneError> {
        if !self.contains(p) {
            return Err(PlaneError::NotOnCurve);
        }
        let local = self.local_at(p);
        let order = local.keys().map(|(a, b)| a + b).min().unwrap_or(0);
        let kind = (order == 2).then(|| {
            let get = |k: (u32, u32)| local.get(&k).cloned().unwrap_or_else(FieldElement::zero);
            let (a, b, c) = (get((2, 0)), get((1, 1)), get((0, 2)));
            let disc = &(&b * &b) - &(&FieldElement::int(4) * &(&a * &c));
            if disc.is_zero() {
                Singularity::Cusp
            } else {
                Singularity::Node
            }
        });
        Ok(Multiplicity { order, kind })
    }

    /// Whether both affine partial derivatives vanish at `p`.
    pub fn is_singular_at(&self, p: &ProjectivePoint) -> bool {
        let local = self.local_at(p);
        let lin = |k| local.get(&k).map(|c: &FieldElement| c.is_zero()).unwrap_or(true);
        self.contains(p) && lin((1, 0)) && lin((0, 1))
    }
}

fn binomial(n: u32, k: u32) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

impl ProjectivePoint {
    pub fn new(x: FieldElement, y: FieldElement, z: FieldElement) -> Result<Self, PlaneError> {
        if x.is_zero() && y.is_zero() && z.is_zero() {
            return Err(PlaneError::ZeroPoint);
        }
        Ok(ProjectivePoint([x, y, z]))
    }

    pub fn ints(x: i64, y: i64, z: i64) -> Result<Self, PlaneError> {
        Self::new(FieldElement::int(x), FieldElement::int(y), FieldElement::int(z))
    }

    /// Chart index (last nonzero coordinate) and the point scaled so that
    /// coordinate is 1.
    fn normalized(&self) -> (usize, ProjectivePoint) {
        let chart = (0..3).rev().find(|&i| !self.0[i].is_zero()).expect("nonzero point");
        let s = self.0[chart].inv().expect("nonzero");
        (chart, ProjectivePoint([&self.0[0] * &s, &self.0[1] * &s, &self.0[2] * &s]))
    }

    /// Image under `X -> M^{-1} X` is computed by callers; here just apply `M`.
    pub fn apply(&self, m: &[[FieldElement; 3]; 3]) -> ProjectivePoint {
        let row = |i: usize| {
            let mut acc = FieldElement::zero();
            for j in 0..3 {
                acc = &acc + &(&m[i][j] * &self.0[j]);
            }
            acc
        };
        ProjectivePoint([row(0), row(1), row(2)])
    }
}

impl PartialEq for ProjectivePoint {
    fn eq(&self, other: &Self) -> bool {
        (0..3).all(|i| {
            (i + 1..3).all(|j| (&self.0[i] * &other.0[j]) == (&self.0[j] * &other.0[i]))
        }) && (0..3).all(|i| self.0[i].is_zero() == other.0[i].is_zero())
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}:{}]", self.0[0], self.0[1], self.0[2])
    }
}

fn affine_is_zero(f: &Affine) -> bool {
    f.values().all(|c| c.is_zero())
}

/// `F(x, 0)` as a map from exponent of x to coefficient.
fn restrict_y0(f: &Affine) -> BTreeMap<u32, FieldElement> {
    f.iter().filter(|((_, j), c)| *j == 0 && !c.is_zero()).map(|((i, _), c)| (*i, c.clone())).collect()
}

fn affine_sub_scaled(g: &Affine, a: &FieldElement, f: &Affine, b: &FieldElement, shift: u32) -> Affine {
    // a*g - b*x^shift*f
    let mut out: Affine = g.iter().map(|(k, c)| (*k, c * a)).collect();
    for ((i, j), c) in f {
        let key = (i + shift, *j);
        let cur = out.remove(&key).unwrap_or_else(FieldElement::zero);
        out.insert(key, &cur - &(c * b));
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Local intersection number at the origin, by the classical reduction:
/// compare the restrictions to `y = 0`, cancel leading terms, and split off
/// a factor `y` when one restriction vanishes.
fn local_intersection(f: &Affine, g: &Affine) -> Result<u32, PlaneError> {
    let mut f = f.clone();
    let mut g = g.clone();
    let mut total = 0u32;
    loop {
        if affine_is_zero(&f) || affine_is_zero(&g) {
            return Err(PlaneError::CommonComponent);
        }
        let c0 = |h: &Affine| h.get(&(0, 0)).map(|c| !c.is_zero()).unwrap_or(false);
        if c0(&f) || c0(&g) {
            return Ok(total);
        }
        let (rf, rg) = (restrict_y0(&f), restrict_y0(&g));
        match (rf.is_empty(), rg.is_empty()) {
            (true, true) => return Err(PlaneError::CommonComponent),
            (false, true) | (true, false) => {
                // one of them is y*H: I(F, yH) = I(F, y) + I(F, H)
                let (other, divisible) = if rg.is_empty() { (f, g) } else { (g, f) };
                let ro = restrict_y0(&other);
                total += *ro.keys().next().expect("nonzero restriction");
                let h: Affine = divisible.into_iter().map(|((i, j), c)| ((i, j - 1), c)).collect();
                f = other;
                g = h;
            }
            (false, false) => {
                let (r, lr) = rf.iter().next_back().map(|(k, c)| (*k, c.clone())).unwrap();
                let (s, ls) = rg.iter().next_back().map(|(k, c)| (*k, c.clone())).unwrap();
                if r <= s {
                    g = affine_sub_scaled(&g, &lr, &f, &ls, s - r);
                } else {
                    f = affine_sub_scaled(&f, &ls, &g, &lr, r - s);
                }
            }
        }
    }
}

pub fn intersection_multiplicity(c1: &PlaneCurve, c2: &PlaneCurve, p: &ProjectivePoint) -> Result<u32, PlaneError> {
    if !c1.contains(p) || !c2.contains(p) {
        return Err(PlaneError::NotOnBoth);
    }
    local_intersection(&c1.local_at(p), &c2.local_at(p))
}

// ---------------------------------------------------------------------------
// Claim files

pub const SHIPPED_CLAIMS: [(&str, &str); 4] = [
    ("c6-existence", include_str!("../data/claims/c6-existence.json")),
    ("qhd4-c", include_str!("../data/claims/qhd4-c.json")),
    ("qhd4-b", include_str!("../data/claims/qhd4-b.json")),
    ("qhd4-a", include_str!("../data/claims/qhd4-a.json")),
];

pub fn shipped_claims(name: &str) -> Option<&'static str> {
    SHIPPED_CLAIMS.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimResult {
    pub kind: String,
    pub subject: String,
    pub expected: String,
    pub computed: String,
    pub passed: bool,
    /// Informational claims never fail the report.
    pub informational: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BezoutTotal {
    pub curves: [String; 2],
    pub points: Vec<String>,
    pub total: u32,
    pub expected: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimReport {
    pub name: String,
    pub results: Vec<ClaimResult>,
    pub bezout: Vec<BezoutTotal>,
}

impl ClaimReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed || r.informational)
    }
}

fn parse_rational_pair(v: &Value) -> Result<FieldElement, PlaneError> {
    let bad = || PlaneError::Malformed(format!("field element must be [a_num, a_den, b_num, b_den], got {v}"));
    let arr = v.as_array().ok_or_else(bad)?;
    let nums: Vec<i64> = arr.iter().map(|x| x.as_i64().ok_or_else(bad)).collect::<Result<_, _>>()?;
    match nums.as_slice() {
        [an, ad, bn, bd] if *ad != 0 && *bd != 0 => Ok(FieldElement::from_parts(*an, *ad, *bn, *bd)),
        [an, ad] if *ad != 0 => Ok(FieldElement::rational(*an, *ad)),
        [an] => Ok(FieldElement::int(*an)),
        _ => Err(bad()),
    }
}

/// Monomials are written like `x2y`, `xyz`, `z3`, or `1`.
pub fn parse_monomial(s: &str) -> Result<[u32; 3], PlaneError> {
    let bad = || PlaneError::Malformed(format!("bad monomial `{s}`"));
    let mut e = [0u32; 3];
    if s == "1" {
        return Ok(e);
    }
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let var = match chars[i] {
            'x' => 0,
            'y' => 1,
            'z' => 2,
            _ => return Err(bad()),
        };
        i += 1;
        let start = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        let pow: u32 = if i > start { chars[start..i].iter().collect::<String>().parse().map_err(|_| bad())? } else { 1 };
        e[var] += pow;
    }
    Ok(e)
}

pub fn verify_claims(json: &str) -> Result<ClaimReport, PlaneError> {
    let root: Value = serde_json::from_str(json).map_err(|e| PlaneError::Malformed(e.to_string()))?;
    let mal = |m: &str| PlaneError::Malformed(m.to_string());
    let name = root.get("name").and_then(Value::as_str).unwrap_or("unnamed").to_string();

    let mut curves: BTreeMap<String, PlaneCurve> = BTreeMap::new();
    for (cname, terms) in root.get("curves").and_then(Value::as_object).ok_or_else(|| mal("missing `curves`"))? {
        let obj = terms.as_object().ok_or_else(|| mal("curve must be an object of monomials"))?;
        let mut list = Vec::new();
        for (mono, coeff) in obj {
            list.push((parse_rational_pair(coeff)?, parse_monomial(mono)?));
        }
        let curve = PlaneCurve::from_terms(&list).map_err(|e| PlaneError::Malformed(format!("curve {cname}: {e}")))?;
        curves.insert(cname.clone(), curve);
    }
    let mut points: BTreeMap<String, ProjectivePoint> = BTreeMap::new();
    for (pname, coords) in root.get("points").and_then(Value::as_object).ok_or_else(|| mal("missing `points`"))? {
        let arr = coords.as_array().filter(|a| a.len() == 3).ok_or_else(|| mal("point needs three coordinates"))?;
        let pt = ProjectivePoint::new(parse_rational_pair(&arr[0])?, parse_rational_pair(&arr[1])?, parse_rational_pair(&arr[2])?)
            .map_err(|e| PlaneError::Malformed(format!("point {pname}: {e}")))?;
        points.insert(pname.clone(), pt);
    }
    let curve = |n: &str| curves.get(n).ok_or_else(|| PlaneError::Malformed(format!("unknown curve `{n}`")));
    let point = |n: &str| points.get(n).ok_or_else(|| PlaneError::Malformed(format!("unknown point `{n}`")));
    let str_field = |c: &Value, key: &str| -> Result<String, PlaneError> {
        c.get(key).and_then(Value::as_str).map(String::from).ok_or_else(|| PlaneError::Malformed(format!("claim needs `{key}`")))
    };
    let pair_field = |c: &Value| -> Result<[String; 2], PlaneError> {
        let arr = c.get("curves").and_then(Value::as_array).filter(|a| a.len() == 2).ok_or_else(|| mal("claim needs a `curves` pair"))?;
        let s = |v: &Value| v.as_str().map(String::from).ok_or_else(|| mal("curve names are strings"));
        Ok([s(&arr[0])?, s(&arr[1])?])
    };

    let mut results = Vec::new();
    let mut bezout = Vec::new();
    for c in root.get("claims").and_then(Value::as_array).ok_or_else(|| mal("missing `claims`"))? {
        let kind = str_field(c, "kind")?;
        match kind.as_str() {
            "on_curve" => {
                let (cn, pn) = (str_field(c, "curve")?, str_field(c, "point")?);
                let expected = c.get("expected").and_then(Value::as_bool).unwrap_or(true);
                let got = curve(&cn)?.contains(point(&pn)?);
                results.push(ClaimResult {
                    kind,
                    subject: format!("{cn} at {pn}"),
                    expected: expected.to_string(),
                    computed: got.to_string(),
                    passed: got == expected,
                    informational: false,
                });
            }
            "multiplicity" => {
                let (cn, pn) = (str_field(c, "curve")?, str_field(c, "point")?);
                let expected = c.get("expected").and_then(Value::as_u64).ok_or_else(|| mal("multiplicity claim needs `expected`"))? as u32;
                let sing = c.get("singularity").and_then(Value::as_str).map(|s| s.to_ascii_lowercase());
                let (computed, passed) = match curve(&cn)?.multiplicity_at(point(&pn)?) {
                    Ok(m) => {
                        let kind_ok = match (&sing, m.kind) {
                            (None, _) => true,
                            (Some(s), Some(Singularity::Node)) => s == "node",
                            (Some(s), Some(Singularity::Cusp)) => s == "cusp",
                            (Some(_), None) => false,
                        };
                        let text = match m.kind {
                            Some(k) => format!("{} ({:?})", m.order, k).to_lowercase(),
                            None => m.order.to_string(),
                        };
                        (text, m.order == expected && kind_ok)
                    }
                    Err(e) => (e.to_string(), false),
                };
                let exp_text = match &sing {
                    Some(s) => format!("{expected} ({s})"),
                    None => expected.to_string(),
                };
                results.push(ClaimResult { kind, subject: format!("{cn} at {pn}"), expected: exp_text, computed, passed, informational: false });
            }
            "intersection" => {
                let [a, b] = pair_field(c)?;
                let pn = str_field(c, "point")?;
                let expected = c.get("expected").and_then(Value::as_u64).ok_or_else(|| mal("intersection claim needs `expected`"))? as u32;
                let (computed, passed) = match intersection_multiplicity(curve(&a)?, curve(&b)?, point(&pn)?) {
                    Ok(m) => (m.to_string(), m == expected),
                    Err(e) => (e.to_string(), false),
                };
                results.push(ClaimResult {
                    kind,
                    subject: format!("I({a},{b}; {pn})"),
                    expected: expected.to_string(),
                    computed,
                    passed,
                    informational: false,
                });
            }
            "bezout" => {
                let [a, b] = pair_field(c)?;
                let pts: Vec<String> = c
                    .get("points")
                    .and_then(Value::as_array)
                    .ok_or_else(|| mal("bezout claim needs `points`"))?
                    .iter()
                    .map(|v| v.as_str().map(String::from).ok_or_else(|| mal("point names are strings")))
                    .collect::<Result<_, _>>()?;
                let (ca, cb) = (curve(&a)?, curve(&b)?);
                let expected = c.get("expected").and_then(Value::as_u64).map(|v| v as u32).unwrap_or(ca.degree() * cb.degree());
                let mut total = 0u32;
                let mut err = None;
                for pn in &pts {
                    match intersection_multiplicity(ca, cb, point(pn)?) {
                        Ok(m) => total += m,
                        Err(e) => err = Some(format!("{pn}: {e}")),
                    }
                }
                let computed = err.clone().unwrap_or_else(|| total.to_string());
                results.push(ClaimResult {
                    kind,
                    subject: format!("sum I({a},{b}) over {}", pts.join(",")),
                    expected: expected.to_string(),
                    computed,
                    passed: err.is_none() && total == expected,
                    informational: false,
                });
                bezout.push(BezoutTotal { curves: [a, b], points: pts, total, expected });
            }
            "inflection" => {
                let (cn, pn) = (str_field(c, "curve")?, str_field(c, "point")?);
                let cv = curve(&cn)?;
                let pt = point(&pn)?;
                let computed = match cv.hessian() {
                    Some(h) if cv.contains(pt) => match intersection_multiplicity(cv, &h, pt) {
                        Ok(m) => format!("hessian vanishes: {}, I(curve, hessian) = {m}", h.contains(pt)),
                        Err(e) => format!("hessian vanishes: {}, {e}", h.contains(pt)),
                    },
                    Some(_) => "point not on curve".to_string(),
                    None => "hessian vanishes identically".to_string(),
                };
                let passed = cv.contains(pt) && cv.hessian().map(|h| h.contains(pt)).unwrap_or(true);
                results.push(ClaimResult {
                    kind,
                    subject: format!("{cn} at {pn}"),
                    expected: "hessian vanishes".into(),
                    computed,
                    passed,
                    informational: true,
                });
            }
            other => return Err(PlaneError::Malformed(format!("unknown claim kind `{other}`"))),
        }
    }
    Ok(ClaimReport { name, results, bezout })
}
