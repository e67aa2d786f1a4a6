//! Declarative graph templates for the classes of star-shaped graphs with
//! rational homology disk smoothings, and recognition against them.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::family::{dual_star, normalize};
use crate::plumbing::{CanonicalForm, PlumbingGraph};

pub const SHIPPED_TEMPLATES: &str = include_str!("../data/templates.json");

/// Labels whose templates are expected in a complete template set.
pub const ALL_LABELS: [&str; 13] = [
    "QHD3(a)", "QHD3(b)", "QHD3(c)", "QHD3(d)", "QHD3(e)", "QHD3(f)", "QHD3(g)", "QHD3(h)", "QHD3(i)",
    "QHD3(j)", "QHD4(a)", "QHD4(b)", "QHD4(c)",
];

#[derive(Debug, Error)]
pub enum TemplateError {
    #[error("malformed template file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad affine expression `{0}`")]
    BadExpression(String),
    #[error("unknown parameter `{0}` in expression")]
    UnknownParameter(String),
    #[error("template `{label}`: {msg}")]
    Invalid { label: String, msg: String },
}

/// `constant + sum coeff * name`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineExpr {
    pub constant: i64,
    pub terms: Vec<(i64, String)>,
}

impl AffineExpr {
    pub fn parse(src: &str) -> Result<Self, TemplateError> {
        let bad = || TemplateError::BadExpression(src.to_string());
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(bad());
        }
        let mut constant = 0i64;
        let mut terms = Vec::new();
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let mut sign = 1;
            if chars[i] == '+' || chars[i] == '-' {
                if chars[i] == '-' {
                    sign = -1;
                }
                i += 1;
            } else if i > 0 {
                return Err(bad());
            }
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let number: Option<i64> = if i > start {
                Some(chars[start..i].iter().collect::<String>().parse().map_err(|_| bad())?)
            } else {
                None
            };
            if i < chars.len() && chars[i] == '*' {
                i += 1;
            }
            let name_start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            if i > name_start {
                let name: String = chars[name_start..i].iter().collect();
                terms.push((sign * number.unwrap_or(1), name));
            } else {
                constant += sign * number.ok_or_else(bad)?;
            }
        }
        Ok(AffineExpr { constant, terms })
    }

    pub fn eval(&self, params: &BTreeMap<String, i64>) -> Result<i64, TemplateError> {
        let mut v = self.constant;
        for (c, name) in &self.terms {
            v += c * params.get(name).ok_or_else(|| TemplateError::UnknownParameter(name.clone()))?;
        }
        Ok(v)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TemplateForm {
    /// The star is the graph itself.
    #[default]
    Direct,
    /// The star is the dual side (center -1); the graph is obtained by
    /// blowing down and taking the dual star.
    Dual,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParameterSpec {
    pub name: String,
    #[serde(default)]
    pub min: i64,
    #[serde(default)]
    pub max: Option<i64>,
    #[serde(default)]
    pub values: Option<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegEntry {
    pub framing: String,
    #[serde(default = "one")]
    pub repeat: String,
}

fn one() -> String {
    "1".into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QhdTemplate {
    pub family_label: String,
    #[serde(default)]
    pub form: TemplateForm,
    pub parameters: Vec<ParameterSpec>,
    pub center: String,
    pub legs: Vec<Vec<LegEntry>>,
    #[serde(default)]
    pub note: String,
}

#[derive(Deserialize)]
struct TemplateFile {
    templates: Vec<QhdTemplate>,
}

pub fn parse_templates(json: &str) -> Result<Vec<QhdTemplate>, TemplateError> {
    let file: TemplateFile = serde_json::from_str(json)?;
    for t in &file.templates {
        t.validate()?;
    }
    Ok(file.templates)
}

pub fn shipped_templates() -> Vec<QhdTemplate> {
    parse_templates(SHIPPED_TEMPLATES).expect("shipped templates are well-formed")
}

impl QhdTemplate {
    fn validate(&self) -> Result<(), TemplateError> {
        let invalid = |msg: String| TemplateError::Invalid { label: self.family_label.clone(), msg };
        let names: HashSet<&str> = self.parameters.iter().map(|p| p.name.as_str()).collect();
        let mut exprs = vec![self.center.as_str()];
        for leg in &self.legs {
            for e in leg {
                exprs.push(&e.framing);
                exprs.push(&e.repeat);
            }
        }
        for src in exprs {
            for (_, name) in AffineExpr::parse(src)?.terms {
                if !names.contains(name.as_str()) {
                    return Err(invalid(format!("expression `{src}` uses undeclared parameter `{name}`")));
                }
            }
        }
        if self.legs.len() < 3 {
            return Err(invalid("a template needs at least three legs".into()));
        }
        Ok(())
    }

    pub fn is_qhd4(&self) -> bool {
        self.family_label.starts_with("QHD4")
    }

    /// Candidate values of each parameter, with unbounded parameters capped at
    /// `cap`.
    pub fn parameter_ranges(&self, cap: i64) -> Vec<(String, Vec<i64>)> {
        self.parameters
            .iter()
            .map(|p| {
                let vals = match &p.values {
                    Some(v) => v.clone(),
                    None => (p.min..=p.max.unwrap_or(cap).min(cap.max(p.min))).collect(),
                };
                (p.name.clone(), vals)
            })
            .collect()
    }

    /// All parameter assignments from the given ranges.
    pub fn assignments(&self, cap: i64) -> Vec<BTreeMap<String, i64>> {
        let mut out = vec![BTreeMap::new()];
        for (name, vals) in self.parameter_ranges(cap) {
            let mut next = Vec::with_capacity(out.len() * vals.len());
            for a in &out {
                for &v in &vals {
                    let mut b = a.clone();
                    b.insert(name.clone(), v);
                    next.push(b);
                }
            }
            out = next;
        }
        out
    }

    /// The raw star before any normalization.
    pub fn raw_star(&self, params: &BTreeMap<String, i64>) -> Result<(i64, Vec<Vec<i64>>), TemplateError> {
        let center = AffineExpr::parse(&self.center)?.eval(params)?;
        let mut legs = Vec::new();
        for leg in &self.legs {
            let mut framings = Vec::new();
            for e in leg {
                let f = AffineExpr::parse(&e.framing)?.eval(params)?;
                let r = AffineExpr::parse(&e.repeat)?.eval(params)?;
                if r < 0 {
                    return Err(TemplateError::Invalid {
                        label: self.family_label.clone(),
                        msg: format!("negative repeat count {r}"),
                    });
                }
                framings.extend(std::iter::repeat_n(f, r as usize));
            }
            if !framings.is_empty() {
                legs.push(framings);
            }
        }
        Ok((center, legs))
    }

    /// Instantiate; errors when the parameters give no valid negative
    /// definite star-shaped graph.
    pub fn instantiate(&self, params: &BTreeMap<String, i64>) -> Result<PlumbingGraph, TemplateError> {
        let invalid = |msg: String| TemplateError::Invalid { label: self.family_label.clone(), msg };
        for p in &self.parameters {
            let v = *params.get(&p.name).ok_or_else(|| TemplateError::UnknownParameter(p.name.clone()))?;
            let in_range = match &p.values {
                Some(vals) => vals.contains(&v),
                None => v >= p.min && p.max.is_none_or(|m| v <= m),
            };
            if !in_range {
                return Err(invalid(format!("parameter {}={v} out of range", p.name)));
            }
        }
        let (center, legs) = self.raw_star(params)?;
        let star = PlumbingGraph::star(center, &legs);
        let g = match self.form {
            TemplateForm::Direct => star,
            TemplateForm::Dual => {
                let reduced = normalize(&star);
                dual_star(&reduced).map_err(|e| invalid(e.to_string()))?
            }
        };
        if !g.is_star_shaped() {
            return Err(invalid("instantiation is not star-shaped".into()));
        }
        if !g.is_negative_definite() {
            return Err(invalid("instantiation is not negative definite".into()));
        }
        if self.is_qhd4() {
            let shape = g.star_decomposition().expect("checked star-shaped");
            if shape.num_legs() != 4 || shape.center_framing >= -2 {
                return Err(invalid("four-legged class needs four legs and central framing < -2".into()));
            }
        }
        Ok(g)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TemplateMatch {
    pub label: String,
    pub parameters: BTreeMap<String, i64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RecognitionReport {
    pub matches: Vec<TemplateMatch>,
    pub warnings: Vec<String>,
}

impl RecognitionReport {
    pub fn is_match(&self) -> bool {
        !self.matches.is_empty()
    }
}

/// All (template, parameters) whose instantiation is isomorphic to `g`.
/// Unbounded parameters are searched up to `|V(g)| + 4`, which covers every
/// shipped template (graph size grows at least linearly in each parameter).
pub fn recognize_qhd(g: &PlumbingGraph, templates: &[QhdTemplate]) -> RecognitionReport {
    let mut report = RecognitionReport::default();
    let present: HashSet<&str> = templates.iter().map(|t| t.family_label.as_str()).collect();
    let missing: Vec<&str> = ALL_LABELS.iter().copied().filter(|l| !present.contains(l)).collect();
    if !missing.is_empty() {
        report.warnings.push(format!(
            "no template loaded for {}; those classes cannot be recognized",
            missing.join(", ")
        ));
    }
    if !g.is_star_shaped() {
        return report;
    }
    let target: CanonicalForm = g.canonical_form();
    let cap = g.len() as i64 + 4;
    for t in templates {
        for params in t.assignments(cap) {
            if let Ok(h) = t.instantiate(&params) {
                if h.len() == g.len() && h.canonical_form() == target {
                    report.matches.push(TemplateMatch { label: t.family_label.clone(), parameters: params });
                }
            }
        }
    }
    report.matches.sort_by(|a, b| (&a.label, &a.parameters).cmp(&(&b.label, &b.parameters)));
    report.matches.dedup();
    report
}
