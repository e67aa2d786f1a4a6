//! Plumbing graphs of star-shaped surface singularities, their dual
//! families, curve configurations in blow-ups of the plane, and exact
//! plane-curve checks.

pub mod cli;
pub mod curves;
pub mod embed;
pub mod family;
pub mod field;
pub mod hj;
pub mod plane;
pub mod plumbing;
pub mod templates;

pub use curves::{CurveConfiguration, DualFamily, Role};
pub use embed::{enumerate_solutions, verify_proposition, EmbeddingProblem, Verdict};
pub use family::{dual_star, generate_family, is_in_family, normalize, FamilySpec, FamilyTag};
pub use field::FieldElement;
pub use hj::{dual_expansion, g_chain, hj_evaluate, hj_expand, HJExpansion};
pub use plane::{intersection_multiplicity, verify_claims, PlaneCurve, ProjectivePoint};
pub use plumbing::{PlumbingGraph, StarShape};
pub use templates::{recognize_qhd, shipped_templates, QhdTemplate};
