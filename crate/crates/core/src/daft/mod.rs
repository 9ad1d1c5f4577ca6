//! Instance harness for the adjoint functor theorems relating
//! `phi`-admissibility to small-admissibility plus `psi`-cocontinuity.

mod bundle;
mod generate;
mod minimize;

use std::sync::Arc;

use serde::Serialize;

use crate::adjunction::is_phi_admissible;
use crate::error::{Error, Result, Side};
use crate::fincat::{Category, Diagram, Functor};
use crate::format::{write_category, write_functor};
use crate::presheaf::{Counterexample, WeightClass};
use crate::weights::{is_cocomplete, is_cocontinuous, TablePair, BOUND_RATIONALE};

pub use bundle::{corpus, parse_bundle, write_bundle, Expectation};
pub use generate::{generate_instances, CollapseStats, Profile, ProfileKind};
pub use minimize::{is_disagreement, minimize};

/// A functor to be checked against one table pair at a shape bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremInstance {
    pub id: String,
    pub f: Functor,
    pub pair: TablePair,
    pub size_bound: usize,
}

/// A diagram serialised as its shape and the functor out of it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramText {
    pub shape: String,
    pub diagram: String,
}

impl DiagramText {
    pub fn new(d: &Diagram) -> DiagramText {
        DiagramText {
            shape: write_category(d.source()),
            diagram: write_functor(d, "shape", "ambient"),
        }
    }
}

/// Both sides of the theorem for one instance.
#[derive(Debug, Clone, Serialize)]
pub struct VerdictRecord {
    pub id: String,
    pub psi: WeightClass,
    pub phi: WeightClass,
    pub notion: &'static str,
    pub size_bound: usize,
    /// `phi`-admissibility of `f`.
    pub lhs: bool,
    /// `(phi . psi)`-admissibility, with the composite class realised as small.
    pub small_admissible: bool,
    pub cocontinuous: bool,
    pub rhs: bool,
    pub agreement: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs_failing_object: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs_counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cocontinuity_failure: Option<DiagramText>,
    pub source_is_preorder: bool,
    pub target_is_preorder: bool,
    pub notes: Vec<&'static str>,
}

pub const COMPOSITE_NOTE: &str =
    "the composite class (phi . psi) is realised as small; small-admissibility is constant true at finite scale";
pub const VIRTUAL_NOTE: &str =
    "(empty, small): the left side is constant true at finite scale and the right side is vacuous (no empty-class shapes)";

fn describe(d: &Diagram) -> String {
    let c = d.target();
    let images: Vec<&str> = d.object_map().iter().map(|&o| c.object_name(o)).collect();
    format!(
        "shape with {} objects and {} morphisms sent to [{}]",
        d.source().object_count(),
        d.source().morphism_count(),
        images.join(", ")
    )
}

/// Source and target must both be `psi`-cocomplete at the bound.
pub fn check_preconditions(f: &Functor, psi: WeightClass, size_bound: usize) -> Result<()> {
    for (side, c) in [(Side::Source, f.source()), (Side::Target, f.target())] {
        let v = is_cocomplete(c, psi, size_bound);
        if let Some(d) = v.failing {
            return Err(Error::PreconditionFailure {
                side,
                class: psi.to_string(),
                diagram: describe(&d),
            });
        }
    }
    Ok(())
}

pub fn verify_daft(instance: &TheoremInstance) -> Result<VerdictRecord> {
    let TablePair { psi, phi } = instance.pair;
    let f = &instance.f;
    check_preconditions(f, psi, instance.size_bound)?;
    let lhs_report = is_phi_admissible(f, phi);
    let small = is_phi_admissible(f, WeightClass::Small);
    let cocont = is_cocontinuous(f, psi, instance.size_bound);
    let rhs = small.holds && cocont.holds;
    let failing = lhs_report.failing_object();
    let mut notes = vec![COMPOSITE_NOTE, BOUND_RATIONALE];
    if instance.pair.psi == WeightClass::Empty {
        notes.push(VIRTUAL_NOTE);
    }
    Ok(VerdictRecord {
        id: instance.id.clone(),
        psi,
        phi,
        notion: instance.pair.notion(),
        size_bound: instance.size_bound,
        lhs: lhs_report.holds,
        small_admissible: small.holds,
        cocontinuous: cocont.holds,
        rhs,
        agreement: lhs_report.holds == rhs,
        lhs_failing_object: failing.map(|o| f.target().object_name(o).to_string()),
        lhs_counterexample: failing.and_then(|o| lhs_report.objects[o].classification.counterexample.clone()),
        cocontinuity_failure: cocont.failing.as_ref().map(DiagramText::new),
        source_is_preorder: f.source().is_preorder(),
        target_is_preorder: f.target().is_preorder(),
        notes,
    })
}

/// `phi`-admissible implies `psi`-cocontinuous, under the same preconditions
/// as [`verify_daft`].
pub fn verify_admissible_implies_cocontinuous(f: &Functor, pair: TablePair, size_bound: usize) -> Result<bool> {
    check_preconditions(f, pair.psi, size_bound)?;
    Ok(!is_phi_admissible(f, pair.phi).holds || is_cocontinuous(f, pair.psi, size_bound).holds)
}

/// A thin category on the given preorder (reflexive, transitive relation),
/// with one morphism `a<b` per related pair of distinct objects.
pub fn preorder_category(names: &[String], leq: &dyn Fn(usize, usize) -> bool) -> Category {
    let n = names.len();
    let mut raw = crate::fincat::RawCategory {
        objects: names.to_vec(),
        ..Default::default()
    };
    let arrow = |a: usize, b: usize| format!("{}<{}", names[a], names[b]);
    for a in 0..n {
        for b in 0..n {
            if a != b && leq(a, b) {
                raw.morphisms.push((arrow(a, b), names[a].clone(), names[b].clone()));
            }
        }
    }
    for (a, name) in names.iter().enumerate() {
        for b in 0..n {
            for c in 0..n {
                if a != b && b != c && leq(a, b) && leq(b, c) {
                    let h = if a == c { format!("id_{name}") } else { arrow(a, c) };
                    raw.composites.push((arrow(b, c), arrow(a, b), h));
                }
            }
        }
    }
    Category::validate(&raw).expect("a preorder is a thin category")
}

pub(crate) fn arc(c: Category) -> Arc<Category> {
    Arc::new(c)
}
