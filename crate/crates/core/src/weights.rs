//! Preservation semantics of weight classes: bounded shape families,
//! cocompleteness and cocontinuity.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fincat::colimit::{is_colimit_cocone, universal_cocone, Cocone};
use crate::fincat::functor::for_each_functor;
use crate::fincat::{enumerate_categories, is_connected, is_filtered, Category, Diagram, Functor};
use crate::presheaf::WeightClass;

/// Default shape bound, counted in morphisms of the shape.
pub const DEFAULT_BOUND: usize = 5;

/// Emitted with every bounded verdict.
pub const BOUND_RATIONALE: &str = "shapes are all categories with at most `bound` morphisms in the class, up to isomorphism; \
bound 5 contains the empty, binary discrete, parallel-pair and span shapes, which generate finite colimits and finite connected colimits, \
and the idempotent monoid, whose colimits are those of all finite filtered shapes";

/// The pairs `(psi, phi)` for which the harness is defined.
pub const TABLE_PAIRS: [(WeightClass, WeightClass); 5] = [
    (WeightClass::Small, WeightClass::Empty),
    (WeightClass::Small, WeightClass::Absolute),
    (WeightClass::Finite, WeightClass::Filtered),
    (WeightClass::Connected, WeightClass::Discrete),
    (WeightClass::Empty, WeightClass::Small),
];

/// A validated table pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TablePair {
    pub psi: WeightClass,
    pub phi: WeightClass,
}

impl TablePair {
    pub fn new(psi: WeightClass, phi: WeightClass) -> Result<TablePair> {
        if TABLE_PAIRS.contains(&(psi, phi)) {
            Ok(TablePair { psi, phi })
        } else {
            Err(Error::UnsupportedPair {
                psi: psi.to_string(),
                phi: phi.to_string(),
            })
        }
    }

    pub fn all() -> impl Iterator<Item = TablePair> {
        TABLE_PAIRS.into_iter().map(|(psi, phi)| TablePair { psi, phi })
    }

    /// Name of the adjointness notion captured by `phi`-admissibility.
    pub fn notion(&self) -> &'static str {
        match self.phi {
            WeightClass::Empty => "adjoint",
            WeightClass::Absolute => "semiadjoint",
            WeightClass::Filtered => "pluriadjoint",
            WeightClass::Discrete => "multiadjoint",
            _ => "virtual adjoint",
        }
    }
}

impl fmt::Display for TablePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.psi, self.phi)
    }
}

/// Shapes of a class up to a bound, in enumeration order.
#[derive(Debug, Clone)]
pub struct ShapeFamily {
    pub class: WeightClass,
    pub size_bound: usize,
    pub shapes: Vec<Arc<Category>>,
}

/// Membership of a finite shape in a class. Absolute shapes are taken to be
/// the finite filtered ones: their colimits are splittings of idempotents.
pub fn shape_in_class(shape: &Category, class: WeightClass) -> bool {
    match class {
        WeightClass::Empty => false,
        WeightClass::Discrete => shape.is_discrete(),
        WeightClass::Connected => is_connected(shape),
        WeightClass::Finite | WeightClass::Small => true,
        WeightClass::Filtered | WeightClass::Absolute => is_filtered(shape).is_ok(),
    }
}

type Shapes = Arc<Vec<Arc<Category>>>;

fn all_shapes(bound: usize) -> Shapes {
    static CACHE: OnceLock<Mutex<HashMap<usize, Shapes>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(s) = cache.lock().unwrap().get(&bound) {
        return s.clone();
    }
    let shapes: Shapes = Arc::new(enumerate_categories(bound).into_iter().map(Arc::new).collect());
    cache.lock().unwrap().insert(bound, shapes.clone());
    shapes
}

pub fn enumerate_shapes(class: WeightClass, size_bound: usize) -> ShapeFamily {
    let shapes = all_shapes(size_bound)
        .iter()
        .filter(|s| shape_in_class(s, class))
        .cloned()
        .collect();
    ShapeFamily {
        class,
        size_bound,
        shapes,
    }
}

/// Verdict of a bounded check, with the enumeration-least failing diagram.
#[derive(Debug, Clone)]
pub struct BoundedVerdict {
    pub class: WeightClass,
    pub size_bound: usize,
    pub holds: bool,
    pub failing: Option<Diagram>,
    /// For cocontinuity: the colimit cocone in the source that is not preserved.
    pub cocone: Option<Cocone>,
}

impl BoundedVerdict {
    fn pass(class: WeightClass, size_bound: usize) -> Self {
        BoundedVerdict {
            class,
            size_bound,
            holds: true,
            failing: None,
            cocone: None,
        }
    }
}

/// Calls `visit` on every diagram of a shape in the family, in order, until
/// it returns `false`.
fn for_each_diagram(family: &ShapeFamily, target: &Arc<Category>, visit: &mut dyn FnMut(Diagram) -> bool) {
    for shape in &family.shapes {
        let mut go = true;
        for_each_functor(shape, target, &mut |obj, mor| {
            let d = Functor::new_trusted(shape.clone(), target.clone(), obj.to_vec(), mor.to_vec());
            go = visit(d);
            go
        });
        if !go {
            return;
        }
    }
}

/// Every diagram with shape in the family has a colimit.
pub fn is_cocomplete(c: &Arc<Category>, class: WeightClass, size_bound: usize) -> BoundedVerdict {
    let family = enumerate_shapes(class, size_bound);
    let mut verdict = BoundedVerdict::pass(class, size_bound);
    for_each_diagram(&family, c, &mut |d| {
        if universal_cocone(&d).is_some() {
            true
        } else {
            verdict.holds = false;
            verdict.failing = Some(d);
            false
        }
    });
    verdict
}

/// Every colimit in the source of a diagram with shape in the family is sent
/// to a colimit in the target.
pub fn is_cocontinuous(f: &Functor, class: WeightClass, size_bound: usize) -> BoundedVerdict {
    let family = enumerate_shapes(class, size_bound);
    let mut verdict = BoundedVerdict::pass(class, size_bound);
    let tgt = f.target();
    for_each_diagram(&family, f.source(), &mut |d| {
        let Some(cocone) = universal_cocone(&d) else {
            return true;
        };
        let image = f.after(&d).expect("composable");
        let mapped = Cocone {
            apex: f.on_object(cocone.apex),
            legs: cocone.legs.iter().map(|&l| f.on_morphism(l)).collect(),
        };
        debug_assert!(mapped.legs.iter().all(|&l| tgt.target(l) == mapped.apex));
        if is_colimit_cocone(&image, &mapped) {
            true
        } else {
            verdict.holds = false;
            verdict.failing = Some(d);
            verdict.cocone = Some(cocone);
            false
        }
    });
    verdict
}

/// `small-cocomplete <=> psi-cocomplete and phi-cocomplete`, each side
/// computed separately.
pub fn cocompleteness_decomposition_check(
    c: &Arc<Category>,
    psi: WeightClass,
    phi: WeightClass,
    size_bound: usize,
) -> Result<bool> {
    TablePair::new(psi, phi)?;
    let whole = is_cocomplete(c, WeightClass::Small, size_bound).holds;
    let parts = is_cocomplete(c, psi, size_bound).holds && is_cocomplete(c, phi, size_bound).holds;
    Ok(whole == parts)
}
