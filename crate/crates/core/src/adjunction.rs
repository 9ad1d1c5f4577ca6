//! Adjoint search, adjunction verification, relative adjointness
//! (admissibility) and composition of a reflection with an adjunction.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result, TwoCell};
use crate::fincat::{comma, has_terminal, Category, Functor, Mor, NaturalTransformation, Obj};
use crate::presheaf::{classify, hom_presheaf, Classification, WeightClass};

/// `left: x -> y`, `right: y -> x`, `unit: 1 => right . left`,
/// `counit: left . right => 1`. Values returned by this module always satisfy
/// the triangle identities; hand-built candidates are checked with
/// [`verify_adjunction`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Adjunction {
    pub left: Functor,
    pub right: Functor,
    pub unit: NaturalTransformation,
    pub counit: NaturalTransformation,
}

/// First failing datum of an adjunction candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TriangleFailure {
    UnitNotNatural {
        morphism: Mor,
    },
    CounitNotNatural {
        morphism: Mor,
    },
    /// `counit_{left x} . left(unit_x) != id` at this object of the source.
    LeftTriangle {
        object: Obj,
    },
    /// `right(counit_y) . unit_{right y} != id` at this object of the target.
    RightTriangle {
        object: Obj,
    },
}

impl Adjunction {
    pub fn identity(c: Arc<Category>) -> Adjunction {
        let id = Functor::identity(c);
        let t = NaturalTransformation::identity(&id);
        Adjunction {
            left: id.clone(),
            right: id,
            unit: t.clone(),
            counit: t,
        }
    }
}

/// Checks both triangle identities (and naturality of unit and counit).
/// `Ok(None)` means the candidate is an adjunction.
pub fn verify_adjunction(c: &Adjunction) -> Result<Option<TriangleFailure>> {
    let (x, y) = (c.left.source(), c.left.target());
    if c.right.source() != y || c.right.target() != x {
        return Err(Error::ShapeMismatch("left and right functors are not opposed".into()));
    }
    let rl = c.right.after(&c.left)?;
    let lr = c.left.after(&c.right)?;
    if *c.unit.source() != Functor::identity(x.clone()) || *c.unit.target() != rl {
        return Err(Error::ShapeMismatch("unit is not 1 => right . left".into()));
    }
    if *c.counit.source() != lr || *c.counit.target() != Functor::identity(y.clone()) {
        return Err(Error::ShapeMismatch("counit is not left . right => 1".into()));
    }
    if let Some(morphism) = c.unit.naturality_failure() {
        return Ok(Some(TriangleFailure::UnitNotNatural { morphism }));
    }
    if let Some(morphism) = c.counit.naturality_failure() {
        return Ok(Some(TriangleFailure::CounitNotNatural { morphism }));
    }
    Ok(triangle_failure(c))
}

fn triangle_failure(c: &Adjunction) -> Option<TriangleFailure> {
    let (x, y) = (c.left.source(), c.left.target());
    for o in x.objects() {
        let lo = c.left.on_object(o);
        if y.compose(c.counit.component(lo), c.left.on_morphism(c.unit.component(o))) != y.identity(lo) {
            return Some(TriangleFailure::LeftTriangle { object: o });
        }
    }
    for o in y.objects() {
        let ro = c.right.on_object(o);
        if x.compose(c.right.on_morphism(c.counit.component(o)), c.unit.component(ro)) != x.identity(ro) {
            return Some(TriangleFailure::RightTriangle { object: o });
        }
    }
    None
}

/// Right adjoint of `f: A -> B` by terminal objects of the comma categories
/// `(f | b)`. On failure returns the first `b` with no universal arrow.
pub fn find_right_adjoint(f: &Functor) -> std::result::Result<Adjunction, Obj> {
    let (a, b) = (f.source(), f.target());
    let point = Arc::new(crate::fincat::examples::terminal());
    let mut r_obj = Vec::with_capacity(b.object_count());
    let mut eps = Vec::with_capacity(b.object_count());
    for o in b.objects() {
        let at = Functor::constant(point.clone(), b.clone(), o);
        let cm = comma(f, &at).expect("common target");
        let t = has_terminal(&cm.category).ok_or(o)?;
        let (ra, _, h) = cm.objects[t];
        r_obj.push(ra);
        eps.push(h);
    }
    // u : r b -> r b' with eps_b' . f(u) = v . eps_b; unique by terminality
    let universal = |src: Obj, arrow: Mor, dst_b: Obj| -> Mor {
        let mut found = a
            .hom(src, r_obj[dst_b])
            .iter()
            .copied()
            .filter(|&u| b.compose(eps[dst_b], f.on_morphism(u)) == arrow);
        let u = found.next().expect("universal arrow factors");
        debug_assert!(found.next().is_none());
        u
    };
    let r_mor: Vec<Mor> = b
        .morphisms()
        .map(|v| {
            let (s, t) = (b.source(v), b.target(v));
            universal(r_obj[s], b.compose(v, eps[s]), t)
        })
        .collect();
    let right = Functor::new(b.clone(), a.clone(), r_obj.clone(), r_mor).expect("assembled right adjoint is a functor");
    let unit_comp: Vec<Mor> = a
        .objects()
        .map(|x| {
            let fx = f.on_object(x);
            universal(x, b.identity(fx), fx)
        })
        .collect();
    let rl = right.after(f).expect("composable");
    let lr = f.after(&right).expect("composable");
    let unit = NaturalTransformation::new(Functor::identity(a.clone()), rl, unit_comp).expect("unit is natural");
    let counit = NaturalTransformation::new(lr, Functor::identity(b.clone()), eps).expect("counit is natural");
    let adj = Adjunction {
        left: f.clone(),
        right,
        unit,
        counit,
    };
    debug_assert_eq!(verify_adjunction(&adj).ok(), Some(None));
    Ok(adj)
}

/// Left adjoint of `r: B -> A`, found as the right adjoint of `r^op`.
/// On failure returns the first object of `A` with no universal arrow.
pub fn find_left_adjoint(r: &Functor) -> std::result::Result<Adjunction, Obj> {
    let op = find_right_adjoint(&r.opposite())?;
    let (b, a) = (r.source(), r.target());
    let left = Functor::new_trusted(
        a.clone(),
        b.clone(),
        op.right.object_map().to_vec(),
        op.right.morphism_map().to_vec(),
    );
    let right = r.clone();
    let unit = NaturalTransformation::new(
        Functor::identity(a.clone()),
        right.after(&left).expect("composable"),
        op.counit.components().to_vec(),
    )
    .expect("opposite counit is natural");
    let counit = NaturalTransformation::new(
        left.after(&right).expect("composable"),
        Functor::identity(b.clone()),
        op.unit.components().to_vec(),
    )
    .expect("opposite unit is natural");
    let adj = Adjunction {
        left,
        right,
        unit,
        counit,
    };
    debug_assert_eq!(verify_adjunction(&adj).ok(), Some(None));
    Ok(adj)
}

/// Per-object verdicts of `classify(B(f-, b), class)`.
#[derive(Debug, Clone, Serialize)]
pub struct AdmissibilityReport {
    #[serde(skip)]
    pub functor: Functor,
    pub class: WeightClass,
    pub holds: bool,
    pub objects: Vec<ObjectVerdict>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ObjectVerdict {
    pub object: Obj,
    pub name: String,
    pub classification: Classification,
}

impl AdmissibilityReport {
    /// First object of the target whose hom-presheaf is outside the class.
    pub fn failing_object(&self) -> Option<Obj> {
        self.objects.iter().find(|v| !v.classification.holds).map(|v| v.object)
    }
}

pub fn is_phi_admissible(f: &Functor, class: WeightClass) -> AdmissibilityReport {
    let b = f.target();
    let objects: Vec<ObjectVerdict> = b
        .objects()
        .map(|o| {
            let w = hom_presheaf(f, o).expect("object of the target");
            ObjectVerdict {
                object: o,
                name: b.object_name(o).to_string(),
                classification: classify(&w, class),
            }
        })
        .collect();
    AdmissibilityReport {
        functor: f.clone(),
        class,
        holds: objects.iter().all(|v| v.classification.holds),
        objects,
    }
}

/// For `first = (l -| r)` between `y` and `x` (`l: y -> x`) with invertible
/// counit, and `second = (l' -| r')` with `l': y -> z`, builds
/// `l' r -| l r'` with unit `l(unit'_{r p}) . counit_p^-1` and counit
/// `counit'_q . (l'(unit_{r' q}))^-1`.
pub fn compose_adjunctions_mixed(first: &Adjunction, second: &Adjunction) -> Result<Adjunction> {
    let (l, r) = (&first.left, &first.right);
    let (l2, r2) = (&second.left, &second.right);
    if l.source() != l2.source() {
        return Err(Error::ShapeMismatch("left adjoints do not share a source".into()));
    }
    let (x, z) = (l.target().clone(), l2.target().clone());
    let eps_inv = first.counit.inverse().map_err(|o| Error::HypothesisFailure {
        cell: TwoCell::Counit,
        object: x.object_name(o).to_string(),
    })?;
    // l' eta r' : l' r' => l' r l r'
    let whiskered = first.unit.whisker_right(r2)?.whisker_left(l2)?;
    let whiskered_inv = whiskered.inverse().map_err(|o| Error::HypothesisFailure {
        cell: TwoCell::WhiskeredUnit,
        object: z.object_name(o).to_string(),
    })?;
    let big_l = l2.after(r)?;
    let big_r = l.after(r2)?;
    let unit_comp: Vec<Mor> = x
        .objects()
        .map(|p| {
            let rp = r.on_object(p);
            x.compose(l.on_morphism(second.unit.component(rp)), eps_inv.component(p))
        })
        .collect();
    let counit_comp: Vec<Mor> = z
        .objects()
        .map(|q| z.compose(second.counit.component(q), whiskered_inv.component(q)))
        .collect();
    let unit = NaturalTransformation::new(Functor::identity(x.clone()), big_r.after(&big_l)?, unit_comp)?;
    let counit = NaturalTransformation::new(big_l.after(&big_r)?, Functor::identity(z.clone()), counit_comp)?;
    Ok(Adjunction {
        left: big_l,
        right: big_r,
        unit,
        counit,
    })
}

/// `admissible(f) and admissible(g) => admissible(g . f)`.
pub fn admissible_closed_under_composition_check(f: &Functor, g: &Functor, class: WeightClass) -> Result<bool> {
    let gf = g.after(f)?;
    let premise = is_phi_admissible(f, class).holds && is_phi_admissible(g, class).holds;
    Ok(!premise || is_phi_admissible(&gf, class).holds)
}
