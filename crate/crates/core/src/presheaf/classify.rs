use serde::Serialize;

use crate::fincat::shape::{connected_components, has_terminal, is_filtered, FilteredCertificate, FilteredFailure};
use crate::fincat::{Category, Mor, Obj};
use crate::presheaf::{elements, Presheaf, WeightClass};

/// Evidence for a positive classification. Elements of the presheaf are
/// written `(a, x)` with `x` an index into `W(a)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassificationWitness {
    /// A terminal element: the presheaf is representable at `object`.
    Terminal { object: Obj, element: usize },
    /// One terminal element per connected component of the elements.
    TerminalPerComponent { terminals: Vec<(Obj, usize)> },
    /// Morphisms of the category of elements forming a spanning tree.
    Connected { spanning: Vec<Mor> },
    /// Cocones and equalisers in the category of elements.
    Filtered { certificate: FilteredCertificate },
    /// `W` is isomorphic to the splitting `{h : e . h = h}` of the
    /// idempotent `e` on `object`, via `h |-> W(h)(element)`.
    Splitting {
        object: Obj,
        idempotent: Mor,
        element: usize,
    },
    /// The class contains every finite presheaf.
    Degenerate,
}

/// Why a presheaf falls outside a class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Counterexample {
    NoTerminal,
    /// The component containing this element has no terminal element.
    ComponentWithoutTerminal {
        element: (Obj, usize),
    },
    Disconnected {
        components: usize,
    },
    NotFiltered {
        failure: FilteredFailure,
    },
    NotRetract,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub class: WeightClass,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ClassificationWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}

pub const FINITE_SCALE_NOTE: &str = "constant true: every finite presheaf is a finite colimit of representables";

impl Classification {
    fn yes(class: WeightClass, witness: ClassificationWitness) -> Self {
        Classification {
            class,
            holds: true,
            witness: Some(witness),
            counterexample: None,
            note: None,
        }
    }

    fn no(class: WeightClass, counterexample: Counterexample) -> Self {
        Classification {
            class,
            holds: false,
            witness: None,
            counterexample: Some(counterexample),
            note: None,
        }
    }
}

/// Decides whether `w` lies in the closure of the representables under
/// colimits weighted by `class`.
pub fn classify(w: &Presheaf, class: WeightClass) -> Classification {
    match class {
        WeightClass::Small | WeightClass::Finite => Classification {
            note: Some(FINITE_SCALE_NOTE),
            ..Classification::yes(class, ClassificationWitness::Degenerate)
        },
        WeightClass::Empty => {
            let el = elements(w);
            match has_terminal(&el.category) {
                Some(t) => {
                    let (object, element) = el.elements[t];
                    Classification::yes(class, ClassificationWitness::Terminal { object, element })
                }
                None => Classification::no(class, Counterexample::NoTerminal),
            }
        }
        WeightClass::Discrete => {
            let el = elements(w);
            let mut terminals = Vec::new();
            for comp in connected_components(&el.category) {
                match component_terminal(&el.category, &comp) {
                    Some(t) => terminals.push(el.elements[t]),
                    None => {
                        return Classification::no(
                            class,
                            Counterexample::ComponentWithoutTerminal {
                                element: el.elements[comp[0]],
                            },
                        )
                    }
                }
            }
            Classification::yes(class, ClassificationWitness::TerminalPerComponent { terminals })
        }
        WeightClass::Connected => {
            let el = elements(w);
            let comps = connected_components(&el.category).len();
            if comps == 1 {
                let spanning = spanning_tree(&el.category);
                Classification::yes(class, ClassificationWitness::Connected { spanning })
            } else {
                Classification::no(class, Counterexample::Disconnected { components: comps })
            }
        }
        WeightClass::Filtered => {
            let el = elements(w);
            match is_filtered(&el.category) {
                Ok(certificate) => Classification::yes(class, ClassificationWitness::Filtered { certificate }),
                Err(failure) => Classification::no(class, Counterexample::NotFiltered { failure }),
            }
        }
        WeightClass::Absolute => match find_splitting(w) {
            Some((object, idempotent, element)) => Classification::yes(
                class,
                ClassificationWitness::Splitting {
                    object,
                    idempotent,
                    element,
                },
            ),
            None => Classification::no(class, Counterexample::NotRetract),
        },
    }
}

fn component_terminal(c: &Category, comp: &[Obj]) -> Option<Obj> {
    comp.iter()
        .copied()
        .find(|&t| comp.iter().all(|&o| c.hom(o, t).len() == 1))
}

fn spanning_tree(c: &Category) -> Vec<Mor> {
    let mut parent: Vec<usize> = c.objects().collect();
    fn root(p: &[usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    let mut tree = Vec::new();
    for f in c.morphisms() {
        let (a, b) = (root(&parent, c.source(f)), root(&parent, c.target(f)));
        if a != b {
            parent[a.max(b)] = a.min(b);
            tree.push(f);
        }
    }
    tree
}

// Objects first, then idempotents in morphism order, then elements.
fn find_splitting(w: &Presheaf) -> Option<(Obj, Mor, usize)> {
    let a = &**w.base();
    for o in a.objects() {
        for &e in a.hom(o, o) {
            if !a.is_idempotent(e) {
                continue;
            }
            for x in 0..w.size(o) {
                if w.act(e, x) == x && splits_via(w, o, e, x) {
                    return Some((o, e, x));
                }
            }
        }
    }
    None
}

// h |-> W(h)(x) is a bijection {h : c -> o, e . h = h} -> W(c) for every c.
fn splits_via(w: &Presheaf, o: Obj, e: Mor, x: usize) -> bool {
    let a = &**w.base();
    a.objects().all(|c| {
        let mut hit = vec![false; w.size(c)];
        let mut count = 0;
        for &h in a.hom(c, o) {
            if a.compose(e, h) != h {
                continue;
            }
            let y = w.act(h, x);
            if hit[y] {
                return false;
            }
            hit[y] = true;
            count += 1;
        }
        count == w.size(c)
    })
}

impl ClassificationWitness {
    /// Re-checks the witness directly against `w`.
    pub fn verify(&self, w: &Presheaf) -> bool {
        let a = &**w.base();
        match self {
            ClassificationWitness::Degenerate => true,
            ClassificationWitness::Terminal { object, element } => {
                let el = elements(w);
                el.index_of(*object, *element)
                    .is_some_and(|t| el.category.objects().all(|o| el.category.hom(o, t).len() == 1))
            }
            ClassificationWitness::TerminalPerComponent { terminals } => {
                let el = elements(w);
                let comps = connected_components(&el.category);
                comps.len() == terminals.len()
                    && comps.iter().zip(terminals).all(|(comp, &(o, x))| {
                        el.index_of(o, x).is_some_and(|t| {
                            comp.contains(&t) && comp.iter().all(|&p| el.category.hom(p, t).len() == 1)
                        })
                    })
            }
            ClassificationWitness::Connected { spanning } => {
                let el = elements(w);
                let c = &el.category;
                let n = c.object_count();
                if n == 0 || spanning.len() + 1 != n || spanning.iter().any(|&f| f >= c.morphism_count()) {
                    return false;
                }
                let mut parent: Vec<usize> = (0..n).collect();
                fn root(p: &[usize], mut x: usize) -> usize {
                    while p[x] != x {
                        x = p[x];
                    }
                    x
                }
                for &f in spanning {
                    let (r, s) = (root(&parent, c.source(f)), root(&parent, c.target(f)));
                    if r == s {
                        return false;
                    }
                    parent[r.max(s)] = r.min(s);
                }
                true
            }
            ClassificationWitness::Filtered { certificate } => certificate.verify(&elements(w).category),
            ClassificationWitness::Splitting {
                object,
                idempotent,
                element,
            } => {
                *object < a.object_count()
                    && *idempotent < a.morphism_count()
                    && a.source(*idempotent) == *object
                    && a.is_idempotent(*idempotent)
                    && *element < w.size(*object)
                    && w.act(*idempotent, *element) == *element
                    && splits_via(w, *object, *idempotent, *element)
            }
        }
    }
}

/// A least (under greedy removal in element order) family of elements such
/// that every element of `w` is a restriction of one of them.
pub fn solution_set_witness(w: &Presheaf) -> Vec<(Obj, usize)> {
    let a = &**w.base();
    let mut family: Vec<(Obj, usize)> = a.objects().flat_map(|o| (0..w.size(o)).map(move |x| (o, x))).collect();
    let covers = |fam: &[(Obj, usize)]| {
        a.objects()
            .all(|c| (0..w.size(c)).all(|y| fam.iter().any(|&(o, x)| a.hom(c, o).iter().any(|&h| w.act(h, x) == y))))
    };
    let mut i = 0;
    while i < family.len() {
        let removed = family.remove(i);
        if !covers(&family) {
            family.insert(i, removed);
            i += 1;
        }
    }
    family
}
