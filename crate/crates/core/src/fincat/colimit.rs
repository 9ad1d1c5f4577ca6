use serde::Serialize;

use crate::fincat::category::{Category, Mor, Obj};
use crate::fincat::functor::Diagram;

/// A cocone over a diagram: one leg per shape object into the apex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Cocone {
    pub apex: Obj,
    pub legs: Vec<Mor>,
}

/// A universal cocone together with the unique mediating morphism to every
/// other cocone, in enumeration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Colimit {
    pub cocone: Cocone,
    pub mediators: Vec<(Cocone, Mor)>,
}

/// All cocones with the given apex, in lexicographic order of legs.
pub fn cocones_at(d: &Diagram, apex: Obj) -> Vec<Vec<Mor>> {
    let shape = d.source();
    let c = d.target();
    let n = shape.object_count();
    let non_identity: Vec<Mor> = shape.morphisms().filter(|&u| !shape.is_identity(u)).collect();
    let mut out = Vec::new();
    let mut legs = vec![0; n];
    fn rec(
        d: &Diagram,
        c: &Category,
        apex: Obj,
        non_identity: &[Mor],
        i: usize,
        legs: &mut Vec<Mor>,
        out: &mut Vec<Vec<Mor>>,
    ) {
        let shape = d.source();
        if i == legs.len() {
            out.push(legs.clone());
            return;
        }
        for &leg in c.hom(d.on_object(i), apex) {
            legs[i] = leg;
            // every shape morphism between objects <= i must commute
            let ok = non_identity.iter().all(|&u| {
                let (s, t) = (shape.source(u), shape.target(u));
                s > i || t > i || (s != i && t != i) || c.compose(legs[t], d.on_morphism(u)) == legs[s]
            });
            if ok {
                rec(d, c, apex, non_identity, i + 1, legs, out);
            }
        }
    }
    rec(d, c, apex, &non_identity, 0, &mut legs, &mut out);
    out
}

/// Every cocone over `d`, ordered by apex then legs.
pub fn all_cocones(d: &Diagram) -> Vec<Cocone> {
    d.target()
        .objects()
        .flat_map(|apex| cocones_at(d, apex).into_iter().map(move |legs| Cocone { apex, legs }))
        .collect()
}

// Morphisms u: from.apex -> to.apex with u . from.legs = to.legs.
fn mediators<'a>(c: &'a Category, from: &'a Cocone, to: &'a Cocone) -> impl Iterator<Item = Mor> + 'a {
    c.hom(from.apex, to.apex)
        .iter()
        .copied()
        .filter(move |&u| from.legs.iter().zip(&to.legs).all(|(&l, &l2)| c.compose(u, l) == l2))
}

fn is_universal_among(c: &Category, candidate: &Cocone, cocones: &[Cocone]) -> bool {
    cocones.iter().all(|other| {
        let mut it = mediators(c, candidate, other);
        it.next().is_some() && it.next().is_none()
    })
}

/// Least universal cocone, without the mediator list.
pub fn universal_cocone(d: &Diagram) -> Option<Cocone> {
    let cocones = all_cocones(d);
    let c = d.target();
    cocones
        .iter()
        .find(|cand| is_universal_among(c, cand, &cocones))
        .cloned()
}

/// Least universal cocone over `d`, or `None` when the colimit does not exist.
pub fn colimit(d: &Diagram) -> Option<Colimit> {
    let cocones = all_cocones(d);
    let c = d.target();
    let cocone = cocones
        .iter()
        .find(|cand| is_universal_among(c, cand, &cocones))?
        .clone();
    let mediators = cocones
        .iter()
        .map(|o| (o.clone(), mediators(c, &cocone, o).next().unwrap()))
        .collect();
    Some(Colimit { cocone, mediators })
}

/// True when `cocone` is a cocone over `d` and every cocone factors uniquely through it.
pub fn is_colimit_cocone(d: &Diagram, cocone: &Cocone) -> bool {
    let c = d.target();
    let shape = d.source();
    let is_cocone = shape
        .morphisms()
        .all(|u| c.compose(cocone.legs[shape.target(u)], d.on_morphism(u)) == cocone.legs[shape.source(u)]);
    is_cocone && is_universal_among(c, cocone, &all_cocones(d))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fincat::category::examples::*;
    use crate::fincat::functor::Functor;

    #[test]
    fn empty_diagram_colimit_is_initial() {
        let c = Arc::new(chain2());
        let d = Functor::new(Arc::new(empty()), c.clone(), vec![], vec![]).unwrap();
        let col = colimit(&d).unwrap();
        assert_eq!(c.object_name(col.cocone.apex), "bot");
        let e = Arc::new(empty());
        let d = Functor::new(e.clone(), e, vec![], vec![]).unwrap();
        assert!(colimit(&d).is_none());
    }

    #[test]
    fn two_copies_of_a_in_walking_arrow() {
        let w = Arc::new(walking_arrow());
        let shape = Arc::new(discrete(&["j1", "j2"]));
        let d = Functor::new(shape, w.clone(), vec![0, 0], vec![0, 0]).unwrap();
        let col = colimit(&d).unwrap();
        assert_eq!(col.cocone.apex, 0);
        assert_eq!(col.cocone.legs, vec![w.identity(0), w.identity(0)]);
        assert_eq!(col.mediators.len(), 2);
    }

    #[test]
    fn pushout_in_diamond() {
        let dm = Arc::new(diamond());
        let sp = Arc::new(span());
        let bx = dm.find_morphism("bot<x").unwrap();
        let by = dm.find_morphism("bot<y").unwrap();
        // span objects z, x, y; morphisms id_z, id_x, id_y, p, q
        let d = Functor::new(sp, dm.clone(), vec![0, 1, 2], vec![0, 1, 2, bx, by]).unwrap();
        let col = colimit(&d).unwrap();
        assert_eq!(dm.object_name(col.cocone.apex), "top");
        assert!(is_colimit_cocone(&d, &col.cocone));
    }

    #[test]
    fn coequalizer_of_idempotent_pair_does_not_exist() {
        let m = Arc::new(idempotent_monoid());
        let pp = Arc::new(parallel_pair());
        let e = m.find_morphism("e").unwrap();
        let d = Functor::new(pp, m, vec![0, 0], vec![0, 0, 0, e]).unwrap();
        assert!(colimit(&d).is_none());
    }
}
