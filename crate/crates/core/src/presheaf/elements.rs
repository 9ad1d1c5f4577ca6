use std::collections::HashMap;
use std::sync::Arc;

use crate::fincat::category::{identity_name, Category, Morphism};
use crate::fincat::{Functor, Mor, Obj};
use crate::presheaf::Presheaf;

/// The category of elements of a presheaf with its projection to the base.
#[derive(Debug, Clone)]
pub struct Elements {
    pub category: Arc<Category>,
    pub projection: Functor,
    /// `(a, x)` with `x` in `W(a)`, one per object, ordered by `a` then `x`.
    pub elements: Vec<(Obj, usize)>,
}

impl Elements {
    pub fn index_of(&self, a: Obj, x: usize) -> Option<Obj> {
        self.elements.iter().position(|&e| e == (a, x))
    }
}

/// Objects `(a, x)`; a morphism `(a, x) -> (a', x')` is `h: a -> a'` with
/// `W(h)(x') = x`. Representables thus have a terminal element.
pub fn elements(w: &Presheaf) -> Elements {
    let a = &**w.base();
    let elems: Vec<(Obj, usize)> = a.objects().flat_map(|o| (0..w.size(o)).map(move |x| (o, x))).collect();
    let index: HashMap<(Obj, usize), Obj> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let names: Vec<String> = elems
        .iter()
        .map(|&(o, x)| format!("({},{})", a.object_name(o), w.label(o, x)))
        .collect();
    let mut morphisms: Vec<Morphism> = names
        .iter()
        .enumerate()
        .map(|(i, n)| Morphism {
            name: identity_name(n),
            source: i,
            target: i,
        })
        .collect();
    let mut under: Vec<Mor> = elems.iter().map(|&(o, _)| a.identity(o)).collect();
    for h in a.morphisms().filter(|&h| !a.is_identity(h)) {
        let (s, t) = (a.source(h), a.target(h));
        for x2 in 0..w.size(t) {
            let x = w.act(h, x2);
            let (i, j) = (index[&(s, x)], index[&(t, x2)]);
            morphisms.push(Morphism {
                name: format!("{}:{}->{}", a.morphism_name(h), names[i], names[j]),
                source: i,
                target: j,
            });
            under.push(h);
        }
    }
    let lookup: HashMap<(Obj, Obj, Mor), Mor> = morphisms
        .iter()
        .zip(&under)
        .enumerate()
        .map(|(k, (m, &h))| ((m.source, m.target, h), k))
        .collect();
    let m = morphisms.len();
    let mut compose = vec![None; m * m];
    for q in 0..m {
        for p in 0..m {
            if morphisms[p].target == morphisms[q].source {
                let h = a.compose(under[q], under[p]);
                compose[q * m + p] = Some(lookup[&(morphisms[p].source, morphisms[q].target, h)]);
            }
        }
    }
    let identity = (0..elems.len()).collect();
    let category = Arc::new(Category::from_parts_trusted(names, morphisms, identity, compose));
    let projection = Functor::new_trusted(
        category.clone(),
        w.base().clone(),
        elems.iter().map(|e| e.0).collect(),
        under,
    );
    Elements {
        category,
        projection,
        elements: elems,
    }
}
