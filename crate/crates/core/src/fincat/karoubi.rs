use std::collections::HashMap;
use std::sync::Arc;

use crate::fincat::category::{identity_name, Category, Mor, Morphism, Obj};
use crate::fincat::functor::Functor;

/// Idempotent completion with its full embedding `a |-> (a, id_a)`.
#[derive(Debug, Clone)]
pub struct Karoubi {
    pub category: Arc<Category>,
    pub embedding: Functor,
    /// `(a, e)` for each object of the completion.
    pub objects: Vec<(Obj, Mor)>,
    /// Underlying morphism of the base category for each morphism.
    pub underlying: Vec<Mor>,
}

/// Objects are pairs `(a, e)` with `e` idempotent on `a` (identities first);
/// morphisms `(a, e) -> (a', e')` are `h` with `e' . h . e = h`.
pub fn karoubi_completion(base: &Arc<Category>) -> Karoubi {
    let a = base.as_ref();
    let mut objects: Vec<(Obj, Mor)> = a.objects().map(|o| (o, a.identity(o))).collect();
    for o in a.objects() {
        for &e in a.hom(o, o) {
            if e != a.identity(o) && a.is_idempotent(e) {
                objects.push((o, e));
            }
        }
    }
    let names: Vec<String> = objects
        .iter()
        .map(|&(o, e)| {
            if e == a.identity(o) {
                a.object_name(o).to_string()
            } else {
                format!("({},{})", a.object_name(o), a.morphism_name(e))
            }
        })
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
    let mut underlying: Vec<Mor> = objects.iter().map(|&(_, e)| e).collect();
    for (i, &(x, e)) in objects.iter().enumerate() {
        for (j, &(y, e2)) in objects.iter().enumerate() {
            for &h in a.hom(x, y) {
                if i == j && h == e {
                    continue;
                }
                if a.compose(a.compose(e2, h), e) == h {
                    let name = if e == a.identity(x) && e2 == a.identity(y) {
                        a.morphism_name(h).to_string()
                    } else {
                        format!("{}:{}->{}", a.morphism_name(h), names[i], names[j])
                    };
                    morphisms.push(Morphism {
                        name,
                        source: i,
                        target: j,
                    });
                    underlying.push(h);
                }
            }
        }
    }
    let index: HashMap<(Obj, Obj, Mor), Mor> = morphisms
        .iter()
        .zip(&underlying)
        .enumerate()
        .map(|(k, (m, &h))| ((m.source, m.target, h), k))
        .collect();
    let m = morphisms.len();
    let mut compose = vec![None; m * m];
    for q in 0..m {
        for p in 0..m {
            if morphisms[p].target == morphisms[q].source {
                let h = a.compose(underlying[q], underlying[p]);
                compose[q * m + p] = index.get(&(morphisms[p].source, morphisms[q].target, h)).copied();
            }
        }
    }
    let identity = (0..objects.len()).collect();
    let category = Arc::new(Category::from_parts_trusted(names, morphisms, identity, compose));
    let morphism_map = a.morphisms().map(|h| index[&(a.source(h), a.target(h), h)]).collect();
    let embedding = Functor::new_trusted(base.clone(), category.clone(), a.objects().collect(), morphism_map);
    Karoubi {
        category,
        embedding,
        objects,
        underlying,
    }
}

/// A splitting `(retraction r: x -> y, section s: y -> x)` with `r s = id`, `s r = e`.
pub fn split_idempotent(c: &Category, e: Mor) -> Option<(Mor, Mor)> {
    let x = c.source(e);
    for y in c.objects() {
        for &r in c.hom(x, y) {
            for &s in c.hom(y, x) {
                if c.compose(r, s) == c.identity(y) && c.compose(s, r) == e {
                    return Some((r, s));
                }
            }
        }
    }
    None
}

/// First idempotent that does not split, if any.
pub fn unsplit_idempotent(c: &Category) -> Option<Mor> {
    c.morphisms()
        .filter(|&e| c.is_idempotent(e))
        .find(|&e| split_idempotent(c, e).is_none())
}
