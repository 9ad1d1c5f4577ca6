use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::category::{identity_name, Category, Mor, Morphism, Obj};
use crate::fincat::functor::Functor;

/// The comma category `(F | G)` with its two projections.
#[derive(Debug, Clone)]
pub struct Comma {
    pub category: Arc<Category>,
    pub left_projection: Functor,
    pub right_projection: Functor,
    /// `(a, b, h: F a -> G b)` for each object, in order.
    pub objects: Vec<(Obj, Obj, Mor)>,
    /// `(u: a -> a', v: b -> b')` for each morphism, in order.
    pub morphisms: Vec<(Mor, Mor)>,
}

/// Objects are triples `(a, b, h: F a -> G b)` in lexicographic order;
/// morphisms `(u, v)` are commuting squares `G v . h = h' . F u`.
pub fn comma(f: &Functor, g: &Functor) -> Result<Comma> {
    if f.target() != g.target() {
        return Err(Error::ShapeMismatch("comma of functors with different targets".into()));
    }
    let (a, b, c) = (f.source(), g.source(), f.target());
    let mut objects = Vec::new();
    for x in a.objects() {
        for y in b.objects() {
            for &h in c.hom(f.on_object(x), g.on_object(y)) {
                objects.push((x, y, h));
            }
        }
    }
    let names: Vec<String> = objects
        .iter()
        .map(|&(x, y, h)| format!("({},{},{})", a.object_name(x), b.object_name(y), c.morphism_name(h)))
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
    let mut pairs: Vec<(Mor, Mor)> = objects
        .iter()
        .map(|&(x, y, _)| (a.identity(x), b.identity(y)))
        .collect();
    for (i, &(x, y, h)) in objects.iter().enumerate() {
        for (j, &(x2, y2, h2)) in objects.iter().enumerate() {
            for &u in a.hom(x, x2) {
                for &v in b.hom(y, y2) {
                    if i == j && u == a.identity(x) && v == b.identity(y) {
                        continue;
                    }
                    if c.compose(g.on_morphism(v), h) == c.compose(h2, f.on_morphism(u)) {
                        morphisms.push(Morphism {
                            name: format!(
                                "({},{}):{}->{}",
                                a.morphism_name(u),
                                b.morphism_name(v),
                                names[i],
                                names[j]
                            ),
                            source: i,
                            target: j,
                        });
                        pairs.push((u, v));
                    }
                }
            }
        }
    }
    let index: HashMap<(Obj, Obj, Mor, Mor), Mor> = morphisms
        .iter()
        .zip(&pairs)
        .enumerate()
        .map(|(k, (m, &(u, v)))| ((m.source, m.target, u, v), k))
        .collect();
    let m = morphisms.len();
    let mut compose = vec![None; m * m];
    for q in 0..m {
        for p in 0..m {
            if morphisms[p].target != morphisms[q].source {
                continue;
            }
            let (u, v) = (a.compose(pairs[q].0, pairs[p].0), b.compose(pairs[q].1, pairs[p].1));
            compose[q * m + p] = index.get(&(morphisms[p].source, morphisms[q].target, u, v)).copied();
        }
    }
    let identity = (0..objects.len()).collect();
    let category = Arc::new(Category::from_parts_trusted(names, morphisms, identity, compose));
    let left_projection = Functor::new_trusted(
        category.clone(),
        a.clone(),
        objects.iter().map(|o| o.0).collect(),
        pairs.iter().map(|p| p.0).collect(),
    );
    let right_projection = Functor::new_trusted(
        category.clone(),
        b.clone(),
        objects.iter().map(|o| o.1).collect(),
        pairs.iter().map(|p| p.1).collect(),
    );
    Ok(Comma {
        category,
        left_projection,
        right_projection,
        objects,
        morphisms: pairs,
    })
}
