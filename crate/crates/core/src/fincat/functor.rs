use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::category::{Category, Mor, Obj};

/// A functor between finite categories, stored as object and morphism maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Functor {
    source: Arc<Category>,
    target: Arc<Category>,
    object_map: Vec<Obj>,
    morphism_map: Vec<Mor>,
}

/// A diagram is a functor out of its shape.
pub type Diagram = Functor;

impl Functor {
    /// Checks that the maps preserve sources, targets, identities and composition.
    pub fn new(
        source: Arc<Category>,
        target: Arc<Category>,
        object_map: Vec<Obj>,
        morphism_map: Vec<Mor>,
    ) -> Result<Functor> {
        let f = Functor {
            source,
            target,
            object_map,
            morphism_map,
        };
        f.check()?;
        Ok(f)
    }

    pub(crate) fn new_trusted(
        source: Arc<Category>,
        target: Arc<Category>,
        object_map: Vec<Obj>,
        morphism_map: Vec<Mor>,
    ) -> Functor {
        let f = Functor {
            source,
            target,
            object_map,
            morphism_map,
        };
        debug_assert!(f.check().is_ok(), "{:?}", f.check());
        f
    }

    fn check(&self) -> Result<()> {
        let (a, b) = (&*self.source, &*self.target);
        let bad = |msg: String| Err(Error::InvalidFunctor(msg));
        if self.object_map.len() != a.object_count() || self.morphism_map.len() != a.morphism_count() {
            return bad("maps are not total".into());
        }
        if let Some(&o) = self.object_map.iter().find(|&&o| o >= b.object_count()) {
            return bad(format!("object index {o} out of range"));
        }
        if let Some(&m) = self.morphism_map.iter().find(|&&m| m >= b.morphism_count()) {
            return bad(format!("morphism index {m} out of range"));
        }
        for f in a.morphisms() {
            let img = self.morphism_map[f];
            if b.source(img) != self.object_map[a.source(f)] || b.target(img) != self.object_map[a.target(f)] {
                return bad(format!(
                    "{} is sent to a morphism of the wrong type",
                    a.morphism_name(f)
                ));
            }
        }
        for o in a.objects() {
            if self.morphism_map[a.identity(o)] != b.identity(self.object_map[o]) {
                return bad(format!("identity of {} is not preserved", a.object_name(o)));
            }
        }
        for g in a.morphisms() {
            for f in a.morphisms() {
                if let Some(h) = a.try_compose(g, f) {
                    if b.compose(self.morphism_map[g], self.morphism_map[f]) != self.morphism_map[h] {
                        return bad(format!(
                            "composite {} . {} is not preserved",
                            a.morphism_name(g),
                            a.morphism_name(f)
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn identity(c: Arc<Category>) -> Functor {
        let objects = c.objects().collect();
        let morphisms = c.morphisms().collect();
        Functor {
            source: c.clone(),
            target: c,
            object_map: objects,
            morphism_map: morphisms,
        }
    }

    /// Constant functor at `object`.
    pub fn constant(source: Arc<Category>, target: Arc<Category>, object: Obj) -> Functor {
        let id = target.identity(object);
        Functor {
            object_map: vec![object; source.object_count()],
            morphism_map: vec![id; source.morphism_count()],
            source,
            target,
        }
    }

    pub fn source(&self) -> &Arc<Category> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Category> {
        &self.target
    }

    pub fn on_object(&self, o: Obj) -> Obj {
        self.object_map[o]
    }

    pub fn on_morphism(&self, f: Mor) -> Mor {
        self.morphism_map[f]
    }

    pub fn object_map(&self) -> &[Obj] {
        &self.object_map
    }

    pub fn morphism_map(&self) -> &[Mor] {
        &self.morphism_map
    }

    /// `self . first`.
    pub fn after(&self, first: &Functor) -> Result<Functor> {
        if first.target != self.source {
            return Err(Error::ShapeMismatch("functors are not composable".into()));
        }
        Ok(Functor {
            source: first.source.clone(),
            target: self.target.clone(),
            object_map: first.object_map.iter().map(|&o| self.object_map[o]).collect(),
            morphism_map: first.morphism_map.iter().map(|&m| self.morphism_map[m]).collect(),
        })
    }

    /// The induced functor between opposite categories.
    pub fn opposite(&self) -> Functor {
        Functor {
            source: Arc::new(self.source.opposite()),
            target: Arc::new(self.target.opposite()),
            object_map: self.object_map.clone(),
            morphism_map: self.morphism_map.clone(),
        }
    }

    /// Restriction to a full subcategory of the source, given by the kept objects
    /// (in order), landing in a full subcategory of the target.
    pub fn restrict(&self, keep_source: &[Obj], keep_target: &[Obj]) -> Result<Functor> {
        let a = Arc::new(self.source.full_subcategory(keep_source));
        let b = Arc::new(self.target.full_subcategory(keep_target));
        let tpos = |o: Obj| keep_target.iter().position(|&x| x == o);
        let mut object_map = Vec::new();
        for &o in keep_source {
            object_map.push(
                tpos(self.object_map[o])
                    .ok_or_else(|| Error::ShapeMismatch("restriction does not contain the image".into()))?,
            );
        }
        let mut morphism_map = Vec::new();
        for f in a.morphisms() {
            let orig = self.source.find_morphism(a.morphism_name(f)).unwrap();
            let img = self.target.morphism_name(self.morphism_map[orig]);
            morphism_map.push(b.find_morphism(img).unwrap());
        }
        Functor::new(a, b, object_map, morphism_map)
    }
}

/// Every functor `source -> target`, in lexicographic order of
/// (object map, morphism map). Stops after `limit` results when given.
pub fn enumerate_functors(source: &Arc<Category>, target: &Arc<Category>, limit: Option<usize>) -> Vec<Functor> {
    let mut out = Vec::new();
    for_each_functor(source, target, &mut |obj, mor| {
        out.push(Functor {
            source: source.clone(),
            target: target.clone(),
            object_map: obj.to_vec(),
            morphism_map: mor.to_vec(),
        });
        limit.is_none_or(|l| out.len() < l)
    });
    out
}

/// Calls `visit(object_map, morphism_map)` for every functor, in lexicographic
/// order, until it returns `false`.
pub fn for_each_functor(source: &Category, target: &Category, visit: &mut dyn FnMut(&[Obj], &[Mor]) -> bool) {
    let n = source.object_count();
    if n > 0 && target.object_count() == 0 {
        return;
    }
    let non_identity: Vec<Mor> = source.morphisms().filter(|&f| !source.is_identity(f)).collect();
    let mut obj = vec![0; n];
    let mut mor = vec![0; source.morphism_count()];
    let mut stop = false;
    objects_rec(source, target, &non_identity, 0, &mut obj, &mut mor, visit, &mut stop);
}

#[allow(clippy::too_many_arguments)]
fn objects_rec(
    a: &Category,
    b: &Category,
    non_identity: &[Mor],
    i: usize,
    obj: &mut Vec<Obj>,
    mor: &mut Vec<Mor>,
    visit: &mut dyn FnMut(&[Obj], &[Mor]) -> bool,
    stop: &mut bool,
) {
    if *stop {
        return;
    }
    if i == obj.len() {
        for o in a.objects() {
            mor[a.identity(o)] = b.identity(obj[o]);
        }
        let mut assigned = vec![false; a.morphism_count()];
        for o in a.objects() {
            assigned[a.identity(o)] = true;
        }
        morphisms_rec(a, b, non_identity, 0, obj, mor, &mut assigned, visit, stop);
        return;
    }
    // Prune: a morphism between assigned objects needs a nonempty hom-set.
    for t in b.objects() {
        obj[i] = t;
        let feasible = non_identity.iter().all(|&f| {
            let (s, tt) = (a.source(f), a.target(f));
            s > i || tt > i || !b.hom(obj[s], obj[tt]).is_empty()
        });
        if feasible {
            objects_rec(a, b, non_identity, i + 1, obj, mor, visit, stop);
            if *stop {
                return;
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn morphisms_rec(
    a: &Category,
    b: &Category,
    non_identity: &[Mor],
    k: usize,
    obj: &[Obj],
    mor: &mut Vec<Mor>,
    assigned: &mut Vec<bool>,
    visit: &mut dyn FnMut(&[Obj], &[Mor]) -> bool,
    stop: &mut bool,
) {
    if *stop {
        return;
    }
    if k == non_identity.len() {
        if !visit(obj, mor) {
            *stop = true;
        }
        return;
    }
    let f = non_identity[k];
    let candidates = b.hom(obj[a.source(f)], obj[a.target(f)]);
    for &c in candidates {
        mor[f] = c;
        assigned[f] = true;
        if consistent_at(a, b, f, mor, assigned) {
            morphisms_rec(a, b, non_identity, k + 1, obj, mor, assigned, visit, stop);
        }
        assigned[f] = false;
        if *stop {
            return;
        }
    }
}

// Checks composition constraints involving `f` whose three morphisms are assigned.
fn consistent_at(a: &Category, b: &Category, f: Mor, mor: &[Mor], assigned: &[bool]) -> bool {
    for g in a.morphisms() {
        if !assigned[g] {
            continue;
        }
        if let Some(h) = a.try_compose(g, f) {
            if assigned[h] && b.compose(mor[g], mor[f]) != mor[h] {
                return false;
            }
        }
        if let Some(h) = a.try_compose(f, g) {
            if assigned[h] && b.compose(mor[f], mor[g]) != mor[h] {
                return false;
            }
        }
        // f as the composite
        for e in a.morphisms() {
            if assigned[e] && a.try_compose(g, e) == Some(f) && b.compose(mor[g], mor[e]) != mor[f] {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::category::examples::*;

    #[test]
    fn functor_counts() {
        let w = Arc::new(walking_arrow());
        let c3 = Arc::new(chain3());
        // monotone maps chain2 -> chain3: 6
        assert_eq!(enumerate_functors(&w, &c3, None).len(), 6);
        let m = Arc::new(idempotent_monoid());
        // monoid endomorphisms of {1,e}: e |-> 1 or e |-> e
        assert_eq!(enumerate_functors(&m, &m, None).len(), 2);
        let e = Arc::new(empty());
        assert_eq!(enumerate_functors(&e, &c3, None).len(), 1);
        assert_eq!(enumerate_functors(&c3, &e, None).len(), 0);
        let p = Arc::new(parallel_pair());
        // u, v each pick one of 2 parallel arrows, or collapse to a single object
        assert_eq!(enumerate_functors(&p, &p, None).len(), 4 + 2);
    }

    #[test]
    fn every_enumerated_functor_is_valid() {
        let s = Arc::new(split_idempotent());
        for f in enumerate_functors(&s, &s, None) {
            f.check().unwrap();
        }
    }

    #[test]
    fn invalid_functor_rejected() {
        let w = Arc::new(walking_arrow());
        let r = Functor::new(w.clone(), w.clone(), vec![1, 0], vec![1, 0, 2]);
        assert!(r.is_err());
    }
}
