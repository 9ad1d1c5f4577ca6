use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, LawViolation, Result};

/// Index of an object in its category.
pub type Obj = usize;
/// Index of a morphism in its category.
pub type Mor = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub name: String,
    pub source: Obj,
    pub target: Obj,
}

/// A finite category given by an explicit composition table.
///
/// Objects and morphisms are addressed by index; the input order of both is
/// the order used for every lexicographic witness choice. Values of this type
/// always satisfy the category laws.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Category {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<Mor>,
    // compose[later * m + earlier]
    compose: Vec<Option<Mor>>,
    hom: Vec<Vec<Mor>>,
}

impl fmt::Debug for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Category({} objects, {} morphisms)",
            self.objects.len(),
            self.morphisms.len()
        )
    }
}

/// A category description prior to validation: names only.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawCategory {
    pub objects: Vec<String>,
    /// `(name, source, target)` for every non-identity morphism.
    pub morphisms: Vec<(String, String, String)>,
    /// `(later, earlier, result)`; composites with identities may be omitted.
    pub composites: Vec<(String, String, String)>,
}

pub fn identity_name(object: &str) -> String {
    format!("id_{object}")
}

impl Category {
    /// Builds a category from explicit tables and checks every law,
    /// reporting all violations at once.
    pub fn from_parts(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identity: Vec<Mor>,
        compose: Vec<Option<Mor>>,
    ) -> Result<Category> {
        let cat = Self::assemble(objects, morphisms, identity, compose);
        let violations = cat.law_violations();
        if violations.is_empty() {
            Ok(cat)
        } else {
            Err(Error::InvalidCategory(violations))
        }
    }

    /// Builds a category from tables already known to satisfy the laws.
    /// Laws are still checked in debug builds.
    pub(crate) fn from_parts_trusted(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identity: Vec<Mor>,
        compose: Vec<Option<Mor>>,
    ) -> Category {
        let cat = Self::assemble(objects, morphisms, identity, compose);
        debug_assert!(cat.law_violations().is_empty(), "{:?}", cat.law_violations());
        cat
    }

    fn assemble(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identity: Vec<Mor>,
        compose: Vec<Option<Mor>>,
    ) -> Category {
        let n = objects.len();
        let mut hom = vec![Vec::new(); n * n];
        for (i, m) in morphisms.iter().enumerate() {
            hom[m.source * n + m.target].push(i);
        }
        Category {
            objects,
            morphisms,
            identity,
            compose,
            hom,
        }
    }

    /// Validates a named description. Identities are created first, one per
    /// object in order, named `id_<object>`.
    pub fn validate(raw: &RawCategory) -> Result<Category> {
        let mut obj_index = HashMap::new();
        for (i, o) in raw.objects.iter().enumerate() {
            if obj_index.insert(o.as_str(), i).is_some() {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("duplicate object {o}"),
                });
            }
        }
        let mut morphisms: Vec<Morphism> = raw
            .objects
            .iter()
            .enumerate()
            .map(|(i, o)| Morphism {
                name: identity_name(o),
                source: i,
                target: i,
            })
            .collect();
        let lookup_obj = |name: &str| {
            obj_index
                .get(name)
                .copied()
                .ok_or_else(|| Error::ObjectNotFound(name.to_string()))
        };
        for (name, s, t) in &raw.morphisms {
            morphisms.push(Morphism {
                name: name.clone(),
                source: lookup_obj(s)?,
                target: lookup_obj(t)?,
            });
        }
        let mut mor_index = HashMap::new();
        for (i, m) in morphisms.iter().enumerate() {
            if mor_index.insert(m.name.clone(), i).is_some() {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("duplicate morphism {}", m.name),
                });
            }
        }
        let n = raw.objects.len();
        let m = morphisms.len();
        let identity: Vec<Mor> = (0..n).collect();
        let mut compose: Vec<Option<Mor>> = vec![None; m * m];
        let mut violations = Vec::new();
        // Identity composites are implicit.
        for f in 0..m {
            let (s, t) = (morphisms[f].source, morphisms[f].target);
            compose[t * m + f] = Some(f);
            compose[f * m + s] = Some(f);
        }
        let lookup_mor = |name: &str| {
            mor_index.get(name).copied().ok_or_else(|| Error::Parse {
                line: 0,
                message: format!("unknown morphism {name}"),
            })
        };
        for (g_name, f_name, h_name) in &raw.composites {
            let (g, f, h) = (lookup_mor(g_name)?, lookup_mor(f_name)?, lookup_mor(h_name)?);
            let (mf, mg, mh) = (&morphisms[f], &morphisms[g], &morphisms[h]);
            if mf.target != mg.source || mh.source != mf.source || mh.target != mg.target {
                violations.push(LawViolation::IllTypedComposite {
                    g: g_name.clone(),
                    f: f_name.clone(),
                    h: h_name.clone(),
                });
                continue;
            }
            let slot = &mut compose[g * m + f];
            match *slot {
                Some(existing) if existing != h => {
                    if g < n || f < n {
                        let other = if g < n { f_name } else { g_name };
                        violations.push(LawViolation::IdentityLaw { f: other.clone() });
                    } else {
                        violations.push(LawViolation::ConflictingComposite {
                            g: g_name.clone(),
                            f: f_name.clone(),
                        });
                    }
                }
                _ => *slot = Some(h),
            }
        }
        if !violations.is_empty() {
            return Err(Error::InvalidCategory(violations));
        }
        Category::from_parts(raw.objects.clone(), morphisms, identity, compose)
    }

    /// Every violated law, in a deterministic order.
    pub fn law_violations(&self) -> Vec<LawViolation> {
        let m = self.morphisms.len();
        let mut out = Vec::new();
        let name = |i: Mor| self.morphisms[i].name.clone();
        for (o, &id) in self.identity.iter().enumerate() {
            let mid = &self.morphisms[id];
            if mid.source != o || mid.target != o {
                out.push(LawViolation::IdentityLaw { f: name(id) });
            }
        }
        for f in 0..m {
            let (s, t) = (self.morphisms[f].source, self.morphisms[f].target);
            let left = self.compose[self.identity[t] * m + f];
            let right = self.compose[f * m + self.identity[s]];
            if left != Some(f) || right != Some(f) {
                out.push(LawViolation::IdentityLaw { f: name(f) });
            }
        }
        for g in 0..m {
            for f in 0..m {
                let composable = self.morphisms[f].target == self.morphisms[g].source;
                match self.compose[g * m + f] {
                    None if composable => out.push(LawViolation::UndefinedComposite { g: name(g), f: name(f) }),
                    Some(h)
                        if !composable
                            || self.morphisms[h].source != self.morphisms[f].source
                            || self.morphisms[h].target != self.morphisms[g].target =>
                    {
                        out.push(LawViolation::IllTypedComposite {
                            g: name(g),
                            f: name(f),
                            h: name(h),
                        })
                    }
                    _ => {}
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for f in 0..m {
            for g in 0..m {
                let Some(gf) = self.compose[g * m + f] else { continue };
                for h in 0..m {
                    let Some(hg) = self.compose[h * m + g] else { continue };
                    let lhs = self.compose[hg * m + f];
                    let rhs = self.compose[h * m + gf];
                    if lhs != rhs {
                        out.push(LawViolation::Associativity {
                            h: name(h),
                            g: name(g),
                            f: name(f),
                        });
                    }
                }
            }
        }
        out
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> std::ops::Range<Obj> {
        0..self.objects.len()
    }

    pub fn morphisms(&self) -> std::ops::Range<Mor> {
        0..self.morphisms.len()
    }

    pub fn object_name(&self, o: Obj) -> &str {
        &self.objects[o]
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism(&self, f: Mor) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn morphism_name(&self, f: Mor) -> &str {
        &self.morphisms[f].name
    }

    pub fn source(&self, f: Mor) -> Obj {
        self.morphisms[f].source
    }

    pub fn target(&self, f: Mor) -> Obj {
        self.morphisms[f].target
    }

    pub fn identity(&self, o: Obj) -> Mor {
        self.identity[o]
    }

    pub fn is_identity(&self, f: Mor) -> bool {
        self.identity[self.source(f)] == f
    }

    pub fn find_object(&self, name: &str) -> Option<Obj> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn find_morphism(&self, name: &str) -> Option<Mor> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    /// Morphisms `a -> b`, in input order.
    pub fn hom(&self, a: Obj, b: Obj) -> &[Mor] {
        &self.hom[a * self.objects.len() + b]
    }

    /// `g . f`, defined when `target(f) = source(g)`.
    pub fn try_compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        self.compose[g * self.morphisms.len() + f]
    }

    /// `g . f`; panics when the pair is not composable.
    pub fn compose(&self, g: Mor, f: Mor) -> Mor {
        self.try_compose(g, f).unwrap_or_else(|| {
            panic!(
                "{} . {} is not composable",
                self.morphism_name(g),
                self.morphism_name(f)
            )
        })
    }

    /// Two-sided inverse of `f`, if any.
    pub fn inverse(&self, f: Mor) -> Option<Mor> {
        let (s, t) = (self.source(f), self.target(f));
        self.hom(t, s)
            .iter()
            .copied()
            .find(|&g| self.compose(g, f) == self.identity(s) && self.compose(f, g) == self.identity(t))
    }

    pub fn is_idempotent(&self, e: Mor) -> bool {
        self.source(e) == self.target(e) && self.compose(e, e) == e
    }

    /// True when every hom-set has at most one element.
    pub fn is_preorder(&self) -> bool {
        self.hom.iter().all(|h| h.len() <= 1)
    }

    /// True when the only morphisms are identities.
    pub fn is_discrete(&self) -> bool {
        self.morphisms.len() == self.objects.len()
    }

    /// Opposite category: sources and targets swapped, composition reversed.
    pub fn opposite(&self) -> Category {
        let m = self.morphisms.len();
        let morphisms = self
            .morphisms
            .iter()
            .map(|mo| Morphism {
                name: mo.name.clone(),
                source: mo.target,
                target: mo.source,
            })
            .collect();
        let mut compose = vec![None; m * m];
        for g in 0..m {
            for f in 0..m {
                compose[g * m + f] = self.compose[f * m + g];
            }
        }
        Category::assemble(self.objects.clone(), morphisms, self.identity.clone(), compose)
    }

    /// Full subcategory on the given objects, kept in the given order.
    pub fn full_subcategory(&self, keep: &[Obj]) -> Category {
        let mut obj_new = vec![None; self.objects.len()];
        for (i, &o) in keep.iter().enumerate() {
            obj_new[o] = Some(i);
        }
        let mut mor_new = vec![None; self.morphisms.len()];
        let mut morphisms = Vec::new();
        let mut identity = Vec::new();
        for &o in keep {
            mor_new[self.identity[o]] = Some(morphisms.len());
            identity.push(morphisms.len());
            let mo = &self.morphisms[self.identity[o]];
            morphisms.push(Morphism {
                name: mo.name.clone(),
                source: obj_new[o].unwrap(),
                target: obj_new[o].unwrap(),
            });
        }
        for (f, mo) in self.morphisms.iter().enumerate() {
            if mor_new[f].is_some() {
                continue;
            }
            if let (Some(s), Some(t)) = (obj_new[mo.source], obj_new[mo.target]) {
                mor_new[f] = Some(morphisms.len());
                morphisms.push(Morphism {
                    name: mo.name.clone(),
                    source: s,
                    target: t,
                });
            }
        }
        let m = morphisms.len();
        let mut compose = vec![None; m * m];
        for g in 0..self.morphisms.len() {
            let Some(ng) = mor_new[g] else { continue };
            for f in 0..self.morphisms.len() {
                let Some(nf) = mor_new[f] else { continue };
                if let Some(h) = self.compose[g * self.morphisms.len() + f] {
                    compose[ng * m + nf] = mor_new[h];
                }
            }
        }
        let objects = keep.iter().map(|&o| self.objects[o].clone()).collect();
        Category::from_parts_trusted(objects, morphisms, identity, compose)
    }

    /// Disjoint union; object and morphism names of the right summand get the
    /// given suffix when they clash.
    pub fn coproduct(&self, other: &Category) -> Category {
        let rename = |name: &str, taken: &dyn Fn(&str) -> bool| {
            if taken(name) {
                format!("{name}'")
            } else {
                name.to_string()
            }
        };
        let n = self.objects.len();
        let mut objects = self.objects.clone();
        for o in &other.objects {
            objects.push(rename(o, &|x| self.objects.iter().any(|y| y == x)));
        }
        let ids: Vec<Mor> = (0..objects.len()).collect();
        let mut morphisms = Vec::new();
        let mut map_left = vec![0; self.morphisms.len()];
        let mut map_right = vec![0; other.morphisms.len()];
        for (i, o) in objects.iter().enumerate() {
            morphisms.push(Morphism {
                name: identity_name(o),
                source: i,
                target: i,
            });
        }
        for (o, &id) in self.identity.iter().enumerate() {
            map_left[id] = o;
        }
        for (o, &id) in other.identity.iter().enumerate() {
            map_right[id] = n + o;
        }
        for (f, mo) in self.morphisms.iter().enumerate() {
            if !self.is_identity(f) {
                map_left[f] = morphisms.len();
                morphisms.push(mo.clone());
            }
        }
        for (f, mo) in other.morphisms.iter().enumerate() {
            if !other.is_identity(f) {
                map_right[f] = morphisms.len();
                let clash = |x: &str| self.morphisms.iter().any(|y| y.name == x);
                morphisms.push(Morphism {
                    name: rename(&mo.name, &clash),
                    source: n + mo.source,
                    target: n + mo.target,
                });
            }
        }
        let m = morphisms.len();
        let mut compose = vec![None; m * m];
        for g in self.morphisms() {
            for f in self.morphisms() {
                if let Some(h) = self.try_compose(g, f) {
                    compose[map_left[g] * m + map_left[f]] = Some(map_left[h]);
                }
            }
        }
        for g in other.morphisms() {
            for f in other.morphisms() {
                if let Some(h) = other.try_compose(g, f) {
                    compose[map_right[g] * m + map_right[f]] = Some(map_right[h]);
                }
            }
        }
        Category::from_parts_trusted(objects, morphisms, ids, compose)
    }

    /// True when identities come first, in object order, named `id_<object>`:
    /// the layout produced by [`Category::validate`].
    pub fn has_canonical_layout(&self) -> bool {
        self.objects
            .iter()
            .enumerate()
            .all(|(i, o)| self.identity[i] == i && self.morphisms[i].name == identity_name(o))
    }

    /// Recovers the named description; `validate(to_raw())` reproduces a
    /// category in canonical layout.
    pub fn to_raw(&self) -> RawCategory {
        let morphisms = self
            .morphisms()
            .filter(|&f| !self.is_identity(f))
            .map(|f| {
                let mo = &self.morphisms[f];
                (
                    mo.name.clone(),
                    self.objects[mo.source].clone(),
                    self.objects[mo.target].clone(),
                )
            })
            .collect();
        let mut composites = Vec::new();
        for g in self.morphisms().filter(|&g| !self.is_identity(g)) {
            for f in self.morphisms().filter(|&f| !self.is_identity(f)) {
                if let Some(h) = self.try_compose(g, f) {
                    composites.push((
                        self.morphism_name(g).to_string(),
                        self.morphism_name(f).to_string(),
                        self.morphism_name(h).to_string(),
                    ));
                }
            }
        }
        RawCategory {
            objects: self.objects.clone(),
            morphisms,
            composites,
        }
    }

    /// Replaces every name by an index-based one; used for enumerated shapes.
    pub fn with_index_names(&self, object_prefix: &str) -> Category {
        let objects: Vec<String> = self.objects().map(|o| format!("{object_prefix}{o}")).collect();
        let morphisms = self
            .morphisms
            .iter()
            .enumerate()
            .map(|(f, mo)| Morphism {
                name: if self.is_identity(f) {
                    identity_name(&objects[mo.source])
                } else {
                    format!("m{f}")
                },
                source: mo.source,
                target: mo.target,
            })
            .collect();
        Category::assemble(objects, morphisms, self.identity.clone(), self.compose.clone())
    }
}

/// Small named categories used throughout tests and the corpus.
pub mod examples {
    use super::*;

    fn build(objects: &[&str], morphisms: &[(&str, &str, &str)], composites: &[(&str, &str, &str)]) -> Category {
        let raw = RawCategory {
            objects: objects.iter().map(|s| s.to_string()).collect(),
            morphisms: morphisms
                .iter()
                .map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string()))
                .collect(),
            composites: composites
                .iter()
                .map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string()))
                .collect(),
        };
        Category::validate(&raw).expect("example category is valid")
    }

    pub fn empty() -> Category {
        build(&[], &[], &[])
    }

    pub fn terminal() -> Category {
        build(&["*"], &[], &[])
    }

    pub fn discrete(names: &[&str]) -> Category {
        build(names, &[], &[])
    }

    pub fn walking_arrow() -> Category {
        build(&["a", "b"], &[("f", "a", "b")], &[])
    }

    /// Two parallel arrows `u, v : a -> b`.
    pub fn parallel_pair() -> Category {
        build(&["a", "b"], &[("u", "a", "b"), ("v", "a", "b")], &[])
    }

    /// `x <- z -> y`.
    pub fn span() -> Category {
        build(&["z", "x", "y"], &[("p", "z", "x"), ("q", "z", "y")], &[])
    }

    /// One object with an idempotent `e`.
    pub fn idempotent_monoid() -> Category {
        build(&["*"], &[("e", "*", "*")], &[("e", "e", "e")])
    }

    /// Total order on the given names, as a thin category.
    pub fn chain(names: &[&str]) -> Category {
        let mut morphisms = Vec::new();
        for i in 0..names.len() {
            for j in i + 1..names.len() {
                morphisms.push((format!("{}<{}", names[i], names[j]), names[i], names[j]));
            }
        }
        let mut composites = Vec::new();
        for i in 0..names.len() {
            for j in i + 1..names.len() {
                for k in j + 1..names.len() {
                    composites.push((
                        format!("{}<{}", names[j], names[k]),
                        format!("{}<{}", names[i], names[j]),
                        format!("{}<{}", names[i], names[k]),
                    ));
                }
            }
        }
        let ms: Vec<(&str, &str, &str)> = morphisms.iter().map(|(n, a, b)| (n.as_str(), *a, *b)).collect();
        let cs: Vec<(&str, &str, &str)> = composites
            .iter()
            .map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str()))
            .collect();
        build(names, &ms, &cs)
    }

    pub fn chain2() -> Category {
        chain(&["bot", "top"])
    }

    pub fn chain3() -> Category {
        chain(&["bot", "mid", "top"])
    }

    /// The lattice `bot < x, y < top` with `x`, `y` incomparable.
    pub fn diamond() -> Category {
        build(
            &["bot", "x", "y", "top"],
            &[
                ("bot<x", "bot", "x"),
                ("bot<y", "bot", "y"),
                ("bot<top", "bot", "top"),
                ("x<top", "x", "top"),
                ("y<top", "y", "top"),
            ],
            &[("x<top", "bot<x", "bot<top"), ("y<top", "bot<y", "bot<top")],
        )
    }

    /// The walking split idempotent: `r : x -> y`, `s : y -> x`, `r s = id_y`, `e = s r`.
    pub fn split_idempotent() -> Category {
        build(
            &["x", "y"],
            &[("e", "x", "x"), ("r", "x", "y"), ("s", "y", "x")],
            &[
                ("e", "e", "e"),
                ("r", "e", "r"),
                ("r", "s", "id_y"),
                ("s", "r", "e"),
                ("e", "s", "s"),
            ],
        )
    }
}
