//! Posets and lattices: Galois connections, downset completion, extension
//! along the principal-downset embedding, and a bridge to finite categories.

mod enumerate;

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fincat::{Category, Functor, RawCategory};

pub use enumerate::{enumerate_lattices, enumerate_posets, for_each_monotone_map};

/// A finite poset with a dense order matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    names: Vec<String>,
    leq: Vec<bool>,
}

impl Poset {
    /// Checks reflexivity, antisymmetry and transitivity of the full relation.
    pub fn new(names: Vec<String>, leq: Vec<bool>) -> Result<Poset> {
        let n = names.len();
        if leq.len() != n * n {
            return Err(Error::InvalidPoset("order matrix has the wrong size".into()));
        }
        let p = Poset { names, leq };
        for a in 0..n {
            if !p.leq(a, a) {
                return Err(Error::InvalidPoset(format!("{} is not below itself", p.names[a])));
            }
            for b in 0..n {
                if a != b && p.leq(a, b) && p.leq(b, a) {
                    return Err(Error::InvalidPoset(format!(
                        "{} and {} are distinct but equivalent",
                        p.names[a], p.names[b]
                    )));
                }
                for c in 0..n {
                    if p.leq(a, b) && p.leq(b, c) && !p.leq(a, c) {
                        return Err(Error::InvalidPoset(format!(
                            "{} <= {} <= {} but not {} <= {}",
                            p.names[a], p.names[b], p.names[c], p.names[a], p.names[c]
                        )));
                    }
                }
            }
        }
        Ok(p)
    }

    /// The reflexive-transitive closure of the given pairs; fails on cycles.
    pub fn from_relations(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Poset> {
        let n = names.len();
        let mut leq = vec![false; n * n];
        for a in 0..n {
            leq[a * n + a] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::InvalidPoset("relation mentions an unknown element".into()));
            }
            leq[a * n + b] = true;
        }
        for k in 0..n {
            for a in 0..n {
                if leq[a * n + k] {
                    for b in 0..n {
                        if leq[k * n + b] {
                            leq[a * n + b] = true;
                        }
                    }
                }
            }
        }
        Poset::new(names, leq)
    }

    pub fn chain(n: usize) -> Poset {
        let names = (0..n).map(|i| i.to_string()).collect();
        Poset {
            names,
            leq: (0..n * n).map(|k| k / n <= k % n).collect(),
        }
    }

    pub fn antichain(names: &[&str]) -> Poset {
        let n = names.len();
        Poset {
            names: names.iter().map(|s| s.to_string()).collect(),
            leq: (0..n * n).map(|k| k / n == k % n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.names.len()
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.names.len() + b]
    }

    /// Least upper bound of the given elements, if it exists.
    pub fn join(&self, subset: &[usize]) -> Option<usize> {
        let ubs: Vec<usize> = self
            .elements()
            .filter(|&u| subset.iter().all(|&s| self.leq(s, u)))
            .collect();
        ubs.iter().copied().find(|&u| ubs.iter().all(|&v| self.leq(u, v)))
    }

    /// Greatest lower bound of the given elements, if it exists.
    pub fn meet(&self, subset: &[usize]) -> Option<usize> {
        let lbs: Vec<usize> = self
            .elements()
            .filter(|&l| subset.iter().all(|&s| self.leq(l, s)))
            .collect();
        lbs.iter().copied().find(|&l| lbs.iter().all(|&v| self.leq(v, l)))
    }

    /// Finite posets are complete lattices exactly when they have a bottom
    /// and all binary joins.
    pub fn is_complete_lattice(&self) -> bool {
        self.join(&[]).is_some()
            && self
                .elements()
                .all(|a| self.elements().all(|b| self.join(&[a, b]).is_some()))
    }

    pub fn require_complete_lattice(&self) -> Result<()> {
        if self.join(&[]).is_none() {
            return Err(Error::NotCompleteLattice("no least element".into()));
        }
        for a in self.elements() {
            for b in self.elements() {
                if self.join(&[a, b]).is_none() {
                    return Err(Error::NotCompleteLattice(format!(
                        "{} and {} have no join",
                        self.names[a], self.names[b]
                    )));
                }
            }
        }
        Ok(())
    }

    /// The poset as a thin category: one morphism `a<b` for each strict
    /// relation, identities first.
    pub fn to_category(&self) -> Category {
        let n = self.len();
        let mut raw = RawCategory {
            objects: self.names.clone(),
            ..Default::default()
        };
        let arrow = |a: usize, b: usize| format!("{}<{}", self.names[a], self.names[b]);
        for a in 0..n {
            for b in 0..n {
                if a != b && self.leq(a, b) {
                    raw.morphisms
                        .push((arrow(a, b), self.names[a].clone(), self.names[b].clone()));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if a != b && b != c && a != c && self.leq(a, b) && self.leq(b, c) {
                        raw.composites.push((arrow(b, c), arrow(a, b), arrow(a, c)));
                    }
                }
            }
        }
        Category::validate(&raw).expect("a poset is a thin category")
    }

    /// Inverse of [`Poset::to_category`] on thin, skeletal categories.
    pub fn from_category(c: &Category) -> Result<Poset> {
        if !c.is_preorder() {
            return Err(Error::InvalidPoset("category is not thin".into()));
        }
        let n = c.object_count();
        let leq = (0..n * n).map(|k| !c.hom(k / n, k % n).is_empty()).collect();
        Poset::new(c.object_names().to_vec(), leq)
    }
}

/// An order-preserving map.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonotoneMap {
    source: Arc<Poset>,
    target: Arc<Poset>,
    map: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(source: Arc<Poset>, target: Arc<Poset>, map: Vec<usize>) -> Result<MonotoneMap> {
        if map.len() != source.len() || map.iter().any(|&x| x >= target.len()) {
            return Err(Error::InvalidFunctor("map is not total".into()));
        }
        for a in source.elements() {
            for b in source.elements() {
                if source.leq(a, b) && !target.leq(map[a], map[b]) {
                    return Err(Error::InvalidFunctor(format!(
                        "{} <= {} is not preserved",
                        source.name(a),
                        source.name(b)
                    )));
                }
            }
        }
        Ok(MonotoneMap { source, target, map })
    }

    pub(crate) fn new_trusted(source: Arc<Poset>, target: Arc<Poset>, map: Vec<usize>) -> MonotoneMap {
        MonotoneMap { source, target, map }
    }

    pub fn identity(p: Arc<Poset>) -> MonotoneMap {
        let map = p.elements().collect();
        MonotoneMap {
            source: p.clone(),
            target: p,
            map,
        }
    }

    pub fn constant(source: Arc<Poset>, target: Arc<Poset>, value: usize) -> MonotoneMap {
        let map = vec![value; source.len()];
        MonotoneMap { source, target, map }
    }

    pub fn source(&self) -> &Arc<Poset> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Poset> {
        &self.target
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// `self . first`.
    pub fn after(&self, first: &MonotoneMap) -> Result<MonotoneMap> {
        if first.target != self.source {
            return Err(Error::ShapeMismatch("maps are not composable".into()));
        }
        Ok(MonotoneMap {
            source: first.source.clone(),
            target: self.target.clone(),
            map: first.map.iter().map(|&a| self.map[a]).collect(),
        })
    }

    /// The induced functor between the bridged thin categories.
    pub fn to_functor(&self) -> Functor {
        let a = Arc::new(self.source.to_category());
        let b = Arc::new(self.target.to_category());
        let morphism_map = a
            .morphisms()
            .map(|f| {
                let (s, t) = (self.map[a.source(f)], self.map[a.target(f)]);
                b.hom(s, t)[0]
            })
            .collect();
        Functor::new(a, b, self.map.clone(), morphism_map).expect("monotone maps are functors")
    }

    /// `f a <= b <=> a <= g b` for all `a`, `b`.
    pub fn is_left_adjoint_to(&self, g: &MonotoneMap) -> bool {
        g.source == self.target
            && g.target == self.source
            && self.source.elements().all(|a| {
                self.target
                    .elements()
                    .all(|b| self.target.leq(self.map[a], b) == self.source.leq(a, g.map[b]))
            })
    }
}

/// A join that a map fails to preserve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum JoinFailure {
    /// The least element is not sent to the least element.
    Empty,
    Binary {
        left: usize,
        right: usize,
    },
}

/// First join not preserved by `f`, checking the empty join and then binary
/// joins in order; both sides must be complete lattices.
pub fn join_failure(f: &MonotoneMap) -> Result<Option<JoinFailure>> {
    let (p, l) = (&f.source, &f.target);
    p.require_complete_lattice()?;
    l.require_complete_lattice()?;
    if Some(f.apply(p.join(&[]).unwrap())) != l.join(&[]) {
        return Ok(Some(JoinFailure::Empty));
    }
    for a in p.elements() {
        for b in p.elements() {
            let lhs = f.apply(p.join(&[a, b]).unwrap());
            if Some(lhs) != l.join(&[f.apply(a), f.apply(b)]) {
                return Ok(Some(JoinFailure::Binary { left: a, right: b }));
            }
        }
    }
    Ok(None)
}

/// For join-preserving `f`, the right adjoint `g(b) = join {a : f a <= b}`;
/// otherwise the first join `f` fails to preserve.
pub fn galois_right_adjoint(f: &MonotoneMap) -> Result<std::result::Result<MonotoneMap, JoinFailure>> {
    if let Some(failure) = join_failure(f)? {
        return Ok(Err(failure));
    }
    let (p, l) = (&f.source, &f.target);
    let map = l
        .elements()
        .map(|b| {
            let below: Vec<usize> = p.elements().filter(|&a| l.leq(f.apply(a), b)).collect();
            p.join(&below).expect("complete lattice")
        })
        .collect();
    let g = MonotoneMap::new(l.clone(), p.clone(), map).expect("right adjoint is monotone");
    debug_assert!(f.is_left_adjoint_to(&g));
    Ok(Ok(g))
}

/// Right adjoint found by searching, for each `b`, an element `s` of the
/// source with `f a <= b <=> a <= s` for every `a`.
pub fn brute_force_right_adjoint(f: &MonotoneMap) -> Option<MonotoneMap> {
    let (p, l) = (&f.source, &f.target);
    let mut map = Vec::with_capacity(l.len());
    for b in l.elements() {
        let s = p
            .elements()
            .find(|&s| p.elements().all(|a| l.leq(f.apply(a), b) == p.leq(a, s)))?;
        map.push(s);
    }
    Some(MonotoneMap::new_trusted(l.clone(), p.clone(), map))
}

/// `D(P)` with its principal-downset embedding.
#[derive(Debug, Clone)]
pub struct DownsetCompletion {
    pub lattice: Arc<Poset>,
    /// Each element of the lattice as a bitmask over `P`.
    pub sets: Vec<u64>,
    pub unit: MonotoneMap,
}

impl DownsetCompletion {
    pub fn index_of(&self, set: u64) -> Option<usize> {
        self.sets.iter().position(|&s| s == set)
    }
}

/// Down-closed subsets ordered by inclusion, listed by size then bitmask.
/// Supports posets with up to 64 elements.
pub fn downset_completion(p: &Arc<Poset>) -> Result<DownsetCompletion> {
    let n = p.len();
    if n > 64 {
        return Err(Error::InvalidPoset(
            "downset completion supports at most 64 elements".into(),
        ));
    }
    // a linear extension: include an element only after everything below it
    let mut order: Vec<usize> = p.elements().collect();
    order.sort_by_key(|&a| p.elements().filter(|&b| p.leq(b, a)).count());
    let below: Vec<u64> = p
        .elements()
        .map(|a| p.elements().filter(|&b| p.leq(b, a)).fold(0u64, |m, b| m | (1 << b)))
        .collect();
    let mut sets = Vec::new();
    fn rec(order: &[usize], below: &[u64], k: usize, cur: u64, out: &mut Vec<u64>) {
        if k == order.len() {
            out.push(cur);
            return;
        }
        let a = order[k];
        rec(order, below, k + 1, cur, out);
        let strictly_below = below[a] & !(1 << a);
        if cur & strictly_below == strictly_below {
            rec(order, below, k + 1, cur | (1 << a), out);
        }
    }
    rec(&order, &below, 0, 0, &mut sets);
    sets.sort_by_key(|&s| (s.count_ones(), s));
    let names = sets
        .iter()
        .map(|&s| {
            let members: Vec<&str> = p.elements().filter(|&a| s >> a & 1 == 1).map(|a| p.name(a)).collect();
            format!("{{{}}}", members.join(","))
        })
        .collect();
    let m = sets.len();
    let leq = (0..m * m).map(|k| sets[k / m] & !sets[k % m] == 0).collect();
    let lattice = Arc::new(Poset { names, leq });
    let unit_map = p
        .elements()
        .map(|a| {
            sets.iter()
                .position(|&s| s == below[a])
                .expect("principal downsets are downsets")
        })
        .collect();
    let unit = MonotoneMap::new_trusted(p.clone(), lattice.clone(), unit_map);
    Ok(DownsetCompletion { lattice, sets, unit })
}

/// The join-preserving extension `g(S) = join f(S)` of `f: P -> L` to `D(P)`.
pub fn extend_along_yoneda(f: &MonotoneMap) -> Result<MonotoneMap> {
    let l = &f.target;
    l.require_complete_lattice()?;
    let d = downset_completion(&f.source)?;
    let map = d
        .sets
        .iter()
        .map(|&s| {
            let images: Vec<usize> = f
                .source
                .elements()
                .filter(|&a| s >> a & 1 == 1)
                .map(|a| f.apply(a))
                .collect();
            l.join(&images).expect("complete lattice")
        })
        .collect();
    Ok(MonotoneMap::new_trusted(d.lattice, l.clone(), map))
}

/// `g` preserves all joins `<=>` `g` has a right adjoint, each side computed
/// by its own procedure. The target must be a complete lattice.
pub fn presentable_aft_check(g: &MonotoneMap) -> Result<bool> {
    g.target.require_complete_lattice()?;
    let preserves = join_failure(g)?.is_none();
    let adjoint = brute_force_right_adjoint(g).is_some();
    Ok(preserves == adjoint)
}
