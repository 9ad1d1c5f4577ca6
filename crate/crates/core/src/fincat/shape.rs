//! Shape predicates: terminal and initial objects, connectivity, filteredness.

use serde::Serialize;

use crate::fincat::category::{Category, Mor, Obj};

/// Least object receiving exactly one morphism from every object.
pub fn has_terminal(c: &Category) -> Option<Obj> {
    c.objects().find(|&t| c.objects().all(|o| c.hom(o, t).len() == 1))
}

/// Least object sending exactly one morphism to every object.
pub fn has_initial(c: &Category) -> Option<Obj> {
    c.objects().find(|&i| c.objects().all(|o| c.hom(i, o).len() == 1))
}

/// Connected components as sorted object lists, ordered by least member.
pub fn connected_components(c: &Category) -> Vec<Vec<Obj>> {
    let n = c.object_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for f in c.morphisms() {
        let (a, b) = (find(&mut parent, c.source(f)), find(&mut parent, c.target(f)));
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            parent[hi] = lo;
        }
    }
    let mut groups: Vec<Vec<Obj>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for o in 0..n {
        let r = find(&mut parent, o);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(o);
    }
    groups
}

pub fn is_connected(c: &Category) -> bool {
    c.object_count() > 0 && connected_components(c).len() == 1
}

/// Why a category fails to be filtered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FilteredFailure {
    Empty,
    /// No object receives morphisms from both.
    NoCocone {
        left: Obj,
        right: Obj,
    },
    /// No morphism out of the common target equalises the pair.
    NotEqualized {
        u: Mor,
        v: Mor,
    },
}

/// Certificate that a category is filtered: a cocone for every pair of
/// objects and an equalising morphism for every parallel pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FilteredCertificate {
    /// `((a, b), (u: a -> c, v: b -> c))`
    pub cocones: Vec<((Obj, Obj), (Mor, Mor))>,
    /// `((u, v), w)` with `w . u = w . v`
    pub equalizers: Vec<((Mor, Mor), Mor)>,
}

impl FilteredCertificate {
    pub fn verify(&self, c: &Category) -> bool {
        if c.object_count() == 0 {
            return false;
        }
        let n = c.object_count();
        let mut seen_pairs = vec![false; n * n];
        for &((a, b), (u, v)) in &self.cocones {
            if c.source(u) != a || c.source(v) != b || c.target(u) != c.target(v) {
                return false;
            }
            seen_pairs[a * n + b] = true;
        }
        if !seen_pairs.iter().all(|&s| s) {
            return false;
        }
        let mut needed = 0;
        for &((u, v), w) in &self.equalizers {
            if c.source(u) != c.source(v)
                || c.target(u) != c.target(v)
                || c.source(w) != c.target(u)
                || c.compose(w, u) != c.compose(w, v)
            {
                return false;
            }
            needed += 1;
        }
        let parallel = c
            .morphisms()
            .flat_map(|u| c.morphisms().map(move |v| (u, v)))
            .filter(|&(u, v)| c.source(u) == c.source(v) && c.target(u) == c.target(v))
            .count();
        needed == parallel
    }
}

/// Decides filteredness: nonempty, every pair of objects has a cocone, every
/// parallel pair is equalised by some morphism.
pub fn is_filtered(c: &Category) -> Result<FilteredCertificate, FilteredFailure> {
    if c.object_count() == 0 {
        return Err(FilteredFailure::Empty);
    }
    let mut cert = FilteredCertificate {
        cocones: Vec::new(),
        equalizers: Vec::new(),
    };
    for a in c.objects() {
        for b in c.objects() {
            let found = c.objects().find_map(|t| {
                let (ha, hb) = (c.hom(a, t), c.hom(b, t));
                (!ha.is_empty() && !hb.is_empty()).then(|| (ha[0], hb[0]))
            });
            match found {
                Some(legs) => cert.cocones.push(((a, b), legs)),
                None => return Err(FilteredFailure::NoCocone { left: a, right: b }),
            }
        }
    }
    for u in c.morphisms() {
        for v in c.morphisms() {
            if c.source(u) != c.source(v) || c.target(u) != c.target(v) {
                continue;
            }
            let y = c.target(u);
            let w = c
                .morphisms()
                .find(|&w| c.source(w) == y && c.compose(w, u) == c.compose(w, v));
            match w {
                Some(w) => cert.equalizers.push(((u, v), w)),
                None => return Err(FilteredFailure::NotEqualized { u, v }),
            }
        }
    }
    Ok(cert)
}
