//! Deterministic instance generation per table pair.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::adjunction::{find_right_adjoint, is_phi_admissible};
use crate::daft::{arc, corpus, preorder_category, Expectation, TheoremInstance};
use crate::error::{Error, Result};
use crate::fincat::{enumerate_categories, enumerate_functors, examples, Category, Functor};
use crate::posetlab::{enumerate_lattices, for_each_monotone_map};
use crate::presheaf::WeightClass;
use crate::weights::{is_cocomplete, TablePair, DEFAULT_BOUND};

/// Functors enumerated per (source, target) before sampling.
const FUNCTOR_CAP: usize = 4000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileKind {
    Adjoint,
    Semiadjoint,
    Pluriadjoint,
    Multiadjoint,
    Virtual,
    /// Every monotone map between lattices with at most four elements.
    Lattice,
}

impl ProfileKind {
    pub const ALL: [ProfileKind; 6] = [
        ProfileKind::Adjoint,
        ProfileKind::Semiadjoint,
        ProfileKind::Pluriadjoint,
        ProfileKind::Multiadjoint,
        ProfileKind::Virtual,
        ProfileKind::Lattice,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ProfileKind::Adjoint => "adjoint",
            ProfileKind::Semiadjoint => "semiadjoint",
            ProfileKind::Pluriadjoint => "pluriadjoint",
            ProfileKind::Multiadjoint => "multiadjoint",
            ProfileKind::Virtual => "virtual",
            ProfileKind::Lattice => "lattice",
        }
    }

    pub fn pair(self) -> TablePair {
        use WeightClass::*;
        let (psi, phi) = match self {
            ProfileKind::Adjoint | ProfileKind::Lattice => (Small, Empty),
            ProfileKind::Semiadjoint => (Small, Absolute),
            ProfileKind::Pluriadjoint => (Finite, Filtered),
            ProfileKind::Multiadjoint => (Connected, Discrete),
            ProfileKind::Virtual => (Empty, Small),
        };
        TablePair { psi, phi }
    }

    /// The sampling profile for a table pair.
    pub fn for_pair(pair: TablePair) -> ProfileKind {
        *ProfileKind::ALL[..5]
            .iter()
            .find(|k| k.pair() == pair)
            .expect("every table pair has a profile")
    }
}

impl fmt::Display for ProfileKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProfileKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ProfileKind::ALL
            .into_iter()
            .find(|k| k.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnsupportedClass(format!("unknown profile '{s}'")))
    }
}

/// What to generate: a kind, how many sampled instances, and the shape bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Profile {
    pub kind: ProfileKind,
    /// Total instances, corpus members first. Ignored by the lattice
    /// profile, which is exhaustive.
    pub count: usize,
    pub size_bound: usize,
}

impl Profile {
    pub fn new(kind: ProfileKind, count: usize) -> Profile {
        Profile {
            kind,
            count,
            size_bound: DEFAULT_BOUND,
        }
    }
}

/// How many instances live entirely among preorders.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CollapseStats {
    pub instances: usize,
    pub preorder_source: usize,
    pub preorder_target: usize,
    pub both_preorder: usize,
}

impl CollapseStats {
    pub fn of(instances: &[TheoremInstance]) -> CollapseStats {
        let mut s = CollapseStats::default();
        for i in instances {
            let a = i.f.source().is_preorder();
            let b = i.f.target().is_preorder();
            s.instances += 1;
            s.preorder_source += a as usize;
            s.preorder_target += b as usize;
            s.both_preorder += (a && b) as usize;
        }
        s
    }
}

/// Corpus members for the profile's pair, then sampled instances up to the
/// profile's count (or, for the lattice profile, every instance). Sorted by
/// id; identical for equal inputs.
pub fn generate_instances(seed: u64, profile: &Profile) -> Vec<TheoremInstance> {
    let pair = profile.kind.pair();
    let mut out: Vec<TheoremInstance> = corpus()
        .into_iter()
        .filter(|(i, e)| i.pair == pair && *e == Expectation::Agreement)
        .map(|(mut i, _)| {
            i.size_bound = profile.size_bound;
            i
        })
        .collect();
    if profile.kind != ProfileKind::Lattice {
        out.truncate(profile.count);
    }
    let tag = profile.kind.as_str();
    let push = |out: &mut Vec<TheoremInstance>, f: Functor| {
        let id = format!("gen/{tag}/{:04}", out.len());
        out.push(TheoremInstance {
            id,
            f,
            pair,
            size_bound: profile.size_bound,
        })
    };
    let base = out.len();
    if profile.kind == ProfileKind::Lattice {
        let lattices: Vec<_> = enumerate_lattices(4).into_iter().map(Arc::new).collect();
        let mut maps = Vec::new();
        for a in &lattices {
            for b in &lattices {
                for_each_monotone_map(a, b, &mut |m| maps.push(m.to_functor()));
            }
        }
        for f in maps {
            push(&mut out, f);
        }
    } else {
        let pool = pool(profile.kind, profile.size_bound);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        while out.len() < profile.count {
            let a = pool.choose(&mut rng).expect("pools are nonempty").clone();
            let b = pool.choose(&mut rng).expect("pools are nonempty").clone();
            let all = enumerate_functors(&a, &b, Some(FUNCTOR_CAP));
            // positives, negatives and unbiased draws in equal measure
            let candidates: Vec<&Functor> = match rng.gen_range(0..3) {
                0 => all.iter().filter(|f| positive(profile.kind, f)).collect(),
                1 => all.iter().filter(|f| !positive(profile.kind, f)).collect(),
                _ => all.iter().collect(),
            };
            if let Some(f) = candidates.choose(&mut rng) {
                push(&mut out, (*f).clone());
            }
        }
    }
    // renumber so ids are contiguous from zero whatever the corpus size
    for (k, inst) in out[base..].iter_mut().enumerate() {
        inst.id = format!("gen/{tag}/{k:04}");
    }
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

/// The adjointness notion of the profile, used only to balance sampling.
fn positive(kind: ProfileKind, f: &Functor) -> bool {
    match kind {
        ProfileKind::Multiadjoint => is_phi_admissible(f, WeightClass::Discrete).holds,
        ProfileKind::Virtual => true,
        _ => find_right_adjoint(f).is_ok(),
    }
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Preorder inflations of small chains and of the diamond: some elements
/// replaced by several isomorphic copies.
fn inflations() -> Vec<Category> {
    let mut out = Vec::new();
    // chain of `levels` with the level `fat` doubled
    for levels in 1..=3usize {
        for fat in 0..levels {
            let mut level = Vec::new();
            for l in 0..levels {
                level.push(l);
                if l == fat {
                    level.push(l);
                }
            }
            let lv = level.clone();
            out.push(preorder_category(&names("p", level.len()), &move |x, y| lv[x] <= lv[y]));
        }
    }
    // diamond with its top doubled
    let rank = [0usize, 1, 1, 2, 2];
    out.push(preorder_category(&names("q", 5), &move |x, y| {
        x == y || rank[x] < rank[y] || rank[x] == 2 && rank[y] == 2
    }));
    out
}

/// Categories satisfying the profile's preconditions at the bound, in a fixed
/// order.
fn pool(kind: ProfileKind, bound: usize) -> Vec<Arc<Category>> {
    let lattices = |max: usize| -> Vec<Category> { enumerate_lattices(max).iter().map(|l| l.to_category()).collect() };
    let candidates: Vec<Category> = match kind {
        ProfileKind::Adjoint | ProfileKind::Semiadjoint | ProfileKind::Pluriadjoint | ProfileKind::Lattice => {
            let mut c = lattices(5);
            c.extend(inflations());
            c
        }
        ProfileKind::Multiadjoint => {
            let mut c = lattices(5);
            let small = lattices(3);
            for a in &small {
                for b in &small {
                    c.push(a.coproduct(b));
                }
            }
            c.push(examples::discrete(&["d0", "d1", "d2"]));
            c.push(examples::chain3().coproduct(&examples::terminal()));
            c.extend(enumerate_categories(5));
            c
        }
        ProfileKind::Virtual => {
            let mut c = enumerate_categories(4);
            c.push(examples::split_idempotent());
            c.push(examples::diamond());
            c
        }
    };
    let psi = kind.pair().psi;
    candidates
        .into_iter()
        .map(arc)
        .filter(|c| c.object_count() > 0 || psi != WeightClass::Connected)
        .filter(|c| is_cocomplete(c, psi, bound).holds)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profiles_parse() {
        for k in ProfileKind::ALL {
            assert_eq!(k.as_str().parse::<ProfileKind>().unwrap(), k);
        }
        assert!("nope".parse::<ProfileKind>().is_err());
    }

    #[test]
    fn deterministic_and_sized() {
        let p = Profile::new(ProfileKind::Virtual, 20);
        let a = generate_instances(3, &p);
        let b = generate_instances(3, &p);
        assert_eq!(a, b);
        assert_eq!(a.len(), 20);
        assert!(a.iter().any(|i| i.id.starts_with("corpus/")));
        assert!(a.windows(2).all(|w| w[0].id < w[1].id));
    }

    #[test]
    fn multiadjoint_profile_contains_the_canonical_member() {
        let insts = generate_instances(0, &Profile::new(ProfileKind::Multiadjoint, 5));
        assert!(insts.iter().any(|i| {
            i.f.source().object_count() == 2 && i.f.source().is_discrete() && i.f.target().morphism_count() == 1
        }));
    }

    #[test]
    fn inflations_are_preorders() {
        for c in inflations() {
            assert!(c.is_preorder());
            assert!(is_cocomplete(&arc(c), WeightClass::Small, 4).holds);
        }
    }
}
