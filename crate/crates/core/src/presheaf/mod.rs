//! Finite-set-valued presheaves, their categories of elements, and
//! classification into weight classes.

mod classify;
mod elements;
mod weight;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{Category, Functor, Mor, Obj};

pub use classify::{classify, solution_set_witness, Classification, ClassificationWitness, Counterexample};
pub use elements::{elements, Elements};
pub use weight::WeightClass;

/// A presheaf `W: A^op -> FinSet`. Elements of `W(a)` are addressed by index
/// and carry display labels; `act(h, x)` is `W(h)(x)` for `h: a -> a'` and
/// `x` in `W(a')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presheaf {
    base: Arc<Category>,
    labels: Vec<Vec<String>>,
    actions: Vec<Vec<usize>>,
}

impl Presheaf {
    /// Checks totality, identity and contravariant composition laws.
    pub fn new(base: Arc<Category>, labels: Vec<Vec<String>>, actions: Vec<Vec<usize>>) -> Result<Presheaf> {
        let w = Presheaf { base, labels, actions };
        w.check()?;
        Ok(w)
    }

    fn check(&self) -> Result<()> {
        let a = &*self.base;
        let bad = |m: String| Err(Error::InvalidPresheaf(m));
        if self.labels.len() != a.object_count() || self.actions.len() != a.morphism_count() {
            return bad("values or actions are not total".into());
        }
        for h in a.morphisms() {
            let (s, t) = (a.source(h), a.target(h));
            let act = &self.actions[h];
            if act.len() != self.labels[t].len() || act.iter().any(|&x| x >= self.labels[s].len()) {
                return bad(format!("action of {} is not a function", a.morphism_name(h)));
            }
            if a.is_identity(h) && act.iter().enumerate().any(|(i, &x)| i != x) {
                return bad(format!("identity {} acts non-trivially", a.morphism_name(h)));
            }
        }
        for g in a.morphisms() {
            for f in a.morphisms() {
                if let Some(gf) = a.try_compose(g, f) {
                    let ok = (0..self.labels[a.target(g)].len())
                        .all(|x| self.actions[gf][x] == self.actions[f][self.actions[g][x]]);
                    if !ok {
                        return bad(format!(
                            "action of {} . {} is not the composite action",
                            a.morphism_name(g),
                            a.morphism_name(f)
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// The representable `A(-, a)`, with elements labelled by morphism names.
    pub fn representable(base: Arc<Category>, a: Obj) -> Presheaf {
        let id = Functor::identity(base);
        hom_presheaf(&id, a).expect("object of the base")
    }

    /// The presheaf with `n` elements everywhere and identity actions.
    pub fn constant(base: Arc<Category>, n: usize) -> Presheaf {
        let labels = base
            .objects()
            .map(|_| (0..n).map(|i| format!("x{i}")).collect())
            .collect();
        let actions = base.morphisms().map(|_| (0..n).collect()).collect();
        Presheaf { base, labels, actions }
    }

    pub fn base(&self) -> &Arc<Category> {
        &self.base
    }

    pub fn size(&self, a: Obj) -> usize {
        self.labels[a].len()
    }

    pub fn total_size(&self) -> usize {
        self.labels.iter().map(Vec::len).sum()
    }

    pub fn label(&self, a: Obj, x: usize) -> &str {
        &self.labels[a][x]
    }

    pub fn labels(&self) -> &[Vec<String>] {
        &self.labels
    }

    pub fn find_element(&self, a: Obj, label: &str) -> Option<usize> {
        self.labels[a].iter().position(|l| l == label)
    }

    /// `W(h)(x)` for `h: a -> a'` and `x` in `W(a')`.
    pub fn act(&self, h: Mor, x: usize) -> usize {
        self.actions[h][x]
    }

    pub fn action(&self, h: Mor) -> &[usize] {
        &self.actions[h]
    }
}

/// `B(f-, b)`: values `hom(f a, b)`, acting by precomposition with `f(h)`.
pub fn hom_presheaf(f: &Functor, b: Obj) -> Result<Presheaf> {
    let (a, bc) = (f.source(), f.target());
    if b >= bc.object_count() {
        return Err(Error::ObjectNotFound(format!("#{b}")));
    }
    let labels: Vec<Vec<String>> = a
        .objects()
        .map(|x| {
            bc.hom(f.on_object(x), b)
                .iter()
                .map(|&k| bc.morphism_name(k).to_string())
                .collect()
        })
        .collect();
    let actions = a
        .morphisms()
        .map(|h| {
            let (s, t) = (a.source(h), a.target(h));
            let src_hom = bc.hom(f.on_object(s), b);
            bc.hom(f.on_object(t), b)
                .iter()
                .map(|&k| {
                    let kh = bc.compose(k, f.on_morphism(h));
                    src_hom
                        .iter()
                        .position(|&x| x == kh)
                        .expect("composite lands in the hom-set")
                })
                .collect()
        })
        .collect();
    Ok(Presheaf {
        base: a.clone(),
        labels,
        actions,
    })
}

/// Calls `visit` on every presheaf over `base` whose value sets have at most
/// `max_size` elements, labelled `0, 1, ...`. Enumeration is over labelled
/// presheaves, so isomorphic copies are visited separately.
pub fn for_each_presheaf(base: &Arc<Category>, max_size: usize, visit: &mut dyn FnMut(&Presheaf)) {
    let a = &**base;
    let n = a.object_count();
    let non_identity: Vec<Mor> = a.morphisms().filter(|&h| !a.is_identity(h)).collect();
    let mut sizes = vec![0usize; n];
    loop {
        let mut actions: Vec<Vec<usize>> = a
            .morphisms()
            .map(|h| {
                if a.is_identity(h) {
                    (0..sizes[a.source(h)]).collect()
                } else {
                    Vec::new()
                }
            })
            .collect();
        let mut assigned: Vec<bool> = a.morphisms().map(|h| a.is_identity(h)).collect();
        actions_rec(base, &sizes, &non_identity, 0, &mut actions, &mut assigned, visit);
        // next size vector
        let mut p = n;
        loop {
            if p == 0 {
                return;
            }
            p -= 1;
            sizes[p] += 1;
            if sizes[p] <= max_size {
                break;
            }
            sizes[p] = 0;
        }
    }
}

fn actions_rec(
    base: &Arc<Category>,
    sizes: &[usize],
    non_identity: &[Mor],
    k: usize,
    actions: &mut Vec<Vec<usize>>,
    assigned: &mut Vec<bool>,
    visit: &mut dyn FnMut(&Presheaf),
) {
    let a = &**base;
    if k == non_identity.len() {
        let labels = sizes.iter().map(|&s| (0..s).map(|i| i.to_string()).collect()).collect();
        visit(&Presheaf {
            base: base.clone(),
            labels,
            actions: actions.clone(),
        });
        return;
    }
    let h = non_identity[k];
    let (from, to) = (sizes[a.target(h)], sizes[a.source(h)]);
    if from > 0 && to == 0 {
        return;
    }
    let mut func = vec![0usize; from];
    assigned[h] = true;
    loop {
        actions[h] = func.clone();
        if consistent(a, actions, assigned, h) {
            actions_rec(base, sizes, non_identity, k + 1, actions, assigned, visit);
        }
        let mut p = from;
        let done = loop {
            if p == 0 {
                break true;
            }
            p -= 1;
            func[p] += 1;
            if func[p] < to {
                break false;
            }
            func[p] = 0;
        };
        if done {
            break;
        }
    }
    assigned[h] = false;
}

// Composition law for every triple involving `h` whose actions are all known.
fn consistent(a: &Category, actions: &[Vec<usize>], assigned: &[bool], h: Mor) -> bool {
    for g in a.morphisms() {
        for f in a.morphisms() {
            if g != h && f != h {
                continue;
            }
            let Some(gf) = a.try_compose(g, f) else { continue };
            if !(assigned[g] && assigned[f] && assigned[gf]) {
                continue;
            }
            if (0..actions[g].len()).any(|x| actions[gf][x] != actions[f][actions[g][x]]) {
                return false;
            }
        }
    }
    // h may itself be a composite of assigned morphisms
    for g in a.morphisms() {
        for f in a.morphisms() {
            if a.try_compose(g, f) != Some(h) || !(assigned[g] && assigned[f]) {
                continue;
            }
            if (0..actions[g].len()).any(|x| actions[h][x] != actions[f][actions[g][x]]) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::examples::*;

    #[test]
    fn representable_has_identity_element() {
        let w = Arc::new(walking_arrow());
        let p = Presheaf::representable(w.clone(), 1);
        assert_eq!((p.size(0), p.size(1)), (1, 1));
        assert_eq!(p.label(1, 0), "id_b");
        assert_eq!(p.label(0, 0), "f");
    }

    #[test]
    fn hom_presheaf_of_chain_inclusion() {
        let c2 = Arc::new(chain2());
        let c3 = Arc::new(chain3());
        // bot |-> bot, top |-> top
        let inc = Functor::new(
            c2.clone(),
            c3.clone(),
            vec![0, 2],
            vec![0, 2, c3.find_morphism("bot<top").unwrap()],
        )
        .unwrap();
        let p = hom_presheaf(&inc, c3.find_object("mid").unwrap()).unwrap();
        assert_eq!((p.size(0), p.size(1)), (1, 0));
        assert!(hom_presheaf(&inc, 7).is_err());
    }

    #[test]
    fn rejects_non_functorial_actions() {
        let m = Arc::new(idempotent_monoid());
        let labels = vec![vec!["p".to_string(), "q".to_string()]];
        // e swaps: e . e = e would require swap . swap = swap
        let err = Presheaf::new(m, labels, vec![vec![0, 1], vec![1, 0]]);
        assert!(matches!(err, Err(Error::InvalidPresheaf(_))));
    }

    #[test]
    fn enumeration_counts_monoid_actions() {
        // right actions of {1, e} on sets of size <= 2: sizes 0,1,2 give 1 + 1 + 3
        let m = Arc::new(idempotent_monoid());
        let mut count = 0;
        for_each_presheaf(&m, 2, &mut |w| {
            assert!(w.check().is_ok());
            count += 1;
        });
        assert_eq!(count, 5);
    }
}
