//! Brute-force oracles written directly from the definitions, sharing no code
//! with the decision procedures they check beyond the table accessors of
//! `Category`, `Functor` and `Presheaf`.

#![allow(dead_code)]

use std::sync::Arc;

use fincat::fincat::{examples, Category, Functor, Mor, Obj};
use fincat::posetlab::{MonotoneMap, Poset};
use fincat::presheaf::Presheaf;

pub fn arc(c: Category) -> Arc<Category> {
    Arc::new(c)
}

/// Every functor `a -> b` as (object map, morphism map), by plain
/// backtracking with a full law check at the leaves.
pub fn naive_functors(a: &Category, b: &Category) -> Vec<(Vec<Obj>, Vec<Mor>)> {
    let n = a.object_count();
    let mut out = Vec::new();
    let mut objs = vec![0; n];
    if n > 0 && b.object_count() == 0 {
        return out;
    }
    loop {
        // morphisms, each into the hom-set fixed by the object map
        let choices: Vec<Vec<Mor>> = a
            .morphisms()
            .map(|u| {
                let (s, t) = (objs[a.source(u)], objs[a.target(u)]);
                if a.is_identity(u) {
                    vec![b.identity(s)]
                } else {
                    b.morphisms()
                        .filter(|&v| b.source(v) == s && b.target(v) == t)
                        .collect()
                }
            })
            .collect();
        for mors in product(&choices) {
            let ok = a.morphisms().all(|g| {
                a.morphisms().all(|f| match a.try_compose(g, f) {
                    Some(gf) => b.try_compose(mors[g], mors[f]) == Some(mors[gf]),
                    None => true,
                })
            });
            if ok {
                out.push((objs.clone(), mors));
            }
        }
        // next object map
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            objs[i] += 1;
            if objs[i] < b.object_count() {
                break;
            }
            objs[i] = 0;
            i += 1;
        }
    }
}

/// Cartesian product of choice lists.
pub fn product<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for c in choices {
        let mut next = Vec::new();
        for prefix in &out {
            for x in c {
                let mut p = prefix.clone();
                p.push(x.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out
}

fn hom(c: &Category, x: Obj, y: Obj) -> Vec<Mor> {
    c.morphisms()
        .filter(|&m| c.source(m) == x && c.target(m) == y)
        .collect()
}

/// Does `f` have a right adjoint? Enumerates every candidate `g`, every
/// natural unit and counit, and checks both triangle identities.
pub fn brute_force_has_right_adjoint(f: &Functor) -> bool {
    let (a, b) = (&**f.source(), &**f.target());
    for (g_obj, g_mor) in naive_functors(b, a) {
        // natural units 1 => g f
        let unit_choices: Vec<Vec<Mor>> = a.objects().map(|x| hom(a, x, g_obj[f.on_object(x)])).collect();
        let units: Vec<Vec<Mor>> = product(&unit_choices)
            .into_iter()
            .filter(|eta| {
                a.morphisms().all(|u| {
                    let (s, t) = (a.source(u), a.target(u));
                    a.compose(g_mor[f.on_morphism(u)], eta[s]) == a.compose(eta[t], u)
                })
            })
            .collect();
        if units.is_empty() {
            continue;
        }
        // natural counits f g => 1
        let counit_choices: Vec<Vec<Mor>> = b.objects().map(|y| hom(b, f.on_object(g_obj[y]), y)).collect();
        let counits: Vec<Vec<Mor>> = product(&counit_choices)
            .into_iter()
            .filter(|eps| {
                b.morphisms().all(|v| {
                    let (s, t) = (b.source(v), b.target(v));
                    b.compose(v, eps[s]) == b.compose(eps[t], f.on_morphism(g_mor[v]))
                })
            })
            .collect();
        for eta in &units {
            for eps in &counits {
                let left = a.objects().all(|x| {
                    let fx = f.on_object(x);
                    b.compose(eps[fx], f.on_morphism(eta[x])) == b.identity(fx)
                });
                let right = b.objects().all(|y| {
                    let gy = g_obj[y];
                    a.compose(g_mor[eps[y]], eta[gy]) == a.identity(gy)
                });
                if left && right {
                    return true;
                }
            }
        }
    }
    false
}

/// Elements of a presheaf as `(object, index)`.
pub fn all_elements(w: &Presheaf) -> Vec<(Obj, usize)> {
    w.base()
        .objects()
        .flat_map(|a| (0..w.size(a)).map(move |x| (a, x)))
        .collect()
}

/// `W` is isomorphic to a coproduct of the representables at the chosen
/// generators: every element is `W(h)(z)` for exactly one generator `z` and
/// one `h`.
fn generated_freely(w: &Presheaf, gens: &[(Obj, usize)]) -> bool {
    let c = &**w.base();
    for a in c.objects() {
        let mut hits = vec![0usize; w.size(a)];
        for &(g, z) in gens {
            for h in hom(c, a, g) {
                hits[w.act(h, z)] += 1;
            }
        }
        if hits.iter().any(|&k| k != 1) {
            return false;
        }
    }
    true
}

/// Coproduct of representables, by search over generator sets.
pub fn oracle_discrete(w: &Presheaf) -> bool {
    let els = all_elements(w);
    assert!(els.len() <= 16, "oracle limited to 16 elements");
    (0u32..1 << els.len()).any(|mask| {
        let gens: Vec<_> = els
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, e)| *e)
            .collect();
        generated_freely(w, &gens)
    })
}

/// Representable: a single free generator.
pub fn oracle_representable(w: &Presheaf) -> bool {
    all_elements(w).into_iter().any(|e| generated_freely(w, &[e]))
}

/// Connected category of elements, by union-find.
pub fn oracle_connected(w: &Presheaf) -> bool {
    let els = all_elements(w);
    if els.is_empty() {
        return false;
    }
    let index = |e: (Obj, usize)| els.iter().position(|&x| x == e).unwrap();
    let mut parent: Vec<usize> = (0..els.len()).collect();
    fn find(p: &mut Vec<usize>, i: usize) -> usize {
        if p[i] == i {
            i
        } else {
            let r = find(p, p[i]);
            p[i] = r;
            r
        }
    }
    let c = &**w.base();
    for h in c.morphisms() {
        for x in 0..w.size(c.target(h)) {
            let i = find(&mut parent, index((c.target(h), x)));
            let j = find(&mut parent, index((c.source(h), w.act(h, x))));
            parent[i] = j;
        }
    }
    let root = find(&mut parent, 0);
    (0..els.len()).all(|i| find(&mut parent, i) == root)
}

/// Retract of a representable: some `s: W -> y(c)` and `r: y(c) -> W` with
/// `r s = 1`. `r` is determined by an element `z` of `W(c)`; natural `s` are
/// enumerated componentwise.
pub fn oracle_retract_of_representable(w: &Presheaf) -> bool {
    let c = &**w.base();
    let els = all_elements(w);
    for target in c.objects() {
        for z in 0..w.size(target) {
            // s sends each element (a, x) to some h: a -> target with W(h) z = x
            let choices: Vec<Vec<Mor>> = els
                .iter()
                .map(|&(a, x)| hom(c, a, target).into_iter().filter(|&h| w.act(h, z) == x).collect())
                .collect();
            if choices.iter().any(Vec::is_empty) {
                continue;
            }
            for s in product(&choices) {
                let natural = c.morphisms().all(|h| {
                    let (src, tgt) = (c.source(h), c.target(h));
                    (0..w.size(tgt)).all(|x| {
                        let sx = s[els.iter().position(|&e| e == (tgt, x)).unwrap()];
                        let shx = s[els.iter().position(|&e| e == (src, w.act(h, x))).unwrap()];
                        shx == c.compose(sx, h)
                    })
                });
                if natural {
                    return true;
                }
            }
        }
    }
    false
}

/// Cocones over `d` with apex `apex`.
pub fn naive_cocones(d: &Functor, apex: Obj) -> Vec<Vec<Mor>> {
    let (j, c) = (&**d.source(), &**d.target());
    let choices: Vec<Vec<Mor>> = j.objects().map(|x| hom(c, d.on_object(x), apex)).collect();
    product(&choices)
        .into_iter()
        .filter(|legs| {
            j.morphisms()
                .all(|u| c.compose(legs[j.target(u)], d.on_morphism(u)) == legs[j.source(u)])
        })
        .collect()
}

/// Is `(apex, legs)` a colimit: exactly one mediating morphism to every
/// cocone?
pub fn naive_is_colimit(d: &Functor, apex: Obj, legs: &[Mor]) -> bool {
    let c = &**d.target();
    c.objects().all(|other| {
        naive_cocones(d, other).iter().all(|mu| {
            let mediators = hom(c, apex, other)
                .into_iter()
                .filter(|&m| legs.iter().zip(mu).all(|(&l, &k)| c.compose(m, l) == k))
                .count();
            mediators == 1
        })
    })
}

pub fn naive_has_colimit(d: &Functor) -> bool {
    let c = &**d.target();
    c.objects().any(|apex| {
        naive_cocones(d, apex)
            .iter()
            .any(|legs| naive_is_colimit(d, apex, legs))
    })
}

/// Every diagram with shape in `shapes` has a colimit.
pub fn naive_cocomplete(c: &Arc<Category>, shapes: &[Arc<Category>]) -> bool {
    shapes.iter().all(|s| {
        naive_functors(s, c).into_iter().all(|(o, m)| {
            let d = Functor::new(s.clone(), c.clone(), o, m).unwrap();
            naive_has_colimit(&d)
        })
    })
}

/// Join of a subset computed from the order alone.
pub fn naive_join(p: &Poset, subset: &[usize]) -> Option<usize> {
    let upper: Vec<usize> = p.elements().filter(|&u| subset.iter().all(|&s| p.leq(s, u))).collect();
    upper.iter().copied().find(|&u| upper.iter().all(|&v| p.leq(u, v)))
}

/// Preserves the join of every subset, checked over all subsets.
pub fn preserves_all_joins(f: &MonotoneMap) -> bool {
    let (p, l) = (f.source(), f.target());
    let n = p.len();
    (0u32..1 << n).all(|mask| {
        let s: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let image: Vec<usize> = s.iter().map(|&a| f.apply(a)).collect();
        match (naive_join(p, &s), naive_join(l, &image)) {
            (Some(j), Some(k)) => f.apply(j) == k,
            _ => false,
        }
    })
}

/// `c` with a new initial object `bottom` added, in canonical layout.
pub fn adjoin_initial(c: &Category) -> Category {
    let mut raw = c.to_raw();
    raw.objects.push("bottom".into());
    let u = |o: Obj| format!("u_{}", c.object_name(o));
    for o in c.objects() {
        raw.morphisms.push((u(o), "bottom".into(), c.object_name(o).into()));
    }
    for g in c.morphisms().filter(|&g| !c.is_identity(g)) {
        raw.composites
            .push((c.morphism_name(g).into(), u(c.source(g)), u(c.target(g))));
    }
    Category::validate(&raw).expect("adjoining an initial object")
}

/// Categories used by the oracle suites: everything with at most four
/// morphisms, plus named examples with at most eight.
pub fn small_corpus() -> Vec<Arc<Category>> {
    let mut out: Vec<Arc<Category>> = fincat::fincat::enumerate_categories(4).into_iter().map(arc).collect();
    for c in [
        examples::chain3(),
        examples::split_idempotent(),
        examples::discrete(&["a", "b", "c"]),
        examples::chain2().coproduct(&examples::chain2()),
        examples::parallel_pair().coproduct(&examples::terminal()),
        examples::idempotent_monoid().coproduct(&examples::terminal()),
        examples::chain3().coproduct(&examples::terminal()),
        examples::parallel_pair().coproduct(&examples::walking_arrow()),
        examples::split_idempotent().coproduct(&examples::walking_arrow()),
        adjoin_initial(&examples::parallel_pair()),
        adjoin_initial(&examples::split_idempotent()),
        adjoin_initial(&examples::split_idempotent()).opposite(),
        adjoin_initial(&examples::idempotent_monoid().coproduct(&examples::idempotent_monoid())),
    ] {
        assert!(c.morphism_count() <= 8);
        out.push(arc(c));
    }
    out
}
