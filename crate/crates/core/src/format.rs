//! Line-oriented text formats: `.fincat` categories, `.fun` functors,
//! `.psh` presheaves and `.poset` posets. `#` starts a comment.
//!
//! ```text
//! # .fincat                 # .fun              # .psh              # .poset
//! object a b                source A            set a x y           element bot top
//! morphism f : a -> b       target B            set b z             leq bot top
//! compose g . f = h         object a |-> c      action f z |-> x
//!                           morphism f |-> k
//! ```
//!
//! Identities are implicit and named `id_<object>`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{Category, Functor, RawCategory};
use crate::posetlab::Poset;
use crate::presheaf::Presheaf;

fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        let toks: Vec<&str> = l.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_raw_category(text: &str) -> Result<RawCategory> {
    let mut raw = RawCategory::default();
    for (n, t) in lines(text) {
        match t.as_slice() {
            ["object", names @ ..] if !names.is_empty() => {
                raw.objects.extend(names.iter().map(|s| s.to_string()));
            }
            ["morphism", name, ":", src, "->", tgt] => {
                raw.morphisms.push((name.to_string(), src.to_string(), tgt.to_string()));
            }
            ["compose", g, ".", f, "=", h] => {
                raw.composites.push((g.to_string(), f.to_string(), h.to_string()));
            }
            _ => return Err(parse_err(n, format!("unrecognised line '{}'", t.join(" ")))),
        }
    }
    Ok(raw)
}

/// Parses and validates a `.fincat` description.
pub fn parse_category(text: &str) -> Result<Category> {
    Category::validate(&parse_raw_category(text)?)
}

/// Writes every non-identity composite, so the output re-validates to an
/// equal category whenever the input has the canonical layout.
pub fn write_category(c: &Category) -> String {
    let raw = c.to_raw();
    let mut out = String::new();
    if !raw.objects.is_empty() {
        writeln!(out, "object {}", raw.objects.join(" ")).unwrap();
    }
    for (name, s, t) in &raw.morphisms {
        writeln!(out, "morphism {name} : {s} -> {t}").unwrap();
    }
    for (g, f, h) in &raw.composites {
        writeln!(out, "compose {g} . {f} = {h}").unwrap();
    }
    out
}

/// Parses a `.fun` file between the given categories. Identity morphisms map
/// to identities; a non-identity morphism may be omitted when the target
/// hom-set it must land in has exactly one element.
pub fn parse_functor(text: &str, source: &Arc<Category>, target: &Arc<Category>) -> Result<Functor> {
    let mut object_map: Vec<Option<usize>> = vec![None; source.object_count()];
    let mut morphism_map: Vec<Option<usize>> = vec![None; source.morphism_count()];
    for (n, t) in lines(text) {
        match t.as_slice() {
            ["source", ..] | ["target", ..] => {}
            ["object", a, "|->", b] => {
                let a = source
                    .find_object(a)
                    .ok_or_else(|| parse_err(n, format!("unknown source object {a}")))?;
                let b = target
                    .find_object(b)
                    .ok_or_else(|| parse_err(n, format!("unknown target object {b}")))?;
                object_map[a] = Some(b);
            }
            ["morphism", f, "|->", g] => {
                let f = source
                    .find_morphism(f)
                    .ok_or_else(|| parse_err(n, format!("unknown source morphism {f}")))?;
                let g = target
                    .find_morphism(g)
                    .ok_or_else(|| parse_err(n, format!("unknown target morphism {g}")))?;
                morphism_map[f] = Some(g);
            }
            _ => return Err(parse_err(n, format!("unrecognised line '{}'", t.join(" ")))),
        }
    }
    let object_map: Vec<usize> = object_map
        .iter()
        .enumerate()
        .map(|(o, m)| m.ok_or_else(|| Error::InvalidFunctor(format!("object {} is not mapped", source.object_name(o)))))
        .collect::<Result<_>>()?;
    let morphism_map: Vec<usize> = source
        .morphisms()
        .map(|f| match morphism_map[f] {
            Some(g) => Ok(g),
            None if source.is_identity(f) => Ok(target.identity(object_map[source.source(f)])),
            None => {
                let hom = target.hom(object_map[source.source(f)], object_map[source.target(f)]);
                match hom {
                    [only] => Ok(*only),
                    _ => Err(Error::InvalidFunctor(format!(
                        "morphism {} is not mapped",
                        source.morphism_name(f)
                    ))),
                }
            }
        })
        .collect::<Result<_>>()?;
    Functor::new(source.clone(), target.clone(), object_map, morphism_map)
}

pub fn write_functor(f: &Functor, source_label: &str, target_label: &str) -> String {
    let (a, b) = (f.source(), f.target());
    let mut out = format!("source {source_label}\ntarget {target_label}\n");
    for o in a.objects() {
        writeln!(out, "object {} |-> {}", a.object_name(o), b.object_name(f.on_object(o))).unwrap();
    }
    for m in a.morphisms().filter(|&m| !a.is_identity(m)) {
        writeln!(
            out,
            "morphism {} |-> {}",
            a.morphism_name(m),
            b.morphism_name(f.on_morphism(m))
        )
        .unwrap();
    }
    out
}

/// Parses a `.psh` file over `base`. Objects without a `set` line are empty;
/// every non-identity morphism needs an action line for each element of the
/// value at its target.
pub fn parse_presheaf(text: &str, base: &Arc<Category>) -> Result<Presheaf> {
    let mut labels: Vec<Vec<String>> = vec![Vec::new(); base.object_count()];
    let mut pending = Vec::new();
    for (n, t) in lines(text) {
        match t.as_slice() {
            ["set", a, elems @ ..] => {
                let a = base
                    .find_object(a)
                    .ok_or_else(|| parse_err(n, format!("unknown object {a}")))?;
                labels[a].extend(elems.iter().map(|s| s.to_string()));
            }
            ["action", h, y, "|->", x] => pending.push((n, h.to_string(), y.to_string(), x.to_string())),
            _ => return Err(parse_err(n, format!("unrecognised line '{}'", t.join(" ")))),
        }
    }
    let index: Vec<HashMap<&str, usize>> = labels
        .iter()
        .map(|ls| ls.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect())
        .collect();
    let mut actions: Vec<Vec<Option<usize>>> = base
        .morphisms()
        .map(|h| {
            if base.is_identity(h) {
                (0..labels[base.source(h)].len()).map(Some).collect()
            } else {
                vec![None; labels[base.target(h)].len()]
            }
        })
        .collect();
    for (n, h, y, x) in pending {
        let hm = base
            .find_morphism(&h)
            .ok_or_else(|| parse_err(n, format!("unknown morphism {h}")))?;
        let (s, t) = (base.source(hm), base.target(hm));
        let yi = *index[t]
            .get(y.as_str())
            .ok_or_else(|| parse_err(n, format!("{y} is not an element at {}", base.object_name(t))))?;
        let xi = *index[s]
            .get(x.as_str())
            .ok_or_else(|| parse_err(n, format!("{x} is not an element at {}", base.object_name(s))))?;
        actions[hm][yi] = Some(xi);
    }
    let actions = actions
        .into_iter()
        .enumerate()
        .map(|(h, act)| {
            act.into_iter()
                .enumerate()
                .map(|(y, x)| {
                    x.ok_or_else(|| {
                        Error::InvalidPresheaf(format!(
                            "action of {} on {} is missing",
                            base.morphism_name(h),
                            labels[base.target(h)][y]
                        ))
                    })
                })
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<_>>()?;
    Presheaf::new(base.clone(), labels, actions)
}

pub fn write_presheaf(w: &Presheaf) -> String {
    let a = w.base();
    let mut out = String::new();
    for o in a.objects() {
        let ls = &w.labels()[o];
        if ls.is_empty() {
            writeln!(out, "set {}", a.object_name(o)).unwrap();
        } else {
            writeln!(out, "set {} {}", a.object_name(o), ls.join(" ")).unwrap();
        }
    }
    for h in a.morphisms().filter(|&h| !a.is_identity(h)) {
        let (s, t) = (a.source(h), a.target(h));
        for y in 0..w.size(t) {
            writeln!(
                out,
                "action {} {} |-> {}",
                a.morphism_name(h),
                w.label(t, y),
                w.label(s, w.act(h, y))
            )
            .unwrap();
        }
    }
    out
}

/// Parses a `.poset` file; the relation is closed reflexively and transitively.
pub fn parse_poset(text: &str) -> Result<Poset> {
    let mut names: Vec<String> = Vec::new();
    let mut pairs = Vec::new();
    for (n, t) in lines(text) {
        match t.as_slice() {
            ["element", es @ ..] if !es.is_empty() => names.extend(es.iter().map(|s| s.to_string())),
            ["leq", a, b] => pairs.push((n, a.to_string(), b.to_string())),
            _ => return Err(parse_err(n, format!("unrecognised line '{}'", t.join(" ")))),
        }
    }
    let find = |n: usize, x: &str| {
        names
            .iter()
            .position(|m| m == x)
            .ok_or_else(|| parse_err(n, format!("unknown element {x}")))
    };
    let idx = pairs
        .iter()
        .map(|(n, a, b)| Ok((find(*n, a)?, find(*n, b)?)))
        .collect::<Result<Vec<_>>>()?;
    Poset::from_relations(names, &idx)
}

/// Writes the covering relation.
pub fn write_poset(p: &Poset) -> String {
    let mut out = String::new();
    if !p.is_empty() {
        writeln!(out, "element {}", p.names().join(" ")).unwrap();
    }
    for a in p.elements() {
        for b in p.elements() {
            let covers = a != b && p.leq(a, b) && !p.elements().any(|c| c != a && c != b && p.leq(a, c) && p.leq(c, b));
            if covers {
                writeln!(out, "leq {} {}", p.name(a), p.name(b)).unwrap();
            }
        }
    }
    out
}
