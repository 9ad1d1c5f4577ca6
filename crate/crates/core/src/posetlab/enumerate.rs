use std::collections::HashSet;
use std::sync::Arc;

use crate::fincat::enumerate::permutations;
use crate::posetlab::{MonotoneMap, Poset};

/// All posets with `n` elements up to isomorphism, named `0..n`, each
/// labelled so that `a <= b` implies `a <= b` as integers.
pub fn enumerate_posets(n: usize) -> Vec<Poset> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let perms = permutations(n);
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                leq[i * n + j] = true;
            }
        }
        let transitive =
            (0..n).all(|a| (0..n).all(|b| !leq[a * n + b] || (0..n).all(|c| !leq[b * n + c] || leq[a * n + c])));
        if !transitive {
            continue;
        }
        let key = perms
            .iter()
            .map(|p| (0..n * n).map(|k| leq[p[k / n] * n + p[k % n]]).collect::<Vec<bool>>())
            .min()
            .unwrap_or_default();
        if seen.insert(key) {
            out.push(Poset {
                names: names.clone(),
                leq,
            });
        }
    }
    out
}

/// All lattices with between 1 and `max` elements, up to isomorphism,
/// ordered by size.
pub fn enumerate_lattices(max: usize) -> Vec<Poset> {
    (1..=max)
        .flat_map(enumerate_posets)
        .filter(Poset::is_complete_lattice)
        .collect()
}

/// Calls `visit` on every monotone map `source -> target`, in lexicographic
/// order of the underlying function.
pub fn for_each_monotone_map(source: &Arc<Poset>, target: &Arc<Poset>, visit: &mut dyn FnMut(&MonotoneMap)) {
    let n = source.len();
    if n > 0 && target.is_empty() {
        return;
    }
    let mut map = vec![0usize; n];
    fn rec(
        source: &Arc<Poset>,
        target: &Arc<Poset>,
        i: usize,
        map: &mut Vec<usize>,
        visit: &mut dyn FnMut(&MonotoneMap),
    ) {
        if i == map.len() {
            visit(&MonotoneMap::new_trusted(source.clone(), target.clone(), map.clone()));
            return;
        }
        for v in target.elements() {
            let ok = (0..i)
                .all(|j| (!source.leq(j, i) || target.leq(map[j], v)) && (!source.leq(i, j) || target.leq(v, map[j])));
            if ok {
                map[i] = v;
                rec(source, target, i + 1, map, visit);
            }
        }
    }
    rec(source, target, 0, &mut map, visit);
}
