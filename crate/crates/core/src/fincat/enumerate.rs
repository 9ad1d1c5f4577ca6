//! Exhaustive enumeration of finite categories up to isomorphism.
//!
//! Categories are generated by hom-size matrix (canonical under object
//! permutation), then by composition table with incremental associativity
//! checks, and deduplicated by a canonical relabelling of the table. The
//! labelled search grows factorially with the size of the largest hom-set,
//! so this is practical up to six morphisms.

use std::collections::HashSet;

use crate::fincat::category::{identity_name, Category, Morphism};

const UNSET: u8 = u8::MAX;

/// All categories with at most `max_morphisms` morphisms, one per isomorphism
/// class, ordered by morphism count, then object count, then discovery order.
/// Objects are named `o0, o1, ...` and non-identity morphisms `m<k>`.
pub fn enumerate_categories(max_morphisms: usize) -> Vec<Category> {
    let mut out = Vec::new();
    for total in 0..=max_morphisms {
        for n in 0..=total {
            let extra = total - n;
            if n == 0 && extra > 0 {
                continue;
            }
            for hom in hom_matrices(n, extra) {
                out.extend(categories_with_homs(n, &hom));
            }
        }
    }
    out
}

/// Canonical hom-size matrices (counting non-identity morphisms) with the given total.
fn hom_matrices(n: usize, extra: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, left: usize, cells: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k + 1 == cells.len() {
            cells[k] = left;
            if closed_under_composition(n, cells) && is_canonical_matrix(n, cells) {
                out.push(cells.clone());
            }
            return;
        }
        for v in 0..=left {
            cells[k] = v;
            rec(n, k + 1, left - v, cells, out);
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if extra == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, 0, extra, &mut vec![0; n * n], &mut out);
    out
}

fn closed_under_composition(n: usize, cells: &[usize]) -> bool {
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                if i != l && cells[i * n + j] > 0 && cells[j * n + l] > 0 && cells[i * n + l] == 0 {
                    // i -> j -> l needs a morphism i -> l; identities cover i = j or j = l
                    if i != j && j != l {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn is_canonical_matrix(n: usize, cells: &[usize]) -> bool {
    permutations(n).iter().all(|p| {
        let permuted: Vec<usize> = (0..n * n).map(|k| cells[p[k / n] * n + p[k % n]]).collect();
        permuted.as_slice() >= cells
    })
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // next permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

struct Layout {
    n: usize,
    m: usize,
    src: Vec<usize>,
    tgt: Vec<usize>,
    /// first morphism index and size of each non-identity block (i, j)
    block_start: Vec<usize>,
    block_len: Vec<usize>,
}

impl Layout {
    fn new(n: usize, hom: &[usize]) -> Layout {
        let mut src: Vec<usize> = (0..n).collect();
        let mut tgt: Vec<usize> = (0..n).collect();
        let mut block_start = vec![0; n * n];
        let mut block_len = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                block_start[i * n + j] = src.len();
                block_len[i * n + j] = hom[i * n + j];
                for _ in 0..hom[i * n + j] {
                    src.push(i);
                    tgt.push(j);
                }
            }
        }
        Layout {
            n,
            m: src.len(),
            src,
            tgt,
            block_start,
            block_len,
        }
    }

    fn candidates(&self, from: usize, to: usize) -> Vec<u8> {
        let mut c = Vec::new();
        if from == to {
            c.push(from as u8);
        }
        let b = from * self.n + to;
        c.extend((self.block_start[b]..self.block_start[b] + self.block_len[b]).map(|x| x as u8));
        c
    }
}

fn categories_with_homs(n: usize, hom: &[usize]) -> Vec<Category> {
    let lay = Layout::new(n, hom);
    let m = lay.m;
    let mut table = vec![UNSET; m * m];
    for f in 0..m {
        table[lay.tgt[f] * m + f] = f as u8;
        table[f * m + lay.src[f]] = f as u8;
    }
    let pairs: Vec<(usize, usize)> = (n..m)
        .flat_map(|g| (n..m).map(move |f| (g, f)))
        .filter(|&(g, f)| lay.tgt[f] == lay.src[g])
        .collect();
    let relabellings = relabellings(&lay, hom);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    search(&lay, &pairs, 0, &mut table, &mut |t| {
        let key = canonical_key(&lay, &relabellings, t);
        if seen.insert(key) {
            out.push(build(&lay, t));
        }
    });
    out
}

fn search(lay: &Layout, pairs: &[(usize, usize)], k: usize, table: &mut Vec<u8>, emit: &mut dyn FnMut(&[u8])) {
    if k == pairs.len() {
        emit(table);
        return;
    }
    let (g, f) = pairs[k];
    let m = lay.m;
    for c in lay.candidates(lay.src[f], lay.tgt[g]) {
        table[g * m + f] = c;
        if associative_so_far(lay, table) {
            search(lay, pairs, k + 1, table, emit);
        }
    }
    table[g * m + f] = UNSET;
}

fn associative_so_far(lay: &Layout, table: &[u8]) -> bool {
    let m = lay.m;
    for f in lay.n..m {
        for g in lay.n..m {
            if lay.tgt[f] != lay.src[g] {
                continue;
            }
            let gf = table[g * m + f];
            for h in lay.n..m {
                if lay.tgt[g] != lay.src[h] {
                    continue;
                }
                let hg = table[h * m + g];
                if gf == UNSET || hg == UNSET {
                    continue;
                }
                let lhs = table[hg as usize * m + f];
                let rhs = table[h * m + gf as usize];
                if lhs != UNSET && rhs != UNSET && lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// Morphism relabellings induced by automorphisms of the hom matrix and
/// permutations within each hom-set.
fn relabellings(lay: &Layout, hom: &[usize]) -> Vec<Vec<u8>> {
    let n = lay.n;
    let block_perms: Vec<Vec<Vec<usize>>> = lay.block_len.iter().map(|&len| permutations(len)).collect();
    let mut out = Vec::new();
    for sigma in permutations(n) {
        let preserves = (0..n).all(|i| (0..n).all(|j| hom[sigma[i] * n + sigma[j]] == hom[i * n + j]));
        if !preserves {
            continue;
        }
        // one permutation choice per block, odometer order
        let mut idx = vec![0usize; n * n];
        loop {
            let mut map = vec![0u8; lay.m];
            for (i, &s) in sigma.iter().enumerate() {
                map[i] = s as u8;
            }
            for i in 0..n {
                for j in 0..n {
                    let b = i * n + j;
                    let nb = sigma[i] * n + sigma[j];
                    let perm = &block_perms[b][idx[b]];
                    for (k, &kk) in perm.iter().enumerate() {
                        map[lay.block_start[b] + k] = (lay.block_start[nb] + kk) as u8;
                    }
                }
            }
            out.push(map);
            if !advance(&mut idx, |b| block_perms[b].len()) {
                break;
            }
        }
    }
    out
}

fn advance(idx: &mut [usize], radix: impl Fn(usize) -> usize) -> bool {
    for p in (0..idx.len()).rev() {
        idx[p] += 1;
        if idx[p] < radix(p) {
            return true;
        }
        idx[p] = 0;
    }
    false
}

fn canonical_key(lay: &Layout, relabellings: &[Vec<u8>], table: &[u8]) -> Vec<u8> {
    let m = lay.m;
    let mut best: Option<Vec<u8>> = None;
    let mut buf = vec![0u8; m * m];
    for map in relabellings {
        for g in 0..m {
            for f in 0..m {
                let v = table[g * m + f];
                buf[map[g] as usize * m + map[f] as usize] = if v == UNSET { UNSET } else { map[v as usize] };
            }
        }
        if best.as_ref().is_none_or(|b| buf < *b) {
            best = Some(buf.clone());
        }
    }
    best.unwrap_or_default()
}

fn build(lay: &Layout, table: &[u8]) -> Category {
    let objects: Vec<String> = (0..lay.n).map(|i| format!("o{i}")).collect();
    let morphisms = (0..lay.m)
        .map(|f| Morphism {
            name: if f < lay.n {
                identity_name(&objects[f])
            } else {
                format!("m{f}")
            },
            source: lay.src[f],
            target: lay.tgt[f],
        })
        .collect();
    let compose = table.iter().map(|&v| (v != UNSET).then_some(v as usize)).collect();
    Category::from_parts_trusted(objects, morphisms, (0..lay.n).collect(), compose)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count_with(cats: &[Category], morphisms: usize, objects: usize) -> usize {
        cats.iter()
            .filter(|c| c.morphism_count() == morphisms && c.object_count() == objects)
            .count()
    }

    #[test]
    fn monoid_counts_match_known_sequence() {
        // monoids up to isomorphism: 1, 2, 7, 35, 228
        let cats = enumerate_categories(5);
        let monoids: Vec<usize> = (1..=5).map(|k| count_with(&cats, k, 1)).collect();
        assert_eq!(monoids, vec![1, 2, 7, 35, 228]);
    }

    #[test]
    fn small_counts() {
        let cats = enumerate_categories(3);
        assert_eq!(count_with(&cats, 0, 0), 1);
        // two objects, two morphisms: discrete pair
        assert_eq!(count_with(&cats, 2, 2), 1);
        // two objects, three morphisms: walking arrow, and a point beside either 2-element monoid
        assert_eq!(count_with(&cats, 3, 2), 3);
        assert_eq!(count_with(&cats, 3, 3), 1);
        for c in &cats {
            assert!(c.law_violations().is_empty());
        }
    }

    #[test]
    fn permutations_are_lexicographic() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
        assert_eq!(permutations(3)[1], vec![0, 2, 1]);
    }
}
