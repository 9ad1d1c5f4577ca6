//! Greedy shrinking of failing instances.

use crate::daft::{verify_daft, TheoremInstance};

/// True when the instance meets its preconditions and its two sides differ.
pub fn is_disagreement(instance: &TheoremInstance) -> bool {
    matches!(verify_daft(instance), Ok(r) if !r.agreement)
}

/// Removes source objects, then target objects outside the image, one at a
/// time in index order, keeping each removal under which `still_fails` holds.
/// Repeats until no single removal survives. Deterministic.
pub fn minimize(instance: &TheoremInstance, still_fails: &mut dyn FnMut(&TheoremInstance) -> bool) -> TheoremInstance {
    let mut best = instance.clone();
    loop {
        let mut improved = false;
        let n = best.f.source().object_count();
        let m = best.f.target().object_count();
        let all_t: Vec<usize> = (0..m).collect();
        for drop in 0..n {
            let keep: Vec<usize> = (0..n).filter(|&o| o != drop).collect();
            if try_step(&mut best, &keep, &all_t, still_fails) {
                improved = true;
                break;
            }
        }
        if improved {
            continue;
        }
        let all_s: Vec<usize> = (0..n).collect();
        for drop in 0..m {
            if best.f.object_map().contains(&drop) {
                continue;
            }
            let keep: Vec<usize> = (0..m).filter(|&o| o != drop).collect();
            if try_step(&mut best, &all_s, &keep, still_fails) {
                improved = true;
                break;
            }
        }
        if !improved {
            return best;
        }
    }
}

fn try_step(
    best: &mut TheoremInstance,
    keep_source: &[usize],
    keep_target: &[usize],
    still_fails: &mut dyn FnMut(&TheoremInstance) -> bool,
) -> bool {
    let Ok(f) = best.f.restrict(keep_source, keep_target) else {
        return false;
    };
    let candidate = TheoremInstance {
        id: best.id.clone(),
        f,
        pair: best.pair,
        size_bound: best.size_bound,
    };
    if still_fails(&candidate) {
        *best = candidate;
        true
    } else {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::daft::arc;
    use crate::fincat::examples::*;
    use crate::fincat::Functor;
    use crate::weights::TablePair;

    #[test]
    fn shrinks_to_a_minimal_witness() {
        let dm = arc(diamond());
        let c3 = arc(chain3());
        // constant at "mid": property "some source object is sent to mid and the target has top"
        let f = Functor::constant(dm, c3, 1);
        let inst = TheoremInstance {
            id: "m".into(),
            f,
            pair: TablePair::all().next().unwrap(),
            size_bound: 5,
        };
        let mut prop =
            |i: &TheoremInstance| i.f.source().object_count() > 0 && i.f.target().find_object("top").is_some();
        let small = minimize(&inst, &mut prop);
        assert_eq!(small.f.source().object_count(), 1);
        assert_eq!(small.f.target().object_names(), ["mid", "top"]);
        assert_eq!(minimize(&inst, &mut prop), small);
    }

    #[test]
    fn agreement_is_not_a_disagreement() {
        let c2 = arc(chain2());
        let inst = TheoremInstance {
            id: "m".into(),
            f: Functor::identity(c2),
            pair: TablePair::all().next().unwrap(),
            size_bound: 5,
        };
        assert!(!is_disagreement(&inst));
    }
}
