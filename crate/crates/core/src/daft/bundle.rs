//! Self-contained instance files (`.inst`): header lines, then the source
//! and target categories and the functor in their own formats.
//!
//! ```text
//! id corpus/example
//! pair connected discrete
//! bound 5
//! expect agreement
//! [source]
//! object a1 a2
//! [target]
//! object *
//! [functor]
//! object a1 |-> *
//! object a2 |-> *
//! ```

use std::sync::Arc;

use serde::Serialize;

use crate::daft::TheoremInstance;
use crate::error::{Error, Result};
use crate::format::{parse_category, parse_functor, write_category, write_functor};
use crate::presheaf::WeightClass;
use crate::weights::{TablePair, DEFAULT_BOUND};

/// What the harness should observe for an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expectation {
    Agreement,
    PreconditionFailure,
}

pub fn parse_bundle(text: &str) -> Result<(TheoremInstance, Expectation)> {
    let mut id = None;
    let mut pair = None;
    let mut bound = DEFAULT_BOUND;
    let mut expect = Expectation::Agreement;
    let mut sections: [String; 3] = Default::default();
    let mut current: Option<usize> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |m: String| Error::Parse {
            line: i + 1,
            message: m,
        };
        match line {
            "[source]" => current = Some(0),
            "[target]" => current = Some(1),
            "[functor]" => current = Some(2),
            _ => match current {
                // keep line numbers stable inside sections
                Some(s) => {
                    sections[s].push_str(raw);
                    sections[s].push('\n');
                }
                None => {
                    let toks: Vec<&str> = line.split_whitespace().collect();
                    match toks.as_slice() {
                        ["id", v] => id = Some(v.to_string()),
                        ["pair", psi, phi] => {
                            pair = Some(TablePair::new(
                                psi.parse::<WeightClass>()?,
                                phi.parse::<WeightClass>()?,
                            )?)
                        }
                        ["bound", b] => bound = b.parse().map_err(|_| err(format!("bad bound {b}")))?,
                        ["expect", "agreement"] => expect = Expectation::Agreement,
                        ["expect", "precondition-failure"] => expect = Expectation::PreconditionFailure,
                        _ => return Err(err(format!("unrecognised header '{line}'"))),
                    }
                }
            },
        }
    }
    let missing = |what: &str| Error::Parse {
        line: 0,
        message: format!("instance is missing {what}"),
    };
    let source = Arc::new(parse_category(&sections[0])?);
    let target = Arc::new(parse_category(&sections[1])?);
    let f = parse_functor(&sections[2], &source, &target)?;
    Ok((
        TheoremInstance {
            id: id.ok_or_else(|| missing("an id"))?,
            f,
            pair: pair.ok_or_else(|| missing("a pair"))?,
            size_bound: bound,
        },
        expect,
    ))
}

pub fn write_bundle(instance: &TheoremInstance, expect: Expectation) -> String {
    let expect = match expect {
        Expectation::Agreement => "agreement",
        Expectation::PreconditionFailure => "precondition-failure",
    };
    format!(
        "id {}\npair {} {}\nbound {}\nexpect {}\n[source]\n{}[target]\n{}[functor]\n{}",
        instance.id,
        instance.pair.psi,
        instance.pair.phi,
        instance.size_bound,
        expect,
        write_category(instance.f.source()),
        write_category(instance.f.target()),
        write_functor(&instance.f, "source", "target"),
    )
}

const CORPUS: [&str; 11] = [
    include_str!("../../corpus/adjoint-chain-inclusion.inst"),
    include_str!("../../corpus/multiadjoint-discrete-pair.inst"),
    include_str!("../../corpus/multiadjoint-split-chain.inst"),
    include_str!("../../corpus/not-adjoint-constant-top.inst"),
    include_str!("../../corpus/not-multiadjoint-diamond-fold.inst"),
    include_str!("../../corpus/not-pluriadjoint-diamond-meet.inst"),
    include_str!("../../corpus/pluriadjoint-diamond-collapse.inst"),
    include_str!("../../corpus/semiadjoint-chain-inclusion.inst"),
    include_str!("../../corpus/semiadjoint-idempotent-embedding.inst"),
    include_str!("../../corpus/virtual-idempotent-collapse.inst"),
    include_str!("../../corpus/virtual-parallel-swap.inst"),
];

/// The handcrafted corpus, sorted by id.
pub fn corpus() -> Vec<(TheoremInstance, Expectation)> {
    let mut out: Vec<_> = CORPUS
        .iter()
        .map(|text| parse_bundle(text).expect("corpus files are valid"))
        .collect();
    out.sort_by(|a, b| a.0.id.cmp(&b.0.id));
    out
}
