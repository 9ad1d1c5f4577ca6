use std::path::Path;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::adjunction::{compose_adjunctions_mixed, find_right_adjoint, is_phi_admissible, verify_adjunction};
use crate::cli::{Command, DaftArgs, FunctorArgs, Inputs, PosetAftArgs, Report, RunConfig};
use crate::daft::{
    generate_instances, is_disagreement, minimize, parse_bundle, verify_daft, write_bundle, CollapseStats, Expectation,
    Profile, TheoremInstance, VerdictRecord, COMPOSITE_NOTE, VIRTUAL_NOTE,
};
use crate::error::{Error, Result};
use crate::fincat::{Category, Functor, NaturalTransformation};
use crate::format::{
    parse_category, parse_functor, parse_poset, parse_presheaf, write_category, write_functor, write_poset,
    write_presheaf,
};
use crate::posetlab::{
    brute_force_right_adjoint, enumerate_lattices, extend_along_yoneda, for_each_monotone_map, galois_right_adjoint,
    join_failure, presentable_aft_check, JoinFailure, MonotoneMap, Poset,
};
use crate::presheaf::{classify, hom_presheaf, WeightClass};
use crate::weights::{enumerate_shapes, is_cocontinuous, BOUND_RATIONALE};

const COLLAPSE_NOTE: &str = "finite categories with all finite colimits are preorders; \
collapse statistics record how many instances are preorders";
const EMPTY_CLASS_NOTE: &str = "the empty class has no shapes; cocontinuity for it is vacuous";
const FINITE_POSET_NOTE: &str =
    "on finite posets every directed subset has a maximum, so the ideal completion is the identity";

pub(crate) fn dispatch(command: &Command, config: RunConfig) -> Result<Report> {
    let mut inputs = Inputs::default();
    let mut report = match command {
        Command::CheckAdjoint(args) => {
            let f = load_functor(&mut inputs, args)?;
            check_adjoint(config, &f)
        }
        Command::Classify { base, presheaf, class } => {
            let c = load_category(&mut inputs, base)?;
            let text = inputs.read(presheaf)?;
            let w = parse_presheaf(&text, &c)?;
            let classes = class.map_or(WeightClass::ALL.to_vec(), |k| vec![k]);
            let mut report = Report::new(config, Inputs::default());
            let results: Vec<_> = classes.iter().map(|&k| classify(&w, k)).collect();
            for r in &results {
                report.summary.push(format!("{}: {}", r.class, r.holds));
                if let Some(n) = r.note {
                    report.note(n);
                }
            }
            report.holds = class.is_none() || results.iter().all(|r| r.holds);
            report.verdict = json!({ "classifications": results });
            report
        }
        Command::Admissible { functor, class } => {
            let f = load_functor(&mut inputs, functor)?;
            admissible(config, &f, *class)
        }
        Command::Cocontinuous { functor, class, bound } => {
            let f = load_functor(&mut inputs, functor)?;
            cocontinuous(config, &f, *class, *bound)
        }
        Command::Daft(args) => daft(config, &mut inputs, args)?,
        Command::ComposeAdjunctions { x, y, z, first, second } => {
            let x = load_category(&mut inputs, x)?;
            let y = load_category(&mut inputs, y)?;
            let z = load_category(&mut inputs, z)?;
            let text = inputs.read(first)?;
            let l = parse_functor(&text, &y, &x)?;
            let text = inputs.read(second)?;
            let l2 = parse_functor(&text, &y, &z)?;
            compose(config, &l, &l2)?
        }
        Command::PosetAft(args) => poset_aft(config, &mut inputs, args)?,
        Command::GenCorpus {
            profile,
            seed,
            count,
            bound,
            out,
        } => {
            let mut p = Profile::new(*profile, *count);
            p.size_bound = *bound;
            let instances = generate_instances(*seed, &p);
            std::fs::create_dir_all(out)?;
            let mut files = Vec::new();
            for inst in &instances {
                let name = format!("{}.inst", inst.id.replace('/', "-"));
                std::fs::write(out.join(&name), write_bundle(inst, Expectation::Agreement))?;
                files.push(name);
            }
            let mut report = Report::new(config, Inputs::default());
            report
                .summary
                .push(format!("wrote {} instances to {}", files.len(), out.display()));
            report.verdict = json!({ "files": files, "collapse": CollapseStats::of(&instances) });
            report
        }
    };
    inputs.finish();
    report.inputs = inputs;
    Ok(report)
}

fn load_category(inputs: &mut Inputs, path: &Path) -> Result<Arc<Category>> {
    let text = inputs.read(path)?;
    Ok(Arc::new(parse_category(&text)?))
}

fn load_functor(inputs: &mut Inputs, args: &FunctorArgs) -> Result<Functor> {
    let a = load_category(inputs, &args.source)?;
    let b = load_category(inputs, &args.target)?;
    let text = inputs.read(&args.functor)?;
    parse_functor(&text, &a, &b)
}

fn object_table(f: &Functor) -> Vec<(String, String)> {
    f.source()
        .objects()
        .map(|o| {
            (
                f.source().object_name(o).to_string(),
                f.target().object_name(f.on_object(o)).to_string(),
            )
        })
        .collect()
}

fn components(t: &NaturalTransformation) -> Vec<(String, String)> {
    let a = t.source().source();
    let b = t.source().target();
    a.objects()
        .map(|o| {
            (
                a.object_name(o).to_string(),
                b.morphism_name(t.component(o)).to_string(),
            )
        })
        .collect()
}

fn check_adjoint(config: RunConfig, f: &Functor) -> Report {
    let mut report = Report::new(config, Inputs::default());
    match find_right_adjoint(f) {
        Ok(adj) => {
            report.summary.push("right adjoint found".into());
            for (a, b) in object_table(&adj.right) {
                report.summary.push(format!("  {a} |-> {b}"));
            }
            report.verdict = json!({
                "adjoint": true,
                "right": object_table(&adj.right),
                "unit": components(&adj.unit),
                "counit": components(&adj.counit),
            });
            report.witness("right adjoint", "fun", write_functor(&adj.right, "target", "source"));
        }
        Err(b) => {
            let name = f.target().object_name(b).to_string();
            report.holds = false;
            report
                .summary
                .push(format!("no right adjoint: no universal arrow into {name}"));
            report.verdict = json!({ "adjoint": false, "failing_object": name });
            let w = hom_presheaf(f, b).expect("object of the target");
            report.witness(
                format!("hom-presheaf at {name}, not representable (classify against the source with class empty)"),
                "psh",
                write_presheaf(&w),
            );
        }
    }
    report
}

fn admissible(config: RunConfig, f: &Functor, class: WeightClass) -> Report {
    let mut report = Report::new(config, Inputs::default());
    let r = is_phi_admissible(f, class);
    report.holds = r.holds;
    for v in &r.objects {
        if let Some(n) = v.classification.note {
            report.note(n);
        }
    }
    match r.failing_object() {
        None => report.summary.push(format!("{class}-admissible")),
        Some(b) => {
            let name = f.target().object_name(b);
            report.summary.push(format!(
                "not {class}-admissible: hom-presheaf at {name} is outside the class"
            ));
            let w = hom_presheaf(f, b).expect("object of the target");
            report.witness(
                format!("hom-presheaf at {name} (classify against the source with class {class})"),
                "psh",
                write_presheaf(&w),
            );
        }
    }
    report.verdict = serde_json::to_value(&r).expect("serialises");
    report
}

fn cocontinuous(config: RunConfig, f: &Functor, class: WeightClass, bound: usize) -> Report {
    let mut report = Report::new(config, Inputs::default());
    let v = is_cocontinuous(f, class, bound);
    report.holds = v.holds;
    report.note(BOUND_RATIONALE);
    if class == WeightClass::Empty {
        report.note(EMPTY_CLASS_NOTE);
    }
    let shapes = enumerate_shapes(class, bound).shapes.len();
    let mut verdict = json!({ "class": class, "size_bound": bound, "holds": v.holds, "shapes": shapes });
    if let (Some(d), Some(cocone)) = (&v.failing, &v.cocone) {
        let c = f.source();
        let legs: Vec<(String, String)> = d
            .source()
            .objects()
            .map(|o| {
                (
                    d.source().object_name(o).to_string(),
                    c.morphism_name(cocone.legs[o]).to_string(),
                )
            })
            .collect();
        verdict["failing_colimit"] = json!({ "apex": c.object_name(cocone.apex), "legs": legs });
        report.summary.push(format!(
            "not {class}-cocontinuous: the colimit at {} of a diagram is not preserved",
            c.object_name(cocone.apex)
        ));
        report.witness("failing diagram shape", "fincat", write_category(d.source()));
        report.witness("failing diagram", "fun", write_functor(d, "shape", "source"));
    } else {
        report
            .summary
            .push(format!("{class}-cocontinuous up to {bound} morphisms"));
    }
    report.verdict = verdict;
    report
}

#[derive(Debug, Serialize)]
struct InstanceOutcome {
    id: String,
    expected: Expectation,
    met: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    record: Option<VerdictRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    precondition_failure: Option<String>,
}

#[derive(Debug, Default, Serialize)]
struct DaftSummary {
    instances: usize,
    agreements: usize,
    disagreements: usize,
    precondition_failures: usize,
    expectations_missed: usize,
    /// Instances that are admissible but not cocontinuous.
    admissible_not_cocontinuous: usize,
    lhs_true: usize,
}

fn daft(config: RunConfig, inputs: &mut Inputs, args: &DaftArgs) -> Result<Report> {
    let (mut cases, source): (Vec<(TheoremInstance, Expectation)>, &str) = if args.instances.is_empty() {
        let kind = config.profile.expect("resolved by RunConfig");
        let mut p = Profile::new(kind, args.count);
        p.size_bound = args.bound;
        let gen = generate_instances(args.seed, &p);
        (
            gen.into_iter().map(|i| (i, Expectation::Agreement)).collect(),
            "generated",
        )
    } else {
        let mut v = Vec::new();
        for path in &args.instances {
            let text = inputs.read(path)?;
            let (mut inst, e) = parse_bundle(&text)?;
            inst.size_bound = args.bound;
            v.push((inst, e));
        }
        (v, "files")
    };
    cases.sort_by(|a, b| a.0.id.cmp(&b.0.id));
    let outcomes: Vec<(InstanceOutcome, Option<String>)> = cases
        .par_iter()
        .map(|(inst, expected)| run_instance(inst, *expected))
        .collect::<Result<_>>()?;

    let mut report = Report::new(config, Inputs::default());
    report.note(COMPOSITE_NOTE);
    report.note(BOUND_RATIONALE);
    let mut summary = DaftSummary::default();
    let mut records = Vec::new();
    for (o, minimized) in outcomes {
        summary.instances += 1;
        match &o.record {
            Some(r) => {
                summary.agreements += r.agreement as usize;
                summary.disagreements += !r.agreement as usize;
                summary.admissible_not_cocontinuous += (r.lhs && !r.cocontinuous) as usize;
                summary.lhs_true += r.lhs as usize;
                if r.psi == WeightClass::Empty {
                    report.note(VIRTUAL_NOTE);
                }
                if matches!(r.psi, WeightClass::Small | WeightClass::Finite) {
                    report.note(COLLAPSE_NOTE);
                }
                if !r.agreement {
                    report.summary.push(format!("DISAGREEMENT {}", r.id));
                }
            }
            None => summary.precondition_failures += 1,
        }
        if !o.met {
            summary.expectations_missed += 1;
            report.summary.push(format!("expectation missed: {}", o.id));
        }
        if let Some(bundle) = minimized {
            report.witness(format!("minimized disagreement from {}", o.id), "inst", bundle);
        }
        records.push(o);
    }
    report.holds = summary.expectations_missed == 0 && summary.admissible_not_cocontinuous == 0;
    report.summary.insert(
        0,
        format!(
            "{} instances ({source}): {} agreements, {} disagreements, {} precondition failures",
            summary.instances, summary.agreements, summary.disagreements, summary.precondition_failures
        ),
    );
    let collapse = CollapseStats::of(&cases.iter().map(|c| c.0.clone()).collect::<Vec<_>>());
    report.verdict = json!({ "summary": summary, "collapse": collapse, "records": records });
    Ok(report)
}

/// Runs one instance; a disagreement comes back with its minimized bundle.
fn run_instance(inst: &TheoremInstance, expected: Expectation) -> Result<(InstanceOutcome, Option<String>)> {
    let mut out = InstanceOutcome {
        id: inst.id.clone(),
        expected,
        met: false,
        record: None,
        precondition_failure: None,
    };
    let mut minimized = None;
    match verify_daft(inst) {
        Ok(r) => {
            out.met = expected == Expectation::Agreement && r.agreement;
            if !r.agreement {
                let small = minimize(inst, &mut is_disagreement);
                minimized = Some(write_bundle(&small, Expectation::Agreement));
            }
            out.record = Some(r);
        }
        Err(e @ Error::PreconditionFailure { .. }) => {
            out.met = expected == Expectation::PreconditionFailure;
            out.precondition_failure = Some(e.to_string());
        }
        Err(e) => return Err(e),
    }
    Ok((out, minimized))
}

fn compose(config: RunConfig, l: &Functor, l2: &Functor) -> Result<Report> {
    let no_right = |which: &str, f: &Functor, b| {
        Error::InvalidFunctor(format!(
            "the {which} functor has no right adjoint (no universal arrow into {})",
            f.target().object_name(b)
        ))
    };
    let first = find_right_adjoint(l).map_err(|b| no_right("first", l, b))?;
    let second = find_right_adjoint(l2).map_err(|b| no_right("second", l2, b))?;
    let mut report = Report::new(config, Inputs::default());
    match compose_adjunctions_mixed(&first, &second) {
        Ok(adj) => {
            let triangles = verify_adjunction(&adj)?;
            report.holds = triangles.is_none();
            report.summary.push(if report.holds {
                "composite adjunction satisfies both triangle identities".into()
            } else {
                format!("composite fails verification: {triangles:?}")
            });
            report.verdict = json!({
                "composed": true,
                "triangle_failure": triangles,
                "left": object_table(&adj.left),
                "right": object_table(&adj.right),
                "unit": components(&adj.unit),
                "counit": components(&adj.counit),
            });
            report.witness(
                "composite left adjoint X -> Z",
                "fun",
                write_functor(&adj.left, "x", "z"),
            );
            report.witness(
                "composite right adjoint Z -> X",
                "fun",
                write_functor(&adj.right, "z", "x"),
            );
        }
        Err(Error::HypothesisFailure { cell, object }) => {
            report.holds = false;
            report
                .summary
                .push(format!("hypothesis failure: {cell} is not invertible at {object}"));
            report.verdict = json!({
                "composed": false,
                "hypothesis_failure": { "cell": cell.to_string(), "object": object },
            });
        }
        Err(e) => return Err(e),
    }
    report.witness(
        "right adjoint of the first functor",
        "fun",
        write_functor(&first.right, "x", "y"),
    );
    report.witness(
        "right adjoint of the second functor",
        "fun",
        write_functor(&second.right, "z", "y"),
    );
    Ok(report)
}

fn load_poset(inputs: &mut Inputs, path: &Path) -> Result<Arc<Poset>> {
    let text = inputs.read(path)?;
    Ok(Arc::new(parse_poset(&text)?))
}

fn load_map(inputs: &mut Inputs, args: &PosetAftArgs) -> Result<MonotoneMap> {
    let (Some(s), Some(t), Some(m)) = (&args.source, &args.target, &args.map) else {
        unreachable!("clap requires the three files without --exhaustive");
    };
    let p = load_poset(inputs, s)?;
    let l = load_poset(inputs, t)?;
    let text = inputs.read(m)?;
    let f = parse_functor(&text, &Arc::new(p.to_category()), &Arc::new(l.to_category()))?;
    MonotoneMap::new(p, l, f.object_map().to_vec())
}

fn map_table(m: &MonotoneMap) -> Vec<(String, String)> {
    m.source()
        .elements()
        .map(|a| (m.source().name(a).to_string(), m.target().name(m.apply(a)).to_string()))
        .collect()
}

fn describe_join_failure(m: &MonotoneMap, j: JoinFailure) -> String {
    match j {
        JoinFailure::Empty => "the least element is not preserved".into(),
        JoinFailure::Binary { left, right } => format!(
            "the join of {} and {} is not preserved",
            m.source().name(left),
            m.source().name(right)
        ),
    }
}

fn poset_aft(config: RunConfig, inputs: &mut Inputs, args: &PosetAftArgs) -> Result<Report> {
    let mut report = Report::new(config, Inputs::default());
    report.note(FINITE_POSET_NOTE);
    if let Some(max) = args.exhaustive {
        let lattices: Vec<Arc<Poset>> = enumerate_lattices(max).into_iter().map(Arc::new).collect();
        let pairs: Vec<(usize, usize)> = (0..lattices.len())
            .flat_map(|i| (0..lattices.len()).map(move |j| (i, j)))
            .collect();
        let per_pair: Vec<(usize, usize, Vec<serde_json::Value>)> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let (mut maps, mut adjoints, mut exceptions) = (0, 0, Vec::new());
                for_each_monotone_map(&lattices[i], &lattices[j], &mut |m| {
                    maps += 1;
                    let adjoint = brute_force_right_adjoint(m).is_some();
                    let preserves = join_failure(m).expect("lattices").is_none();
                    adjoints += adjoint as usize;
                    if adjoint != preserves {
                        exceptions.push(json!({ "source": i, "target": j, "map": m.map() }));
                    }
                });
                (maps, adjoints, exceptions)
            })
            .collect();
        let maps: usize = per_pair.iter().map(|p| p.0).sum();
        let adjoints: usize = per_pair.iter().map(|p| p.1).sum();
        let exceptions: Vec<_> = per_pair.into_iter().flat_map(|p| p.2).collect();
        report.holds = exceptions.is_empty();
        report.summary.push(format!(
            "{} lattices, {maps} monotone maps, {adjoints} left adjoints, {} exceptions",
            lattices.len(),
            exceptions.len()
        ));
        report.verdict = json!({
            "max_size": max,
            "lattices": lattices.len(),
            "maps": maps,
            "left_adjoints": adjoints,
            "exceptions": exceptions,
        });
        return Ok(report);
    }
    let f = load_map(inputs, args)?;
    if args.presentable {
        let g = extend_along_yoneda(&f)?;
        let holds = presentable_aft_check(&g)?;
        report.holds = holds;
        let preserves = join_failure(&g)?.is_none();
        let adjoint = brute_force_right_adjoint(&g).is_some();
        report.summary.push(format!(
            "extension to downsets: preserves joins {preserves}, left adjoint {adjoint}"
        ));
        report.verdict = json!({
            "extension": map_table(&g),
            "preserves_joins": preserves,
            "left_adjoint": adjoint,
            "agreement": holds,
        });
        report.witness("downset completion of the source", "poset", write_poset(g.source()));
        report.witness(
            "extension along the downset embedding",
            "fun",
            write_functor(&g.to_functor(), "downsets", "target"),
        );
        return Ok(report);
    }
    let galois = galois_right_adjoint(&f)?;
    let brute = brute_force_right_adjoint(&f);
    let holds = galois.is_ok() == brute.is_some();
    report.holds = holds;
    let mut verdict = json!({
        "preserves_joins": galois.is_ok(),
        "left_adjoint": brute.is_some(),
        "agreement": holds,
    });
    match (&galois, &brute) {
        (Ok(g), _) => {
            verdict["right_adjoint"] = json!(map_table(g));
            report.summary.push("preserves joins; right adjoint:".into());
            for (b, a) in map_table(g) {
                report.summary.push(format!("  {b} |-> {a}"));
            }
            report.witness(
                "right adjoint",
                "fun",
                write_functor(&g.to_functor(), "target", "source"),
            );
        }
        (Err(j), _) => {
            let why = describe_join_failure(&f, *j);
            verdict["join_failure"] = json!(why);
            report
                .summary
                .push(format!("not join-preserving: {why}; no right adjoint"));
        }
    }
    report.verdict = verdict;
    Ok(report)
}
