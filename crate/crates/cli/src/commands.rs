//! Command handlers. Each returns the report fields for the JSON envelope
//! plus the process exit code: 0 for pronormal or a true predicate, 1 for
//! not pronormal or a false predicate, 2 for inapplicable input or errors.

use anyhow::{anyhow, bail, Result};
use serde_json::{json, Map, Value};

use pronormal::criteria::{
    self, decide_product_pronormal, Decision, Reason, Verdict,
};
use pronormal::group::{Subgroup, DEFAULT_CLOSURE_CAP};
use pronormal::matgrp::DeskPipeline;
use pronormal::oracle;
use pronormal::perm::{self, Perm};
use pronormal::wreath::{GenericWreath, WreathFactor};

use crate::input::{self, Ambient};

pub struct Outcome {
    pub fields: Map<String, Value>,
    pub exit: u8,
}

fn exit_for(verdict: Verdict) -> u8 {
    match verdict {
        Verdict::Pronormal => 0,
        Verdict::NotPronormal => 1,
        Verdict::NotApplicable => 2,
    }
}

fn decision_fields(fields: &mut Map<String, Value>, decision: &Decision) -> Result<()> {
    fields.insert("verdict".into(), serde_json::to_value(decision.verdict)?);
    fields.insert("verified".into(), Value::Bool(decision.verified));
    fields.insert("reasons".into(), serde_json::to_value(&decision.reasons)?);
    Ok(())
}

fn subgroup_fields(s: &Subgroup) -> Result<Value> {
    Ok(json!({
        "order": s.order(),
        "index": s.index(),
        "generators": serde_json::to_value(s.generators())?,
    }))
}

fn required_subgroup(job: &Value, ambient: &Ambient) -> Result<Subgroup> {
    input::parse_subgroup(job, "subgroup", ambient)?
        .ok_or_else(|| anyhow!("input needs a \"subgroup\" generator list"))
}

/// Transitivity, primitivity and transposition content of a permutation
/// generating set, reported as decide diagnostics.
fn top_diagnostics(bars: &[Perm], degree: usize, budget: usize) -> Result<Value> {
    let transitive = perm::is_transitive(bars, degree);
    let primitive = transitive && perm::is_primitive(bars, degree)?;
    Ok(json!({
        "top_transitive": transitive,
        "top_primitive": primitive,
        "top_contains_transposition": perm::contains_transposition(bars, budget)?,
    }))
}

fn run_decide(job: &Value, ambient: &Ambient, budget: usize) -> Result<(Decision, Value)> {
    let h = required_subgroup(job, ambient)?;
    match ambient {
        Ambient::Wreath(w) => {
            let k = input::parse_subgroup(job, "K", ambient)?
                .unwrap_or_else(|| w.group().full_subgroup());
            let decision = decide_product_pronormal(w, &k, &h)?;
            let mut diagnostics = Vec::new();
            for (i, spec) in w.specs().iter().enumerate() {
                let image = w.project_subgroup(&h, i)?;
                let bars: Vec<Perm> = image
                    .generators()
                    .iter()
                    .map(WreathFactor::bar)
                    .collect::<pronormal::Result<_>>()?;
                let mut d = top_diagnostics(&bars, spec.n, budget)?;
                d.as_object_mut()
                    .expect("diagnostics are an object")
                    .insert("factor".into(), json!(i));
                diagnostics.push(d);
            }
            Ok((
                decision,
                json!({ "target_order": k.order(), "factors": diagnostics }),
            ))
        }
        Ambient::Pipeline(p) => {
            if job.get("K").is_some() {
                bail!("the matrix pipeline decides against its full ambient group only");
            }
            let decision = p.decide(&h)?;
            let tops: Vec<Perm> = h
                .generators()
                .iter()
                .map(GenericWreath::top_of)
                .collect::<pronormal::Result<_>>()?;
            let diagnostics = top_diagnostics(&tops, p.wreath().degree(), budget)?;
            Ok((
                decision,
                json!({ "target_order": p.ambient().order(), "top": diagnostics }),
            ))
        }
        Ambient::Plain(_) => {
            let decision = Decision::new(Verdict::NotApplicable).with(Reason::new(
                "ambient-not-wreath",
                "the structural criterion needs a wreath-shaped ambient group",
            ));
            Ok((decision, json!({ "subgroup_order": h.order() })))
        }
    }
}

pub fn decide(job: &Value, ambient: &Ambient, budget: usize) -> Result<Outcome> {
    let (decision, data) = run_decide(job, ambient, budget)?;
    let mut fields = Map::new();
    decision_fields(&mut fields, &decision)?;
    fields.insert("data".into(), data);
    Ok(Outcome {
        fields,
        exit: exit_for(decision.verdict),
    })
}

fn run_oracle(job: &Value, ambient: &Ambient, budget: usize) -> Result<(Decision, u64)> {
    let h = required_subgroup(job, ambient)?;
    let scope = input::parse_subgroup(job, "K", ambient)?;
    match scope {
        None => Ok((oracle::pronormal_by_definition(&h, budget)?, h.index())),
        Some(k) if k.is_full() => Ok((oracle::pronormal_by_definition(&h, budget)?, h.index())),
        Some(k) => {
            if !h.is_subset_of(&k) {
                bail!("\"subgroup\" must lie inside \"K\"");
            }
            let inner = k.to_group();
            let rebased = h.rebase(&inner)?;
            Ok((
                oracle::pronormal_by_definition(&rebased, budget)?,
                rebased.index(),
            ))
        }
    }
}

pub fn oracle_command(job: &Value, ambient: &Ambient, budget: usize) -> Result<Outcome> {
    let (decision, index) = run_oracle(job, ambient, budget)?;
    let mut fields = Map::new();
    decision_fields(&mut fields, &decision)?;
    fields.insert("data".into(), json!({ "index_in_target": index }));
    Ok(Outcome {
        fields,
        exit: exit_for(decision.verdict),
    })
}

pub fn crosscheck(job: &Value, ambient: &Ambient, budget: usize) -> Result<Outcome> {
    let (structural, data) = run_decide(job, ambient, budget)?;
    let (definition, _) = run_oracle(job, ambient, budget)?;
    let mut fields = Map::new();
    fields.insert("decide".into(), serde_json::to_value(&structural)?);
    fields.insert("oracle".into(), serde_json::to_value(&definition)?);
    fields.insert("data".into(), data);
    if structural.verdict == Verdict::NotApplicable {
        fields.insert("agree".into(), Value::Null);
        fields.insert("verdict".into(), serde_json::to_value(Verdict::NotApplicable)?);
        return Ok(Outcome { fields, exit: 2 });
    }
    let agree = structural.is_pronormal() == definition.is_pronormal();
    fields.insert("agree".into(), Value::Bool(agree));
    fields.insert("verdict".into(), serde_json::to_value(definition.verdict)?);
    if !agree {
        bail!(
            "crosscheck disagreement: decide says {:?}, oracle says {:?}",
            structural.verdict,
            definition.verdict
        );
    }
    Ok(Outcome {
        fields,
        exit: exit_for(definition.verdict),
    })
}

pub fn reduce(job: &Value, ambient: &Ambient, budget: usize) -> Result<Outcome> {
    let h = required_subgroup(job, ambient)?;
    let p = match job.get("p") {
        None => 2,
        Some(v) => v
            .as_u64()
            .ok_or_else(|| anyhow!("\"p\" must be a prime number"))?,
    };
    let normal_part = match ambient {
        Ambient::Wreath(w) => w.base_subgroup()?,
        Ambient::Pipeline(pipe) => pipe.two_core().clone(),
        Ambient::Plain(g) => g.p_core(p)?,
    };
    let reduced = oracle::normalizer_reduction(&normal_part, &h, p, budget, true)?;
    let quotient = match &reduced.quotient_form {
        None => Value::Null,
        Some(qf) => json!({
            "order": qf.quotient.group().order(),
            "image_order": qf.reduced_image.order(),
        }),
    };
    let mut fields = Map::new();
    fields.insert(
        "data".into(),
        json!({
            "prime": reduced.prime,
            "normal_part_order": normal_part.order(),
            "sylow_meet_order": reduced.sylow_meet.order(),
            "overlap_normalizer_order": reduced.overlap_normalizer.order(),
            "shared_kernel_order": reduced.shared_kernel.order(),
            "reduced_subgroup": subgroup_fields(&reduced.reduced_subgroup)?,
            "reduced_target": subgroup_fields(&reduced.reduced_target)?,
            "strictly_smaller": reduced.strictly_smaller,
            "normal_part_class_verified": reduced.normal_part_class_verified,
            "quotient": quotient,
        }),
    );
    fields.insert("reasons".into(), serde_json::to_value(&reduced.notes)?);
    Ok(Outcome { fields, exit: 0 })
}

pub fn enumerate(job: &Value, ambient: &Ambient, budget: usize) -> Result<Outcome> {
    let g = ambient.group().clone();
    let sylow = g.sylow(2)?;
    let overgroups = g.overgroups_of(&sylow, budget)?;
    let seed = input::parse_subgroup(job, "subgroup", ambient)?;
    let mut rows = Vec::new();
    for s in &overgroups {
        if let Some(seed) = &seed {
            if !seed.is_subset_of(s) {
                continue;
            }
        }
        let mut row = subgroup_fields(s)?;
        let row_map = row.as_object_mut().expect("subgroup fields are an object");
        row_map.insert("normal".into(), Value::Bool(s.is_normal()?));
        match ambient {
            Ambient::Wreath(w) => {
                let flags: Vec<bool> = (0..w.arity())
                    .map(|i| w.bar_is_full(s, i))
                    .collect::<pronormal::Result<_>>()?;
                row_map.insert("bar_full".into(), serde_json::to_value(flags)?);
            }
            Ambient::Pipeline(p) => {
                row_map.insert(
                    "bar_full".into(),
                    Value::Bool(tops_exhaust(p.wreath(), s)?),
                );
            }
            Ambient::Plain(_) => {}
        }
        rows.push(row);
    }
    let mut fields = Map::new();
    fields.insert(
        "data".into(),
        json!({
            "ambient_order": g.order(),
            "sylow_order": sylow.order(),
            "count": rows.len(),
            "subgroups": rows,
        }),
    );
    Ok(Outcome { fields, exit: 0 })
}

fn tops_exhaust(w: &GenericWreath, s: &Subgroup) -> Result<bool> {
    let mut tops = std::collections::BTreeSet::new();
    for e in s.elements() {
        tops.insert(GenericWreath::top_of(e)?);
    }
    let full: usize = (1..=w.degree()).product();
    Ok(tops.len() == full)
}

pub fn classify(job: &Value) -> Result<Outcome> {
    let pairs = input::parse_shape_pairs(job)?;
    let holds = criteria::symplectic_criterion(&pairs)?;
    let rows: Vec<Value> = pairs
        .iter()
        .map(|&(n, q)| {
            json!({
                "n": n,
                "q": q,
                "constrains": q % 8 == 3 || q % 8 == 5,
                "degree_admissible": criteria::admissible_degree(n),
            })
        })
        .collect();
    let mut fields = Map::new();
    fields.insert("predicate".into(), Value::Bool(holds));
    fields.insert("data".into(), json!({ "factors": rows }));
    Ok(Outcome {
        fields,
        exit: if holds { 0 } else { 1 },
    })
}

pub fn example_walkthrough(budget: usize) -> Result<Outcome> {
    let pipe = DeskPipeline::build(3, DEFAULT_CLOSURE_CAP)?;
    let m = pipe.ambient().clone();
    let sylow = m.sylow(2)?;
    let shadow = pipe.quotient().project_subgroup(&sylow)?;
    let mut rows = Vec::new();
    for image in pipe
        .quotient()
        .group()
        .overgroups_of(&shadow, budget)?
    {
        let h = pipe.quotient().preimage_subgroup(&image)?;
        if !tops_exhaust(pipe.wreath(), &h)? {
            continue;
        }
        let decision = pipe.decide(&h)?;
        rows.push(json!({
            "order": h.order(),
            "verdict": serde_json::to_value(decision.verdict)?,
            "verified": decision.verified,
            "reasons": serde_json::to_value(&decision.reasons)?,
        }));
    }
    let quaternion_wreath = pipe.two_core().join(&pipe.wreath().top_subgroup()?)?;
    let quaternion_verdict = pipe.decide(&quaternion_wreath)?.verdict;
    if quaternion_verdict != Verdict::NotPronormal {
        bail!("the quaternion wreath subgroup must come back not pronormal");
    }
    let target = pipe.target();
    let collapsed = target.top_subgroup()?.join(
        &target
            .product()
            .embed_subgroup(0, &target.factor(0).zero_sum_subgroup()?)?,
    )?;
    let preimage = pipe.preimage_subgroup(&collapsed)?;
    let preimage_verdict = pipe.decide(&preimage)?.verdict;
    if preimage_verdict != Verdict::Pronormal {
        bail!("the collapsed-product preimage must come back pronormal");
    }
    let mut fields = Map::new();
    fields.insert(
        "data".into(),
        json!({
            "ambient_order": m.order(),
            "two_core_order": pipe.two_core().order(),
            "quotient_order": pipe.quotient().group().order(),
            "sylow_order": sylow.order(),
            "corpus": rows,
            "landmarks": [
                {
                    "name": "quaternion-wreath",
                    "order": quaternion_wreath.order(),
                    "verdict": serde_json::to_value(quaternion_verdict)?,
                },
                {
                    "name": "collapsed-product-preimage",
                    "order": preimage.order(),
                    "verdict": serde_json::to_value(preimage_verdict)?,
                },
            ],
        }),
    );
    Ok(Outcome { fields, exit: 0 })
}
