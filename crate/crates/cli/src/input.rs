//! Input parsing: the job JSON names an ambient group, and generators parse
//! against the declared ambient shape.

use std::io::Read;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::Value;

use pronormal::elem::Elem;
use pronormal::group::{Group, Subgroup, DEFAULT_CLOSURE_CAP};
use pronormal::matgrp::{self, DeskPipeline, GFMatrix};
use pronormal::perm::Perm;
use pronormal::wreath::{FactorSpec, GenWreathElem, WreathElem, WreathProduct};

pub enum Ambient {
    Wreath(WreathProduct),
    Pipeline(DeskPipeline),
    Plain(Group),
}

impl Ambient {
    pub fn group(&self) -> &Group {
        match self {
            Ambient::Wreath(w) => w.group(),
            Ambient::Pipeline(p) => p.ambient(),
            Ambient::Plain(g) => g,
        }
    }
}

pub fn read_job(path: Option<&Path>) -> Result<Value> {
    let text = match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .with_context(|| format!("cannot read input file {}", p.display()))?,
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .context("cannot read standard input")?;
            buf
        }
    };
    serde_json::from_str(&text).context("input is not valid JSON")
}

pub fn parse_ambient(job: &Value) -> Result<Ambient> {
    let spec = job
        .get("ambient")
        .ok_or_else(|| anyhow!("input needs an \"ambient\" field"))?;
    if let Some(factors) = spec.get("factors") {
        let list = factors
            .as_array()
            .ok_or_else(|| anyhow!("\"factors\" must be an array of {{p, n}} objects"))?;
        let mut shapes = Vec::new();
        for f in list {
            let p = field_u64(f, "p")?;
            let n = field_u64(f, "n")? as usize;
            shapes.push(FactorSpec { p, n });
        }
        if shapes.is_empty() {
            bail!("\"factors\" must name at least one wreath factor");
        }
        let product = WreathProduct::build(&shapes, DEFAULT_CLOSURE_CAP)?;
        return Ok(Ambient::Wreath(product));
    }
    if let Some(name) = spec.get("builtin") {
        let name = name
            .as_str()
            .ok_or_else(|| anyhow!("\"builtin\" must be a string"))?;
        return builtin(name);
    }
    bail!("\"ambient\" must carry either \"factors\" or \"builtin\"");
}

fn builtin(name: &str) -> Result<Ambient> {
    match name {
        "sp2_3_wr_sym3" => Ok(Ambient::Pipeline(DeskPipeline::build(
            3,
            DEFAULT_CLOSURE_CAP,
        )?)),
        "sp2_3" => Ok(Ambient::Plain(matgrp::build_sp2(3, DEFAULT_CLOSURE_CAP)?)),
        "alt5" => Ok(Ambient::Plain(perm_group(&[
            Perm::from_cycles(5, &[&[0, 1, 2]])?,
            Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]])?,
        ])?)),
        "sym3" => Ok(Ambient::Plain(symmetric(3)?)),
        "sym4" => Ok(Ambient::Plain(symmetric(4)?)),
        "psl2_7" => Ok(Ambient::Plain(perm_group(&[
            Perm::from_images(vec![1, 2, 3, 4, 5, 6, 0, 7])?,
            Perm::from_images(vec![7, 6, 3, 2, 5, 4, 1, 0])?,
        ])?)),
        other => bail!(
            "unknown builtin {other:?}; available: sp2_3_wr_sym3, sp2_3, alt5, sym3, sym4, psl2_7"
        ),
    }
}

fn symmetric(n: usize) -> Result<Group> {
    let cycle: Vec<u32> = (1..n as u32).chain([0]).collect();
    perm_group(&[Perm::transposition(n, 0, 1)?, Perm::from_images(cycle)?])
}

fn perm_group(gens: &[Perm]) -> Result<Group> {
    let gens: Vec<Elem> = gens.iter().cloned().map(Elem::Perm).collect();
    Ok(Group::closure(&gens, DEFAULT_CLOSURE_CAP)?)
}

/// Parse the generator list under `key` into a subgroup of the ambient.
pub fn parse_subgroup(job: &Value, key: &str, ambient: &Ambient) -> Result<Option<Subgroup>> {
    let Some(raw) = job.get(key) else {
        return Ok(None);
    };
    let list = raw
        .as_array()
        .ok_or_else(|| anyhow!("\"{key}\" must be an array of elements"))?;
    let mut gens = Vec::new();
    for (i, v) in list.iter().enumerate() {
        let elem = parse_elem(v, ambient)
            .with_context(|| format!("\"{key}\" element {i} does not match the ambient shape"))?;
        gens.push(elem);
    }
    let subgroup = ambient
        .group()
        .subgroup(&gens)
        .with_context(|| format!("\"{key}\" generators do not close inside the ambient group"))?;
    Ok(Some(subgroup))
}

fn parse_elem(v: &Value, ambient: &Ambient) -> Result<Elem> {
    match ambient {
        Ambient::Wreath(w) => {
            let parts = v
                .as_array()
                .ok_or_else(|| anyhow!("expected an array with one entry per wreath factor"))?;
            let specs = w.specs();
            if parts.len() != specs.len() {
                bail!(
                    "element has {} factor entries, ambient has {} factors",
                    parts.len(),
                    specs.len()
                );
            }
            let mut tuple = Vec::new();
            for (part, spec) in parts.iter().zip(&specs) {
                tuple.push(Elem::Wreath(parse_wreath_elem(part, spec)?));
            }
            Ok(Elem::Tuple(tuple))
        }
        Ambient::Pipeline(p) => {
            let degree = p.wreath().degree();
            let base_raw = v
                .get("base")
                .and_then(Value::as_array)
                .ok_or_else(|| anyhow!("expected {{\"base\": [matrices], \"top\": [images]}}"))?;
            if base_raw.len() != degree {
                bail!("\"base\" must list {degree} matrices");
            }
            let mut base = Vec::new();
            for m in base_raw {
                base.push(Elem::Mat(parse_matrix(m, 3, 2)?));
            }
            let top = parse_perm(
                v.get("top")
                    .ok_or_else(|| anyhow!("expected a \"top\" permutation"))?,
            )?;
            Ok(Elem::GenWreath(GenWreathElem::new(base, top)?))
        }
        Ambient::Plain(g) => match g.identity() {
            Elem::Mat(id) => Ok(Elem::Mat(parse_matrix(v, id.modulus(), id.dimension())?)),
            _ => Ok(Elem::Perm(parse_perm(v)?)),
        },
    }
}

fn parse_wreath_elem(v: &Value, spec: &FactorSpec) -> Result<WreathElem> {
    let digits = v
        .get("v")
        .ok_or_else(|| anyhow!("wreath entry needs a digit vector \"v\""))?;
    let digits: Vec<u32> = u32_array(digits)?;
    let top = parse_perm(
        v.get("s")
            .ok_or_else(|| anyhow!("wreath entry needs a top permutation \"s\""))?,
    )?;
    if digits.len() != spec.n || top.degree() != spec.n {
        bail!("wreath entry does not have degree {}", spec.n);
    }
    Ok(WreathElem::new(spec.p, digits, top)?)
}

fn parse_perm(v: &Value) -> Result<Perm> {
    let images = u32_array(v).context("permutations are one-line image arrays")?;
    Ok(Perm::from_images(images)?)
}

/// Matrices arrive as nested rows `[[a, b], [c, d]]` and reports emit the
/// flat row-major form; both carry entries reduced mod p.
fn parse_matrix(v: &Value, p: u64, d: usize) -> Result<GFMatrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| anyhow!("expected a matrix as nested rows"))?;
    if rows.len() != d {
        bail!("matrix must have {d} rows");
    }
    let mut entries = Vec::with_capacity(d * d);
    for row in rows {
        let row = u32_array(row)?;
        if row.len() != d {
            bail!("matrix rows must have {d} entries");
        }
        entries.extend(row);
    }
    Ok(GFMatrix::new(p, d, entries)?)
}

fn u32_array(v: &Value) -> Result<Vec<u32>> {
    let list = v
        .as_array()
        .ok_or_else(|| anyhow!("expected an array of integers"))?;
    list.iter()
        .map(|x| {
            x.as_u64()
                .and_then(|n| u32::try_from(n).ok())
                .ok_or_else(|| anyhow!("expected a small nonnegative integer, got {x}"))
        })
        .collect()
}

fn field_u64(v: &Value, key: &str) -> Result<u64> {
    v.get(key)
        .and_then(Value::as_u64)
        .ok_or_else(|| anyhow!("expected an integer field \"{key}\""))
}

/// Shape pairs for the full-scale product predicate: `{"factors": [{"n", "q"}]}`.
pub fn parse_shape_pairs(job: &Value) -> Result<Vec<(u64, u64)>> {
    let list = job
        .get("factors")
        .and_then(Value::as_array)
        .ok_or_else(|| anyhow!("classify input needs \"factors\": [{{\"n\", \"q\"}}]"))?;
    let mut pairs = Vec::new();
    for f in list {
        pairs.push((field_u64(f, "n")?, field_u64(f, "q")?));
    }
    Ok(pairs)
}
