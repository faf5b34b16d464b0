//! File formats.
//!
//! Complex, text:
//! ```text
//! # comment
//! vertices 6
//! facet 1 2 3
//! facet 1 2 6
//! ```
//! The `vertices` line may be omitted, in which case `m` is the largest vertex.
//! Complex, JSON: `{"vertices": 6, "facets": [[1,2,3],[1,2,6]]}`.
//!
//! Cochain, text: one simplex per line, either `[1,4]` or `1 4`.
//!
//! Join spec, text:
//! ```text
//! base points:2
//! pair simplex:1 boundary:1
//! pair simplex:1 empty
//! ```
//! Each operand is a registry name, a path (relative to the spec file), or
//! `empty` for the complex `{∅}` on the vertices of the pair's first member.
//! JSON: `{"base": "...", "pairs": [["...", "..."], ...]}` where an operand may
//! also be an inline complex object.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::polyhedral_join::PairSpec;
use crate::registry;

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    vertices: usize,
    facets: Vec<Vec<usize>>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_vertices<'a>(line: usize, words: impl Iterator<Item = &'a str>) -> Result<Vec<usize>> {
    words
        .map(|w| w.parse::<usize>().map_err(|_| parse_err(line, format!("not a vertex: {w:?}"))))
        .collect()
}

pub fn parse_complex_text(text: &str) -> Result<SimplicialComplex> {
    let mut m: Option<usize> = None;
    let mut facets: Vec<Vec<usize>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut words = content.split_whitespace();
        match words.next() {
            Some("vertices") => {
                if m.is_some() {
                    return Err(parse_err(line, "duplicate vertices line"));
                }
                let v = parse_vertices(line, words)?;
                if v.len() != 1 {
                    return Err(parse_err(line, "expected `vertices <m>`"));
                }
                m = Some(v[0]);
            }
            Some("facet") => {
                let f = parse_vertices(line, words)?;
                if f.is_empty() {
                    return Err(parse_err(line, "empty facet"));
                }
                if f.contains(&0) {
                    return Err(parse_err(line, "vertices are numbered from 1"));
                }
                facets.push(f);
            }
            Some(other) => return Err(parse_err(line, format!("unknown keyword {other:?}"))),
            None => {}
        }
    }
    let m = m.unwrap_or_else(|| facets.iter().flatten().copied().max().unwrap_or(0));
    SimplicialComplex::from_facets(m, &facets)
}

pub fn parse_complex_json(text: &str) -> Result<SimplicialComplex> {
    let c: ComplexJson = serde_json::from_str(text)?;
    SimplicialComplex::from_facets(c.vertices, &c.facets)
}

/// Text or JSON, detected by a leading `{`.
pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    if text.trim_start().starts_with('{') {
        parse_complex_json(text)
    } else {
        parse_complex_text(text)
    }
}

pub fn complex_to_text(k: &SimplicialComplex) -> String {
    let mut out = format!("vertices {}\n", k.num_vertices());
    for f in k.facets() {
        if f.is_empty() {
            continue;
        }
        let words: Vec<String> = f.vertices().map(|v| v.to_string()).collect();
        out.push_str(&format!("facet {}\n", words.join(" ")));
    }
    out
}

pub fn complex_to_json_value(k: &SimplicialComplex) -> serde_json::Value {
    let facets: Vec<Vec<usize>> = k.facets().iter().filter(|f| !f.is_empty()).map(|f| f.to_vec()).collect();
    serde_json::json!({ "vertices": k.num_vertices(), "facets": facets })
}

pub fn complex_to_json(k: &SimplicialComplex) -> String {
    complex_to_json_value(k).to_string()
}

/// A registry name, or else a path to a complex file.
pub fn load_complex(spec: &str) -> Result<SimplicialComplex> {
    load_complex_relative(spec, None)
}

fn load_complex_relative(spec: &str, base: Option<&Path>) -> Result<SimplicialComplex> {
    let path = match base {
        Some(dir) if Path::new(spec).is_relative() => dir.join(spec),
        _ => PathBuf::from(spec),
    };
    if path.is_file() {
        return parse_complex(&fs::read_to_string(&path)?);
    }
    registry::by_name(spec)
}

/// Simplices, one per line; `[1,4]`, `1 4` and `1,4` are all accepted.
pub fn parse_simplex_list(text: &str) -> Result<Vec<Simplex>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let inner = content.trim_start_matches('[').trim_end_matches(']').trim_end_matches('*');
        let inner = inner.trim_end_matches(']');
        let verts = parse_vertices(line, inner.split(|c: char| c == ',' || c.is_whitespace()).filter(|w| !w.is_empty()))?;
        out.push(Simplex::from_vertices(&verts).map_err(|e| parse_err(line, e.to_string()))?);
    }
    Ok(out)
}

/// `[1,4,5]`, one simplex per line, in canonical order.
pub fn simplices_to_text(simplices: &[Simplex]) -> String {
    simplices.iter().map(|s| format!("{s}\n")).collect()
}

fn join_operand(spec: &str, base: Option<&Path>, ambient: Option<usize>) -> Result<SimplicialComplex> {
    match (spec, ambient) {
        ("empty", Some(m)) => Ok(SimplicialComplex::empty(m)),
        _ => load_complex_relative(spec, base),
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Operand {
    Name(String),
    Inline(ComplexJson),
}

#[derive(Deserialize)]
struct JoinJson {
    base: Operand,
    pairs: Vec<(Operand, Operand)>,
}

fn resolve(op: &Operand, base: Option<&Path>, ambient: Option<usize>) -> Result<SimplicialComplex> {
    match op {
        Operand::Name(s) => join_operand(s, base, ambient),
        Operand::Inline(c) => SimplicialComplex::from_facets(c.vertices, &c.facets),
    }
}

/// Parses a join spec; relative paths resolve against `base_dir`.
pub fn parse_join_spec(text: &str, base_dir: Option<&Path>) -> Result<(SimplicialComplex, PairSpec)> {
    if text.trim_start().starts_with('{') {
        let j: JoinJson = serde_json::from_str(text)?;
        let k = resolve(&j.base, base_dir, None)?;
        let mut pairs = Vec::new();
        for (a, b) in &j.pairs {
            let ka = resolve(a, base_dir, None)?;
            let kb = resolve(b, base_dir, Some(ka.num_vertices()))?;
            pairs.push((ka, kb));
        }
        return Ok((k, PairSpec::new(pairs)?));
    }
    let mut k = None;
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let words: Vec<&str> = content.split_whitespace().collect();
        match words.as_slice() {
            ["base", name] => {
                if k.is_some() {
                    return Err(parse_err(line, "duplicate base line"));
                }
                k = Some(join_operand(name, base_dir, None)?);
            }
            ["pair", a, b] => {
                let ka = join_operand(a, base_dir, None)?;
                let kb = join_operand(b, base_dir, Some(ka.num_vertices()))?;
                pairs.push((ka, kb));
            }
            _ => return Err(parse_err(line, "expected `base <complex>` or `pair <K> <L>`")),
        }
    }
    let k = k.ok_or_else(|| parse_err(0, "missing base line"))?;
    Ok((k, PairSpec::new(pairs)?))
}
