//! JSON and text formats for matroids, valuations and shift vectors.
//!
//! Matroid JSON: `{"n": 4, "r": 2, "bases": [[0,1],[0,2],...]}` with bases in
//! colex order. The text format lists one basis per line with elements
//! separated by spaces; `#` starts a comment and a `# n=<count>` comment
//! fixes the ground set size (otherwise it is one more than the largest
//! element).
//!
//! Valuation JSON: `{"matroid": <matroid JSON or path>, "values":
//! {"0,1": "1/2", ...}}` with one entry per basis; values are `p/q`,
//! integer strings or JSON integers.

use std::fs;
use std::path::{Path, PathBuf};

use num::BigRational;
use serde::Serializer;
use serde_json::{json, Map, Value};

use crate::matroid::Matroid;
use crate::rational::parse_rational;
use crate::subset::{self, Set};
use crate::valuation::{values_from_pairs, Valuation};
use crate::{Error, Result};

pub fn ser_rational<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

fn input(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}

/// `"0,2,5"` (or the empty string) to a set.
pub fn parse_set(s: &str) -> Result<Set> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(0);
    }
    let mut out: Set = 0;
    for part in s.split(',') {
        let e: usize = part.trim().parse().map_err(|_| input(format!("bad element '{part}' in '{s}'")))?;
        if e >= subset::MAX_GROUND {
            return Err(input(format!("element {e} exceeds the supported ground set size")));
        }
        if subset::contains(out, e) {
            return Err(input(format!("element {e} repeated in '{s}'")));
        }
        out |= subset::singleton(e);
    }
    Ok(out)
}

/// Comma-separated rationals.
pub fn parse_vector(s: &str) -> Result<Vec<BigRational>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|x| parse_rational(x.trim())).collect()
}

pub fn format_vector(v: &[BigRational]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn matroid_to_json(m: &Matroid) -> Value {
    let bases: Vec<Vec<usize>> = m.bases().iter().map(|&b| subset::to_vec(b)).collect();
    json!({"n": m.n(), "r": m.rank(), "bases": bases})
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| input(format!("'{what}' must be a non-negative integer")))
}

pub fn matroid_from_json(v: &Value) -> Result<Matroid> {
    let (n, r, sets) = basis_family_from_json(v)?;
    Matroid::new(n, r, sets)
}

/// `(n, r, sets)` from matroid JSON, without checking the exchange axiom.
pub fn basis_family_from_json(v: &Value) -> Result<(usize, usize, Vec<Set>)> {
    let obj = v.as_object().ok_or_else(|| input("matroid must be a JSON object"))?;
    let n = as_usize(obj.get("n").ok_or_else(|| input("matroid needs 'n'"))?, "n")?;
    let r = as_usize(obj.get("r").ok_or_else(|| input("matroid needs 'r'"))?, "r")?;
    let bases = obj.get("bases").and_then(Value::as_array).ok_or_else(|| input("matroid needs a 'bases' array"))?;
    let mut sets = Vec::with_capacity(bases.len());
    for b in bases {
        let elems = b.as_array().ok_or_else(|| input("each basis must be an array of elements"))?;
        let mut s: Set = 0;
        for e in elems {
            let e = as_usize(e, "basis element")?;
            if e >= subset::MAX_GROUND {
                return Err(input(format!("element {e} exceeds the supported ground set size")));
            }
            if subset::contains(s, e) {
                return Err(input(format!("element {e} repeated in a basis")));
            }
            s |= subset::singleton(e);
        }
        sets.push(s);
    }
    Ok((n, r, sets))
}

/// Reads the text format described in the module docs.
pub fn matroid_from_text(text: &str) -> Result<Matroid> {
    let (n, r, sets) = basis_family_from_text(text)?;
    Matroid::new(n, r, sets)
}

/// `(n, r, sets)` from the text format, without checking the exchange axiom.
pub fn basis_family_from_text(text: &str) -> Result<(usize, usize, Vec<Set>)> {
    let mut n: Option<usize> = None;
    let mut sets = Vec::new();
    let mut r: Option<usize> = None;
    let mut max = None;
    for line in text.lines() {
        let line = line.trim();
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(v) = comment.trim().strip_prefix("n=").or_else(|| comment.trim().strip_prefix("n =")) {
                n = Some(v.trim().parse().map_err(|_| input(format!("bad ground set size '{v}'")))?);
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let elems: Vec<usize> = line
            .split_whitespace()
            .map(|x| x.parse().map_err(|_| input(format!("bad element '{x}'"))))
            .collect::<Result<_>>()?;
        let s = parse_set(&elems.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","))?;
        if *r.get_or_insert(elems.len()) != elems.len() {
            return Err(input("bases of different sizes"));
        }
        max = max.max(elems.iter().max().copied());
        sets.push(s);
    }
    let r = r.ok_or_else(|| input("no bases given"))?;
    let n = n.unwrap_or(max.map_or(0, |m| m + 1));
    Ok((n, r, sets))
}

pub fn matroid_to_text(m: &Matroid) -> String {
    let mut out = format!("# n={}\n", m.n());
    for &b in m.bases() {
        let line: Vec<String> = subset::elements(b).map(|e| e.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Reads a matroid file, JSON or text by content.
pub fn read_matroid_file(path: &Path) -> Result<Matroid> {
    let text = fs::read_to_string(path).map_err(|e| input(format!("cannot read {}: {e}", path.display())))?;
    parse_matroid_document(&text)
}

pub fn parse_matroid_document(text: &str) -> Result<Matroid> {
    let (n, r, sets) = parse_basis_family(text)?;
    Matroid::new(n, r, sets)
}

/// A basis family in either format, not yet checked to be a matroid.
pub fn parse_basis_family(text: &str) -> Result<(usize, usize, Vec<Set>)> {
    if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(text).map_err(|e| input(format!("invalid JSON: {e}")))?;
        basis_family_from_json(&v)
    } else {
        basis_family_from_text(text)
    }
}

pub fn valuation_to_json(nu: &Valuation) -> Value {
    let mut values = Map::new();
    for (b, v) in nu.pairs() {
        values.insert(subset::format(b), Value::String(v.to_string()));
    }
    json!({"matroid": matroid_to_json(nu.matroid()), "values": values})
}

/// Parses a valuation document; a string `matroid` field is a path
/// relative to `base`.
pub fn valuation_from_json(v: &Value, base: Option<&Path>) -> Result<Valuation> {
    let (m, values) = valuation_parts_from_json(v, base)?;
    Valuation::new(m, values)
}

/// The matroid and colex-ordered values of a valuation document, without
/// checking the valuation axiom.
pub fn valuation_parts_from_json(v: &Value, base: Option<&Path>) -> Result<(Matroid, Vec<BigRational>)> {
    let obj = v.as_object().ok_or_else(|| input("valuation must be a JSON object"))?;
    let m = match obj.get("matroid").ok_or_else(|| input("valuation needs 'matroid'"))? {
        Value::String(p) => {
            let path: PathBuf = base.map_or_else(|| PathBuf::from(p), |b| b.join(p));
            read_matroid_file(&path)?
        }
        other => matroid_from_json(other)?,
    };
    let values = obj.get("values").and_then(Value::as_object).ok_or_else(|| input("valuation needs a 'values' object"))?;
    let mut pairs = Vec::with_capacity(values.len());
    for (k, x) in values {
        let b = parse_set(k)?;
        let q = match x {
            Value::String(s) => parse_rational(s)?,
            Value::Number(num) if num.is_i64() => BigRational::from_integer(num.as_i64().expect("i64").into()),
            _ => return Err(input(format!("value for '{k}' must be a rational string or an integer"))),
        };
        pairs.push((b, q));
    }
    let values = values_from_pairs(&m, pairs)?;
    Ok((m, values))
}

pub fn read_valuation_file(path: &Path) -> Result<Valuation> {
    let (m, values) = read_valuation_parts(path)?;
    Valuation::new(m, values)
}

pub fn read_valuation_parts(path: &Path) -> Result<(Matroid, Vec<BigRational>)> {
    let text = fs::read_to_string(path).map_err(|e| input(format!("cannot read {}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| input(format!("invalid JSON in {}: {e}", path.display())))?;
    valuation_parts_from_json(&v, path.parent())
}
