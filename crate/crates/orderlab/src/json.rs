//! JSON interchange for posets, monotone maps and finite spaces.
//!
//! Poset: `{"elements":["a","b"],"le":[["a","b"]]}`; the reflexive and
//! transitive closure is applied on load, cycles are rejected.
//! Map: `{"dom":…,"cod":…,"map":{"a":"x"}}`.
//! Space: `{"poset":…}` (Alexandrov) or `{"points":[…],"opens":[[…],…]}`
//! (validated as a topology).
//!
//! Schema violations are reported with JSON-pointer paths.

use crate::bits::BitSet;
use crate::map::MonotoneMap;
use crate::poset::Poset;
use crate::space::{alexandrov, FinSpace};
use serde_json::{json, Value};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("at {path}: {message}")]
pub struct SchemaError {
    pub path: String,
    pub message: String,
}

fn err<T>(path: &str, message: impl Into<String>) -> Result<T, SchemaError> {
    Err(SchemaError { path: path.to_string(), message: message.into() })
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, SchemaError> {
    v.as_array()
        .ok_or_else(|| SchemaError { path: path.to_string(), message: "expected an array".into() })
}

fn as_str<'a>(v: &'a Value, path: &str) -> Result<&'a str, SchemaError> {
    v.as_str()
        .ok_or_else(|| SchemaError { path: path.to_string(), message: "expected a string".into() })
}

fn as_object<'a>(
    v: &'a Value,
    path: &str,
) -> Result<&'a serde_json::Map<String, Value>, SchemaError> {
    v.as_object()
        .ok_or_else(|| SchemaError { path: path.to_string(), message: "expected an object".into() })
}

pub fn poset_from_value(v: &Value, path: &str) -> Result<Poset, SchemaError> {
    let obj = as_object(v, path)?;
    let elements_v = obj
        .get("elements")
        .ok_or_else(|| SchemaError {
            path: format!("{path}/elements"),
            message: "missing field".into(),
        })?;
    let elements_path = format!("{path}/elements");
    let mut elements = Vec::new();
    for (i, e) in as_array(elements_v, &elements_path)?.iter().enumerate() {
        elements.push(as_str(e, &format!("{elements_path}/{i}"))?.to_string());
    }
    let mut pairs: Vec<(String, String)> = Vec::new();
    if let Some(le_v) = obj.get("le") {
        let le_path = format!("{path}/le");
        for (i, pair) in as_array(le_v, &le_path)?.iter().enumerate() {
            let pair_path = format!("{le_path}/{i}");
            let arr = as_array(pair, &pair_path)?;
            if arr.len() != 2 {
                return err(&pair_path, "expected a two-element array");
            }
            let a = as_str(&arr[0], &format!("{pair_path}/0"))?;
            let b = as_str(&arr[1], &format!("{pair_path}/1"))?;
            pairs.push((a.to_string(), b.to_string()));
        }
    }
    let pair_refs: Vec<(&str, &str)> =
        pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    Poset::new(elements, &pair_refs).map_err(|e| SchemaError {
        path: path.to_string(),
        message: e.to_string(),
    })
}

pub fn poset_to_value(p: &Poset) -> Value {
    let mut le = Vec::new();
    for i in 0..p.len() {
        for j in 0..p.len() {
            if i != j && p.le(i, j) {
                le.push(json!([p.label(i), p.label(j)]));
            }
        }
    }
    json!({ "elements": p.labels(), "le": le })
}

pub fn map_from_value(v: &Value, path: &str) -> Result<MonotoneMap, SchemaError> {
    let obj = as_object(v, path)?;
    let dom = poset_from_value(
        obj.get("dom").ok_or_else(|| SchemaError {
            path: format!("{path}/dom"),
            message: "missing field".into(),
        })?,
        &format!("{path}/dom"),
    )?;
    let cod = poset_from_value(
        obj.get("cod").ok_or_else(|| SchemaError {
            path: format!("{path}/cod"),
            message: "missing field".into(),
        })?,
        &format!("{path}/cod"),
    )?;
    let map_path = format!("{path}/map");
    let table = as_object(
        obj.get("map").ok_or_else(|| SchemaError {
            path: map_path.clone(),
            message: "missing field".into(),
        })?,
        &map_path,
    )?;
    let mut assignment = vec![usize::MAX; dom.len()];
    for (k, val) in table {
        let i = dom.index_of(k).ok_or_else(|| SchemaError {
            path: format!("{map_path}/{k}"),
            message: format!("`{k}` is not a domain element"),
        })?;
        let label = as_str(val, &format!("{map_path}/{k}"))?;
        let j = cod.index_of(label).ok_or_else(|| SchemaError {
            path: format!("{map_path}/{k}"),
            message: format!("`{label}` is not a codomain element"),
        })?;
        assignment[i] = j;
    }
    if let Some(i) = assignment.iter().position(|&v| v == usize::MAX) {
        return err(&map_path, format!("no value for element `{}`", dom.label(i)));
    }
    MonotoneMap::new(Arc::new(dom), Arc::new(cod), assignment).map_err(|e| SchemaError {
        path: map_path,
        message: e.to_string(),
    })
}

pub fn map_to_value(f: &MonotoneMap) -> Value {
    let mut table = serde_json::Map::new();
    for i in 0..f.dom().len() {
        table.insert(
            f.dom().label(i).to_string(),
            json!(f.cod().label(f.apply(i))),
        );
    }
    json!({
        "dom": poset_to_value(f.dom()),
        "cod": poset_to_value(f.cod()),
        "map": Value::Object(table),
    })
}

pub fn space_from_value(v: &Value, path: &str) -> Result<FinSpace, SchemaError> {
    let obj = as_object(v, path)?;
    if let Some(p) = obj.get("poset") {
        let poset = poset_from_value(p, &format!("{path}/poset"))?;
        return Ok(alexandrov(&poset));
    }
    let points_v = obj.get("points").ok_or_else(|| SchemaError {
        path: path.to_string(),
        message: "expected either a `poset` or a `points`/`opens` pair".into(),
    })?;
    let points_path = format!("{path}/points");
    let mut points = Vec::new();
    for (i, e) in as_array(points_v, &points_path)?.iter().enumerate() {
        points.push(as_str(e, &format!("{points_path}/{i}"))?.to_string());
    }
    let opens_v = obj.get("opens").ok_or_else(|| SchemaError {
        path: format!("{path}/opens"),
        message: "missing field".into(),
    })?;
    let opens_path = format!("{path}/opens");
    let mut opens = Vec::new();
    for (i, open) in as_array(opens_v, &opens_path)?.iter().enumerate() {
        let open_path = format!("{opens_path}/{i}");
        let mut set = BitSet::empty(points.len());
        for (j, e) in as_array(open, &open_path)?.iter().enumerate() {
            let label = as_str(e, &format!("{open_path}/{j}"))?;
            match points.iter().position(|p| p == label) {
                Some(k) => set.insert(k),
                None => {
                    return err(
                        &format!("{open_path}/{j}"),
                        format!("`{label}` is not a point"),
                    )
                }
            }
        }
        opens.push(set);
    }
    FinSpace::new(points, opens).map_err(|e| SchemaError {
        path: path.to_string(),
        message: e.to_string(),
    })
}

pub fn space_to_value(x: &FinSpace) -> Value {
    let opens: Vec<Value> = x
        .opens()
        .iter()
        .map(|o| Value::Array(o.iter().map(|i| json!(x.point_label(i))).collect()))
        .collect();
    json!({ "points": x.points(), "opens": opens })
}

pub fn parse(input: &str) -> Result<Value, SchemaError> {
    serde_json::from_str(input).map_err(|e| SchemaError {
        path: String::new(),
        message: format!("invalid JSON: {e}"),
    })
}
