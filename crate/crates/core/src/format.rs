//! JSON and CSV wire formats shared by the CLI and the Python bindings.
//!
//! * rational: `"num/den"` string (denominator omitted when one)
//! * polynomial: array of coefficient strings, index = degree
//! * matrix: `{"n": dim - 1, "rows": [["num/den", ...], ...]}`
//! * envelope: `{"tool", "version", "command", "inputs", "results"}`

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{parse_rat, Rat};
use crate::hankel::Mat;
use crate::qpoly::PolyRat;

pub const TOOL: &str = "qhankel";

pub fn rat_json(r: &Rat) -> Value {
    Value::String(r.to_string())
}

pub fn rat_from_json(v: &Value) -> Result<Rat> {
    v.as_str()
        .ok_or_else(|| Error::Parse(format!("expected rational string, got {v}")))
        .and_then(parse_rat)
}

pub fn poly_json(p: &PolyRat) -> Value {
    Value::Array(p.coeffs().iter().map(rat_json).collect())
}

pub fn poly_from_json(v: &Value) -> Result<PolyRat> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse("polynomial must be an array".into()))?;
    Ok(PolyRat::new(
        arr.iter().map(rat_from_json).collect::<Result<_>>()?,
    ))
}

pub fn mat_json(m: &Mat) -> Value {
    json!({
        "n": m.dim() - 1,
        "rows": m.rows().map(|r| r.iter().map(rat_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

pub fn mat_from_json(v: &Value) -> Result<Mat> {
    let rows = v
        .get("rows")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("matrix needs a \"rows\" array".into()))?;
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?
                .iter()
                .map(rat_from_json)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let m = Mat::from_rows(rows)?;
    if let Some(n) = v.get("n").and_then(Value::as_u64) {
        if n as usize + 1 != m.dim() {
            return Err(Error::Parse(format!(
                "matrix header says n={n} but has {} rows",
                m.dim()
            )));
        }
    }
    Ok(m)
}

/// One line per row, entries separated by commas.
pub fn mat_csv(m: &Mat) -> String {
    let mut out = String::new();
    for row in m.rows() {
        let line: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn mat_from_csv(s: &str) -> Result<Mat> {
    let rows = s
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split(',').map(parse_rat).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Mat::from_rows(rows)
}

/// Standard top-level output object.
pub fn envelope(command: &str, inputs: Value, results: Value) -> Value {
    json!({
        "tool": TOOL,
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "inputs": inputs,
        "results": results,
    })
}
