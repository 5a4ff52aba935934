use serde::Deserialize;
use serde_json::{json, Map, Value};

use super::framework::{EdgeOrbit, PeriodicFramework};
use crate::ratmath::{format_rational, parse_rational, RatMatrix, RatVec, Rational};
use crate::{Error, Result};

/// Canonical JSON text of a framework.
///
/// Fields appear in the order `dimension`, `lattice_basis` (or `gram` when
/// no Cartesian basis is stored), `vertices` (`q_1, …`), `edges`. The
/// `lattice_basis` entries are the generator vectors, i.e. columns of `Λ`.
pub fn framework_to_json(fw: &PeriodicFramework) -> String {
    to_pretty_json(&framework_value(fw))
}

pub fn framework_value(fw: &PeriodicFramework) -> Value {
    let mut obj = Map::new();
    obj.insert("dimension".into(), json!(fw.dim()));
    match fw.lattice() {
        Some(l) => {
            let cols: Vec<RatVec> = (0..l.cols()).map(|j| l.column(j)).collect();
            obj.insert("lattice_basis".into(), rows_value(&cols));
        }
        None => {
            obj.insert("gram".into(), matrix_value(fw.gram()));
        }
    }
    obj.insert("vertices".into(), rows_value(fw.vertices()));
    let edges: Vec<Value> = fw
        .edges()
        .iter()
        .map(|e| {
            let mut m = Map::new();
            m.insert("from".into(), json!(e.from));
            m.insert("to".into(), json!(e.to));
            m.insert("shift".into(), json!(e.shift));
            if let Some(l) = &e.label {
                m.insert("label".into(), json!(l));
            }
            Value::Object(m)
        })
        .collect();
    obj.insert("edges".into(), Value::Array(edges));
    Value::Object(obj)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFramework {
    dimension: usize,
    #[serde(default)]
    gram: Option<Vec<Vec<String>>>,
    #[serde(default)]
    lattice_basis: Option<Vec<Vec<String>>>,
    vertices: Vec<Vec<String>>,
    edges: Vec<RawEdge>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdge {
    from: usize,
    to: usize,
    shift: Vec<i64>,
    #[serde(default)]
    label: Option<String>,
}

/// Parses canonical framework JSON. Only shapes are checked; call
/// [`PeriodicFramework::validate`] for the geometric invariants.
pub fn framework_from_json(text: &str) -> Result<PeriodicFramework> {
    let raw: RawFramework = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if raw.vertices.is_empty() {
        return Err(Error::Parse("field `vertices`: list is empty".into()));
    }
    let d = raw.dimension;
    let lattice = raw
        .lattice_basis
        .as_ref()
        .map(|cols| {
            let cols = parse_rows("lattice_basis", cols, d)?;
            if cols.len() != d {
                return Err(Error::Parse(format!("field `lattice_basis`: expected {d} generators")));
            }
            RatMatrix::from_columns(&cols)
        })
        .transpose()?;
    let gram = raw
        .gram
        .as_ref()
        .map(|rows| {
            let rows = parse_rows("gram", rows, d)?;
            if rows.len() != d {
                return Err(Error::Parse(format!("field `gram`: expected {d} rows")));
            }
            RatMatrix::from_rows(rows)
        })
        .transpose()?;
    if lattice.is_some() && gram.is_some() {
        return Err(Error::Parse("give either `gram` or `lattice_basis`, not both".into()));
    }
    let vertices = parse_rows("vertices", &raw.vertices, d)?;
    let edges = raw
        .edges
        .into_iter()
        .map(|e| EdgeOrbit {
            from: e.from,
            to: e.to,
            shift: e.shift,
            label: e.label,
        })
        .collect();
    PeriodicFramework::from_parts_unchecked(d, lattice, gram, vertices, edges)
        .map_err(|e| Error::Parse(e.to_string()))
}

fn parse_rows(field: &str, rows: &[Vec<String>], d: usize) -> Result<Vec<RatVec>> {
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() != d {
                return Err(Error::Parse(format!("field `{field}[{i}]`: expected {d} entries")));
            }
            row.iter()
                .enumerate()
                .map(|(j, s)| parse_rational(s).map_err(|e| Error::Parse(format!("field `{field}[{i}][{j}]`: {e}"))))
                .collect()
        })
        .collect()
}

pub fn rational_value(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn vector_value(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_value).collect())
}

pub fn rows_value(rows: &[RatVec]) -> Value {
    Value::Array(rows.iter().map(|r| vector_value(r)).collect())
}

pub fn matrix_value(m: &RatMatrix) -> Value {
    rows_value(&m.to_rows())
}

pub fn parse_vector_value(field: &str, v: &Value) -> Result<RatVec> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("field `{field}`: expected an array")))?;
    arr.iter()
        .enumerate()
        .map(|(i, x)| {
            let s = x
                .as_str()
                .ok_or_else(|| Error::Parse(format!("field `{field}[{i}]`: expected a rational string")))?;
            parse_rational(s).map_err(|e| Error::Parse(format!("field `{field}[{i}]`: {e}")))
        })
        .collect()
}

pub fn parse_matrix_value(field: &str, v: &Value) -> Result<RatMatrix> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("field `{field}`: expected an array")))?;
    let rows = arr
        .iter()
        .enumerate()
        .map(|(i, r)| parse_vector_value(&format!("{field}[{i}]"), r))
        .collect::<Result<Vec<_>>>()?;
    RatMatrix::from_rows(rows).map_err(|e| Error::Parse(format!("field `{field}`: {e}")))
}

const INLINE_WIDTH: usize = 88;

/// Deterministic pretty printer: values whose one-line form fits in the
/// line width stay on one line, larger ones are broken per element.
pub fn to_pretty_json(v: &Value) -> String {
    let mut out = String::new();
    write_value(v, 0, &mut out);
    out.push('\n');
    out
}

fn one_line(v: &Value) -> String {
    match v {
        Value::Array(a) => format!("[{}]", a.iter().map(one_line).collect::<Vec<_>>().join(", ")),
        Value::Object(o) => format!(
            "{{{}}}",
            o.iter()
                .map(|(k, x)| format!("{}: {}", Value::String(k.clone()), one_line(x)))
                .collect::<Vec<_>>()
                .join(", ")
        ),
        scalar => scalar.to_string(),
    }
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let flat = one_line(v);
    let is_container = matches!(v, Value::Array(_) | Value::Object(_));
    if !is_container || (indent > 0 && indent + flat.len() <= INLINE_WIDTH) {
        out.push_str(&flat);
        return;
    }
    let pad = " ".repeat(indent + 2);
    match v {
        Value::Array(a) if a.is_empty() => out.push_str("[]"),
        Value::Object(o) if o.is_empty() => out.push_str("{}"),
        Value::Array(a) => {
            out.push_str("[\n");
            for (i, x) in a.iter().enumerate() {
                out.push_str(&pad);
                write_value(x, indent + 2, out);
                out.push_str(if i + 1 < a.len() { ",\n" } else { "\n" });
            }
            out.push_str(&" ".repeat(indent));
            out.push(']');
        }
        Value::Object(o) => {
            out.push_str("{\n");
            for (i, (k, x)) in o.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(x, indent + 2, out);
                out.push_str(if i + 1 < o.len() { ",\n" } else { "\n" });
            }
            out.push_str(&" ".repeat(indent));
            out.push('}');
        }
        _ => unreachable!(),
    }
}
