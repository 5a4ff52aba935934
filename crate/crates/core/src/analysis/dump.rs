use serde_json::{json, Map, Value};

use super::deformation::InfDeformation;
use super::diagram::EllipsoidDiagram;
use crate::model::{matrix_value, parse_matrix_value, parse_vector_value, rows_value, to_pretty_json, vector_value};
use crate::ratmath::{zero_vec, RatMatrix};
use crate::{Error, Result};

/// `{"qdot": [q̇_1, …], "omegadot": [[…]]}` with rational strings.
pub fn deformation_value(def: &InfDeformation) -> Value {
    let mut m = Map::new();
    m.insert("qdot".into(), rows_value(&def.qdot[1..]));
    m.insert("omegadot".into(), matrix_value(&def.omegadot));
    Value::Object(m)
}

pub fn deformation_to_json(def: &InfDeformation) -> String {
    to_pretty_json(&deformation_value(def))
}

/// Parses the format of [`deformation_to_json`]. Unknown fields are errors.
pub fn deformation_from_json(text: &str) -> Result<InfDeformation> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("deformation must be a JSON object".into()))?;
    if let Some(k) = obj.keys().find(|k| *k != "qdot" && *k != "omegadot") {
        return Err(Error::Parse(format!("unknown field `{k}`")));
    }
    let field = |name: &str| obj.get(name).ok_or_else(|| Error::Parse(format!("missing field `{name}`")));
    let omegadot = parse_matrix_value("omegadot", field("omegadot")?)?;
    let d = omegadot.rows();
    if !omegadot.is_square() || !omegadot.is_symmetric() {
        return Err(Error::Parse("field `omegadot`: must be a symmetric square matrix".into()));
    }
    let rows = field("qdot")?
        .as_array()
        .ok_or_else(|| Error::Parse("field `qdot`: expected an array".into()))?;
    let mut qdot = vec![zero_vec(d)];
    for (i, r) in rows.iter().enumerate() {
        let v = parse_vector_value(&format!("qdot[{i}]"), r)?;
        if v.len() != d {
            return Err(Error::Parse(format!("field `qdot[{i}]`: expected {d} entries")));
        }
        qdot.push(v);
    }
    Ok(InfDeformation { qdot, omegadot })
}

pub fn diagram_value(diag: &EllipsoidDiagram) -> Value {
    let mut m = Map::new();
    m.insert("dimension".into(), json!(diag.dim()));
    m.insert("gram".into(), matrix_value(&diag.gram));
    m.insert("quadratic".into(), matrix_value(&diag.quadratic));
    m.insert("placement".into(), rows_value(&diag.placement));
    let edges: Vec<Value> = diag
        .edges
        .iter()
        .enumerate()
        .map(|(r, e)| {
            let mut o = Map::new();
            o.insert("lo".into(), json!(e.lo));
            o.insert("hi".into(), json!(e.hi));
            o.insert("center".into(), vector_value(&e.center));
            o.insert("quadric".into(), vector_value(&diag.quadric(r).coefficients()));
            o.insert("representatives".into(), rows_value(&e.representatives));
            Value::Object(o)
        })
        .collect();
    m.insert("ellipsoids".into(), Value::Array(edges));
    Value::Object(m)
}

pub fn diagram_to_json(diag: &EllipsoidDiagram) -> String {
    to_pretty_json(&diagram_value(diag))
}

pub fn rigidity_to_json(system: &RatMatrix) -> String {
    to_pretty_json(&json!({
        "rows": system.rows(),
        "cols": system.cols(),
        "rank": system.rank(),
        "matrix": matrix_value(system),
    }))
}
