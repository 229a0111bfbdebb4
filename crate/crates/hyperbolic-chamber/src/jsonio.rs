//! JSON export of chambers and chamber-vector lists.

use crate::chamber::CoxeterChamber;
use crate::reduce::ChamberVector;
use exact_core::json::{int_to_value, lattice_to_json, mat_to_value};
use exact_core::IVec;
use serde_json::{json, Map, Value};

fn vec_to_value(v: &IVec) -> Value {
    Value::Array(v.iter().map(int_to_value).collect())
}

/// Chamber as a JSON object: lattice, simple roots (with labels), rays, the
/// ray Gram matrix and the diagram edges.
pub fn chamber_to_value(c: &CoxeterChamber) -> Value {
    let mut obj = Map::new();
    obj.insert("lattice".into(), lattice_to_json(&c.lattice));
    obj.insert(
        "simple_roots".into(),
        Value::Array(c.simple_roots.iter().map(vec_to_value).collect()),
    );
    obj.insert(
        "root_labels".into(),
        Value::Array(c.root_labels.iter().map(|&l| json!(l)).collect()),
    );
    obj.insert(
        "rays".into(),
        Value::Array(c.rays.iter().map(vec_to_value).collect()),
    );
    obj.insert("ray_gram".into(), mat_to_value(&c.ray_gram));
    obj.insert(
        "diagram_edges".into(),
        Value::Array(
            c.diagram
                .iter()
                .map(|&(i, j)| json!([i, j]))
                .collect(),
        ),
    );
    Value::Object(obj)
}

/// Pretty-printed chamber JSON with a trailing newline.
pub fn chamber_to_string(c: &CoxeterChamber) -> String {
    let mut s = serde_json::to_string_pretty(&chamber_to_value(c)).expect("serializable");
    s.push('\n');
    s
}

/// Vector list as a JSON array; each entry carries both coordinate systems,
/// the norm, primitivity and the wall labels.
pub fn chamber_vectors_to_value(vs: &[ChamberVector]) -> Value {
    Value::Array(
        vs.iter()
            .map(|v| {
                json!({
                    "coords_g": Value::Array(v.coords_g.iter().map(int_to_value).collect()),
                    "coords_std": vec_to_value(&v.coords_std),
                    "norm": int_to_value(&v.norm),
                    "primitive": v.primitive,
                    "wall_subset": v.wall_subset,
                })
            })
            .collect(),
    )
}
