//! JSON serialization for permutations and permutation groups.
//!
//! A permutation is stored as its image array; a group as
//! `{"degree": n, "generators": [...], "order": "<decimal>"}`. The order is
//! recomputed and checked on load, so a stored group is self-verifying.

use crate::chain::PermGroup;
use crate::error::{PermError, PermResult};
use crate::perm::Perm;
use num_bigint::BigInt;
use serde_json::{json, Value};
use std::str::FromStr;

pub fn perm_to_value(p: &Perm) -> Value {
    Value::Array(p.images().iter().map(|&x| json!(x)).collect())
}

pub fn perm_from_value(v: &Value) -> PermResult<Perm> {
    let arr = v
        .as_array()
        .ok_or_else(|| PermError::Json("permutation must be an array".into()))?;
    let img = arr
        .iter()
        .map(|x| {
            x.as_u64()
                .and_then(|n| u32::try_from(n).ok())
                .ok_or_else(|| PermError::Json(format!("bad image entry {x}")))
        })
        .collect::<PermResult<Vec<u32>>>()?;
    Perm::from_images(img)
}

pub fn group_to_value(g: &PermGroup) -> Value {
    json!({
        "degree": g.degree(),
        "generators": g.generators().iter().map(perm_to_value).collect::<Vec<_>>(),
        "order": g.order().to_string(),
    })
}

pub fn group_to_string(g: &PermGroup) -> String {
    let mut s = serde_json::to_string_pretty(&group_to_value(g)).expect("serializable");
    s.push('\n');
    s
}

pub fn group_from_value(v: &Value) -> PermResult<PermGroup> {
    let obj = v
        .as_object()
        .ok_or_else(|| PermError::Json("group must be an object".into()))?;
    let degree = obj
        .get("degree")
        .and_then(Value::as_u64)
        .ok_or_else(|| PermError::Json("missing or bad 'degree'".into()))?
        as usize;
    let gens_val = obj
        .get("generators")
        .and_then(Value::as_array)
        .ok_or_else(|| PermError::Json("missing or bad 'generators'".into()))?;
    let gens = gens_val
        .iter()
        .map(perm_from_value)
        .collect::<PermResult<Vec<Perm>>>()?;
    let group = PermGroup::from_generators(gens, degree)?;
    if let Some(order_str) = obj.get("order") {
        let order_str = order_str
            .as_str()
            .ok_or_else(|| PermError::Json("'order' must be a decimal string".into()))?;
        let stored = BigInt::from_str(order_str)
            .map_err(|e| PermError::Json(format!("bad 'order' value: {e}")))?;
        if stored != group.order() {
            return Err(PermError::Json(format!(
                "stored order {stored} does not match recomputed order {}",
                group.order()
            )));
        }
    }
    Ok(group)
}

pub fn group_from_str(s: &str) -> PermResult<PermGroup> {
    let v: Value =
        serde_json::from_str(s).map_err(|e| PermError::Json(format!("invalid JSON: {e}")))?;
    group_from_value(&v)
}
