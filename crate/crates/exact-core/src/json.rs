//! JSON interchange for lattices.
//!
//! A lattice is `{"name": …, "gram": [[…]], "basis_in_ambient": [[…]]?}`.
//! Entries are JSON numbers when they fit in 53 bits and decimal strings
//! otherwise, so arbitrary-precision Gram matrices survive round-trips
//! through standard JSON tooling.

use crate::error::{CoreError, CoreResult};
use crate::lattice::Lattice;
use crate::IMat;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};
use std::str::FromStr;

const SAFE_LIMIT: i64 = (1i64 << 53) - 1;

/// Serialize one integer: a JSON number when it fits in 53 bits, a decimal
/// string otherwise.
pub fn int_to_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) if v.abs() <= SAFE_LIMIT => json!(v),
        _ => Value::String(x.to_string()),
    }
}

/// Parse one integer serialized by [`int_to_value`].
pub fn value_to_int(v: &Value) -> CoreResult<BigInt> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(CoreError::Json(format!("non-integer matrix entry: {n}")))
            }
        }
        Value::String(s) => BigInt::from_str(s.trim())
            .map_err(|_| CoreError::Json(format!("unparsable integer string: {s:?}"))),
        other => Err(CoreError::Json(format!("matrix entry is not a number: {other}"))),
    }
}

/// Serialize a matrix as an array of arrays of integers.
pub fn mat_to_value(m: &IMat) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(int_to_value).collect()))
            .collect(),
    )
}

/// Parse a matrix serialized by [`mat_to_value`].
pub fn value_to_mat(v: &Value, what: &str) -> CoreResult<IMat> {
    let rows = v
        .as_array()
        .ok_or_else(|| CoreError::Json(format!("{what} is not an array")))?;
    if rows.is_empty() {
        return Err(CoreError::Json(format!("{what} has no rows")));
    }
    let mut data: Vec<Vec<BigInt>> = Vec::with_capacity(rows.len());
    for row in rows {
        let cells = row
            .as_array()
            .ok_or_else(|| CoreError::Json(format!("{what} row is not an array")))?;
        data.push(cells.iter().map(value_to_int).collect::<CoreResult<_>>()?);
    }
    let width = data[0].len();
    if width == 0 || data.iter().any(|r| r.len() != width) {
        return Err(CoreError::Json(format!("{what} rows have inconsistent lengths")));
    }
    Ok(IMat::from_rows(data))
}

/// Serialize a lattice to a JSON value.
pub fn lattice_to_json(l: &Lattice) -> Value {
    let mut obj = Map::new();
    obj.insert("name".into(), Value::String(l.name.clone()));
    obj.insert("gram".into(), mat_to_value(&l.gram));
    if let Some(b) = &l.basis_in_ambient {
        obj.insert("basis_in_ambient".into(), mat_to_value(b));
    }
    Value::Object(obj)
}

/// Serialize a lattice to a pretty JSON string with a trailing newline.
pub fn lattice_to_string(l: &Lattice) -> String {
    let mut s = serde_json::to_string_pretty(&lattice_to_json(l)).expect("serializable");
    s.push('\n');
    s
}

/// Parse a lattice from a JSON string; any structural problem is reported as
/// a `Json` error.
pub fn lattice_from_str(s: &str) -> CoreResult<Lattice> {
    let v: Value =
        serde_json::from_str(s).map_err(|e| CoreError::Json(format!("invalid JSON: {e}")))?;
    lattice_from_json(&v)
}

/// Parse a lattice from a JSON value.
pub fn lattice_from_json(v: &Value) -> CoreResult<Lattice> {
    let obj = v
        .as_object()
        .ok_or_else(|| CoreError::Json("top level is not an object".into()))?;
    let name = match obj.get("name") {
        Some(Value::String(s)) => s.clone(),
        Some(other) => return Err(CoreError::Json(format!("name is not a string: {other}"))),
        None => "lattice".to_string(),
    };
    let gram_v = obj
        .get("gram")
        .ok_or_else(|| CoreError::Json("missing \"gram\" field".into()))?;
    let gram = value_to_mat(gram_v, "gram")?;
    if gram.rows() != gram.cols() {
        return Err(CoreError::Json(format!(
            "gram is {}x{}, expected square",
            gram.rows(),
            gram.cols()
        )));
    }
    if !gram.is_symmetric() {
        return Err(CoreError::Json("gram is not symmetric".into()));
    }
    let mut lat = Lattice::new(name, gram)?;
    if let Some(bv) = obj.get("basis_in_ambient") {
        let b = value_to_mat(bv, "basis_in_ambient")?;
        if b.rows() != lat.rank() {
            return Err(CoreError::Json(format!(
                "basis_in_ambient has {} rows, lattice has rank {}",
                b.rows(),
                lat.rank()
            )));
        }
        lat.basis_in_ambient = Some(b);
    }
    Ok(lat)
}
