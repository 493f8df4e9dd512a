//! File formats: channel JSON, region JSON, reports, CSV, and digests.
//!
//! All emitted JSON uses sorted keys (serde_json's default map) and ryu
//! float formatting, so identical inputs produce byte-identical files.
//! `+inf` capacities and constraint bounds are encoded as the string
//! `"inf"` since JSON has no infinity literal.

use std::fs;
use std::path::Path;

use serde_json::{json, Map, Value};

use mimoic_core::region::RateConstraint;
use mimoic_core::{CMatrix, ChannelInstance, Cx, RateRegion2D};

use crate::CliError;

pub fn finite_or_inf(x: f64) -> Value {
    if x == f64::INFINITY {
        Value::String("inf".into())
    } else {
        json!(x)
    }
}

fn parse_finite_or_inf(v: &Value, what: &str) -> Result<f64, CliError> {
    match v {
        Value::String(s) if s == "inf" => Ok(f64::INFINITY),
        Value::Number(n) => n
            .as_f64()
            .ok_or_else(|| CliError::usage(format!("{what}: bad number"))),
        _ => Err(CliError::usage(format!("{what}: expected number or \"inf\""))),
    }
}

fn matrix_to_json(m: &CMatrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| {
            let row: Vec<Value> = (0..m.cols())
                .map(|j| {
                    let e = m.get(i, j);
                    json!([e.re, e.im])
                })
                .collect();
            Value::Array(row)
        })
        .collect();
    Value::Array(rows)
}

fn matrix_from_json(v: &Value, rows: usize, cols: usize, name: &str) -> Result<CMatrix, CliError> {
    let outer = v
        .as_array()
        .ok_or_else(|| CliError::usage(format!("{name}: expected array of rows")))?;
    if outer.len() != rows {
        return Err(CliError::usage(format!(
            "{name}: expected {rows} rows, found {}",
            outer.len()
        )));
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for row in outer {
        let row = row
            .as_array()
            .ok_or_else(|| CliError::usage(format!("{name}: row is not an array")))?;
        if row.len() != cols {
            return Err(CliError::usage(format!("{name}: expected {cols} columns")));
        }
        for e in row {
            let pair = e
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| CliError::usage(format!("{name}: entry is not [re, im]")))?;
            let re = pair[0]
                .as_f64()
                .ok_or_else(|| CliError::usage(format!("{name}: bad real part")))?;
            let im = pair[1]
                .as_f64()
                .ok_or_else(|| CliError::usage(format!("{name}: bad imaginary part")))?;
            entries.push(Cx::new(re, im));
        }
    }
    CMatrix::new(rows, cols, entries).map_err(|e| CliError::usage(format!("{name}: {e}")))
}

pub fn channel_to_json(ch: &ChannelInstance) -> Value {
    json!({
        "m1": ch.m1,
        "n1": ch.n1,
        "m2": ch.m2,
        "n2": ch.n2,
        "h11": matrix_to_json(&ch.h11),
        "h12": matrix_to_json(&ch.h12),
        "h21": matrix_to_json(&ch.h21),
        "h22": matrix_to_json(&ch.h22),
        "rho": {
            "11": ch.rho11,
            "12": ch.rho12,
            "21": ch.rho21,
            "22": ch.rho22,
        },
        "c": {
            "12": finite_or_inf(ch.c12),
            "21": finite_or_inf(ch.c21),
        },
    })
}

fn get<'v>(obj: &'v Map<String, Value>, key: &str) -> Result<&'v Value, CliError> {
    obj.get(key)
        .ok_or_else(|| CliError::usage(format!("channel file: missing field \"{key}\"")))
}

fn usize_field(obj: &Map<String, Value>, key: &str) -> Result<usize, CliError> {
    get(obj, key)?
        .as_u64()
        .map(|v| v as usize)
        .ok_or_else(|| CliError::usage(format!("channel file: \"{key}\" must be a count")))
}

pub fn channel_from_json(v: &Value) -> Result<ChannelInstance, CliError> {
    let obj = v
        .as_object()
        .ok_or_else(|| CliError::usage("channel file: expected a JSON object"))?;
    let m1 = usize_field(obj, "m1")?;
    let n1 = usize_field(obj, "n1")?;
    let m2 = usize_field(obj, "m2")?;
    let n2 = usize_field(obj, "n2")?;
    let rho = get(obj, "rho")?
        .as_object()
        .ok_or_else(|| CliError::usage("channel file: \"rho\" must be an object"))?;
    let c = get(obj, "c")?
        .as_object()
        .ok_or_else(|| CliError::usage("channel file: \"c\" must be an object"))?;
    let rho_field = |key: &str| -> Result<f64, CliError> {
        rho.get(key)
            .and_then(Value::as_f64)
            .ok_or_else(|| CliError::usage(format!("channel file: rho.{key} must be a number")))
    };
    let ch = ChannelInstance::new(
        m1,
        n1,
        m2,
        n2,
        matrix_from_json(get(obj, "h11")?, n1, m1, "h11")?,
        matrix_from_json(get(obj, "h12")?, n2, m1, "h12")?,
        matrix_from_json(get(obj, "h21")?, n1, m2, "h21")?,
        matrix_from_json(get(obj, "h22")?, n2, m2, "h22")?,
        [
            rho_field("11")?,
            rho_field("12")?,
            rho_field("21")?,
            rho_field("22")?,
        ],
        parse_finite_or_inf(
            c.get("12")
                .ok_or_else(|| CliError::usage("channel file: missing c.12"))?,
            "c.12",
        )?,
        parse_finite_or_inf(
            c.get("21")
                .ok_or_else(|| CliError::usage("channel file: missing c.21"))?,
            "c.21",
        )?,
    )
    .map_err(|e| CliError::usage(format!("channel file: {e}")))?;
    Ok(ch)
}

pub fn constraint_to_json(k: &RateConstraint) -> Value {
    json!({ "a": k.a, "b": k.b, "c": finite_or_inf(k.c) })
}

pub fn region_to_json(r: &RateRegion2D) -> Value {
    json!({
        "constraints": r.constraints.iter().map(constraint_to_json).collect::<Vec<_>>(),
        "vertices": r.vertices.iter().map(|&(x, y)| json!([x, y])).collect::<Vec<_>>(),
        "empty": r.empty,
    })
}

pub fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::usage(format!("{} is not valid JSON: {e}", path.display())))
}

pub fn write_json(path: &Path, value: &Value) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::failure(format!("serialization failed: {e}")))?;
    text.push('\n');
    fs::write(path, text)
        .map_err(|e| CliError::failure(format!("cannot write {}: {e}", path.display())))
}

/// FNV-1a 64 over the raw bytes, as a hex tag for run reports.
pub fn digest(bytes: &[u8]) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("fnv1a:{h:016x}")
}

pub fn digest_file(path: &Path) -> Result<String, CliError> {
    let bytes = fs::read(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(digest(&bytes))
}

/// Plain decimal with 12 significant digits (no exponent), for CSV curves.
pub fn format_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0.00000000000".into();
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (11 - mag).max(0) as usize;
    format!("{x:.decimals$}")
}
