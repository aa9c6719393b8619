//! Input reading, JSON number encodings and error classes.

use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::de::{self, DeserializeOwned, Deserializer};
use serde::Deserialize;
use serde_json::Value;
use thiserror::Error;

/// Largest magnitude written as a JSON number; larger integers become strings.
const MAX_SAFE: i64 = (1 << 53) - 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("computation failed: {0}")]
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Compute(_) => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn input_err(e: impl ToString) -> CliError {
    CliError::Input(e.to_string())
}

pub fn compute_err(e: impl ToString) -> CliError {
    CliError::Compute(e.to_string())
}

/// The text of exactly one of a file path (`-` for stdin) or inline JSON.
pub fn read_source(path: Option<&Path>, inline: Option<&str>) -> CliResult<String> {
    match (path, inline) {
        (Some(_), Some(_)) => Err(input_err("give either an input file or --inline, not both")),
        (None, None) => Err(input_err("no input: pass a file, `-` for stdin, or --inline")),
        (None, Some(s)) => Ok(s.to_string()),
        (Some(p), None) if p == Path::new("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(input_err)?;
            Ok(s)
        }
        (Some(p), None) => std::fs::read_to_string(p).map_err(|e| input_err(format!("{}: {e}", p.display()))),
    }
}

pub fn parse_json<T: DeserializeOwned>(text: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| input_err(format!("malformed JSON: {e}")))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Scalar {
    Int(i64),
    Big(u64),
    Text(String),
}

/// An integer given as a JSON number or a decimal string.
#[derive(Clone, Debug)]
pub struct JInt(pub BigInt);

impl<'de> Deserialize<'de> for JInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match Scalar::deserialize(d)? {
            Scalar::Int(i) => Ok(JInt(BigInt::from(i))),
            Scalar::Big(u) => Ok(JInt(BigInt::from(u))),
            Scalar::Text(s) => s.trim().parse().map(JInt).map_err(|_| de::Error::custom(format!("not an integer: {s:?}"))),
        }
    }
}

/// A rational given as a JSON integer or a string `"p"` or `"p/q"`.
#[derive(Clone, Debug)]
pub struct JRat(pub BigRational);

impl<'de> Deserialize<'de> for JRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = match Scalar::deserialize(d)? {
            Scalar::Int(i) => return Ok(JRat(BigRational::from_integer(BigInt::from(i)))),
            Scalar::Big(u) => return Ok(JRat(BigRational::from_integer(BigInt::from(u)))),
            Scalar::Text(s) => s,
        };
        let bad = || de::Error::custom(format!("not a rational: {s:?}"));
        let (n, q) = match s.split_once('/') {
            Some((n, q)) => (n.trim(), q.trim()),
            None => (s.trim(), "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let q: BigInt = q.parse().map_err(|_| bad())?;
        if q == BigInt::from(0) {
            return Err(bad());
        }
        Ok(JRat(BigRational::new(n, q)))
    }
}

pub fn ints(v: &[JInt]) -> Vec<BigInt> {
    v.iter().map(|x| x.0.clone()).collect()
}

pub fn int_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(i) if i.abs() <= MAX_SAFE => Value::from(i),
        _ => Value::from(x.to_string()),
    }
}

pub fn vec_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_json).collect())
}

pub fn mat_json(m: &[Vec<BigInt>]) -> Value {
    Value::Array(m.iter().map(|r| vec_json(r)).collect())
}

pub fn rat_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rat_vec_json(v: &[BigRational]) -> Value {
    Value::Array(v.iter().map(|q| Value::from(rat_string(q))).collect())
}

/// `key: value` lines; vectors print as tuples.
pub fn render_table(v: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = v {
        let width = map.keys().map(String::len).max().unwrap_or(0);
        for (k, x) in map {
            let _ = writeln!(out, "{k:width$}  {}", cell(x));
        }
    } else {
        let _ = writeln!(out, "{}", cell(v));
    }
    out
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) if xs.iter().all(|x| !x.is_array() && !x.is_object()) => {
            format!("({})", xs.iter().map(cell).collect::<Vec<_>>().join(", "))
        }
        Value::Array(xs) if xs.iter().all(Value::is_array) => {
            if xs.is_empty() {
                "-".into()
            } else {
                xs.iter().map(cell).collect::<Vec<_>>().join(" ")
            }
        }
        other => other.to_string(),
    }
}

/// Indented JSON in which arrays of scalars stay on one line.
pub fn render_json(v: &Value) -> String {
    let mut out = String::new();
    write_json(&mut out, v, 0);
    out.push('\n');
    out
}

fn write_json(out: &mut String, v: &Value, depth: usize) {
    let pad = |out: &mut String, d: usize| out.extend(std::iter::repeat_n("  ", d));
    match v {
        Value::Array(xs) if xs.iter().all(|x| !x.is_array() && !x.is_object()) => {
            out.push_str(&serde_json::to_string(v).expect("JSON values serialize"));
        }
        Value::Array(xs) => {
            out.push_str("[\n");
            for (i, x) in xs.iter().enumerate() {
                pad(out, depth + 1);
                write_json(out, x, depth + 1);
                out.push_str(if i + 1 < xs.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                pad(out, depth + 1);
                out.push_str(&Value::from(k.as_str()).to_string());
                out.push_str(": ");
                write_json(out, x, depth + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}
