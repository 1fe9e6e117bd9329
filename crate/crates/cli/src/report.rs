//! Report envelope and number formatting shared by every subcommand.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Map, Value};

pub const REPORT_SCHEMA: &str = "freeprod/report/v1";

/// Failure classes mapped to process exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Bad input of any kind: exit 2.
    Invalid(String),
    /// Resource budget hit; the partial report is still printed. Exit 3.
    Budget {
        message: String,
        partial: Option<Box<Output>>,
    },
}

impl CliError {
    pub fn invalid(e: impl ToString) -> Self {
        CliError::Invalid(e.to_string())
    }
}

/// Result of a subcommand before it is wrapped in the envelope.
#[derive(Debug)]
pub enum Output {
    Json {
        inputs: Value,
        outputs: Value,
        rules: Vec<String>,
    },
    Csv(String),
}

pub fn envelope(
    command: &str,
    inputs: Value,
    outputs: Value,
    rules: Vec<String>,
) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema".into(), json!(REPORT_SCHEMA));
    m.insert("command".into(), json!(command));
    m.insert("inputs".into(), inputs);
    m.insert("outputs".into(), outputs);
    m.insert("rules".into(), json!(rules));
    m
}

/// Rounds to 12 significant digits so reports stay byte-stable across
/// platforms with slightly different libm results.
pub fn sig12(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float");
    json!(rounded)
}

pub fn sig12_text(x: f64) -> String {
    match sig12(x) {
        Value::Number(n) => n.to_string(),
        _ => "nan".to_string(),
    }
}

/// Exact value as `"p/q"` plus its 12-digit decimal approximation.
pub fn rational_value(q: &BigRational) -> Value {
    json!({
        "exact": q.to_string(),
        "approx": sig12(q.to_f64().unwrap_or(f64::INFINITY)),
    })
}

/// Accepts `p/q`, an integer, or a plain decimal such as `2.75`, and returns
/// the exact rational it denotes.
pub fn parse_rational(text: &str) -> Result<BigRational, String> {
    let s = text.trim();
    let bad = || format!("`{text}` is not a number (use p/q or a decimal)");
    if s.contains('/') {
        let q = BigRational::from_str(s).map_err(|_| bad())?;
        return Ok(q);
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty()
        || !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let numer = BigInt::from_str(&digits).map_err(|_| bad())?;
    let denom = num_traits::pow(BigInt::from(10), frac.len());
    let q = BigRational::new(numer, denom);
    Ok(if neg && !q.is_zero() { -q } else { q })
}
