//! JSON encodings. Rationals are always strings (`"a"` or `"a/b"`).

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::arith::{parse_rational, QMatrix, Rational, SparsePoly};
use crate::error::{Error, Result};
use crate::projective::{LinSpace, PPoint, PlueckerVector};

pub fn ser_rational<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

pub fn ser_rationals<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().serialize(s)
}

/// A rational given either as a JSON string (`"3/4"`) or a JSON integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonRational(pub Rational);

impl<'de> Deserialize<'de> for JsonRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        rational_from_value(&v)
            .map(JsonRational)
            .map_err(serde::de::Error::custom)
    }
}

pub fn rational_from_value(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(crate::arith::int(n.as_i64().expect("checked"))),
        Value::Number(n) if n.is_u64() => {
            Ok(Rational::from_integer(n.as_u64().expect("checked").into()))
        }
        other => Err(Error::Invalid(format!(
            "expected an integer or a \"num/den\" string, got {other}"
        ))),
    }
}

pub fn rational(q: &Rational) -> Value {
    Value::String(q.to_string())
}

pub fn rationals(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational).collect())
}

pub fn point(p: &PPoint) -> Value {
    rationals(p.coords())
}

pub fn matrix(m: &QMatrix) -> Value {
    Value::Array(m.row_iter().map(rationals).collect())
}

pub fn space(l: &LinSpace) -> Value {
    matrix(l.generators())
}

/// Plücker vector as a map from concatenated indices (`"013"`, or
/// comma-separated once an index exceeds 9) to values.
pub fn pluecker(pl: &PlueckerVector) -> Value {
    let entries: BTreeMap<String, Value> = pl
        .entries()
        .iter()
        .map(|(k, v)| (index_label(k), rational(v)))
        .collect();
    json!({ "n": pl.ambient(), "dim": pl.dim(), "entries": entries })
}

pub fn index_label(indices: &[usize]) -> String {
    if indices.iter().all(|&i| i < 10) {
        indices.iter().map(ToString::to_string).collect()
    } else {
        indices.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    }
}

/// Form as `{"nvars": k, "terms": [[exponents, "coeff"], ...]}`, terms in
/// decreasing lexicographic order of exponents.
pub fn poly(f: &SparsePoly) -> Value {
    let terms: Vec<Value> = f
        .terms()
        .rev()
        .map(|(e, c)| json!([e, c.to_string()]))
        .collect();
    json!({ "nvars": f.nvars(), "terms": terms, "text": f.to_string() })
}

pub fn poly_from_value(v: &Value) -> Result<SparsePoly> {
    let nvars = v
        .get("nvars")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Invalid("form.nvars missing".into()))? as usize;
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Invalid("form.terms missing".into()))?;
    let mut parsed = Vec::with_capacity(terms.len());
    for (i, t) in terms.iter().enumerate() {
        let pair = t
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::Invalid(format!("form.terms[{i}] is not a pair")))?;
        let exps: Vec<u32> = serde_json::from_value(pair[0].clone())
            .map_err(|e| Error::Invalid(format!("form.terms[{i}][0]: {e}")))?;
        parsed.push((exps, rational_from_value(&pair[1])?));
    }
    SparsePoly::from_terms(nvars, parsed)
}

pub fn point_from_values(v: &[JsonRational]) -> Result<PPoint> {
    PPoint::new(v.iter().map(|q| q.0.clone()).collect())
}

pub fn matrix_from_values(rows: &[Vec<JsonRational>]) -> Result<QMatrix> {
    QMatrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|q| q.0.clone()).collect())
            .collect(),
    )
}

pub fn space_from_values(rows: &[Vec<JsonRational>]) -> Result<LinSpace> {
    LinSpace::new(matrix_from_values(rows)?)
}
