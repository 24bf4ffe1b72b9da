//! Interchange renderings of polynomials: a canonical JSON schema (with a
//! parser, so values round-trip) and LaTeX.
//!
//! The JSON schema is
//! `{"terms":[{"b":{"<j>":e},"beta":k,"c":"<decimal>","x":{"<i>":e}}, ...]}`
//! with the terms in canonical monomial order, object keys sorted, no
//! whitespace, exponent maps keyed by decimal variable index, and the
//! coefficient kept as a decimal string to protect arbitrary precision.
//! Identical polynomials therefore serialize to identical bytes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::poly::{Monomial, Polynomial};
use crate::{Error, Result};

fn exps_to_json(exps: &BTreeMap<u32, u32>) -> Value {
    let mut map = Map::new();
    for (&i, &e) in exps {
        map.insert(i.to_string(), Value::from(e));
    }
    Value::Object(map)
}

/// Renders the canonical JSON form.
pub fn to_json(p: &Polynomial) -> String {
    let terms: Vec<Value> = p
        .terms()
        .iter()
        .map(|(m, c)| {
            json!({
                "b": exps_to_json(m.b_exps()),
                "beta": m.beta_exp(),
                "c": c.to_string(),
                "x": exps_to_json(m.x_exps()),
            })
        })
        .collect();
    serde_json::to_string(&json!({ "terms": terms })).expect("serialization cannot fail")
}

fn exps_from_json(v: &Value, what: &str) -> Result<Vec<(u32, u32)>> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::InvalidArgument(format!("{what} exponents must be an object")))?;
    let mut out = Vec::with_capacity(obj.len());
    for (k, e) in obj {
        let idx: u32 = k
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad {what} index {k:?}")))?;
        let exp = e
            .as_u64()
            .and_then(|e| u32::try_from(e).ok())
            .ok_or_else(|| Error::InvalidArgument(format!("bad {what} exponent for index {k}")))?;
        if idx == 0 {
            return Err(Error::InvalidArgument(format!(
                "{what} indices are 1-based"
            )));
        }
        out.push((idx, exp));
    }
    Ok(out)
}

/// Parses the canonical JSON form back into a polynomial.  Terms are
/// re-accumulated, so even non-canonical input (duplicate or zero terms)
/// yields the canonical value.
pub fn from_json(s: &str) -> Result<Polynomial> {
    let v: Value = serde_json::from_str(s)
        .map_err(|e| Error::InvalidArgument(format!("malformed JSON: {e}")))?;
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::InvalidArgument("missing \"terms\" array".into()))?;
    let mut p = Polynomial::zero();
    for t in terms {
        let c_str = t
            .get("c")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::InvalidArgument("term without coefficient string".into()))?;
        let c: BigInt = c_str
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad coefficient {c_str:?}")))?;
        let beta = t.get("beta").and_then(Value::as_u64).unwrap_or(0);
        let beta = u32::try_from(beta)
            .map_err(|_| Error::InvalidArgument("beta exponent out of range".into()))?;
        let x = t
            .get("x")
            .map(|v| exps_from_json(v, "x"))
            .transpose()?
            .unwrap_or_default();
        let b = t
            .get("b")
            .map(|v| exps_from_json(v, "b"))
            .transpose()?
            .unwrap_or_default();
        p.add_term(Monomial::from_parts(beta, x, b), c);
    }
    Ok(p)
}

/// Renders LaTeX source mirroring the usual notation: `\beta`, subscripted
/// variables, exponents in braces where needed, no explicit products.
pub fn to_latex(p: &Polynomial) -> String {
    use num_traits::{One, Signed};
    if p.is_zero() {
        return "0".into();
    }
    let sub = |i: u32| {
        if i < 10 {
            format!("_{i}")
        } else {
            format!("_{{{i}}}")
        }
    };
    let pow = |e: u32| match e {
        1 => String::new(),
        e if e < 10 => format!("^{e}"),
        e => format!("^{{{e}}}"),
    };
    let mut out = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        if k == 0 {
            if c.is_negative() {
                out.push('-');
            }
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mag = c.magnitude();
        let trivial = m == &Monomial::one();
        if !mag.is_one() || trivial {
            out.push_str(&mag.to_string());
        }
        if m.beta_exp() > 0 {
            out.push_str("\\beta");
            out.push_str(&pow(m.beta_exp()));
            if !m.x_exps().is_empty() || !m.b_exps().is_empty() {
                // keep the control word from swallowing the next letter
                out.push(' ');
            }
        }
        for (&i, &e) in m.x_exps() {
            out.push('x');
            out.push_str(&sub(i));
            out.push_str(&pow(e));
        }
        for (&j, &e) in m.b_exps() {
            out.push('b');
            out.push_str(&sub(j));
            out.push_str(&pow(e));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::linear_factor;

    #[test]
    fn json_is_canonical_and_round_trips() {
        let p = linear_factor(1, 1).unwrap();
        let s = to_json(&p);
        assert_eq!(
            s,
            r#"{"terms":[{"b":{},"beta":0,"c":"1","x":{"1":1}},{"b":{"1":1},"beta":0,"c":"1","x":{}},{"b":{"1":1},"beta":1,"c":"1","x":{"1":1}}]}"#
        );
        assert_eq!(from_json(&s).unwrap(), p);
    }

    #[test]
    fn json_round_trip_preserves_negative_and_large_coefficients() {
        let big = "123456789012345678901234567890";
        let p = Polynomial::term(
            Monomial::from_parts(2, [(1, 3)], [(12, 1)]),
            big.parse().unwrap(),
        );
        let q = &p - &Polynomial::one();
        assert_eq!(from_json(&to_json(&q)).unwrap(), q);
    }

    #[test]
    fn json_rejects_garbage() {
        assert!(from_json("{").is_err());
        assert!(from_json("{}").is_err());
        assert!(from_json(r#"{"terms":[{"c":"x"}]}"#).is_err());
        assert!(from_json(r#"{"terms":[{"c":"1","x":{"0":1}}]}"#).is_err());
    }

    #[test]
    fn latex_mirrors_the_notation() {
        let p = linear_factor(1, 1).unwrap();
        assert_eq!(to_latex(&p), "x_1 + b_1 + \\beta x_1b_1");
        let q = &Polynomial::constant(-3)
            * &Polynomial::term(Monomial::from_parts(2, [(1, 2)], [(12, 1)]), 1.into());
        assert_eq!(to_latex(&q), "-3\\beta^2 x_1^2b_{12}");
        assert_eq!(to_latex(&Polynomial::zero()), "0");
    }
}
