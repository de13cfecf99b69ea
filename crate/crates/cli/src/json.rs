//! JSON forms of tower elements and paths.
//!
//! Elements: rationals are strings (`"3"`, `"-2/7"`), residues mod p are
//! numbers, extension elements are arrays of coordinates one level down,
//! lowest power first.  Steps are `{"chart": "affine", "c": elem,
//! "extension": null | {"minpoly": [elem, ...]}}` or `{"chart": "infinity"}`.

use dicrit_core::{BaseField, Chart, Elem, FieldTower, QdtPath, QdtStep, UniPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::CliError;

pub fn elem_to_json(e: &Elem) -> Value {
    match e {
        Elem::Rat(r) if r.is_integer() => Value::String(r.numer().to_string()),
        Elem::Rat(r) => Value::String(format!("{}/{}", r.numer(), r.denom())),
        Elem::Mod(n) => json!(n),
        Elem::Ext(v) => Value::Array(v.iter().map(elem_to_json).collect()),
    }
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn is_zero(e: &Elem) -> bool {
    match e {
        Elem::Rat(r) => r.numer() == &BigInt::from(0),
        Elem::Mod(n) => *n == 0,
        Elem::Ext(v) => v.is_empty(),
    }
}

fn elem_at(k: &FieldTower, depth: usize, v: &Value) -> Result<Elem, CliError> {
    if depth == 0 {
        return match (k.base(), v) {
            (BaseField::Rationals, Value::String(s)) => {
                let r = match s.split_once('/') {
                    Some((n, d)) => {
                        let (n, d): (BigInt, BigInt) = (n.trim().parse().map_err(|_| bad(s.clone()))?, d.trim().parse().map_err(|_| bad(s.clone()))?);
                        if d == BigInt::from(0) {
                            return Err(bad("zero denominator"));
                        }
                        BigRational::new(n, d)
                    }
                    None => BigRational::from_integer(s.trim().parse().map_err(|_| bad(format!("not a rational: {s}")))?),
                };
                Ok(Elem::Rat(r))
            }
            (BaseField::Rationals, Value::Number(n)) => {
                let n = n.as_i64().ok_or_else(|| bad(format!("not an integer: {n}")))?;
                Ok(Elem::Rat(BigRational::from_integer(n.into())))
            }
            (BaseField::Prime(p), Value::Number(n)) => {
                let n = n.as_u64().filter(|&n| n < p).ok_or_else(|| bad(format!("not a residue mod {p}: {n}")))?;
                Ok(Elem::Mod(n))
            }
            _ => Err(bad(format!("bad ground field element: {v}"))),
        };
    }
    let arr = v.as_array().ok_or_else(|| bad(format!("expected coordinate array, found {v}")))?;
    if arr.len() > k.level_degree(depth) {
        return Err(bad("too many coordinates"));
    }
    let coords = arr.iter().map(|c| elem_at(k, depth - 1, c)).collect::<Result<Vec<_>, _>>()?;
    if coords.last().is_some_and(is_zero) {
        return Err(bad("trailing zero coordinate"));
    }
    Ok(Elem::Ext(coords))
}

pub fn elem_from_json(k: &FieldTower, v: &Value) -> Result<Elem, CliError> {
    elem_at(k, k.depth(), v)
}

pub fn step_to_json(step: &QdtStep) -> Value {
    match &step.chart {
        Chart::Infinity => json!({ "chart": "infinity" }),
        Chart::Affine(c) => {
            let ext = step.extension.as_ref().map(|m| json!({ "minpoly": m.coeffs().iter().map(elem_to_json).collect::<Vec<_>>() }));
            json!({ "chart": "affine", "c": elem_to_json(c), "extension": ext })
        }
    }
}

pub fn path_to_json(path: &QdtPath) -> Value {
    Value::Array(path.steps().iter().map(step_to_json).collect())
}

pub fn path_from_json(root: &FieldTower, v: &Value) -> Result<QdtPath, CliError> {
    let steps = v.as_array().ok_or_else(|| bad("a path is an array of steps"))?;
    let mut path = QdtPath::new(root);
    for s in steps {
        let k = path.terminal_field().clone();
        let step = match s.get("chart").and_then(Value::as_str) {
            Some("infinity") => QdtStep::infinity(),
            Some("affine") => {
                let c = s.get("c").ok_or_else(|| bad("affine step without \"c\""))?;
                match s.get("extension") {
                    None | Some(Value::Null) => QdtStep::affine(elem_from_json(&k, c)?),
                    Some(ext) => {
                        let coeffs = ext
                            .get("minpoly")
                            .and_then(Value::as_array)
                            .ok_or_else(|| bad("extension without \"minpoly\""))?
                            .iter()
                            .map(|e| elem_from_json(&k, e))
                            .collect::<Result<Vec<_>, _>>()?;
                        let minpoly = UniPoly::new(&k, coeffs);
                        let target = k.extend(&minpoly)?;
                        QdtStep::extending(minpoly, elem_from_json(&target, c)?)
                    }
                }
            }
            _ => return Err(bad(format!("unknown step {s}"))),
        };
        path = path.push(step)?;
    }
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paths_round_trip() {
        let k = FieldTower::rationals();
        let mu = UniPoly::from_i64s(&k, &[-2, 0, 1]);
        let t = k.extend(&mu).unwrap();
        let half = k.div(&k.one(), &k.from_i64(-2)).unwrap();
        let steps = vec![
            QdtStep::affine(half),
            QdtStep::infinity(),
            QdtStep::extending(mu, t.generator().unwrap()),
            QdtStep::affine(t.from_i64(3)),
        ];
        let p = QdtPath::from_steps(&k, steps).unwrap();
        let v = path_to_json(&p);
        assert_eq!(v[0]["c"], json!("-1/2"));
        assert_eq!(path_from_json(&k, &v).unwrap(), p);
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(path_from_json(&k, &serde_json::from_str(&text).unwrap()).unwrap(), p);
    }

    #[test]
    fn malformed_paths_are_rejected() {
        let k = FieldTower::prime(5).unwrap();
        assert!(path_from_json(&k, &json!([{"chart": "affine", "c": 7}])).is_err());
        assert!(path_from_json(&k, &json!([{"chart": "sideways"}])).is_err());
        assert!(path_from_json(&k, &json!({"chart": "infinity"})).is_err());
        let reducible = json!([{"chart": "affine", "c": [0, 1], "extension": {"minpoly": [4, 0, 1]}}]);
        assert!(path_from_json(&k, &reducible).is_err());
        let ok = json!([{"chart": "affine", "c": [0, 1], "extension": {"minpoly": [3, 0, 1]}}]);
        assert_eq!(path_from_json(&k, &ok).unwrap().terminal_field().degree(), 2);
    }
}
