//! The shared matrix encoding:
//! `{"field": "Q" | "Fp:<p>", "rows": r, "cols": c, "entries": [...]}` with
//! row-major entries, rationals as `"num/den"` strings (`"num"` when the
//! denominator is 1) and residues as integers in `0..p`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use super::{FieldSpec, Matrix, Scalar};
use crate::Error;

#[derive(Serialize, Deserialize)]
struct MatrixWire {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Value>,
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let entries = self
            .scalars()
            .into_iter()
            .map(|s| serde_json::to_value(&s).expect("scalars always serialize"))
            .collect();
        MatrixWire { field: self.field(), rows: self.rows(), cols: self.cols(), entries }
            .serialize(serializer)
    }
}

fn entry(field: FieldSpec, v: &Value) -> Result<Scalar, Error> {
    match (field, v) {
        (FieldSpec::Rationals, Value::String(s)) => Scalar::parse_in(field, s),
        // integers are accepted for ℚ too, for hand-written files
        (FieldSpec::Rationals, Value::Number(n)) if n.is_i64() => Scalar::parse_in(field, &n.to_string()),
        (FieldSpec::PrimeField(_), Value::Number(n)) if n.is_u64() => Scalar::parse_in(field, &n.to_string()),
        _ => Err(Error::Parse(format!("bad {field} entry {v}"))),
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = MatrixWire::deserialize(deserializer)?;
        let scalars = wire
            .entries
            .iter()
            .map(|v| entry(wire.field, v))
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        Matrix::from_scalars(wire.field, wire.rows, wire.cols, scalars).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_encoding() {
        let q = FieldSpec::Rationals;
        let m = Matrix::from_scalars(
            q,
            1,
            3,
            vec![Scalar::rational(1, 2).unwrap(), Scalar::from_i64(q, -3), Scalar::zero(q)],
        )
        .unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"field":"Q","rows":1,"cols":3,"entries":["1/2","-3","0"]}"#);
        let back: Matrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn prime_field_encoding() {
        let f = FieldSpec::prime(7).unwrap();
        let m = Matrix::from_fn(f, 2, 2, |i, j| (i * 2 + j) as i64 + 5);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"field":"Fp:7","rows":2,"cols":2,"entries":[5,6,0,1]}"#);
        assert_eq!(serde_json::from_str::<Matrix>(&s).unwrap(), m);
    }

    #[test]
    fn rejects_malformed_input() {
        let bad = [
            r#"{"field":"Fp:7","rows":1,"cols":1,"entries":[7]}"#,
            r#"{"field":"Fp:7","rows":1,"cols":1,"entries":["3"]}"#,
            r#"{"field":"Q","rows":1,"cols":2,"entries":["1"]}"#,
            r#"{"field":"Fp:9","rows":1,"cols":1,"entries":[1]}"#,
            r#"{"field":"Q","rows":1,"cols":1,"entries":["1/0"]}"#,
        ];
        for s in bad {
            assert!(serde_json::from_str::<Matrix>(s).is_err(), "{s}");
        }
        let ok: Matrix = serde_json::from_str(r#"{"field":"Q","rows":1,"cols":1,"entries":[4]}"#).unwrap();
        assert_eq!(ok.get(0, 0).to_string(), "4");
    }
}
