use num_bigint::BigUint;
use partbias::ExactRational;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use serde_json::Value;

/// Ordered field list; keeps CSV columns and JSON keys in the same order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Row(Vec<(String, Value)>);

impl Row {
    pub fn new() -> Self {
        Row::default()
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.0.push((key.to_string(), value.into()));
        self
    }

    pub fn fields(&self) -> &[(String, Value)] {
        &self.0
    }
}

impl Serialize for Row {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut map = ser.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

pub fn rational(q: &ExactRational) -> Value {
    Value::String(q.to_string())
}

pub fn opt_rational(q: Option<&ExactRational>) -> Value {
    q.map_or(Value::Null, rational)
}

pub fn count(c: &BigUint) -> Value {
    Value::String(c.to_string())
}

/// Shortest decimal that parses back to the same `f64`.
pub fn float(x: f64) -> Value {
    Value::String(format!("{x:?}"))
}

pub fn list<T: Into<Value> + Copy>(xs: &[T]) -> Value {
    Value::Array(xs.iter().map(|&x| x.into()).collect())
}

#[derive(Debug, Serialize)]
pub struct Metadata {
    pub version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: Row,
    pub results: Vec<Row>,
    pub metadata: Metadata,
}

impl OutputRecord {
    pub fn new(command: &str, inputs: Row, results: Vec<Row>) -> Self {
        OutputRecord {
            command: command.to_string(),
            inputs,
            results,
            metadata: Metadata {
                version: env!("CARGO_PKG_VERSION"),
                timing_ms: None,
            },
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("rows are plain JSON values");
        s.push('\n');
        s
    }

    /// Header from the first row's keys; `null` becomes an empty field.
    pub fn to_csv(&self) -> String {
        let Some(first) = self.results.first() else {
            return String::new();
        };
        let header: Vec<&str> = first.fields().iter().map(|(k, _)| k.as_str()).collect();
        let mut out = csv::Writer::from_writer(Vec::new());
        out.write_record(&header).expect("in-memory write");
        for row in &self.results {
            let cells = header.iter().map(|key| {
                let value = row.fields().iter().find(|(k, _)| k == key).map(|(_, v)| v);
                csv_cell(value.unwrap_or(&Value::Null))
            });
            out.write_record(cells).expect("in-memory write");
        }
        String::from_utf8(out.into_inner().expect("in-memory flush")).expect("UTF-8 fields")
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_escapes_and_nulls() {
        let rec = OutputRecord::new(
            "t",
            Row::new(),
            vec![
                Row::new().with("a", "1/2").with("b", Value::Null),
                Row::new().with("a", list(&[1u64, 2])).with("b", 3u64),
            ],
        );
        assert_eq!(rec.to_csv(), "a,b\n1/2,\n\"[1,2]\",3\n");
    }

    #[test]
    fn json_keeps_field_order() {
        let rec = OutputRecord::new("t", Row::new().with("z", 1).with("a", 2), vec![]);
        let json = rec.to_json();
        assert!(json.find("\"z\"").unwrap() < json.find("\"a\"").unwrap());
    }

    #[test]
    fn floats_round_trip() {
        for x in [2.0 / 3.0, 1e-300, 0.1] {
            let Value::String(s) = float(x) else { unreachable!() };
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
    }
}
