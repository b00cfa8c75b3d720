//! Run manifests and the two output encodings.
//!
//! The CSV form is lossless: one `path,type,value` row per JSON node in
//! depth-first order, with containers recording their size, so
//! [`from_long_csv`] rebuilds exactly the JSON document.

use serde::Serialize;
use serde_json::{Map, Number, Value};

use crate::CliError;

#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    /// Arguments that reproduce this run (config merged in, thread count dropped).
    pub argv: Vec<String>,
    pub parameters: Value,
    pub eps: f64,
    pub precision_cap: usize,
    /// `SOURCE_DATE_EPOCH` when set, the wall clock with `--stamp`, otherwise null.
    pub timestamp: Option<u64>,
}

/// The result object with the manifest added under `manifest`.
pub fn document(result: Value, manifest: &Manifest) -> Value {
    let manifest = serde_json::to_value(manifest).expect("manifest serializes");
    match result {
        Value::Object(mut m) => {
            m.insert("manifest".into(), manifest);
            Value::Object(m)
        }
        other => {
            let mut m = Map::new();
            m.insert("result".into(), other);
            m.insert("manifest".into(), manifest);
            Value::Object(m)
        }
    }
}

pub fn to_json(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("JSON values serialize");
    s.push('\n');
    s
}

fn escape(seg: &str) -> String {
    seg.replace('~', "~0").replace('/', "~1")
}

fn unescape(seg: &str) -> String {
    seg.replace("~1", "/").replace("~0", "~")
}

fn flatten(v: &Value, path: &str, w: &mut csv::Writer<Vec<u8>>) -> csv::Result<()> {
    match v {
        Value::Null => w.write_record([path, "null", ""]),
        Value::Bool(b) => w.write_record([path, "bool", if *b { "true" } else { "false" }]),
        Value::Number(n) => w.write_record([path, "number", &n.to_string()]),
        Value::String(s) => w.write_record([path, "string", s]),
        Value::Array(items) => {
            w.write_record([path, "array", &items.len().to_string()])?;
            for (i, item) in items.iter().enumerate() {
                flatten(item, &format!("{path}/{i}"), w)?;
            }
            Ok(())
        }
        Value::Object(m) => {
            w.write_record([path, "object", &m.len().to_string()])?;
            for (k, item) in m {
                flatten(item, &format!("{path}/{}", escape(k)), w)?;
            }
            Ok(())
        }
    }
}

pub fn to_long_csv(doc: &Value) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["path", "type", "value"]).expect("in-memory write");
    flatten(doc, "", &mut w).expect("in-memory write");
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV of UTF-8 input")
}

fn bad_csv(msg: impl Into<String>) -> CliError {
    CliError::usage("malformed_csv", msg)
}

/// Inverse of [`to_long_csv`].
pub fn from_long_csv(text: &str) -> Result<Value, CliError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = r.records().collect::<Result<_, _>>().map_err(|e| bad_csv(e.to_string()))?;
    let mut pos = 0;
    let v = rebuild(&rows, &mut pos)?;
    if pos != rows.len() {
        return Err(bad_csv("trailing rows after the document"));
    }
    Ok(v)
}

fn rebuild(rows: &[csv::StringRecord], pos: &mut usize) -> Result<Value, CliError> {
    let row = rows.get(*pos).ok_or_else(|| bad_csv("unexpected end of rows"))?;
    *pos += 1;
    let (ty, val) = (row.get(1).unwrap_or(""), row.get(2).unwrap_or(""));
    let count = || val.parse::<usize>().map_err(|_| bad_csv(format!("bad container size `{val}`")));
    Ok(match ty {
        "null" => Value::Null,
        "bool" => Value::Bool(val == "true"),
        "number" => Value::Number(val.parse::<Number>().map_err(|_| bad_csv(format!("bad number `{val}`")))?),
        "string" => Value::String(val.to_string()),
        "array" => Value::Array((0..count()?).map(|_| rebuild(rows, pos)).collect::<Result<_, _>>()?),
        "object" => {
            let mut m = Map::new();
            for _ in 0..count()? {
                let path = rows.get(*pos).and_then(|r| r.get(0)).ok_or_else(|| bad_csv("unexpected end of rows"))?;
                let key = unescape(path.rsplit('/').next().unwrap_or(""));
                m.insert(key, rebuild(rows, pos)?);
            }
            Value::Object(m)
        }
        other => return Err(bad_csv(format!("unknown row type `{other}`"))),
    })
}

/// Prefix of the wide CSV form: a comment line carrying the manifest.
pub const WIDE_PREFIX: &str = "# manifest: ";

pub fn to_wide_csv(table: &str, manifest: &Manifest) -> String {
    format!("{WIDE_PREFIX}{}\n{table}", serde_json::to_string(manifest).expect("manifest serializes"))
}

/// Finds the manifest in a JSON document, a long CSV or a wide CSV.
pub fn manifest_of(text: &str) -> Result<Value, CliError> {
    let doc = if let Some(rest) = text.strip_prefix(WIDE_PREFIX) {
        let line = rest.lines().next().unwrap_or("");
        serde_json::from_str(line).map_err(|e| bad_csv(e.to_string()))?
    } else if text.starts_with("path,type,value") {
        from_long_csv(text)?
    } else {
        serde_json::from_str::<Value>(text).map_err(|e| CliError::usage("malformed_json", e.to_string()))?
    };
    match doc.get("manifest") {
        Some(m) => Ok(m.clone()),
        None if doc.get("argv").is_some() => Ok(doc),
        None => Err(CliError::usage("invalid_argument", "no manifest found")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn long_csv_round_trip() {
        let v = json!({
            "a/b": [1, -2.5, "x,\"y\"", null, true, [], {}],
            "n": {"~k": {"z": 1e300}},
            "0": "zero"
        });
        let csv = to_long_csv(&v);
        assert_eq!(from_long_csv(&csv).unwrap(), v);
        assert!(csv.starts_with("path,type,value\n,object,3\n"));
    }

    #[test]
    fn corrupt_csv_is_rejected() {
        assert!(from_long_csv("path,type,value\n,array,2\n/0,null,\n").is_err());
        assert!(from_long_csv("path,type,value\n,blob,1\n").is_err());
    }
}
