//! Artifact writers: JSON with a fixed float format, and CSV tables.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::ser::Formatter;
use serde_json::Value;

use crate::error::{Error, Result};

/// Schema tag embedded in every JSON artifact.
pub const SCHEMA: &str = "lame-bessel.run/1";

/// Compact JSON formatter that writes every float with 17 significant
/// digits (`1.2345678901234567e-3`), so identical runs give identical bytes.
#[derive(Debug, Default, Clone, Copy)]
pub struct FixedFloatFormatter;

impl Formatter for FixedFloatFormatter {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

/// Serializes `value` as one line of JSON (trailing newline included).
pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedFloatFormatter);
    value.serialize(&mut ser).map_err(|e| Error::Consistency(format!("JSON encoding failed: {e}")))?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
}

/// Converts any serializable value into a JSON tree.
pub fn to_value<T: Serialize + ?Sized>(value: &T) -> Result<Value> {
    serde_json::to_value(value).map_err(|e| Error::Consistency(format!("JSON encoding failed: {e}")))
}

/// CSV with a header row taken from the field names of `T`.
pub fn to_csv_string<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::Consistency(format!("CSV encoding failed: {e}")))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Consistency(format!("CSV encoding failed: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv emits UTF-8"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn floats_have_seventeen_digits() {
        let s = to_json_string(&json!({"a": 0.1, "b": -2.5e-300, "c": 3, "d": f64::NAN})).unwrap();
        assert_eq!(s, "{\"a\":1.0000000000000001e-1,\"b\":-2.5000000000000000e-300,\"c\":3,\"d\":null}\n");
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["a"].as_f64(), Some(0.1));
    }

    #[test]
    fn csv_header_and_rows() {
        #[derive(Serialize)]
        struct Row {
            r: f64,
            #[serde(rename = "R_p")]
            count: u64,
        }
        let s = to_csv_string(&[Row { r: 1.5, count: 5 }, Row { r: 2.0, count: 9 }]).unwrap();
        assert_eq!(s, "r,R_p\n1.5,5\n2.0,9\n");
    }
}
