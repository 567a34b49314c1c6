//! Record encoding. Every value is written as a string so exact integers and
//! rationals never pass through floating point.

use std::io::Write;

use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// One output row: ordered `(column, value)` pairs. All records emitted by a
/// single command share the same columns.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Record {
    fields: Vec<(String, String)>,
}

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.fields.push((key.into(), value.to_string()));
        self
    }

    pub fn fields(&self) -> &[(String, String)] {
        &self.fields
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    fn keys(&self) -> Vec<&str> {
        self.fields.iter().map(|(k, _)| k.as_str()).collect()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum OutputError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub fn write_records<W: Write>(out: W, records: &[Record], format: Format) -> Result<(), OutputError> {
    match format {
        Format::Csv => write_csv(out, records),
        Format::Json => write_json(out, records),
    }
}

fn write_csv<W: Write>(out: W, records: &[Record]) -> Result<(), OutputError> {
    let mut writer = csv::Writer::from_writer(out);
    if let Some(first) = records.first() {
        writer.write_record(first.keys())?;
    }
    for record in records {
        writer.write_record(record.fields.iter().map(|(_, v)| v.as_str()))?;
    }
    writer.flush()?;
    Ok(())
}

fn write_json<W: Write>(mut out: W, records: &[Record]) -> Result<(), OutputError> {
    let rows: Vec<Value> = records
        .iter()
        .map(|r| {
            Value::Object(
                r.fields
                    .iter()
                    .map(|(k, v)| (k.clone(), Value::String(v.clone())))
                    .collect::<Map<_, _>>(),
            )
        })
        .collect();
    serde_json::to_writer_pretty(&mut out, &rows)?;
    writeln!(out)?;
    Ok(())
}

pub fn to_string(records: &[Record], format: Format) -> String {
    let mut buf = Vec::new();
    write_records(&mut buf, records, format).expect("writing to memory");
    String::from_utf8(buf).expect("records are utf-8")
}

/// Reads records back from either encoding.
pub fn parse_records(text: &str, format: Format) -> Result<Vec<Record>, OutputError> {
    match format {
        Format::Csv => {
            let mut reader = csv::Reader::from_reader(text.as_bytes());
            let headers = reader.headers()?.clone();
            reader
                .records()
                .map(|row| {
                    let row = row?;
                    Ok(Record {
                        fields: headers
                            .iter()
                            .zip(row.iter())
                            .map(|(k, v)| (k.to_string(), v.to_string()))
                            .collect(),
                    })
                })
                .collect()
        }
        Format::Json => {
            let value: Value = serde_json::from_str(text)?;
            let rows = value
                .as_array()
                .ok_or_else(|| OutputError::Malformed("expected a JSON array".into()))?;
            rows.iter()
                .map(|row| {
                    let obj = row
                        .as_object()
                        .ok_or_else(|| OutputError::Malformed("expected an object".into()))?;
                    let fields = obj
                        .iter()
                        .map(|(k, v)| match v {
                            Value::String(s) => Ok((k.clone(), s.clone())),
                            other => Err(OutputError::Malformed(format!("non-string value {other}"))),
                        })
                        .collect::<Result<_, _>>()?;
                    Ok(Record { fields })
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Vec<Record> {
        vec![
            Record::new().with("n", 3).with("b", "1,1,1").with("coeff", "-3"),
            Record::new()
                .with("n", 3)
                .with("b", "0,3,0")
                .with("coeff", "123456789012345678901234567890"),
        ]
    }

    #[test]
    fn csv_round_trip() {
        let text = to_string(&sample(), Format::Csv);
        assert!(text.starts_with("n,b,coeff\n3,\"1,1,1\",-3\n"));
        assert_eq!(parse_records(&text, Format::Csv).unwrap(), sample());
    }

    #[test]
    fn json_round_trip() {
        let text = to_string(&sample(), Format::Json);
        assert!(text.contains("\"coeff\": \"123456789012345678901234567890\""));
        assert_eq!(parse_records(&text, Format::Json).unwrap(), sample());
    }

    #[test]
    fn json_rejects_numbers() {
        assert!(parse_records("[{\"n\": 3}]", Format::Json).is_err());
    }

    #[test]
    fn empty_stream() {
        assert_eq!(to_string(&[], Format::Csv), "");
        assert_eq!(to_string(&[], Format::Json).trim(), "[]");
    }
}
