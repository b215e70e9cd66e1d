//! Lossless rendering of command results as plain text, CSV or JSON.
//!
//! Exact values never pass through floating point: big integers are decimal
//! strings and rationals are `num/den` (plain, CSV) or
//! `{"num": "..", "den": ".."}` (JSON).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use serde_json::{json, Map, Value as Json};

use crate::rational::{render, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Plain,
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(BigInt),
    Rat(Rational),
    Real(f64),
    Bool(bool),
    Text(String),
    List(Vec<Value>),
}

impl From<&BigUint> for Value {
    fn from(v: &BigUint) -> Self {
        Value::Int(BigInt::from(v.clone()))
    }
}

impl From<u32> for Value {
    fn from(v: u32) -> Self {
        Value::Int(v.into())
    }
}

impl From<Rational> for Value {
    fn from(v: Rational) -> Self {
        Value::Rat(v)
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Real(v)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_owned())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Text(v)
    }
}

impl Value {
    fn to_text(&self, list_sep: &str) -> String {
        match self {
            Value::Int(i) => i.to_string(),
            Value::Rat(q) => render(q),
            Value::Real(x) => format!("{x:e}"),
            Value::Bool(b) => b.to_string(),
            Value::Text(s) => s.clone(),
            Value::List(items) => items
                .iter()
                .map(|v| v.to_text(list_sep))
                .collect::<Vec<_>>()
                .join(list_sep),
        }
    }

    fn to_json(&self) -> Json {
        match self {
            Value::Int(i) => Json::String(i.to_string()),
            Value::Rat(q) => json!({ "num": q.numer().to_string(), "den": q.denom().to_string() }),
            Value::Real(x) => serde_json::Number::from_f64(*x).map_or(Json::Null, Json::Number),
            Value::Bool(b) => Json::Bool(*b),
            Value::Text(s) => Json::String(s.clone()),
            Value::List(items) => Json::Array(items.iter().map(Value::to_json).collect()),
        }
    }
}

pub type Row = Vec<(&'static str, Value)>;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct OutputRecord {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub rows: Vec<Row>,
}

impl OutputRecord {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_owned(),
            ..Self::default()
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_owned(), value.to_string());
        self
    }

    pub fn push(&mut self, row: Row) {
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Plain => self.render_plain(),
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json(),
        }
    }

    fn columns(&self) -> Vec<&'static str> {
        self.rows
            .first()
            .map(|r| r.iter().map(|(k, _)| *k).collect())
            .unwrap_or_default()
    }

    fn render_plain(&self) -> String {
        let mut out = format!("# {}", self.command);
        for (k, v) in &self.parameters {
            let _ = write!(out, " {k}={v}");
        }
        out.push('\n');
        let columns = self.columns();
        if !columns.is_empty() {
            let _ = writeln!(out, "# {}", columns.join("  "));
        }
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|(_, v)| v.to_text(" ")).collect();
            let _ = writeln!(out, "{}", cells.join("  "));
        }
        out
    }

    fn render_csv(&self) -> String {
        let mut writer = csv::WriterBuilder::new().from_writer(Vec::new());
        let columns = self.columns();
        if !columns.is_empty() {
            writer.write_record(&columns).expect("in-memory write");
        }
        for row in &self.rows {
            writer
                .write_record(row.iter().map(|(_, v)| v.to_text(";")))
                .expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 input")
    }

    pub fn to_json(&self) -> Json {
        let rows: Vec<Json> = self
            .rows
            .iter()
            .map(|row| {
                Json::Object(
                    row.iter()
                        .map(|(k, v)| ((*k).to_owned(), v.to_json()))
                        .collect::<Map<_, _>>(),
                )
            })
            .collect();
        json!({
            "command": self.command,
            "parameters": self.parameters,
            "rows": rows,
        })
    }

    fn render_json(&self) -> String {
        let mut s = serde_json::to_string(&self.to_json()).expect("json values always serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn sample() -> OutputRecord {
        let mut rec = OutputRecord::new("demo").param("n", 2);
        rec.push(vec![
            ("n", Value::from(2u32)),
            (
                "values",
                Value::List(vec![rat(-1, 2).into(), rat(3, 1).into()]),
            ),
        ]);
        rec
    }

    #[test]
    fn plain_and_csv_are_lossless() {
        let rec = sample();
        assert_eq!(
            rec.render(Format::Plain),
            "# demo n=2\n# n  values\n2  -1/2 3\n"
        );
        assert_eq!(rec.render(Format::Csv), "n,values\n2,-1/2;3\n");
    }

    #[test]
    fn json_rationals_are_string_pairs() {
        let text = sample().render(Format::Json);
        let parsed: Json = serde_json::from_str(&text).unwrap();
        assert_eq!(
            parsed["rows"][0]["values"][0],
            json!({"num": "-1", "den": "2"})
        );
        assert_eq!(parsed["parameters"]["n"], json!("2"));
        assert_eq!(serde_json::to_string(&parsed).unwrap() + "\n", text);
    }
}
