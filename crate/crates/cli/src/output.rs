//! Report documents and their markdown, csv and json renderings.
//!
//! All three renderings carry the same exact values. In json a rational is
//! `{"num": "<digits>", "den": "<digits>"}` with `den > 0`, a polynomial is
//! its ascending coefficient list, and a rational function is
//! `{"num": [...], "den": [...], "text": "..."}`.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use poincare_core::{Polynomial, Rational, RationalFunction};
use serde_json::{json, Value as Json};

/// Version of the json document layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Markdown,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "markdown" | "md" => Ok(Format::Markdown),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}` (markdown, csv, json)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Int(BigInt),
    Rat(Rational),
    Text(String),
    Bool(bool),
    Poly(Polynomial),
    RatFun(RationalFunction),
    List(Vec<Value>),
    Null,
}

impl Value {
    fn plain(&self) -> String {
        match self {
            Value::Int(n) => n.to_string(),
            Value::Rat(q) => q.to_string(),
            Value::Text(s) => s.clone(),
            Value::Bool(b) => b.to_string(),
            Value::Poly(p) => p.to_text("z"),
            Value::RatFun(f) => f.to_text(),
            Value::List(vs) => vs.iter().map(Value::plain).collect::<Vec<_>>().join("; "),
            Value::Null => String::new(),
        }
    }

    fn json(&self) -> Json {
        match self {
            Value::Int(n) => json!({ "num": n.to_string(), "den": "1" }),
            Value::Rat(q) => rational_json(q),
            Value::Text(s) => Json::String(s.clone()),
            Value::Bool(b) => Json::Bool(*b),
            Value::Poly(p) => poly_json(p),
            Value::RatFun(f) => json!({
                "num": poly_json(f.num()),
                "den": poly_json(f.den()),
                "text": f.to_text(),
            }),
            Value::List(vs) => Json::Array(vs.iter().map(Value::json).collect()),
            Value::Null => Json::Null,
        }
    }
}

fn rational_json(q: &Rational) -> Json {
    json!({ "num": q.numer().to_string(), "den": q.denom().to_string() })
}

fn poly_json(p: &Polynomial) -> Json {
    Json::Array(p.coeffs().iter().map(rational_json).collect())
}

impl From<i64> for Value {
    fn from(n: i64) -> Self {
        Value::Int(n.into())
    }
}

impl From<BigInt> for Value {
    fn from(n: BigInt) -> Self {
        Value::Int(n)
    }
}

impl From<Rational> for Value {
    fn from(q: Rational) -> Self {
        if q.denom().is_one() {
            Value::Int(q.numer().clone())
        } else {
            Value::Rat(q)
        }
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_string())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<RationalFunction> for Value {
    fn from(f: RationalFunction) -> Self {
        Value::RatFun(f)
    }
}

impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(v: Option<T>) -> Self {
        v.map_or(Value::Null, Into::into)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Output of one subcommand: scalar fields, then tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub command: String,
    pub fields: Vec<(String, Value)>,
    pub tables: Vec<Table>,
}

impl Document {
    pub fn new(command: &str) -> Self {
        Document {
            command: command.to_string(),
            fields: Vec::new(),
            tables: Vec::new(),
        }
    }

    pub fn field(&mut self, name: &str, v: impl Into<Value>) {
        self.fields.push((name.to_string(), v.into()));
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Markdown => self.markdown(),
            Format::Csv => self.csv(),
            Format::Json => {
                let mut s =
                    serde_json::to_string_pretty(&self.json()).expect("json values serialize");
                s.push('\n');
                s
            }
        }
    }

    fn markdown(&self) -> String {
        let mut out = format!("# {}\n", self.command);
        if !self.fields.is_empty() {
            out.push('\n');
            for (k, v) in &self.fields {
                let _ = writeln!(out, "- {k}: {}", md_cell(v));
            }
        }
        for t in &self.tables {
            let _ = write!(out, "\n## {}\n\n", t.name);
            let _ = writeln!(out, "| {} |", t.columns.join(" | "));
            let _ = writeln!(out, "|{}", "---|".repeat(t.columns.len()));
            for r in &t.rows {
                let cells: Vec<String> = r.iter().map(md_cell).collect();
                let _ = writeln!(out, "| {} |", cells.join(" | "));
            }
        }
        out
    }

    /// Fields as a `field,value` block, then one block per table headed by
    /// a `# <name>` line; blocks are separated by blank lines.
    fn csv(&self) -> String {
        let mut blocks = Vec::new();
        let block = |name: Option<&str>, header: Vec<String>, rows: Vec<Vec<String>>| {
            let mut w = csv::WriterBuilder::new()
                .flexible(true)
                .from_writer(Vec::new());
            if let Some(n) = name {
                w.write_record([format!("# {n}")]).expect("in-memory write");
            }
            w.write_record(header).expect("in-memory write");
            for r in rows {
                w.write_record(r).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
        };
        let mut fields = vec![vec!["command".to_string(), self.command.clone()]];
        fields.extend(self.fields.iter().map(|(k, v)| vec![k.clone(), v.plain()]));
        blocks.push(block(None, vec!["field".into(), "value".into()], fields));
        for t in &self.tables {
            let rows = t
                .rows
                .iter()
                .map(|r| r.iter().map(Value::plain).collect())
                .collect();
            blocks.push(block(Some(&t.name), t.columns.clone(), rows));
        }
        blocks.join("\n")
    }

    pub fn json(&self) -> Json {
        let fields: serde_json::Map<String, Json> = self
            .fields
            .iter()
            .map(|(k, v)| (k.clone(), v.json()))
            .collect();
        let tables: Vec<Json> = self
            .tables
            .iter()
            .map(|t| {
                json!({
                    "name": t.name,
                    "columns": t.columns,
                    "rows": t.rows.iter().map(|r| r.iter().map(Value::json).collect::<Vec<_>>()).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "fields": fields,
            "tables": tables,
        })
    }
}

fn md_cell(v: &Value) -> String {
    let s = v.plain();
    if s.is_empty() {
        "-".into()
    } else {
        s.replace('|', "\\|")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use poincare_core::algebra::{expr::parse_rational_function, rat};

    fn doc() -> Document {
        let mut d = Document::new("demo");
        d.field("sigma", rat(1, 8));
        d.field("P", parse_rational_function("1/(1-z)^2").unwrap());
        let mut t = Table::new("values", &["k", "h_k"]);
        t.push(vec![0.into(), rat(-3, 2).into()]);
        d.tables.push(t);
        d
    }

    #[test]
    fn json_rationals_are_digit_strings() {
        let j = doc().json();
        assert_eq!(j["fields"]["sigma"], json!({"num": "1", "den": "8"}));
        assert_eq!(
            j["tables"][0]["rows"][0][1],
            json!({"num": "-3", "den": "2"})
        );
        assert_eq!(j["fields"]["P"]["den"][1], json!({"num": "-2", "den": "1"}));
        assert_eq!(j["schema"], json!(SCHEMA_VERSION));
    }

    #[test]
    fn markdown_and_csv_carry_the_same_values() {
        let md = doc().render(Format::Markdown);
        assert!(md.contains("- sigma: 1/8"));
        assert!(md.contains("| 0 | -3/2 |"));
        let csv = doc().render(Format::Csv);
        assert!(csv.contains("sigma,1/8"));
        assert!(csv.contains("# values\nk,h_k\n0,-3/2\n"));
    }

    #[test]
    fn format_names() {
        assert_eq!("JSON".parse::<Format>(), Ok(Format::Json));
        assert_eq!("md".parse::<Format>(), Ok(Format::Markdown));
        assert!("xml".parse::<Format>().is_err());
    }
}
