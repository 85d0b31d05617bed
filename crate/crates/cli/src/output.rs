//! Result type shared by the subcommands and the two output formats.

use serde_json::Value;
use weylbach::format_float;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Violation,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Violation => "violation",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Violation => 2,
        }
    }
}

/// What a subcommand produced: a JSON body, the equivalent CSV table and
/// human-readable summary lines.
#[derive(Clone, Debug)]
pub struct CommandResult {
    pub status: Status,
    pub json: Value,
    pub csv: Csv,
    pub log: Vec<String>,
}

impl CommandResult {
    /// The JSON body with `status` added and every float rounded to twelve
    /// significant digits.
    pub fn json_body(&self) -> String {
        let mut v = self.json.clone();
        if let Value::Object(map) = &mut v {
            map.insert("status".into(), Value::from(self.status.as_str()));
        }
        round_floats(&mut v);
        serde_json::to_string_pretty(&v).expect("JSON values serialize") + "\n"
    }
}

fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64 number");
            *v = format_float(x).parse::<f64>().ok().and_then(serde_json::Number::from_f64).map_or(Value::Null, Value::Number);
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// A CSV table; the header row is always written.
#[derive(Clone, Debug, Default)]
pub struct Csv {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        Csv { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for line in std::iter::once(&self.header).chain(&self.rows) {
            let cells: Vec<String> = line.iter().map(|c| escape(c)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

fn escape(cell: &str) -> String {
    if cell.contains([',', '"', '\n']) {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

/// A float cell.
pub fn num(v: f64) -> String {
    format_float(v)
}

/// An optional float cell; empty when absent.
pub fn opt_num(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}
