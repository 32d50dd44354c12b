//! Typed output rows and the CSV / JSON-lines writers.
//!
//! Every command produces rows of `(column, Field)` pairs: echoed inputs
//! first, then outputs, then metadata (`version`, `elapsed_ms`). Floats are
//! rounded to 12 significant digits and printed in their shortest
//! round-trip form, so identical sweeps produce byte-identical data columns
//! regardless of thread count.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

/// One typed cell.
#[derive(Clone, Debug)]
pub enum Field {
    /// Nonnegative integer (sizes, milliseconds).
    Count(u64),
    /// Real number, rounded to 12 significant digits on output.
    Real(f64),
    /// Verbatim text (labels, version).
    Text(String),
    /// Boolean flag.
    Flag(bool),
}

/// One output row: ordered `(column, value)` pairs.
pub type Row = Vec<(&'static str, Field)>;

/// Output encodings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// Header row + one comma-separated record per row.
    Csv,
    /// One JSON object per line (keys sorted).
    Jsonl,
}

/// Rounds to 12 significant digits; the shortest representation of the
/// result round-trips exactly.
fn round_sig12(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    format!("{v:.11e}").parse().expect("scientific form parses")
}

/// Shortest round-trip decimal of the 12-digit rounding.
pub fn fmt_real(v: f64) -> String {
    let r = round_sig12(v);
    if r == 0.0 {
        "0".into() // fold -0 into 0
    } else {
        format!("{r}")
    }
}

fn field_text(field: &Field) -> String {
    match field {
        Field::Count(n) => n.to_string(),
        Field::Real(v) => fmt_real(*v),
        Field::Text(s) => s.clone(),
        Field::Flag(b) => b.to_string(),
    }
}

fn field_json(field: &Field) -> serde_json::Value {
    match field {
        Field::Count(n) => serde_json::Value::from(*n),
        Field::Real(v) => serde_json::Number::from_f64(round_sig12(*v))
            .map(serde_json::Value::Number)
            .expect("row reals are finite"),
        Field::Text(s) => serde_json::Value::from(s.as_str()),
        Field::Flag(b) => serde_json::Value::from(*b),
    }
}

fn write_csv(rows: &[Row], out: &mut dyn Write) -> io::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    if let Some(first) = rows.first() {
        writer.write_record(first.iter().map(|(name, _)| *name))?;
    }
    for row in rows {
        writer.write_record(row.iter().map(|(_, field)| field_text(field)))?;
    }
    writer.flush()
}

fn write_jsonl(rows: &[Row], out: &mut dyn Write) -> io::Result<()> {
    for row in rows {
        let object: serde_json::Map<String, serde_json::Value> = row
            .iter()
            .map(|(name, field)| (name.to_string(), field_json(field)))
            .collect();
        serde_json::to_writer(&mut *out, &serde_json::Value::Object(object))?;
        out.write_all(b"\n")?;
    }
    out.flush()
}

/// Writes rows to `out` (or stdout when absent) in the chosen format.
pub fn write_rows(rows: &[Row], format: Format, out: Option<&Path>) -> io::Result<()> {
    let mut sink: Box<dyn Write> = match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(io::stdout().lock()),
    };
    match format {
        Format::Csv => write_csv(rows, &mut sink),
        Format::Jsonl => write_jsonl(rows, &mut sink),
    }
}
