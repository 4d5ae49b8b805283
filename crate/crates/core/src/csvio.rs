//! Versioned CSV reading and writing.
//!
//! Every file starts with a `# schema=<n>` comment line. Other lines that
//! start with `#` are comments. Output is UTF-8 with `\n` line endings and
//! floats in shortest round-trip exponent form, so identical inputs produce
//! byte-identical files.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Spectrum, SymMatrix};

pub const SCHEMA_VERSION: u32 = 1;

pub fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        "NaN".to_string()
    } else {
        format!("{v:e}")
    }
}

/// Row-oriented CSV builder.
#[derive(Debug, Clone)]
pub struct CsvWriter {
    buf: String,
    columns: usize,
}

impl CsvWriter {
    pub fn new(header: &[&str]) -> Self {
        let mut w = Self::headerless();
        w.columns = header.len();
        w.buf.push_str(&header.join(","));
        w.buf.push('\n');
        w
    }

    /// A writer without a header line; comment lines may be added first.
    pub fn headerless() -> Self {
        CsvWriter {
            buf: format!("# schema={SCHEMA_VERSION}\n"),
            columns: 0,
        }
    }

    pub fn comment(&mut self, text: &str) -> &mut Self {
        let _ = writeln!(self.buf, "# {text}");
        self
    }

    pub fn row<S: AsRef<str>>(&mut self, fields: &[S]) -> &mut Self {
        debug_assert!(self.columns == 0 || fields.len() == self.columns);
        let parts: Vec<&str> = fields.iter().map(AsRef::as_ref).collect();
        self.buf.push_str(&parts.join(","));
        self.buf.push('\n');
        self
    }

    pub fn float_row(&mut self, values: &[f64]) -> &mut Self {
        let parts: Vec<String> = values.iter().map(|v| fmt_f64(*v)).collect();
        self.row(&parts)
    }

    pub fn as_str(&self) -> &str {
        &self.buf
    }

    pub fn write_to(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.buf.as_bytes()).map_err(|e| Error::io(path, e))
    }
}

/// Parsed CSV body: comments other than the schema line, then data lines.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub comments: Vec<String>,
    pub lines: Vec<Vec<String>>,
}

/// Parses text written by [`CsvWriter`]; rejects missing or unknown schemas.
pub fn parse_csv(text: &str, context: &str) -> Result<CsvTable> {
    let mut lines = text.lines();
    let first = lines
        .next()
        .ok_or_else(|| Error::parse(context, "empty file"))?;
    let version = first
        .trim()
        .strip_prefix("# schema=")
        .ok_or_else(|| Error::parse(context, "missing '# schema=' line"))?;
    if version.trim() != SCHEMA_VERSION.to_string() {
        return Err(Error::parse(context, format!("unsupported schema version '{version}'")));
    }
    let mut table = CsvTable {
        comments: Vec::new(),
        lines: Vec::new(),
    };
    for line in lines {
        let line = line.trim_end_matches('\r');
        if let Some(c) = line.strip_prefix('#') {
            table.comments.push(c.trim().to_string());
        } else if !line.trim().is_empty() {
            table.lines.push(line.split(',').map(|s| s.trim().to_string()).collect());
        }
    }
    Ok(table)
}

pub fn parse_f64(field: &str, context: &str) -> Result<f64> {
    field
        .parse::<f64>()
        .map_err(|e| Error::parse(context, format!("'{field}': {e}")))
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn parse_dim_comment(table: &CsvTable, tag: &str, context: &str) -> Result<usize> {
    let prefix = format!("{tag} d=");
    let c = table
        .comments
        .iter()
        .find_map(|c| c.strip_prefix(&prefix))
        .ok_or_else(|| Error::parse(context, format!("missing '# {prefix}<d>' line")))?;
    c.trim()
        .parse()
        .map_err(|e| Error::parse(context, format!("bad dimension '{c}': {e}")))
}

fn numeric_rows(table: &CsvTable, width: usize, context: &str) -> Result<Vec<Vec<f64>>> {
    table
        .lines
        .iter()
        .map(|line| {
            if line.len() != width {
                return Err(Error::parse(context, format!("expected {width} fields, got {}", line.len())));
            }
            line.iter().map(|f| parse_f64(f, context)).collect()
        })
        .collect()
}

pub fn symmatrix_to_csv(m: &SymMatrix) -> String {
    let mut w = CsvWriter::headerless();
    w.comment(&format!("symmatrix d={}", m.dim()));
    for i in 0..m.dim() {
        w.float_row(m.row(i));
    }
    w.as_str().to_string()
}

pub fn symmatrix_from_csv(text: &str) -> Result<SymMatrix> {
    let ctx = "symmatrix csv";
    let table = parse_csv(text, ctx)?;
    let d = parse_dim_comment(&table, "symmatrix", ctx)?;
    let rows = numeric_rows(&table, d, ctx)?;
    if rows.len() != d {
        return Err(Error::parse(ctx, format!("expected {d} rows, got {}", rows.len())));
    }
    SymMatrix::from_rows(&rows)
}

/// Eigenvalues on the first data row, then one row per basis vector.
pub fn spectrum_to_csv(s: &Spectrum) -> String {
    let mut w = CsvWriter::headerless();
    w.comment(&format!("spectrum d={}", s.dim()));
    w.float_row(&s.eigenvalues);
    for j in 0..s.dim() {
        w.float_row(s.vector(j));
    }
    w.as_str().to_string()
}

pub fn spectrum_from_csv(text: &str) -> Result<Spectrum> {
    let ctx = "spectrum csv";
    let table = parse_csv(text, ctx)?;
    let d = parse_dim_comment(&table, "spectrum", ctx)?;
    let mut rows = numeric_rows(&table, d, ctx)?;
    if rows.len() != d + 1 {
        return Err(Error::parse(ctx, format!("expected {} rows, got {}", d + 1, rows.len())));
    }
    let eigenvalues = rows.remove(0);
    Ok(Spectrum {
        eigenvalues,
        basis: Matrix::from_columns(&rows)?,
    })
}
