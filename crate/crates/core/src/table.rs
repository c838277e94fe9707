//! Plain-text tables: `#`-prefixed manifest lines, a header row, then
//! comma-separated rows of numbers.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};

/// Ordered key/value description of how a table was produced.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Manifest {
    pub entries: Vec<(String, String)>,
}

impl Manifest {
    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.entries.push((key.into(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self { columns: columns.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(Error::InvalidParameter(format!(
                "row has {} values for {} columns",
                row.len(),
                self.columns.len()
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }
}

/// Twelve significant digits.
pub fn format_number(x: f64) -> String {
    format!("{x:.11e}")
}

pub fn write_table(out: &mut impl Write, manifest: &Manifest, table: &Table) -> std::io::Result<()> {
    for (key, value) in &manifest.entries {
        writeln!(out, "# {key}: {value}")?;
    }
    writeln!(out, "{}", table.columns.join(","))?;
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(|x| format_number(*x)).collect();
        writeln!(out, "{}", cells.join(","))?;
    }
    Ok(())
}

pub fn read_table(input: impl BufRead) -> Result<(Manifest, Table)> {
    let mut manifest = Manifest::default();
    let mut table: Option<Table> = None;
    for (lineno, line) in input.lines().enumerate() {
        let line = line.map_err(|e| Error::InvalidParameter(format!("read failed: {e}")))?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if let Some((k, v)) = rest.split_once(':') {
                manifest.push(k.trim(), v.trim());
            }
            continue;
        }
        match table.as_mut() {
            None => table = Some(Table::new(line.split(',').map(str::trim))),
            Some(t) => {
                let row = line
                    .split(',')
                    .map(|c| c.trim().parse::<f64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|e| Error::InvalidParameter(format!("line {}: {e}", lineno + 1)))?;
                t.push(row)?;
            }
        }
    }
    let table = table.ok_or_else(|| Error::InvalidParameter("no header row".into()))?;
    Ok((manifest, table))
}
