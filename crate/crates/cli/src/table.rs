//! Tabular documents and their markdown, CSV and JSON renderings.

use std::fmt::Write as _;

use anyhow::Result;
use serde::Serialize;
use serde_json::{json, Value};

use crate::report::OrderValue;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Md,
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Text(String),
    Order(OrderValue),
}

impl Cell {
    fn display(&self) -> &str {
        match self {
            Cell::Text(s) => s,
            Cell::Order(o) => &o.factored,
        }
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<OrderValue> for Cell {
    fn from(o: OrderValue) -> Self {
        Cell::Order(o)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub name: String,
    pub n_values: Vec<u32>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, n_values: Vec<u32>, columns: &[&str]) -> Self {
        Table {
            name: name.to_string(),
            n_values,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Columns holding at least one order; CSV gives them a decimal twin.
    fn order_columns(&self) -> Vec<bool> {
        (0..self.columns.len())
            .map(|j| self.rows.iter().any(|r| matches!(r[j], Cell::Order(_))))
            .collect()
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let escape = |s: &str| s.replace('|', "\\|");
        let header: Vec<String> = self.columns.iter().map(|c| escape(c)).collect();
        let _ = writeln!(out, "| {} |", header.join(" | "));
        let _ = writeln!(out, "|{}", "---|".repeat(self.columns.len()));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| escape(c.display())).collect();
            let _ = writeln!(out, "| {} |", cells.join(" | "));
        }
        out
    }

    pub fn to_csv(&self) -> Result<String> {
        let orders = self.order_columns();
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = Vec::new();
        for (c, &is_order) in self.columns.iter().zip(&orders) {
            header.push(c.clone());
            if is_order {
                header.push(format!("{c} decimal"));
            }
        }
        w.write_record(&header)?;
        for row in &self.rows {
            let mut record = Vec::new();
            for (cell, &is_order) in row.iter().zip(&orders) {
                record.push(cell.display().to_string());
                if is_order {
                    record.push(match cell {
                        Cell::Order(o) => o.decimal.clone(),
                        Cell::Text(_) => String::new(),
                    });
                }
            }
            w.write_record(&record)?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": "table",
            "table": self.name,
            "n_values": self.n_values,
            "columns": self.columns,
            "rows": self.rows,
        })
    }

    pub fn render(&self, format: Format) -> Result<String> {
        Ok(match format {
            Format::Md => self.to_markdown(),
            Format::Csv => self.to_csv()?,
            Format::Json => format!("{}\n", serde_json::to_string_pretty(&self.to_json())?),
        })
    }
}

/// A single record as a two-column field/value table.
pub fn record_table(name: &str, fields: &[(&str, Cell)]) -> Table {
    let mut t = Table::new(name, Vec::new(), &["field", "value"]);
    for (k, v) in fields {
        t.push(vec![Cell::from(*k), v.clone()]);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new("demo", vec![4], &["n", "|G|"]);
        t.push(vec!["4".into(), OrderValue { decimal: "2520".into(), factored: "7!/2".into() }.into()]);
        t
    }

    #[test]
    fn markdown_escapes_pipes() {
        assert_eq!(sample().to_markdown(), "| n | \\|G\\| |\n|---|---|\n| 4 | 7!/2 |\n");
    }

    #[test]
    fn csv_adds_decimal_columns() {
        assert_eq!(sample().to_csv().unwrap(), "n,|G|,|G| decimal\n4,7!/2,2520\n");
    }

    #[test]
    fn json_orders_are_strings() {
        let v = sample().to_json();
        assert_eq!(v["rows"][0][1]["decimal"], "2520");
        assert_eq!(v["rows"][0][0], "4");
    }
}
