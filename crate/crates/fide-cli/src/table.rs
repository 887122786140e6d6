//! Table rendering: aligned text for eyes, RFC-4180-style CSV for machines.

use std::fmt::Write as _;

/// A rectangular table with a title, rendered to text or CSV.
///
/// Numeric cells are pre-rendered: 6 significant digits in the text format,
/// full round-trip precision in CSV.
#[derive(Debug, Clone)]
pub struct OutputTable {
    title: String,
    headers: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl OutputTable {
    pub fn new(title: impl Into<String>, headers: &[&str]) -> Self {
        OutputTable {
            title: title.into(),
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    /// Append a row; must match the header count.
    pub fn push_row(&mut self, cells: Vec<String>) {
        assert_eq!(cells.len(), self.headers.len(), "ragged table row");
        self.rows.push(cells);
    }

    pub fn to_text(&self) -> String {
        let mut widths: Vec<usize> = self.headers.iter().map(String::len).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.title);
        let line = |cells: &[String], out: &mut String| {
            let mut first = true;
            for (cell, w) in cells.iter().zip(&widths) {
                if !first {
                    out.push_str("  ");
                }
                let _ = write!(out, "{cell:>w$}", w = w);
                first = false;
            }
            out.push('\n');
        };
        line(&self.headers, &mut out);
        for row in &self.rows {
            line(row, &mut out);
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let write_record = |cells: &[String], out: &mut String| {
            let mut first = true;
            for cell in cells {
                if !first {
                    out.push(',');
                }
                out.push_str(&csv_field(cell));
                first = false;
            }
            out.push_str("\r\n");
        };
        write_record(&self.headers, &mut out);
        for row in &self.rows {
            write_record(row, &mut out);
        }
        out
    }
}

fn csv_field(cell: &str) -> String {
    if cell.contains(',') || cell.contains('"') || cell.contains('\n') || cell.contains('\r') {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

/// Render with 6 significant digits, `%g`-style: fixed notation for moderate
/// magnitudes, scientific otherwise.
pub fn sig6(value: f64) -> String {
    if value == 0.0 {
        return "0".to_string();
    }
    if !value.is_finite() {
        return value.to_string();
    }
    let magnitude = value.abs().log10().floor() as i32;
    if (-4..6).contains(&magnitude) {
        let decimals = (5 - magnitude).max(0) as usize;
        let s = format!("{value:.decimals$}");
        trim_zeros(&s)
    } else {
        let s = format!("{value:.5e}");
        // normalize `1.23000e-7` -> `1.23e-7`
        match s.split_once('e') {
            Some((mantissa, exponent)) => format!("{}e{}", trim_zeros(mantissa), exponent),
            None => s,
        }
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// Render with full round-trip precision (shortest representation that
/// parses back to the same bits).
pub fn full(value: f64) -> String {
    format!("{value}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(sig6(0.0505046281), "0.0505046");
        assert_eq!(sig6(-0.146642), "-0.146642");
        assert_eq!(sig6(1.451356), "1.45136");
        assert_eq!(sig6(0.00132716), "0.00132716");
        assert_eq!(sig6(123456.7), "123457");
        assert_eq!(sig6(8.65157e-4), "0.000865157");
        assert_eq!(sig6(5.20829e-5), "5.20829e-5");
        assert_eq!(sig6(0.0), "0");
        assert_eq!(sig6(-2.0), "-2");
        assert_eq!(sig6(1e7), "1e7");
    }

    #[test]
    fn full_precision_round_trips() {
        for v in [0.1, 1.0 / 3.0, 5.05046e-2, f64::MIN_POSITIVE] {
            assert_eq!(full(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn csv_quotes_only_when_needed() {
        let mut t = OutputTable::new("t", &["a", "b"]);
        t.push_row(vec!["plain".into(), "needs,quote".into()]);
        t.push_row(vec!["has\"quote".into(), "x".into()]);
        let csv = t.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "a,b");
        assert_eq!(lines.next().unwrap(), "plain,\"needs,quote\"");
        assert_eq!(lines.next().unwrap(), "\"has\"\"quote\",x");
    }

    #[test]
    fn text_is_aligned_and_titled() {
        let mut t = OutputTable::new("headline", &["x", "value"]);
        t.push_row(vec!["0.2".into(), "-0.146642".into()]);
        let text = t.to_text();
        assert!(text.starts_with("headline\n"));
        assert!(text.contains("  x      value"));
    }

    #[test]
    #[should_panic(expected = "ragged")]
    fn ragged_rows_rejected() {
        let mut t = OutputTable::new("t", &["a", "b"]);
        t.push_row(vec!["only-one".into()]);
    }
}
