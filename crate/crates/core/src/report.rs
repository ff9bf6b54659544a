//! Rendering of study results as CSV (round-trip precision) or markdown
//! (three significant digits).

use crate::analysis::diagnostics::MeshDiagnostics;
use crate::analysis::exponent::Exponent;
use crate::analysis::study::{ConvergenceReport, NON_CONVERGENCE_T};
use crate::error::Error;
use crate::quadrature::Mode;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Markdown,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(usize),
    Num(f64),
    Text(String),
    Empty,
}

impl From<Exponent> for Cell {
    fn from(e: Exponent) -> Self {
        match e {
            Exponent::Value(v) => Cell::Num(v),
            other => Cell::Text(other.to_string()),
        }
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Num)
    }
}

/// `v` rounded to three significant digits, e.g. `1.54e-2`, `1.96`, `-1.14e-2`.
pub fn three_digits(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let s = format!("{v:.2e}");
    s.strip_suffix("e0").map(str::to_owned).unwrap_or(s)
}

/// Shortest representation that parses back to the same `f64`.
pub fn round_trip(v: f64) -> String {
    format!("{v:e}")
}

impl Cell {
    fn render(&self, format: Format) -> String {
        match self {
            Cell::Int(n) => n.to_string(),
            Cell::Num(v) => match format {
                Format::Csv => round_trip(*v),
                Format::Markdown => three_digits(*v),
            },
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Printed under a markdown table; omitted from CSV.
    pub notes: Vec<String>,
}

impl Table {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        Self {
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Markdown => self.to_markdown(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        // Writing into a Vec cannot fail.
        w.write_record(&self.headers).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.render(Format::Csv)))
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!("| {} |\n", self.headers.join(" | "));
        out.push_str(&format!("|{}\n", "---|".repeat(self.headers.len())));
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| c.render(Format::Markdown).replace('|', "\\|"))
                .collect();
            out.push_str(&format!("| {} |\n", cells.join(" | ")));
        }
        for note in &self.notes {
            out.push_str(&format!("\n{note}\n"));
        }
        out
    }
}

fn failure(e: &Error) -> Cell {
    Cell::Text(format!("failed: {e}"))
}

/// Convergence table in the layout of the published tables for the scheme:
/// size, E, then the scheme's exponent columns. Half-range rows count all
/// 2N nodes.
pub fn convergence_table(report: &ConvergenceReport) -> Table {
    let size = match report.config.mode {
        Mode::FullRange => "N",
        Mode::HalfRange => "2N",
    };
    let mut table = Table::new(
        std::iter::once(size)
            .chain(std::iter::once("E"))
            .chain(report.columns.iter().map(|c| c.header())),
    );
    for row in &report.rows {
        let mut cells = vec![Cell::Int(row.nodes)];
        match &row.outcome {
            Ok(m) => cells.push(Cell::Num(m.error)),
            Err(e) => cells.push(failure(e)),
        }
        for &c in &report.columns {
            cells.push(row.exponent(c).map_or(Cell::Empty, Cell::from));
        }
        table.rows.push(cells);
    }
    if report.non_convergent() {
        table.notes.push(format!(
            "non-convergent: |t| < {NON_CONVERGENCE_T} (beta_N does not decay)"
        ));
    }
    table
}

/// Convergence table with the fixed CSV column set N, E, order, q, r, s, t,
/// u, v; columns that do not apply to the scheme stay empty.
pub fn convergence_csv(report: &ConvergenceReport) -> String {
    use crate::analysis::study::Column;
    let mut table = Table::new(
        ["N", "E"]
            .into_iter()
            .chain(Column::ALL.iter().map(|c| c.header())),
    );
    for row in &report.rows {
        let mut cells = vec![
            Cell::Int(row.nodes),
            row.outcome
                .as_ref()
                .map_or(Cell::Empty, |m| Cell::Num(m.error)),
        ];
        for c in Column::ALL {
            let cell = if report.columns.contains(&c) {
                row.exponent(c).map_or(Cell::Empty, Cell::from)
            } else {
                Cell::Empty
            };
            cells.push(cell);
        }
        table.rows.push(cells);
    }
    table.to_csv()
}

/// The convergence report in the requested format.
pub fn render_convergence(report: &ConvergenceReport, format: Format) -> String {
    match format {
        Format::Csv => convergence_csv(report),
        Format::Markdown => convergence_table(report).to_markdown(),
    }
}

pub const DIAGNOSTIC_HEADERS: [&str; 15] = [
    "N",
    "M",
    "M_tilde",
    "M_star",
    "m_star",
    "D",
    "D_star",
    "A",
    "B",
    "C",
    "beta",
    "node_defect",
    "beta_star",
    "Lambda",
    "X",
];

pub fn diagnostics_table(entries: &[(usize, Result<MeshDiagnostics, Error>)]) -> Table {
    let mut table = Table::new(DIAGNOSTIC_HEADERS);
    for (nodes, entry) in entries {
        let mut cells = vec![Cell::Int(*nodes)];
        match entry {
            Ok(d) => cells.extend([
                Cell::Num(d.max_node_gap),
                Cell::Num(d.max_gap_with_ends),
                Cell::Num(d.max_cell_width),
                Cell::Num(d.min_cell_width),
                Cell::Num(d.point_offset),
                Cell::Num(d.node_offset),
                Cell::Num(d.a),
                Cell::Num(d.b),
                Cell::Num(d.c),
                Cell::Num(d.beta),
                Cell::Num(d.node_defect),
                d.beta_star.into(),
                d.lambda.into(),
                d.x.into(),
            ]),
            Err(e) => {
                cells.push(failure(e));
                cells.resize(DIAGNOSTIC_HEADERS.len(), Cell::Empty);
            }
        }
        table.rows.push(cells);
    }
    table
}

/// (node count, zeroth and first residual or the failure).
pub type MomentEntry = (usize, Result<(f64, f64), Error>);

pub fn moments_table(entries: &[MomentEntry]) -> Table {
    let mut table = Table::new(["N", "zeroth", "first"]);
    for (nodes, entry) in entries {
        table.rows.push(match entry {
            Ok((z, f)) => vec![Cell::Int(*nodes), Cell::Num(*z), Cell::Num(*f)],
            Err(e) => vec![Cell::Int(*nodes), failure(e), Cell::Empty],
        });
    }
    table
}

pub fn profile_table(profile: &[(f64, f64)]) -> Table {
    let mut table = Table::new(["mu", "error"]);
    table.rows = profile
        .iter()
        .map(|&(mu, e)| vec![Cell::Num(mu), Cell::Num(e)])
        .collect();
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_digit_formatting() {
        assert_eq!(three_digits(0.015386), "1.54e-2");
        assert_eq!(three_digits(1.9614), "1.96");
        assert_eq!(three_digits(2.0), "2.00");
        assert_eq!(three_digits(9.996), "1.00e1");
        assert_eq!(three_digits(-0.011412), "-1.14e-2");
        assert_eq!(three_digits(0.309), "3.09e-1");
        assert_eq!(three_digits(0.0), "0");
    }

    #[test]
    fn csv_round_trips() {
        for v in [0.1 + 0.2, 1.0 / 3.0, -4.0189e-5, 1e-300] {
            assert_eq!(round_trip(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn markdown_and_csv_layout() {
        let mut t = Table::new(["mu", "error"]);
        t.rows
            .push(vec![Cell::Num(0.5), Cell::Text("a|b, c".into())]);
        t.rows.push(vec![Cell::Int(3), Cell::Empty]);
        assert_eq!(t.to_csv(), "mu,error\n5e-1,\"a|b, c\"\n3,\n");
        assert_eq!(
            t.to_markdown(),
            "| mu | error |\n|---|---|\n| 5.00e-1 | a\\|b, c |\n| 3 |  |\n"
        );
    }
}
