//! Recomputation of the six reference tables and comparison against the
//! golden values embedded from `tables/*.csv`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rug::ops::Pow;
use rug::{Float, Rational};
use serde::Serialize;

use crate::circle;
use crate::error::{Error, Result};
use crate::jensen;
use crate::numkernel::format::to_fixed;
use crate::numkernel::{AlphaValue, Precision};
use crate::oracle;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum TableId {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
}

impl TableId {
    pub const ALL: [TableId; 6] = [TableId::T1, TableId::T2, TableId::T3, TableId::T4, TableId::T5, TableId::T6];

    pub fn row_count(self) -> usize {
        match self {
            TableId::T1 | TableId::T2 | TableId::T4 | TableId::T6 => 10,
            TableId::T3 => 14,
            TableId::T5 => 5,
        }
    }

    fn golden_source(self) -> &'static str {
        match self {
            TableId::T1 => include_str!("../tables/t1.csv"),
            TableId::T2 => include_str!("../tables/t2.csv"),
            TableId::T3 => include_str!("../tables/t3.csv"),
            TableId::T4 => include_str!("../tables/t4.csv"),
            TableId::T5 => include_str!("../tables/t5.csv"),
            TableId::T6 => include_str!("../tables/t6.csv"),
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            TableId::T1 => "alpha = e: one-term approximation for n = 1..10",
            TableId::T2 => "alpha = 1/e, n = 50: m-term approximations",
            TableId::T3 => "alpha in {1/pi, 5}: ratios for m in {1, 5}, n = 1..14",
            TableId::T4 => "n = 100: ratios for alpha in {0.01, 0.1, 1, 10}",
            TableId::T5 => "alpha = sqrt(3): renormalized Jensen polynomials, d = 2, 3",
            TableId::T6 => "alpha = 51/7: exact values and term counts",
        }
    }
}

impl FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "T1" | "1" => Ok(TableId::T1),
            "T2" | "2" => Ok(TableId::T2),
            "T3" | "3" => Ok(TableId::T3),
            "T4" | "4" => Ok(TableId::T4),
            "T5" | "5" => Ok(TableId::T5),
            "T6" | "6" => Ok(TableId::T6),
            _ => Err(Error::InvalidArgument(format!("unknown table '{s}', expected T1..T6"))),
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Golden cells as printed, header first.
#[derive(Debug, Clone, PartialEq)]
pub struct Golden {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Golden {
    pub fn load(id: TableId) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_reader(id.golden_source().as_bytes());
        let columns = reader.headers()?.iter().map(str::to_string).collect();
        let rows = reader
            .records()
            .map(|r| Ok(r?.iter().map(str::to_string).collect()))
            .collect::<Result<Vec<Vec<String>>>>()?;
        Ok(Golden { columns, rows })
    }
}

/// A recomputed cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    /// Integers and rationals, compared as strings.
    Exact(String),
    Real(Float),
}

impl Cell {
    fn rational(r: &Rational) -> Cell {
        Cell::Exact(format!("{}/{}", r.numer(), r.denom()))
    }

    /// Rendering with the decimal count of `like`, or 10 significant
    /// decimals without a template.
    pub fn render(&self, like: Option<&str>) -> String {
        match self {
            Cell::Exact(s) => s.clone(),
            Cell::Real(x) => to_fixed(x, like.map_or(10, decimals_of)),
        }
    }
}

fn decimals_of(s: &str) -> usize {
    s.split_once('.').map_or(0, |(_, frac)| frac.len())
}

/// Whether `cell` reproduces `golden` to one unit in its last printed digit.
pub fn cell_matches(cell: &Cell, golden: &str) -> bool {
    match cell {
        Cell::Exact(s) => s == golden,
        Cell::Real(x) => {
            let Ok(g) = golden.parse::<Rational>().or_else(|_| parse_decimal(golden)) else {
                return false;
            };
            let Some(value) = x.to_rational() else {
                return false;
            };
            let unit = Rational::from((1, rug::Integer::from(10u32).pow(decimals_of(golden) as u32)));
            let slack = Rational::from(&unit / 1_000_000_000u32);
            (value - g).abs() <= unit + slack
        }
    }
}

fn parse_decimal(s: &str) -> std::result::Result<Rational, ()> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    let digits = format!("{int}{frac}");
    let num: rug::Integer = digits.parse().map_err(|_| ())?;
    let den = rug::Integer::from(10u32).pow(frac.len() as u32);
    let r = Rational::from((num, den));
    Ok(if neg { -r } else { r })
}

/// A recomputed table.
#[derive(Debug, Clone)]
pub struct TableArtifact {
    pub id: TableId,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

fn ratio(a: &Float, b: &Float) -> Cell {
    Cell::Real(Float::with_val(a.prec(), a / b))
}

fn alpha(text: &str) -> AlphaValue {
    AlphaValue::parse(text).expect("built-in alpha parses")
}

impl TableArtifact {
    pub fn compute(id: TableId, prec: Precision) -> Result<Self> {
        let columns = Golden::load(id)?.columns;
        let bits = prec.bits();
        let series = |a: &AlphaValue, n: u64, m: u64| -> Result<Float> {
            Ok(circle::partial_series_terms(a, n, m, prec)?.value)
        };
        let index = |i: u64| Cell::Exact(i.to_string());
        let rows: Vec<Vec<Cell>> = match id {
            TableId::T1 => {
                let a = alpha("e");
                let table = oracle::coeffs(&a, 10, prec);
                (1..=10u64)
                    .map(|n| {
                        let p = table.real_at(n as usize, bits);
                        let one = series(&a, n, 1)?;
                        Ok(vec![index(n), Cell::Real(p.clone()), ratio(&one, &Float::with_val(bits, 1u32)), ratio(&one, &p)])
                    })
                    .collect::<Result<_>>()?
            }
            TableId::T2 => {
                let a = alpha("1/e");
                let p = oracle::coeffs(&a, 50, prec).real_at(50, bits);
                (1..=10u64)
                    .map(|m| {
                        let s = series(&a, 50, m)?;
                        Ok(vec![index(m), Cell::Real(s.clone()), ratio(&s, &p)])
                    })
                    .collect::<Result<_>>()?
            }
            TableId::T3 => {
                let alphas = [alpha("1/pi"), alpha("5")];
                let tables: Vec<_> = alphas.iter().map(|a| oracle::coeffs(a, 14, prec)).collect();
                (1..=14u64)
                    .map(|n| {
                        let mut row = vec![index(n)];
                        for (a, t) in alphas.iter().zip(&tables) {
                            let p = t.real_at(n as usize, bits);
                            for m in [1, 5] {
                                row.push(ratio(&series(a, n, m)?, &p));
                            }
                        }
                        Ok(row)
                    })
                    .collect::<Result<_>>()?
            }
            TableId::T4 => {
                let alphas: Vec<_> = ["0.01", "0.1", "1", "10"].iter().map(|t| alpha(t)).collect();
                let ps: Vec<_> = alphas.iter().map(|a| oracle::coeffs(a, 100, prec).real_at(100, bits)).collect();
                (1..=10u64)
                    .map(|m| {
                        let mut row = vec![index(m)];
                        for (a, p) in alphas.iter().zip(&ps) {
                            row.push(ratio(&series(a, 100, m)?, p));
                        }
                        Ok(row)
                    })
                    .collect::<Result<_>>()?
            }
            TableId::T5 => {
                let a = alpha("sqrt(3)");
                [10000usize, 20000, 30000, 40000, 50000]
                    .iter()
                    .map(|&n| {
                        let values = jensen::Values::for_alpha(&a, n, 3, prec)?;
                        let params = jensen::renorm_params(&a, n as u64, prec)?;
                        let mut row = vec![index(n as u64)];
                        for d in [2, 3] {
                            let j = jensen::renormalize(&values, &params, d, n, prec)?;
                            row.extend((0..=d).rev().map(|i| Cell::Real(j.coefficient(i, bits))));
                        }
                        Ok(row)
                    })
                    .collect::<Result<_>>()?
            }
            TableId::T6 => (1..=10u64)
                .map(|n| {
                    Ok(vec![
                        index(n),
                        Cell::rational(&circle::exact_value(51, 7, n)?),
                        Cell::Exact(circle::guaranteed_terms(51, 7, n)?.to_string()),
                        Cell::Exact(circle::empirical_min_terms(51, 7, n)?.to_string()),
                    ])
                })
                .collect::<Result<_>>()?,
        };
        Ok(TableArtifact { id, columns, rows })
    }

    /// Cells rendered at the printed precision of the golden table.
    pub fn formatted_rows(&self) -> Result<Vec<Vec<String>>> {
        let golden = Golden::load(self.id)?;
        Ok(self
            .rows
            .iter()
            .enumerate()
            .map(|(r, row)| {
                row.iter()
                    .enumerate()
                    .map(|(c, cell)| cell.render(golden.rows.get(r).and_then(|g| g.get(c)).map(String::as_str)))
                    .collect()
            })
            .collect())
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in self.formatted_rows()? {
            w.write_record(&row)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Serialization(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_plain(&self) -> Result<String> {
        let rows = self.formatted_rows()?;
        let mut widths: Vec<usize> = self.columns.iter().map(String::len).collect();
        for row in &rows {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.len());
            }
        }
        let line = |cells: &[String]| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        let mut out = format!("{} ({})\n{}\n", self.id, self.id.description(), line(&self.columns));
        for row in &rows {
            out.push_str(&line(row));
            out.push('\n');
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Result<String> {
        #[derive(Serialize)]
        struct Record<'a> {
            table: TableId,
            columns: &'a [String],
            rows: Vec<Vec<String>>,
        }
        Ok(serde_json::to_string(&Record {
            table: self.id,
            columns: &self.columns,
            rows: self.formatted_rows()?,
        })?)
    }

    /// Cell-by-cell comparison with the golden table.
    pub fn diff(&self) -> Result<DiffReport> {
        let golden = Golden::load(self.id)?;
        let mut mismatches = Vec::new();
        let mut checked = 0;
        if golden.rows.len() != self.rows.len() {
            return Err(Error::Golden(format!(
                "{}: {} computed rows, {} golden rows",
                self.id,
                self.rows.len(),
                golden.rows.len()
            )));
        }
        for (row, grow) in self.rows.iter().zip(&golden.rows) {
            for (c, (cell, g)) in row.iter().zip(grow).enumerate() {
                checked += 1;
                if !cell_matches(cell, g) {
                    mismatches.push(Mismatch {
                        row: grow[0].clone(),
                        column: golden.columns[c].clone(),
                        expected: g.clone(),
                        computed: cell.render(Some(g)),
                    });
                }
            }
        }
        Ok(DiffReport {
            table: self.id,
            cells_checked: checked,
            mismatches,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Mismatch {
    /// Value of the first column of the row.
    pub row: String,
    pub column: String,
    pub expected: String,
    pub computed: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiffReport {
    pub table: TableId,
    pub cells_checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl DiffReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn mismatched_columns(&self) -> BTreeSet<&str> {
        self.mismatches.iter().map(|m| m.column.as_str()).collect()
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "{}: {} cells checked, {} mismatched\n",
            self.table,
            self.cells_checked,
            self.mismatches.len()
        );
        for m in &self.mismatches {
            out.push_str(&format!(
                "  row {} column {}: expected {} computed {}\n",
                m.row, m.column, m.expected, m.computed
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_shapes() {
        for id in TableId::ALL {
            let g = Golden::load(id).unwrap();
            assert_eq!(g.rows.len(), id.row_count(), "{id}");
            assert!(g.rows.iter().all(|r| r.len() == g.columns.len()));
        }
    }

    #[test]
    fn tolerance_is_one_printed_unit() {
        let bits = 128;
        let cell = Cell::Real(Float::with_val(bits, 0.999275));
        assert!(cell_matches(&cell, "0.99927"));
        assert!(cell_matches(&cell, "0.99928"));
        assert!(!cell_matches(&cell, "0.99925"));
        let cell = Cell::Real(Float::with_val(bits, -2.038285));
        assert!(cell_matches(&cell, "-2.03828"));
        assert!(!cell_matches(&cell, "-2.03826"));
        assert!(!cell_matches(&Cell::Exact("330".into()), "329"));
        assert_eq!(Cell::Real(Float::with_val(bits, 1.0)).render(Some("1.000000000")), "1.000000000");
    }

    #[test]
    fn parses_ids() {
        assert_eq!("t3".parse::<TableId>().unwrap(), TableId::T3);
        assert!("T7".parse::<TableId>().is_err());
    }

    #[test]
    fn first_table_reproduces() {
        let t = TableArtifact::compute(TableId::T1, Precision::default()).unwrap();
        let diff = t.diff().unwrap();
        assert!(diff.is_clean(), "{}", diff.render());
        assert_eq!(diff.cells_checked, 40);
    }
}
