//! Cayley tables and the plain-text table format.
//!
//! A table file is a whitespace separated list of integers with `#` line
//! comments. The first token is the carrier size `n`, followed by `n` rows
//! of `n` entries in `0..n`; row `a` column `b` holds `a ⊕ b`. Element 0 must
//! be the two-sided identity.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{GyroError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TableJson", into = "TableJson")]
pub struct CayleyTable {
    n: usize,
    cells: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    n: usize,
    table: Vec<Vec<usize>>,
}

impl TryFrom<TableJson> for CayleyTable {
    type Error = GyroError;

    fn try_from(value: TableJson) -> Result<Self> {
        if value.table.len() != value.n {
            return Err(GyroError::MalformedTable(format!(
                "declared size {} but {} rows",
                value.n,
                value.table.len()
            )));
        }
        CayleyTable::from_rows(value.table)
    }
}

impl From<CayleyTable> for TableJson {
    fn from(t: CayleyTable) -> Self {
        TableJson {
            n: t.n,
            table: t.rows(),
        }
    }
}

impl CayleyTable {
    /// Builds a validated table: square, entries in range, element 0 a
    /// two-sided identity and every row and column a permutation.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let table = Self::from_rows_lenient(rows)?;
        table.check_identity()?;
        table.check_latin()?;
        Ok(table)
    }

    /// Builds a table checking only shape and range. Used to diagnose
    /// corrupted structures, which the axiom checker reports on as data.
    pub fn from_rows_lenient(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(GyroError::MalformedTable("empty table".into()));
        }
        let mut cells = Vec::with_capacity(n * n);
        for (a, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(GyroError::MalformedTable(format!(
                    "row {a} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for &v in &row {
                if v >= n {
                    return Err(GyroError::OutOfRange { index: v, size: n });
                }
            }
            cells.extend(row);
        }
        Ok(Self { n, cells })
    }

    /// Builds a table from an operation on `0..n`, validated.
    pub fn from_fn(n: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let rows = (0..n).map(|a| (0..n).map(|b| op(a, b)).collect()).collect();
        Self::from_rows(rows)
    }

    fn check_identity(&self) -> Result<()> {
        for a in 0..self.n {
            if self.get(0, a) != a || self.get(a, 0) != a {
                return Err(GyroError::MalformedTable(format!(
                    "element 0 is not a two-sided identity (fails at {a})"
                )));
            }
        }
        Ok(())
    }

    fn check_latin(&self) -> Result<()> {
        let n = self.n;
        for a in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for b in 0..n {
                let r = self.get(a, b);
                if std::mem::replace(&mut row_seen[r], true) {
                    return Err(GyroError::MalformedTable(format!(
                        "row {a} is not a permutation (repeats {r})"
                    )));
                }
                let c = self.get(b, a);
                if std::mem::replace(&mut col_seen[c], true) {
                    return Err(GyroError::MalformedTable(format!(
                        "column {a} is not a permutation (repeats {c})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_latin(&self) -> bool {
        self.check_latin().is_ok()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `a ⊕ b` without bounds checking beyond the slice index.
    #[inline]
    pub fn get(&self, a: usize, b: usize) -> usize {
        self.cells[a * self.n + b]
    }

    pub fn try_get(&self, a: usize, b: usize) -> Result<usize> {
        for x in [a, b] {
            if x >= self.n {
                return Err(GyroError::OutOfRange {
                    index: x,
                    size: self.n,
                });
            }
        }
        Ok(self.get(a, b))
    }

    /// Overwrites one cell. The result is only range-checked.
    pub fn set(&mut self, a: usize, b: usize, value: usize) -> Result<()> {
        self.try_get(a, b)?;
        if value >= self.n {
            return Err(GyroError::OutOfRange {
                index: value,
                size: self.n,
            });
        }
        self.cells[a * self.n + b] = value;
        Ok(())
    }

    pub fn row(&self, a: usize) -> &[usize] {
        &self.cells[a * self.n..(a + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|a| self.row(a).to_vec()).collect()
    }

    /// Relabels elements: entry `(p(a), p(b))` of the result is `p(a ⊕ b)`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n;
        let mut cells = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                cells[perm[a] * n + perm[b]] = perm[self.get(a, b)];
            }
        }
        Ok(Self { n, cells })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let tokens = tokenize(text)?;
        let (&n, rest) = tokens
            .split_first()
            .ok_or_else(|| GyroError::MalformedTable("missing size".into()))?;
        if rest.len() != n * n {
            return Err(GyroError::MalformedTable(format!(
                "expected {} entries for n = {n}, found {}",
                n * n,
                rest.len()
            )));
        }
        let rows = rest.chunks(n.max(1)).map(<[usize]>::to_vec).collect();
        Self::from_rows(rows)
    }

    /// Parses without the identity/Latin checks.
    pub fn parse_lenient(text: &str) -> Result<Self> {
        let tokens = tokenize(text)?;
        let (&n, rest) = tokens
            .split_first()
            .ok_or_else(|| GyroError::MalformedTable("missing size".into()))?;
        if rest.len() != n * n {
            return Err(GyroError::MalformedTable(format!(
                "expected {} entries for n = {n}, found {}",
                n * n,
                rest.len()
            )));
        }
        let rows = rest.chunks(n.max(1)).map(<[usize]>::to_vec).collect();
        Self::from_rows_lenient(rows)
    }

    pub fn to_text(&self) -> String {
        let width = (self.n.saturating_sub(1)).to_string().len();
        let mut out = format!("{}\n", self.n);
        for a in 0..self.n {
            let line: Vec<String> = self.row(a).iter().map(|v| format!("{v:>width$}")).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    /// Loads a table file; `.json` files use the JSON export format.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        if path.extension().is_some_and(|e| e == "json") {
            Ok(serde_json::from_str(&text)?)
        } else {
            Self::parse(&text)
        }
    }
}

/// Splits integer text into tokens, dropping `#` comments.
pub(crate) fn tokenize(text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        for tok in line.split_whitespace() {
            let v = tok
                .parse::<usize>()
                .map_err(|_| GyroError::Parse(format!("not a non-negative integer: `{tok}`")))?;
            out.push(v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z3: &str = "# cyclic group of order 3\n3\n0 1 2\n1 2 0\n2 0 1\n";

    #[test]
    fn parses_with_comments() {
        let t = CayleyTable::parse(Z3).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t.get(1, 2), 0);
        assert_eq!(CayleyTable::parse(&t.to_text()).unwrap(), t);
    }

    #[test]
    fn rejects_out_of_range_and_non_permutation_rows() {
        assert!(matches!(
            CayleyTable::parse("2\n0 1\n1 2\n"),
            Err(GyroError::OutOfRange { index: 2, size: 2 })
        ));
        assert!(matches!(
            CayleyTable::parse("3\n0 1 2\n1 1 0\n2 0 1\n"),
            Err(GyroError::MalformedTable(_))
        ));
        // identity must sit at 0
        assert!(CayleyTable::parse("2\n1 0\n0 1\n").is_err());
        assert!(CayleyTable::parse("2\n0 1\n1\n").is_err());
    }

    #[test]
    fn lenient_accepts_broken_latin_property() {
        let t = CayleyTable::parse_lenient("3\n0 1 2\n1 1 0\n2 0 1\n").unwrap();
        assert!(!t.is_latin());
    }

    #[test]
    fn json_round_trip() {
        let t = CayleyTable::parse(Z3).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        let back: CayleyTable = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
    }
}
