//! Bordered, blocked Cayley tables and their verification.
//!
//! A table is a Cayley table of a group with its rows and columns listed in
//! some order and cut into contiguous runs (blocks). It is a Cayley-Sudoku
//! table when every block has the same shape and contains each group element
//! exactly once.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::group::{FiniteGroup, GroupError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("malformed table: {0}")]
    Malformed(String),
    #[error("not a Cayley-Sudoku table: {0}")]
    NotSudoku(BlockFailure),
    #[error("not a Latin square: {0}")]
    NotLatin(String),
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("row blocks are not right cosets of one subgroup: {0}")]
    NotCosetRows(String),
    #[error("exchange document: {0}")]
    Exchange(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// The first thing wrong with one block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockFailure {
    pub row_block: usize,
    pub col_block: usize,
    pub problem: BlockProblem,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlockProblem {
    /// An element occurs `count > 1` times.
    Duplicate { element: String, count: usize },
    /// An element does not occur at all.
    Missing { element: String },
    /// This block's shape differs from block (0, 0).
    NonUniform {
        expected: (usize, usize),
        found: (usize, usize),
    },
}

impl fmt::Display for BlockFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "block ({}, {}): ", self.row_block, self.col_block)?;
        match &self.problem {
            BlockProblem::Duplicate { element, count } => write!(f, "{element} appears {count} times"),
            BlockProblem::Missing { element } => write!(f, "{element} is missing"),
            BlockProblem::NonUniform { expected, found } => write!(
                f,
                "shape {}x{} differs from {}x{}",
                found.0, found.1, expected.0, expected.1
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SudokuVerdict {
    Pass,
    Fail(BlockFailure),
}

impl SudokuVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, SudokuVerdict::Pass)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleySudokuTable {
    group: Arc<FiniteGroup>,
    row_labels: Vec<usize>,
    col_labels: Vec<usize>,
    row_blocks: Vec<Range<usize>>,
    col_blocks: Vec<Range<usize>>,
    body: Vec<usize>,
    verified: bool,
}

impl CayleySudokuTable {
    /// Lays out the Cayley table with one row block per entry of `row_parts`
    /// and one column block per entry of `col_parts`, in the given orders.
    /// The result is not yet verified.
    pub fn from_blocks(
        group: &Arc<FiniteGroup>,
        row_parts: &[Vec<usize>],
        col_parts: &[Vec<usize>],
    ) -> Result<CayleySudokuTable, TableError> {
        let (row_labels, row_blocks) = concat_parts(row_parts);
        let (col_labels, col_blocks) = concat_parts(col_parts);
        check_border(group, &row_labels, "row")?;
        check_border(group, &col_labels, "column")?;
        let body = row_labels
            .iter()
            .flat_map(|&r| col_labels.iter().map(move |&c| group.op(r, c)))
            .collect();
        Ok(CayleySudokuTable {
            group: Arc::clone(group),
            row_labels,
            col_labels,
            row_blocks,
            col_blocks,
            body,
            verified: false,
        })
    }

    /// Takes every field as given; nothing is checked until
    /// [`CayleySudokuTable::verify_sudoku`].
    pub fn from_raw(
        group: &Arc<FiniteGroup>,
        row_labels: Vec<usize>,
        col_labels: Vec<usize>,
        row_blocks: Vec<Range<usize>>,
        col_blocks: Vec<Range<usize>>,
        body: Vec<usize>,
    ) -> CayleySudokuTable {
        CayleySudokuTable {
            group: Arc::clone(group),
            row_labels,
            col_labels,
            row_blocks,
            col_blocks,
            body,
            verified: false,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn row_labels(&self) -> &[usize] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[usize] {
        &self.col_labels
    }

    pub fn row_blocks(&self) -> &[Range<usize>] {
        &self.row_blocks
    }

    pub fn col_blocks(&self) -> &[Range<usize>] {
        &self.col_blocks
    }

    pub fn size(&self) -> usize {
        self.row_labels.len()
    }

    pub fn cell(&self, row: usize, col: usize) -> usize {
        self.body[row * self.col_labels.len() + col]
    }

    /// The body as rows of element indices.
    pub fn body_rows(&self) -> Vec<Vec<usize>> {
        self.body
            .chunks(self.col_labels.len().max(1))
            .map(<[usize]>::to_vec)
            .collect()
    }

    /// Set once a verification has passed.
    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// `(rows, columns)` of block (0, 0).
    pub fn block_shape(&self) -> (usize, usize) {
        (
            self.row_blocks.first().map_or(0, |r| r.len()),
            self.col_blocks.first().map_or(0, |c| c.len()),
        )
    }

    pub fn mutate_cell(&mut self, row: usize, col: usize, value: usize) {
        let width = self.col_labels.len();
        self.body[row * width + col] = value;
        self.verified = false;
    }

    /// Checks borders, block ranges and body against the group operation.
    pub fn check_consistency(&self) -> Result<(), TableError> {
        let g = &self.group;
        let n = g.order();
        check_border(g, &self.row_labels, "row")?;
        check_border(g, &self.col_labels, "column")?;
        check_ranges(&self.row_blocks, n, "row")?;
        check_ranges(&self.col_blocks, n, "column")?;
        if self.body.len() != n * n {
            return Err(TableError::Malformed(format!(
                "body has {} cells, expected {}",
                self.body.len(),
                n * n
            )));
        }
        for (i, &r) in self.row_labels.iter().enumerate() {
            for (j, &c) in self.col_labels.iter().enumerate() {
                let found = self.body[i * n + j];
                let expected = g.op(r, c);
                if found != expected {
                    return Err(TableError::Malformed(format!(
                        "cell ({i}, {j}) holds {} but {}·{} = {}",
                        label_or_index(g, found),
                        g.label(r),
                        g.label(c),
                        g.label(expected)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Pass, or the first failing block in row-major block order.
    pub fn verify_sudoku(&self) -> Result<SudokuVerdict, TableError> {
        Ok(match self.block_failures(true)?.into_iter().next() {
            None => SudokuVerdict::Pass,
            Some(f) => SudokuVerdict::Fail(f),
        })
    }

    /// Every failing block, one entry per block.
    pub fn verify_sudoku_all(&self) -> Result<Vec<BlockFailure>, TableError> {
        self.block_failures(false)
    }

    /// Verifies and marks the table, or returns the failure as an error.
    pub fn into_verified(mut self) -> Result<CayleySudokuTable, TableError> {
        match self.verify_sudoku()? {
            SudokuVerdict::Pass => {
                self.verified = true;
                Ok(self)
            }
            SudokuVerdict::Fail(f) => Err(TableError::NotSudoku(f)),
        }
    }

    fn block_failures(&self, first_only: bool) -> Result<Vec<BlockFailure>, TableError> {
        self.check_consistency()?;
        let g = &self.group;
        let n = g.order();
        let expected = self.block_shape();
        let mut failures = Vec::new();
        let mut counts = vec![0usize; n];
        for (bi, rows) in self.row_blocks.iter().enumerate() {
            for (bj, cols) in self.col_blocks.iter().enumerate() {
                let found = (rows.len(), cols.len());
                let problem = if found != expected {
                    Some(BlockProblem::NonUniform { expected, found })
                } else {
                    counts.iter_mut().for_each(|c| *c = 0);
                    for i in rows.clone() {
                        for j in cols.clone() {
                            counts[self.body[i * n + j]] += 1;
                        }
                    }
                    let dup = counts.iter().position(|&c| c > 1);
                    let missing = counts.iter().position(|&c| c == 0);
                    match (dup, missing) {
                        (Some(e), _) => Some(BlockProblem::Duplicate {
                            element: g.label(e).to_string(),
                            count: counts[e],
                        }),
                        (None, Some(e)) => Some(BlockProblem::Missing {
                            element: g.label(e).to_string(),
                        }),
                        (None, None) => None,
                    }
                };
                if let Some(problem) = problem {
                    failures.push(BlockFailure {
                        row_block: bi,
                        col_block: bj,
                        problem,
                    });
                    if first_only {
                        return Ok(failures);
                    }
                }
            }
        }
        Ok(failures)
    }

    /// Fixed-width text with a double rule under the header and after the
    /// row labels, and single rules between blocks.
    pub fn render_text(&self) -> String {
        let g = &self.group;
        let width = g.labels().iter().map(|l| l.chars().count()).max().unwrap_or(1);
        let pad = |s: &str| format!("{s:>width$}");
        let line = |head: &str, cells: &dyn Fn(usize) -> usize| {
            let mut out = format!("{} ||", pad(head));
            for block in &self.col_blocks {
                for j in block.clone() {
                    out.push(' ');
                    out.push_str(&pad(g.label(cells(j))));
                }
                out.push_str(" |");
            }
            out
        };
        let header = line("", &|j| self.col_labels[j]);
        let rule = |fill: char| -> String { header.chars().map(|c| if c == '|' { '+' } else { fill }).collect() };
        let mut out = String::new();
        out.push_str(&header);
        out.push('\n');
        out.push_str(&rule('='));
        out.push('\n');
        let n = self.col_labels.len();
        for block in &self.row_blocks {
            for i in block.clone() {
                out.push_str(&line(g.label(self.row_labels[i]), &|j| self.body[i * n + j]));
                out.push('\n');
            }
            out.push_str(&rule('-'));
            out.push('\n');
        }
        out
    }

    /// The canonical exchange document.
    pub fn to_exchange(&self) -> String {
        let g = &self.group;
        let label = |x: &usize| g.label(*x).to_string();
        let doc = ExchangeDoc {
            body: self
                .body_rows()
                .iter()
                .map(|row| row.iter().map(label).collect())
                .collect(),
            col_blocks: self.col_blocks.iter().map(|r| [r.start, r.end]).collect(),
            col_labels: self.col_labels.iter().map(label).collect(),
            group: ExchangeGroup::from_group(g),
            row_blocks: self.row_blocks.iter().map(|r| [r.start, r.end]).collect(),
            row_labels: self.row_labels.iter().map(label).collect(),
            verified: self.verified,
        };
        canonical_json(&serde_json::to_value(&doc).expect("exchange document serializes"))
    }

    /// Parses an exchange document. The group table is re-validated; the
    /// layout is not checked until verification.
    pub fn from_exchange(text: &str) -> Result<CayleySudokuTable, TableError> {
        let doc: ExchangeDoc = serde_json::from_str(text).map_err(|e| TableError::Exchange(e.to_string()))?;
        let group = Arc::new(doc.group.to_group()?);
        let lookup = |l: &String| {
            group
                .index_of_label(l)
                .ok_or_else(|| TableError::Malformed(format!("unknown label {l:?}")))
        };
        let row_labels = doc.row_labels.iter().map(lookup).collect::<Result<Vec<_>, _>>()?;
        let col_labels = doc.col_labels.iter().map(lookup).collect::<Result<Vec<_>, _>>()?;
        if doc.body.len() != row_labels.len() || doc.body.iter().any(|r| r.len() != col_labels.len()) {
            return Err(TableError::Malformed("body shape does not match the borders".into()));
        }
        let body = doc.body.iter().flatten().map(lookup).collect::<Result<Vec<_>, _>>()?;
        let ranges = |v: &[[usize; 2]]| v.iter().map(|[a, b]| *a..*b).collect::<Vec<_>>();
        let mut table = CayleySudokuTable::from_raw(
            &group,
            row_labels,
            col_labels,
            ranges(&doc.row_blocks),
            ranges(&doc.col_blocks),
            body,
        );
        table.verified = doc.verified;
        Ok(table)
    }

    /// The same layout expressed over `target`, matching elements by label.
    pub fn relabel_onto(&self, target: &Arc<FiniteGroup>) -> Result<CayleySudokuTable, TableError> {
        let map = |x: usize| {
            let l = self.group.label(x);
            target
                .index_of_label(l)
                .ok_or_else(|| TableError::Malformed(format!("label {l:?} is not in the target group")))
        };
        if target.order() != self.group.order() {
            return Err(TableError::OrderMismatch {
                left: self.group.order(),
                right: target.order(),
            });
        }
        let table = CayleySudokuTable {
            group: Arc::clone(target),
            row_labels: self.row_labels.iter().map(|&x| map(x)).collect::<Result<_, _>>()?,
            col_labels: self.col_labels.iter().map(|&x| map(x)).collect::<Result<_, _>>()?,
            row_blocks: self.row_blocks.clone(),
            col_blocks: self.col_blocks.clone(),
            body: self.body.iter().map(|&x| map(x)).collect::<Result<_, _>>()?,
            verified: false,
        };
        table.check_consistency()?;
        Ok(table)
    }

    /// The rows of element labels in the order they are displayed; handy for
    /// comparing against printed tables.
    pub fn label_grid(&self) -> Vec<Vec<&str>> {
        self.body_rows()
            .iter()
            .map(|row| row.iter().map(|&x| self.group.label(x)).collect())
            .collect()
    }

    /// The column-block square seen through cosets.
    ///
    /// Expects the row blocks to be the right cosets `S·g_1, …, S·g_m` of one
    /// subgroup and column block `col_block` to hold `m` elements
    /// `r_1, …, r_m`. Entry `(i, j)` is the position of the row block
    /// containing `g_i·r_j`, which does not depend on the choice of `g_i`.
    pub fn coset_square(&self, col_block: usize) -> Result<Vec<Vec<usize>>, TableError> {
        self.check_consistency()?;
        let g = &self.group;
        let cols = self
            .col_blocks
            .get(col_block)
            .ok_or_else(|| TableError::Malformed(format!("no column block {col_block}")))?;
        let m = self.row_blocks.len();
        if cols.len() != m {
            return Err(TableError::NotCosetRows(format!(
                "column block has {} columns but there are {m} row blocks",
                cols.len()
            )));
        }
        // the block holding the identity must be the subgroup itself
        let mut block_of = vec![usize::MAX; g.order()];
        for (b, rows) in self.row_blocks.iter().enumerate() {
            for i in rows.clone() {
                block_of[self.row_labels[i]] = b;
            }
        }
        let sub_block = &self.row_blocks[block_of[g.identity()]];
        let subgroup: Vec<usize> = sub_block.clone().map(|i| self.row_labels[i]).collect();
        for rows in &self.row_blocks {
            let first = self.row_labels[rows.start];
            let mut expected: Vec<usize> = subgroup.iter().map(|&s| g.op(s, first)).collect();
            let mut found: Vec<usize> = rows.clone().map(|i| self.row_labels[i]).collect();
            expected.sort_unstable();
            found.sort_unstable();
            if expected != found {
                return Err(TableError::NotCosetRows(format!(
                    "row block starting at {} is not S·{}",
                    g.label(first),
                    g.label(first)
                )));
            }
        }
        Ok(self
            .row_blocks
            .iter()
            .map(|rows| {
                let gi = self.row_labels[rows.start];
                cols.clone().map(|j| block_of[g.op(gi, self.col_labels[j])]).collect()
            })
            .collect())
    }

    /// [`CayleySudokuTable::coset_square`] as a validated Latin square.
    pub fn blocks_as_latin_square(&self, col_block: usize) -> Result<LatinSquare, TableError> {
        LatinSquare::new(self.coset_square(col_block)?)
    }
}

fn label_or_index(g: &FiniteGroup, x: usize) -> String {
    if x < g.order() {
        g.label(x).to_string()
    } else {
        format!("#{x}")
    }
}

fn concat_parts(parts: &[Vec<usize>]) -> (Vec<usize>, Vec<Range<usize>>) {
    let mut labels = Vec::new();
    let mut blocks = Vec::with_capacity(parts.len());
    for part in parts {
        let start = labels.len();
        labels.extend_from_slice(part);
        blocks.push(start..labels.len());
    }
    (labels, blocks)
}

fn check_border(g: &FiniteGroup, labels: &[usize], which: &str) -> Result<(), TableError> {
    if labels.len() != g.order() {
        return Err(TableError::Malformed(format!(
            "{which} border has {} labels, group has {} elements",
            labels.len(),
            g.order()
        )));
    }
    let mut seen = vec![false; g.order()];
    for &x in labels {
        if x >= g.order() {
            return Err(TableError::Malformed(format!(
                "{which} border has unknown element #{x}"
            )));
        }
        if std::mem::replace(&mut seen[x], true) {
            return Err(TableError::Malformed(format!("{which} border repeats {}", g.label(x))));
        }
    }
    Ok(())
}

fn check_ranges(blocks: &[Range<usize>], n: usize, which: &str) -> Result<(), TableError> {
    let mut next = 0;
    for b in blocks {
        if b.start != next || b.end <= b.start {
            return Err(TableError::Malformed(format!(
                "{which} blocks are not consecutive non-empty ranges covering 0..{n}"
            )));
        }
        next = b.end;
    }
    if next != n {
        return Err(TableError::Malformed(format!(
            "{which} blocks cover 0..{next}, expected 0..{n}"
        )));
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExchangeDoc {
    body: Vec<Vec<String>>,
    col_blocks: Vec<[usize; 2]>,
    col_labels: Vec<String>,
    group: ExchangeGroup,
    row_blocks: Vec<[usize; 2]>,
    row_labels: Vec<String>,
    verified: bool,
}

/// A group as it appears inside exchange documents.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct ExchangeGroup {
    labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    spec: Option<String>,
    table: Vec<Vec<String>>,
}

impl ExchangeGroup {
    pub(crate) fn from_group(g: &FiniteGroup) -> ExchangeGroup {
        ExchangeGroup {
            labels: g.labels().to_vec(),
            spec: g.spec().map(str::to_string),
            table: g
                .elements()
                .map(|a| g.elements().map(|b| g.label(g.op(a, b)).to_string()).collect())
                .collect(),
        }
    }

    pub(crate) fn to_group(&self) -> Result<FiniteGroup, GroupError> {
        let g = FiniteGroup::from_table(&self.labels, &self.table)?;
        Ok(match &self.spec {
            Some(s) => g.with_spec(s.clone()),
            None => g,
        })
    }
}

/// JSON with sorted keys, two-space indentation, and arrays of scalars kept
/// on one line.
pub fn canonical_json(value: &Value) -> String {
    let mut out = String::new();
    write_canonical(value, 0, &mut out);
    out.push('\n');
    out
}

fn write_canonical(value: &Value, indent: usize, out: &mut String) {
    let is_scalar = |v: &Value| !matches!(v, Value::Array(_) | Value::Object(_));
    match value {
        Value::Object(map) if !map.is_empty() => {
            let sorted: BTreeMap<&String, &Value> = map.iter().collect();
            out.push_str("{\n");
            for (k, (key, v)) in sorted.iter().enumerate() {
                out.push_str(&"  ".repeat(indent + 1));
                out.push_str(&Value::String((*key).clone()).to_string());
                out.push_str(": ");
                write_canonical(v, indent + 1, out);
                if k + 1 < sorted.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
        Value::Array(items) if !items.iter().all(is_scalar) => {
            out.push_str("[\n");
            for (k, v) in items.iter().enumerate() {
                out.push_str(&"  ".repeat(indent + 1));
                write_canonical(v, indent + 1, out);
                if k + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&"  ".repeat(indent));
            out.push(']');
        }
        Value::Array(items) => {
            out.push('[');
            for (k, v) in items.iter().enumerate() {
                if k > 0 {
                    out.push_str(", ");
                }
                out.push_str(&v.to_string());
            }
            out.push(']');
        }
        other => out.push_str(&other.to_string()),
    }
}

/// The borders and blocks recovered from [`CayleySudokuTable::render_text`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderedLayout {
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub row_blocks: Vec<Range<usize>>,
    pub col_blocks: Vec<Range<usize>>,
    pub body: Vec<Vec<String>>,
}

/// Reads back the text produced by [`CayleySudokuTable::render_text`].
pub fn parse_rendered(text: &str) -> Result<RenderedLayout, TableError> {
    let malformed = |m: &str| TableError::Malformed(m.to_string());
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| malformed("empty rendering"))?;
    let (_, cols) = header.split_once("||").ok_or_else(|| malformed("header has no '||'"))?;
    let mut col_labels = Vec::new();
    let mut col_blocks = Vec::new();
    for chunk in cols.split('|').filter(|c| !c.trim().is_empty()) {
        let start = col_labels.len();
        col_labels.extend(chunk.split_whitespace().map(str::to_string));
        col_blocks.push(start..col_labels.len());
    }
    let mut row_labels = Vec::new();
    let mut row_blocks = Vec::new();
    let mut body = Vec::new();
    let mut block_start = 0;
    for line in lines {
        if line.chars().all(|c| matches!(c, '=' | '-' | '+')) {
            if line.starts_with('-') {
                row_blocks.push(block_start..row_labels.len());
                block_start = row_labels.len();
            }
            continue;
        }
        let (head, rest) = line.split_once("||").ok_or_else(|| malformed("row has no '||'"))?;
        row_labels.push(head.trim().to_string());
        body.push(
            rest.split_whitespace()
                .filter(|t| *t != "|")
                .map(str::to_string)
                .collect(),
        );
    }
    Ok(RenderedLayout {
        row_labels,
        col_labels,
        row_blocks,
        col_blocks,
        body,
    })
}

/// An `m × m` grid over the symbols `0..m`, each once per row and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatinSquare {
    order: usize,
    grid: Vec<Vec<usize>>,
}

impl LatinSquare {
    pub fn new(grid: Vec<Vec<usize>>) -> Result<LatinSquare, TableError> {
        let m = grid.len();
        for (i, row) in grid.iter().enumerate() {
            if row.len() != m {
                return Err(TableError::NotLatin(format!(
                    "row {i} has length {}, expected {m}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= m) {
                return Err(TableError::NotLatin(format!("symbol {bad} out of range in row {i}")));
            }
        }
        for i in 0..m {
            let mut in_row = vec![false; m];
            let mut in_col = vec![false; m];
            for j in 0..m {
                if std::mem::replace(&mut in_row[grid[i][j]], true) {
                    return Err(TableError::NotLatin(format!("row {i} repeats symbol {}", grid[i][j])));
                }
                if std::mem::replace(&mut in_col[grid[j][i]], true) {
                    return Err(TableError::NotLatin(format!(
                        "column {i} repeats symbol {}",
                        grid[j][i]
                    )));
                }
            }
        }
        Ok(LatinSquare { order: m, grid })
    }

    /// The body of a table, symbols being element indices.
    pub fn from_table(table: &CayleySudokuTable) -> Result<LatinSquare, TableError> {
        LatinSquare::new(table.body_rows())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn grid(&self) -> &[Vec<usize>] {
        &self.grid
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.grid[i][j]
    }
}

/// True iff superimposing the squares gives `m²` distinct ordered pairs.
pub fn are_orthogonal(a: &LatinSquare, b: &LatinSquare) -> Result<bool, TableError> {
    if a.order != b.order {
        return Err(TableError::OrderMismatch {
            left: a.order,
            right: b.order,
        });
    }
    let m = a.order;
    let mut seen = vec![false; m * m];
    for i in 0..m {
        for j in 0..m {
            if std::mem::replace(&mut seen[a.grid[i][j] * m + b.grid[i][j]], true) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::make_cyclic(n).unwrap())
    }

    fn z9_table1() -> CayleySudokuTable {
        let g = z(9);
        CayleySudokuTable::from_blocks(
            &g,
            &[vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]],
            &[vec![0, 3, 6], vec![1, 4, 7], vec![2, 5, 8]],
        )
        .unwrap()
    }

    #[test]
    fn table1_layout_passes() {
        assert_eq!(z9_table1().verify_sudoku().unwrap(), SudokuVerdict::Pass);
        assert!(z9_table1().into_verified().unwrap().is_verified());
    }

    #[test]
    fn z4_bad_rows_fail_in_first_block() {
        let g = z(4);
        let t = CayleySudokuTable::from_blocks(&g, &[vec![0, 1], vec![2, 3]], &[vec![0, 1], vec![2, 3]]).unwrap();
        // rows {0,1} x cols {0,1} hold 0,1,1,2
        assert_eq!(
            t.verify_sudoku().unwrap(),
            SudokuVerdict::Fail(BlockFailure {
                row_block: 0,
                col_block: 0,
                problem: BlockProblem::Duplicate {
                    element: "1".into(),
                    count: 2
                }
            })
        );
        let good = CayleySudokuTable::from_blocks(&g, &[vec![0, 2], vec![1, 3]], &[vec![0, 1], vec![2, 3]]).unwrap();
        assert!(good.verify_sudoku().unwrap().passed());
    }

    #[test]
    fn single_row_and_column_blocks() {
        let g = z(3);
        let rows: Vec<Vec<usize>> = vec![vec![0, 1, 2]];
        let cols: Vec<Vec<usize>> = (0..3).map(|i| vec![i]).collect();
        let t = CayleySudokuTable::from_blocks(&g, &rows, &cols).unwrap();
        assert!(t.verify_sudoku().unwrap().passed());
    }

    #[test]
    fn non_uniform_blocks_fail() {
        let g = z(4);
        let t = CayleySudokuTable::from_blocks(&g, &[vec![0, 1, 2, 3]], &[vec![0], vec![1, 2, 3]]).unwrap();
        // block (0, 0) is a full 4x1 column; block (0, 1) has the wrong shape
        assert_eq!(
            t.verify_sudoku().unwrap(),
            SudokuVerdict::Fail(BlockFailure {
                row_block: 0,
                col_block: 1,
                problem: BlockProblem::NonUniform {
                    expected: (4, 1),
                    found: (4, 3)
                },
            })
        );
    }

    #[test]
    fn inconsistent_body_is_malformed() {
        let mut t = z9_table1();
        t.mutate_cell(0, 0, 5);
        assert!(matches!(t.verify_sudoku(), Err(TableError::Malformed(_))));
        let g = z(3);
        assert!(matches!(
            CayleySudokuTable::from_blocks(&g, &[vec![0, 1, 1]], &[vec![0, 1, 2]]),
            Err(TableError::Malformed(_))
        ));
    }

    #[test]
    fn render_trivial_group() {
        let g = z(1);
        let t = CayleySudokuTable::from_blocks(&g, &[vec![0]], &[vec![0]]).unwrap();
        assert_eq!(t.render_text(), "  || 0 |\n==++===+\n0 || 0 |\n--++---+\n");
    }

    #[test]
    fn render_table1() {
        let text = z9_table1().render_text();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "  || 0 3 6 | 1 4 7 | 2 5 8 |");
        assert_eq!(lines[1], "==++=======+=======+=======+");
        assert_eq!(lines[2], "0 || 0 3 6 | 1 4 7 | 2 5 8 |");
        assert_eq!(lines[5], "--++-------+-------+-------+");
        assert_eq!(lines.len(), 14);
        assert_eq!(lines[12], "8 || 8 2 5 | 0 3 6 | 1 4 7 |");
        let parsed = parse_rendered(&text).unwrap();
        assert_eq!(parsed.row_blocks, vec![0..3, 3..6, 6..9]);
        assert_eq!(parsed.col_labels, ["0", "3", "6", "1", "4", "7", "2", "5", "8"]);
    }

    #[test]
    fn exchange_round_trip() {
        let t = z9_table1().into_verified().unwrap();
        let text = t.to_exchange();
        assert!(text.starts_with("{\n  \"body\": [\n    [\"0\", \"3\", \"6\""));
        let back = CayleySudokuTable::from_exchange(&text).unwrap();
        assert_eq!(back.to_exchange(), text);
        assert!(back.verify_sudoku().unwrap().passed());
        assert!(matches!(
            CayleySudokuTable::from_exchange("{\"body\": 3}"),
            Err(TableError::Exchange(_))
        ));
    }

    #[test]
    fn orthogonality() {
        let add = LatinSquare::new(vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]).unwrap();
        // column j of the second square is row-shifted: (2i + j) mod 3
        let shifted = LatinSquare::new(vec![vec![0, 1, 2], vec![2, 0, 1], vec![1, 2, 0]]).unwrap();
        assert!(are_orthogonal(&add, &shifted).unwrap());
        assert!(!are_orthogonal(&add, &add).unwrap());
        let two = LatinSquare::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert!(matches!(
            are_orthogonal(&add, &two),
            Err(TableError::OrderMismatch { .. })
        ));
        assert!(LatinSquare::new(vec![vec![0, 0], vec![1, 1]]).is_err());
    }
}
