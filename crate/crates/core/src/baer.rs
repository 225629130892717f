//! Coset multiplication over fixed representatives.
//!
//! For a right transversal `r_1..r_m` of `S`, setting `Sr_i · Sr_j := Sr_ir_j`
//! is always a binary operation on the right cosets. It is a quasigroup
//! exactly when the representatives are universal, which in turn is exactly
//! when the column block they form in a table with right-coset rows is a
//! union of Sudoku blocks. [`baer_equivalence_check`] evaluates all three
//! conditions through separate code and refuses to answer if they disagree.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::constructions::{check_partition, ConstructionError};
use crate::group::{FiniteGroup, Side, Subgroup, Transversal, TransversalDefect};
use crate::sudoku_table::{BlockFailure, CayleySudokuTable, TableError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BaerError {
    #[error(transparent)]
    NotTransversal(#[from] TransversalDefect),
    #[error(transparent)]
    Partition(#[from] ConstructionError),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("verdicts disagree for part {part}: sudoku {sudoku}, universal {universal}, quasigroup {quasigroup}")]
    Inconsistent {
        part: usize,
        sudoku: bool,
        universal: bool,
        quasigroup: bool,
    },
}

/// The `m×m` table of `Sr_i · Sr_j` for a fixed right transversal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetMultiplicationTable {
    subgroup: Subgroup,
    reps: Vec<usize>,
    /// `table[i][j]` is the position `k` in `reps` with `r_ir_j ∈ Sr_k`.
    table: Vec<Vec<usize>>,
}

impl CosetMultiplicationTable {
    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// The first repeated entry, as `(row, col, earlier col)` for rows or
    /// `(row, col, earlier row)` for columns.
    pub fn first_repeat(&self) -> Option<QuasigroupDefect> {
        let m = self.table.len();
        for i in 0..m {
            let mut seen = vec![usize::MAX; m];
            for j in 0..m {
                let k = self.table[i][j];
                if seen[k] != usize::MAX {
                    return Some(QuasigroupDefect::Row {
                        row: i,
                        col: j,
                        earlier: seen[k],
                    });
                }
                seen[k] = j;
            }
        }
        for j in 0..m {
            let mut seen = vec![usize::MAX; m];
            for i in 0..m {
                let k = self.table[i][j];
                if seen[k] != usize::MAX {
                    return Some(QuasigroupDefect::Column {
                        row: i,
                        col: j,
                        earlier: seen[k],
                    });
                }
                seen[k] = i;
            }
        }
        None
    }
}

/// Where a coset table stops being a Latin square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum QuasigroupDefect {
    Row { row: usize, col: usize, earlier: usize },
    Column { row: usize, col: usize, earlier: usize },
}

/// Multiplies right cosets through `reps`, which must be a right transversal.
pub fn coset_quasigroup(subgroup: &Subgroup, reps: &Transversal) -> Result<CosetMultiplicationTable, BaerError> {
    if reps.side() != Side::Right {
        return Err(BaerError::NotTransversal(TransversalDefect {
            side: reps.side(),
            coset_representative: "left transversal supplied".into(),
            hits: 0,
        }));
    }
    subgroup.check_transversal(Side::Right, reps.reps())?;
    Ok(multiply(subgroup, reps.reps()))
}

fn multiply(subgroup: &Subgroup, reps: &[usize]) -> CosetMultiplicationTable {
    let g = subgroup.group();
    let map = subgroup.coset_index_map(Side::Right);
    let mut position = vec![usize::MAX; subgroup.index()];
    for (k, &r) in reps.iter().enumerate() {
        position[map[r]] = k;
    }
    let table = reps
        .iter()
        .map(|&a| reps.iter().map(|&b| position[map[g.op(a, b)]]).collect())
        .collect();
    CosetMultiplicationTable {
        subgroup: subgroup.clone(),
        reps: reps.to_vec(),
        table,
    }
}

/// Every row and every column of the coset table is a permutation.
pub fn is_quasigroup_table(table: &CosetMultiplicationTable) -> bool {
    table.first_repeat().is_none()
}

/// Verdicts for one part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartVerdict {
    pub part: Vec<String>,
    pub sudoku: bool,
    pub universal: bool,
    pub quasigroup: bool,
    /// First failing block of the part's column block, `(row block, column block)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub block_failure: Option<(usize, usize)>,
    /// Conjugator and the two part elements landing in one coset of it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conjugate_witness: Option<(String, String, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quasigroup_witness: Option<QuasigroupDefect>,
}

/// Outcome of [`baer_equivalence_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BaerReport {
    pub side: Side,
    pub subgroup: Vec<String>,
    pub parts: Vec<PartVerdict>,
}

impl BaerReport {
    /// Whether every part satisfies the (agreed) condition.
    pub fn all_hold(&self) -> bool {
        self.parts.iter().all(|p| p.sudoku)
    }
}

/// Evaluates, for each part of a partition of `G` into right transversals of
/// `S`, whether
///
/// * (a) the part's column block in the table with right-coset rows consists
///   of Sudoku blocks,
/// * (b) the part is a right transversal of every conjugate `S^g`,
/// * (c) the part's coset multiplication is a quasigroup.
///
/// Returns [`BaerError::Inconsistent`] if any part gets differing answers.
pub fn baer_equivalence_check(subgroup: &Subgroup, parts: &[Vec<usize>]) -> Result<BaerReport, BaerError> {
    let mut report = check_right(subgroup, parts)?;
    report.side = Side::Right;
    Ok(report)
}

/// The left-handed check: left cosets, left transversals of every
/// conjugate, and the left coset multiplication `r_iS · r_jS := r_ir_jS`.
/// Computed as the right-handed check in the opposite group.
pub fn baer_equivalence_check_left(subgroup: &Subgroup, parts: &[Vec<usize>]) -> Result<BaerReport, BaerError> {
    let opposite = Arc::new(subgroup.group().opposite());
    let transported = subgroup
        .transport(&opposite)
        .map_err(|e| TableError::Malformed(e.to_string()))?;
    let mut report = check_right(&transported, parts)?;
    report.side = Side::Left;
    Ok(report)
}

fn check_right(subgroup: &Subgroup, parts: &[Vec<usize>]) -> Result<BaerReport, BaerError> {
    check_partition(subgroup, Side::Right, parts)?;
    let g = subgroup.group();
    let sudoku = route_sudoku(subgroup, parts)?;
    let mut verdicts = Vec::with_capacity(parts.len());
    for (i, part) in parts.iter().enumerate() {
        let conjugate_witness = route_conjugates(g, subgroup, part);
        let quasigroup_witness = multiply(subgroup, part).first_repeat();
        let v = PartVerdict {
            part: part.iter().map(|&x| g.label(x).to_string()).collect(),
            sudoku: sudoku[i].is_none(),
            universal: conjugate_witness.is_none(),
            quasigroup: quasigroup_witness.is_none(),
            block_failure: sudoku[i],
            conjugate_witness,
            quasigroup_witness,
        };
        if v.sudoku != v.universal || v.universal != v.quasigroup {
            return Err(BaerError::Inconsistent {
                part: i,
                sudoku: v.sudoku,
                universal: v.universal,
                quasigroup: v.quasigroup,
            });
        }
        verdicts.push(v);
    }
    Ok(BaerReport {
        side: Side::Right,
        subgroup: subgroup.labels().iter().map(|s| s.to_string()).collect(),
        parts: verdicts,
    })
}

/// (a): lay the table out and collect failing blocks per column block.
fn route_sudoku(subgroup: &Subgroup, parts: &[Vec<usize>]) -> Result<Vec<Option<(usize, usize)>>, BaerError> {
    let rows: Vec<Vec<usize>> = subgroup.cosets(Side::Right).into_iter().map(|c| c.listing).collect();
    let table = CayleySudokuTable::from_blocks(subgroup.group(), &rows, parts)?;
    let mut first: Vec<Option<(usize, usize)>> = vec![None; parts.len()];
    for BlockFailure {
        row_block, col_block, ..
    } in table.verify_sudoku_all()?
    {
        first[col_block].get_or_insert((row_block, col_block));
    }
    Ok(first)
}

/// (b): `r ≠ r'` share a right coset of `S^g` iff `r·r'⁻¹ ∈ S^g`.
fn route_conjugates(g: &FiniteGroup, subgroup: &Subgroup, part: &[usize]) -> Option<(String, String, String)> {
    let mut member = vec![false; g.order()];
    for x in g.elements() {
        member.iter_mut().for_each(|m| *m = false);
        for &s in subgroup.elements() {
            member[g.op(g.op(g.inverse(x), s), x)] = true;
        }
        for (i, &a) in part.iter().enumerate() {
            for &b in &part[i + 1..] {
                if member[g.op(a, g.inverse(b))] {
                    return Some((g.label(x).to_string(), g.label(a).to_string(), g.label(b).to_string()));
                }
            }
        }
    }
    None
}
