//! Coset constructions of Cayley-Sudoku tables.
//!
//! | construction | rows                      | columns                   |
//! |--------------|---------------------------|---------------------------|
//! | 1R           | parts `L_1..L_k`          | right cosets `Sg_1..Sg_n` |
//! | 1L           | left cosets `y_1S..y_nS`  | parts `R_1..R_k`          |
//! | 2L           | parts `L_1..L_k`          | left cosets `y_1S..y_nS`  |
//! | 2R           | right cosets `Sg_1..Sg_n` | parts `R_1..R_k`          |
//!
//! Constructions 1 need the parts to be transversals of `S`; constructions 2
//! need every part to be a transversal of every conjugate `S^g` at once
//! ("universal"). Each entry point takes its partition explicitly, checks
//! the condition, and reports a witness when it fails.

use std::sync::Arc;

use thiserror::Error;

use crate::group::{Side, Subgroup, TransversalDefect};
use crate::sudoku_table::{CayleySudokuTable, TableError};
use crate::ResourceError;

/// Default node budget for [`find_universal_transversal`].
pub const DEFAULT_NODE_CAP: u64 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("expected {expected} parts, found {found}")]
    PartCount { expected: usize, found: usize },
    #[error("parts do not partition the group: {0}")]
    NotPartition(String),
    #[error("part {part} is not a complete set of representatives: {defect}")]
    NotTransversal { part: usize, defect: TransversalDefect },
    #[error("part {part} fails for the conjugate by {conjugator} = {{{conjugate}}}: {defect}")]
    NotUniversal {
        part: usize,
        conjugator: String,
        conjugate: String,
        defect: TransversalDefect,
    },
    #[error("{side} representatives of the subgroup: {defect}")]
    BadRepresentatives { side: Side, defect: TransversalDefect },
    #[error("inner table: {0}")]
    InnerTable(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Resource(#[from] ResourceError),
}

impl ConstructionError {
    /// Whether the error means "the construction's condition does not hold"
    /// rather than bad input or a budget.
    pub fn is_condition_failure(&self) -> bool {
        matches!(
            self,
            ConstructionError::PartCount { .. }
                | ConstructionError::NotPartition(_)
                | ConstructionError::NotTransversal { .. }
                | ConstructionError::NotUniversal { .. }
                | ConstructionError::BadRepresentatives { .. }
        )
    }
}

/// `|S|` disjoint transversals of one side whose union is the group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransversalPartition {
    subgroup: Subgroup,
    side: Side,
    parts: Vec<Vec<usize>>,
}

impl TransversalPartition {
    pub fn new(subgroup: &Subgroup, side: Side, parts: Vec<Vec<usize>>) -> Result<Self, ConstructionError> {
        check_partition(subgroup, side, &parts)?;
        Ok(TransversalPartition {
            subgroup: subgroup.clone(),
            side,
            parts,
        })
    }

    /// Part `i` takes the `i`-th smallest element of every coset, cosets in
    /// canonical order.
    pub fn default_partition(subgroup: &Subgroup, side: Side) -> Self {
        let cosets = subgroup.cosets(side);
        let parts = (0..subgroup.order())
            .map(|i| cosets.iter().map(|c| c.elements[i]).collect())
            .collect();
        TransversalPartition {
            subgroup: subgroup.clone(),
            side,
            parts,
        }
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }
}

/// A single set of representatives valid for every conjugate of the
/// subgroup. Stored sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalTransversal {
    subgroup: Subgroup,
    side: Side,
    reps: Vec<usize>,
}

impl UniversalTransversal {
    /// Checks `reps` against every conjugate before accepting it.
    pub fn certify(subgroup: &Subgroup, side: Side, mut reps: Vec<usize>) -> Result<Self, ConstructionError> {
        check_universal(subgroup, side, &reps).map_err(|w| w.into_error(0))?;
        reps.sort_unstable();
        Ok(UniversalTransversal {
            subgroup: subgroup.clone(),
            side,
            reps,
        })
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }
}

/// Which conjugate a candidate set fails on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalityWitness {
    pub conjugator: String,
    pub conjugate: String,
    pub defect: TransversalDefect,
}

impl UniversalityWitness {
    fn into_error(self, part: usize) -> ConstructionError {
        ConstructionError::NotUniversal {
            part,
            conjugator: self.conjugator,
            conjugate: self.conjugate,
            defect: self.defect,
        }
    }
}

/// Checks `reps` against `S^g` for every `g`, reporting the first conjugate
/// (by conjugator index) it fails on.
pub fn check_universal(subgroup: &Subgroup, side: Side, reps: &[usize]) -> Result<(), UniversalityWitness> {
    let g = subgroup.group();
    let mut checked: Vec<Vec<usize>> = Vec::new();
    for x in g.elements() {
        let conj = subgroup.conjugate(x);
        if checked.contains(&conj.elements().to_vec()) {
            continue;
        }
        if let Err(defect) = conj.check_transversal(side, reps) {
            return Err(UniversalityWitness {
                conjugator: g.label(x).to_string(),
                conjugate: conj.labels().join(", "),
                defect,
            });
        }
        checked.push(conj.elements().to_vec());
    }
    Ok(())
}

/// Checks part count, disjointness and cover, then that each part is a
/// transversal of the given side.
pub fn check_partition(subgroup: &Subgroup, side: Side, parts: &[Vec<usize>]) -> Result<(), ConstructionError> {
    check_cover(subgroup, parts)?;
    for (i, part) in parts.iter().enumerate() {
        subgroup
            .check_transversal(side, part)
            .map_err(|defect| ConstructionError::NotTransversal { part: i, defect })?;
    }
    Ok(())
}

fn check_cover(subgroup: &Subgroup, parts: &[Vec<usize>]) -> Result<(), ConstructionError> {
    let g = subgroup.group();
    if parts.len() != subgroup.order() {
        return Err(ConstructionError::PartCount {
            expected: subgroup.order(),
            found: parts.len(),
        });
    }
    let mut seen = vec![false; g.order()];
    for part in parts {
        for &x in part {
            if x >= g.order() {
                return Err(ConstructionError::NotPartition(format!("unknown element #{x}")));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(ConstructionError::NotPartition(format!("{} appears twice", g.label(x))));
            }
        }
    }
    if let Some(x) = seen.iter().position(|s| !s) {
        return Err(ConstructionError::NotPartition(format!("{} is missing", g.label(x))));
    }
    Ok(())
}

fn listings(subgroup: &Subgroup, side: Side) -> Vec<Vec<usize>> {
    subgroup.cosets(side).into_iter().map(|c| c.listing).collect()
}

fn finish(table: Result<CayleySudokuTable, TableError>, what: &str) -> Result<CayleySudokuTable, ConstructionError> {
    table
        .and_then(CayleySudokuTable::into_verified)
        .map_err(|e| ConstructionError::Internal(format!("{what} produced an invalid table: {e}")))
}

/// Columns are the right cosets of `S`; row blocks are `parts`, which must
/// be left transversals of `S`.
pub fn construct1_right(subgroup: &Subgroup, parts: &[Vec<usize>]) -> Result<CayleySudokuTable, ConstructionError> {
    check_partition(subgroup, Side::Left, parts)?;
    finish(
        CayleySudokuTable::from_blocks(subgroup.group(), parts, &listings(subgroup, Side::Right)),
        "construction 1R",
    )
}

/// Rows are the left cosets of `S`; column blocks are `parts`, which must be
/// right transversals of `S`.
pub fn construct1_left(subgroup: &Subgroup, parts: &[Vec<usize>]) -> Result<CayleySudokuTable, ConstructionError> {
    check_partition(subgroup, Side::Right, parts)?;
    finish(
        CayleySudokuTable::from_blocks(subgroup.group(), &listings(subgroup, Side::Left), parts),
        "construction 1L",
    )
}

fn check_universal_parts(subgroup: &Subgroup, side: Side, parts: &[Vec<usize>]) -> Result<(), ConstructionError> {
    check_cover(subgroup, parts)?;
    for (i, part) in parts.iter().enumerate() {
        check_universal(subgroup, side, part).map_err(|w| w.into_error(i))?;
    }
    Ok(())
}

/// Columns are the left cosets of `S`; row blocks are `parts`, each a left
/// transversal of every conjugate of `S`.
pub fn construct2_left(subgroup: &Subgroup, parts: &[Vec<usize>]) -> Result<CayleySudokuTable, ConstructionError> {
    check_universal_parts(subgroup, Side::Left, parts)?;
    finish(
        CayleySudokuTable::from_blocks(subgroup.group(), parts, &listings(subgroup, Side::Left)),
        "construction 2L",
    )
}

/// Rows are the right cosets of `S`; column blocks are `parts`, each a right
/// transversal of every conjugate of `S`.
pub fn construct2_right(subgroup: &Subgroup, parts: &[Vec<usize>]) -> Result<CayleySudokuTable, ConstructionError> {
    check_universal_parts(subgroup, Side::Right, parts)?;
    finish(
        CayleySudokuTable::from_blocks(subgroup.group(), &listings(subgroup, Side::Right), parts),
        "construction 2R",
    )
}

/// Extends a Cayley-Sudoku table of a subgroup `A` to the whole group.
///
/// `inner` is a verified table of `A` as a group in its own right (for
/// example built over `A.to_group()`); its elements are matched to the
/// parent by label. With inner column blocks `C_1..C_k`, inner row blocks
/// `R_1..R_n`, left representatives `l_1..l_t` and right representatives
/// `r_1..r_t`, the columns are `C_1r_1, …, C_kr_1, C_1r_2, …, C_kr_t` (one
/// block each) and row block `b` is `l_1R_b, l_2R_b, …, l_tR_b`.
pub fn construct3(
    a: &Subgroup,
    inner: &CayleySudokuTable,
    left_reps: &[usize],
    right_reps: &[usize],
) -> Result<CayleySudokuTable, ConstructionError> {
    let g = a.group();
    let local = inner.group();
    if local.order() != a.order() {
        return Err(ConstructionError::InnerTable(format!(
            "inner table has order {}, subgroup has order {}",
            local.order(),
            a.order()
        )));
    }
    let embed: Vec<usize> = local
        .elements()
        .map(|x| {
            g.index_of_label(local.label(x))
                .filter(|&y| a.contains(y))
                .ok_or_else(|| ConstructionError::InnerTable(format!("{} is not in the subgroup", local.label(x))))
        })
        .collect::<Result<_, _>>()?;
    for x in local.elements() {
        for y in local.elements() {
            if embed[local.op(x, y)] != g.op(embed[x], embed[y]) {
                return Err(ConstructionError::InnerTable(format!(
                    "{}·{} disagrees with the parent group",
                    local.label(x),
                    local.label(y)
                )));
            }
        }
    }
    match inner.verify_sudoku() {
        Ok(v) if v.passed() => {}
        Ok(_) => return Err(ConstructionError::InnerTable("not a Cayley-Sudoku table".into())),
        Err(e) => return Err(ConstructionError::InnerTable(e.to_string())),
    }
    a.check_transversal(Side::Left, left_reps)
        .map_err(|defect| ConstructionError::BadRepresentatives {
            side: Side::Left,
            defect,
        })?;
    a.check_transversal(Side::Right, right_reps)
        .map_err(|defect| ConstructionError::BadRepresentatives {
            side: Side::Right,
            defect,
        })?;

    let inner_rows = |b: &std::ops::Range<usize>| b.clone().map(|i| embed[inner.row_labels()[i]]).collect::<Vec<_>>();
    let inner_cols = |b: &std::ops::Range<usize>| b.clone().map(|j| embed[inner.col_labels()[j]]).collect::<Vec<_>>();
    let col_parts: Vec<Vec<usize>> = right_reps
        .iter()
        .flat_map(|&r| {
            inner
                .col_blocks()
                .iter()
                .map(move |c| inner_cols(c).into_iter().map(|x| g.op(x, r)).collect())
        })
        .collect();
    let row_parts: Vec<Vec<usize>> = inner
        .row_blocks()
        .iter()
        .map(|b| {
            let rb = inner_rows(b);
            left_reps
                .iter()
                .flat_map(|&l| rb.iter().map(move |&x| g.op(l, x)))
                .collect()
        })
        .collect();
    finish(
        CayleySudokuTable::from_blocks(g, &row_parts, &col_parts),
        "construction 3",
    )
}

/// The lexicographically least sorted set that is a transversal (of the
/// given side) of every conjugate of `S`, or `None` when none exists.
pub fn find_universal_transversal(
    subgroup: &Subgroup,
    side: Side,
) -> Result<Option<UniversalTransversal>, ConstructionError> {
    find_universal_transversal_capped(subgroup, side, DEFAULT_NODE_CAP)
}

/// As [`find_universal_transversal`], failing after `cap` search nodes.
pub fn find_universal_transversal_capped(
    subgroup: &Subgroup,
    side: Side,
    cap: u64,
) -> Result<Option<UniversalTransversal>, ConstructionError> {
    let conjugates = subgroup.distinct_conjugates();
    let coset_of: Vec<Vec<usize>> = conjugates.iter().map(|c| c.coset_index_map(side)).collect();
    let m = subgroup.index();
    let n = subgroup.group().order();
    let mut coset_max = vec![vec![0usize; m]; conjugates.len()];
    for (c, map) in coset_of.iter().enumerate() {
        for x in 0..n {
            coset_max[c][map[x]] = x;
        }
    }
    let mut search = Search {
        coset_of: &coset_of,
        coset_max: &coset_max,
        hit: vec![vec![false; m]; conjugates.len()],
        chosen: Vec::with_capacity(m),
        m,
        n,
        nodes: 0,
        cap,
    };
    if search.descend(0)? {
        let reps = search.chosen;
        let found = UniversalTransversal::certify(subgroup, side, reps)
            .map_err(|e| ConstructionError::Internal(format!("search returned an uncertified set: {e}")))?;
        Ok(Some(found))
    } else {
        Ok(None)
    }
}

struct Search<'a> {
    coset_of: &'a [Vec<usize>],
    coset_max: &'a [Vec<usize>],
    hit: Vec<Vec<bool>>,
    chosen: Vec<usize>,
    m: usize,
    n: usize,
    nodes: u64,
    cap: u64,
}

impl Search<'_> {
    /// Extends `chosen` with elements `>= start` in ascending order.
    fn descend(&mut self, start: usize) -> Result<bool, ResourceError> {
        if self.chosen.len() == self.m {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(ResourceError::new("universal transversal search nodes", self.cap));
        }
        // an uncovered coset whose largest element is below x can never be
        // covered once x is chosen
        let mut deadline = self.n - 1;
        for (c, maxes) in self.coset_max.iter().enumerate() {
            for (k, &mx) in maxes.iter().enumerate() {
                if !self.hit[c][k] {
                    deadline = deadline.min(mx);
                }
            }
        }
        for x in start..=deadline {
            if (0..self.coset_of.len()).any(|c| self.hit[c][self.coset_of[c][x]]) {
                continue;
            }
            for c in 0..self.coset_of.len() {
                self.hit[c][self.coset_of[c][x]] = true;
            }
            self.chosen.push(x);
            if self.descend(x + 1)? {
                return Ok(true);
            }
            self.chosen.pop();
            for c in 0..self.coset_of.len() {
                self.hit[c][self.coset_of[c][x]] = false;
            }
        }
        Ok(false)
    }
}

/// The translates `s·R` (right) or `R·s` (left) for `s` in `S`, each sorted,
/// certified universal, and checked to partition the group.
pub fn translate_transversal_partition(r: &UniversalTransversal) -> Result<TransversalPartition, ConstructionError> {
    let s = r.subgroup();
    let g = s.group();
    let parts: Vec<Vec<usize>> = s
        .elements()
        .iter()
        .map(|&x| {
            let mut part: Vec<usize> = r
                .reps()
                .iter()
                .map(|&y| match r.side() {
                    Side::Right => g.op(x, y),
                    Side::Left => g.op(y, x),
                })
                .collect();
            part.sort_unstable();
            part
        })
        .collect();
    check_universal_parts(s, r.side(), &parts)
        .map_err(|e| ConstructionError::Internal(format!("translates of a universal transversal: {e}")))?;
    Ok(TransversalPartition {
        subgroup: s.clone(),
        side: r.side(),
        parts,
    })
}

/// Whether a partition's parts are all universal.
pub fn is_universal_partition(partition: &TransversalPartition) -> bool {
    check_universal_parts(partition.subgroup(), partition.side(), partition.parts()).is_ok()
}

/// Shared group handle of a table; re-exported for callers building inner
/// tables for [`construct3`].
pub fn subgroup_as_group(a: &Subgroup) -> Arc<crate::group::FiniteGroup> {
    Arc::new(a.to_group())
}
