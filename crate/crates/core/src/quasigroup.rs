//! Quasigroups, their translations and multiplication groups, and the `Q_n`
//! family.
//!
//! Symbols are `1..=n` throughout this module; the conversion to the
//! 0-based points of [`Permutation`] happens only in the translation
//! functions.

use std::sync::Arc;

use thiserror::Error;

use crate::constructions::{ConstructionError, UniversalTransversal};
use crate::group::{stabilizer, FiniteGroup, GroupError, Side, Subgroup, MAX_ORDER};
use crate::perm::{generate_closure, PermError, Permutation};
use crate::ResourceError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuasigroupError {
    #[error("empty table")]
    Empty,
    #[error("row {row} has {found} entries, expected {expected}")]
    Ragged { row: usize, found: usize, expected: usize },
    #[error("symbol {symbol} at row {row}, column {col} is outside 1..={order}")]
    SymbolOutOfRange {
        row: usize,
        col: usize,
        symbol: usize,
        order: usize,
    },
    #[error("symbol {symbol} repeats in row {row} (columns {first} and {second})")]
    RepeatInRow {
        row: usize,
        symbol: usize,
        first: usize,
        second: usize,
    },
    #[error("symbol {symbol} repeats in column {col} (rows {first} and {second})")]
    RepeatInColumn {
        col: usize,
        symbol: usize,
        first: usize,
        second: usize,
    },
    #[error("line {line}: {text:?} is not a symbol")]
    Parse { line: usize, text: String },
    #[error("symbol {0} is not in the quasigroup")]
    UnknownSymbol(usize),
    #[error("Q_n needs an even order of at least 4, got {0}")]
    BadQnOrder(usize),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Resource(#[from] ResourceError),
}

impl From<PermError> for QuasigroupError {
    fn from(e: PermError) -> Self {
        match e {
            PermError::Resource(r) => QuasigroupError::Resource(r),
            other => QuasigroupError::Group(other.into()),
        }
    }
}

/// A bordered Latin square on `1..=n`, border in natural order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quasigroup {
    order: usize,
    /// `table[a-1][b-1] = a·b`.
    table: Vec<Vec<usize>>,
}

impl Quasigroup {
    /// Validates `grid` (symbols `1..=n`) as a Latin square. Coordinates in
    /// errors are 1-based.
    pub fn from_latin_square(grid: Vec<Vec<usize>>) -> Result<Quasigroup, QuasigroupError> {
        let n = grid.len();
        if n == 0 {
            return Err(QuasigroupError::Empty);
        }
        for (i, row) in grid.iter().enumerate() {
            if row.len() != n {
                return Err(QuasigroupError::Ragged {
                    row: i + 1,
                    found: row.len(),
                    expected: n,
                });
            }
            for (j, &s) in row.iter().enumerate() {
                if s == 0 || s > n {
                    return Err(QuasigroupError::SymbolOutOfRange {
                        row: i + 1,
                        col: j + 1,
                        symbol: s,
                        order: n,
                    });
                }
            }
        }
        for (i, row) in grid.iter().enumerate() {
            let mut seen = vec![0usize; n + 1];
            for (j, &s) in row.iter().enumerate() {
                if seen[s] != 0 {
                    return Err(QuasigroupError::RepeatInRow {
                        row: i + 1,
                        symbol: s,
                        first: seen[s],
                        second: j + 1,
                    });
                }
                seen[s] = j + 1;
            }
        }
        for j in 0..n {
            let mut seen = vec![0usize; n + 1];
            for (i, row) in grid.iter().enumerate() {
                let s = row[j];
                if seen[s] != 0 {
                    return Err(QuasigroupError::RepeatInColumn {
                        col: j + 1,
                        symbol: s,
                        first: seen[s],
                        second: i + 1,
                    });
                }
                seen[s] = i + 1;
            }
        }
        Ok(Quasigroup { order: n, table: grid })
    }

    /// `n` lines of `n` whitespace-separated symbols; blank lines ignored.
    pub fn parse(text: &str) -> Result<Quasigroup, QuasigroupError> {
        let mut grid = Vec::new();
        for (k, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>().map_err(|_| QuasigroupError::Parse {
                        line: k + 1,
                        text: t.to_string(),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            grid.push(row);
        }
        Self::from_latin_square(grid)
    }

    /// The operation table of a group, with element `i` as symbol `i+1`.
    pub fn from_group(g: &FiniteGroup) -> Quasigroup {
        let table = g
            .elements()
            .map(|a| g.elements().map(|b| g.op(a, b) + 1).collect())
            .collect();
        Quasigroup {
            order: g.order(),
            table,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// `a·b` for symbols `a`, `b`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a - 1][b - 1]
    }

    fn check_symbol(&self, s: usize) -> Result<(), QuasigroupError> {
        if s == 0 || s > self.order {
            Err(QuasigroupError::UnknownSymbol(s))
        } else {
            Ok(())
        }
    }

    /// `λ_ℓ: q ↦ ℓ·q`.
    pub fn left_translation(&self, l: usize) -> Result<Permutation, QuasigroupError> {
        self.check_symbol(l)?;
        let images: Vec<usize> = (1..=self.order).map(|q| self.mul(l, q) - 1).collect();
        Ok(Permutation::from_images(&images)?)
    }

    /// `ρ_ℓ: q ↦ q·ℓ`.
    pub fn right_translation(&self, l: usize) -> Result<Permutation, QuasigroupError> {
        self.check_symbol(l)?;
        let images: Vec<usize> = (1..=self.order).map(|q| self.mul(q, l) - 1).collect();
        Ok(Permutation::from_images(&images)?)
    }

    fn translations(&self, side: Side) -> Result<Vec<Permutation>, QuasigroupError> {
        (1..=self.order)
            .map(|l| match side {
                Side::Left => self.left_translation(l),
                Side::Right => self.right_translation(l),
            })
            .collect()
    }

    fn mult_group(&self, side: Side) -> Result<FiniteGroup, QuasigroupError> {
        let elements = generate_closure(&self.translations(side)?, MAX_ORDER)?;
        let g = FiniteGroup::from_permutations(&elements)?;
        if !g.is_transitive() {
            return Err(QuasigroupError::Internal(format!(
                "{side} multiplication group is not transitive"
            )));
        }
        Ok(g)
    }

    /// `LMult(Q) = ⟨λ_ℓ⟩`.
    pub fn lmult(&self) -> Result<FiniteGroup, QuasigroupError> {
        self.mult_group(Side::Left)
    }

    /// `RMult(Q) = ⟨ρ_ℓ⟩`.
    pub fn rmult(&self) -> Result<FiniteGroup, QuasigroupError> {
        self.mult_group(Side::Right)
    }
}

/// A multiplication group, the stabilizer of one symbol, and the
/// translations as a certified universal transversal of that stabilizer.
#[derive(Debug, Clone)]
pub struct TranslationTransversal {
    pub group: Arc<FiniteGroup>,
    pub stabilizer: Subgroup,
    pub transversal: UniversalTransversal,
}

/// With `which = Left`, the left translations in `LMult(Q)` as left
/// representatives of `G_c`; with `Right`, the right translations in
/// `RMult(Q)` as right representatives. Certified against every conjugate.
pub fn quasieg_transversal(q: &Quasigroup, which: Side, c: usize) -> Result<TranslationTransversal, QuasigroupError> {
    q.check_symbol(c)?;
    let group = Arc::new(q.mult_group(which)?);
    let stab = stabilizer(&group, c - 1)?;
    let reps = q
        .translations(which)?
        .iter()
        .map(|p| group.index_of_perm(p).expect("translations generate the group"))
        .collect();
    let transversal = UniversalTransversal::certify(&stab, which, reps).map_err(|e| match e {
        ConstructionError::Resource(r) => QuasigroupError::Resource(r),
        e => QuasigroupError::Internal(format!("translations are not universal: {e}")),
    })?;
    Ok(TranslationTransversal {
        group,
        stabilizer: stab,
        transversal,
    })
}

/// The quasigroup `Q_n` for even `n ≥ 4`, with `h = n/2`:
///
/// * upper left: row `i` is `1..h` rotated left `i` places;
/// * upper right and lower left: the same with `h+1..n`;
/// * lower right: row `i` is `1, 3, 4, …, h, 2` rotated right `i` places.
pub fn make_qn(n: usize) -> Result<Quasigroup, QuasigroupError> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(QuasigroupError::BadQnOrder(n));
    }
    let h = n / 2;
    let lower_right_first: Vec<usize> = std::iter::once(1).chain(3..=h).chain(std::iter::once(2)).collect();
    let mut grid = vec![vec![0; n]; n];
    for i in 0..h {
        for j in 0..h {
            grid[i][j] = (i + j) % h + 1;
            grid[i][j + h] = h + (i + j) % h + 1;
            grid[i + h][j] = h + (i + j) % h + 1;
            grid[i + h][j + h] = lower_right_first[(j + h - i) % h];
        }
    }
    Quasigroup::from_latin_square(grid)
}

/// Whether `n` satisfies the hypotheses under which every left translation
/// of `Q_n` is even: `n > 2` and `n ≡ 2 (mod 4)`.
pub fn qn_has_even_translations(n: usize) -> bool {
    n > 2 && n % 4 == 2
}

/// The closed form of `λ_i` in `Q_n`, checked against the table.
///
/// For `i ≤ h` it is `((1..h)(h+1..n))^(i-1)`. For `i > h` it is
/// `(1,i)(2,i+1,3,i+2,…,h,i+h-1)` with the second entry of each pair
/// reduced into `h+1..n`.
pub fn qn_lambda_formula(n: usize, i: usize) -> Result<Permutation, QuasigroupError> {
    let q = make_qn(n)?;
    q.check_symbol(i)?;
    let h = n / 2;
    let formula = if i <= h {
        let base = Permutation::from_cycles(n, &[(0..h).collect(), (h..n).collect()])?;
        let mut p = Permutation::identity(n);
        for _ in 1..i {
            p = p.compose(&base)?;
        }
        p
    } else {
        let upper = |v: usize| h + 1 + (v - (h + 1)) % h;
        let mut long = Vec::with_capacity(2 * (h - 1));
        for k in 2..=h {
            long.push(k);
            long.push(upper(i + k - 1));
        }
        let cycles: Vec<Vec<usize>> = [vec![1, i], long]
            .into_iter()
            .map(|c| c.into_iter().map(|v| v - 1).collect())
            .collect();
        Permutation::from_cycles(n, &cycles)?
    };
    let table = q.left_translation(i)?;
    if formula != table {
        return Err(QuasigroupError::Internal(format!(
            "closed form {} differs from the table's {} for n={n}, i={i}",
            formula.render_cycles(),
            table.render_cycles()
        )));
    }
    Ok(formula)
}

/// The 6×6 quasigroup of the worked example, as printed.
pub fn q6_fixture() -> Quasigroup {
    Quasigroup::from_latin_square(vec![
        vec![1, 2, 3, 4, 5, 6],
        vec![2, 3, 1, 5, 6, 4],
        vec![3, 1, 2, 6, 4, 5],
        vec![4, 5, 6, 1, 3, 2],
        vec![5, 6, 4, 2, 1, 3],
        vec![6, 4, 5, 3, 2, 1],
    ])
    .expect("fixture is a Latin square")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(text: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(text, n).unwrap()
    }

    #[test]
    fn q6_translations() {
        let q = q6_fixture();
        assert_eq!(q.left_translation(1).unwrap(), Permutation::identity(6));
        assert_eq!(q.left_translation(2).unwrap(), cyc("(123)(456)", 6));
        assert_eq!(q.left_translation(4).unwrap(), cyc("(14)(2536)", 6));
        assert_eq!(q.right_translation(4).unwrap(), cyc("(14)(25)(36)", 6));
        assert_eq!(q.right_translation(2).unwrap(), cyc("(123)(456)", 6));
        assert!(q.left_translation(7).is_err());
    }

    #[test]
    fn rejects_repeats_with_coordinates() {
        let err = Quasigroup::from_latin_square(vec![vec![1, 1], vec![2, 1]]).unwrap_err();
        assert_eq!(
            err,
            QuasigroupError::RepeatInRow {
                row: 1,
                symbol: 1,
                first: 1,
                second: 2
            }
        );
        let err = Quasigroup::from_latin_square(vec![vec![1, 2], vec![1, 2]]).unwrap_err();
        assert_eq!(
            err,
            QuasigroupError::RepeatInColumn {
                col: 1,
                symbol: 1,
                first: 1,
                second: 2
            }
        );
        assert!(matches!(
            Quasigroup::parse("1 2\n2 x\n"),
            Err(QuasigroupError::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn make_qn_six_is_the_fixture() {
        assert_eq!(make_qn(6).unwrap(), q6_fixture());
        assert!(make_qn(4).is_ok());
        assert_eq!(make_qn(7), Err(QuasigroupError::BadQnOrder(7)));
        assert_eq!(make_qn(2), Err(QuasigroupError::BadQnOrder(2)));
    }

    #[test]
    fn lambda_formula_matches_for_small_orders() {
        for n in [4, 6, 8, 10] {
            for i in 1..=n {
                qn_lambda_formula(n, i).unwrap();
            }
        }
    }

    #[test]
    fn group_table_quasigroup_has_regular_lmult() {
        let z5 = FiniteGroup::make_cyclic(5).unwrap();
        let q = Quasigroup::from_group(&z5);
        let l = q.lmult().unwrap();
        assert_eq!(l.order(), 5);
        assert!(l.is_regular());
        let t = quasieg_transversal(&q, Side::Left, 3).unwrap();
        assert!(t.stabilizer.is_trivial());
        assert_eq!(t.transversal.reps().len(), 5);
    }

    #[test]
    fn multiplication_group_orders() {
        let q = q6_fixture();
        assert_eq!(q.lmult().unwrap().order(), 36);
        assert_eq!(q.rmult().unwrap().order(), 18);
    }
}
