//! Fixtures shared by the integration tests and the acceptance harness.
#![allow(dead_code)]

use std::sync::Arc;

use cayley_sudoku::cli::{make_dihedral, parse_group_spec};
use cayley_sudoku::group::all_subgroups;
use cayley_sudoku::{CayleySudokuTable, FiniteGroup, Side, Subgroup};
use rand::seq::SliceRandom;
use rand::Rng;

/// `Z9` over `<3>`, construction 1R, with its border row and column.
pub const Z9_1R: [&str; 10] = [
    "  0 3 6 1 4 7 2 5 8",
    "0 0 3 6 1 4 7 2 5 8",
    "1 1 4 7 2 5 8 3 6 0",
    "2 2 5 8 3 6 0 4 7 1",
    "3 3 6 0 4 7 1 5 8 2",
    "4 4 7 1 5 8 2 6 0 3",
    "5 5 8 2 6 0 3 7 1 4",
    "6 6 0 3 7 1 4 8 2 5",
    "7 7 1 4 8 2 5 0 3 6",
    "8 8 2 5 0 3 6 1 4 7",
];

/// `S3` over `<(12)>`, construction 1L.
pub const S3_1L: [&str; 7] = [
    "  (1) (13) (132) (12) (123) (23)",
    "(1) (1) (13) (132) (12) (123) (23)",
    "(12) (12) (123) (23) (1) (13) (132)",
    "(13) (13) (1) (12) (132) (23) (123)",
    "(132) (132) (23) (123) (13) (1) (12)",
    "(23) (23) (132) (13) (123) (12) (1)",
    "(123) (123) (12) (1) (23) (132) (13)",
];

/// `S3` over `<(12)>`, construction 2L.
pub const S3_2L: [&str; 7] = [
    "  (1) (12) (13) (132) (23) (123)",
    "(1) (1) (12) (13) (132) (23) (123)",
    "(123) (123) (23) (12) (1) (13) (132)",
    "(132) (132) (13) (23) (123) (12) (1)",
    "(12) (12) (1) (123) (23) (132) (13)",
    "(13) (13) (132) (1) (12) (123) (23)",
    "(23) (23) (123) (132) (13) (1) (12)",
];

/// The quasigroup `Q_6`, symbols 1-based.
pub const Q6: [[usize; 6]; 6] = [
    [1, 2, 3, 4, 5, 6],
    [2, 3, 1, 5, 6, 4],
    [3, 1, 2, 6, 4, 5],
    [4, 5, 6, 1, 3, 2],
    [5, 6, 4, 2, 1, 3],
    [6, 4, 5, 3, 2, 1],
];

/// Splits a golden into tokens; the first row's blank corner is dropped.
pub fn golden(rows: &[&str]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| r.split_whitespace().map(str::to_string).collect())
        .collect()
}

/// The table as a bordered grid of labels, header row first.
pub fn bordered(t: &CayleySudokuTable) -> Vec<Vec<String>> {
    let g = t.group();
    let mut out = vec![t
        .col_labels()
        .iter()
        .map(|&c| g.label(c).to_string())
        .collect::<Vec<_>>()];
    for (i, row) in t.label_grid().into_iter().enumerate() {
        let mut line = vec![g.label(t.row_labels()[i]).to_string()];
        line.extend(row.into_iter().map(str::to_string));
        out.push(line);
    }
    out
}

pub fn arc(g: FiniteGroup) -> Arc<FiniteGroup> {
    Arc::new(g)
}

pub fn spec(s: &str) -> Arc<FiniteGroup> {
    parse_group_spec(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn el(g: &FiniteGroup, x: &str) -> usize {
    g.parse_element(x).unwrap_or_else(|e| panic!("{x}: {e}"))
}

pub fn els(g: &FiniteGroup, xs: &[&str]) -> Vec<usize> {
    xs.iter().map(|x| el(g, x)).collect()
}

/// Named fixture groups of order at most `max_order`: cyclic, dihedral as
/// permutations, `S_3`, subgroups of `S_4`, and a few products.
pub fn fixture_groups(max_order: usize) -> Vec<(String, Arc<FiniteGroup>)> {
    let mut out: Vec<(String, Arc<FiniteGroup>)> = Vec::new();
    for n in 1..=max_order.min(24) {
        out.push((format!("Z{n}"), spec(&format!("Z{n}"))));
    }
    for n in 3..=12 {
        if 2 * n <= max_order {
            out.push((format!("D{n}"), arc(make_dihedral(n).unwrap())));
        }
    }
    let perms = [
        ("S3", "S3"),
        ("V4", "perm:4:(12)(34);(13)(24)"),
        ("D4<S4", "perm:4:(1234);(13)"),
        ("A4", "A4"),
        ("S4", "S4"),
        ("Z2xZ4", "perm:6:(12);(3456)"),
        ("Z3xZ3", "perm:6:(123);(456)"),
        ("Z2^3", "perm:6:(12);(34);(56)"),
        ("Q8", "perm:8:(1234)(5678);(1537)(2846)"),
        ("Z2^4", "perm:8:(12);(34);(56);(78)"),
        ("Z4xZ4", "perm:8:(1234);(5678)"),
        ("Z2xZ6", "perm:7:(12);(34);(567)"),
        ("A4xZ2", "perm:6:(123);(12)(34);(56)"),
        ("D4xZ3", "perm:7:(1234);(13);(567)"),
    ];
    for (name, s) in perms {
        let g = spec(s);
        if g.order() <= max_order {
            out.push((name.to_string(), g));
        }
    }
    out
}

/// Every subgroup of every fixture group of order at most `max_order`.
pub fn fixture_subgroups(max_order: usize) -> Vec<(String, Subgroup)> {
    fixture_groups(max_order)
        .into_iter()
        .flat_map(|(name, g)| {
            all_subgroups(&g)
                .into_iter()
                .map(move |s| (format!("{name} > {:?}", s.labels()), s))
        })
        .collect()
}

/// A uniformly random partition into transversals of `side`: each coset is
/// shuffled and part `i` takes the `i`-th element of every coset.
pub fn random_partition<R: Rng>(s: &Subgroup, side: Side, rng: &mut R) -> Vec<Vec<usize>> {
    let mut cosets: Vec<Vec<usize>> = s.cosets(side).into_iter().map(|c| c.elements).collect();
    for c in &mut cosets {
        c.shuffle(rng);
    }
    (0..s.order()).map(|i| cosets.iter().map(|c| c[i]).collect()).collect()
}

/// A single-element swap between two parts.
#[derive(Debug, Clone, Copy)]
pub struct Swap {
    pub parts: (usize, usize),
    pub positions: (usize, usize),
}

/// Every swap of one element of part `i` with one element of part `j > i`.
pub fn swaps(parts: &[Vec<usize>]) -> Vec<Swap> {
    let mut out = Vec::new();
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            for a in 0..parts[i].len() {
                for b in 0..parts[j].len() {
                    out.push(Swap {
                        parts: (i, j),
                        positions: (a, b),
                    });
                }
            }
        }
    }
    out
}

pub fn apply(parts: &[Vec<usize>], s: Swap) -> Vec<Vec<usize>> {
    let mut out = parts.to_vec();
    let (i, j) = s.parts;
    let (a, b) = s.positions;
    let x = out[i][a];
    out[i][a] = out[j][b];
    out[j][b] = x;
    out
}

/// Independent block check: every block, as a multiset, equals the group.
pub fn blocks_are_sudoku(t: &CayleySudokuTable) -> bool {
    let n = t.group().order();
    let body = t.body_rows();
    let shape = (t.row_blocks()[0].len(), t.col_blocks()[0].len());
    t.row_blocks().iter().all(|rows| {
        t.col_blocks().iter().all(|cols| {
            let mut seen: Vec<usize> = rows
                .clone()
                .flat_map(|i| cols.clone().map(|j| body[i][j]).collect::<Vec<_>>())
                .collect();
            seen.sort_unstable();
            (rows.len(), cols.len()) == shape && seen == (0..n).collect::<Vec<_>>()
        })
    })
}
