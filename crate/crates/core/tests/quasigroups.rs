//! Multiplication groups of quasigroups.

mod common;

use std::sync::Arc;

use cayley_sudoku::group::search_regular_subgroups;
use cayley_sudoku::quasigroup::{make_qn, q6_fixture, qn_has_even_translations};
use cayley_sudoku::{Quasigroup, Side};
use common::*;

#[test]
fn lmult_of_q6_has_no_regular_subgroup() {
    let lmult = Arc::new(q6_fixture().lmult().unwrap());
    assert_eq!(lmult.order(), 36);
    assert!(search_regular_subgroups(&lmult).unwrap().is_empty());
    let rmult = Arc::new(q6_fixture().rmult().unwrap());
    assert!(!search_regular_subgroups(&rmult).unwrap().is_empty());
}

#[test]
fn hypotheses_imply_even_translations() {
    for n in (4..=14).step_by(2) {
        let q = make_qn(n).unwrap();
        let even = (1..=n).all(|i| q.left_translation(i).unwrap().parity().is_even());
        assert!(!qn_has_even_translations(n) || even, "n = {n}");
    }
}

#[test]
fn group_tables_have_regular_multiplication_groups() {
    for (name, g) in fixture_groups(12) {
        let q = Quasigroup::from_group(&g);
        for side in [Side::Left, Side::Right] {
            let m = if side == Side::Left { q.lmult() } else { q.rmult() }.unwrap();
            assert!(m.is_transitive(), "{name}");
            assert_eq!(m.order(), g.order(), "{name}");
            assert!(m.is_regular(), "{name}");
        }
    }
}

#[test]
fn malformed_squares_are_rejected() {
    assert!(Quasigroup::parse("1 2\n2 2\n").is_err());
    assert!(Quasigroup::parse("1 2\n2\n").is_err());
    assert!(Quasigroup::parse("1 3\n3 1\n").is_err());
    assert!(Quasigroup::parse("").is_err());
    assert!(make_qn(5).is_err());
    assert!(make_qn(2).is_err());
}
