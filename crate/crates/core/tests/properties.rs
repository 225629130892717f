//! Property tests over the fixture groups and their subgroups.

mod common;

use std::sync::{Arc, OnceLock};

use cayley_sudoku::constructions::{
    check_partition, check_universal, construct1_right, construct2_left, construct3, find_universal_transversal,
    translate_transversal_partition,
};
use cayley_sudoku::field_instances::make_field;
use cayley_sudoku::group::stabilizer;
use cayley_sudoku::quasigroup::quasieg_transversal;
use cayley_sudoku::sudoku_table::parse_rendered;
use cayley_sudoku::{CayleySudokuTable, FiniteGroup, Quasigroup, Side, Subgroup, Transversal, TransversalPartition};
use common::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn subgroups() -> &'static [(String, Subgroup)] {
    static CELL: OnceLock<Vec<(String, Subgroup)>> = OnceLock::new();
    CELL.get_or_init(|| fixture_subgroups(16))
}

fn perm_groups() -> &'static [(String, Arc<FiniteGroup>)] {
    static CELL: OnceLock<Vec<(String, Arc<FiniteGroup>)>> = OnceLock::new();
    CELL.get_or_init(|| {
        fixture_groups(24)
            .into_iter()
            .filter(|(_, g)| g.element_perms().is_some())
            .collect()
    })
}

fn pick(i: usize) -> &'static (String, Subgroup) {
    let all = subgroups();
    &all[i % all.len()]
}

fn side(left: bool) -> Side {
    if left {
        Side::Left
    } else {
        Side::Right
    }
}

/// Rows from `parts`, columns from the right cosets: the layout of
/// construction 1R without its validation.
fn raw_layout(s: &Subgroup, parts: &[Vec<usize>]) -> CayleySudokuTable {
    let cols: Vec<Vec<usize>> = s.cosets(Side::Right).into_iter().map(|c| c.listing).collect();
    CayleySudokuTable::from_blocks(s.group(), parts, &cols).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn cosets_partition_the_group(i in any::<usize>(), left in any::<bool>()) {
        let (_, s) = pick(i);
        let g = s.group();
        let cosets = s.cosets(side(left));
        prop_assert_eq!(cosets.len() * s.order(), g.order());
        let mut all: Vec<usize> = cosets.iter().flat_map(|c| c.elements.clone()).collect();
        all.sort_unstable();
        prop_assert_eq!(all, g.elements().collect::<Vec<_>>());
        let map = s.coset_index_map(side(left));
        for (k, c) in cosets.iter().enumerate() {
            prop_assert_eq!(c.representative, c.elements[0]);
            let mut listed = c.listing.clone();
            listed.sort_unstable();
            prop_assert_eq!(&listed, &c.elements);
            for &x in &c.elements {
                prop_assert_eq!(map[x], k);
                let moved = if left { g.op(g.inverse(c.representative), x) } else { g.op(x, g.inverse(c.representative)) };
                prop_assert!(s.contains(moved));
            }
        }
    }

    #[test]
    fn stabilizers_conjugate(i in any::<usize>(), point in 0usize..8, k in any::<usize>()) {
        let (_, g) = &perm_groups()[i % perm_groups().len()];
        let degree = g.degree().unwrap();
        let p = point % degree;
        let x = k % g.order();
        let q = g.perm(x).unwrap().image(p);
        let sp = stabilizer(g, p).unwrap();
        let sq = stabilizer(g, q).unwrap();
        let mut moved: Vec<usize> = sp.elements().iter().map(|&y| g.op(g.op(g.inverse(x), y), x)).collect();
        moved.sort_unstable();
        prop_assert_eq!(moved.as_slice(), sq.elements());
    }

    #[test]
    fn complements_are_universal_transversals(i in any::<usize>()) {
        let (_, s) = pick(i);
        for c in s.complements() {
            prop_assert!(s.is_complement(&c));
            for side in [Side::Left, Side::Right] {
                prop_assert!(s.check_transversal(side, c.elements()).is_ok());
                prop_assert!(check_universal(s, side, c.elements()).is_ok());
            }
        }
    }

    #[test]
    fn render_round_trip(i in any::<usize>(), seed in any::<u64>()) {
        let (_, s) = pick(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = raw_layout(s, &random_partition(s, Side::Left, &mut rng));
        let g = t.group();
        let parsed = parse_rendered(&t.render_text()).unwrap();
        let names = |v: &[usize]| v.iter().map(|&x| g.label(x).to_string()).collect::<Vec<_>>();
        prop_assert_eq!(parsed.row_labels, names(t.row_labels()));
        prop_assert_eq!(parsed.col_labels, names(t.col_labels()));
        prop_assert_eq!(parsed.row_blocks, t.row_blocks().to_vec());
        prop_assert_eq!(parsed.col_blocks, t.col_blocks().to_vec());
        let body: Vec<Vec<String>> = t.body_rows().iter().map(|r| names(r)).collect();
        prop_assert_eq!(parsed.body, body);
    }

    #[test]
    fn exchange_round_trip(i in any::<usize>(), seed in any::<u64>()) {
        let (_, s) = pick(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = raw_layout(s, &random_partition(s, Side::Left, &mut rng));
        let text = t.to_exchange();
        let back = CayleySudokuTable::from_exchange(&text).unwrap();
        prop_assert_eq!(back.to_exchange(), text);
        prop_assert_eq!(back.body_rows(), back.relabel_onto(t.group()).unwrap().body_rows());
    }

    #[test]
    fn verify_agrees_with_block_oracle(i in any::<usize>(), seed in any::<u64>(), left in any::<bool>()) {
        let (_, s) = pick(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = raw_layout(s, &random_partition(s, side(left), &mut rng));
        prop_assert_eq!(t.verify_sudoku().unwrap().passed(), blocks_are_sudoku(&t));
        prop_assert_eq!(t.verify_sudoku_all().unwrap().is_empty(), blocks_are_sudoku(&t));
    }

    #[test]
    fn construction1_accepts_every_partition(i in any::<usize>(), seed in any::<u64>()) {
        let (_, s) = pick(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let parts = random_partition(s, Side::Left, &mut rng);
        let t = construct1_right(s, &parts).unwrap();
        prop_assert!(blocks_are_sudoku(&t));
    }

    #[test]
    fn found_universals_meet_every_conjugate(i in any::<usize>(), left in any::<bool>()) {
        let (_, s) = pick(i);
        let g = s.group();
        if let Some(u) = find_universal_transversal(s, side(left)).unwrap() {
            for x in g.elements() {
                let conj = Subgroup::from_elements(
                    g,
                    &s.elements().iter().map(|&y| g.op(g.op(g.inverse(x), y), x)).collect::<Vec<_>>(),
                ).unwrap();
                prop_assert!(conj.check_transversal(side(left), u.reps()).is_ok());
            }
            let parts = translate_transversal_partition(&u).unwrap();
            prop_assert!(check_partition(s, side(left).opposite(), parts.parts()).is_ok()
                || check_partition(s, side(left), parts.parts()).is_ok());
        }
    }

    #[test]
    fn construction3_with_the_whole_group(i in any::<usize>()) {
        let (_, s) = pick(i);
        let g = s.group();
        let whole = Subgroup::whole(g);
        let local = arc(whole.to_group());
        let b = Subgroup::from_elements(
            &local,
            &s.elements().iter().map(|&x| local.index_of_label(g.label(x)).unwrap()).collect::<Vec<_>>(),
        ).unwrap();
        let inner = construct1_right(&b, TransversalPartition::default_partition(&b, Side::Left).parts()).unwrap();
        let e = [g.identity()];
        let t = construct3(&whole, &inner, &e, &e).unwrap();
        prop_assert!(blocks_are_sudoku(&t));
        prop_assert_eq!(t.block_shape(), inner.block_shape());
    }

    #[test]
    fn field_multiplication_matches_polynomials(p in prop::sample::select(vec![2u32, 3, 5, 7, 11, 13]), x in any::<usize>(), y in any::<usize>()) {
        let k = make_field(p).unwrap();
        let n = k.order();
        let (x, y) = (x % n, y % n);
        let p = p as usize;
        let (c0, c1) = k.modulus();
        let (a1, b1) = k.coordinates(x);
        let (a2, b2) = k.coordinates(y);
        // (a1 + b1 t)(a2 + b2 t) with t² = -c1 t - c0, reduced as signed integers
        let (a1, b1, a2, b2, c0, c1, p) = (a1 as i64, b1 as i64, a2 as i64, b2 as i64, c0 as i64, c1 as i64, p as i64);
        let t2 = b1 * b2;
        let a = (a1 * a2 - t2 * c0).rem_euclid(p);
        let b = (a1 * b2 + a2 * b1 - t2 * c1).rem_euclid(p);
        prop_assert_eq!(k.mul(x, y), k.element(a as usize, b as usize));
        prop_assert_eq!(k.add(x, y), k.element(((a1 + a2) % p) as usize, ((b1 + b2) % p) as usize));
    }

    #[test]
    fn isotopes_of_groups_give_universal_translations(i in any::<usize>(), seed in any::<u64>(), left in any::<bool>()) {
        let (_, g) = &perm_groups()[i % perm_groups().len()];
        prop_assume!(g.order() <= 6);
        let n = g.order();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut perms: Vec<Vec<usize>> = (0..3).map(|_| (0..n).collect()).collect();
        for p in &mut perms {
            p.shuffle(&mut rng);
        }
        let grid: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| perms[2][g.op(perms[0][a], perms[1][b])] + 1).collect())
            .collect();
        let q = Quasigroup::from_latin_square(grid).unwrap();
        let tt = quasieg_transversal(&q, side(left), 1).unwrap();
        let mult = if left { q.lmult() } else { q.rmult() }.unwrap();
        prop_assert!(mult.is_transitive());
        prop_assert_eq!(tt.group.order(), mult.order());
        prop_assert_eq!(tt.stabilizer.index(), n);
        prop_assert!(check_universal(&tt.stabilizer, side(left), tt.transversal.reps()).is_ok());
    }
}

#[test]
fn construction2_iff_on_s3_splits() {
    let g = spec("S3");
    let all: Vec<usize> = g.elements().collect();
    for gens in [["(12)"], ["(13)"], ["(23)"], ["(123)"]] {
        let s = Subgroup::generated(&g, &els(&g, &gens));
        let k = s.index();
        let parts_count = s.order();
        let mut splits = Vec::new();
        // parts of equal size, ordered by first element
        let total = parts_count.pow(all.len() as u32);
        for code in 0..total {
            let mut parts = vec![Vec::new(); parts_count];
            let mut c = code;
            for &x in &all {
                parts[c % parts_count].push(x);
                c /= parts_count;
            }
            if parts.iter().all(|p| p.len() == k) && parts.windows(2).all(|w| w[0][0] < w[1][0]) {
                splits.push(parts);
            }
        }
        // 6!/(3!3!2!) and 6!/(2!2!2!3!)
        assert_eq!(splits.len(), if parts_count == 2 { 10 } else { 15 });
        for parts in splits {
            let universal = parts.iter().all(|p| check_universal(&s, Side::Left, p).is_ok());
            let cols: Vec<Vec<usize>> = s.cosets(Side::Left).into_iter().map(|c| c.listing).collect();
            let raw = CayleySudokuTable::from_blocks(&g, &parts, &cols).unwrap();
            assert_eq!(construct2_left(&s, &parts).is_ok(), universal, "{parts:?}");
            assert_eq!(blocks_are_sudoku(&raw), universal, "{parts:?}");
        }
    }
}

#[test]
fn canonical_transversals_are_transversals() {
    for (_, s) in subgroups() {
        for side in [Side::Left, Side::Right] {
            let t = Transversal::canonical(s, side);
            assert!(s.check_transversal(side, t.reps()).is_ok());
        }
    }
}

#[test]
fn quaternion_fixture() {
    let (_, q8) = fixture_groups(8).into_iter().find(|(n, _)| n == "Q8").unwrap();
    assert_eq!(q8.order(), 8);
    let involutions = q8.elements().filter(|&x| q8.element_order(x) == 2).count();
    assert_eq!(involutions, 1);
    assert!(!q8.is_abelian());
}
