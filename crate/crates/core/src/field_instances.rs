//! Addition tables of `GF(p²)` arranged by the prime subfield.
//!
//! With `F = GF(p)` inside `K = GF(p²)`, columns are the cosets `F + c_i`
//! (`c_i = i·t`) and row blocks are their images `(F + c_i)·x` for a fixed
//! `x ∉ F`. Each such table `L_x` is a Cayley-Sudoku table of `(K, +)`, and
//! tables for distinct `x` are orthogonal Latin squares.

use std::sync::Arc;

use thiserror::Error;

use crate::group::{FiniteGroup, GroupError, Subgroup};
use crate::sudoku_table::{are_orthogonal, CayleySudokuTable, LatinSquare, TableError};

/// Largest supported characteristic.
pub const MAX_PRIME: u32 = 13;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("characteristic {0} exceeds the supported maximum {MAX_PRIME}")]
    TooLarge(u32),
    #[error("{0} lies in the prime subfield")]
    InSubfield(String),
    #[error("element #{0} is not in the field")]
    UnknownElement(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Table(#[from] TableError),
}

/// `GF(p)[t] / (t² + c₁t + c₀)`. Element `a + bt` has index `b·p + a`.
#[derive(Debug, Clone)]
pub struct QuadraticField {
    p: usize,
    c0: usize,
    c1: usize,
    additive: Arc<FiniteGroup>,
    subfield: Subgroup,
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl QuadraticField {
    /// Uses the least `(c₁, c₀)` in lexicographic order for which
    /// `t² + c₁t + c₀` has no root mod `p`.
    pub fn new(p: u32) -> Result<QuadraticField, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if p > MAX_PRIME {
            return Err(FieldError::TooLarge(p));
        }
        let p = p as usize;
        let (c1, c0) = (0..p)
            .flat_map(|c1| (0..p).map(move |c0| (c1, c0)))
            .find(|&(c1, c0)| (0..p).all(|r| (r * r + c1 * r + c0) % p != 0))
            .expect("an irreducible quadratic exists over every prime field");
        let n = p * p;
        let labels: Vec<String> = (0..n).map(|x| format_element(p, x)).collect();
        let rows: Vec<Vec<String>> = (0..n)
            .map(|x| (0..n).map(|y| labels[add_indices(p, x, y)].clone()).collect())
            .collect();
        let additive = Arc::new(FiniteGroup::from_table(&labels, &rows)?.with_spec(format!("gfp2:{p}")));
        let subfield = Subgroup::from_elements(&additive, &(0..p).collect::<Vec<_>>())?;
        Ok(QuadraticField {
            p,
            c0,
            c1,
            additive,
            subfield,
        })
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn order(&self) -> usize {
        self.p * self.p
    }

    /// `(c₀, c₁)` of the modulus `t² + c₁t + c₀`.
    pub fn modulus(&self) -> (usize, usize) {
        (self.c0, self.c1)
    }

    pub fn element(&self, a: usize, b: usize) -> usize {
        (b % self.p) * self.p + a % self.p
    }

    /// `(a, b)` for the element `a + bt`.
    pub fn coordinates(&self, x: usize) -> (usize, usize) {
        (x % self.p, x / self.p)
    }

    pub fn label(&self, x: usize) -> String {
        format_element(self.p, x)
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        add_indices(self.p, x, y)
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        let p = self.p;
        let (a1, b1) = self.coordinates(x);
        let (a2, b2) = self.coordinates(y);
        // t² = -c₁t - c₀
        let bb = b1 * b2 % p;
        let a = (a1 * a2 + (p - bb) * self.c0) % p;
        let b = (a1 * b2 + a2 * b1 + (p - bb) * self.c1) % p;
        self.element(a, b)
    }

    /// `(K, +)` as a group; element indices agree with field indices.
    pub fn additive_group(&self) -> &Arc<FiniteGroup> {
        &self.additive
    }

    /// The prime subfield `{a + 0t}` as an additive subgroup.
    pub fn subfield(&self) -> &Subgroup {
        &self.subfield
    }

    pub fn in_subfield(&self, x: usize) -> bool {
        x < self.p
    }

    /// `c_i = i·t`.
    pub fn coset_representatives(&self) -> Vec<usize> {
        (0..self.p).map(|i| self.element(0, i)).collect()
    }

    /// An element whose powers are all nonzero elements.
    pub fn multiplicative_generator(&self) -> usize {
        let n = self.order();
        (1..n)
            .find(|&g| {
                let mut x = g;
                let mut k = 1;
                while x != 1 {
                    x = self.mul(x, g);
                    k += 1;
                }
                k == n - 1
            })
            .expect("the multiplicative group of a finite field is cyclic")
    }

    /// The row blocks `(F + c_i)·x`, each listed by ascending `a` in `a + c_i`.
    pub fn row_parts(&self, x: usize) -> Result<Vec<Vec<usize>>, FieldError> {
        if x >= self.order() {
            return Err(FieldError::UnknownElement(x));
        }
        if self.in_subfield(x) {
            return Err(FieldError::InSubfield(self.label(x)));
        }
        Ok(self
            .coset_representatives()
            .into_iter()
            .map(|c| (0..self.p).map(|a| self.mul(self.add(a, c), x)).collect())
            .collect())
    }
}

fn add_indices(p: usize, x: usize, y: usize) -> usize {
    ((x / p + y / p) % p) * p + (x % p + y % p) % p
}

fn format_element(p: usize, x: usize) -> String {
    let (a, b) = (x % p, x / p);
    let linear = match b {
        0 => String::new(),
        1 => "t".to_string(),
        b => format!("{b}t"),
    };
    match (a, b) {
        (a, 0) => a.to_string(),
        (0, _) => linear,
        (a, _) => format!("{a}+{linear}"),
    }
}

/// `GF(p²)` for a prime `p ≤ 13`.
pub fn make_field(p: u32) -> Result<QuadraticField, FieldError> {
    QuadraticField::new(p)
}

/// `L_x`: columns `F + c_0, …, F + c_{p-1}`, row blocks `(F + c_i)·x`.
pub fn pedersen_vis_table(k: &QuadraticField, x: usize) -> Result<CayleySudokuTable, FieldError> {
    let rows = k.row_parts(x)?;
    let cols: Vec<Vec<usize>> = k
        .coset_representatives()
        .into_iter()
        .map(|c| (0..k.p).map(|a| k.add(a, c)).collect())
        .collect();
    let table = CayleySudokuTable::from_blocks(k.additive_group(), &rows, &cols)?;
    Ok(table.into_verified()?)
}

/// The tables `L_x` for `x ∉ F` in ascending index order, with their
/// pairwise orthogonality.
#[derive(Debug, Clone)]
pub struct MolsFamily {
    pub multipliers: Vec<usize>,
    pub tables: Vec<CayleySudokuTable>,
    /// `orthogonal[i][j]` compares the bodies of tables `i` and `j`.
    pub orthogonal: Vec<Vec<bool>>,
}

impl MolsFamily {
    /// Number of unordered distinct pairs that are orthogonal.
    pub fn orthogonal_pairs(&self) -> usize {
        let n = self.tables.len();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.orthogonal[i][j])
            .count()
    }

    pub fn all_pairs_orthogonal(&self) -> bool {
        let n = self.tables.len();
        self.orthogonal_pairs() == n * n.saturating_sub(1) / 2
    }
}

pub fn mols_family(k: &QuadraticField) -> Result<MolsFamily, FieldError> {
    let multipliers: Vec<usize> = (0..k.order()).filter(|&x| !k.in_subfield(x)).collect();
    let tables = multipliers
        .iter()
        .map(|&x| pedersen_vis_table(k, x))
        .collect::<Result<Vec<_>, _>>()?;
    let squares = tables
        .iter()
        .map(LatinSquare::from_table)
        .collect::<Result<Vec<_>, _>>()?;
    let orthogonal = squares
        .iter()
        .map(|a| {
            squares
                .iter()
                .map(|b| are_orthogonal(a, b))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MolsFamily {
        multipliers,
        tables,
        orthogonal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moduli() {
        assert_eq!(make_field(3).unwrap().modulus(), (1, 0));
        assert_eq!(make_field(2).unwrap().modulus(), (1, 1));
        assert_eq!(make_field(5).unwrap().modulus(), (2, 0));
        assert_eq!(make_field(4).unwrap_err(), FieldError::NotPrime(4));
        assert_eq!(make_field(1).unwrap_err(), FieldError::NotPrime(1));
        assert_eq!(make_field(17).unwrap_err(), FieldError::TooLarge(17));
    }

    #[test]
    fn field_axioms_small() {
        for p in [2, 3, 5] {
            let k = make_field(p).unwrap();
            let n = k.order();
            for x in 0..n {
                for y in 0..n {
                    assert_eq!(k.mul(x, y), k.mul(y, x));
                    for z in 0..n {
                        assert_eq!(k.mul(x, k.add(y, z)), k.add(k.mul(x, y), k.mul(x, z)));
                        assert_eq!(k.mul(k.mul(x, y), z), k.mul(x, k.mul(y, z)));
                    }
                }
                if x != 0 {
                    assert!((1..n).any(|y| k.mul(x, y) == 1), "{x} has an inverse");
                }
            }
            k.multiplicative_generator();
        }
    }

    #[test]
    fn subfield_is_closed() {
        let k = make_field(3).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert!(k.in_subfield(k.add(a, b)));
                assert!(k.in_subfield(k.mul(a, b)));
            }
        }
    }

    #[test]
    fn labels() {
        let k = make_field(3).unwrap();
        let labels: Vec<String> = (0..9).map(|x| k.label(x)).collect();
        assert_eq!(labels, ["0", "1", "2", "t", "1+t", "2+t", "2t", "1+2t", "2+2t"]);
    }

    #[test]
    fn gf4_table() {
        let k = make_field(2).unwrap();
        let t = pedersen_vis_table(&k, 2).unwrap();
        assert_eq!(t.block_shape(), (2, 2));
        assert!(pedersen_vis_table(&k, 1).is_err());
        let fam = mols_family(&k).unwrap();
        assert_eq!(fam.tables.len(), 2);
        assert_eq!(fam.orthogonal_pairs(), 1);
        assert!(!fam.orthogonal[0][0]);
    }
}
