//! Cayley-Sudoku tables of finite groups.
//!
//! A Cayley-Sudoku table is a Cayley table whose rows and columns are
//! arranged so that it splits into equally sized rectangular blocks, each of
//! which contains every group element exactly once. This crate builds such
//! tables from coset data, searches for the transversals the constructions
//! need, and verifies the results through independent routes:
//!
//! * [`perm`]: permutations with left-to-right composition and cycle notation.
//! * [`group`]: finite groups as operation tables, subgroups, cosets,
//!   conjugates, complements, stabilizers and regular subgroups.
//! * [`sudoku_table`]: the bordered, blocked table, its verifier, renderer
//!   and exchange format, plus Latin squares and orthogonality.
//! * [`constructions`]: the coset constructions and the universal
//!   transversal search.
//! * [`baer`]: coset multiplication over fixed representatives and the
//!   three-way equivalence check.
//! * [`quasigroup`]: quasigroups, translations, multiplication groups and
//!   the `Q_n` family.
//! * [`field_instances`]: addition tables of `GF(p²)` arranged by the
//!   subfield, and their mutual orthogonality.
//! * [`cli`]: the command-line front end shared by the binary.

pub mod baer;
pub mod cli;
pub mod constructions;
pub mod field_instances;
pub mod group;
pub mod perm;
pub mod quasigroup;
pub mod sudoku_table;

use thiserror::Error;

pub use baer::{BaerError, BaerReport, CosetMultiplicationTable};
pub use constructions::{ConstructionError, TransversalPartition, UniversalTransversal};
pub use field_instances::{FieldError, QuadraticField};
pub use group::{Coset, FiniteGroup, GroupError, Side, Subgroup, Transversal};
pub use perm::{Parity, PermError, Permutation};
pub use quasigroup::{Quasigroup, QuasigroupError};
pub use sudoku_table::{CayleySudokuTable, LatinSquare, SudokuVerdict, TableError};

/// A search or closure ran past its configured budget.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{what} exceeded its cap of {cap}")]
pub struct ResourceError {
    pub what: &'static str,
    pub cap: u64,
}

impl ResourceError {
    pub fn new(what: &'static str, cap: u64) -> Self {
        ResourceError { what, cap }
    }
}

/// Umbrella error used by the command-line front end and the C bindings.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Baer(#[from] BaerError),
    #[error(transparent)]
    Quasigroup(#[from] QuasigroupError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Resource(#[from] ResourceError),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Process exit status for each outcome class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success = 0,
    ConditionFailed = 2,
    NotFound = 3,
    Resource = 4,
    Malformed = 5,
}

impl Error {
    pub fn outcome(&self) -> Outcome {
        match self {
            Error::Resource(_) => Outcome::Resource,
            Error::Perm(PermError::Resource(_))
            | Error::Group(GroupError::Resource(_))
            | Error::Construction(ConstructionError::Resource(_))
            | Error::Quasigroup(QuasigroupError::Resource(_)) => Outcome::Resource,
            Error::Construction(e) if e.is_condition_failure() => Outcome::ConditionFailed,
            Error::Table(TableError::NotSudoku(_)) => Outcome::ConditionFailed,
            _ => Outcome::Malformed,
        }
    }
}
