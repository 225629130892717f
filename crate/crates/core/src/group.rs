//! Finite groups over canonical element indices.
//!
//! Elements are the indices `0..order`. Every group carries its full
//! operation table, so products, cosets and conjugates are table lookups.
//! Permutation groups additionally keep the permutation behind each index.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::perm::{generate_closure, PermError, Permutation, DEFAULT_CLOSURE_CAP};
use crate::ResourceError;

/// Largest group order accepted anywhere in the crate.
pub const MAX_ORDER: usize = 10_000;

/// Up to this order associativity is checked on every triple.
pub const FULL_ASSOCIATIVITY_LIMIT: usize = 128;

/// Number of sampled triples above [`FULL_ASSOCIATIVITY_LIMIT`].
pub const ASSOCIATIVITY_SAMPLES: usize = 10_000;

/// Largest `n` for which `S_n` and `A_n` are built.
pub const MAX_SYMMETRIC_DEGREE: usize = 7;

/// Default number of generator-set closures a subgroup search may run.
pub const DEFAULT_SEARCH_CAP: u64 = 50_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group order must be positive")]
    Empty,
    #[error("order {order} exceeds the supported maximum of {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("table has {found} rows, expected {expected}")]
    RowCount { found: usize, expected: usize },
    #[error("row {row} has {len} entries, expected {expected}")]
    RaggedTable { row: usize, len: usize, expected: usize },
    #[error("unknown label {label:?} at row {row}, column {col}")]
    UnknownLabel { row: usize, col: usize, label: String },
    #[error("{line} {index} repeats {label:?} (positions {first} and {second})")]
    NotLatin {
        line: &'static str,
        index: usize,
        label: String,
        first: usize,
        second: usize,
    },
    #[error("no identity element")]
    NoIdentity,
    #[error("({a}·{b})·{c} != {a}·({b}·{c})")]
    NotAssociative { a: String, b: String, c: String },
    #[error("set is not closed: {a}·{b} is missing")]
    NotClosed { a: String, b: String },
    #[error("element {0} has no two-sided inverse")]
    NoInverse(String),
    #[error("group is not given as a permutation group")]
    NotPermutationGroup,
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("degree {degree} exceeds the supported maximum of {max}")]
    DegreeTooLarge { degree: usize, max: usize },
    #[error("subgroups belong to different groups")]
    ForeignSubgroup,
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Resource(#[from] ResourceError),
}

/// How thoroughly [`FiniteGroup::from_table_with`] checks associativity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AssociativityCheck {
    /// All triples up to [`FULL_ASSOCIATIVITY_LIMIT`], sampled above it.
    #[default]
    Standard,
    /// All triples regardless of order.
    Strict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

impl serde::Serialize for Side {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u16>,
    identity: usize,
    inverse: Vec<usize>,
    labels: Vec<String>,
    element_perm: Option<Vec<Permutation>>,
    perm_index: HashMap<Permutation, usize>,
    label_index: HashMap<String, usize>,
    spec: Option<String>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("spec", &self.spec)
            .field("labels", &self.labels)
            .finish()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table && self.labels == other.labels
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Assembles a group from a table already known to be a group table.
    fn assemble(
        labels: Vec<String>,
        table: Vec<u16>,
        identity: usize,
        element_perm: Option<Vec<Permutation>>,
    ) -> FiniteGroup {
        let order = labels.len();
        let mut inverse = vec![usize::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if table[a * order + b] as usize == identity {
                    inverse[a] = b;
                    break;
                }
            }
        }
        let perm_index = element_perm
            .as_ref()
            .map(|perms| perms.iter().cloned().zip(0..).collect())
            .unwrap_or_default();
        let label_index = labels.iter().cloned().zip(0..).collect();
        FiniteGroup {
            order,
            table,
            identity,
            inverse,
            labels,
            element_perm,
            perm_index,
            label_index,
            spec: None,
        }
    }

    /// `Z_n` under addition mod `n`, labelled `"0"..`.
    pub fn make_cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
        check_order(n)?;
        let table = (0..n * n).map(|k| ((k / n + k % n) % n) as u16).collect();
        let labels = (0..n).map(|i| i.to_string()).collect();
        Ok(Self::assemble(labels, table, 0, None).with_spec(format!("Z{n}")))
    }

    /// The symmetric group `S_n` acting on `{1..n}`.
    pub fn make_symmetric(n: usize) -> Result<FiniteGroup, GroupError> {
        check_symmetric_degree(n)?;
        let mut gens = vec![Permutation::identity(n)];
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[vec![0, 1]])?);
            gens.push(Permutation::from_cycles(n, &[(0..n).collect()])?);
        }
        let elements = generate_closure(&gens, DEFAULT_CLOSURE_CAP)?;
        Ok(Self::from_permutations(&elements)?.with_spec(format!("S{n}")))
    }

    /// The alternating group `A_n`, generated by the 3-cycles `(1,2,i)`.
    pub fn make_alternating(n: usize) -> Result<FiniteGroup, GroupError> {
        check_symmetric_degree(n)?;
        let mut gens = vec![Permutation::identity(n)];
        for i in 2..n {
            gens.push(Permutation::from_cycles(n, &[vec![0, 1, i]])?);
        }
        let elements = generate_closure(&gens, DEFAULT_CLOSURE_CAP)?;
        Ok(Self::from_permutations(&elements)?.with_spec(format!("A{n}")))
    }

    /// The group generated by `generators`.
    pub fn from_generators(generators: &[Permutation]) -> Result<FiniteGroup, GroupError> {
        let elements = generate_closure(generators, DEFAULT_CLOSURE_CAP)?;
        Self::from_permutations(&elements)
    }

    /// A group whose elements are exactly the given permutations.
    ///
    /// The set must already be closed; elements are re-ordered by
    /// [`Permutation`]'s ordering, so the identity is element 0.
    pub fn from_permutations(elements: &[Permutation]) -> Result<FiniteGroup, GroupError> {
        let mut perms: Vec<Permutation> = elements.to_vec();
        perms.sort();
        perms.dedup();
        let order = perms.len();
        check_order(order)?;
        let degree = perms[0].degree();
        if let Some(bad) = perms.iter().find(|p| p.degree() != degree) {
            return Err(PermError::DegreeMismatch {
                left: degree,
                right: bad.degree(),
            }
            .into());
        }
        let index: HashMap<&Permutation, usize> = perms.iter().zip(0..).collect();
        let mut table = Vec::with_capacity(order * order);
        for a in &perms {
            for b in &perms {
                match index.get(&a.then(b)) {
                    Some(&c) => table.push(c as u16),
                    None => {
                        return Err(GroupError::NotClosed {
                            a: a.render_cycles(),
                            b: b.render_cycles(),
                        })
                    }
                }
            }
        }
        let identity = index
            .get(&Permutation::identity(degree))
            .copied()
            .ok_or(GroupError::NoIdentity)?;
        let labels = perms.iter().map(|p| p.render_cycles()).collect();
        Ok(Self::assemble(labels, table, identity, Some(perms)))
    }

    /// Validates a labelled table. Rows and columns are indexed by `labels`.
    pub fn from_table(labels: &[String], rows: &[Vec<String>]) -> Result<FiniteGroup, GroupError> {
        Self::from_table_with(labels, rows, AssociativityCheck::Standard)
    }

    pub fn from_table_with(
        labels: &[String],
        rows: &[Vec<String>],
        check: AssociativityCheck,
    ) -> Result<FiniteGroup, GroupError> {
        let order = labels.len();
        check_order(order)?;
        let mut index = HashMap::new();
        for (i, label) in labels.iter().enumerate() {
            if index.insert(label.as_str(), i).is_some() {
                return Err(GroupError::DuplicateLabel(label.clone()));
            }
        }
        if rows.len() != order {
            return Err(GroupError::RowCount {
                found: rows.len(),
                expected: order,
            });
        }
        let mut table = Vec::with_capacity(order * order);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(GroupError::RaggedTable {
                    row: r,
                    len: row.len(),
                    expected: order,
                });
            }
            for (c, cell) in row.iter().enumerate() {
                let v = index.get(cell.as_str()).ok_or_else(|| GroupError::UnknownLabel {
                    row: r,
                    col: c,
                    label: cell.clone(),
                })?;
                table.push(*v as u16);
            }
        }
        let at = |a: usize, b: usize| table[a * order + b] as usize;
        check_latin(order, at, labels)?;
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or(GroupError::NoIdentity)?;
        let witness = |a: usize, b: usize, c: usize| GroupError::NotAssociative {
            a: labels[a].clone(),
            b: labels[b].clone(),
            c: labels[c].clone(),
        };
        if order <= FULL_ASSOCIATIVITY_LIMIT || check == AssociativityCheck::Strict {
            for a in 0..order {
                for b in 0..order {
                    let ab = at(a, b);
                    for c in 0..order {
                        if at(ab, c) != at(a, at(b, c)) {
                            return Err(witness(a, b, c));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..ASSOCIATIVITY_SAMPLES {
                let (a, b, c) = (
                    rng.random_range(0..order),
                    rng.random_range(0..order),
                    rng.random_range(0..order),
                );
                if at(at(a, b), c) != at(a, at(b, c)) {
                    return Err(witness(a, b, c));
                }
            }
        }
        Ok(Self::assemble(labels.to_vec(), table, identity, None))
    }

    /// The group with the reversed product `a∘b = b·a`. Left cosets of a
    /// subgroup here are the right cosets in the original group.
    pub fn opposite(&self) -> FiniteGroup {
        let n = self.order;
        let table = (0..n * n).map(|k| self.table[(k % n) * n + k / n]).collect();
        let mut op = Self::assemble(self.labels.clone(), table, self.identity, None);
        op.spec = self.spec.as_ref().map(|s| format!("op({s})"));
        op
    }

    pub fn with_spec(mut self, spec: impl Into<String>) -> Self {
        self.spec = Some(spec.into());
        self
    }

    /// The spec string the group was built from, if known.
    pub fn spec(&self) -> Option<&str> {
        self.spec.as_deref()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g⁻¹·x·g`.
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.op(self.op(self.inverse(g), x), g)
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.op(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.op(a, b) == self.op(b, a)))
    }

    /// The permutation behind each element, when this is a permutation group.
    pub fn element_perms(&self) -> Option<&[Permutation]> {
        self.element_perm.as_deref()
    }

    pub fn perm(&self, a: usize) -> Option<&Permutation> {
        self.element_perm.as_ref().map(|p| &p[a])
    }

    pub fn degree(&self) -> Option<usize> {
        self.element_perm.as_ref().map(|p| p[0].degree())
    }

    pub fn index_of_perm(&self, p: &Permutation) -> Option<usize> {
        self.perm_index.get(p).copied()
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.label_index.get(label).copied()
    }

    /// Resolves an element written as its label, or in cycle notation for
    /// permutation groups.
    pub fn parse_element(&self, text: &str) -> Result<usize, GroupError> {
        let text = text.trim();
        if let Some(i) = self.index_of_label(text) {
            return Ok(i);
        }
        if let Some(degree) = self.degree() {
            if let Ok(p) = Permutation::parse_cycles(text, degree) {
                if let Some(i) = self.index_of_perm(&p) {
                    return Ok(i);
                }
            }
        }
        Err(GroupError::UnknownElement(text.to_string()))
    }

    pub fn is_transitive(&self) -> bool {
        self.element_perm
            .as_ref()
            .is_some_and(|perms| orbit_covers_all(perms.iter()))
    }

    /// Transitive with trivial point stabilizers.
    pub fn is_regular(&self) -> bool {
        self.element_perm
            .as_ref()
            .is_some_and(|perms| perms_are_regular(perms.iter()))
    }

    /// Closure of `gens` in index space; `None` once it outgrows `limit`.
    fn closure_indices(&self, gens: &[usize], limit: usize) -> Option<Vec<usize>> {
        let mut member = vec![false; self.order];
        member[self.identity] = true;
        let mut out = vec![self.identity];
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.op(x, g);
                if !member[y] {
                    if out.len() >= limit {
                        return None;
                    }
                    member[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        Some(out)
    }
}

fn check_order(n: usize) -> Result<(), GroupError> {
    if n == 0 {
        return Err(GroupError::Empty);
    }
    if n > MAX_ORDER {
        return Err(GroupError::OrderTooLarge {
            order: n,
            max: MAX_ORDER,
        });
    }
    Ok(())
}

fn check_symmetric_degree(n: usize) -> Result<(), GroupError> {
    if n == 0 {
        return Err(GroupError::Empty);
    }
    if n > MAX_SYMMETRIC_DEGREE {
        return Err(ResourceError::new("symmetric group degree", MAX_SYMMETRIC_DEGREE as u64).into());
    }
    Ok(())
}

/// Reports the first repeated entry in a row, then in a column.
pub(crate) fn check_latin(
    order: usize,
    at: impl Fn(usize, usize) -> usize,
    labels: &[String],
) -> Result<(), GroupError> {
    for (line, by_row) in [("row", true), ("column", false)] {
        for i in 0..order {
            let mut first_seen = vec![usize::MAX; order];
            for j in 0..order {
                let v = if by_row { at(i, j) } else { at(j, i) };
                if first_seen[v] != usize::MAX {
                    return Err(GroupError::NotLatin {
                        line,
                        index: i,
                        label: labels[v].clone(),
                        first: first_seen[v],
                        second: j,
                    });
                }
                first_seen[v] = j;
            }
        }
    }
    Ok(())
}

fn orbit_covers_all<'a>(mut perms: impl Iterator<Item = &'a Permutation>) -> bool {
    let Some(first) = perms.next() else { return false };
    let degree = first.degree();
    let mut hit = vec![false; degree];
    hit[first.image(0)] = true;
    for p in perms {
        hit[p.image(0)] = true;
    }
    hit.into_iter().all(|h| h)
}

fn perms_are_regular<'a>(perms: impl Iterator<Item = &'a Permutation> + Clone) -> bool {
    let transitive = orbit_covers_all(perms.clone());
    let trivial_stabilizer = perms.clone().filter(|p| p.fixes(0)).count() == 1;
    let regular = transitive && trivial_stabilizer;
    if regular {
        let count = perms.clone().count();
        let degree = perms.clone().next().map_or(0, |p| p.degree());
        assert_eq!(count, degree, "a regular group has order equal to its degree");
    }
    regular
}

/// A subgroup of a shared parent group, stored as its sorted element list.
#[derive(Clone)]
pub struct Subgroup {
    group: Arc<FiniteGroup>,
    elements: Vec<usize>,
    member: Vec<bool>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && (Arc::ptr_eq(&self.group, &other.group) || self.group == other.group)
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<&str> = self.elements.iter().map(|&e| self.group.label(e)).collect();
        write!(f, "Subgroup{labels:?}")
    }
}

impl Subgroup {
    fn from_sorted(group: &Arc<FiniteGroup>, elements: Vec<usize>) -> Subgroup {
        let mut member = vec![false; group.order()];
        for &e in &elements {
            member[e] = true;
        }
        Subgroup {
            group: Arc::clone(group),
            elements,
            member,
        }
    }

    /// The smallest subgroup containing `gens`.
    pub fn generated(group: &Arc<FiniteGroup>, gens: &[usize]) -> Subgroup {
        let elements = group
            .closure_indices(gens, usize::MAX)
            .expect("closure without limit always completes");
        Self::from_sorted(group, elements)
    }

    /// Validates that `elements` is closed under the group operation.
    pub fn from_elements(group: &Arc<FiniteGroup>, elements: &[usize]) -> Result<Subgroup, GroupError> {
        let set: BTreeSet<usize> = elements.iter().copied().collect();
        if let Some(&bad) = set.iter().find(|&&e| e >= group.order()) {
            return Err(GroupError::UnknownElement(bad.to_string()));
        }
        if !set.contains(&group.identity()) {
            return Err(GroupError::NotClosed {
                a: group.label(group.identity()).to_string(),
                b: group.label(group.identity()).to_string(),
            });
        }
        for &a in &set {
            for &b in &set {
                if !set.contains(&group.op(a, b)) {
                    return Err(GroupError::NotClosed {
                        a: group.label(a).to_string(),
                        b: group.label(b).to_string(),
                    });
                }
            }
        }
        Ok(Self::from_sorted(group, set.into_iter().collect()))
    }

    pub fn trivial(group: &Arc<FiniteGroup>) -> Subgroup {
        Self::from_sorted(group, vec![group.identity()])
    }

    pub fn whole(group: &Arc<FiniteGroup>) -> Subgroup {
        Self::from_sorted(group, group.elements().collect())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// Sorted element indices.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.group.order() / self.order()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.member[x]
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn labels(&self) -> Vec<&str> {
        self.elements.iter().map(|&e| self.group.label(e)).collect()
    }

    /// `S^g = g⁻¹·S·g`.
    pub fn conjugate(&self, g: usize) -> Subgroup {
        let mut elements: Vec<usize> = self.elements.iter().map(|&s| self.group.conjugate(s, g)).collect();
        elements.sort_unstable();
        Self::from_sorted(&self.group, elements)
    }

    /// The distinct conjugates `S^g`, sorted by element list.
    pub fn distinct_conjugates(&self) -> Vec<Subgroup> {
        let mut seen = BTreeSet::new();
        for g in self.group.elements() {
            seen.insert(self.conjugate(g).elements);
        }
        seen.into_iter().map(|e| Self::from_sorted(&self.group, e)).collect()
    }

    pub fn is_normal(&self) -> bool {
        self.group
            .elements()
            .all(|g| self.elements.iter().all(|&s| self.contains(self.group.conjugate(s, g))))
    }

    /// `x·s` (left) or `s·x` (right).
    #[inline]
    fn translate(&self, side: Side, x: usize, s: usize) -> usize {
        match side {
            Side::Left => self.group.op(x, s),
            Side::Right => self.group.op(s, x),
        }
    }

    /// All cosets of one side, sorted by representative.
    pub fn cosets(&self, side: Side) -> Vec<Coset> {
        let mut assigned = vec![false; self.group.order()];
        let mut out = Vec::with_capacity(self.index());
        for rep in self.group.elements() {
            if assigned[rep] {
                continue;
            }
            let listing: Vec<usize> = self.elements.iter().map(|&s| self.translate(side, rep, s)).collect();
            let mut elements = listing.clone();
            elements.sort_unstable();
            for &e in &elements {
                assigned[e] = true;
            }
            out.push(Coset {
                side,
                representative: rep,
                elements,
                listing,
            });
        }
        out
    }

    /// For each element, the position of its coset in [`Subgroup::cosets`].
    pub fn coset_index_map(&self, side: Side) -> Vec<usize> {
        let mut map = vec![usize::MAX; self.group.order()];
        let mut next = 0;
        for rep in self.group.elements() {
            if map[rep] != usize::MAX {
                continue;
            }
            for &s in &self.elements {
                map[self.translate(side, rep, s)] = next;
            }
            next += 1;
        }
        map
    }

    /// Checks that `reps` meets every coset of the given side exactly once.
    pub fn check_transversal(&self, side: Side, reps: &[usize]) -> Result<(), TransversalDefect> {
        let map = self.coset_index_map(side);
        let cosets = self.cosets(side);
        let mut hits = vec![0usize; self.index()];
        for &r in reps {
            hits[map[r]] += 1;
        }
        match hits.iter().position(|&h| h != 1) {
            None => Ok(()),
            Some(c) => Err(TransversalDefect {
                side,
                coset_representative: self.group.label(cosets[c].representative).to_string(),
                hits: hits[c],
            }),
        }
    }

    /// A subgroup `C` with `|C|·|S| = |G|` and `C ∩ S = 1`, if one exists.
    ///
    /// Closes every generator set of size at most 2, then 3, drawn from the
    /// elements outside `S` whose order divides `[G:S]`, in lexicographic
    /// index order, and returns the first complement met. Complements that
    /// need four or more generators are not found.
    pub fn find_complement(&self) -> Result<Option<Subgroup>, GroupError> {
        self.find_complement_capped(DEFAULT_SEARCH_CAP)
    }

    pub fn find_complement_capped(&self, cap: u64) -> Result<Option<Subgroup>, GroupError> {
        let g = &self.group;
        let target = self.index();
        if target == 1 {
            return Ok(Some(Self::trivial(g)));
        }
        let candidates: Vec<usize> = g
            .elements()
            .filter(|&x| !self.contains(x) && target.is_multiple_of(g.element_order(x)))
            .collect();
        let mut budget = cap;
        let mut tried: HashSet<Vec<usize>> = HashSet::new();
        let mut attempt = |gens: &[usize]| -> Result<Option<Subgroup>, GroupError> {
            if budget == 0 {
                return Err(ResourceError::new("complement search", cap).into());
            }
            budget -= 1;
            let Some(elements) = g.closure_indices(gens, target) else {
                return Ok(None);
            };
            if elements.len() != target || !tried.insert(elements.clone()) {
                return Ok(None);
            }
            if elements.iter().filter(|&&e| self.contains(e)).count() == 1 {
                return Ok(Some(Self::from_sorted(g, elements)));
            }
            Ok(None)
        };
        for size in 1..=3usize {
            let mut idx: Vec<usize> = (0..size).collect();
            if candidates.len() < size {
                break;
            }
            loop {
                let gens: Vec<usize> = idx.iter().map(|&i| candidates[i]).collect();
                if let Some(c) = attempt(&gens)? {
                    return Ok(Some(c));
                }
                if !next_combination(&mut idx, candidates.len()) {
                    break;
                }
            }
        }
        Ok(None)
    }

    /// `C ∩ S = {e}` and `|C|·|S| = |G|`, so that `G = CS`.
    pub fn is_complement(&self, c: &Subgroup) -> bool {
        c.order() * self.order() == self.group.order() && c.elements.iter().filter(|&&e| self.contains(e)).count() == 1
    }

    /// Every complement, from the full subgroup list. Sorted by element list.
    pub fn complements(&self) -> Vec<Subgroup> {
        all_subgroups(&self.group)
            .into_iter()
            .filter(|c| self.is_complement(c))
            .collect()
    }

    /// Transitive with trivial point stabilizers, as a permutation group.
    pub fn is_regular(&self) -> bool {
        match self.group.element_perms() {
            Some(perms) => perms_are_regular(self.elements.iter().map(|&e| &perms[e])),
            None => false,
        }
    }

    pub fn is_transitive(&self) -> bool {
        match self.group.element_perms() {
            Some(perms) => orbit_covers_all(self.elements.iter().map(|&e| &perms[e])),
            None => false,
        }
    }

    /// This subgroup as a group in its own right. Element `i` of the result
    /// is `self.elements()[i]`; labels are inherited.
    pub fn to_group(&self) -> FiniteGroup {
        let local: HashMap<usize, usize> = self.elements.iter().copied().zip(0..).collect();
        let n = self.order();
        let mut table = Vec::with_capacity(n * n);
        for &a in &self.elements {
            for &b in &self.elements {
                table.push(local[&self.group.op(a, b)] as u16);
            }
        }
        let labels = self.elements.iter().map(|&e| self.group.label(e).to_string()).collect();
        let perms = self
            .group
            .element_perms()
            .map(|p| self.elements.iter().map(|&e| p[e].clone()).collect());
        FiniteGroup::assemble(labels, table, local[&self.group.identity()], perms)
    }

    /// The same element set viewed inside `other`, which must share this
    /// subgroup's element indexing (for example the opposite group).
    pub fn transport(&self, other: &Arc<FiniteGroup>) -> Result<Subgroup, GroupError> {
        if other.order() != self.group.order() {
            return Err(GroupError::ForeignSubgroup);
        }
        Subgroup::from_elements(other, &self.elements)
    }
}

/// Advances `idx` to the next `k`-combination of `0..n`.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// A coset `xS` or `Sx`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coset {
    pub side: Side,
    /// Smallest element index in the coset.
    pub representative: usize,
    /// Sorted element indices.
    pub elements: Vec<usize>,
    /// `rep·s` (left) or `s·rep` (right) for `s` in the subgroup's sorted
    /// order; this is the order used for table borders.
    pub listing: Vec<usize>,
}

/// Why a set fails to be a transversal.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{side} coset of {coset_representative} is hit {hits} times")]
pub struct TransversalDefect {
    pub side: Side,
    pub coset_representative: String,
    pub hits: usize,
}

/// One representative per coset of a fixed side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transversal {
    subgroup: Subgroup,
    side: Side,
    reps: Vec<usize>,
}

impl Transversal {
    /// Keeps `reps` in the given order.
    pub fn new(subgroup: &Subgroup, side: Side, reps: Vec<usize>) -> Result<Transversal, TransversalDefect> {
        subgroup.check_transversal(side, &reps)?;
        Ok(Transversal {
            subgroup: subgroup.clone(),
            side,
            reps,
        })
    }

    /// The smallest element of each coset, in coset order.
    pub fn canonical(subgroup: &Subgroup, side: Side) -> Transversal {
        let reps = subgroup.cosets(side).iter().map(|c| c.representative).collect();
        Transversal {
            subgroup: subgroup.clone(),
            side,
            reps,
        }
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

/// Elements fixing `point` (0-based).
pub fn stabilizer(group: &Arc<FiniteGroup>, point: usize) -> Result<Subgroup, GroupError> {
    let perms = group.element_perms().ok_or(GroupError::NotPermutationGroup)?;
    let degree = perms[0].degree();
    if point >= degree {
        return Err(GroupError::PointOutOfRange { point, degree });
    }
    let elements = group.elements().filter(|&e| perms[e].fixes(point)).collect();
    Ok(Subgroup::from_sorted(group, elements))
}

/// Every regular subgroup, found by closing all sets of at most three
/// fixed-point-free generators. Sorted by element list.
pub fn search_regular_subgroups(group: &Arc<FiniteGroup>) -> Result<Vec<Subgroup>, GroupError> {
    search_regular_subgroups_capped(group, DEFAULT_SEARCH_CAP)
}

pub fn search_regular_subgroups_capped(group: &Arc<FiniteGroup>, cap: u64) -> Result<Vec<Subgroup>, GroupError> {
    const MAX_DEGREE: usize = 8;
    let perms = group.element_perms().ok_or(GroupError::NotPermutationGroup)?;
    let degree = perms[0].degree();
    if degree > MAX_DEGREE {
        return Err(GroupError::DegreeTooLarge {
            degree,
            max: MAX_DEGREE,
        });
    }
    if !group.order().is_multiple_of(degree) {
        return Ok(Vec::new());
    }
    if degree == 1 {
        return Ok(vec![Subgroup::trivial(group)]);
    }
    // every non-identity element of a regular group is fixed-point-free,
    // and its order divides the degree
    let candidates: Vec<usize> = group
        .elements()
        .filter(|&e| perms[e].is_fixed_point_free() && degree % group.element_order(e) == 0)
        .collect();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut closed: HashSet<Vec<usize>> = HashSet::new();
    let mut budget = cap;
    for size in 1..=3usize.min(candidates.len()) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            if budget == 0 {
                return Err(ResourceError::new("regular subgroup search", cap).into());
            }
            budget -= 1;
            let gens: Vec<usize> = idx.iter().map(|&i| candidates[i]).collect();
            if let Some(elements) = group.closure_indices(&gens, degree) {
                if elements.len() == degree && closed.insert(elements.clone()) {
                    let sub = Subgroup::from_sorted(group, elements);
                    if sub.is_regular() {
                        found.insert(sub.elements.clone());
                    }
                }
            }
            if !next_combination(&mut idx, candidates.len()) {
                break;
            }
        }
    }
    Ok(found.into_iter().map(|e| Subgroup::from_sorted(group, e)).collect())
}

/// Every subgroup, sorted by order and then element list.
///
/// Joins each known subgroup with each element until nothing new appears,
/// so subgroups needing many generators are included.
pub fn all_subgroups(group: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    let mut known: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
    let trivial = vec![group.identity()];
    known.insert((1, trivial.clone()));
    let mut queue = VecDeque::from([trivial]);
    while let Some(h) = queue.pop_front() {
        let member: HashSet<usize> = h.iter().copied().collect();
        for g in group.elements() {
            if member.contains(&g) {
                continue;
            }
            let mut gens = h.clone();
            gens.push(g);
            let joined = group
                .closure_indices(&gens, usize::MAX)
                .expect("closure without limit always completes");
            if known.insert((joined.len(), joined.clone())) {
                queue.push_back(joined);
            }
        }
    }
    known
        .into_iter()
        .map(|(_, e)| Subgroup::from_sorted(group, e))
        .collect()
}
