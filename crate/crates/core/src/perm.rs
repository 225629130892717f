//! Permutations of `{0, …, n-1}` composed left to right.
//!
//! A permutation `g` acts on points on the right: `i^g` is the image of `i`,
//! and the product `g·h` means "apply `g`, then `h`", so `i^(g·h) = (i^g)^h`.
//! Points are stored 0-based; all text I/O uses the 1-based cycle notation
//! `(1,4)(2,5,3,6)`, with the comma-free form `(14)(2536)` accepted and
//! produced when the degree is at most 9.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::ResourceError;

/// Largest supported degree.
pub const MAX_DEGREE: usize = 64;

/// Default cap on the size of a generated closure.
pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("degree {0} exceeds the supported maximum of {MAX_DEGREE}")]
    DegreeTooLarge(usize),
    #[error("images do not form a bijection: point {point} is hit twice")]
    NotBijective { point: usize },
    #[error("image {image} out of range for degree {degree}")]
    ImageOutOfRange { image: usize, degree: usize },
    #[error("no generators given")]
    NoGenerators,
    #[error(transparent)]
    Parse(#[from] CycleParseError),
    #[error(transparent)]
    Resource(#[from] ResourceError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cycle notation error at byte {position}: {kind}")]
pub struct CycleParseError {
    pub position: usize,
    pub kind: CycleParseErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycleParseErrorKind {
    #[error("expected '('")]
    ExpectedOpen,
    #[error("unclosed '('")]
    Unclosed,
    #[error("invalid point {0:?}")]
    InvalidPoint(String),
    #[error("point {point} exceeds degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {0} appears more than once")]
    RepeatedPoint(usize),
    #[error("comma-free cycles need degree at most 9")]
    AmbiguousCompact,
    #[error("empty input")]
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_even(self) -> bool {
        self == Parity::Even
    }

    /// Parity of a product: even+even = odd+odd = even.
    pub fn combine(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// A bijection of `{0, …, degree-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    /// # Panics
    /// If `degree > MAX_DEGREE`.
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= MAX_DEGREE, "degree {degree} exceeds {MAX_DEGREE}");
        Permutation {
            images: (0..degree as u8).collect(),
        }
    }

    /// Builds a permutation from its image list, `images[i] = i^g`.
    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let degree = images.len();
        if degree > MAX_DEGREE {
            return Err(PermError::DegreeTooLarge(degree));
        }
        let mut seen = vec![false; degree];
        for &image in images {
            if image >= degree {
                return Err(PermError::ImageOutOfRange { image, degree });
            }
            if std::mem::replace(&mut seen[image], true) {
                return Err(PermError::NotBijective { point: image });
            }
        }
        Ok(Permutation {
            images: images.iter().map(|&i| i as u8).collect(),
        })
    }

    /// Builds a permutation from disjoint 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        if degree > MAX_DEGREE {
            return Err(PermError::DegreeTooLarge(degree));
        }
        let mut images: Vec<usize> = (0..degree).collect();
        let mut seen = vec![false; degree];
        for cycle in cycles {
            for (pos, &point) in cycle.iter().enumerate() {
                if point >= degree {
                    return Err(PermError::ImageOutOfRange { image: point, degree });
                }
                if std::mem::replace(&mut seen[point], true) {
                    return Err(PermError::NotBijective { point });
                }
                images[point] = cycle[(pos + 1) % cycle.len()];
            }
        }
        Self::from_images(&images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `point^self`.
    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    /// Unchecked composition for callers that already know the degrees agree.
    pub(crate) fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u8; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u8;
        }
        Permutation { images }
    }

    pub fn fixes(&self, point: usize) -> bool {
        self.image(point) == point
    }

    pub fn moved_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &j)| i != j as usize)
            .count()
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.moved_points() == self.degree()
    }

    /// Non-trivial cycles, each starting at its smallest point, sorted by
    /// that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.fixes(start) {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut next = self.image(start);
            while next != start {
                seen[next] = true;
                cycle.push(next);
                next = self.image(next);
            }
            out.push(cycle);
        }
        out
    }

    pub fn parity(&self) -> Parity {
        // a k-cycle is a product of k-1 transpositions
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Order of the permutation as a group element.
    pub fn order(&self) -> usize {
        self.cycles()
            .iter()
            .map(|c| c.len())
            .fold(1, |acc, len| acc / gcd(acc, len) * len)
    }

    /// Parses 1-based cycle notation.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation, PermError> {
        if degree > MAX_DEGREE {
            return Err(PermError::DegreeTooLarge(degree));
        }
        let cycles = parse_cycle_list(text, degree)?;
        Ok(Self::from_cycles(degree, &cycles).expect("parser rejects repeats and out-of-range points"))
    }

    /// 1-based cycle notation; identity renders as `(1)`.
    pub fn render_cycles(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "(1)".to_string();
        }
        let compact = self.degree() <= 9;
        let mut out = String::new();
        for cycle in cycles {
            out.push('(');
            for (pos, point) in cycle.iter().enumerate() {
                if pos > 0 && !compact {
                    out.push(',');
                }
                out.push_str(&(point + 1).to_string());
            }
            out.push(')');
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_cycles())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.render_cycles(), self.degree())
    }
}

/// Orders by degree, then number of moved points, then cycle structure.
/// On S_3 this gives (1), (12), (13), (23), (123), (132).
impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.moved_points().cmp(&other.moved_points()))
            .then_with(|| self.cycles().cmp(&other.cycles()))
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn parse_cycle_list(text: &str, degree: usize) -> Result<Vec<Vec<usize>>, CycleParseError> {
    let err = |position, kind| CycleParseError { position, kind };
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut cycles = Vec::new();
    let mut seen = vec![false; degree];
    let mut any = false;
    loop {
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if pos == bytes.len() {
            break;
        }
        if bytes[pos] != b'(' {
            return Err(err(pos, CycleParseErrorKind::ExpectedOpen));
        }
        let open = pos;
        let close = match text[open..].find(')') {
            Some(off) => open + off,
            None => return Err(err(open, CycleParseErrorKind::Unclosed)),
        };
        if let Some(off) = text[open + 1..close].find('(') {
            return Err(err(open + 1 + off, CycleParseErrorKind::Unclosed));
        }
        any = true;
        let body = &text[open + 1..close];
        let mut points = Vec::new();
        if body.contains(',') {
            let mut start = open + 1;
            for piece in body.split(',') {
                let token = piece.trim();
                let point = token
                    .parse::<usize>()
                    .map_err(|_| err(start, CycleParseErrorKind::InvalidPoint(token.to_string())))?;
                points.push((start, point));
                start += piece.len() + 1;
            }
        } else {
            for (off, ch) in body.char_indices() {
                if ch.is_whitespace() {
                    continue;
                }
                let at = open + 1 + off;
                let digit = ch
                    .to_digit(10)
                    .ok_or_else(|| err(at, CycleParseErrorKind::InvalidPoint(ch.to_string())))?;
                points.push((at, digit as usize));
            }
            if points.len() > 1 && degree > 9 {
                return Err(err(open, CycleParseErrorKind::AmbiguousCompact));
            }
        }
        let mut cycle = Vec::with_capacity(points.len());
        for (at, point) in points {
            if point == 0 || point > degree {
                return Err(err(at, CycleParseErrorKind::PointOutOfRange { point, degree }));
            }
            if std::mem::replace(&mut seen[point - 1], true) {
                return Err(err(at, CycleParseErrorKind::RepeatedPoint(point)));
            }
            cycle.push(point - 1);
        }
        if cycle.len() > 1 {
            cycles.push(cycle);
        }
        pos = close + 1;
    }
    if !any {
        return Err(err(0, CycleParseErrorKind::Empty));
    }
    Ok(cycles)
}

/// The subgroup generated by `generators`, as a sorted element list.
///
/// Breadth-first closure under right multiplication by the generators; in a
/// finite group that set is already closed under inversion. Fails once more
/// than `cap` elements have been produced.
pub fn generate_closure(generators: &[Permutation], cap: usize) -> Result<Vec<Permutation>, PermError> {
    let degree = generators.first().ok_or(PermError::NoGenerators)?.degree();
    if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
        return Err(PermError::DegreeMismatch {
            left: degree,
            right: bad.degree(),
        });
    }
    let identity = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(identity.clone());
    queue.push_back(identity);
    while let Some(current) = queue.pop_front() {
        for gen in generators {
            let next = current.then(gen);
            if !seen.contains(&next) {
                if seen.len() >= cap {
                    return Err(ResourceError::new("permutation closure", cap as u64).into());
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<Permutation> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}
