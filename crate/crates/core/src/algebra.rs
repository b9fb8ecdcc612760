//! Atom structures of nonassociative algebras and the chromatic family.
//!
//! Atoms are plain indices. In chromatic structures atom `0` is the identity
//! `1'` and atom `i` (for `1 <= i <= n`) is the proper colour `c_i`, the same
//! encoding used by [`EdgeColouring`](crate::colouring::EdgeColouring).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::Witnesses;

/// An ordered atom triple `(a, b, c)`, read as "`c` is below `a ; b`".
pub type Triple = [usize; 3];

/// Index of the identity atom in chromatic structures.
pub const IDENTITY: usize = 0;

/// Number of distinct entries among three values.
pub fn distinct_count<T: PartialEq>(a: T, b: T, c: T) -> usize {
    match (a == b, b == c, a == c) {
        (true, true, _) => 1,
        (true, false, _) | (false, true, _) => 2,
        (false, false, true) => 2,
        (false, false, false) => 3,
    }
}

/// The pair `(S, n)` selecting the chromatic algebra `E_{n+1}^S`.
///
/// `S` is stored as a bitmask over `{1, 2, 3}`: bit `k - 1` is set when
/// triangles with `k` distinct colours are consistent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    mask: u8,
    n: usize,
}

impl Signature {
    pub fn new(s: &[usize], n: usize) -> Result<Self> {
        let mut mask = 0u8;
        for &k in s {
            if !(1..=3).contains(&k) {
                return Err(Error::InvalidSignature(format!(
                    "triangle type {k} is not in {{1,2,3}}"
                )));
            }
            mask |= 1 << (k - 1);
        }
        Self::from_mask(mask, n)
    }

    pub fn from_mask(mask: u8, n: usize) -> Result<Self> {
        if mask > 0b111 {
            return Err(Error::InvalidSignature(format!(
                "mask {mask:#b} out of range"
            )));
        }
        if n == 0 {
            return Err(Error::InvalidSignature(
                "need at least one proper colour".into(),
            ));
        }
        Ok(Signature { mask, n })
    }

    /// All eight signatures for a fixed colour count, ordered by mask.
    pub fn all(n: usize) -> Result<Vec<Signature>> {
        (0u8..8).map(|mask| Signature::from_mask(mask, n)).collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u8 {
        self.mask
    }

    pub fn with_n(&self, n: usize) -> Result<Signature> {
        Signature::from_mask(self.mask, n)
    }

    /// The consistent triangle types `S`, ascending.
    pub fn s(&self) -> Vec<usize> {
        (1..=3).filter(|&k| self.contains(k)).collect()
    }

    /// The forbidden triangle types `F = {1,2,3} \ S`, ascending.
    pub fn forbidden(&self) -> Vec<usize> {
        (1..=3).filter(|&k| !self.contains(k)).collect()
    }

    pub fn contains(&self, k: usize) -> bool {
        (1..=3).contains(&k) && self.mask & (1 << (k - 1)) != 0
    }

    pub fn forbids(&self, k: usize) -> bool {
        !self.contains(k)
    }

    /// Whether a triangle with colours `a, b, c` is of a consistent type.
    pub fn allows<T: PartialEq>(&self, a: T, b: T, c: T) -> bool {
        self.contains(distinct_count(a, b, c))
    }

    /// Every colour multiset `[a <= b <= c]` whose type lies in `S`.
    pub fn required_multisets(&self) -> Vec<[usize; 3]> {
        let n = self.n;
        let mut out = Vec::new();
        for a in 1..=n {
            for b in a..=n {
                for c in b..=n {
                    if self.allows(a, b, c) {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        out
    }

    /// Renders `S` alone, e.g. `{1,3}` or `{}`.
    pub fn set_string(&self) -> String {
        let parts: Vec<String> = self.s().iter().map(|k| k.to_string()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E_{}^{}", self.n + 1, self.set_string())
    }
}

/// Parses the consistent-type set `S` from text such as `1,3`, `{2,3}`, `` or `none`.
pub fn parse_type_set(text: &str) -> Result<Vec<usize>> {
    let trimmed = text
        .trim()
        .trim_start_matches('{')
        .trim_end_matches('}')
        .trim();
    if trimmed.is_empty() || trimmed.eq_ignore_ascii_case("none") || trimmed == "∅" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for part in trimmed.split(',') {
        let k = usize::from_str(part.trim())
            .map_err(|_| Error::InvalidSignature(format!("cannot parse triangle type {part:?}")))?;
        if !(1..=3).contains(&k) {
            return Err(Error::InvalidSignature(format!(
                "triangle type {k} is not in {{1,2,3}}"
            )));
        }
        if !out.contains(&k) {
            out.push(k);
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// A set of atoms, stored as a bitmask whose width is the atom count.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomSet {
    width: usize,
    words: Vec<u64>,
}

impl AtomSet {
    pub fn empty(width: usize) -> Self {
        AtomSet {
            width,
            words: vec![0; width.div_ceil(64)],
        }
    }

    pub fn full(width: usize) -> Self {
        let mut s = Self::empty(width);
        for a in 0..width {
            s.insert(a);
        }
        s
    }

    pub fn singleton(width: usize, atom: usize) -> Self {
        let mut s = Self::empty(width);
        s.insert(atom);
        s
    }

    pub fn from_atoms(width: usize, atoms: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(width);
        for a in atoms {
            s.insert(a);
        }
        s
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn insert(&mut self, atom: usize) {
        assert!(
            atom < self.width,
            "atom {atom} outside width {}",
            self.width
        );
        self.words[atom / 64] |= 1 << (atom % 64);
    }

    pub fn remove(&mut self, atom: usize) {
        if atom < self.width {
            self.words[atom / 64] &= !(1 << (atom % 64));
        }
    }

    pub fn contains(&self, atom: usize) -> bool {
        atom < self.width && self.words[atom / 64] & (1 << (atom % 64)) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn union_with(&mut self, other: &AtomSet) {
        debug_assert_eq!(self.width, other.width);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    pub fn union(&self, other: &AtomSet) -> AtomSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &AtomSet) -> AtomSet {
        debug_assert_eq!(self.width, other.width);
        AtomSet {
            width: self.width,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn complement(&self) -> AtomSet {
        AtomSet::from_atoms(self.width, (0..self.width).filter(|&a| !self.contains(a)))
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.width).filter(move |&a| self.contains(a))
    }
}

impl fmt::Display for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|a| a.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Why the identity law fails for a pair `(b, c)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityFailure {
    /// `b = c` but no identity atom `e` has `(e, b, b)` consistent.
    Missing { atom: usize },
    /// `b != c` yet `(e, b, c)` is consistent for the identity atom `e`.
    Spurious { identity: usize, b: usize, c: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClosureFailure {
    pub triple: Triple,
    pub missing: Triple,
}

/// Outcome of checking the atom-structure characterisation.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct NaReport {
    /// Atoms `a` with `converse(converse(a)) != a`.
    pub involution: Witnesses<usize>,
    pub identity: Witnesses<IdentityFailure>,
    pub closure: Witnesses<ClosureFailure>,
}

impl NaReport {
    pub fn is_valid(&self) -> bool {
        self.involution.is_empty() && self.identity.is_empty() && self.closure.is_empty()
    }

    pub fn violation_count(&self) -> usize {
        self.involution.total + self.identity.total + self.closure.total
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Associativity {
    Associative,
    /// `({a};{b});{c} != {a};({b};{c})` for this `(a, b, c)`.
    NonAssociative {
        witness: Triple,
    },
}

impl Associativity {
    pub fn holds(&self) -> bool {
        matches!(self, Associativity::Associative)
    }
}

/// `(At, ˘, I, T)` with a dense membership bitset for `T`.
///
/// Immutable after construction. Pairwise atom products `{a};{b}` are
/// precomputed since composition is the hot path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomStructure {
    atom_count: usize,
    converse: Vec<usize>,
    identity: AtomSet,
    triples: Vec<u64>,
    products: Vec<AtomSet>,
}

impl AtomStructure {
    pub fn new(
        atom_count: usize,
        converse: Vec<usize>,
        identity: impl IntoIterator<Item = usize>,
        triples: impl IntoIterator<Item = Triple>,
    ) -> Result<Self> {
        if atom_count == 0 {
            return Err(Error::InvalidAtomStructure("no atoms".into()));
        }
        if converse.len() != atom_count {
            return Err(Error::InvalidAtomStructure(format!(
                "converse has {} entries for {atom_count} atoms",
                converse.len()
            )));
        }
        if let Some(&bad) = converse.iter().find(|&&a| a >= atom_count) {
            return Err(Error::InvalidAtomStructure(format!(
                "converse maps to unknown atom {bad}"
            )));
        }
        let mut id = AtomSet::empty(atom_count);
        for e in identity {
            if e >= atom_count {
                return Err(Error::InvalidAtomStructure(format!(
                    "unknown identity atom {e}"
                )));
            }
            id.insert(e);
        }
        let cube = atom_count * atom_count * atom_count;
        let mut bits = vec![0u64; cube.div_ceil(64)];
        for t in triples {
            if t.iter().any(|&a| a >= atom_count) {
                return Err(Error::InvalidAtomStructure(format!(
                    "triple {t:?} has unknown atom"
                )));
            }
            let idx = (t[0] * atom_count + t[1]) * atom_count + t[2];
            bits[idx / 64] |= 1 << (idx % 64);
        }
        let mut out = AtomStructure {
            atom_count,
            converse,
            identity: id,
            triples: bits,
            products: Vec::new(),
        };
        out.products = (0..atom_count * atom_count)
            .map(|ab| {
                let (a, b) = (ab / atom_count, ab % atom_count);
                AtomSet::from_atoms(
                    atom_count,
                    (0..atom_count).filter(|&u| out.contains([a, b, u])),
                )
            })
            .collect();
        Ok(out)
    }

    /// The atom structure of `E_{n+1}^S`.
    ///
    /// Triples involving `1'` are consistent exactly when the two remaining
    /// atoms coincide; proper triples are consistent when their number of
    /// distinct colours lies in `S`.
    pub fn chromatic(sig: Signature) -> Self {
        let k = sig.n() + 1;
        let mut triples = Vec::new();
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    let consistent = if a == IDENTITY {
                        b == c
                    } else if b == IDENTITY {
                        a == c
                    } else if c == IDENTITY {
                        a == b
                    } else {
                        sig.allows(a, b, c)
                    };
                    if consistent {
                        triples.push([a, b, c]);
                    }
                }
            }
        }
        AtomStructure::new(k, (0..k).collect(), [IDENTITY], triples)
            .expect("chromatic structures are well-formed")
    }

    pub fn atom_count(&self) -> usize {
        self.atom_count
    }

    pub fn converse(&self, a: usize) -> usize {
        self.converse[a]
    }

    pub fn identity_atoms(&self) -> &AtomSet {
        &self.identity
    }

    pub fn is_symmetric(&self) -> bool {
        self.converse.iter().enumerate().all(|(a, &c)| a == c)
    }

    pub fn contains(&self, t: Triple) -> bool {
        let k = self.atom_count;
        if t.iter().any(|&a| a >= k) {
            return false;
        }
        let idx = (t[0] * k + t[1]) * k + t[2];
        self.triples[idx / 64] & (1 << (idx % 64)) != 0
    }

    /// All consistent triples in lexicographic order.
    pub fn triples(&self) -> impl Iterator<Item = Triple> + '_ {
        let k = self.atom_count;
        (0..k * k * k)
            .map(move |i| [i / (k * k), (i / k) % k, i % k])
            .filter(move |&t| self.contains(t))
    }

    pub fn triple_count(&self) -> usize {
        self.triples.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// The six Peircean transforms of `t`, deduplicated and sorted.
    pub fn peircean_transforms(&self, t: Triple) -> Vec<Triple> {
        let [a, b, c] = t;
        let cv = |x: usize| self.converse[x];
        let mut out = vec![
            [a, b, c],
            [cv(a), c, b],
            [c, cv(b), a],
            [b, cv(c), cv(a)],
            [cv(c), a, cv(b)],
            [cv(b), cv(a), cv(c)],
        ];
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Checks the two conditions characterising atom structures of
    /// nonassociative algebras, plus that converse is an involution.
    pub fn check_na(&self) -> NaReport {
        let k = self.atom_count;
        let mut report = NaReport::default();
        for a in 0..k {
            if self.converse[self.converse[a]] != a {
                report.involution.push(a);
            }
        }
        for b in 0..k {
            for c in 0..k {
                let witness = self.identity.iter().find(|&e| self.contains([e, b, c]));
                match (b == c, witness) {
                    (true, None) => report.identity.push(IdentityFailure::Missing { atom: b }),
                    (false, Some(e)) => {
                        report
                            .identity
                            .push(IdentityFailure::Spurious { identity: e, b, c })
                    }
                    _ => {}
                }
            }
        }
        for t in self.triples() {
            let [a, b, c] = t;
            let cv = |x: usize| self.converse[x];
            for required in [[cv(c), a, cv(b)], [cv(b), cv(a), cv(c)]] {
                if !self.contains(required) {
                    report.closure.push(ClosureFailure {
                        triple: t,
                        missing: required,
                    });
                }
            }
        }
        report
    }

    /// `{a} ; {b}` for single atoms.
    pub fn product(&self, a: usize, b: usize) -> &AtomSet {
        &self.products[a * self.atom_count + b]
    }

    /// Complex-algebra composition: atoms `u` with `(s, r, u)` consistent for
    /// some `s` in `lhs` and `r` in `rhs`.
    pub fn compose(&self, lhs: &AtomSet, rhs: &AtomSet) -> AtomSet {
        debug_assert_eq!(lhs.width(), self.atom_count);
        debug_assert_eq!(rhs.width(), self.atom_count);
        let mut out = AtomSet::empty(self.atom_count);
        for s in lhs.iter() {
            for r in rhs.iter() {
                out.union_with(self.product(s, r));
            }
        }
        out
    }

    pub fn converse_set(&self, set: &AtomSet) -> AtomSet {
        AtomSet::from_atoms(self.atom_count, set.iter().map(|a| self.converse[a]))
    }

    pub fn singleton(&self, atom: usize) -> AtomSet {
        AtomSet::singleton(self.atom_count, atom)
    }

    /// Associativity on atoms, which suffices since composition is additive.
    /// Returns the lexicographically least failing triple.
    pub fn is_associative(&self) -> Result<Associativity> {
        let report = self.check_na();
        if !report.is_valid() {
            return Err(Error::NotAnAtomStructure(report.violation_count()));
        }
        let k = self.atom_count;
        for a in 0..k {
            for b in 0..k {
                let ab = self.product(a, b);
                for c in 0..k {
                    let left = self.compose(ab, &self.singleton(c));
                    let right = self.compose(&self.singleton(a), self.product(b, c));
                    if left != right {
                        return Ok(Associativity::NonAssociative { witness: [a, b, c] });
                    }
                }
            }
        }
        Ok(Associativity::Associative)
    }

    pub fn to_document(&self) -> AtomStructureDocument {
        AtomStructureDocument {
            atom_count: self.atom_count,
            identity: self.identity.iter().collect(),
            converse: self.converse.clone(),
            triples: self.triples().collect(),
        }
    }

    pub fn from_document(doc: &AtomStructureDocument) -> Result<Self> {
        AtomStructure::new(
            doc.atom_count,
            doc.converse.clone(),
            doc.identity.iter().copied(),
            doc.triples.iter().copied(),
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: AtomStructureDocument = serde_json::from_str(text)?;
        Self::from_document(&doc)
    }
}

/// On-disk form of an [`AtomStructure`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomStructureDocument {
    pub atom_count: usize,
    pub identity: Vec<usize>,
    pub converse: Vec<usize>,
    pub triples: Vec<Triple>,
}
