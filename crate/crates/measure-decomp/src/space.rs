//! Finite measurable spaces, measurable sets as bit vectors, and families of
//! sets with sigma-closure and the lattice of families.
//!
//! A space is determined by the atoms of its sigma-algebra: an ordered list of
//! distinct block labels. Measurable sets are unions of blocks, stored as bit
//! vectors, and a family of sets is an explicit finite list. On a finite space
//! closure under countable unions coincides with closure under finite unions.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Hard cap on the number of partition blocks, so sets fit in a `u64`.
pub const MAX_BLOCKS: usize = 64;

/// Cap on the number of generators accepted by [`sigma_close`]; the closure of
/// `k` generators can have up to `2^k - 1` members.
pub const MAX_GENERATORS: usize = 16;

/// A partition-generated sigma-algebra on a finite ground set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSpace {
    labels: Arc<Vec<String>>,
}

impl FiniteSpace {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::Invalid("a space needs at least one block".into()));
        }
        if labels.len() > MAX_BLOCKS {
            return Err(Error::SizeCap {
                what: "block count",
                got: labels.len(),
                cap: MAX_BLOCKS,
            });
        }
        let distinct: BTreeSet<&String> = labels.iter().collect();
        if distinct.len() != labels.len() {
            return Err(Error::Invalid("block labels must be pairwise distinct".into()));
        }
        Ok(Self {
            labels: Arc::new(labels),
        })
    }

    /// Convenience constructor with blocks named `a1..an`.
    pub fn with_blocks(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| format!("a{i}")))
    }

    pub fn block_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, idx: usize) -> &str {
        &self.labels[idx]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// The empty set on this space.
    pub fn empty_set(&self) -> AtomSet {
        AtomSet {
            bits: 0,
            len: self.block_count(),
        }
    }

    /// The whole ground set.
    pub fn full_set(&self) -> AtomSet {
        let len = self.block_count();
        AtomSet {
            bits: mask(len),
            len,
        }
    }

    /// The set consisting of the given blocks.
    pub fn set_of(&self, blocks: &[usize]) -> AtomSet {
        let mut s = self.empty_set();
        for &b in blocks {
            assert!(b < s.len, "block index out of range");
            s.bits |= 1 << b;
        }
        s
    }

    /// Builds a set from block labels; errors on unknown labels.
    pub fn set_of_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<AtomSet> {
        let mut s = self.empty_set();
        for l in labels {
            let idx = self
                .index_of(l.as_ref())
                .ok_or_else(|| Error::Invalid(format!("unknown block label {:?}", l.as_ref())))?;
            s.bits |= 1 << idx;
        }
        Ok(s)
    }

    /// All `2^n` measurable sets of the space.
    pub fn all_subsets(&self) -> impl Iterator<Item = AtomSet> + '_ {
        let len = self.block_count();
        (0..=mask(len)).map(move |bits| AtomSet { bits, len })
    }
}

fn mask(len: usize) -> u64 {
    if len == 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// A measurable set: a union of partition blocks, stored as a bit vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AtomSet {
    bits: u64,
    len: usize,
}

impl AtomSet {
    pub fn from_bits(bits: u64, len: usize) -> Self {
        assert!(len >= 1 && len <= MAX_BLOCKS);
        assert_eq!(bits & !mask(len), 0, "bits outside the space");
        Self { bits, len }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, block: usize) -> bool {
        block < self.len && self.bits & (1 << block) != 0
    }

    pub fn cardinality(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn union(&self, other: &AtomSet) -> AtomSet {
        debug_assert_eq!(self.len, other.len);
        AtomSet {
            bits: self.bits | other.bits,
            len: self.len,
        }
    }

    pub fn intersect(&self, other: &AtomSet) -> AtomSet {
        debug_assert_eq!(self.len, other.len);
        AtomSet {
            bits: self.bits & other.bits,
            len: self.len,
        }
    }

    pub fn difference(&self, other: &AtomSet) -> AtomSet {
        debug_assert_eq!(self.len, other.len);
        AtomSet {
            bits: self.bits & !other.bits,
            len: self.len,
        }
    }

    pub fn complement(&self) -> AtomSet {
        AtomSet {
            bits: !self.bits & mask(self.len),
            len: self.len,
        }
    }

    pub fn is_subset_of(&self, other: &AtomSet) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.bits & !other.bits == 0
    }

    /// Indices of the blocks contained in the set, in increasing order.
    pub fn blocks(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&b| self.bits & (1 << b) != 0)
    }

    /// All subsets of this set (as sets of the ambient space).
    pub fn subsets(&self) -> impl Iterator<Item = AtomSet> + '_ {
        let m = self.bits;
        let len = self.len;
        // Enumerates submasks of m in increasing numeric order.
        std::iter::successors(Some(0u64), move |&sub| {
            if sub == m {
                None
            } else {
                Some(sub.wrapping_sub(m) & m)
            }
        })
        .map(move |bits| AtomSet { bits, len })
    }
}

// Canonical order: lexicographic on the bit vector (b0, b1, ...), with a set
// bit sorting above an unset one at the first differing index.
impl Ord for AtomSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        debug_assert_eq!(self.len, other.len);
        self.bits.reverse_bits().cmp(&other.bits.reverse_bits())
    }
}

impl PartialOrd for AtomSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, b) in self.blocks().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "}}")
    }
}

/// An explicit finite family of measurable sets, optionally closed under
/// (countable, hence finite) unions. Members are kept duplicate-free and in
/// canonical order so family equality is structural equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    space: FiniteSpace,
    members: Vec<AtomSet>,
    sigma_closed: bool,
}

impl SetFamily {
    pub fn new(space: FiniteSpace, members: impl IntoIterator<Item = AtomSet>) -> Result<Self> {
        let n = space.block_count();
        let mut set = BTreeSet::new();
        for m in members {
            if m.len() != n {
                return Err(Error::SpaceMismatch);
            }
            set.insert(m);
        }
        let members: Vec<AtomSet> = set.into_iter().collect();
        let sigma_closed = is_union_closed(&members);
        Ok(Self {
            space,
            members,
            sigma_closed,
        })
    }

    /// A family built from block-label generators, e.g. `[["a1"], ["a2"]]`.
    pub fn from_labels<S: AsRef<str>>(space: FiniteSpace, generators: &[Vec<S>]) -> Result<Self> {
        let members: Result<Vec<AtomSet>> = generators
            .iter()
            .map(|g| space.set_of_labels(g))
            .collect();
        Self::new(space, members?)
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn members(&self) -> &[AtomSet] {
        &self.members
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_sigma_closed(&self) -> bool {
        self.sigma_closed
    }

    pub fn contains(&self, s: &AtomSet) -> bool {
        self.members.binary_search(s).is_ok()
    }

    /// Pointwise union of all members (empty set for the empty family).
    pub fn union_of_members(&self) -> AtomSet {
        self.members
            .iter()
            .fold(self.space.empty_set(), |acc, m| acc.union(m))
    }
}

fn is_union_closed(members: &[AtomSet]) -> bool {
    for (i, a) in members.iter().enumerate() {
        for b in &members[i + 1..] {
            let u = a.union(b);
            if members.binary_search(&u).is_err() {
                return false;
            }
        }
    }
    true
}

/// Closure of a family under all unions of nonempty subcollections, computed
/// by fixpoint iteration over pairwise unions. Idempotent; the empty family
/// closes to itself.
pub fn sigma_close(family: &SetFamily) -> Result<SetFamily> {
    if family.sigma_closed {
        return Ok(family.clone());
    }
    if family.members.len() > MAX_GENERATORS {
        return Err(Error::SizeCap {
            what: "generator count",
            got: family.members.len(),
            cap: MAX_GENERATORS,
        });
    }
    let mut closed: BTreeSet<AtomSet> = family.members.iter().copied().collect();
    loop {
        let snapshot: Vec<AtomSet> = closed.iter().copied().collect();
        let before = snapshot.len();
        for (i, a) in snapshot.iter().enumerate() {
            for b in &snapshot[i + 1..] {
                closed.insert(a.union(b));
            }
        }
        if closed.len() == before {
            break;
        }
    }
    Ok(SetFamily {
        space: family.space.clone(),
        members: closed.into_iter().collect(),
        sigma_closed: true,
    })
}

/// The join of two families: the sigma-closure of their concatenation. For
/// sigma-closed inputs this is `{G, H, G union H}` over all pairs.
pub fn family_join(f: &SetFamily, g: &SetFamily) -> Result<SetFamily> {
    if f.space != g.space {
        return Err(Error::SpaceMismatch);
    }
    if f.sigma_closed && g.sigma_closed {
        let mut members: BTreeSet<AtomSet> = f.members.iter().copied().collect();
        members.extend(g.members.iter().copied());
        for a in &f.members {
            for b in &g.members {
                members.insert(a.union(b));
            }
        }
        return Ok(SetFamily {
            space: f.space.clone(),
            members: members.into_iter().collect(),
            sigma_closed: true,
        });
    }
    let concat = SetFamily::new(
        f.space.clone(),
        f.members.iter().chain(g.members.iter()).copied(),
    )?;
    sigma_close(&concat)
}

/// The meet of two families: their intersection as sets of sets. The
/// intersection of union-closed families is union-closed.
pub fn family_meet(f: &SetFamily, g: &SetFamily) -> Result<SetFamily> {
    if f.space != g.space {
        return Err(Error::SpaceMismatch);
    }
    let members: Vec<AtomSet> = f
        .members
        .iter()
        .filter(|m| g.contains(m))
        .copied()
        .collect();
    let sigma_closed = if f.sigma_closed && g.sigma_closed {
        true
    } else {
        is_union_closed(&members)
    };
    Ok(SetFamily {
        space: f.space.clone(),
        members,
        sigma_closed,
    })
}
