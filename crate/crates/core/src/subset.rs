use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A subset of a finite carrier `0..domain`, stored as a dense bit-set.
///
/// Subsets order lexicographically by their sorted member lists, so the
/// ordering is independent of the word layout.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    domain: usize,
    words: Vec<u64>,
}

const BITS: usize = u64::BITS as usize;

impl Subset {
    pub fn empty(domain: usize) -> Self {
        Self {
            domain,
            words: vec![0; domain.div_ceil(BITS)],
        }
    }

    pub fn full(domain: usize) -> Self {
        let mut s = Self::empty(domain);
        for i in 0..domain {
            s.insert(i);
        }
        s
    }

    pub fn singleton(domain: usize, element: usize) -> Self {
        let mut s = Self::empty(domain);
        s.insert(element);
        s
    }

    /// Builds a subset, rejecting out-of-range indices.
    pub fn from_indices<I>(domain: usize, indices: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut s = Self::empty(domain);
        for i in indices {
            if i >= domain {
                return Err(Error::OutOfRange {
                    element: i,
                    size: domain,
                });
            }
            s.insert(i);
        }
        Ok(s)
    }

    /// The subset whose members are the set bits of `mask`.
    pub fn from_mask(domain: usize, mask: u64) -> Self {
        let mut s = Self::empty(domain);
        if domain > 0 {
            let keep = if domain >= BITS {
                u64::MAX
            } else {
                (1u64 << domain) - 1
            };
            s.words[0] = mask & keep;
        }
        s
    }

    pub fn domain(&self) -> usize {
        self.domain
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, element: usize) -> bool {
        element < self.domain && self.words[element / BITS] & (1 << (element % BITS)) != 0
    }

    /// Inserts `element`; returns true if it was not already present.
    pub fn insert(&mut self, element: usize) -> bool {
        assert!(
            element < self.domain,
            "element {element} out of range {}",
            self.domain
        );
        let word = &mut self.words[element / BITS];
        let before = *word;
        *word |= 1 << (element % BITS);
        *word != before
    }

    pub fn remove(&mut self, element: usize) -> bool {
        if element >= self.domain {
            return false;
        }
        let word = &mut self.words[element / BITS];
        let before = *word;
        *word &= !(1 << (element % BITS));
        *word != before
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!(self.domain, other.domain, "subsets over different carriers");
        Self {
            domain: self.domain,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn union_with(&mut self, other: &Self) {
        assert_eq!(self.domain, other.domain, "subsets over different carriers");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        assert_eq!(self.domain, other.domain, "subsets over different carriers");
        self.words
            .iter()
            .zip(&other.words)
            .all(|(&a, &b)| a & !b == 0)
    }

    pub fn is_proper_subset(&self, other: &Self) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn intersects(&self, other: &Self) -> bool {
        assert_eq!(self.domain, other.domain, "subsets over different carriers");
        self.words
            .iter()
            .zip(&other.words)
            .any(|(&a, &b)| a & b != 0)
    }

    /// Every subset of `0..domain`, in mask order. Only sensible for small domains.
    pub fn all(domain: usize) -> impl Iterator<Item = Subset> {
        assert!(
            domain < BITS,
            "cannot enumerate subsets of {domain} elements"
        );
        (0u64..(1u64 << domain)).map(move |m| Subset::from_mask(domain, m))
    }

    /// Every subset of the given members, in mask order over `members`.
    pub fn subsets_of(&self) -> impl Iterator<Item = Subset> + '_ {
        let members = self.to_vec();
        assert!(members.len() < BITS, "too many members to enumerate");
        let domain = self.domain;
        (0u64..(1u64 << members.len())).map(move |m| {
            let mut s = Subset::empty(domain);
            for (bit, &e) in members.iter().enumerate() {
                if m >> bit & 1 == 1 {
                    s.insert(e);
                }
            }
            s
        })
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * BITS + bit);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

impl<'a> IntoIterator for &'a Subset {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl serde::Serialize for Subset {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter()
            .cmp(other.iter())
            .then(self.domain.cmp(&other.domain))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}
