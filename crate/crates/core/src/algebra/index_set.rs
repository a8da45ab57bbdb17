use std::fmt;

use itertools::Itertools;
use serde::{Serialize, Serializer};

use crate::{Error, Result};

/// A subset of `{1, …, ambient}`, stored strictly increasing and 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet {
    ambient: usize,
    members: Vec<usize>,
}

impl IndexSet {
    /// Builds a set from arbitrary members; they are sorted, and duplicates or
    /// members outside `1..=ambient` are rejected.
    pub fn new(ambient: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::IndexOutOfRange(format!("duplicate member in {members:?}")));
        }
        if let Some(&bad) = members.iter().find(|&&m| m == 0 || m > ambient) {
            return Err(Error::IndexOutOfRange(format!("{bad} is not in 1..={ambient}")));
        }
        Ok(IndexSet { ambient, members })
    }

    pub fn empty(ambient: usize) -> Self {
        IndexSet { ambient, members: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        IndexSet { ambient, members: (1..=ambient).collect() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    /// `[ambient] \ self`.
    pub fn complement(&self) -> IndexSet {
        IndexSet {
            ambient: self.ambient,
            members: (1..=self.ambient).filter(|&i| !self.contains(i)).collect(),
        }
    }

    pub fn sum(&self) -> usize {
        self.members.iter().sum()
    }

    /// All `size`-subsets of `{1, …, ambient}` in lexicographic order.
    pub fn subsets(ambient: usize, size: usize) -> impl Iterator<Item = IndexSet> {
        (1..=ambient)
            .combinations(size)
            .map(move |members| IndexSet { ambient, members })
    }

    /// 0-based positions, for indexing into row-major storage.
    pub(crate) fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().map(|&m| m - 1)
    }
}

impl Serialize for IndexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(&self.members)
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.members.iter().join(","))
    }
}
