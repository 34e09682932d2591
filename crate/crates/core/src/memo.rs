//! Shared memo table for recursion results.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigUint;
use parking_lot::RwLock;

use crate::error::{Error, Result};
use crate::severi::SeveriKey;

/// Which recursion a memoized value belongs to.
///
/// Total degrees sort before irreducible ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Total,
    Irreducible,
}

impl Kind {
    pub fn tag(self) -> char {
        match self {
            Kind::Total => 'T',
            Kind::Irreducible => 'I',
        }
    }

    pub fn from_tag(s: &str) -> Option<Kind> {
        match s {
            "T" => Some(Kind::Total),
            "I" => Some(Kind::Irreducible),
            _ => None,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag())
    }
}

/// Map from `(kind, key)` to a degree, with hit/miss counters.
///
/// Safe to share between threads. Inserting a key twice is accepted only when
/// both values agree.
#[derive(Default)]
pub struct MemoStore {
    map: RwLock<HashMap<(Kind, SeveriKey), BigUint>>,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl MemoStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// Lookup that updates the hit/miss counters.
    pub fn lookup(&self, kind: Kind, key: &SeveriKey) -> Option<BigUint> {
        let found = self.map.read().get(&(kind, key.clone())).cloned();
        let counter = if found.is_some() {
            &self.hits
        } else {
            &self.misses
        };
        counter.fetch_add(1, Ordering::Relaxed);
        found
    }

    /// Lookup without touching the counters.
    pub fn get(&self, kind: Kind, key: &SeveriKey) -> Option<BigUint> {
        self.map.read().get(&(kind, key.clone())).cloned()
    }

    pub fn insert(&self, kind: Kind, key: SeveriKey, value: BigUint) -> Result<()> {
        let mut map = self.map.write();
        match map.get(&(kind, key.clone())) {
            Some(old) if *old != value => Err(Error::Integrity(format!(
                "conflicting values for {kind} {key}: {old} vs {value}"
            ))),
            Some(_) => Ok(()),
            None => {
                map.insert((kind, key), value);
                Ok(())
            }
        }
    }

    /// Union of two stores; any disagreement is an integrity error.
    pub fn merge(&self, other: &MemoStore) -> Result<()> {
        for (kind, key, value) in other.entries() {
            self.insert(kind, key, value)?;
        }
        Ok(())
    }

    /// All records sorted by `(kind, d, δ, α, β)`.
    pub fn entries(&self) -> Vec<(Kind, SeveriKey, BigUint)> {
        let mut v: Vec<_> = self
            .map
            .read()
            .iter()
            .map(|((k, key), val)| (*k, key.clone(), val.clone()))
            .collect();
        v.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        v
    }

    pub fn len(&self) -> usize {
        self.map.read().len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.read().is_empty()
    }

    pub fn hits(&self) -> u64 {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> u64 {
        self.misses.load(Ordering::Relaxed)
    }

    pub fn reset_stats(&self) {
        self.hits.store(0, Ordering::Relaxed);
        self.misses.store(0, Ordering::Relaxed);
    }

    /// Same contents, ignoring counters.
    pub fn same_contents(&self, other: &MemoStore) -> bool {
        *self.map.read() == *other.map.read()
    }
}

impl fmt::Debug for MemoStore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MemoStore")
            .field("entries", &self.len())
            .field("hits", &self.hits())
            .field("misses", &self.misses())
            .finish()
    }
}
