//! Symbols and alphabets. Symbols are opaque tokens compared by identity;
//! alphabets are finite ordered symbol lists, optionally tagged as the
//! truncation of an infinite family.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An opaque symbol token. Cheap to clone.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(s: impl AsRef<str>) -> Self {
        Symbol(Arc::from(s.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{}`", self.0)
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Self {
        Symbol::new(s)
    }
}

/// Index of a symbol within an alphabet.
pub type SymId = u32;

/// A finite ordered alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<Symbol>,
    index: BTreeMap<Symbol, SymId>,
    /// Present when this alphabet truncates an infinite family at a bound.
    pub truncation: Option<u32>,
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = Symbol>) -> Result<Self> {
        let symbols: Vec<Symbol> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(Error::InvalidInput("alphabet must be nonempty".into()));
        }
        let mut index = BTreeMap::new();
        for (i, s) in symbols.iter().enumerate() {
            if index.insert(s.clone(), i as SymId).is_some() {
                return Err(Error::InvalidInput(format!(
                    "duplicate symbol `{s}` in alphabet"
                )));
            }
        }
        Ok(Alphabet {
            symbols,
            index,
            truncation: None,
        })
    }

    pub fn from_strs<S: AsRef<str>>(strs: impl IntoIterator<Item = S>) -> Result<Self> {
        Alphabet::new(strs.into_iter().map(|s| Symbol::new(s)))
    }

    pub fn with_truncation(mut self, bound: u32) -> Self {
        self.truncation = Some(bound);
        self
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn contains(&self, s: &Symbol) -> bool {
        self.index.contains_key(s)
    }

    pub fn id_of(&self, s: &Symbol) -> Option<SymId> {
        self.index.get(s).copied()
    }

    pub fn symbol(&self, id: SymId) -> &Symbol {
        &self.symbols[id as usize]
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn iter(&self) -> impl Iterator<Item = &Symbol> {
        self.symbols.iter()
    }

    pub fn is_disjoint_from(&self, other: &Alphabet) -> bool {
        self.symbols.iter().all(|s| !other.contains(s))
    }

    /// Union of disjoint alphabets, preserving argument order.
    pub fn disjoint_union(parts: &[&Alphabet]) -> Result<Alphabet> {
        let mut all = Vec::new();
        for (i, a) in parts.iter().enumerate() {
            for b in parts.iter().skip(i + 1) {
                for s in a.iter() {
                    if b.contains(s) {
                        return Err(Error::NonDisjointAlphabets(s.to_string()));
                    }
                }
            }
            all.extend(a.iter().cloned());
        }
        Alphabet::new(all)
    }
}
