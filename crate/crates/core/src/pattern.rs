//! Finite patterns and forbidden sets: the raw material of shift spaces.

use std::collections::BTreeMap;
use std::fmt;

use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};
use crate::monoid::{Element, IndexSet, MonoidSpec};

/// A finite partial configuration: a map from lattice points to symbols.
/// Iteration order is the canonical index order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Pattern {
    entries: BTreeMap<Element, Symbol>,
}

impl Pattern {
    pub fn new(entries: impl IntoIterator<Item = (Element, Symbol)>) -> Result<Self> {
        let entries: BTreeMap<Element, Symbol> = entries.into_iter().collect();
        if entries.is_empty() {
            return Err(Error::InvalidInput("pattern must be nonempty".into()));
        }
        Ok(Pattern { entries })
    }

    /// The unconstrained pattern. Only meaningful as a cylinder constraint
    /// (it denotes the whole space); forbidden sets reject it.
    pub fn unconstrained() -> Self {
        Pattern {
            entries: BTreeMap::new(),
        }
    }

    /// Builds a one-dimensional word pattern at consecutive integer
    /// coordinates starting from `start`.
    pub fn word(start: i64, symbols: impl IntoIterator<Item = Symbol>) -> Result<Self> {
        Pattern::new(
            symbols
                .into_iter()
                .enumerate()
                .map(|(i, s)| (Element::int(start + i as i64), s)),
        )
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support(&self) -> IndexSet {
        IndexSet::new(self.entries.keys().cloned())
    }

    pub fn get(&self, e: &Element) -> Option<&Symbol> {
        self.entries.get(e)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Element, &Symbol)> {
        self.entries.iter()
    }

    pub fn insert(&mut self, e: Element, s: Symbol) {
        self.entries.insert(e, s);
    }

    /// The g-translate: entries re-indexed by i -> g·i.
    pub fn translate(&self, m: &MonoidSpec, g: &Element) -> Result<Pattern> {
        let mut entries = BTreeMap::new();
        for (i, s) in &self.entries {
            entries.insert(m.op(g, i)?, s.clone());
        }
        Ok(Pattern { entries })
    }

    pub fn restrict(&self, set: &IndexSet) -> Pattern {
        Pattern {
            entries: self
                .entries
                .iter()
                .filter(|(e, _)| set.contains(e))
                .map(|(e, s)| (e.clone(), s.clone()))
                .collect(),
        }
    }

    /// True iff the supports are disjoint or the patterns agree wherever
    /// both are defined.
    pub fn compatible_with(&self, other: &Pattern) -> bool {
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small
            .entries
            .iter()
            .all(|(e, s)| big.get(e).is_none_or(|t| t == s))
    }

    /// True iff some coordinate is present in both with different symbols.
    pub fn conflicts_with(&self, other: &Pattern) -> bool {
        !self.compatible_with(other)
    }

    /// Pointwise merge; fails on conflict.
    pub fn merged_with(&self, other: &Pattern) -> Option<Pattern> {
        if self.conflicts_with(other) {
            return None;
        }
        let mut entries = self.entries.clone();
        for (e, s) in &other.entries {
            entries.insert(e.clone(), s.clone());
        }
        Some(Pattern { entries })
    }

    /// Literal subpattern test: support containment plus agreement, with
    /// no translation. This is a partial order on patterns.
    pub fn is_subpattern_of(&self, w: &Pattern) -> bool {
        self.entries.iter().all(|(e, s)| w.get(e) == Some(s))
    }

    pub fn uses_alphabet(&self, alphabet: &Alphabet) -> bool {
        self.entries.values().all(|s| alphabet.contains(s))
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(e, s)| format!("{e}:{s}"))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Literal subpattern test (no translation), as a free function.
pub fn is_subpattern(u: &Pattern, w: &Pattern) -> bool {
    u.is_subpattern_of(w)
}

/// True iff some translate of `p` occurs inside `w`: there is g with
/// g·support(p) inside support(w) and agreement there. Returns the
/// translation amount as a witness.
pub fn occurs_in(p: &Pattern, w: &Pattern, m: &MonoidSpec) -> Result<Option<Element>> {
    let support = p.support();
    let anchor = match support.first() {
        Some(a) => a.clone(),
        None => return Ok(Some(m.identity())),
    };
    let mut seen = Vec::new();
    for (j, _) in w.iter() {
        let Some(g) = m.solve_left(&anchor, j)? else {
            continue;
        };
        if seen.contains(&g) {
            continue;
        }
        seen.push(g.clone());
        let mut all = true;
        for (i, s) in p.iter() {
            let gi = m.op(&g, i)?;
            if w.get(&gi) != Some(s) {
                all = false;
                break;
            }
        }
        if all {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// Tag recording that a forbidden set is the bound-`bound` expansion of a
/// named parameterized family. Regeneration at other bounds goes through
/// the fixture registry.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FamilyTag {
    pub name: String,
    pub bound: u32,
}

/// A finite explicit set of forbidden patterns over an alphabet and monoid.
/// Parameterized families are expanded eagerly at construction and tagged.
#[derive(Clone, PartialEq, Debug)]
pub struct ForbiddenSet {
    pub monoid: MonoidSpec,
    pub alphabet: Alphabet,
    patterns: Vec<Pattern>,
    pub family: Option<FamilyTag>,
}

impl ForbiddenSet {
    pub fn new(
        monoid: MonoidSpec,
        alphabet: Alphabet,
        patterns: impl IntoIterator<Item = Pattern>,
    ) -> Result<Self> {
        let mut ps: Vec<Pattern> = patterns.into_iter().collect();
        ps.sort();
        ps.dedup();
        for p in &ps {
            if p.is_empty() {
                return Err(Error::InvalidInput(
                    "forbidden patterns must be nonempty".into(),
                ));
            }
            if !p.uses_alphabet(&alphabet) {
                return Err(Error::AlphabetMismatch(format!(
                    "forbidden pattern `{p}` uses symbols outside the alphabet"
                )));
            }
            for (e, _) in p.iter() {
                monoid.validate(e)?;
            }
        }
        Ok(ForbiddenSet {
            monoid,
            alphabet,
            patterns: ps,
            family: None,
        })
    }

    pub fn empty(monoid: MonoidSpec, alphabet: Alphabet) -> Self {
        ForbiddenSet {
            monoid,
            alphabet,
            patterns: Vec::new(),
            family: None,
        }
    }

    pub fn with_family(mut self, name: impl Into<String>, bound: u32) -> Self {
        self.family = Some(FamilyTag {
            name: name.into(),
            bound,
        });
        self
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    pub fn is_explicit_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    /// M_F: the union of all pattern supports.
    pub fn index_union(&self) -> IndexSet {
        let mut u = IndexSet::empty();
        for p in &self.patterns {
            u = u.union(&p.support());
        }
        u
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(s: &str) -> Symbol {
        Symbol::new(s)
    }

    fn binary() -> Alphabet {
        Alphabet::from_strs(["0", "1"]).unwrap()
    }

    fn golden_forbidden() -> ForbiddenSet {
        let p = Pattern::word(0, [sym("1"), sym("1")]).unwrap();
        ForbiddenSet::new(MonoidSpec::additive_z(), binary(), [p]).unwrap()
    }

    #[test]
    fn index_union_examples() {
        assert_eq!(
            golden_forbidden().index_union(),
            IndexSet::new([Element::int(0), Element::int(1)])
        );

        // The two-letter shift over the multiplicative naturals forcing
        // x_g = x_{2g}: forbidden mismatches live at coordinates {1, 2}.
        let ab = Alphabet::from_strs(["a", "b"]).unwrap();
        let m = MonoidSpec::multiplicative_nstar();
        let p1 = Pattern::new([(Element::nat(1), sym("a")), (Element::nat(2), sym("b"))]).unwrap();
        let p2 = Pattern::new([(Element::nat(1), sym("b")), (Element::nat(2), sym("a"))]).unwrap();
        let f = ForbiddenSet::new(m, ab, [p1, p2]).unwrap();
        assert_eq!(
            f.index_union(),
            IndexSet::new([Element::nat(1), Element::nat(2)])
        );

        // A truncated family pairing coordinate 0 with each k <= K.
        let k = 5;
        let alpha = Alphabet::from_strs((0..=k).map(|i| i.to_string())).unwrap();
        let pats: Vec<Pattern> = (1..=k as i64)
            .map(|i| {
                Pattern::new([
                    (Element::int(0), sym("0")),
                    (Element::int(i), sym(&i.to_string())),
                ])
                .unwrap()
            })
            .collect();
        let f = ForbiddenSet::new(MonoidSpec::additive_n(), alpha, pats).unwrap();
        assert_eq!(
            f.index_union(),
            IndexSet::new((0..=k as i64).map(Element::int))
        );
    }

    #[test]
    fn index_union_is_additive_over_unions() {
        let f1 = golden_forbidden();
        let p = Pattern::word(3, [sym("0")]).unwrap();
        let f2 = ForbiddenSet::new(MonoidSpec::additive_z(), binary(), [p]).unwrap();
        let joint = ForbiddenSet::new(
            MonoidSpec::additive_z(),
            binary(),
            f1.patterns().iter().chain(f2.patterns()).cloned(),
        )
        .unwrap();
        assert_eq!(
            joint.index_union(),
            f1.index_union().union(&f2.index_union())
        );
    }

    #[test]
    fn occurs_in_examples() {
        let m = MonoidSpec::additive_z();
        let p = Pattern::word(0, [sym("1"), sym("1")]).unwrap();
        let w = Pattern::word(0, [sym("0"), sym("1"), sym("1"), sym("0")]).unwrap();
        assert_eq!(occurs_in(&p, &w, &m).unwrap(), Some(Element::int(1)));
        let w = Pattern::word(0, [sym("0"), sym("1"), sym("0"), sym("1")]).unwrap();
        assert_eq!(occurs_in(&p, &w, &m).unwrap(), None);

        let ns = MonoidSpec::multiplicative_nstar();
        let p = Pattern::new([(Element::nat(1), sym("a")), (Element::nat(2), sym("b"))]).unwrap();
        let mut w = Pattern::new((1..=8u64).map(|g| (Element::nat(g), sym("z")))).unwrap();
        w.insert(Element::nat(3), sym("a"));
        w.insert(Element::nat(6), sym("b"));
        assert_eq!(occurs_in(&p, &w, &ns).unwrap(), Some(Element::nat(3)));
    }

    #[test]
    fn occurs_in_is_translation_invariant_on_groups() {
        let m = MonoidSpec::additive_z();
        let p = Pattern::word(0, [sym("1"), sym("1")]).unwrap();
        let w = Pattern::word(0, [sym("1"), sym("1"), sym("0")]).unwrap();
        for g in -5..5 {
            let wt = w.translate(&m, &Element::int(g)).unwrap();
            assert_eq!(
                occurs_in(&p, &w, &m).unwrap().is_some(),
                occurs_in(&p, &wt, &m).unwrap().is_some()
            );
        }
    }

    #[test]
    fn subpattern_examples() {
        let u = Pattern::new([(Element::int(0), sym("1"))]).unwrap();
        let w = Pattern::new([(Element::int(0), sym("1")), (Element::int(2), sym("0"))]).unwrap();
        assert!(is_subpattern(&u, &w));
        let v = Pattern::new([(Element::int(1), sym("1"))]).unwrap();
        assert!(!is_subpattern(&v, &w));
        assert!(is_subpattern(&w, &w));
    }

    #[test]
    fn subpattern_is_a_partial_order() {
        let a = Pattern::new([(Element::int(0), sym("1"))]).unwrap();
        let b = Pattern::new([(Element::int(0), sym("1")), (Element::int(1), sym("0"))]).unwrap();
        let c = Pattern::new([
            (Element::int(0), sym("1")),
            (Element::int(1), sym("0")),
            (Element::int(2), sym("0")),
        ])
        .unwrap();
        // reflexive, antisymmetric, transitive on a chain
        assert!(is_subpattern(&a, &a));
        assert!(is_subpattern(&a, &b) && is_subpattern(&b, &c) && is_subpattern(&a, &c));
        assert!(!(is_subpattern(&b, &a) && is_subpattern(&a, &b)) || a == b);
    }

    #[test]
    fn forbidden_set_rejects_foreign_symbols() {
        let p = Pattern::word(0, [sym("2")]).unwrap();
        assert!(ForbiddenSet::new(MonoidSpec::additive_z(), binary(), [p]).is_err());
    }
}
