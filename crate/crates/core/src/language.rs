//! Word-language oracles for one-dimensional shift specs.
//!
//! The exact oracle compiles the (expanded, contiguous) forbidden words
//! into an Aho–Corasick matcher, gates matches by their earliest legal end
//! position on the one-sided lattice, and prunes the resulting automaton to
//! states that lie on legal infinite runs. Membership of a word in the
//! factor language then reduces to a nonempty state-set fold, which also
//! drives enumeration, follower sets and the step classifiers.

use std::collections::BTreeSet;

use crate::alphabet::{Alphabet, SymId};
use crate::error::{Error, Result};
use crate::monoid::MonoidKind;
use crate::pattern::ForbiddenSet;

/// A word over an alphabet, as symbol indices.
pub type Word = Vec<SymId>;

/// Enumeration/state budgets for oracle construction and use.
#[derive(Clone, Copy, Debug)]
pub struct OracleBudget {
    /// Cap on the number of contiguous forbidden words after gap expansion.
    pub max_expansion: usize,
    /// Cap on automaton states.
    pub max_states: usize,
    /// Cap on enumerated words per query.
    pub max_words: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_expansion: 200_000,
            max_states: 4_000_000,
            max_words: 4_000_000,
        }
    }
}

/// Which infinite lattice the words live on.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    /// Sequences indexed by the naturals: runs are anchored at position 0
    /// and only forward extendability is required.
    OneSided,
    /// Bi-infinite sequences: extendability is required in both directions
    /// and the language is translation invariant.
    TwoSided,
}

impl Side {
    pub fn from_kind(kind: MonoidKind) -> Result<Side> {
        match kind {
            MonoidKind::AdditiveN => Ok(Side::OneSided),
            MonoidKind::AdditiveZ => Ok(Side::TwoSided),
            _ => Err(Error::ExactnessUnavailable(format!(
                "exact word languages are defined on the one-dimensional additive lattices, not {kind}"
            ))),
        }
    }
}

/// A deterministic-by-state-set word oracle for a factor-closed language.
/// The invariant is that a state set is nonempty exactly while the word
/// read so far belongs to the language.
pub trait WordOracle {
    fn alphabet(&self) -> &Alphabet;
    /// Start set for the position-free factor language.
    fn initial(&self) -> Vec<u32>;
    fn advance(&self, states: &[u32], letter: SymId) -> Vec<u32>;
}

/// Folds a word; `None` once the set empties.
pub fn fold(o: &dyn WordOracle, start: Vec<u32>, word: &[SymId]) -> Option<Vec<u32>> {
    let mut states = start;
    if states.is_empty() {
        return None;
    }
    for &a in word {
        states = o.advance(&states, a);
        if states.is_empty() {
            return None;
        }
    }
    Some(states)
}

pub fn contains(o: &dyn WordOracle, word: &[SymId]) -> bool {
    fold(o, o.initial(), word).is_some()
}

/// All language words of exactly length `n`, in lexicographic letter order.
pub fn words_of_len(o: &dyn WordOracle, n: usize, budget: &OracleBudget) -> Result<Vec<Word>> {
    words_of_len_from(o, o.initial(), n, budget)
}

pub fn words_of_len_from(
    o: &dyn WordOracle,
    start: Vec<u32>,
    n: usize,
    budget: &OracleBudget,
) -> Result<Vec<Word>> {
    let mut out = Vec::new();
    if start.is_empty() {
        return Ok(out);
    }
    let mut word: Word = Vec::with_capacity(n);
    collect_words_exact(o, &start, n, budget, &mut word, &mut out)?;
    Ok(out)
}

fn collect_words_exact(
    o: &dyn WordOracle,
    states: &[u32],
    n: usize,
    budget: &OracleBudget,
    word: &mut Word,
    out: &mut Vec<Word>,
) -> Result<()> {
    if word.len() == n {
        out.push(word.clone());
        if out.len() > budget.max_words {
            return Err(Error::OracleBudgetExceeded(format!(
                "more than {} words of length {n}",
                budget.max_words
            )));
        }
        return Ok(());
    }
    for a in 0..o.alphabet().len() as SymId {
        let next = o.advance(states, a);
        if !next.is_empty() {
            word.push(a);
            collect_words_exact(o, &next, n, budget, word, out)?;
            word.pop();
        }
    }
    Ok(())
}

/// All language words of length 0..=n (the empty word first).
pub fn words_up_to(o: &dyn WordOracle, n: usize, budget: &OracleBudget) -> Result<Vec<Word>> {
    let mut out = vec![Vec::new()];
    collect_words_up_to(o, o.initial(), n, budget, &mut Vec::new(), &mut out)?;
    out.sort();
    Ok(out)
}

fn collect_words_up_to(
    o: &dyn WordOracle,
    states: Vec<u32>,
    n: usize,
    budget: &OracleBudget,
    word: &mut Word,
    out: &mut Vec<Word>,
) -> Result<()> {
    if word.len() == n || states.is_empty() {
        return Ok(());
    }
    for a in 0..o.alphabet().len() as SymId {
        let next = o.advance(&states, a);
        if next.is_empty() {
            continue;
        }
        word.push(a);
        out.push(word.clone());
        if out.len() > budget.max_words {
            return Err(Error::OracleBudgetExceeded(format!(
                "more than {} words up to length {n}",
                budget.max_words
            )));
        }
        collect_words_up_to(o, next, n, budget, word, out)?;
        word.pop();
    }
    Ok(())
}

/// A contiguous forbidden word with the earliest position at which an
/// occurrence may legally end (always 0 on the two-sided lattice).
#[derive(Clone, Debug)]
struct GatedWord {
    letters: Word,
    earliest_end: usize,
}

/// Expands (possibly gapped) forbidden patterns over a finite alphabet into
/// contiguous gated words.
fn expand_forbidden(f: &ForbiddenSet, side: Side, budget: &OracleBudget) -> Result<Vec<GatedWord>> {
    let mut words: Vec<GatedWord> = Vec::new();
    for p in f.patterns() {
        let coords: Vec<i64> = p
            .support()
            .iter()
            .map(|e| {
                e.as_int().ok_or_else(|| {
                    Error::ExactnessUnavailable(
                        "non-integer coordinate in forbidden pattern".into(),
                    )
                })
            })
            .collect::<Result<_>>()?;
        let lo = *coords.first().expect("nonempty pattern");
        let hi = *coords.last().expect("nonempty pattern");
        let span = (hi - lo) as usize;
        let earliest_end = match side {
            Side::OneSided => hi as usize,
            Side::TwoSided => 0,
        };
        // Fill gaps with every symbol.
        let mut partials: Vec<Word> = vec![Vec::with_capacity(span + 1)];
        for off in 0..=span as i64 {
            let coord = crate::monoid::Element::int(lo + off);
            let mut next = Vec::new();
            match p.get(&coord) {
                Some(s) => {
                    let id = f.alphabet.id_of(s).ok_or_else(|| {
                        Error::AlphabetMismatch(format!("symbol `{s}` outside alphabet"))
                    })?;
                    for mut w in partials {
                        w.push(id);
                        next.push(w);
                    }
                }
                None => {
                    for w in partials {
                        for a in 0..f.alphabet.len() as SymId {
                            let mut w2 = w.clone();
                            w2.push(a);
                            next.push(w2);
                        }
                        if next.len() > budget.max_expansion {
                            return Err(Error::OracleBudgetExceeded(format!(
                                "forbidden pattern `{p}` expands past {} contiguous words",
                                budget.max_expansion
                            )));
                        }
                    }
                }
            }
            partials = next;
        }
        for letters in partials {
            words.push(GatedWord {
                letters,
                earliest_end,
            });
        }
        if words.len() > budget.max_expansion {
            return Err(Error::OracleBudgetExceeded(format!(
                "forbidden set expands past {} contiguous words",
                budget.max_expansion
            )));
        }
    }
    Ok(words)
}

/// Aho–Corasick matcher over the forbidden words. `kill_at[q]` is the
/// earliest position at which arriving in node `q` completes some
/// forbidden occurrence (via the node itself or its suffix chain).
struct Matcher {
    goto: Vec<u32>, // node * letters + letter -> node
    kill_at: Vec<Option<usize>>,
    nodes: usize,
}

fn build_matcher(words: &[GatedWord], letters: usize) -> Matcher {
    // Trie.
    let mut children: Vec<Vec<Option<u32>>> = vec![vec![None; letters]];
    let mut kill_at: Vec<Option<usize>> = vec![None];
    for w in words {
        let mut node = 0usize;
        for &a in &w.letters {
            node = match children[node][a as usize] {
                Some(c) => c as usize,
                None => {
                    children.push(vec![None; letters]);
                    kill_at.push(None);
                    let c = children.len() - 1;
                    children[node][a as usize] = Some(c as u32);
                    c
                }
            };
        }
        kill_at[node] = Some(match kill_at[node] {
            Some(k) => k.min(w.earliest_end),
            None => w.earliest_end,
        });
    }
    // BFS goto/fail wiring.
    let nodes = children.len();
    let mut goto = vec![0u32; nodes * letters];
    let mut fail = vec![0u32; nodes];
    let mut queue = std::collections::VecDeque::new();
    for a in 0..letters {
        if let Some(c) = children[0][a] {
            goto[a] = c;
            fail[c as usize] = 0;
            queue.push_back(c);
        } else {
            goto[a] = 0;
        }
    }
    while let Some(u) = queue.pop_front() {
        let uf = fail[u as usize] as usize;
        kill_at[u as usize] = match (kill_at[u as usize], kill_at[uf]) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        for a in 0..letters {
            match children[u as usize][a] {
                Some(c) => {
                    fail[c as usize] = goto[uf * letters + a];
                    goto[u as usize * letters + a] = c;
                    queue.push_back(c);
                }
                None => {
                    goto[u as usize * letters + a] = goto[uf * letters + a];
                }
            }
        }
    }
    Matcher {
        goto,
        kill_at,
        nodes,
    }
}

/// Exact factor-language oracle for a one-dimensional shift spec with a
/// finite expanded forbidden set.
pub struct ExactOracle {
    alphabet: Alphabet,
    pub side: Side,
    letters: usize,
    /// live-state transition table: state * letters + letter -> state+1 (0 = dead)
    trans: Vec<u32>,
    /// position-free start: every live state
    start: Vec<u32>,
    /// one-sided anchored start (position 0, empty match context), if live
    anchored: Option<u32>,
    /// map from internal live ids back to (pos, node); kept for debugging
    n_live: usize,
}

impl ExactOracle {
    pub fn build(f: &ForbiddenSet, side: Side, budget: &OracleBudget) -> Result<ExactOracle> {
        let letters = f.alphabet.len();
        let words = expand_forbidden(f, side, budget)?;
        let matcher = build_matcher(&words, letters);
        let sat = match side {
            Side::OneSided => words.iter().map(|w| w.earliest_end).max().unwrap_or(0),
            Side::TwoSided => 0,
        };
        let raw_states = (sat + 1) * matcher.nodes;
        if raw_states > budget.max_states {
            return Err(Error::OracleBudgetExceeded(format!(
                "oracle automaton needs {raw_states} states (cap {})",
                budget.max_states
            )));
        }
        // Raw transition on (pos, node) pairs; u32::MAX = dead.
        let step = |state: u32, a: usize| -> u32 {
            let pos = state as usize / matcher.nodes;
            let node = state as usize % matcher.nodes;
            let target = matcher.goto[node * letters + a] as usize;
            if matcher.kill_at[target].is_some_and(|k| k <= pos) {
                return u32::MAX;
            }
            let pos2 = (pos + 1).min(sat);
            (pos2 * matcher.nodes + target) as u32
        };
        // Reachability from the anchored start (position 0, root).
        let mut reach = vec![false; raw_states];
        let mut stack = vec![0u32];
        reach[0] = true;
        while let Some(s) = stack.pop() {
            for a in 0..letters {
                let t = step(s, a);
                if t != u32::MAX && !reach[t as usize] {
                    reach[t as usize] = true;
                    stack.push(t);
                }
            }
        }
        // Iterative peeling to the live core: forward always, backward on
        // the two-sided lattice.
        let mut alive = reach.clone();
        loop {
            let mut changed = false;
            // out-degree
            for s in 0..raw_states {
                if !alive[s] {
                    continue;
                }
                let has_out = (0..letters).any(|a| {
                    let t = step(s as u32, a);
                    t != u32::MAX && alive[t as usize]
                });
                if !has_out {
                    alive[s] = false;
                    changed = true;
                }
            }
            if side == Side::TwoSided {
                let mut has_in = vec![false; raw_states];
                for s in 0..raw_states {
                    if !alive[s] {
                        continue;
                    }
                    for a in 0..letters {
                        let t = step(s as u32, a);
                        if t != u32::MAX && alive[t as usize] {
                            has_in[t as usize] = true;
                        }
                    }
                }
                for s in 0..raw_states {
                    if alive[s] && !has_in[s] {
                        alive[s] = false;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        // Compact live states.
        let mut live_id = vec![u32::MAX; raw_states];
        let mut n_live = 0u32;
        for s in 0..raw_states {
            if alive[s] {
                live_id[s] = n_live;
                n_live += 1;
            }
        }
        let mut trans = vec![0u32; n_live as usize * letters];
        for s in 0..raw_states {
            if !alive[s] {
                continue;
            }
            for a in 0..letters {
                let t = step(s as u32, a);
                trans[live_id[s] as usize * letters + a] = if t != u32::MAX && alive[t as usize] {
                    live_id[t as usize] + 1
                } else {
                    0
                };
            }
        }
        let start: Vec<u32> = (0..n_live).collect();
        let anchored = if alive[0] { Some(live_id[0]) } else { None };
        Ok(ExactOracle {
            alphabet: f.alphabet.clone(),
            side,
            letters,
            trans,
            start,
            anchored,
            n_live: n_live as usize,
        })
    }

    pub fn n_states(&self) -> usize {
        self.n_live
    }

    /// One-sided: the set of states reachable after reading exactly
    /// `steps` letters from position 0. Two-sided: the free start set
    /// (the language is translation invariant).
    pub fn states_at_offset(&self, steps: usize) -> Vec<u32> {
        match self.side {
            Side::TwoSided => self.start.clone(),
            Side::OneSided => {
                let Some(a0) = self.anchored else {
                    return Vec::new();
                };
                let mut set = vec![a0];
                for _ in 0..steps {
                    let mut next = BTreeSet::new();
                    for &s in &set {
                        for a in 0..self.letters {
                            let t = self.trans[s as usize * self.letters + a];
                            if t != 0 {
                                next.insert(t - 1);
                            }
                        }
                    }
                    set = next.into_iter().collect();
                    if set.is_empty() {
                        break;
                    }
                }
                set
            }
        }
    }

    /// Anchored start for one-sided membership at position 0; on the
    /// two-sided lattice this is the free start.
    pub fn anchored_initial(&self) -> Vec<u32> {
        match self.side {
            Side::TwoSided => self.start.clone(),
            Side::OneSided => self.anchored.map(|s| vec![s]).unwrap_or_default(),
        }
    }
}

impl WordOracle for ExactOracle {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn initial(&self) -> Vec<u32> {
        self.start.clone()
    }

    fn advance(&self, states: &[u32], letter: SymId) -> Vec<u32> {
        let mut out: Vec<u32> = states
            .iter()
            .filter_map(|&s| {
                let t = self.trans[s as usize * self.letters + letter as usize];
                t.checked_sub(1)
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}
