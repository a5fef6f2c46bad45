//! Shift spaces as computational objects: window admissibility, membership
//! of eventually periodic configurations, language enumeration, and the
//! union/intersection constructions.

use std::collections::BTreeSet;

use crate::alphabet::{Alphabet, SymId, Symbol};
use crate::error::{Error, Result};
use crate::language::{self, ExactOracle, OracleBudget, Side, WordOracle};
use crate::monoid::{Element, IndexSet, MonoidKind, MonoidSpec};
use crate::pattern::{ForbiddenSet, Pattern};

/// A shift space presented by an alphabet, an index monoid and a finite
/// (expanded) forbidden set.
#[derive(Clone, PartialEq, Debug)]
pub struct ShiftSpec {
    pub alphabet: Alphabet,
    pub monoid: MonoidSpec,
    pub forbidden: ForbiddenSet,
    /// Declared memory window containing the forbidden supports.
    pub step_hint: Option<IndexSet>,
    /// Retained by `union` so per-component analyses stay available.
    pub components: Vec<ShiftSpec>,
}

impl ShiftSpec {
    pub fn new(forbidden: ForbiddenSet) -> Self {
        ShiftSpec {
            alphabet: forbidden.alphabet.clone(),
            monoid: forbidden.monoid,
            forbidden,
            step_hint: None,
            components: Vec::new(),
        }
    }

    pub fn full_shift(monoid: MonoidSpec, alphabet: Alphabet) -> Self {
        ShiftSpec::new(ForbiddenSet::empty(monoid, alphabet))
    }

    pub fn with_step_hint(mut self, hint: IndexSet) -> Result<Self> {
        if !self.forbidden.index_union().is_subset_of(&hint) {
            return Err(Error::InvalidInput(
                "step hint must contain every forbidden coordinate".into(),
            ));
        }
        self.step_hint = Some(hint);
        Ok(self)
    }

    pub fn is_full_shift(&self) -> bool {
        self.forbidden.is_explicit_empty()
    }

    /// The memory window: the declared hint if present, else M_F.
    pub fn memory_window(&self) -> IndexSet {
        self.step_hint
            .clone()
            .unwrap_or_else(|| self.forbidden.index_union())
    }

    pub fn side(&self) -> Result<Side> {
        Side::from_kind(self.monoid.kind)
    }

    /// Builds the exact factor-language oracle (one-dimensional only).
    pub fn exact_oracle(&self, budget: &OracleBudget) -> Result<ExactOracle> {
        ExactOracle::build(&self.forbidden, self.side()?, budget)
    }

    pub fn word_to_symbols(&self, w: &[SymId]) -> Vec<Symbol> {
        w.iter().map(|&i| self.alphabet.symbol(i).clone()).collect()
    }
}

/// A fully specified finite window: a pattern read as "these coordinates,
/// exactly these symbols".
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WindowConfig(pub Pattern);

impl WindowConfig {
    pub fn pattern(&self) -> &Pattern {
        &self.0
    }

    /// Convenience constructor for contiguous one-dimensional windows.
    pub fn word_at(start: i64, symbols: impl IntoIterator<Item = Symbol>) -> Result<Self> {
        Ok(WindowConfig(Pattern::word(start, symbols)?))
    }
}

/// Admissibility verdicts. `Inadmissible` always carries a checkable
/// witness: the forbidden pattern and the translation where it occurs.
#[derive(Clone, PartialEq, Debug)]
pub enum Verdict {
    Admissible,
    Inadmissible(OccurrenceWitness),
    Undetermined { budget_used: u64 },
}

#[derive(Clone, PartialEq, Debug)]
pub struct OccurrenceWitness {
    pub position: Element,
    pub pattern: Pattern,
}

/// Membership verdict together with the expansion bound it is relative to
/// (present when the forbidden set truncates a parameterized family).
#[derive(Clone, PartialEq, Debug)]
pub struct MemberVerdict {
    pub verdict: Verdict,
    pub expansion_bound: Option<u32>,
}

/// Checks a finite window against every translate of every forbidden
/// pattern that fits inside it. Never returns `Undetermined`.
pub fn locally_admissible(s: &ShiftSpec, w: &WindowConfig) -> Result<Verdict> {
    for p in s.forbidden.patterns() {
        if let Some(g) = crate::pattern::occurs_in(p, w.pattern(), &s.monoid)? {
            return Ok(Verdict::Inadmissible(OccurrenceWitness {
                position: g,
                pattern: p.clone(),
            }));
        }
    }
    Ok(Verdict::Admissible)
}

/// An eventually periodic configuration on the one-dimensional lattices.
/// On the naturals it is preperiod·period^inf; on the integers a left
/// period extends leftward from coordinate -1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EventuallyPeriodicConfig {
    pub left_period: Option<Vec<Symbol>>,
    pub preperiod: Vec<Symbol>,
    pub period: Vec<Symbol>,
}

impl EventuallyPeriodicConfig {
    pub fn one_sided(preperiod: Vec<Symbol>, period: Vec<Symbol>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidInput("period must be nonempty".into()));
        }
        Ok(EventuallyPeriodicConfig {
            left_period: None,
            preperiod,
            period,
        })
    }

    pub fn two_sided(
        left_period: Vec<Symbol>,
        core: Vec<Symbol>,
        period: Vec<Symbol>,
    ) -> Result<Self> {
        if period.is_empty() || left_period.is_empty() {
            return Err(Error::InvalidInput("periods must be nonempty".into()));
        }
        Ok(EventuallyPeriodicConfig {
            left_period: Some(left_period),
            preperiod: core,
            period,
        })
    }

    /// The symbol at integer coordinate g.
    pub fn symbol_at(&self, g: i64) -> Result<&Symbol> {
        if g >= 0 {
            let g = g as usize;
            if g < self.preperiod.len() {
                Ok(&self.preperiod[g])
            } else {
                Ok(&self.period[(g - self.preperiod.len()) % self.period.len()])
            }
        } else {
            let lp = self.left_period.as_ref().ok_or_else(|| {
                Error::InvalidInput("no left period for a negative coordinate".into())
            })?;
            // coordinate -1 reads the last left-period symbol
            let from_right = ((-g - 1) as usize) % lp.len();
            Ok(&lp[lp.len() - 1 - from_right])
        }
    }
}

/// Exact membership for eventually periodic configurations: the finitely
/// many distinct forbidden-window placements are enumerated and checked.
pub fn member(s: &ShiftSpec, c: &EventuallyPeriodicConfig, budget: u64) -> Result<MemberVerdict> {
    match s.monoid.kind {
        MonoidKind::AdditiveN | MonoidKind::AdditiveZ => {}
        kind => return Err(Error::UnsupportedMonoid { op: "member", kind }),
    }
    let two_sided = s.monoid.kind == MonoidKind::AdditiveZ;
    if two_sided && c.left_period.is_none() {
        return Err(Error::InvalidInput(
            "two-sided membership needs a left period".into(),
        ));
    }
    let expansion_bound = s.forbidden.family.as_ref().map(|f| f.bound);
    if s.forbidden.is_explicit_empty() {
        return Ok(MemberVerdict {
            verdict: Verdict::Admissible,
            expansion_bound,
        });
    }
    let mf = s.forbidden.index_union();
    let m_lo = mf.first().and_then(Element::as_int).unwrap_or(0);
    let m_hi = mf.last().and_then(Element::as_int).unwrap_or(0);
    let span = m_hi - m_lo;
    let p_r = c.period.len() as i64;
    // Window placements g and g + period read identical symbols once the
    // window sits wholly inside a periodic zone, so checking one period
    // past each zone boundary is exhaustive.
    let (g_lo, g_hi) = if two_sided {
        let p_l = c.left_period.as_ref().unwrap().len() as i64;
        (
            -(m_hi.max(0) + p_l + span + 2),
            c.preperiod.len() as i64 + p_r + span + 2 - m_lo,
        )
    } else {
        (0, c.preperiod.len() as i64 + p_r + span + 2)
    };
    let count = (g_hi - g_lo + 1).max(0) as u64;
    if count > budget {
        return Ok(MemberVerdict {
            verdict: Verdict::Undetermined {
                budget_used: budget,
            },
            expansion_bound,
        });
    }
    for g in g_lo..=g_hi {
        if !two_sided && g < 0 {
            continue;
        }
        for p in s.forbidden.patterns() {
            let mut all = true;
            for (i, sym) in p.iter() {
                let coord = g + i.as_int().expect("1-d support");
                if !two_sided && coord < 0 {
                    all = false;
                    break;
                }
                if c.symbol_at(coord)? != sym {
                    all = false;
                    break;
                }
            }
            if all {
                return Ok(MemberVerdict {
                    verdict: Verdict::Inadmissible(OccurrenceWitness {
                        position: Element::int(g),
                        pattern: p.clone(),
                    }),
                    expansion_bound,
                });
            }
        }
    }
    Ok(MemberVerdict {
        verdict: Verdict::Admissible,
        expansion_bound,
    })
}

/// How a language query was answered.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum Exactness {
    Exact,
    /// A superset: patterns extendable to a locally admissible window
    /// inflated by the given metric depth.
    LocallyAdmissibleAtDepth(f64),
}

#[derive(Clone, Debug)]
pub struct LanguageResult {
    pub patterns: Vec<Pattern>,
    pub exactness: Exactness,
    pub expansion_bound: Option<u32>,
}

#[derive(Clone, Copy, PartialEq, Debug)]
pub enum LanguageMode {
    Exact,
    Local { depth: f64 },
}

/// Enumerates W_N. Exact mode requires a one-dimensional lattice, finite
/// alphabet and finite expanded forbidden set; local mode works on every
/// supported monoid and returns an explicitly labeled superset.
pub fn language(
    s: &ShiftSpec,
    window: &IndexSet,
    mode: LanguageMode,
    budget: &OracleBudget,
) -> Result<LanguageResult> {
    if window.is_empty() {
        return Err(Error::InvalidInput(
            "language window must be nonempty".into(),
        ));
    }
    let expansion_bound = s.forbidden.family.as_ref().map(|f| f.bound);
    match mode {
        LanguageMode::Exact => {
            let oracle = s.exact_oracle(budget)?;
            let lo = window.first().and_then(Element::as_int).ok_or_else(|| {
                Error::ExactnessUnavailable("window has non-integer coordinates".into())
            })?;
            let hi = window.last().and_then(Element::as_int).unwrap();
            let n = (hi - lo + 1) as usize;
            let start = match oracle.side {
                Side::TwoSided => oracle.initial(),
                Side::OneSided => oracle.states_at_offset(lo.max(0) as usize),
            };
            let words = language::words_of_len_from(&oracle, start, n, budget)?;
            let mut seen: BTreeSet<Pattern> = BTreeSet::new();
            for w in words {
                let entries = window.iter().map(|e| {
                    let off = (e.as_int().unwrap() - lo) as usize;
                    (e.clone(), s.alphabet.symbol(w[off]).clone())
                });
                seen.insert(Pattern::new(entries)?);
            }
            Ok(LanguageResult {
                patterns: seen.into_iter().collect(),
                exactness: Exactness::Exact,
                expansion_bound,
            })
        }
        LanguageMode::Local { depth } => {
            let inflated = if depth > 0.0 {
                let mut u = IndexSet::empty();
                for g in window.iter() {
                    u = u.union(&s.monoid.ball(g, depth)?);
                }
                u.union(window)
            } else {
                window.clone()
            };
            let patterns = locally_admissible_windows(s, &inflated, window, budget)?;
            Ok(LanguageResult {
                patterns,
                exactness: Exactness::LocallyAdmissibleAtDepth(depth),
                expansion_bound,
            })
        }
    }
}

/// Enumerates total assignments on `universe` that are locally admissible,
/// restricted to `window`, with pruning as soon as a forbidden translate
/// completes.
fn locally_admissible_windows(
    s: &ShiftSpec,
    universe: &IndexSet,
    window: &IndexSet,
    budget: &OracleBudget,
) -> Result<Vec<Pattern>> {
    let cells: Vec<&Element> = universe.iter().collect();
    let letters = s.alphabet.len();
    let size_estimate = (letters as f64).powi(cells.len() as i32);
    if size_estimate > budget.max_words as f64 {
        return Err(Error::OracleBudgetExceeded(format!(
            "local enumeration over {} cells exceeds the word budget",
            cells.len()
        )));
    }
    let index_of = |e: &Element| cells.binary_search_by(|c| (*c).cmp(e)).ok();

    // Fully embedded forbidden-pattern translates, grouped by the last
    // universe cell they touch.
    let mut instances_by_trigger: Vec<Vec<Vec<(usize, SymId)>>> = vec![Vec::new(); cells.len()];
    for p in s.forbidden.patterns() {
        let anchor = p.support().first().cloned().expect("nonempty");
        let mut seen_g: Vec<Element> = Vec::new();
        for j in universe.iter() {
            let Some(g) = s.monoid.solve_left(&anchor, j)? else {
                continue;
            };
            if seen_g.contains(&g) {
                continue;
            }
            seen_g.push(g.clone());
            let mut inst: Vec<(usize, SymId)> = Vec::new();
            let mut inside = true;
            for (i, sym) in p.iter() {
                let gi = s.monoid.op(&g, i)?;
                match index_of(&gi) {
                    Some(idx) => inst.push((
                        idx,
                        s.alphabet.id_of(sym).ok_or_else(|| {
                            Error::AlphabetMismatch(format!("symbol `{sym}` outside alphabet"))
                        })?,
                    )),
                    None => {
                        inside = false;
                        break;
                    }
                }
            }
            if inside {
                let trigger = inst.iter().map(|(i, _)| *i).max().expect("nonempty");
                instances_by_trigger[trigger].push(inst);
            }
        }
    }

    let window_idx: Vec<usize> = window
        .iter()
        .map(|e| index_of(e).expect("window inside universe"))
        .collect();

    let mut out: BTreeSet<Vec<SymId>> = BTreeSet::new();
    let mut assign: Vec<SymId> = vec![0; cells.len()];
    fn rec(
        pos: usize,
        cells_len: usize,
        letters: usize,
        assign: &mut Vec<SymId>,
        instances_by_trigger: &[Vec<Vec<(usize, SymId)>>],
        window_idx: &[usize],
        out: &mut BTreeSet<Vec<SymId>>,
    ) {
        if pos == cells_len {
            out.insert(window_idx.iter().map(|&i| assign[i]).collect());
            return;
        }
        'letters: for a in 0..letters as SymId {
            assign[pos] = a;
            for inst in &instances_by_trigger[pos] {
                if inst.iter().all(|&(i, sym)| assign[i] == sym) {
                    continue 'letters;
                }
            }
            rec(
                pos + 1,
                cells_len,
                letters,
                assign,
                instances_by_trigger,
                window_idx,
                out,
            );
        }
    }
    rec(
        0,
        cells.len(),
        letters,
        &mut assign,
        &instances_by_trigger,
        &window_idx,
        &mut out,
    );

    out.into_iter()
        .map(|syms| {
            Pattern::new(
                window
                    .iter()
                    .zip(&syms)
                    .map(|(e, &a)| (e.clone(), s.alphabet.symbol(a).clone())),
            )
        })
        .collect()
}

/// Union of shift specs over pairwise-disjoint alphabets on the same
/// one-dimensional lattice. Cross-alphabet length-2 words are banned and
/// the per-component forbidden sets are kept.
pub fn union(parts: &[ShiftSpec]) -> Result<ShiftSpec> {
    if parts.is_empty() {
        return Err(Error::InvalidInput("union of no shift specs".into()));
    }
    let monoid = parts[0].monoid;
    match monoid.kind {
        MonoidKind::AdditiveN | MonoidKind::AdditiveZ => {}
        kind => return Err(Error::UnsupportedMonoid { op: "union", kind }),
    }
    for p in parts {
        if p.monoid != monoid {
            return Err(Error::InvalidInput(
                "union parts disagree on the monoid".into(),
            ));
        }
    }
    let alphabets: Vec<&Alphabet> = parts.iter().map(|p| &p.alphabet).collect();
    let alphabet = Alphabet::disjoint_union(&alphabets)?;
    let mut patterns: Vec<Pattern> = Vec::new();
    for (i, a) in parts.iter().enumerate() {
        for (j, b) in parts.iter().enumerate() {
            if i == j {
                continue;
            }
            for x in a.alphabet.iter() {
                for y in b.alphabet.iter() {
                    patterns.push(Pattern::word(0, [x.clone(), y.clone()])?);
                }
            }
        }
        patterns.extend(a.forbidden.patterns().iter().cloned());
    }
    let mut step = 1i64;
    for p in parts {
        if let Some(hi) = p.memory_window().last().and_then(Element::as_int) {
            step = step.max(hi);
        }
    }
    let forbidden = ForbiddenSet::new(monoid, alphabet, patterns)?;
    let mut spec =
        ShiftSpec::new(forbidden).with_step_hint(IndexSet::new((0..=step).map(Element::int)))?;
    spec.components = parts.to_vec();
    Ok(spec)
}

/// Intersection of shift specs over the same alphabet: forbidden sets are
/// unioned and step hints merged.
pub fn intersection(parts: &[ShiftSpec]) -> Result<ShiftSpec> {
    if parts.is_empty() {
        return Err(Error::InvalidInput("intersection of no shift specs".into()));
    }
    let first = &parts[0];
    let mut patterns: Vec<Pattern> = Vec::new();
    let mut hint: Option<IndexSet> = None;
    for p in parts {
        if p.alphabet != first.alphabet {
            return Err(Error::AlphabetMismatch(
                "intersection parts must share the alphabet".into(),
            ));
        }
        if p.monoid != first.monoid {
            return Err(Error::InvalidInput(
                "intersection parts disagree on the monoid".into(),
            ));
        }
        patterns.extend(p.forbidden.patterns().iter().cloned());
        hint = match (hint, &p.step_hint) {
            (None, h) => h.clone(),
            (Some(a), None) => Some(a),
            (Some(a), Some(b)) => Some(a.union(b)),
        };
    }
    let forbidden = ForbiddenSet::new(first.monoid, first.alphabet.clone(), patterns)?;
    let mut spec = ShiftSpec::new(forbidden);
    if let Some(h) = hint {
        spec = spec.with_step_hint(h)?;
    }
    Ok(spec)
}

/// Completeness report: window patterns of bounded support that are
/// outside the depth-verified language yet contain no forbidden translate.
#[derive(Clone, Debug)]
pub struct CompletenessReport {
    pub depth: usize,
    pub witnesses: Vec<Pattern>,
}

impl CompletenessReport {
    pub fn is_complete(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// Checks completeness of the forbidden set up to `depth`: every partial
/// pattern with support inside the canonical depth window either embeds a
/// forbidden translate or belongs to the (exact) language. On the
/// two-sided lattice supports are anchored at their minimum to quotient
/// out translation.
pub fn complete_up_to(
    s: &ShiftSpec,
    depth: usize,
    budget: &OracleBudget,
) -> Result<CompletenessReport> {
    let side = s.side()?;
    if depth == 0 {
        return Ok(CompletenessReport {
            depth,
            witnesses: Vec::new(),
        });
    }
    let total = (s.alphabet.len() as f64 + 1.0).powi(depth as i32);
    if total > budget.max_words as f64 {
        return Err(Error::OracleBudgetExceeded(format!(
            "completeness check at depth {depth} exceeds the word budget"
        )));
    }
    let oracle = s.exact_oracle(budget)?;
    let mut witnesses = Vec::new();
    // All nonempty supports inside {0..depth-1}.
    for mask in 1u32..(1 << depth) {
        if side == Side::TwoSided && mask & 1 == 0 {
            continue; // anchored representative per translation class
        }
        let coords: Vec<i64> = (0..depth as i64).filter(|i| mask >> i & 1 == 1).collect();
        let lo = coords[0];
        let hi = *coords.last().unwrap();
        let hull_len = (hi - lo + 1) as usize;
        let start = match side {
            Side::TwoSided => oracle.initial(),
            Side::OneSided => oracle.states_at_offset(lo as usize),
        };
        let hull_words = language::words_of_len_from(&oracle, start, hull_len, budget)?;
        // Every assignment on the support.
        let k = coords.len();
        let mut assign = vec![0 as SymId; k];
        loop {
            let pattern = Pattern::new(
                coords
                    .iter()
                    .zip(&assign)
                    .map(|(c, &a)| (Element::int(*c), s.alphabet.symbol(a).clone())),
            )?;
            let in_language = hull_words.iter().any(|w| {
                coords
                    .iter()
                    .zip(&assign)
                    .all(|(c, &a)| w[(c - lo) as usize] == a)
            });
            if !in_language {
                let mut embeds = false;
                for p in s.forbidden.patterns() {
                    if crate::pattern::occurs_in(p, &pattern, &s.monoid)?.is_some() {
                        embeds = true;
                        break;
                    }
                }
                if !embeds {
                    witnesses.push(pattern);
                }
            }
            // next assignment
            let mut i = 0;
            loop {
                if i == k {
                    break;
                }
                assign[i] += 1;
                if (assign[i] as usize) < s.alphabet.len() {
                    break;
                }
                assign[i] = 0;
                i += 1;
            }
            if i == k {
                break;
            }
        }
    }
    witnesses.sort();
    witnesses.dedup();
    Ok(CompletenessReport { depth, witnesses })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn sym(s: &str) -> Symbol {
        Symbol::new(s)
    }

    fn binary() -> Alphabet {
        Alphabet::from_strs(["0", "1"]).unwrap()
    }

    pub fn golden_mean(monoid: MonoidSpec) -> ShiftSpec {
        let p = Pattern::word(0, [sym("1"), sym("1")]).unwrap();
        ShiftSpec::new(ForbiddenSet::new(monoid, binary(), [p]).unwrap())
            .with_step_hint(IndexSet::new([Element::int(0), Element::int(1)]))
            .unwrap()
    }

    fn window(word: &str) -> WindowConfig {
        WindowConfig::word_at(0, word.chars().map(|c| Symbol::new(c.to_string()))).unwrap()
    }

    #[test]
    fn locally_admissible_examples() {
        let s = golden_mean(MonoidSpec::additive_z());
        match locally_admissible(&s, &window("0110")).unwrap() {
            Verdict::Inadmissible(w) => assert_eq!(w.position, Element::int(1)),
            v => panic!("expected inadmissible, got {v:?}"),
        }
        assert_eq!(
            locally_admissible(&s, &window("0101")).unwrap(),
            Verdict::Admissible
        );
        let full = ShiftSpec::full_shift(MonoidSpec::additive_z(), binary());
        assert_eq!(
            locally_admissible(&full, &window("1111")).unwrap(),
            Verdict::Admissible
        );
    }

    #[test]
    fn locally_admissible_multiplicative() {
        // Two-letter shift forcing x_g = x_{2g}; the window (a,a,b,a) on
        // {1..4} leaves x_3 unconstrained.
        let ab = Alphabet::from_strs(["a", "b"]).unwrap();
        let m = MonoidSpec::multiplicative_nstar();
        let p1 = Pattern::new([(Element::nat(1), sym("a")), (Element::nat(2), sym("b"))]).unwrap();
        let p2 = Pattern::new([(Element::nat(1), sym("b")), (Element::nat(2), sym("a"))]).unwrap();
        let s = ShiftSpec::new(ForbiddenSet::new(m, ab, [p1, p2]).unwrap());
        let w = WindowConfig(
            Pattern::new([
                (Element::nat(1), sym("a")),
                (Element::nat(2), sym("a")),
                (Element::nat(3), sym("b")),
                (Element::nat(4), sym("a")),
            ])
            .unwrap(),
        );
        assert_eq!(locally_admissible(&s, &w).unwrap(), Verdict::Admissible);
    }

    #[test]
    fn member_examples() {
        let s = golden_mean(MonoidSpec::additive_n());
        let c = EventuallyPeriodicConfig::one_sided(vec![], vec![sym("1"), sym("0")]).unwrap();
        assert_eq!(member(&s, &c, 10_000).unwrap().verdict, Verdict::Admissible);
        let c = EventuallyPeriodicConfig::one_sided(vec![sym("1")], vec![sym("1")]).unwrap();
        assert!(matches!(
            member(&s, &c, 10_000).unwrap().verdict,
            Verdict::Inadmissible(_)
        ));
    }

    #[test]
    fn member_two_sided() {
        let s = golden_mean(MonoidSpec::additive_z());
        let c = EventuallyPeriodicConfig::two_sided(
            vec![sym("0"), sym("1")],
            vec![],
            vec![sym("0"), sym("1")],
        )
        .unwrap();
        assert_eq!(member(&s, &c, 10_000).unwrap().verdict, Verdict::Admissible);
        // budget exhaustion reports undetermined
        let v = member(&s, &c, 3).unwrap().verdict;
        assert!(matches!(v, Verdict::Undetermined { .. }));
    }

    #[test]
    fn language_exact_examples() {
        let s = golden_mean(MonoidSpec::additive_z());
        let w3 = IndexSet::new((0..3).map(Element::int));
        let r = language(&s, &w3, LanguageMode::Exact, &OracleBudget::default()).unwrap();
        assert_eq!(r.patterns.len(), 5);
        assert_eq!(r.exactness, Exactness::Exact);

        let full = ShiftSpec::full_shift(MonoidSpec::additive_z(), binary());
        let r = language(&full, &w3, LanguageMode::Exact, &OracleBudget::default()).unwrap();
        assert_eq!(r.patterns.len(), 8);
    }

    #[test]
    fn language_shift_invariance_on_z() {
        let s = golden_mean(MonoidSpec::additive_z());
        for g in -3i64..4 {
            let w = IndexSet::new((g..g + 4).map(Element::int));
            let r = language(&s, &w, LanguageMode::Exact, &OracleBudget::default()).unwrap();
            assert_eq!(r.patterns.len(), 8, "offset {g}");
        }
    }

    #[test]
    fn language_local_mode_is_a_superset_and_shrinks_with_depth() {
        let s = golden_mean(MonoidSpec::additive_z());
        let w = IndexSet::new((0..4).map(Element::int));
        let exact = language(&s, &w, LanguageMode::Exact, &OracleBudget::default()).unwrap();
        let local0 = language(
            &s,
            &w,
            LanguageMode::Local { depth: 0.0 },
            &OracleBudget::default(),
        )
        .unwrap();
        let local1 = language(
            &s,
            &w,
            LanguageMode::Local { depth: 1.0 },
            &OracleBudget::default(),
        )
        .unwrap();
        let as_set = |r: &LanguageResult| r.patterns.iter().cloned().collect::<BTreeSet<_>>();
        assert!(as_set(&exact).is_subset(&as_set(&local1)));
        assert!(as_set(&local1).is_subset(&as_set(&local0)));
        // for the golden mean every locally admissible word is extendable
        assert_eq!(exact.patterns.len(), local0.patterns.len());
    }

    #[test]
    fn multiplicative_window_counts() {
        // x_g = x_{2g} forces the symbol to depend only on the odd part of
        // the index, so windows {1..n} carry 2^ceil(n/2) patterns.
        let ab = Alphabet::from_strs(["a", "b"]).unwrap();
        let m = MonoidSpec::multiplicative_nstar();
        let p1 = Pattern::new([(Element::nat(1), sym("a")), (Element::nat(2), sym("b"))]).unwrap();
        let p2 = Pattern::new([(Element::nat(1), sym("b")), (Element::nat(2), sym("a"))]).unwrap();
        let s = ShiftSpec::new(ForbiddenSet::new(m, ab, [p1, p2]).unwrap());
        for n in 1u64..=10 {
            let w = IndexSet::new((1..=n).map(Element::nat));
            let r = language(
                &s,
                &w,
                LanguageMode::Local { depth: 0.0 },
                &OracleBudget::default(),
            )
            .unwrap();
            assert_eq!(r.patterns.len(), 1usize << n.div_ceil(2), "n={n}");
        }
    }

    #[test]
    fn union_and_intersection() {
        let g1 = golden_mean(MonoidSpec::additive_z());
        let a2 = Alphabet::from_strs(["a", "b"]).unwrap();
        let p = Pattern::word(0, [sym("b"), sym("b")]).unwrap();
        let g2 = ShiftSpec::new(ForbiddenSet::new(MonoidSpec::additive_z(), a2, [p]).unwrap());
        let u = union(&[g1.clone(), g2]).unwrap();
        assert_eq!(
            u.forbidden.index_union(),
            IndexSet::new([Element::int(0), Element::int(1)])
        );
        assert_eq!(u.components.len(), 2);

        // golden mean meets "no 00": only alternating words survive
        let ban00 = ShiftSpec::new(
            ForbiddenSet::new(
                MonoidSpec::additive_z(),
                binary(),
                [Pattern::word(0, [sym("0"), sym("0")]).unwrap()],
            )
            .unwrap(),
        );
        let both = intersection(&[g1.clone(), ban00]).unwrap();
        let w3 = IndexSet::new((0..3).map(Element::int));
        let r = language(&both, &w3, LanguageMode::Exact, &OracleBudget::default()).unwrap();
        let words: Vec<String> = r
            .patterns
            .iter()
            .map(|p| p.iter().map(|(_, s)| s.to_string()).collect::<String>())
            .collect();
        assert_eq!(words, ["010", "101"]);

        // idempotence
        let same = intersection(&[g1.clone(), g1.clone()]).unwrap();
        assert_eq!(same.forbidden.patterns(), g1.forbidden.patterns());
    }

    #[test]
    fn single_part_union_just_lifts_the_step_hint() {
        let g = golden_mean(MonoidSpec::additive_z());
        let u = union(std::slice::from_ref(&g)).unwrap();
        assert_eq!(u.alphabet, g.alphabet);
        assert_eq!(u.forbidden.patterns(), g.forbidden.patterns());
        assert_eq!(
            u.step_hint,
            Some(IndexSet::new([Element::int(0), Element::int(1)]))
        );
    }

    #[test]
    fn union_requires_disjoint_alphabets() {
        let g = golden_mean(MonoidSpec::additive_z());
        assert!(matches!(
            union(&[g.clone(), g]),
            Err(Error::NonDisjointAlphabets(_))
        ));
    }

    #[test]
    fn one_sided_language_depends_on_the_window_position() {
        // bans 01 and 11: the symbol 1 can only ever appear at position 0
        let f = ForbiddenSet::new(
            MonoidSpec::additive_n(),
            binary(),
            [
                Pattern::word(0, [sym("0"), sym("1")]).unwrap(),
                Pattern::word(0, [sym("1"), sym("1")]).unwrap(),
            ],
        )
        .unwrap();
        let s = ShiftSpec::new(f);
        let at0 = language(
            &s,
            &IndexSet::singleton(Element::int(0)),
            LanguageMode::Exact,
            &OracleBudget::default(),
        )
        .unwrap();
        assert_eq!(at0.patterns.len(), 2);
        let at1 = language(
            &s,
            &IndexSet::singleton(Element::int(1)),
            LanguageMode::Exact,
            &OracleBudget::default(),
        )
        .unwrap();
        assert_eq!(at1.patterns.len(), 1);
    }

    #[test]
    fn completeness_examples() {
        // Banning 1?1 over three coordinates is not complete: the pattern
        // (x0,x2)=(1,1) is outside the language but embeds no full member.
        let f = ForbiddenSet::new(
            MonoidSpec::additive_z(),
            binary(),
            ["0", "1"]
                .iter()
                .map(|mid| Pattern::word(0, [sym("1"), sym(mid), sym("1")]).unwrap()),
        )
        .unwrap();
        let s = ShiftSpec::new(f);
        let r = complete_up_to(&s, 3, &OracleBudget::default()).unwrap();
        let expected =
            Pattern::new([(Element::int(0), sym("1")), (Element::int(2), sym("1"))]).unwrap();
        assert!(
            r.witnesses.contains(&expected),
            "witnesses: {:?}",
            r.witnesses
        );

        let s = golden_mean(MonoidSpec::additive_z());
        assert!(complete_up_to(&s, 4, &OracleBudget::default())
            .unwrap()
            .is_complete());

        let full = ShiftSpec::full_shift(MonoidSpec::additive_z(), binary());
        assert!(complete_up_to(&full, 4, &OracleBudget::default())
            .unwrap()
            .is_complete());
    }
}
