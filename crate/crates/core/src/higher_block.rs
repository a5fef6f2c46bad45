//! Higher-block recoding by a cylinder partition: the recoding map, the
//! overlapping condition, the derived forbidden-set generators, the inverse
//! map under a common coordinate, and the applicability condition checks.

use std::collections::BTreeSet;

use crate::alphabet::{Alphabet, Symbol};
use crate::block_code::{apply, CodeOutput, CylinderPartition, GeneralizedCode, SlidingBlockRule};
use crate::error::{Error, Result};
use crate::language::OracleBudget;
use crate::monoid::{Element, IndexSet, MonoidKind, MonoidSpec};
use crate::pattern::{ForbiddenSet, Pattern};
use crate::shift::{self, LanguageMode, ShiftSpec};

/// A partition of a source shift into cylinders, with one fresh symbol per
/// cylinder. The derived data (distinct supports, their intersection,
/// decoding table) drives every recoding construction.
#[derive(Clone, Debug)]
pub struct PartitionN {
    pub monoid: MonoidSpec,
    pub source_alphabet: Alphabet,
    cylinders: Vec<Pattern>,
    higher: Alphabet,
    /// Distinct cylinder supports.
    pub supports: Vec<IndexSet>,
    /// Intersection of all supports.
    pub common: IndexSet,
    pub identity_in_common: bool,
}

impl PartitionN {
    /// Validates pairwise disjointness and coverage of every admissible
    /// window on the union of the supports, then mints higher symbols.
    pub fn new(
        source: &ShiftSpec,
        cylinders: Vec<Pattern>,
        budget: &OracleBudget,
    ) -> Result<PartitionN> {
        if cylinders.is_empty() {
            return Err(Error::InvalidInput(
                "partition needs at least one cylinder".into(),
            ));
        }
        let mut cyls = cylinders;
        cyls.sort();
        cyls.dedup();
        for c in &cyls {
            if c.is_empty() {
                return Err(Error::InvalidInput("cylinders must be nonempty".into()));
            }
            if !c.uses_alphabet(&source.alphabet) {
                return Err(Error::AlphabetMismatch(format!(
                    "cylinder `{c}` uses symbols outside the source alphabet"
                )));
            }
        }
        for (i, a) in cyls.iter().enumerate() {
            for b in cyls.iter().skip(i + 1) {
                if a.compatible_with(b) {
                    return Err(Error::InvalidInput(format!(
                        "cylinders `{a}` and `{b}` overlap"
                    )));
                }
            }
        }
        // Coverage: every admissible total window on the union of supports
        // must contain some cylinder.
        let mut union = IndexSet::empty();
        for c in &cyls {
            union = union.union(&c.support());
        }
        let windows = coverage_windows(source, &union, budget)?;
        for w in &windows {
            if !cyls.iter().any(|c| c.is_subpattern_of(w)) {
                return Err(Error::InvalidInput(format!(
                    "partition misses the admissible window `{w}`"
                )));
            }
        }
        let mut supports: Vec<IndexSet> = cyls.iter().map(|c| c.support()).collect();
        supports.sort_by_key(|s| format!("{s}"));
        supports.dedup();
        let mut common = supports[0].clone();
        for s in &supports[1..] {
            common = common.intersection(s);
        }
        let identity = source.monoid.identity();
        let compact = supports.len() == 1 && is_compact_window(&supports[0]);
        let higher = Alphabet::new(
            cyls.iter()
                .map(|c| Symbol::new(higher_symbol_name(c, compact))),
        )?;
        Ok(PartitionN {
            monoid: source.monoid,
            source_alphabet: source.alphabet.clone(),
            cylinders: cyls,
            higher,
            identity_in_common: common.contains(&identity),
            supports,
            common,
        })
    }

    /// Cylinders on the window {0..n-1} carrying the exact n-window
    /// language of the source.
    pub fn classical(source: &ShiftSpec, n: usize, budget: &OracleBudget) -> Result<PartitionN> {
        match source.monoid.kind {
            MonoidKind::AdditiveN | MonoidKind::AdditiveZ => {}
            kind => {
                return Err(Error::UnsupportedMonoid {
                    op: "classical partition",
                    kind,
                })
            }
        }
        if n == 0 {
            return Err(Error::InvalidInput("window length must be positive".into()));
        }
        let window = IndexSet::new((0..n as i64).map(Element::int));
        let lang = shift::language(source, &window, LanguageMode::Exact, budget)?;
        PartitionN::new(source, lang.patterns, budget)
    }

    pub fn cylinders(&self) -> &[Pattern] {
        &self.cylinders
    }

    pub fn higher_alphabet(&self) -> &Alphabet {
        &self.higher
    }

    pub fn symbol_for(&self, cylinder_index: usize) -> &Symbol {
        self.higher.symbol(cylinder_index as u32)
    }

    pub fn decode(&self, sym: &Symbol) -> Option<&Pattern> {
        self.higher.id_of(sym).map(|i| &self.cylinders[i as usize])
    }

    /// The order-1 generalized code that renames each cylinder to its
    /// higher symbol.
    pub fn as_code(&self) -> Result<GeneralizedCode> {
        let classes: Vec<(Symbol, Vec<Pattern>)> = self
            .cylinders
            .iter()
            .enumerate()
            .map(|(i, c)| (self.symbol_for(i).clone(), vec![c.clone()]))
            .collect();
        Ok(GeneralizedCode::partitioned(CylinderPartition::new(
            self.monoid,
            self.source_alphabet.clone(),
            self.higher.clone(),
            classes,
        )?))
    }
}

fn coverage_windows(
    source: &ShiftSpec,
    union: &IndexSet,
    budget: &OracleBudget,
) -> Result<Vec<Pattern>> {
    // Exact where available; otherwise the locally admissible superset,
    // which can only make coverage stricter.
    let exact = matches!(
        source.monoid.kind,
        MonoidKind::AdditiveN | MonoidKind::AdditiveZ
    );
    let mode = if exact {
        LanguageMode::Exact
    } else {
        LanguageMode::Local { depth: 0.0 }
    };
    Ok(shift::language(source, union, mode, budget)?.patterns)
}

fn is_compact_window(s: &IndexSet) -> bool {
    let ints: Option<Vec<i64>> = s.iter().map(|e| e.as_int()).collect();
    match ints {
        Some(v) => v.first() == Some(&0) && v.windows(2).all(|w| w[1] == w[0] + 1),
        None => false,
    }
}

fn higher_symbol_name(c: &Pattern, compact: bool) -> String {
    if compact && c.iter().all(|(_, s)| s.as_str().chars().count() == 1) {
        let word: String = c.iter().map(|(_, s)| s.to_string()).collect();
        format!("[{word}]")
    } else {
        let parts: Vec<String> = c.iter().map(|(e, s)| format!("{e}:{s}")).collect();
        format!("[{}]", parts.join(","))
    }
}

/// Applies the higher-block recoding to a window, through the order-1 code
/// view.
pub fn apply_higher(p: &PartitionN, w: &shift::WindowConfig) -> Result<CodeOutput> {
    apply(&p.as_code()?, w)
}

/// Outcome of the overlapping-condition check, with a violating quadruple
/// when it fails.
#[derive(Clone, Debug, PartialEq)]
pub struct OverlapCheck {
    pub ok: bool,
    /// (g, h, m, n) with g·m = h·n but conflicting decoded symbols.
    pub witness: Option<(Element, Element, Element, Element)>,
}

/// Checks the overlapping condition on a window over the higher alphabet:
/// whenever g·m = h·n, the decoded symbols at those coordinates agree.
pub fn overlap_satisfied(p: &PartitionN, b: &shift::WindowConfig) -> Result<OverlapCheck> {
    let m = p.monoid;
    let entries: Vec<(&Element, &Pattern)> = b
        .pattern()
        .iter()
        .map(|(g, s)| {
            p.decode(s)
                .map(|c| (g, c))
                .ok_or_else(|| Error::AlphabetMismatch(format!("`{s}` is not a higher symbol")))
        })
        .collect::<Result<_>>()?;
    for (g, cg) in &entries {
        for (h, ch) in &entries {
            for (mi, sg) in cg.iter() {
                let gm = m.op(g, mi)?;
                for (ni, sh) in ch.iter() {
                    let hn = m.op(h, ni)?;
                    if gm == hn && sg != sh {
                        return Ok(OverlapCheck {
                            ok: false,
                            witness: Some(((*g).clone(), (*h).clone(), mi.clone(), ni.clone())),
                        });
                    }
                }
            }
        }
    }
    Ok(OverlapCheck {
        ok: true,
        witness: None,
    })
}

/// Generators for the overlap-consistency forbidden set over the higher
/// alphabet.
#[derive(Clone, Debug, PartialEq)]
pub enum OverlapGenerator {
    /// Conflicting pairs at all positions inside a finite enumeration
    /// bound. May be bound-limited; the bound is recorded downstream.
    BoundedPairs { bound: u32 },
    /// Pairs anchored at the identity, with the partner position solved
    /// from coordinate equations. Needs the divisibility property of the
    /// group extension.
    DivisorAnchored,
    /// Needs the identity in every support; compares the identity readout
    /// of the partner against the anchored symbol.
    IdentityAnchored,
    /// Needs a common coordinate in every support (a group, unless the
    /// coordinate is the identity itself).
    CommonCoordinate(Element),
}

pub fn gen_overlap_forbidden(
    p: &PartitionN,
    variant: &OverlapGenerator,
    budget: &OracleBudget,
) -> Result<ForbiddenSet> {
    let m = p.monoid;
    let identity = m.identity();
    let mut union = IndexSet::empty();
    for s in &p.supports {
        union = union.union(s);
    }
    let mut patterns: Vec<Pattern> = Vec::new();
    let syms: Vec<(&Symbol, &Pattern)> = p
        .cylinders
        .iter()
        .enumerate()
        .map(|(i, c)| (p.symbol_for(i), c))
        .collect();
    let mut push = |g: &Element, b: &Symbol, h: &Element, b2: &Symbol| -> Result<()> {
        patterns.push(Pattern::new([
            (g.clone(), b.clone()),
            (h.clone(), b2.clone()),
        ])?);
        Ok(())
    };
    match variant {
        OverlapGenerator::BoundedPairs { bound } => {
            let positions = m.enumerate_up_to(*bound)?;
            let work = positions.len() * positions.len() * syms.len() * syms.len();
            if work > budget.max_words {
                return Err(Error::OracleBudgetExceeded(
                    "pair enumeration exceeds the budget".into(),
                ));
            }
            for g in positions.iter() {
                for h in positions.iter() {
                    if g == h {
                        continue;
                    }
                    for (bs, bc) in &syms {
                        for (cs, cc) in &syms {
                            if conflicting_pair(&m, g, bc, h, cc)? {
                                push(g, bs, h, cs)?;
                            }
                        }
                    }
                }
            }
        }
        OverlapGenerator::DivisorAnchored => {
            if !m.divisibility_extension() {
                return Err(Error::VariantPreconditionFailed(
                    "monoid lacks the divisibility property of a group extension".into(),
                ));
            }
            let mut hs: BTreeSet<Element> = BTreeSet::new();
            for l in union.iter() {
                for mm in union.iter() {
                    if let Some(h) = m.solve_left(mm, l)? {
                        if h != identity {
                            hs.insert(h);
                        }
                    }
                }
            }
            for h in &hs {
                for (bs, bc) in &syms {
                    for (cs, cc) in &syms {
                        if conflicting_pair(&m, &identity, bc, h, cc)? {
                            push(&identity, bs, h, cs)?;
                        }
                    }
                }
            }
        }
        OverlapGenerator::IdentityAnchored => {
            if !p.identity_in_common {
                return Err(Error::VariantPreconditionFailed(
                    "identity is not in every cylinder support".into(),
                ));
            }
            for (bs, bc) in &syms {
                for (h, want) in bc.iter() {
                    if *h == identity {
                        continue;
                    }
                    for (cs, cc) in &syms {
                        if cc.get(&identity).is_some_and(|have| have != want) {
                            push(&identity, bs, h, cs)?;
                        }
                    }
                }
            }
        }
        OverlapGenerator::CommonCoordinate(n) => {
            if !p.common.contains(n) {
                return Err(Error::VariantPreconditionFailed(format!(
                    "{n} is not a common support coordinate"
                )));
            }
            if !(m.is_group() || *n == identity) {
                return Err(Error::VariantPreconditionFailed(
                    "common-coordinate generator needs a group or the identity coordinate".into(),
                ));
            }
            for (bs, bc) in &syms {
                for (l, want) in bc.iter() {
                    let Some(h) = solve_x_times_n(&m, n, l)? else {
                        continue;
                    };
                    if h == identity {
                        continue;
                    }
                    for (cs, cc) in &syms {
                        if cc.get(n).is_some_and(|have| have != want) {
                            push(&identity, bs, &h, cs)?;
                        }
                    }
                }
            }
        }
    }
    ForbiddenSet::new(m, p.higher.clone(), patterns)
}

/// h with h·n = target (all supported monoids are commutative).
fn solve_x_times_n(m: &MonoidSpec, n: &Element, target: &Element) -> Result<Option<Element>> {
    m.solve_right(n, target)
}

fn conflicting_pair(
    m: &MonoidSpec,
    g: &Element,
    gc: &Pattern,
    h: &Element,
    hc: &Pattern,
) -> Result<bool> {
    for (l, a) in gc.iter() {
        let gl = m.op(g, l)?;
        for (n, b) in hc.iter() {
            if a != b && gl == m.op(h, n)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Generators translating the source forbidden set to the higher alphabet.
#[derive(Clone, Debug, PartialEq)]
pub enum ImageGenerator {
    /// Reads the source symbol of each position off a fixed coordinate of
    /// the decoded higher symbol.
    CoordinateReadout(Element),
    /// Assembles source members from sub-coordinate selections of the
    /// decoded symbols.
    SubCoordinateCovers,
}

pub fn gen_image_forbidden(
    p: &PartitionN,
    f: &ForbiddenSet,
    variant: &ImageGenerator,
    budget: &OracleBudget,
) -> Result<ForbiddenSet> {
    let m = p.monoid;
    let identity = m.identity();
    let mut patterns: Vec<Pattern> = Vec::new();
    match variant {
        ImageGenerator::CoordinateReadout(n) => {
            if !p.common.contains(n) {
                return Err(Error::VariantPreconditionFailed(format!(
                    "{n} is not a common support coordinate"
                )));
            }
            if !(m.is_group() || *n == identity) {
                return Err(Error::VariantPreconditionFailed(
                    "coordinate readout needs a group or the identity coordinate".into(),
                ));
            }
            for u in f.patterns() {
                // positions k with k·n covering the member's support
                let mut per_position: Vec<(Element, Vec<&Symbol>)> = Vec::new();
                let mut ok = true;
                for (d, want) in u.iter() {
                    let Some(k) = solve_x_times_n(&m, n, d)? else {
                        ok = false;
                        break;
                    };
                    let choices: Vec<&Symbol> = p
                        .cylinders
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| c.get(n) == Some(want))
                        .map(|(i, _)| p.symbol_for(i))
                        .collect();
                    if choices.is_empty() {
                        ok = false;
                        break;
                    }
                    per_position.push((k, choices));
                }
                if !ok {
                    continue;
                }
                product_patterns(&per_position, budget, &mut patterns)?;
            }
        }
        ImageGenerator::SubCoordinateCovers => {
            let mut union = IndexSet::empty();
            for s in &p.supports {
                union = union.union(s);
            }
            for u in f.patterns() {
                let d_support = u.support();
                // candidate contributing positions
                let mut g0: BTreeSet<Element> = BTreeSet::new();
                for i in union.iter() {
                    for d in d_support.iter() {
                        if let Some(g) = m.solve_left(i, d)? {
                            g0.insert(g);
                        }
                    }
                }
                let g0: Vec<Element> = g0.into_iter().collect();
                if g0.len() > 16 {
                    return Err(Error::OracleBudgetExceeded(
                        "too many candidate positions for the cover generator".into(),
                    ));
                }
                // per position: symbols whose decoded entries can contribute,
                // with the coordinate set they would cover
                let mut options: Vec<Vec<(&Symbol, IndexSet)>> = Vec::new();
                for g in &g0 {
                    let mut opts = Vec::new();
                    for (i, c) in p.cylinders.iter().enumerate() {
                        // largest usable selection: coordinates landing in the
                        // member's support with agreeing symbols; any nonempty
                        // subset works, so keeping the largest tracks coverage
                        let mut covered = Vec::new();
                        let mut consistent = true;
                        for (ci, cs) in c.iter() {
                            let gi = m.op(g, ci)?;
                            if let Some(want) = u.get(&gi) {
                                if want == cs {
                                    covered.push(gi);
                                } else {
                                    consistent = false;
                                    break;
                                }
                            }
                        }
                        if consistent && !covered.is_empty() {
                            opts.push((p.symbol_for(i), IndexSet::new(covered)));
                        }
                    }
                    options.push(opts);
                }
                // subsets of candidate positions whose selections cover the support
                let n = g0.len();
                for mask in 1u32..(1u32 << n) {
                    let idxs: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                    if idxs.iter().any(|&i| options[i].is_empty()) {
                        continue;
                    }
                    let mut stack: Vec<(usize, Vec<(&Symbol, &IndexSet)>)> = vec![(0, Vec::new())];
                    while let Some((depth, chosen)) = stack.pop() {
                        if depth == idxs.len() {
                            let mut covered = IndexSet::empty();
                            for (_, c) in &chosen {
                                covered = covered.union(c);
                            }
                            if covered == d_support {
                                let entries: Vec<(Element, Symbol)> = idxs
                                    .iter()
                                    .zip(&chosen)
                                    .map(|(&i, (s, _))| (g0[i].clone(), (*s).clone()))
                                    .collect();
                                if entries.len() == idxs.len() {
                                    if let Ok(pat) = Pattern::new(entries) {
                                        patterns.push(pat);
                                    }
                                }
                            }
                            continue;
                        }
                        for (s, cov) in &options[idxs[depth]] {
                            let mut next = chosen.clone();
                            next.push((s, cov));
                            stack.push((depth + 1, next));
                            if stack.len() + patterns.len() > budget.max_words {
                                return Err(Error::OracleBudgetExceeded(
                                    "cover enumeration exceeds the budget".into(),
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    ForbiddenSet::new(m, p.higher.clone(), patterns)
}

fn product_patterns(
    per_position: &[(Element, Vec<&Symbol>)],
    budget: &OracleBudget,
    out: &mut Vec<Pattern>,
) -> Result<()> {
    let mut acc: Vec<Vec<(Element, Symbol)>> = vec![Vec::new()];
    for (k, choices) in per_position {
        let mut next = Vec::new();
        for base in &acc {
            for &s in choices {
                // two source coordinates may read off the same higher
                // position; conflicting demands kill the combination
                if let Some((_, prev)) = base.iter().find(|(e, _)| e == k) {
                    if prev == s {
                        next.push(base.clone());
                    }
                    continue;
                }
                let mut b = base.clone();
                b.push((k.clone(), s.clone()));
                next.push(b);
            }
            if next.len() > budget.max_words {
                return Err(Error::OracleBudgetExceeded(
                    "readout enumeration exceeds the budget".into(),
                ));
            }
        }
        acc = next;
    }
    for entries in acc {
        if !entries.is_empty() {
            out.push(Pattern::new(entries)?);
        }
    }
    Ok(())
}

/// Reconstructs a source window from a higher window: every decoded
/// coordinate is written back. Requires a common support coordinate (or
/// the identity) and an overlap-consistent input.
pub fn inverse_higher(p: &PartitionN, b: &shift::WindowConfig) -> Result<shift::WindowConfig> {
    if !(p.identity_in_common || (p.monoid.is_group() && !p.common.is_empty())) {
        return Err(Error::ConditionsUnverified(
            "inverse needs a common support coordinate (or the identity in every support)".into(),
        ));
    }
    let check = overlap_satisfied(p, b)?;
    if let Some((g, h, mi, ni)) = check.witness {
        let a = p
            .decode(b.pattern().get(&g).unwrap())
            .unwrap()
            .get(&mi)
            .unwrap();
        let c = p
            .decode(b.pattern().get(&h).unwrap())
            .unwrap()
            .get(&ni)
            .unwrap();
        return Err(Error::OverlapViolation {
            g: g.to_string(),
            h: h.to_string(),
            gm: p.monoid.op(&g, &mi)?.to_string(),
            a: a.to_string(),
            b: c.to_string(),
        });
    }
    let mut entries: Vec<(Element, Symbol)> = Vec::new();
    for (h, sym) in b.pattern().iter() {
        let c = p
            .decode(sym)
            .ok_or_else(|| Error::AlphabetMismatch(format!("`{sym}` is not a higher symbol")))?;
        for (i, s) in c.iter() {
            entries.push((p.monoid.op(h, i)?, s.clone()));
        }
    }
    entries.sort();
    entries.dedup();
    Ok(shift::WindowConfig(Pattern::new(entries)?))
}

/// One applicability flag with its justification source.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConditionFlag {
    pub holds: bool,
    pub from_kind_table: bool,
}

impl ConditionFlag {
    fn computed(holds: bool) -> Self {
        ConditionFlag {
            holds,
            from_kind_table: false,
        }
    }

    fn kind_table(holds: bool) -> Self {
        ConditionFlag {
            holds,
            from_kind_table: true,
        }
    }
}

/// The decidable applicability conditions for recoding constructions, in
/// the order the reports print them.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionReport {
    /// finite symbol set
    pub b1: ConditionFlag,
    /// source is the full shift
    pub b2: ConditionFlag,
    /// nested nonempty cylinders always intersect
    pub b3: ConditionFlag,
    /// group and nonempty support intersection
    pub b4: ConditionFlag,
    /// identity in every support
    pub b5: ConditionFlag,
    /// full shift with a divisibility group extension
    pub c1: ConditionFlag,
    /// countable divisibility group extension
    pub c2: ConditionFlag,
    /// group and nonempty support intersection
    pub c3: ConditionFlag,
    /// identity in every support
    pub c4: ConditionFlag,
}

impl ConditionReport {
    pub fn any_recoding_condition(&self) -> bool {
        self.c1.holds || self.c2.holds || self.c3.holds || self.c4.holds
    }
}

pub fn check_conditions(p: &PartitionN, s: &ShiftSpec) -> ConditionReport {
    let group_and_common = s.monoid.is_group() && !p.common.is_empty();
    let divis = s.monoid.divisibility_extension();
    let full = s.is_full_shift();
    ConditionReport {
        b1: ConditionFlag::computed(true), // alphabets are finite by construction
        b2: ConditionFlag::computed(full),
        b3: match s.monoid.kind {
            MonoidKind::AdditiveN | MonoidKind::AdditiveZ | MonoidKind::AdditiveZd(_) => {
                ConditionFlag::kind_table(true)
            }
            // countable cancellative monoids grant it for explicit finite
            // forbidden sets
            _ => ConditionFlag::computed(s.monoid.is_countable() && s.monoid.is_cancellative()),
        },
        b4: ConditionFlag::computed(group_and_common),
        b5: ConditionFlag::computed(p.identity_in_common),
        c1: ConditionFlag::kind_table(full && divis),
        c2: ConditionFlag::kind_table(s.monoid.is_countable() && divis),
        c3: ConditionFlag::computed(group_and_common),
        c4: ConditionFlag::computed(p.identity_in_common),
    }
}

/// Which generator pair produced a higher-block spec.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorChoice {
    pub overlap: OverlapGenerator,
    pub image: ImageGenerator,
}

/// Builds the higher-block presentation of the source as a shift spec over
/// the higher alphabet, choosing the strongest applicable generator pair.
pub fn higher_block_spec(
    p: &PartitionN,
    source: &ShiftSpec,
    budget: &OracleBudget,
) -> Result<(ShiftSpec, GeneratorChoice)> {
    let cond = check_conditions(p, source);
    let identity = source.monoid.identity();
    let choice = if cond.c4.holds {
        GeneratorChoice {
            overlap: OverlapGenerator::IdentityAnchored,
            image: ImageGenerator::CoordinateReadout(identity),
        }
    } else if cond.c3.holds {
        let n = p.common.first().expect("nonempty common").clone();
        GeneratorChoice {
            overlap: OverlapGenerator::CommonCoordinate(n.clone()),
            image: ImageGenerator::CoordinateReadout(n),
        }
    } else if cond.c2.holds || cond.c1.holds {
        GeneratorChoice {
            overlap: OverlapGenerator::DivisorAnchored,
            image: ImageGenerator::SubCoordinateCovers,
        }
    } else {
        return Err(Error::ConditionsUnverified(
            "no recoding condition holds for this partition".into(),
        ));
    };
    let overlap = gen_overlap_forbidden(p, &choice.overlap, budget)?;
    let image = gen_image_forbidden(p, &source.forbidden, &choice.image, budget)?;
    let forbidden = ForbiddenSet::new(
        p.monoid,
        p.higher.clone(),
        overlap.patterns().iter().chain(image.patterns()).cloned(),
    )?;
    Ok((ShiftSpec::new(forbidden), choice))
}

/// Result of recoding a code over an SFT-shaped source to a 1-block rule
/// on the higher-block presentation.
#[derive(Clone, Debug)]
pub struct RecodedPresentation {
    pub partition: PartitionN,
    pub spec: ShiftSpec,
    pub rule: SlidingBlockRule,
    pub generators: GeneratorChoice,
}

/// Recodes an explicit generalized code into a 1-block rule on the
/// higher-block presentation built from its cylinders.
pub fn one_block_recoding(
    code: &GeneralizedCode,
    source: &ShiftSpec,
    budget: &OracleBudget,
) -> Result<RecodedPresentation> {
    let part_view = code.as_partition();
    let cylinders: Vec<Pattern> = part_view.all_cylinders().cloned().collect();
    let partition = PartitionN::new(source, cylinders, budget)?;
    let cond = check_conditions(&partition, source);
    if !cond.any_recoding_condition() {
        return Err(Error::ConditionsUnverified(
            "none of the recoding conditions hold for the code's cylinders".into(),
        ));
    }
    let (spec, generators) = higher_block_spec(&partition, source, budget)?;
    let identity = source.monoid.identity();
    let mut rule = SlidingBlockRule::new(
        source.monoid,
        IndexSet::singleton(identity.clone()),
        partition.higher_alphabet().clone(),
        part_view.target.clone(),
    )?;
    for (i, cyl) in partition.cylinders().iter().enumerate() {
        let class_symbol = part_view
            .classes()
            .iter()
            .find(|(_, cyls)| cyls.contains(cyl))
            .map(|(s, _)| s.clone())
            .ok_or_else(|| Error::InvalidInput("cylinder lost its class".into()))?;
        let key = Pattern::new([(identity.clone(), partition.symbol_for(i).clone())])?;
        rule.insert_row(&key, &class_symbol)?;
    }
    Ok(RecodedPresentation {
        partition,
        spec,
        rule,
        generators,
    })
}
