//! Sliding block codes and generalized sliding block codes: application,
//! composition, finite-to-one order, preimages, indicator codes and the
//! metric radius of a local rule.

use std::collections::{BTreeMap, BTreeSet};

use crate::alphabet::{Alphabet, SymId, Symbol};
use crate::error::{Error, Result};
use crate::language::OracleBudget;
use crate::monoid::{Element, IndexSet, MonoidSpec};
use crate::pattern::Pattern;
use crate::shift::{ShiftSpec, WindowConfig};

/// A uniform local rule: one finite window, a table from window patterns
/// to target symbols. Tables may be partial (domain = the source language
/// restricted to the window).
#[derive(Clone, PartialEq, Debug)]
pub struct SlidingBlockRule {
    pub monoid: MonoidSpec,
    pub window: IndexSet,
    pub source: Alphabet,
    pub target: Alphabet,
    /// Keys are symbol ids at the window coordinates in canonical order.
    table: BTreeMap<Vec<SymId>, SymId>,
}

impl SlidingBlockRule {
    pub fn new(
        monoid: MonoidSpec,
        window: IndexSet,
        source: Alphabet,
        target: Alphabet,
    ) -> Result<Self> {
        if window.is_empty() {
            return Err(Error::InvalidInput("rule window must be nonempty".into()));
        }
        for e in window.iter() {
            monoid.validate(e)?;
        }
        Ok(SlidingBlockRule {
            monoid,
            window,
            source,
            target,
            table: BTreeMap::new(),
        })
    }

    /// Inserts a table row given as a pattern with support exactly the window.
    pub fn insert_row(&mut self, key: &Pattern, value: &Symbol) -> Result<()> {
        if key.support() != self.window {
            return Err(Error::InvalidInput(format!(
                "table key `{key}` does not have support equal to the window {}",
                self.window
            )));
        }
        let k = self.key_of(key)?;
        let v = self
            .target
            .id_of(value)
            .ok_or_else(|| Error::AlphabetMismatch(format!("`{value}` outside target alphabet")))?;
        self.table.insert(k, v);
        Ok(())
    }

    fn key_of(&self, p: &Pattern) -> Result<Vec<SymId>> {
        self.window
            .iter()
            .map(|e| {
                let s = p.get(e).ok_or_else(|| {
                    Error::InvalidInput(format!("pattern `{p}` undefined at window coordinate {e}"))
                })?;
                self.source.id_of(s).ok_or_else(|| {
                    Error::AlphabetMismatch(format!("`{s}` outside source alphabet"))
                })
            })
            .collect()
    }

    pub fn lookup_ids(&self, key: &[SymId]) -> Option<SymId> {
        self.table.get(key).copied()
    }

    pub fn lookup(&self, p: &Pattern) -> Result<Option<&Symbol>> {
        let k = self.key_of(p)?;
        Ok(self.table.get(&k).map(|&v| self.target.symbol(v)))
    }

    pub fn rows(&self) -> impl Iterator<Item = (Pattern, &Symbol)> + '_ {
        self.table.iter().map(|(k, &v)| {
            let p = Pattern::new(
                self.window
                    .iter()
                    .zip(k)
                    .map(|(e, &a)| (e.clone(), self.source.symbol(a).clone())),
            )
            .expect("window nonempty");
            (p, self.target.symbol(v))
        })
    }

    pub fn table_len(&self) -> usize {
        self.table.len()
    }

    /// The identity 1-block rule on an alphabet.
    pub fn identity(monoid: MonoidSpec, alphabet: &Alphabet) -> Result<Self> {
        let mut rule = SlidingBlockRule::new(
            monoid,
            IndexSet::singleton(monoid.identity()),
            alphabet.clone(),
            alphabet.clone(),
        )?;
        for s in alphabet.iter() {
            let key = Pattern::new([(monoid.identity(), s.clone())])?;
            rule.insert_row(&key, s)?;
        }
        Ok(rule)
    }

    /// Builds the total table from a function over all window assignments.
    pub fn from_fn(
        monoid: MonoidSpec,
        window: IndexSet,
        source: Alphabet,
        target: Alphabet,
        f: impl Fn(&Pattern) -> Option<Symbol>,
        budget: &OracleBudget,
    ) -> Result<Self> {
        let mut rule = SlidingBlockRule::new(monoid, window.clone(), source.clone(), target)?;
        let cells: Vec<&Element> = window.iter().collect();
        let total = (source.len() as f64).powi(cells.len() as i32);
        if total > budget.max_words as f64 {
            return Err(Error::OracleBudgetExceeded(format!(
                "rule table over {} cells exceeds the budget",
                cells.len()
            )));
        }
        let mut assign = vec![0 as SymId; cells.len()];
        loop {
            let p = Pattern::new(
                cells
                    .iter()
                    .zip(&assign)
                    .map(|(e, &a)| ((*e).clone(), source.symbol(a).clone())),
            )?;
            if let Some(v) = f(&p) {
                rule.insert_row(&p, &v)?;
            }
            let mut i = 0;
            loop {
                if i == assign.len() {
                    return Ok(rule);
                }
                assign[i] += 1;
                if (assign[i] as usize) < source.len() {
                    break;
                }
                assign[i] = 0;
                i += 1;
            }
        }
    }
}

/// A partition of the source shift into unions of cylinders, one class per
/// target symbol.
#[derive(Clone, PartialEq, Debug)]
pub struct CylinderPartition {
    pub monoid: MonoidSpec,
    pub source: Alphabet,
    pub target: Alphabet,
    classes: Vec<(Symbol, Vec<Pattern>)>,
}

impl CylinderPartition {
    pub fn new(
        monoid: MonoidSpec,
        source: Alphabet,
        target: Alphabet,
        classes: Vec<(Symbol, Vec<Pattern>)>,
    ) -> Result<Self> {
        let mut all: Vec<&Pattern> = Vec::new();
        for (sym, cyls) in &classes {
            if !target.contains(sym) {
                return Err(Error::AlphabetMismatch(format!(
                    "class symbol `{sym}` outside target alphabet"
                )));
            }
            for c in cyls {
                if c.is_empty() {
                    return Err(Error::InvalidInput(
                        "cylinders must constrain at least one coordinate".into(),
                    ));
                }
                if !c.uses_alphabet(&source) {
                    return Err(Error::AlphabetMismatch(format!(
                        "cylinder `{c}` uses symbols outside the source alphabet"
                    )));
                }
                for (e, _) in c.iter() {
                    monoid.validate(e)?;
                }
                all.push(c);
            }
        }
        for (i, a) in all.iter().enumerate() {
            for b in all.iter().skip(i + 1) {
                if a.compatible_with(b) {
                    return Err(Error::InvalidInput(format!(
                        "cylinders `{a}` and `{b}` overlap; classes must be disjoint"
                    )));
                }
            }
        }
        Ok(CylinderPartition {
            monoid,
            source,
            target,
            classes,
        })
    }

    pub fn classes(&self) -> &[(Symbol, Vec<Pattern>)] {
        &self.classes
    }

    pub fn all_cylinders(&self) -> impl Iterator<Item = &Pattern> {
        self.classes.iter().flat_map(|(_, c)| c.iter())
    }
}

/// Provenance tag for codes generated from a parameterized family at a
/// bound; lets analyses probe how the presentation grows with the bound.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CodeTruncation {
    pub fixture: String,
    pub bound: u32,
}

/// Either a uniform local rule or a cylinder partition.
#[derive(Clone, PartialEq, Debug)]
pub enum CodeBody {
    Uniform(SlidingBlockRule),
    Partitioned(CylinderPartition),
}

#[derive(Clone, PartialEq, Debug)]
pub struct GeneralizedCode {
    pub body: CodeBody,
    pub truncation: Option<CodeTruncation>,
}

impl GeneralizedCode {
    pub fn uniform(rule: SlidingBlockRule) -> Self {
        GeneralizedCode {
            body: CodeBody::Uniform(rule),
            truncation: None,
        }
    }

    pub fn partitioned(p: CylinderPartition) -> Self {
        GeneralizedCode {
            body: CodeBody::Partitioned(p),
            truncation: None,
        }
    }

    pub fn with_truncation(mut self, fixture: impl Into<String>, bound: u32) -> Self {
        self.truncation = Some(CodeTruncation {
            fixture: fixture.into(),
            bound,
        });
        self
    }

    pub fn monoid(&self) -> MonoidSpec {
        match &self.body {
            CodeBody::Uniform(r) => r.monoid,
            CodeBody::Partitioned(p) => p.monoid,
        }
    }

    pub fn source_alphabet(&self) -> &Alphabet {
        match &self.body {
            CodeBody::Uniform(r) => &r.source,
            CodeBody::Partitioned(p) => &p.source,
        }
    }

    pub fn target_alphabet(&self) -> &Alphabet {
        match &self.body {
            CodeBody::Uniform(r) => &r.target,
            CodeBody::Partitioned(p) => &p.target,
        }
    }

    /// The cylinder-partition view: uniform rules contribute one cylinder
    /// per table row, all on the window.
    pub fn as_partition(&self) -> CylinderPartition {
        match &self.body {
            CodeBody::Partitioned(p) => p.clone(),
            CodeBody::Uniform(r) => {
                let mut classes: BTreeMap<Symbol, Vec<Pattern>> = BTreeMap::new();
                for (p, v) in r.rows() {
                    classes.entry(v.clone()).or_default().push(p);
                }
                CylinderPartition {
                    monoid: r.monoid,
                    source: r.source.clone(),
                    target: r.target.clone(),
                    classes: classes.into_iter().collect(),
                }
            }
        }
    }
}

/// Result of applying a code to a finite window: the defined output
/// positions, plus positions where every class is contradicted (evidence
/// that the input leaves the code's domain). Positions with insufficient
/// data are simply absent.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct CodeOutput {
    pub defined: BTreeMap<Element, Symbol>,
    pub no_class: BTreeSet<Element>,
}

/// Applies a code to a finite window, producing output wherever the
/// deciding data lies inside the window.
pub fn apply(code: &GeneralizedCode, w: &WindowConfig) -> Result<CodeOutput> {
    let m = code.monoid();
    let mut out = CodeOutput::default();
    match &code.body {
        CodeBody::Uniform(rule) => {
            let anchor = rule.window.first().expect("window nonempty").clone();
            let mut candidates: BTreeSet<Element> = BTreeSet::new();
            for (j, _) in w.pattern().iter() {
                if let Some(g) = m.solve_left(&anchor, j)? {
                    candidates.insert(g);
                }
            }
            'cands: for g in candidates {
                let mut key = Vec::with_capacity(rule.window.len());
                for i in rule.window.iter() {
                    let gi = m.op(&g, i)?;
                    match w.pattern().get(&gi).and_then(|s| rule.source.id_of(s)) {
                        Some(a) => key.push(a),
                        None => continue 'cands,
                    }
                }
                match rule.lookup_ids(&key) {
                    Some(v) => {
                        out.defined.insert(g, rule.target.symbol(v).clone());
                    }
                    None => {
                        out.no_class.insert(g);
                    }
                }
            }
        }
        CodeBody::Partitioned(part) => {
            let mut candidates: BTreeSet<Element> = BTreeSet::new();
            for c in part.all_cylinders() {
                for i in c.support().iter() {
                    for (j, _) in w.pattern().iter() {
                        if let Some(g) = m.solve_left(i, j)? {
                            candidates.insert(g);
                        }
                    }
                }
            }
            for g in candidates {
                let mut matched: Option<&Symbol> = None;
                let mut all_contradicted = true;
                for (sym, cyls) in part.classes() {
                    for c in cyls {
                        let mut full = true;
                        let mut contradicted = false;
                        for (i, want) in c.iter() {
                            let gi = m.op(&g, i)?;
                            match w.pattern().get(&gi) {
                                Some(have) if have == want => {}
                                Some(_) => {
                                    contradicted = true;
                                    full = false;
                                    break;
                                }
                                None => {
                                    full = false;
                                }
                            }
                        }
                        if full {
                            matched = Some(sym);
                        }
                        if !contradicted {
                            all_contradicted = false;
                        }
                    }
                }
                if let Some(sym) = matched {
                    out.defined.insert(g, sym.clone());
                } else if all_contradicted {
                    out.no_class.insert(g);
                }
            }
        }
    }
    Ok(out)
}

/// Composes two codes: the result applies `outer` after `inner`. When both
/// are uniform the result is uniform on the composed window; otherwise the
/// outer cylinders are pulled back through the inner partition.
pub fn compose(
    outer: &GeneralizedCode,
    inner: &GeneralizedCode,
    budget: &OracleBudget,
) -> Result<GeneralizedCode> {
    if inner.target_alphabet() != outer.source_alphabet() {
        return Err(Error::AlphabetMismatch(
            "inner target alphabet must equal outer source alphabet".into(),
        ));
    }
    if inner.monoid() != outer.monoid() {
        return Err(Error::InvalidInput(
            "codes live on different monoids".into(),
        ));
    }
    let m = inner.monoid();
    match (&outer.body, &inner.body) {
        (CodeBody::Uniform(f), CodeBody::Uniform(g)) => {
            let mut window = IndexSet::empty();
            for mcoord in f.window.iter() {
                window = window.union(&m.translate(mcoord, &g.window)?);
            }
            let f2 = f.clone();
            let g2 = g.clone();
            let rule = SlidingBlockRule::from_fn(
                m,
                window.clone(),
                g.source.clone(),
                f.target.clone(),
                move |p| {
                    let mut mid_entries = Vec::new();
                    for mcoord in f2.window.iter() {
                        let shifted = m.translate(mcoord, &g2.window).ok()?;
                        let key: Option<Vec<SymId>> = shifted
                            .iter()
                            .map(|e| p.get(e).and_then(|s| g2.source.id_of(s)))
                            .collect();
                        let v = g2.lookup_ids(&key?)?;
                        mid_entries.push((mcoord.clone(), g2.target.symbol(v).clone()));
                    }
                    let mid = Pattern::new(mid_entries).ok()?;
                    f2.lookup(&mid).ok().flatten().cloned()
                },
                budget,
            )?;
            Ok(GeneralizedCode::uniform(rule))
        }
        _ => {
            let fo = outer.as_partition();
            let gi = inner.as_partition();
            let mut classes: Vec<(Symbol, Vec<Pattern>)> = Vec::new();
            for (t, outer_cyls) in fo.classes() {
                let mut pulled: Vec<Pattern> = Vec::new();
                for oc in outer_cyls {
                    // Replace each mid-alphabet requirement (j, b) by the
                    // translated cylinders of inner's class for b.
                    let mut combos: Vec<Pattern> = vec![Pattern::unconstrained()];
                    for (j, b) in oc.iter() {
                        let inner_class = gi
                            .classes()
                            .iter()
                            .find(|(s, _)| s == b)
                            .map(|(_, c)| c.as_slice())
                            .unwrap_or(&[]);
                        let mut next = Vec::new();
                        for base in &combos {
                            for ic in inner_class {
                                let shifted = ic.translate(&m, j)?;
                                if let Some(merged) = base.merged_with(&shifted) {
                                    next.push(merged);
                                }
                            }
                            if next.len() > budget.max_words {
                                return Err(Error::OracleBudgetExceeded(
                                    "cylinder pullback exceeds the budget".into(),
                                ));
                            }
                        }
                        combos = next;
                    }
                    pulled.extend(combos.into_iter().filter(|p| !p.is_empty()));
                }
                pulled.sort();
                pulled.dedup();
                classes.push((t.clone(), pulled));
            }
            let part = CylinderPartition::new(m, gi.source.clone(), fo.target.clone(), classes)?;
            Ok(GeneralizedCode::partitioned(part))
        }
    }
}

/// A class in canonical form, with the coordinate set that the metric
/// measures (constant coordinates shared by every cylinder are not
/// charged).
#[derive(Clone, Debug)]
pub struct CanonicalClass {
    pub symbol: Symbol,
    pub cylinders: Vec<Pattern>,
    pub measured: IndexSet,
}

/// Canonicalizes each class: drops cylinders subsumed by others and merges
/// groups that differ at exactly one coordinate whose symbols cover the
/// whole alphabet. The fixpoint of these rewrites underlies both the
/// finite-to-one order and the radius.
pub fn canonical_classes(code: &GeneralizedCode) -> Vec<CanonicalClass> {
    let part = code.as_partition();
    let alphabet = &part.source;
    let mut out = Vec::new();
    for (sym, cyls) in part.classes() {
        let mut cur: Vec<Pattern> = cyls.clone();
        cur.sort();
        cur.dedup();
        loop {
            let mut changed = false;
            // drop cylinders whose constraints include another cylinder's
            let mut keep: Vec<Pattern> = Vec::new();
            for (i, c) in cur.iter().enumerate() {
                let redundant = cur
                    .iter()
                    .enumerate()
                    .any(|(j, d)| i != j && d.is_subpattern_of(c) && !(d == c && j > i));
                if !redundant {
                    keep.push(c.clone());
                }
            }
            if keep.len() != cur.len() {
                cur = keep;
                changed = true;
            }
            // merge groups differing at one coordinate that cover the alphabet
            let mut merge: Option<(Vec<usize>, Pattern)> = None;
            'outer: for idx in 0..cur.len() {
                let base = &cur[idx];
                for (e, _) in base.iter() {
                    let stripped = strip(base, e);
                    let mut group: Vec<usize> = Vec::new();
                    let mut symbols: BTreeSet<&Symbol> = BTreeSet::new();
                    for (j, other) in cur.iter().enumerate() {
                        if let Some(s) = other.get(e) {
                            if strip(other, e) == stripped {
                                group.push(j);
                                symbols.insert(s);
                            }
                        }
                    }
                    if symbols.len() == alphabet.len() {
                        merge = Some((group, stripped));
                        break 'outer;
                    }
                }
            }
            if let Some((group, stripped)) = merge {
                let mut next: Vec<Pattern> = cur
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| !group.contains(j))
                    .map(|(_, p)| p.clone())
                    .collect();
                next.push(stripped);
                next.sort();
                next.dedup();
                cur = next;
                changed = true;
            }
            if !changed {
                break;
            }
        }
        // measured coordinates: drop those constant across every cylinder
        let mut union = IndexSet::empty();
        for c in &cur {
            union = union.union(&c.support());
        }
        let measured = IndexSet::new(
            union
                .iter()
                .filter(|&e| {
                    let mut vals: BTreeSet<&Symbol> = BTreeSet::new();
                    let mut everywhere = true;
                    for c in &cur {
                        match c.get(e) {
                            Some(s) => {
                                vals.insert(s);
                            }
                            None => everywhere = false,
                        }
                    }
                    !(everywhere && vals.len() <= 1)
                })
                .cloned(),
        );
        out.push(CanonicalClass {
            symbol: sym.clone(),
            cylinders: cur,
            measured,
        });
    }
    out
}

fn strip(p: &Pattern, e: &Element) -> Pattern {
    let entries: Vec<(Element, Symbol)> = p
        .iter()
        .filter(|(k, _)| *k != e)
        .map(|(k, s)| (k.clone(), s.clone()))
        .collect();
    if entries.is_empty() {
        Pattern::unconstrained()
    } else {
        Pattern::new(entries).expect("nonempty")
    }
}

/// How many cylinders a class needs, at worst, after canonical merging.
#[derive(Clone, PartialEq, Debug)]
pub enum FiniteToOneOrder {
    Order(usize),
    /// The class counts keep growing with the truncation bound.
    LocallyFiniteUnbounded {
        probe: Vec<(u32, usize)>,
    },
}

/// The locally-finite-to-one order of an explicit code. Codes tagged as
/// truncations are probed at the next two bounds; strictly growing class
/// counts are reported as unbounded growth.
pub fn finite_to_one_order(
    code: &GeneralizedCode,
    regenerate: Option<&dyn Fn(u32) -> Result<GeneralizedCode>>,
) -> Result<FiniteToOneOrder> {
    let order_of = |c: &GeneralizedCode| -> usize {
        canonical_classes(c)
            .iter()
            .map(|cl| cl.cylinders.len())
            .max()
            .unwrap_or(0)
    };
    let base = order_of(code);
    if let (Some(tag), Some(regen)) = (&code.truncation, regenerate) {
        let mut probe = vec![(tag.bound, base)];
        for extra in 1..=2u32 {
            let bigger = regen(tag.bound + extra)?;
            probe.push((tag.bound + extra, order_of(&bigger)));
        }
        if probe.windows(2).all(|w| w[1].1 > w[0].1) {
            return Ok(FiniteToOneOrder::LocallyFiniteUnbounded { probe });
        }
    }
    Ok(FiniteToOneOrder::Order(base))
}

/// Pulls a target shift spec back through a uniform rule: the preimage is
/// cut out by the source patterns that map onto forbidden target patterns.
pub fn preimage_spec(
    rule: &SlidingBlockRule,
    target: &ShiftSpec,
    budget: &OracleBudget,
) -> Result<ShiftSpec> {
    if target.alphabet != rule.target {
        return Err(Error::AlphabetMismatch(
            "target spec alphabet must equal the rule's target alphabet".into(),
        ));
    }
    let m = rule.monoid;
    let mut forbidden: Vec<Pattern> = Vec::new();
    for q in target.forbidden.patterns() {
        let mut support = IndexSet::empty();
        for (j, _) in q.iter() {
            support = support.union(&m.translate(j, &rule.window)?);
        }
        let cells: Vec<&Element> = support.iter().collect();
        let total = (rule.source.len() as f64).powi(cells.len() as i32);
        if total > budget.max_words as f64 {
            return Err(Error::OracleBudgetExceeded(format!(
                "preimage enumeration over {} cells exceeds the budget",
                cells.len()
            )));
        }
        let mut assign = vec![0 as SymId; cells.len()];
        'assignments: loop {
            let p = Pattern::new(
                cells
                    .iter()
                    .zip(&assign)
                    .map(|(e, &a)| ((*e).clone(), rule.source.symbol(a).clone())),
            )?;
            let mut maps_onto = true;
            for (j, want) in q.iter() {
                let mut key = Vec::with_capacity(rule.window.len());
                for i in rule.window.iter() {
                    let ji = m.op(j, i)?;
                    key.push(
                        rule.source
                            .id_of(p.get(&ji).expect("inside support"))
                            .unwrap(),
                    );
                }
                match rule.lookup_ids(&key) {
                    Some(v) if rule.target.symbol(v) == want => {}
                    _ => {
                        maps_onto = false;
                        break;
                    }
                }
            }
            if maps_onto {
                forbidden.push(p);
            }
            let mut i = 0;
            loop {
                if i == assign.len() {
                    break 'assignments;
                }
                assign[i] += 1;
                if (assign[i] as usize) < rule.source.len() {
                    break;
                }
                assign[i] = 0;
                i += 1;
            }
        }
    }
    Ok(ShiftSpec::new(crate::pattern::ForbiddenSet::new(
        m,
        rule.source.clone(),
        forbidden,
    )?))
}

/// The indicator rule of a spec: window patterns embedding a forbidden
/// member map to 0, all others to 1. Applying it over the spec's windows
/// yields all-ones exactly on admissible data.
pub fn indicator_code(s: &ShiftSpec, budget: &OracleBudget) -> Result<SlidingBlockRule> {
    let window = {
        let w = s.memory_window();
        if w.is_empty() {
            IndexSet::singleton(s.monoid.identity())
        } else {
            w
        }
    };
    let bits = Alphabet::from_strs(["0", "1"])?;
    let zero = Symbol::new("0");
    let one = Symbol::new("1");
    let forbidden: Vec<Pattern> = s.forbidden.patterns().to_vec();
    SlidingBlockRule::from_fn(
        s.monoid,
        window,
        s.alphabet.clone(),
        bits,
        move |p| {
            let bad = forbidden.iter().any(|u| u.is_subpattern_of(p));
            Some(if bad { zero.clone() } else { one.clone() })
        },
        budget,
    )
}

/// Metric radius of the local rule: the largest distance from the identity
/// to a measured coordinate of any canonical class.
pub fn radius(code: &GeneralizedCode) -> Result<f64> {
    let m = code.monoid();
    let mut r: f64 = 0.0;
    for class in canonical_classes(code) {
        for e in class.measured.iter() {
            r = r.max(m.norm(e)?);
        }
    }
    Ok(r)
}

/// Uniformity report: the common finite window when one presentation
/// exists (absent when a truncation tag shows the support set growing
/// with the bound), together with the ball-finiteness hypothesis check.
#[derive(Clone, Debug)]
pub struct UniformityReport {
    pub window: Option<IndexSet>,
    pub radius: f64,
    pub ball_finite: bool,
    pub ball: Option<IndexSet>,
    pub growth_probe: Option<Vec<(u32, usize)>>,
}

pub fn is_uniform(
    code: &GeneralizedCode,
    regenerate: Option<&dyn Fn(u32) -> Result<GeneralizedCode>>,
) -> Result<UniformityReport> {
    let m = code.monoid();
    let r = radius(code)?;
    let ball_finite = m.balls_locally_finite();
    let ball = if ball_finite {
        Some(m.ball(&m.identity(), r)?)
    } else {
        None
    };
    let measured_union = |c: &GeneralizedCode| -> IndexSet {
        let mut u = IndexSet::empty();
        for class in canonical_classes(c) {
            u = u.union(&class.measured);
        }
        u
    };
    let base = measured_union(code);
    let mut growth_probe = None;
    let window = if let (Some(tag), Some(regen)) = (&code.truncation, regenerate) {
        let mut probe = vec![(tag.bound, base.len())];
        let mut grew = true;
        let mut prev = base.len();
        for extra in 1..=2u32 {
            let bigger = regen(tag.bound + extra)?;
            let n = measured_union(&bigger).len();
            probe.push((tag.bound + extra, n));
            grew = grew && n > prev;
            prev = n;
        }
        growth_probe = Some(probe);
        if grew {
            None
        } else {
            Some(base)
        }
    } else {
        Some(base)
    };
    Ok(UniformityReport {
        window,
        radius: r,
        ball_finite,
        ball,
        growth_probe,
    })
}
