//! Directed and labeled graphs, edge shifts, path languages, resolving
//! checks, the step-graph constructions, and the follower-set graph.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::alphabet::{Alphabet, SymId, Symbol};
use crate::error::{Error, Result};
use crate::language::{self, OracleBudget, Side, Word, WordOracle};
use crate::monoid::{Element, IndexSet, MonoidKind, MonoidSpec};
use crate::pattern::{ForbiddenSet, Pattern};
use crate::shift::{self, LanguageMode, ShiftSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphEdge {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

/// A finite directed graph with named vertices and edges.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DirectedGraph {
    vertices: Vec<String>,
    edges: Vec<GraphEdge>,
}

impl DirectedGraph {
    pub fn new() -> Self {
        DirectedGraph::default()
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<usize> {
        let name = name.into();
        if self.vertices.contains(&name) {
            return Err(Error::InvalidInput(format!("duplicate vertex `{name}`")));
        }
        self.vertices.push(name);
        Ok(self.vertices.len() - 1)
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn add_edge(&mut self, name: impl Into<String>, src: usize, dst: usize) -> Result<usize> {
        let name = name.into();
        if self.edges.iter().any(|e| e.name == name) {
            return Err(Error::InvalidInput(format!("duplicate edge `{name}`")));
        }
        if src >= self.vertices.len() || dst >= self.vertices.len() {
            return Err(Error::InvalidInput("edge endpoint out of range".into()));
        }
        self.edges.push(GraphEdge { name, src, dst });
        Ok(self.edges.len() - 1)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }
}

/// A directed graph with edge labels drawn from an alphabet.
#[derive(Clone, Debug, PartialEq)]
pub struct LabeledGraph {
    pub graph: DirectedGraph,
    labels: Vec<Symbol>,
    pub alphabet: Alphabet,
}

impl LabeledGraph {
    pub fn new(graph: DirectedGraph, labels: Vec<Symbol>) -> Result<Self> {
        if labels.len() != graph.edges().len() {
            return Err(Error::InvalidInput("one label per edge required".into()));
        }
        let mut uniq: Vec<Symbol> = labels.clone();
        uniq.sort();
        uniq.dedup();
        let alphabet = Alphabet::new(uniq)?;
        Ok(LabeledGraph {
            graph,
            labels,
            alphabet,
        })
    }

    pub fn label(&self, edge: usize) -> &Symbol {
        &self.labels[edge]
    }

    pub fn labels(&self) -> &[Symbol] {
        &self.labels
    }
}

/// The edge shift of a graph: a 1-step spec over the edge names forbidding
/// non-consecutive pairs.
pub fn edge_shift_spec(g: &DirectedGraph, monoid: MonoidSpec) -> Result<ShiftSpec> {
    match monoid.kind {
        MonoidKind::AdditiveN | MonoidKind::AdditiveZ => {}
        kind => {
            return Err(Error::UnsupportedMonoid {
                op: "edge shift",
                kind,
            })
        }
    }
    let alphabet = Alphabet::from_strs(g.edges().iter().map(|e| e.name.clone()))?;
    let mut patterns = Vec::new();
    for e in g.edges() {
        for f in g.edges() {
            if e.dst != f.src {
                patterns.push(Pattern::word(
                    0,
                    [Symbol::new(&e.name), Symbol::new(&f.name)],
                )?);
            }
        }
    }
    ShiftSpec::new(ForbiddenSet::new(monoid, alphabet, patterns)?)
        .with_step_hint(IndexSet::new([Element::int(0), Element::int(1)]))
}

/// Path-automaton oracle for the label language of a graph, pruned to
/// vertices that lie on infinite (one-sided) or bi-infinite (two-sided)
/// walks.
pub struct GraphOracle {
    alphabet: Alphabet,
    /// per live vertex: outgoing (letter, target) pairs
    out: Vec<Vec<(SymId, u32)>>,
    start: Vec<u32>,
}

impl GraphOracle {
    pub fn new(g: &LabeledGraph, side: Side) -> Result<GraphOracle> {
        let n = g.graph.vertices().len();
        let mut alive = vec![true; n];
        loop {
            let mut changed = false;
            for v in 0..n {
                if !alive[v] {
                    continue;
                }
                let has_out = g.graph.edges().iter().any(|e| e.src == v && alive[e.dst]);
                if !has_out {
                    alive[v] = false;
                    changed = true;
                }
            }
            if side == Side::TwoSided {
                for v in 0..n {
                    if !alive[v] {
                        continue;
                    }
                    let has_in = g.graph.edges().iter().any(|e| e.dst == v && alive[e.src]);
                    if !has_in {
                        alive[v] = false;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut out = vec![Vec::new(); n];
        for (i, e) in g.graph.edges().iter().enumerate() {
            if alive[e.src] && alive[e.dst] {
                let letter = g.alphabet.id_of(g.label(i)).unwrap();
                out[e.src].push((letter, e.dst as u32));
            }
        }
        for o in &mut out {
            o.sort();
        }
        let start = (0..n as u32).filter(|&v| alive[v as usize]).collect();
        Ok(GraphOracle {
            alphabet: g.alphabet.clone(),
            out,
            start,
        })
    }
}

impl WordOracle for GraphOracle {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn initial(&self) -> Vec<u32> {
        self.start.clone()
    }

    fn advance(&self, states: &[u32], letter: SymId) -> Vec<u32> {
        let mut next: Vec<u32> = states
            .iter()
            .flat_map(|&v| {
                self.out[v as usize]
                    .iter()
                    .filter(move |(l, _)| *l == letter)
                    .map(|(_, t)| *t)
            })
            .collect();
        next.sort_unstable();
        next.dedup();
        next
    }
}

/// Exactly the label words of consecutive paths of length n, with liveness
/// pruning chosen by the side semantics.
pub fn graph_language(
    g: &LabeledGraph,
    n: usize,
    side: Side,
    budget: &OracleBudget,
) -> Result<Vec<Word>> {
    let oracle = GraphOracle::new(g, side)?;
    language::words_of_len(&oracle, n, budget)
}

fn word_ids(g: &LabeledGraph, w: &[Symbol]) -> Result<Vec<SymId>> {
    w.iter()
        .map(|s| {
            g.alphabet
                .id_of(s)
                .ok_or_else(|| Error::AlphabetMismatch(format!("label `{s}` not in the graph")))
        })
        .collect()
}

/// Vertices that start some path representing `w` (no liveness pruning).
pub fn initial_vertices(g: &LabeledGraph, w: &[Symbol]) -> Result<BTreeSet<usize>> {
    let ids = word_ids(g, w);
    let Ok(ids) = ids else {
        return Ok(BTreeSet::new());
    };
    let mut set: BTreeSet<usize> = (0..g.graph.vertices().len()).collect();
    for &a in ids.iter().rev() {
        let mut prev = BTreeSet::new();
        for (i, e) in g.graph.edges().iter().enumerate() {
            if g.alphabet.id_of(g.label(i)) == Some(a) && set.contains(&e.dst) {
                prev.insert(e.src);
            }
        }
        set = prev;
    }
    Ok(set)
}

/// Vertices that end some path representing `w` (no liveness pruning).
pub fn terminal_vertices(g: &LabeledGraph, w: &[Symbol]) -> Result<BTreeSet<usize>> {
    let ids = word_ids(g, w);
    let Ok(ids) = ids else {
        return Ok(BTreeSet::new());
    };
    let mut set: BTreeSet<usize> = (0..g.graph.vertices().len()).collect();
    for &a in &ids {
        let mut next = BTreeSet::new();
        for (i, e) in g.graph.edges().iter().enumerate() {
            if g.alphabet.id_of(g.label(i)) == Some(a) && set.contains(&e.src) {
                next.insert(e.dst);
            }
        }
        set = next;
    }
    Ok(set)
}

/// Resolving checks, with the offending vertex and edge pair as witness.
#[derive(Clone, Debug, PartialEq)]
pub struct ResolvingCheck {
    pub ok: bool,
    pub witness: Option<(String, String, String)>,
}

pub fn is_right_resolving(g: &LabeledGraph) -> ResolvingCheck {
    resolving(g, true)
}

pub fn is_left_resolving(g: &LabeledGraph) -> ResolvingCheck {
    resolving(g, false)
}

fn resolving(g: &LabeledGraph, outgoing: bool) -> ResolvingCheck {
    for v in 0..g.graph.vertices().len() {
        let mut seen: BTreeMap<&Symbol, usize> = BTreeMap::new();
        for (i, e) in g.graph.edges().iter().enumerate() {
            let at = if outgoing { e.src } else { e.dst };
            if at != v {
                continue;
            }
            if let Some(&j) = seen.get(g.label(i)) {
                return ResolvingCheck {
                    ok: false,
                    witness: Some((
                        g.graph.vertices()[v].clone(),
                        g.graph.edges()[j].name.clone(),
                        e.name.clone(),
                    )),
                };
            }
            seen.insert(g.label(i), i);
        }
    }
    ResolvingCheck {
        ok: true,
        witness: None,
    }
}

fn word_name(alphabet: &Alphabet, w: &[SymId]) -> String {
    if w.is_empty() {
        return "e".into();
    }
    let syms: Vec<&str> = w.iter().map(|&a| alphabet.symbol(a).as_str()).collect();
    if syms.iter().all(|s| s.chars().count() == 1) {
        syms.concat()
    } else {
        syms.join(".")
    }
}

/// Verifies the step property through the extension test, then builds the
/// de Bruijn style graph: vertices are M-windows, edges (M+1)-windows.
pub fn sft_edge_presentation(
    s: &ShiftSpec,
    m: usize,
    budget: &OracleBudget,
) -> Result<DirectedGraph> {
    ensure_step(s, m, budget)?;
    let oracle = s.exact_oracle(budget)?;
    let vs = language::words_of_len(&oracle, m, budget)?;
    let es = language::words_of_len(&oracle, m + 1, budget)?;
    let mut g = DirectedGraph::new();
    for v in &vs {
        g.add_vertex(word_name(&s.alphabet, v))?;
    }
    for e in &es {
        let src = g
            .vertex_index(&word_name(&s.alphabet, &e[..m]))
            .ok_or_else(|| Error::InvalidInput("edge prefix missing from the vertex set".into()))?;
        let dst = g
            .vertex_index(&word_name(&s.alphabet, &e[1..]))
            .ok_or_else(|| Error::InvalidInput("edge suffix missing from the vertex set".into()))?;
        g.add_edge(word_name(&s.alphabet, e), src, dst)?;
    }
    Ok(g)
}

fn ensure_step(s: &ShiftSpec, m: usize, budget: &OracleBudget) -> Result<()> {
    if let Some(hi) = s.memory_window().last().and_then(Element::as_int) {
        if hi <= m as i64 {
            return Ok(());
        }
    } else {
        return Ok(()); // full shift
    }
    let oracle = s.exact_oracle(budget)?;
    let n_max = 2 * m + 4;
    match crate::classifier::extension_mstep_test(&oracle, m, n_max, budget)? {
        None => Ok(()),
        Some((u, w, v)) => Err(Error::NotMStep {
            m,
            u: word_name(&s.alphabet, &u),
            w: word_name(&s.alphabet, &w),
            v: word_name(&s.alphabet, &v),
        }),
    }
}

/// Which end of the window the label reads.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LabelSide {
    Initial,
    Terminal,
}

/// Labels the step graph by the first or last window letter. On the
/// one-sided lattice the terminal labeling pads with placeholder prefixes
/// whenever some word lacks a left extension, so walks can start fresh.
pub fn mstep_labeled_presentation(
    s: &ShiftSpec,
    m: usize,
    side: LabelSide,
    budget: &OracleBudget,
) -> Result<LabeledGraph> {
    ensure_step(s, m, budget)?;
    let oracle = s.exact_oracle(budget)?;
    if m == 0 {
        // single vertex, one loop per letter
        let mut g = DirectedGraph::new();
        g.add_vertex("e")?;
        let letters = language::words_of_len(&oracle, 1, budget)?;
        let mut labels = Vec::new();
        for w in letters {
            let sym = s.alphabet.symbol(w[0]).clone();
            g.add_edge(sym.to_string(), 0, 0)?;
            labels.push(sym);
        }
        return LabeledGraph::new(g, labels);
    }
    let one_sided = oracle.side == Side::OneSided;
    let pad = one_sided && side == LabelSide::Terminal && {
        // does some M-window lack a left extension?
        let ws = language::words_of_len(&oracle, m, budget)?;
        let mut missing = false;
        'words: for w in &ws {
            for a in 0..s.alphabet.len() as SymId {
                let mut aw = vec![a];
                aw.extend_from_slice(w);
                if language::fold(&oracle, oracle.anchored_initial(), &aw).is_some() {
                    continue 'words;
                }
            }
            missing = true;
            break;
        }
        missing
    };
    let mut g = DirectedGraph::new();
    let mut edge_words: Vec<(String, String, String, SymId)> = Vec::new();
    let pad_name = |w: &[SymId], len: usize, alphabet: &Alphabet| -> String {
        let mut name = String::new();
        for _ in w.len()..len {
            name.push('_');
        }
        let rest = word_name(alphabet, w);
        if w.is_empty() {
            name
        } else {
            name + &rest
        }
    };
    // real vertices and edges
    let vs = language::words_of_len(&oracle, m, budget)?;
    for v in &vs {
        g.add_vertex(word_name(&s.alphabet, v))?;
    }
    let es = language::words_of_len(&oracle, m + 1, budget)?;
    for e in &es {
        let label = match side {
            LabelSide::Initial => e[0],
            LabelSide::Terminal => e[m],
        };
        edge_words.push((
            word_name(&s.alphabet, e),
            word_name(&s.alphabet, &e[..m]),
            word_name(&s.alphabet, &e[1..]),
            label,
        ));
    }
    if pad {
        // anchored prefixes shorter than the window, padded on the left
        for len in 0..m {
            let prefixes =
                language::words_of_len_from(&oracle, oracle.anchored_initial(), len, budget)?;
            for p in &prefixes {
                let name = pad_name(p, m, &s.alphabet);
                if g.vertex_index(&name).is_none() {
                    g.add_vertex(name)?;
                }
            }
        }
        for len in 1..=m {
            let words =
                language::words_of_len_from(&oracle, oracle.anchored_initial(), len, budget)?;
            for w in &words {
                let src = pad_name(&w[..len - 1], m, &s.alphabet);
                let dst = pad_name(w, m, &s.alphabet);
                edge_words.push((pad_name(w, m + 1, &s.alphabet), src, dst, w[len - 1]));
            }
        }
    }
    let mut labels = Vec::new();
    edge_words.sort();
    for (name, src, dst, label) in edge_words {
        let Some(si) = g.vertex_index(&src) else {
            continue;
        };
        let Some(di) = g.vertex_index(&dst) else {
            continue;
        };
        g.add_edge(name, si, di)?;
        labels.push(s.alphabet.symbol(label).clone());
    }
    LabeledGraph::new(g, labels)
}

/// A vertex of the truncated follower-set graph.
#[derive(Clone, Debug)]
pub struct FollowerVertex {
    /// Shortest word whose follower set this is.
    pub witness: Word,
    /// Followers of length 0..=depth, sorted.
    pub followers: Vec<Word>,
}

/// The follower-set graph truncated at a word/follower depth.
#[derive(Clone, Debug)]
pub struct FollowerSetGraph {
    pub depth: usize,
    pub alphabet: Alphabet,
    pub vertices: Vec<FollowerVertex>,
    /// (source vertex, letter, target vertex); deterministic per letter.
    pub edges: Vec<(usize, SymId, usize)>,
    /// No vertex was first discovered by a depth-`depth` word.
    pub saturated: bool,
}

impl FollowerSetGraph {
    pub fn to_labeled(&self) -> Result<LabeledGraph> {
        let mut g = DirectedGraph::new();
        for v in &self.vertices {
            g.add_vertex(format!("V({})", word_name(&self.alphabet, &v.witness)))?;
        }
        let mut labels = Vec::new();
        for (i, (src, a, dst)) in self.edges.iter().enumerate() {
            g.add_edge(format!("f{i}"), *src, *dst)?;
            labels.push(self.alphabet.symbol(*a).clone());
        }
        LabeledGraph::new(g, labels)
    }
}

/// Builds the truncated follower-set graph over any word oracle. Vertices
/// are deduplicated by their truncated follower sets; an edge labeled `a`
/// joins the class of `v` to the class of `va`.
pub fn follower_set_graph(
    oracle: &dyn WordOracle,
    depth: usize,
    budget: &OracleBudget,
) -> Result<FollowerSetGraph> {
    let letters = oracle.alphabet().len() as SymId;
    let followers_of = |set: &Vec<u32>| -> Result<Vec<Word>> {
        let mut out = vec![Vec::new()];
        let mut word = Vec::new();
        collect_followers(oracle, set, depth, budget, &mut word, &mut out)?;
        out.sort();
        Ok(out)
    };
    let init = oracle.initial();
    if init.is_empty() {
        return Err(Error::OracleBudgetExceeded(
            "oracle denotes an empty language".into(),
        ));
    }
    let mut vertices: Vec<FollowerVertex> = Vec::new();
    let mut edges: Vec<(usize, SymId, usize)> = Vec::new();
    let mut by_followers: HashMap<Vec<Word>, usize> = HashMap::new();
    let mut by_stateset: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut saturated = true;

    let f0 = followers_of(&init)?;
    vertices.push(FollowerVertex {
        witness: Vec::new(),
        followers: f0.clone(),
    });
    by_followers.insert(f0, 0);
    by_stateset.insert(init.clone(), 0);
    let mut queue: VecDeque<(Word, Vec<u32>, usize)> = VecDeque::new();
    queue.push_back((Vec::new(), init, 0));

    while let Some((word, set, vid)) = queue.pop_front() {
        if word.len() == depth {
            continue;
        }
        for a in 0..letters {
            let next = oracle.advance(&set, a);
            if next.is_empty() {
                continue;
            }
            let mut wa = word.clone();
            wa.push(a);
            let target = if let Some(&t) = by_stateset.get(&next) {
                t
            } else {
                let fs = followers_of(&next)?;
                let t = if let Some(&t) = by_followers.get(&fs) {
                    t
                } else {
                    let t = vertices.len();
                    if wa.len() == depth {
                        saturated = false;
                    }
                    vertices.push(FollowerVertex {
                        witness: wa.clone(),
                        followers: fs.clone(),
                    });
                    by_followers.insert(fs, t);
                    queue.push_back((wa.clone(), next.clone(), t));
                    t
                };
                by_stateset.insert(next, t);
                t
            };
            edges.push((vid, a, target));
        }
    }
    Ok(FollowerSetGraph {
        depth,
        alphabet: oracle.alphabet().clone(),
        vertices,
        edges,
        saturated,
    })
}

fn collect_followers(
    o: &dyn WordOracle,
    states: &[u32],
    depth: usize,
    budget: &OracleBudget,
    word: &mut Word,
    out: &mut Vec<Word>,
) -> Result<()> {
    if word.len() == depth {
        return Ok(());
    }
    for a in 0..o.alphabet().len() as SymId {
        let next = o.advance(states, a);
        if next.is_empty() {
            continue;
        }
        word.push(a);
        out.push(word.clone());
        if out.len() > budget.max_words {
            return Err(Error::OracleBudgetExceeded(
                "follower enumeration exceeds the word budget".into(),
            ));
        }
        collect_followers(o, &next, depth, budget, word, out)?;
        word.pop();
    }
    Ok(())
}

/// Splits labels by source vertex: every new label has a unique initial
/// vertex, and the forgetful 1-block rule recovers the original language.
pub fn relabel_split(
    g: &LabeledGraph,
    monoid: MonoidSpec,
) -> Result<(LabeledGraph, crate::block_code::SlidingBlockRule)> {
    let mut new_labels = Vec::new();
    for (i, e) in g.graph.edges().iter().enumerate() {
        new_labels.push(Symbol::new(format!(
            "{}@{}",
            g.label(i),
            g.graph.vertices()[e.src]
        )));
    }
    let split = LabeledGraph::new(g.graph.clone(), new_labels.clone())?;
    let mut rule = crate::block_code::SlidingBlockRule::new(
        monoid,
        IndexSet::singleton(monoid.identity()),
        split.alphabet.clone(),
        g.alphabet.clone(),
    )?;
    for (i, l) in new_labels.iter().enumerate() {
        let key = Pattern::new([(monoid.identity(), l.clone())])?;
        // several edges may share the split label only if they also share
        // source and original label; the rows then coincide
        rule.insert_row(&key, g.label(i))?;
    }
    Ok((split, rule))
}

/// Presents the image of a spec under a uniform rule on a contiguous
/// window as a labeled graph over the image alphabet.
pub fn code_graph_presentation(
    s: &ShiftSpec,
    rule: &crate::block_code::SlidingBlockRule,
    budget: &OracleBudget,
) -> Result<LabeledGraph> {
    let window = &rule.window;
    let ints: Option<Vec<i64>> = window.iter().map(Element::as_int).collect();
    let ints = ints.ok_or_else(|| {
        Error::InvalidInput("code graph presentations need an integer window".into())
    })?;
    if ints.first() != Some(&0) || ints.windows(2).any(|w| w[1] != w[0] + 1) {
        return Err(Error::InvalidInput(
            "code graph presentations need the window {0..m-1}".into(),
        ));
    }
    let m = ints.len();
    let step = s
        .memory_window()
        .last()
        .and_then(Element::as_int)
        .unwrap_or(0)
        .max(0) as usize;
    if step > m {
        return Err(Error::StepExceedsWindow { step, window: m });
    }
    let oracle = s.exact_oracle(budget)?;
    let apply_rule = |w: &[SymId]| -> Result<Symbol> {
        let p = Pattern::new(
            window
                .iter()
                .zip(w)
                .map(|(e, &a)| (e.clone(), s.alphabet.symbol(a).clone())),
        )?;
        rule.lookup(&p)?
            .cloned()
            .ok_or_else(|| Error::InvalidInput(format!("rule undefined on window `{p}`")))
    };
    let (vlen, elen) = if step < m { (m - 1, m) } else { (m, m + 1) };
    let vs = language::words_of_len(&oracle, vlen, budget)?;
    let es = language::words_of_len(&oracle, elen, budget)?;
    let mut g = DirectedGraph::new();
    for v in &vs {
        g.add_vertex(word_name(&s.alphabet, v))?;
    }
    let mut labels = Vec::new();
    for e in &es {
        let src = g.vertex_index(&word_name(&s.alphabet, &e[..vlen])).unwrap();
        let dst = g.vertex_index(&word_name(&s.alphabet, &e[1..])).unwrap();
        let label = apply_rule(&e[..m])?;
        g.add_edge(word_name(&s.alphabet, e), src, dst)?;
        labels.push(label);
    }
    LabeledGraph::new(g, labels)
}

/// The essential subgraph: vertices with both incoming and outgoing edges
/// (computed iteratively), with dangling edges dropped.
pub fn essential_subgraph(g: &LabeledGraph) -> Result<LabeledGraph> {
    let n = g.graph.vertices().len();
    let mut alive = vec![true; n];
    loop {
        let mut changed = false;
        for v in 0..n {
            if !alive[v] {
                continue;
            }
            let has_out = g.graph.edges().iter().any(|e| e.src == v && alive[e.dst]);
            let has_in = g.graph.edges().iter().any(|e| e.dst == v && alive[e.src]);
            if !(has_out && has_in) {
                alive[v] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut out = DirectedGraph::new();
    let mut remap = vec![usize::MAX; n];
    for v in 0..n {
        if alive[v] {
            remap[v] = out.add_vertex(g.graph.vertices()[v].clone())?;
        }
    }
    let mut labels = Vec::new();
    for (i, e) in g.graph.edges().iter().enumerate() {
        if alive[e.src] && alive[e.dst] {
            out.add_edge(e.name.clone(), remap[e.src], remap[e.dst])?;
            labels.push(g.label(i).clone());
        }
    }
    LabeledGraph::new(out, labels)
}

/// Converts a one-dimensional exact spec language into patterns on a
/// concrete window, for comparisons against graph languages.
pub fn spec_words(s: &ShiftSpec, n: usize, budget: &OracleBudget) -> Result<Vec<Vec<Symbol>>> {
    let window = IndexSet::new((0..n as i64).map(Element::int));
    let lang = shift::language(s, &window, LanguageMode::Exact, budget)?;
    Ok(lang
        .patterns
        .iter()
        .map(|p| p.iter().map(|(_, s)| s.clone()).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shift::LanguageMode;

    fn budget() -> OracleBudget {
        OracleBudget::default()
    }

    fn sym(s: &str) -> Symbol {
        Symbol::new(s)
    }

    fn golden() -> ShiftSpec {
        crate::shift::tests::golden_mean(MonoidSpec::additive_z())
    }

    fn even_graph() -> LabeledGraph {
        crate::fixtures::fixture("even-shift", None)
            .unwrap()
            .graph
            .unwrap()
    }

    fn to_string_word(alphabet: &Alphabet, w: &[SymId]) -> String {
        w.iter().map(|&a| alphabet.symbol(a).to_string()).collect()
    }

    #[test]
    fn edge_shift_of_loops_is_full() {
        let mut g = DirectedGraph::new();
        g.add_vertex("v").unwrap();
        for k in 0..3 {
            g.add_edge(format!("l{k}"), 0, 0).unwrap();
        }
        let s = edge_shift_spec(&g, MonoidSpec::additive_z()).unwrap();
        let w = IndexSet::new((0..3).map(Element::int));
        let lang = shift::language(&s, &w, LanguageMode::Exact, &budget()).unwrap();
        assert_eq!(lang.patterns.len(), 27);
    }

    #[test]
    fn edge_shift_of_golden_window_graph() {
        let g = sft_edge_presentation(&golden(), 1, &budget()).unwrap();
        assert_eq!(g.vertices().len(), 2);
        assert_eq!(g.edges().len(), 3);
        let s = edge_shift_spec(&g, MonoidSpec::additive_z()).unwrap();
        // words of n edges correspond to golden words of length n+1
        let o = s.exact_oracle(&budget()).unwrap();
        assert_eq!(language::words_of_len(&o, 2, &budget()).unwrap().len(), 5);
        assert_eq!(language::words_of_len(&o, 3, &budget()).unwrap().len(), 8);
    }

    #[test]
    fn one_sided_edge_shift_prunes_sinks() {
        let mut g = DirectedGraph::new();
        let a = g.add_vertex("a").unwrap();
        let b = g.add_vertex("b").unwrap();
        g.add_edge("loop", a, a).unwrap();
        g.add_edge("into", a, b).unwrap(); // b has no outgoing edge
        let s = edge_shift_spec(&g, MonoidSpec::additive_n()).unwrap();
        let o = s.exact_oracle(&budget()).unwrap();
        let words = language::words_of_len(&o, 2, &budget()).unwrap();
        let names: Vec<String> = words
            .iter()
            .map(|w| to_string_word(&s.alphabet, w))
            .collect();
        assert_eq!(names, ["looploop"]);
    }

    #[test]
    fn step_graph_counts() {
        assert_eq!(
            sft_edge_presentation(&golden(), 2, &budget())
                .unwrap()
                .vertices()
                .len(),
            3
        );
        assert_eq!(
            sft_edge_presentation(&golden(), 2, &budget())
                .unwrap()
                .edges()
                .len(),
            5
        );
        let full = ShiftSpec::full_shift(
            MonoidSpec::additive_z(),
            Alphabet::from_strs(["0", "1"]).unwrap(),
        );
        let g = sft_edge_presentation(&full, 1, &budget()).unwrap();
        assert_eq!((g.vertices().len(), g.edges().len()), (2, 4));
    }

    #[test]
    fn labeled_presentations() {
        let g = mstep_labeled_presentation(&golden(), 1, LabelSide::Initial, &budget()).unwrap();
        assert_eq!(g.graph.vertices().len(), 2);
        assert!(is_left_resolving(&g).ok);
        // |I(w)| = 1 for words of length >= 1
        for w in ["0", "1", "01", "010"] {
            let word: Vec<Symbol> = w.chars().map(|c| sym(&c.to_string())).collect();
            assert_eq!(initial_vertices(&g, &word).unwrap().len(), 1, "{w}");
        }
        // language matches the spec language
        let oracle = GraphOracle::new(&g, Side::TwoSided).unwrap();
        for n in 1..=8 {
            let gw = language::words_of_len(&oracle, n, &budget()).unwrap();
            assert_eq!(gw.len(), spec_words(&golden(), n, &budget()).unwrap().len());
        }

        let full = ShiftSpec::full_shift(
            MonoidSpec::additive_z(),
            Alphabet::from_strs(["0", "1"]).unwrap(),
        );
        let g0 = mstep_labeled_presentation(&full, 0, LabelSide::Initial, &budget()).unwrap();
        assert_eq!(g0.graph.vertices().len(), 1);
        assert_eq!(g0.graph.edges().len(), 2);
    }

    #[test]
    fn terminal_presentation_pads_one_sided_starts() {
        // one-sided spec where "1" admits no left extension: ban 01 and 11.
        let a = Alphabet::from_strs(["0", "1"]).unwrap();
        let f = crate::pattern::ForbiddenSet::new(
            MonoidSpec::additive_n(),
            a,
            [
                Pattern::word(0, [sym("0"), sym("1")]).unwrap(),
                Pattern::word(0, [sym("1"), sym("1")]).unwrap(),
            ],
        )
        .unwrap();
        let s = ShiftSpec::new(f);
        let g = mstep_labeled_presentation(&s, 1, LabelSide::Terminal, &budget()).unwrap();
        // x = 1 0^inf is in the shift, so some walk must read the label 1
        // first; the padded vertex provides it.
        let oracle = GraphOracle::new(&g, Side::OneSided).unwrap();
        let one = g.alphabet.id_of(&sym("1")).unwrap();
        let zero = g.alphabet.id_of(&sym("0")).unwrap();
        assert!(language::contains(&oracle, &[one, zero, zero]));
        assert!(!language::contains(&oracle, &[zero, one]));
    }

    #[test]
    fn resolving_checks_with_witness() {
        let g = even_graph();
        assert!(is_right_resolving(&g).ok);
        let mut dg = DirectedGraph::new();
        dg.add_vertex("v").unwrap();
        dg.add_edge("x", 0, 0).unwrap();
        dg.add_edge("y", 0, 0).unwrap();
        let lg = LabeledGraph::new(dg, vec![sym("a"), sym("a")]).unwrap();
        let check = is_right_resolving(&lg);
        assert!(!check.ok);
        assert!(check.witness.is_some());
        assert!(!is_left_resolving(&lg).ok);
    }

    #[test]
    fn follower_graphs_of_fixtures() {
        let o = golden().exact_oracle(&budget()).unwrap();
        let fg = follower_set_graph(&o, 8, &budget()).unwrap();
        assert_eq!(fg.vertices.len(), 2);
        assert!(fg.saturated);
        assert!(is_right_resolving(&fg.to_labeled().unwrap()).ok);

        let even = GraphOracle::new(&even_graph(), Side::TwoSided).unwrap();
        let fg = follower_set_graph(&even, 12, &budget()).unwrap();
        assert_eq!(fg.vertices.len(), 3);
        assert!(fg.saturated);
    }

    #[test]
    fn follower_terminal_sets_grow_with_the_alternating_fixture() {
        let k = 3u32;
        let s = crate::fixtures::fixture("ex7.11", Some(k))
            .unwrap()
            .spec
            .unwrap();
        let o = s.exact_oracle(&budget()).unwrap();
        let fg = follower_set_graph(&o, 6, &budget()).unwrap();
        let essential = essential_subgraph(&fg.to_labeled().unwrap()).unwrap();
        let t0 = terminal_vertices(&essential, &[sym("0")]).unwrap();
        assert_eq!(t0.len(), k as usize);
        let i0 = initial_vertices(&essential, &[sym("0")]).unwrap();
        assert_eq!(i0.len(), k as usize);
    }

    #[test]
    fn relabel_split_collapses_to_original_language() {
        let g = even_graph();
        let (split, rule) = relabel_split(&g, MonoidSpec::additive_z()).unwrap();
        // every split label has a unique initial vertex
        for l in split.alphabet.iter() {
            assert_eq!(
                initial_vertices(&split, std::slice::from_ref(l))
                    .unwrap()
                    .len(),
                1
            );
        }
        // the forgetful rule is 2-to-1 at worst, matching max |I(a)|
        let orders: Vec<usize> = g
            .alphabet
            .iter()
            .map(|a| initial_vertices(&g, std::slice::from_ref(a)).unwrap().len())
            .collect();
        assert_eq!(orders.iter().max(), Some(&2));
        let code = crate::block_code::GeneralizedCode::uniform(rule);
        assert_eq!(
            crate::block_code::finite_to_one_order(&code, None).unwrap(),
            crate::block_code::FiniteToOneOrder::Order(2)
        );
        // languages agree under the relabeling
        let so = GraphOracle::new(&split, Side::TwoSided).unwrap();
        let go = GraphOracle::new(&g, Side::TwoSided).unwrap();
        for n in 1..=8 {
            let mut mapped: Vec<String> = language::words_of_len(&so, n, &budget())
                .unwrap()
                .iter()
                .map(|w| {
                    w.iter()
                        .map(|&a| {
                            let name = split.alphabet.symbol(a).as_str();
                            name.split('@').next().unwrap().to_string()
                        })
                        .collect::<String>()
                })
                .collect();
            mapped.sort();
            mapped.dedup();
            let mut direct: Vec<String> = language::words_of_len(&go, n, &budget())
                .unwrap()
                .iter()
                .map(|w| to_string_word(&g.alphabet, w))
                .collect();
            direct.sort();
            assert_eq!(mapped, direct, "length {n}");
        }
    }

    #[test]
    fn code_graph_presentation_of_pair_sum() {
        let code = crate::fixtures::fixture("ex3.2-N", None)
            .unwrap()
            .code
            .unwrap();
        let crate::block_code::CodeBody::Uniform(rule) = &code.body else {
            panic!()
        };
        let golden_n = crate::shift::tests::golden_mean(MonoidSpec::additive_n());
        let g = code_graph_presentation(&golden_n, rule, &budget()).unwrap();
        assert_eq!(g.graph.vertices().len(), 2);
        assert_eq!(g.graph.edges().len(), 3);
        let mut labels: Vec<String> = g.labels().iter().map(|l| l.to_string()).collect();
        labels.sort();
        assert_eq!(labels, ["0", "1", "1"]);
    }

    #[test]
    fn identity_code_graph_has_unique_initials() {
        let golden_n = crate::shift::tests::golden_mean(MonoidSpec::additive_n());
        let id = crate::block_code::SlidingBlockRule::identity(
            MonoidSpec::additive_n(),
            &golden_n.alphabet,
        )
        .unwrap();
        let g = code_graph_presentation(&golden_n, &id, &budget()).unwrap();
        for a in g.alphabet.iter() {
            assert_eq!(
                initial_vertices(&g, std::slice::from_ref(a)).unwrap().len(),
                1
            );
        }
    }
}
