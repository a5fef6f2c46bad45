//! Built-in worked-example fixtures, reachable from the CLI through the
//! `fixtures:` pseudo-path scheme. Parameterized constructions are
//! truncated at an explicit bound, which is recorded on the artifacts.

use crate::alphabet::{Alphabet, Symbol};
use crate::block_code::{CylinderPartition, GeneralizedCode, SlidingBlockRule};
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, LabeledGraph};
use crate::language::OracleBudget;
use crate::monoid::{Element, IndexSet, MonoidSpec};
use crate::pattern::{ForbiddenSet, Pattern};
use crate::shift::{self, ShiftSpec};

/// Everything a named fixture provides.
#[derive(Clone, Debug)]
pub struct FixtureBundle {
    pub name: String,
    pub bound: Option<u32>,
    pub spec: Option<ShiftSpec>,
    pub code: Option<GeneralizedCode>,
    pub graph: Option<LabeledGraph>,
    /// Cylinders for partition-centric fixtures.
    pub partition_cylinders: Option<Vec<Pattern>>,
    pub notes: Vec<String>,
}

impl FixtureBundle {
    fn new(name: &str, bound: Option<u32>) -> Self {
        FixtureBundle {
            name: name.into(),
            bound,
            spec: None,
            code: None,
            graph: None,
            partition_cylinders: None,
            notes: Vec::new(),
        }
    }
}

pub fn fixture_names() -> &'static [&'static str] {
    &[
        "golden-mean",
        "even-shift",
        "context-free",
        "ex2.1-N",
        "ex2.1-Nstar",
        "ex3.2-N",
        "ex3.2-Nstar",
        "ex3.8",
        "ex4.9",
        "ex7.8",
        "ex7.11",
        "ex8.1-N",
        "ex8.1-Z",
        "ex8.5-svl",
        "exA.3",
        "exB.3",
        "exB.4",
        "lemma9.8",
        "lemma9.5-union",
    ]
}

fn sym(s: impl AsRef<str>) -> Symbol {
    Symbol::new(s)
}

fn word(start: i64, letters: &str) -> Result<Pattern> {
    Pattern::word(start, letters.chars().map(|c| sym(c.to_string())))
}

fn need_bound(name: &str, bound: Option<u32>) -> Result<u32> {
    bound.ok_or_else(|| Error::MissingBound(name.into()))
}

/// Expands a named parameterized forbidden family at a bound. The family
/// names match the fixture names.
pub fn expand_family(name: &str, bound: u32) -> Result<ForbiddenSet> {
    match name {
        "context-free" => {
            let a = Alphabet::from_strs(["a", "b", "c"])?.with_truncation(bound);
            let mut pats = Vec::new();
            for m in 1..=bound as usize {
                for n in 1..=bound as usize {
                    if m == n {
                        continue;
                    }
                    let letters = format!("a{}{}a", "b".repeat(m), "c".repeat(n));
                    pats.push(word(0, &letters)?);
                }
            }
            Ok(ForbiddenSet::new(MonoidSpec::additive_z(), a, pats)?.with_family(name, bound))
        }
        "ex7.11" => {
            let a = numeric_alphabet(bound);
            let mut pats = Vec::new();
            pats.push(word(0, "00")?);
            for x in 1..=bound {
                for y in 1..=bound {
                    pats.push(Pattern::new([
                        (Element::int(0), sym(x.to_string())),
                        (Element::int(1), sym(y.to_string())),
                    ])?);
                }
            }
            for x in 0..=bound {
                for y in 0..=bound {
                    if x == y {
                        continue;
                    }
                    pats.push(Pattern::new([
                        (Element::int(0), sym(x.to_string())),
                        (Element::int(1), sym("0")),
                        (Element::int(2), sym(y.to_string())),
                    ])?);
                }
            }
            Ok(ForbiddenSet::new(MonoidSpec::additive_n(), a, pats)?.with_family(name, bound))
        }
        "ex8.1-N" => {
            let a = numeric_alphabet(bound);
            let pats: Vec<Pattern> = (1..=bound as i64)
                .map(|k| {
                    Pattern::new([
                        (Element::int(0), sym("0")),
                        (Element::int(k), sym(k.to_string())),
                    ])
                })
                .collect::<Result<_>>()?;
            Ok(ForbiddenSet::new(MonoidSpec::additive_n(), a, pats)?.with_family(name, bound))
        }
        "ex8.1-Z" => {
            let a = numeric_alphabet(bound);
            let pats: Vec<Pattern> = (1..=bound as i64)
                .map(|k| {
                    Pattern::new([
                        (Element::int(-k), sym("0")),
                        (Element::int(0), sym(k.to_string())),
                    ])
                })
                .collect::<Result<_>>()?;
            Ok(ForbiddenSet::new(MonoidSpec::additive_z(), a, pats)?.with_family(name, bound))
        }
        "exB.3" => {
            let a = Alphabet::from_strs(["0", "1"])?;
            let pats: Vec<Pattern> = (1..=bound as u64)
                .map(|k| {
                    Pattern::new([
                        (Element::ratio(1, 1)?, sym("1")),
                        (Element::ratio(k, k + 1)?, sym("1")),
                    ])
                })
                .collect::<Result<_>>()?;
            Ok(
                ForbiddenSet::new(MonoidSpec::multiplicative_qstar(), a, pats)?
                    .with_family(name, bound),
            )
        }
        "exB.4" => {
            let a = Alphabet::from_strs(["0", "1"])?;
            let pats: Vec<Pattern> = (1..=bound)
                .map(|k| {
                    Pattern::new([
                        (Element::nat(1), sym("1")),
                        (Element::nat(1u64 << k), sym("1")),
                    ])
                })
                .collect::<Result<_>>()?;
            Ok(
                ForbiddenSet::new(MonoidSpec::multiplicative_nstar(), a, pats)?
                    .with_family(name, bound),
            )
        }
        "even-runs" => {
            // odd zero-runs between ones, up to run length 2*bound+1
            let a = Alphabet::from_strs(["0", "1"])?;
            let mut pats = Vec::new();
            for k in 0..=bound as usize {
                let letters = format!("1{}1", "0".repeat(2 * k + 1));
                pats.push(word(0, &letters)?);
            }
            Ok(ForbiddenSet::new(MonoidSpec::additive_z(), a, pats)?.with_family(name, bound))
        }
        "lemma9.8" => {
            let spec = lemma98_union(bound)?;
            Ok(spec.forbidden)
        }
        "lemma9.5-union" => {
            let spec = lemma95_union(bound)?;
            Ok(spec.forbidden)
        }
        _ => Err(Error::UnknownFixture(format!("no family named `{name}`"))),
    }
}

/// Rebuilds a fixture's spec at a different bound, when it has one.
pub fn fixture_spec_at(name: &str, bound: u32) -> Result<Option<ShiftSpec>> {
    match name {
        "context-free" | "ex7.11" | "ex8.1-N" | "ex8.1-Z" | "exB.3" | "exB.4" | "even-runs"
        | "lemma9.8" | "lemma9.5-union" => {
            Ok(Some(fixture(name, Some(bound))?.spec.ok_or_else(|| {
                Error::UnknownFixture(format!("fixture `{name}` carries no spec"))
            })?))
        }
        _ => Ok(None),
    }
}

fn numeric_alphabet(bound: u32) -> Alphabet {
    Alphabet::from_strs((0..=bound).map(|i| i.to_string()))
        .expect("nonempty")
        .with_truncation(bound)
}

fn pair_sum_rule(monoid: MonoidSpec, coords: [Element; 2]) -> Result<SlidingBlockRule> {
    let bin = Alphabet::from_strs(["0", "1"])?;
    let window = IndexSet::new(coords.clone());
    SlidingBlockRule::from_fn(
        monoid,
        window,
        bin.clone(),
        bin,
        move |p| {
            let a: u8 = p.get(&coords[0])?.as_str().parse().ok()?;
            let b: u8 = p.get(&coords[1])?.as_str().parse().ok()?;
            Some(sym(((a + b) % 2).to_string()))
        },
        &OracleBudget::default(),
    )
}

fn even_shift_graph(suffix: &str) -> Result<LabeledGraph> {
    let mut g = DirectedGraph::new();
    let v0 = g.add_vertex(format!("q0{suffix}"))?;
    let v1 = g.add_vertex(format!("q1{suffix}"))?;
    g.add_edge(format!("e1{suffix}"), v0, v0)?;
    g.add_edge(format!("e2{suffix}"), v0, v1)?;
    g.add_edge(format!("e3{suffix}"), v1, v0)?;
    LabeledGraph::new(
        g,
        vec![
            sym(format!("1{suffix}")),
            sym(format!("0{suffix}")),
            sym(format!("0{suffix}")),
        ],
    )
}

fn even_shift_collapse_code(suffix: &str) -> Result<GeneralizedCode> {
    let m = MonoidSpec::additive_z();
    let edges = Alphabet::from_strs([
        format!("e1{suffix}"),
        format!("e2{suffix}"),
        format!("e3{suffix}"),
    ])?;
    let bits = Alphabet::from_strs([format!("0{suffix}"), format!("1{suffix}")])?;
    let mut rule =
        SlidingBlockRule::new(m, IndexSet::singleton(m.identity()), edges, bits.clone())?;
    for (edge, bit) in [("e1", "1"), ("e2", "0"), ("e3", "0")] {
        let key = Pattern::new([(m.identity(), sym(format!("{edge}{suffix}")))])?;
        rule.insert_row(&key, &sym(format!("{bit}{suffix}")))?;
    }
    Ok(GeneralizedCode::uniform(rule))
}

fn context_free_graph(bound: u32) -> Result<LabeledGraph> {
    let mut g = DirectedGraph::new();
    let mut labels: Vec<Symbol> = Vec::new();
    let hub = g.add_vertex("hub")?;
    let adds = |g: &mut DirectedGraph,
                labels: &mut Vec<Symbol>,
                name: String,
                src: usize,
                dst: usize,
                label: &str|
     -> Result<()> {
        g.add_edge(name, src, dst)?;
        labels.push(sym(label));
        Ok(())
    };
    adds(&mut g, &mut labels, "hb".into(), hub, hub, "b")?;
    adds(&mut g, &mut labels, "hc".into(), hub, hub, "c")?;
    // counting spans a b^m c^m a
    let mut b_chain = vec![g.add_vertex("p0")?];
    adds(&mut g, &mut labels, "open".into(), hub, b_chain[0], "a")?;
    for m in 1..=bound as usize {
        let v = g.add_vertex(format!("p{m}"))?;
        adds(&mut g, &mut labels, format!("b{m}"), b_chain[m - 1], v, "b")?;
        b_chain.push(v);
    }
    for m in 1..=bound as usize {
        let mut prev = b_chain[m];
        for j in 1..=m {
            let v = g.add_vertex(format!("q{m}.{j}"))?;
            adds(&mut g, &mut labels, format!("c{m}.{j}"), prev, v, "c")?;
            prev = v;
        }
        adds(
            &mut g,
            &mut labels,
            format!("close{m}"),
            prev,
            b_chain[0],
            "a",
        )?;
    }
    LabeledGraph::new(g, labels)
}

fn spoke_graph(bound: u32) -> Result<LabeledGraph> {
    let mut g = DirectedGraph::new();
    let mut labels = Vec::new();
    let hub = g.add_vertex("h")?;
    g.add_edge("loop", hub, hub)?;
    labels.push(sym("a"));
    for i in 1..=bound as usize {
        let mut prev = hub;
        for j in 0..=i {
            let v = g.add_vertex(format!("s{i}.{j}"))?;
            let (name, label) = if j == 0 {
                (format!("b{i}"), format!("b{i}"))
            } else {
                (format!("c{i}.{j}"), "c".to_string())
            };
            g.add_edge(name, prev, v)?;
            labels.push(sym(label));
            prev = v;
        }
        g.add_edge(format!("a{i}"), prev, hub)?;
        labels.push(sym("a"));
    }
    LabeledGraph::new(g, labels)
}

fn invertible_pair_code(bound: u32) -> Result<GeneralizedCode> {
    // source symbols 0..=bound; target pairs (a, a*b+a) as far as they stay
    // inside the truncation
    let m = MonoidSpec::additive_n();
    let source = numeric_alphabet(bound);
    let mut class_list: Vec<(Symbol, Vec<Pattern>)> = Vec::new();
    let mut targets: Vec<Symbol> = Vec::new();
    let mut push = |t: Symbol, c: Pattern, targets: &mut Vec<Symbol>| {
        targets.push(t.clone());
        class_list.push((t, vec![c]));
    };
    push(
        sym("(0,0)"),
        Pattern::new([(Element::int(0), sym("0"))])?,
        &mut targets,
    );
    for a in 1..=bound as i64 {
        for b in 0..=bound as i64 {
            let second = a * b + a;
            let t = sym(format!("({a},{second})"));
            let c = Pattern::new([
                (Element::int(0), sym(a.to_string())),
                (Element::int(1), sym(b.to_string())),
            ])?;
            push(t, c, &mut targets);
        }
    }
    let target = Alphabet::new(targets)?.with_truncation(bound);
    Ok(
        GeneralizedCode::partitioned(CylinderPartition::new(m, source, target, class_list)?)
            .with_truncation("ex3.8", bound),
    )
}

fn variable_lookahead_code(bound: u32) -> Result<GeneralizedCode> {
    // class 1: the position's symbol k sees a symbol >= k at distance k
    let m = MonoidSpec::additive_n();
    let source = numeric_alphabet(bound);
    let bits = Alphabet::from_strs(["0", "1"])?;
    let mut ones: Vec<Pattern> = vec![Pattern::new([(Element::int(0), sym("0"))])?];
    let mut zeros: Vec<Pattern> = Vec::new();
    for k in 1..=bound as i64 {
        for j in 0..=bound as i64 {
            let c = Pattern::new([
                (Element::int(0), sym(k.to_string())),
                (Element::int(k), sym(j.to_string())),
            ])?;
            if j >= k {
                ones.push(c);
            } else {
                zeros.push(c);
            }
        }
    }
    let part = CylinderPartition::new(m, source, bits, vec![(sym("0"), zeros), (sym("1"), ones)])?;
    Ok(GeneralizedCode::partitioned(part).with_truncation("ex8.5-svl", bound))
}

fn log_window_code(bound: u32) -> Result<GeneralizedCode> {
    // C_b: the identity coordinate holds k and coordinate (k+1)/k holds b
    let m = MonoidSpec::multiplicative_qstar();
    let alphabet = Alphabet::from_strs((1..=bound).map(|i| i.to_string()))?.with_truncation(bound);
    let mut classes: Vec<(Symbol, Vec<Pattern>)> = Vec::new();
    for b in 1..=bound as u64 {
        let mut cyls = Vec::new();
        for k in 1..=bound as u64 {
            cyls.push(Pattern::new([
                (Element::ratio(1, 1)?, sym(k.to_string())),
                (Element::ratio(k + 1, k)?, sym(b.to_string())),
            ])?);
        }
        classes.push((sym(b.to_string()), cyls));
    }
    let part = CylinderPartition::new(m, alphabet.clone(), alphabet, classes)?;
    Ok(GeneralizedCode::partitioned(part).with_truncation("exA.3", bound))
}

fn lemma98_union(bound: u32) -> Result<ShiftSpec> {
    let mut parts = Vec::new();
    for k in 1..=bound as usize {
        let a = Alphabet::from_strs([format!("a{k}"), format!("b{k}")])?;
        let run = Pattern::word(0, std::iter::repeat_n(sym(format!("a{k}")), k + 1))?;
        let f = ForbiddenSet::new(MonoidSpec::additive_z(), a, [run])?;
        parts.push(
            ShiftSpec::new(f).with_step_hint(IndexSet::new((0..=k as i64).map(Element::int)))?,
        );
    }
    let mut u = shift::union(&parts)?;
    u.forbidden = u.forbidden.clone().with_family("lemma9.8", bound);
    Ok(u)
}

fn even_truncated_spec(run_bound: u32, suffix: &str) -> Result<ShiftSpec> {
    let a = Alphabet::from_strs([format!("0{suffix}"), format!("1{suffix}")])?;
    let mut pats = Vec::new();
    for k in 0..=run_bound as usize {
        let mut letters = vec![sym(format!("1{suffix}"))];
        letters.extend(std::iter::repeat_n(sym(format!("0{suffix}")), 2 * k + 1));
        letters.push(sym(format!("1{suffix}")));
        pats.push(Pattern::new(
            letters
                .into_iter()
                .enumerate()
                .map(|(i, s)| (Element::int(i as i64), s)),
        )?);
    }
    ShiftSpec::new(ForbiddenSet::new(MonoidSpec::additive_z(), a, pats)?).with_step_hint(
        IndexSet::new((0..=(2 * run_bound as i64 + 2)).map(Element::int)),
    )
}

fn lemma95_union(bound: u32) -> Result<ShiftSpec> {
    let left = even_truncated_spec(bound, "L")?;
    let right = even_truncated_spec(bound, "R")?;
    let mut u = shift::union(&[left, right])?;
    u.forbidden = u.forbidden.clone().with_family("lemma9.5-union", bound);
    Ok(u)
}

/// Builds a named fixture. Truncated fixtures require a bound; the bound
/// is recorded on every produced artifact.
pub fn fixture(name: &str, bound: Option<u32>) -> Result<FixtureBundle> {
    let mut b = FixtureBundle::new(name, bound);
    match name {
        "golden-mean" => {
            let a = Alphabet::from_strs(["0", "1"])?;
            let f = ForbiddenSet::new(MonoidSpec::additive_z(), a, [word(0, "11")?])?;
            b.spec = Some(
                ShiftSpec::new(f)
                    .with_step_hint(IndexSet::new([Element::int(0), Element::int(1)]))?,
            );
            b.notes
                .push("binary 1-step spec banning adjacent ones".into());
        }
        "even-shift" => {
            b.graph = Some(even_shift_graph("")?);
            b.code = Some(even_shift_collapse_code("")?);
            b.notes
                .push("ones separated by even zero-runs; presented by a 2-vertex graph".into());
        }
        "context-free" => {
            let k = need_bound(name, bound)?;
            b.spec = Some(ShiftSpec::new(expand_family(name, k)?));
            b.graph = Some(context_free_graph(k)?);
            b.notes.push(format!(
                "matched b/c spans between enclosing a's, truncated at span {k}; the bundled \
                 graph presents the matched-count core of the language"
            ));
        }
        "ex2.1-N" => {
            let a = Alphabet::from_strs(["a", "b"])?;
            let f = ForbiddenSet::new(
                MonoidSpec::additive_n(),
                a,
                [word(0, "ab")?, word(0, "ba")?],
            )?;
            b.spec = Some(ShiftSpec::new(f));
            b.notes
                .push("adjacent disagreement banned: only constant sequences".into());
        }
        "ex2.1-Nstar" => {
            let a = Alphabet::from_strs(["a", "b"])?;
            let m = MonoidSpec::multiplicative_nstar();
            let p1 = Pattern::new([(Element::nat(1), sym("a")), (Element::nat(2), sym("b"))])?;
            let p2 = Pattern::new([(Element::nat(1), sym("b")), (Element::nat(2), sym("a"))])?;
            let f = ForbiddenSet::new(m, a, [p1, p2])?;
            b.spec = Some(ShiftSpec::new(f));
            b.notes
                .push("forces x_g = x_2g: symbols depend only on the odd part of the index".into());
        }
        "ex3.2-N" => {
            b.code = Some(GeneralizedCode::uniform(pair_sum_rule(
                MonoidSpec::additive_n(),
                [Element::int(0), Element::int(1)],
            )?));
        }
        "ex3.2-Nstar" => {
            b.code = Some(GeneralizedCode::uniform(pair_sum_rule(
                MonoidSpec::multiplicative_nstar(),
                [Element::nat(1), Element::nat(2)],
            )?));
        }
        "ex3.8" => {
            let k = need_bound(name, bound)?;
            b.code = Some(invertible_pair_code(k)?);
            b.notes.push(
                "order-1 partitioned code whose uniform local rule is not finite-to-one".into(),
            );
        }
        "ex4.9" => {
            let k = bound.unwrap_or(1);
            let a = Alphabet::from_strs(["0", "1"])?;
            let m = MonoidSpec::multiplicative_nstar();
            let pats: Vec<Pattern> = ["0", "1"]
                .iter()
                .map(|mid| {
                    Pattern::new([
                        (Element::nat(2), sym("1")),
                        (Element::nat(5), sym(mid)),
                        (Element::nat(10), sym("1")),
                    ])
                })
                .collect::<Result<_>>()?;
            b.spec = Some(ShiftSpec::new(ForbiddenSet::new(m, a, pats)?));
            b.partition_cylinders = Some(
                ["00", "01", "10", "11"]
                    .iter()
                    .map(|w| {
                        Pattern::new([
                            (Element::nat(2), sym(&w[0..1])),
                            (Element::nat(3), sym(&w[1..2])),
                        ])
                    })
                    .collect::<Result<_>>()?,
            );
            let _ = k;
            b.notes.push(
                "cylinders on coordinates {2,3}; no position reaches coordinate 5 of the \
                 forbidden members"
                    .into(),
            );
        }
        "ex7.8" => {
            let k = need_bound(name, bound)?;
            b.graph = Some(spoke_graph(k)?);
            b.notes.push(format!(
                "hub with spokes reading b_i c^i a for i <= {k}; every label is used finitely often"
            ));
        }
        "ex7.11" => {
            let k = need_bound(name, bound)?;
            b.spec = Some(
                ShiftSpec::new(expand_family(name, k)?)
                    .with_step_hint(IndexSet::new((0..=2).map(Element::int)))?,
            );
            b.notes
                .push("alternating nonzero/zero with matching nonzero symbols".into());
        }
        "ex8.1-N" | "ex8.1-Z" => {
            let k = need_bound(name, bound)?;
            b.spec = Some(ShiftSpec::new(expand_family(name, k)?));
            b.notes.push(
                "a zero forbids the symbol k at distance k; the two-sided presentation reads \
                 the history instead"
                    .into(),
            );
        }
        "ex8.5-svl" => {
            let k = need_bound(name, bound)?;
            b.code = Some(variable_lookahead_code(k)?);
            b.notes.push(
                "admissibility indicator of x_{i+x_i} >= x_i, as a cylinder partition".into(),
            );
        }
        "exA.3" => {
            let k = need_bound(name, bound)?;
            b.code = Some(log_window_code(k)?);
            b.notes.push(
                "every class needs coordinates approaching the identity in count but \
                 within log-distance ln 2"
                    .into(),
            );
        }
        "exB.3" | "exB.4" => {
            let k = need_bound(name, bound)?;
            b.spec = Some(ShiftSpec::new(expand_family(name, k)?));
        }
        "lemma9.8" => {
            let k = need_bound(name, bound)?;
            b.spec = Some(lemma98_union(k)?);
            b.notes.push(format!(
                "disjoint union of bounded-run components with steps 1..{k}"
            ));
        }
        "lemma9.5-union" => {
            let k = need_bound(name, bound)?;
            b.spec = Some(lemma95_union(k)?);
            let g1 = even_shift_graph("L")?;
            let g2 = even_shift_graph("R")?;
            let mut g = DirectedGraph::new();
            let mut labels = Vec::new();
            for (graph, labs) in [(&g1, g1.labels()), (&g2, g2.labels())] {
                let offset = g.vertices().len();
                for v in graph.graph.vertices() {
                    g.add_vertex(v.clone())?;
                }
                for (i, e) in graph.graph.edges().iter().enumerate() {
                    g.add_edge(e.name.clone(), e.src + offset, e.dst + offset)?;
                    labels.push(labs[i].clone());
                }
            }
            b.graph = Some(LabeledGraph::new(g, labels)?);
            b.notes.push(
                "two relabeled copies of the even shift, as a graph union and as truncated specs"
                    .into(),
            );
        }
        _ => return Err(Error::UnknownFixture(name.into())),
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::language::{self, OracleBudget};

    #[test]
    fn fixture_names_all_build() {
        for name in fixture_names() {
            let b = fixture(name, Some(4));
            assert!(b.is_ok(), "{name}: {:?}", b.err());
        }
    }

    #[test]
    fn truncated_fixtures_require_bounds() {
        assert!(matches!(
            fixture("context-free", None),
            Err(Error::MissingBound(_))
        ));
        assert!(matches!(
            fixture("nonsense", None),
            Err(Error::UnknownFixture(_))
        ));
    }

    #[test]
    fn constant_pair_fixture_has_two_words_per_length() {
        let s = fixture("ex2.1-N", None).unwrap().spec.unwrap();
        let o = s.exact_oracle(&OracleBudget::default()).unwrap();
        for n in 1..=10 {
            assert_eq!(
                language::words_of_len(&o, n, &OracleBudget::default())
                    .unwrap()
                    .len(),
                2
            );
        }
    }

    #[test]
    fn alternating_markov_fixture_membership() {
        let b = fixture("ex7.11", Some(4)).unwrap();
        let s = b.spec.unwrap();
        let ok =
            crate::shift::EventuallyPeriodicConfig::one_sided(vec![], vec![sym("3"), sym("0")])
                .unwrap();
        assert_eq!(
            crate::shift::member(&s, &ok, 100_000).unwrap().verdict,
            crate::shift::Verdict::Admissible
        );
        let bad = crate::shift::EventuallyPeriodicConfig::one_sided(
            vec![sym("3"), sym("0")],
            vec![sym("4"), sym("0")],
        )
        .unwrap();
        assert!(matches!(
            crate::shift::member(&s, &bad, 100_000).unwrap().verdict,
            crate::shift::Verdict::Inadmissible(_)
        ));
    }

    #[test]
    fn all_zero_point_is_admissible_for_the_distance_family() {
        for name in ["ex8.1-N", "ex8.1-Z"] {
            let s = fixture(name, Some(10)).unwrap().spec.unwrap();
            let zeros = if name.ends_with("Z") {
                crate::shift::EventuallyPeriodicConfig::two_sided(
                    vec![sym("0")],
                    vec![],
                    vec![sym("0")],
                )
                .unwrap()
            } else {
                crate::shift::EventuallyPeriodicConfig::one_sided(vec![], vec![sym("0")]).unwrap()
            };
            let v = crate::shift::member(&s, &zeros, 100_000).unwrap();
            assert_eq!(v.verdict, crate::shift::Verdict::Admissible, "{name}");
            assert_eq!(v.expansion_bound, Some(10));
        }
    }

    #[test]
    fn invertible_pair_code_is_order_one_with_a_many_to_one_table() {
        let code = fixture("ex3.8", Some(5)).unwrap().code.unwrap();
        let regen = |b: u32| Ok(fixture("ex3.8", Some(b)).unwrap().code.unwrap());
        assert_eq!(
            crate::block_code::finite_to_one_order(&code, Some(&regen)).unwrap(),
            crate::block_code::FiniteToOneOrder::Order(1)
        );
        // the zero class conflates every second symbol, so a uniform table
        // over the combined window is not finite-to-one as the bound grows
        let part = code.as_partition();
        let zero_class = part
            .classes()
            .iter()
            .find(|(s, _)| s.as_str() == "(0,0)")
            .unwrap();
        assert_eq!(zero_class.1.len(), 1);
        assert_eq!(zero_class.1[0].len(), 1); // only coordinate 0 pinned
    }

    #[test]
    fn variable_lookahead_code_decides_from_the_pointed_cell() {
        let code = fixture("ex8.5-svl", Some(4)).unwrap().code.unwrap();
        let w = crate::shift::WindowConfig(
            Pattern::new([
                (Element::int(0), sym("2")),
                (Element::int(1), sym("0")),
                (Element::int(2), sym("3")),
            ])
            .unwrap(),
        );
        let out = crate::block_code::apply(&code, &w).unwrap();
        assert_eq!(out.defined.get(&Element::int(0)), Some(&sym("1")));
        // position 2 needs the cell at distance 3, which is missing
        assert!(!out.defined.contains_key(&Element::int(2)));
    }

    #[test]
    fn spoke_graph_reads_counted_spokes() {
        let g = fixture("ex7.8", Some(3)).unwrap().graph.unwrap();
        let words =
            crate::graph::graph_language(&g, 5, language::Side::TwoSided, &OracleBudget::default())
                .unwrap();
        let strings: Vec<String> = words
            .iter()
            .map(|w| {
                w.iter()
                    .map(|&a| g.alphabet.symbol(a).as_str().to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        assert!(strings.contains(&"a b2 c c a".to_string()));
        assert!(!strings.contains(&"a b2 c a a".to_string()));
        // every label is used finitely often
        for a in g.alphabet.iter() {
            let uses = g.labels().iter().filter(|l| *l == a).count();
            assert!(uses >= 1);
        }
    }

    #[test]
    fn context_free_graph_reads_matched_spans() {
        let b = fixture("context-free", Some(4)).unwrap();
        let g = b.graph.unwrap();
        let words =
            crate::graph::graph_language(&g, 6, language::Side::TwoSided, &OracleBudget::default())
                .unwrap();
        let has = |w: &str| {
            words.iter().any(|word| {
                word.iter()
                    .map(|&a| g.alphabet.symbol(a).as_str())
                    .collect::<String>()
                    == w
            })
        };
        assert!(has("abbcca"));
        assert!(!has("abccaa"));
    }
}
