//! Acceptance suite. Each test exercises one criterion end to end at its
//! stated tolerance and prints a single pass line (run with
//! `--nocapture` to see them).

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use subshift_core::alphabet::{Alphabet, SymId, Symbol};
use subshift_core::block_code::{
    apply, compose, finite_to_one_order, indicator_code, is_uniform, preimage_spec, radius,
    CodeBody, FiniteToOneOrder, GeneralizedCode, SlidingBlockRule,
};
use subshift_core::classifier::{
    classification_report, extension_mstep_test, metric_memory, min_step, sft_syntactic,
    verify_extension_witness, Budgets, MemoryTrend, SftSyntactic,
};
use subshift_core::dot;
use subshift_core::fixtures::fixture;
use subshift_core::graph::{
    self, follower_set_graph, initial_vertices, is_right_resolving, relabel_split, GraphOracle,
};

use subshift_core::higher_block::{self, PartitionN};
use subshift_core::language::{contains, words_of_len, OracleBudget, Side, WordOracle};
use subshift_core::monoid::{Element, IndexSet, MonoidSpec, METRIC_TOL};
use subshift_core::pattern::Pattern;
use subshift_core::shift::{self, locally_admissible, ShiftSpec, Verdict, WindowConfig};

fn budget() -> OracleBudget {
    OracleBudget::default()
}

fn sym(s: impl AsRef<str>) -> Symbol {
    Symbol::new(s)
}

fn fixture_spec(name: &str, bound: Option<u32>) -> ShiftSpec {
    fixture(name, bound).unwrap().spec.unwrap()
}

fn word_string(a: &Alphabet, w: &[SymId]) -> String {
    w.iter().map(|&i| a.symbol(i).to_string()).collect()
}

fn pass(criterion: usize, what: &str) {
    println!("criterion {criterion}: PASS - {what}");
}

fn fib(n: usize) -> usize {
    // F(1) = F(2) = 1
    let (mut a, mut b) = (1usize, 1usize);
    for _ in 2..n {
        let t = a + b;
        a = b;
        b = t;
    }
    if n == 1 {
        1
    } else {
        b
    }
}

#[test]
fn acceptance_1_golden_mean_suite() {
    let golden = fixture_spec("golden-mean", None);
    let oracle = golden.exact_oracle(&budget()).unwrap();

    // exact counts match the brute force and the Fibonacci law
    for n in 1..=12usize {
        let count = words_of_len(&oracle, n, &budget()).unwrap().len();
        let brute = (0u32..1 << n).filter(|x| x & (x >> 1) == 0).count();
        assert_eq!(count, brute, "n={n}");
        assert_eq!(count, fib(n + 2), "n={n}");
    }

    assert_eq!(min_step(&oracle, 6, &budget()).unwrap(), Some(1));

    let fg = follower_set_graph(&oracle, 8, &budget()).unwrap();
    assert_eq!(fg.vertices.len(), 2);
    assert!(fg.saturated);
    assert!(is_right_resolving(&fg.to_labeled().unwrap()).ok);

    // window-graph construction at step 1: 2 vertices, 3 edges, and the
    // edge-shift language matches the width-2 recoding to length 10
    let g = graph::sft_edge_presentation(&golden, 1, &budget()).unwrap();
    assert_eq!((g.vertices().len(), g.edges().len()), (2, 3));
    let edge_spec = graph::edge_shift_spec(&g, MonoidSpec::additive_z()).unwrap();
    let edge_oracle = edge_spec.exact_oracle(&budget()).unwrap();
    for n in 1..=10usize {
        let mut via_edges: Vec<Vec<String>> = words_of_len(&edge_oracle, n, &budget())
            .unwrap()
            .iter()
            .map(|w| {
                w.iter()
                    .map(|&e| edge_spec.alphabet.symbol(e).to_string())
                    .collect()
            })
            .collect();
        via_edges.sort();
        let mut via_recoding: Vec<Vec<String>> = words_of_len(&oracle, n + 1, &budget())
            .unwrap()
            .iter()
            .map(|w| w.windows(2).map(|p| format!("{}{}", p[0], p[1])).collect())
            .collect();
        via_recoding.sort();
        via_recoding.dedup();
        assert_eq!(via_edges, via_recoding, "length {n}");
    }
    pass(
        1,
        "golden-mean counts, step, follower graph and window-graph recoding",
    );
}

#[test]
fn acceptance_2_even_shift_suite() {
    let g = fixture("even-shift", None).unwrap().graph.unwrap();
    let oracle = GraphOracle::new(&g, Side::TwoSided).unwrap();

    for m in 0..=8usize {
        let witness = extension_mstep_test(&oracle, m, 18, &budget()).unwrap();
        let (u, w, v) = witness.unwrap_or_else(|| panic!("no violation at step {m}"));
        assert!(verify_extension_witness(&oracle, &u, &w, &v), "step {m}");
    }

    let fg = follower_set_graph(&oracle, 12, &budget()).unwrap();
    assert_eq!(fg.vertices.len(), 3);
    assert!(fg.saturated);

    let (split, rule) = relabel_split(&g, MonoidSpec::additive_z()).unwrap();
    for l in split.alphabet.iter() {
        assert_eq!(
            initial_vertices(&split, std::slice::from_ref(l))
                .unwrap()
                .len(),
            1
        );
    }
    let max_initial = g
        .alphabet
        .iter()
        .map(|a| initial_vertices(&g, std::slice::from_ref(a)).unwrap().len())
        .max()
        .unwrap();
    assert_eq!(max_initial, 2);
    assert_eq!(
        finite_to_one_order(&GeneralizedCode::uniform(rule), None).unwrap(),
        FiniteToOneOrder::Order(2)
    );
    pass(
        2,
        "even shift: no finite step up to 8, 3 follower classes, split order 2",
    );
}

#[test]
fn acceptance_3_context_free_fixture() {
    let spec = fixture_spec("context-free", Some(6));
    let oracle = spec.exact_oracle(&budget()).unwrap();
    let id = |c: char| spec.alphabet.id_of(&sym(c.to_string())).unwrap();
    let encode = |s: &str| -> Vec<SymId> { s.chars().map(id).collect() };

    for k in 1..=6usize {
        let w = format!("a{}{}a", "b".repeat(k), "c".repeat(k));
        assert!(contains(&oracle, &encode(&w)), "{w}");
    }
    for m in 1..=6usize {
        for n in 1..=6usize {
            if m == n {
                continue;
            }
            let w = format!("a{}{}a", "b".repeat(m), "c".repeat(n));
            assert!(!contains(&oracle, &encode(&w)), "{w}");
        }
    }

    let mut counts = Vec::new();
    for depth in 4..=10usize {
        let fg = follower_set_graph(&oracle, depth, &budget()).unwrap();
        assert!(!fg.saturated, "depth {depth}");
        counts.push(fg.vertices.len());
    }
    assert!(
        counts.windows(2).all(|w| w[1] > w[0]),
        "vertex counts must strictly increase: {counts:?}"
    );
    pass(
        3,
        "matched-span words decided; follower classes grow over depths 4..10",
    );
}

#[test]
fn acceptance_4_constant_and_doubling_pair() {
    let constant = fixture_spec("ex2.1-N", None);
    let oracle = constant.exact_oracle(&budget()).unwrap();
    for n in 1..=10usize {
        assert_eq!(
            words_of_len(&oracle, n, &budget()).unwrap().len(),
            2,
            "n={n}"
        );
    }

    let doubling = fixture_spec("ex2.1-Nstar", None);
    for n in 1..=12u64 {
        // brute force over {a,b}^{1..n} checking x_g = x_{2g}
        let mut brute = 0usize;
        for mask in 0u32..1 << n {
            let bit = |g: u64| mask >> (g - 1) & 1;
            if (1..=n).all(|g| 2 * g > n || bit(g) == bit(2 * g)) {
                brute += 1;
            }
        }
        assert_eq!(brute, 1usize << n.div_ceil(2), "n={n}");
        let window = IndexSet::new((1..=n).map(Element::nat));
        let lang = shift::language(
            &doubling,
            &window,
            shift::LanguageMode::Local { depth: 0.0 },
            &budget(),
        )
        .unwrap();
        assert_eq!(lang.patterns.len(), brute, "n={n}");
    }
    pass(
        4,
        "two constant sequences on the line; doubling law 2^ceil(n/2) on the product lattice",
    );
}

fn random_admissible_word(oracle: &dyn WordOracle, len: usize, rng: &mut ChaCha8Rng) -> Vec<SymId> {
    let letters = oracle.alphabet().len() as SymId;
    'outer: loop {
        let mut states = oracle.initial();
        let mut word = Vec::with_capacity(len);
        for _ in 0..len {
            let mut options: Vec<(SymId, Vec<u32>)> = Vec::new();
            for a in 0..letters {
                let next = oracle.advance(&states, a);
                if !next.is_empty() {
                    options.push((a, next));
                }
            }
            if options.is_empty() {
                continue 'outer;
            }
            let (a, next) = options.swap_remove(rng.gen_range(0..options.len()));
            word.push(a);
            states = next;
        }
        return word;
    }
}

#[test]
fn acceptance_5_higher_block_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let golden = fixture_spec("golden-mean", None);
    let full = ShiftSpec::full_shift(
        MonoidSpec::additive_z(),
        Alphabet::from_strs(["0", "1"]).unwrap(),
    );
    let constant = fixture_spec("ex2.1-N", None);

    // overlap holds on every image of an admissible window
    let mut checked = 0usize;
    for (spec, n) in [(&golden, 2usize), (&golden, 3), (&full, 2), (&constant, 2)] {
        let partition = PartitionN::classical(spec, n, &budget()).unwrap();
        let oracle = spec.exact_oracle(&budget()).unwrap();
        for _ in 0..2100 {
            let len = rng.gen_range(n + 1..=12);
            let word = random_admissible_word(&oracle, len, &mut rng);
            let w = WindowConfig::word_at(0, word.iter().map(|&a| spec.alphabet.symbol(a).clone()))
                .unwrap();
            let out = higher_block::apply_higher(&partition, &w).unwrap();
            assert!(out.no_class.is_empty());
            let b = WindowConfig(
                Pattern::new(out.defined.iter().map(|(e, s)| (e.clone(), s.clone()))).unwrap(),
            );
            assert!(higher_block::overlap_satisfied(&partition, &b).unwrap().ok);
            checked += 1;
        }
    }
    // spread-support partition on the multiplicative lattice
    let bundle = fixture("ex4.9", None).unwrap();
    let spread_spec = bundle.spec.unwrap();
    let partition =
        PartitionN::new(&spread_spec, bundle.partition_cylinders.unwrap(), &budget()).unwrap();
    let mut attempts = 0usize;
    while checked < 10_100 && attempts < 40_000 {
        attempts += 1;
        let entries: Vec<(Element, Symbol)> = (1..=12u64)
            .map(|g| {
                (
                    Element::nat(g),
                    sym(if rng.gen_bool(0.5) { "1" } else { "0" }),
                )
            })
            .collect();
        let w = WindowConfig(Pattern::new(entries).unwrap());
        if locally_admissible(&spread_spec, &w).unwrap() != Verdict::Admissible {
            continue;
        }
        let out = higher_block::apply_higher(&partition, &w).unwrap();
        let b = WindowConfig(
            Pattern::new(out.defined.iter().map(|(e, s)| (e.clone(), s.clone()))).unwrap(),
        );
        assert!(higher_block::overlap_satisfied(&partition, &b).unwrap().ok);
        checked += 1;
    }
    assert!(checked >= 10_000, "only {checked} windows checked");

    // inverse is the identity on defined positions, under the identity
    // coordinate condition
    let partition = PartitionN::classical(&golden, 2, &budget()).unwrap();
    let oracle = golden.exact_oracle(&budget()).unwrap();
    for len in 3..=10usize {
        for word in words_of_len(&oracle, len, &budget()).unwrap() {
            let w =
                WindowConfig::word_at(0, word.iter().map(|&a| golden.alphabet.symbol(a).clone()))
                    .unwrap();
            let out = higher_block::apply_higher(&partition, &w).unwrap();
            let b = WindowConfig(
                Pattern::new(out.defined.iter().map(|(e, s)| (e.clone(), s.clone()))).unwrap(),
            );
            let back = higher_block::inverse_higher(&partition, &b).unwrap();
            for (e, s) in back.pattern().iter() {
                assert_eq!(w.pattern().get(e), Some(s));
            }
        }
    }

    // the generated forbidden sets present exactly the image language
    let (higher_spec, _) = higher_block::higher_block_spec(&partition, &golden, &budget()).unwrap();
    let higher_oracle = higher_spec.exact_oracle(&budget()).unwrap();
    for n in 1..=8usize {
        let mut from_generators: Vec<String> = words_of_len(&higher_oracle, n, &budget())
            .unwrap()
            .iter()
            .map(|w| word_string(&higher_spec.alphabet, w))
            .collect();
        from_generators.sort();
        let mut from_images: Vec<String> = words_of_len(&oracle, n + 1, &budget())
            .unwrap()
            .iter()
            .map(|w| {
                w.windows(2)
                    .map(|p| format!("[{}{}]", p[0], p[1]))
                    .collect::<String>()
            })
            .collect();
        from_images.sort();
        from_images.dedup();
        assert_eq!(from_generators, from_images, "length {n}");
    }
    pass(
        5,
        "overlap law on 10^4 windows, inverse round trip, generator language match",
    );
}

#[test]
fn acceptance_6_code_laws() {
    // indicator rule vs local admissibility on every window up to length 10
    let golden_n = {
        let mut s = fixture_spec("golden-mean", None);
        s = ShiftSpec::new(
            subshift_core::pattern::ForbiddenSet::new(
                MonoidSpec::additive_n(),
                s.alphabet.clone(),
                s.forbidden.patterns().to_vec(),
            )
            .unwrap(),
        );
        s
    };
    let two_step = ShiftSpec::new(
        subshift_core::pattern::ForbiddenSet::new(
            MonoidSpec::additive_n(),
            Alphabet::from_strs(["0", "1"]).unwrap(),
            [
                Pattern::word(0, [sym("0"), sym("1"), sym("0")]).unwrap(),
                Pattern::word(0, [sym("0"), sym("1"), sym("1")]).unwrap(),
            ],
        )
        .unwrap(),
    );
    for (spec, span) in [(&golden_n, 2usize), (&two_step, 3)] {
        let ind = indicator_code(spec, &budget()).unwrap();
        let code = GeneralizedCode::uniform(ind);
        for n in span..=10usize {
            for mask in 0u32..1 << n {
                let word: Vec<Symbol> = (0..n)
                    .map(|i| sym(((mask >> i & 1) as u8).to_string()))
                    .collect();
                let w = WindowConfig::word_at(0, word).unwrap();
                let admissible = locally_admissible(spec, &w).unwrap() == Verdict::Admissible;
                let out = apply(&code, &w).unwrap();
                let all_ones = out.defined.values().all(|s| s.as_str() == "1");
                assert_eq!(admissible, all_ones, "span {span}, word {mask:0n$b}");
            }
        }
    }

    // preimage of the golden mean through the pair-sum rule
    let xor = fixture("ex3.2-N", None).unwrap().code.unwrap();
    let CodeBody::Uniform(rule) = &xor.body else {
        panic!()
    };
    let pre = preimage_spec(rule, &golden_n, &budget()).unwrap();
    let pre_oracle = pre.exact_oracle(&budget()).unwrap();
    for n in 1..=8usize {
        let lib: BTreeSet<Vec<SymId>> = words_of_len(&pre_oracle, n, &budget())
            .unwrap()
            .into_iter()
            .collect();
        // brute force: a word is in the preimage language exactly when its
        // pairwise-sum image embeds into the target language
        let mut brute = BTreeSet::new();
        for mask in 0u32..1 << n {
            let bits: Vec<u8> = (0..n).map(|i| (mask >> i & 1) as u8).collect();
            let image: Vec<u8> = bits.windows(2).map(|p| (p[0] + p[1]) % 2).collect();
            let image_ok = !image.windows(2).any(|p| p == [1, 1]);
            if image_ok {
                brute.insert(bits.iter().map(|&b| b as SymId).collect::<Vec<_>>());
            }
        }
        assert_eq!(lib, brute, "length {n}");
    }

    // composition agrees with two-step application on 500 random pairs
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let alphabets = [
        Alphabet::from_strs(["0", "1"]).unwrap(),
        Alphabet::from_strs(["0", "1", "2"]).unwrap(),
    ];
    for round in 0..500 {
        let src = &alphabets[round % 2];
        let mid = &alphabets[(round / 2) % 2];
        let dst = &alphabets[0];
        let mk = |rng: &mut ChaCha8Rng, a: &Alphabet, b: &Alphabet| {
            let coords: Vec<i64> = {
                let mut c: Vec<i64> = (0..=2).filter(|_| rng.gen_bool(0.7)).collect();
                if c.is_empty() {
                    c.push(0);
                }
                c
            };
            let window = IndexSet::new(coords.into_iter().map(Element::int));
            let targets: Vec<Symbol> = b.iter().cloned().collect();
            let seed: u64 = rng.gen();
            let picker = std::cell::RefCell::new(ChaCha8Rng::seed_from_u64(seed));
            SlidingBlockRule::from_fn(
                MonoidSpec::additive_n(),
                window,
                a.clone(),
                b.clone(),
                move |_| {
                    let mut r = picker.borrow_mut();
                    Some(targets[r.gen_range(0..targets.len())].clone())
                },
                &budget(),
            )
            .unwrap()
        };
        let inner = GeneralizedCode::uniform(mk(&mut rng, src, mid));
        let outer = GeneralizedCode::uniform(mk(&mut rng, mid, dst));
        let composed = compose(&outer, &inner, &budget()).unwrap();
        let len = rng.gen_range(5..10);
        let word: Vec<Symbol> = (0..len)
            .map(|_| src.symbol(rng.gen_range(0..src.len() as SymId)).clone())
            .collect();
        let w = WindowConfig::word_at(0, word).unwrap();
        let mid_out = apply(&inner, &w).unwrap();
        if mid_out.defined.is_empty() {
            continue;
        }
        let mid_w = WindowConfig(
            Pattern::new(mid_out.defined.iter().map(|(e, s)| (e.clone(), s.clone()))).unwrap(),
        );
        let two_step = apply(&outer, &mid_w).unwrap();
        let direct = apply(&composed, &w).unwrap();
        for (e, s) in &two_step.defined {
            assert_eq!(direct.defined.get(e), Some(s), "round {round} at {e}");
        }
    }
    pass(
        6,
        "indicator/admissibility agreement, preimage language match, 500 compositions",
    );
}

#[test]
fn acceptance_7_metric_numerics() {
    // the log-window code has radius ln 2 and no uniform window
    let code = fixture("exA.3", Some(6)).unwrap().code.unwrap();
    let r = radius(&code).unwrap();
    assert!((r - 2f64.ln()).abs() < 1e-12, "radius {r}");
    let regen = |b: u32| Ok(fixture("exA.3", Some(b)).unwrap().code.unwrap());
    let report = is_uniform(&code, Some(&regen)).unwrap();
    assert!(report.window.is_none(), "window should be absent");
    assert!(!report.ball_finite);

    // shrinking-window family: memory ln 2 at every probe bound
    let s = fixture_spec("exB.3", Some(4));
    let mem = metric_memory(&s).unwrap();
    assert_eq!(mem.trend, MemoryTrend::Convergent);
    for (_, v) in &mem.values {
        assert!((v - 2f64.ln()).abs() < 1e-12);
    }

    // doubling-coordinate family: memory k ln 2, divergent
    let s = fixture_spec("exB.4", Some(4));
    let mem = metric_memory(&s).unwrap();
    assert_eq!(mem.trend, MemoryTrend::Divergent);
    for (bound, v) in &mem.values {
        let k = bound.unwrap() as f64;
        assert!((v - k * 2f64.ln()).abs() < 1e-12);
    }

    // every explicit-coordinate fixture has finite memory, and when balls
    // are finite the coordinates sit inside the memory ball
    for (name, bound) in [
        ("golden-mean", None),
        ("ex2.1-N", None),
        ("ex2.1-Nstar", None),
        ("ex4.9", None),
        ("ex7.11", Some(4)),
        ("lemma9.8", Some(4)),
    ] {
        let s = fixture_spec(name, bound);
        let mem = metric_memory(&s).unwrap();
        let m = mem.values[0].1;
        assert!(m.is_finite(), "{name}");
        if s.monoid.balls_locally_finite() {
            let ball = s.monoid.ball(&s.monoid.identity(), m).unwrap();
            assert!(
                s.forbidden.index_union().is_subset_of(&ball),
                "{name}: coordinates escape the memory ball"
            );
        }
        // indicator exists exactly for syntactic finite type, with radius
        // bounded by the memory
        if matches!(sft_syntactic(&s), SftSyntactic::Yes(_)) && s.alphabet.len() <= 8 {
            let ind = indicator_code(&s, &budget()).unwrap();
            let r = radius(&GeneralizedCode::uniform(ind)).unwrap();
            assert!(r <= m + METRIC_TOL, "{name}: radius {r} > memory {m}");
        }
    }
    pass(
        7,
        "radius ln 2 with no uniform window; memory trends; memory-ball containment",
    );
}

#[test]
fn acceptance_8_taxonomy_fixtures() {
    // graded union: per-component steps 1..4, no global step up to 6 at a
    // deeper truncation, finite decision radii, finite follower graphs
    let budgets = Budgets {
        step_bound: 6,
        follower_range: (4, 6),
        ..Budgets::default()
    };
    let s = fixture_spec("lemma9.8", Some(4));
    let report = classification_report(&s, &budgets).unwrap();
    let steps: Vec<Option<usize>> = report.components.iter().map(|c| c.min_step).collect();
    assert_eq!(steps, vec![Some(1), Some(2), Some(3), Some(4)]);
    assert!(matches!(report.sft, SftSyntactic::Truncated { .. }));
    let fds = report.fds.as_ref().unwrap();
    assert_eq!(fds.undecided, 0);
    assert!(fds.aggregate.unwrap().is_finite());
    for c in &report.components {
        assert_eq!(c.follower_saturated, Some(true), "component {}", c.index);
        assert!(c.follower_vertices.unwrap() > 0);
        assert!(c.fds_aggregate.unwrap().is_finite());
    }
    assert!(
        report.notes.iter().any(|n| n.contains("variable-length")),
        "notes: {:?}",
        report.notes
    );
    // the step probe grows with the truncation, and at truncation 7 no
    // global step up to 6 exists
    let probe = report.step_probe.as_ref().unwrap();
    assert!(probe.windows(2).all(|w| w[1].1 > w[0].1), "{probe:?}");
    let deeper = fixture_spec("lemma9.8", Some(7));
    let oracle = deeper.exact_oracle(&budget()).unwrap();
    for m in 0..=6usize {
        let witness = extension_mstep_test(&oracle, m, 14, &budget()).unwrap();
        let (u, w, v) = witness.unwrap_or_else(|| panic!("no violation at step {m}"));
        assert!(verify_extension_witness(&oracle, &u, &w, &v));
    }

    // two relabeled even-shift copies: split order 2, and the union of
    // finite-alphabet stepless components cannot be finitely defined
    let bundle = fixture("lemma9.5-union", Some(8)).unwrap();
    let g = bundle.graph.unwrap();
    let max_initial = g
        .alphabet
        .iter()
        .map(|a| initial_vertices(&g, std::slice::from_ref(a)).unwrap().len())
        .max()
        .unwrap();
    assert_eq!(max_initial, 2);
    let union_spec = bundle.spec.unwrap();
    let budgets = Budgets {
        step_bound: 6,
        follower_range: (4, 6),
        ..Budgets::default()
    };
    let report = classification_report(&union_spec, &budgets).unwrap();
    assert_eq!(report.min_step, Some(None));
    for c in &report.components {
        assert_eq!(c.min_step, None, "component {}", c.index);
    }
    assert!(
        report
            .notes
            .iter()
            .any(|n| n.contains("no finitely-defined presentation")),
        "notes: {:?}",
        report.notes
    );
    pass(
        8,
        "graded union flags and even-shift union: order-2 evidence plus the non-definability note",
    );
}

#[test]
fn acceptance_9_cli_determinism_and_dot_round_trip() {
    let bin = env!("CARGO_BIN_EXE_subshift");
    let invocations: Vec<Vec<&str>> = vec![
        vec!["language", "fixtures:ex2.1-Nstar", "--window", "1..4"],
        vec!["classify", "fixtures:golden-mean", "--depth", "6"],
        vec![
            "follower-graph",
            "fixtures:context-free",
            "--bound",
            "6",
            "--L",
            "4..8",
            "--format",
            "dot",
        ],
        vec!["fixture", "even-shift"],
        vec!["higher-block", "fixtures:golden-mean", "--classical", "2"],
        vec![
            "member",
            "fixtures:ex7.11",
            "--bound",
            "4",
            "--preperiod",
            "3 0",
            "--period",
            "4 0",
        ],
    ];
    for args in &invocations {
        let run = |_: usize| {
            let out = std::process::Command::new(bin)
                .args(args)
                .env("SUBSHIFT_DEPTH", "6")
                .output()
                .expect("binary runs");
            assert!(out.status.success(), "{args:?}: {:?}", out.status);
            out.stdout
        };
        assert_eq!(run(0), run(1), "{args:?} not byte-identical");
    }

    // DOT output parses back to the same presentation
    let golden = fixture_spec("golden-mean", None);
    let oracle = golden.exact_oracle(&budget()).unwrap();
    let fg = follower_set_graph(&oracle, 8, &budget()).unwrap();
    let emitted = dot::follower_to_dot(&fg, &["header".into()]).unwrap();
    let parsed = dot::parse_dot(&emitted).unwrap();
    assert!(dot::same_presentation(&fg.to_labeled().unwrap(), &parsed));

    let even = fixture("even-shift", None).unwrap().graph.unwrap();
    let emitted = dot::labeled_to_dot(&even, &[]);
    let parsed = dot::parse_dot(&emitted).unwrap();
    assert!(dot::same_presentation(&even, &parsed));

    // exit codes: input errors are 1, undetermined verdicts are 2
    let bad = std::process::Command::new(bin)
        .args(["classify", "/nonexistent/file.spec"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let undetermined = std::process::Command::new(bin)
        .args([
            "member",
            "fixtures:golden-mean",
            "--left-period",
            "0 1",
            "--period",
            "0 1",
            "--check-budget",
            "2",
        ])
        .output()
        .unwrap();
    assert_eq!(undetermined.status.code(), Some(2));
    pass(
        9,
        "byte-identical reruns, DOT round trip, stable exit codes",
    );
}
