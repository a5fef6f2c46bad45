//! Command-line front end: parses spec/code/graph files (or the built-in
//! `fixtures:` pseudo-paths), dispatches to the library analyses, and
//! prints deterministic reports. Exit codes: 0 decided, 1 input error,
//! 2 undetermined-dominated output.

use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use subshift_core::alphabet::Symbol;
use subshift_core::block_code::{self, CodeBody, GeneralizedCode};
use subshift_core::classifier::{self, Budgets};
use subshift_core::dot;
use subshift_core::error::Error;
use subshift_core::fixtures;
use subshift_core::graph::{self, GraphOracle, LabeledGraph};
use subshift_core::higher_block;
use subshift_core::language::{self, OracleBudget, Side, WordOracle};
use subshift_core::monoid::{Element, IndexSet, MonoidSpec};
use subshift_core::pattern::Pattern;
use subshift_core::shift::{self, ShiftSpec, Verdict, WindowConfig};
use subshift_core::textio;

/// Desk-scale workbench for shift spaces over monoid lattices.
#[derive(Parser)]
#[command(name = "subshift", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct BudgetFlags {
    /// Step-search budget (also read from SUBSHIFT_DEPTH).
    #[arg(long)]
    depth: Option<usize>,
    /// Follower-graph depth range, as `lo..hi`.
    #[arg(long = "L")]
    l_range: Option<String>,
    /// Decision-radius probe limit.
    #[arg(long)]
    dmax: Option<f64>,
    /// Truncation bound for parameterized fixtures.
    #[arg(long)]
    bound: Option<u32>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate window patterns of the language.
    Language {
        input: String,
        /// Window, as `lo..hi` or whitespace-separated indices.
        #[arg(long)]
        window: String,
        /// `auto`, `exact` or `local`; auto uses exact where available.
        #[arg(long, default_value = "auto")]
        mode: String,
        /// Metric inflation for local mode.
        #[arg(long, default_value_t = 0.0)]
        local_depth: f64,
        #[command(flatten)]
        budgets: BudgetFlags,
    },
    /// Decide membership of an eventually periodic configuration.
    Member {
        input: String,
        /// Preperiod symbols (whitespace separated, may be empty).
        #[arg(long, default_value = "")]
        preperiod: String,
        /// Period symbols (whitespace separated).
        #[arg(long)]
        period: String,
        /// Left period for two-sided lattices.
        #[arg(long)]
        left_period: Option<String>,
        /// Window-check budget.
        #[arg(long, default_value_t = 100_000)]
        check_budget: u64,
        #[command(flatten)]
        budgets: BudgetFlags,
    },
    /// Print the classification evidence report.
    Classify {
        input: String,
        #[command(flatten)]
        budgets: BudgetFlags,
    },
    /// Build the truncated follower-set graph.
    FollowerGraph {
        input: String,
        /// Output format: `text` or `dot`.
        #[arg(long, default_value = "text")]
        format: String,
        #[command(flatten)]
        budgets: BudgetFlags,
    },
    /// Recode through a cylinder partition (classical windows or a file).
    HigherBlock {
        input: String,
        /// Classical window length.
        #[arg(long)]
        classical: Option<usize>,
        /// Partition file with `cyl` lines.
        #[arg(long)]
        partition: Option<String>,
        #[command(flatten)]
        budgets: BudgetFlags,
    },
    /// Apply a block code to a finite window.
    ApplyCode {
        code: String,
        /// The window, as `index:symbol` pairs.
        #[arg(long)]
        input: String,
        #[command(flatten)]
        budgets: BudgetFlags,
    },
    /// Turn a graph into its edge-shift spec.
    EdgeShift {
        graph: String,
        #[arg(long, default_value = "additive-Z")]
        monoid: String,
        #[command(flatten)]
        budgets: BudgetFlags,
    },
    /// Pull a target spec back through a uniform code.
    Preimage {
        code: String,
        #[arg(long)]
        target: String,
        #[command(flatten)]
        budgets: BudgetFlags,
    },
    /// Print a built-in fixture bundle.
    Fixture {
        name: String,
        #[command(flatten)]
        budgets: BudgetFlags,
    },
}

/// A resolved analysis input: a spec or a graph presentation.
enum Source {
    Spec(ShiftSpec),
    Graph(LabeledGraph),
}

fn read_file(path: &str) -> Result<String, Error> {
    std::fs::read_to_string(Path::new(path))
        .map_err(|e| Error::InvalidInput(format!("cannot read `{path}`: {e}")))
}

fn resolve_source(input: &str, bound: Option<u32>) -> Result<Source, Error> {
    if let Some(name) = input.strip_prefix("fixtures:") {
        let b = fixtures::fixture(name, bound)?;
        if let Some(spec) = b.spec {
            return Ok(Source::Spec(spec));
        }
        if let Some(g) = b.graph {
            return Ok(Source::Graph(g));
        }
        return Err(Error::InvalidInput(format!(
            "fixture `{name}` provides neither a spec nor a graph"
        )));
    }
    let text = read_file(input)?;
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    if first.starts_with("vertex") || first.starts_with("edge") {
        Ok(Source::Graph(textio::parse_graph(&text, input)?))
    } else {
        Ok(Source::Spec(textio::parse_spec(&text, input)?))
    }
}

fn resolve_code(input: &str, bound: Option<u32>) -> Result<GeneralizedCode, Error> {
    if let Some(name) = input.strip_prefix("fixtures:") {
        let b = fixtures::fixture(name, bound)?;
        return b
            .code
            .ok_or_else(|| Error::InvalidInput(format!("fixture `{name}` provides no code")));
    }
    let text = read_file(input)?;
    textio::parse_code(&text, input)
}

fn parse_range(s: &str) -> Result<(usize, usize), Error> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| Error::InvalidInput(format!("`{s}` is not a `lo..hi` range")))?;
    let lo = lo
        .trim()
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad range start `{lo}`")))?;
    let hi = hi
        .trim()
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad range end `{hi}`")))?;
    if lo > hi {
        return Err(Error::InvalidInput(format!("empty range `{s}`")));
    }
    Ok((lo, hi))
}

fn parse_window(m: &MonoidSpec, s: &str) -> Result<IndexSet, Error> {
    if let Some((lo, hi)) = s.split_once("..") {
        if let (Ok(lo), Ok(hi)) = (lo.trim().parse::<i64>(), hi.trim().parse::<i64>()) {
            let elems: Vec<Element> = (lo..=hi)
                .map(|i| textio::parse_index(m, &i.to_string()))
                .collect::<Result<_, _>>()?;
            return Ok(IndexSet::new(elems));
        }
    }
    let elems: Vec<Element> = s
        .split_whitespace()
        .map(|t| textio::parse_index(m, t))
        .collect::<Result<_, _>>()?;
    if elems.is_empty() {
        return Err(Error::InvalidInput("empty window".into()));
    }
    Ok(IndexSet::new(elems))
}

fn symbols_of(s: &str) -> Vec<Symbol> {
    s.split_whitespace().map(Symbol::new).collect()
}

fn env_depth() -> Option<usize> {
    std::env::var("SUBSHIFT_DEPTH")
        .ok()
        .and_then(|v| v.parse().ok())
}

fn budgets_from(flags: &BudgetFlags) -> Result<Budgets, Error> {
    let mut b = Budgets::default();
    if let Some(d) = flags.depth.or_else(env_depth) {
        b.step_bound = d;
    }
    if let Some(r) = &flags.l_range {
        b.follower_range = parse_range(r)?;
    }
    if let Some(d) = flags.dmax {
        b.d_max = d;
    }
    Ok(b)
}

fn budget_header(out: &mut String, flags: &BudgetFlags, budgets: &Budgets) {
    let _ = writeln!(
        out,
        "# budgets: depth={} L={}..{} dmax={} bound={}",
        budgets.step_bound,
        budgets.follower_range.0,
        budgets.follower_range.1,
        budgets.d_max,
        flags
            .bound
            .map(|b| b.to_string())
            .unwrap_or_else(|| "-".into()),
    );
}

fn graph_word_patterns(
    g: &LabeledGraph,
    window: &IndexSet,
    budget: &OracleBudget,
) -> Result<Vec<Pattern>, Error> {
    let ints: Option<Vec<i64>> = window.iter().map(Element::as_int).collect();
    let ints =
        ints.ok_or_else(|| Error::InvalidInput("graph languages need integer windows".into()))?;
    let lo = ints[0];
    let hi = *ints.last().unwrap();
    let n = (hi - lo + 1) as usize;
    let oracle = GraphOracle::new(g, Side::TwoSided)?;
    let words = language::words_of_len(&oracle, n, budget)?;
    let mut out = std::collections::BTreeSet::new();
    for w in words {
        out.insert(Pattern::new(window.iter().map(|e| {
            let off = (e.as_int().unwrap() - lo) as usize;
            (e.clone(), g.alphabet.symbol(w[off]).clone())
        }))?);
    }
    Ok(out.into_iter().collect())
}

fn run(cli: Cli) -> Result<(String, u8), Error> {
    let mut out = String::new();
    let mut exit: u8 = 0;
    match cli.cmd {
        Cmd::Language {
            input,
            window,
            mode,
            local_depth,
            budgets,
        } => {
            let b = budgets_from(&budgets)?;
            let _ = writeln!(out, "# subshift language");
            budget_header(&mut out, &budgets, &b);
            match resolve_source(&input, budgets.bound)? {
                Source::Spec(s) => {
                    let win = parse_window(&s.monoid, &window)?;
                    let lang_mode = match mode.as_str() {
                        "exact" => shift::LanguageMode::Exact,
                        "local" => shift::LanguageMode::Local { depth: local_depth },
                        "auto" => match s.side() {
                            Ok(_) => shift::LanguageMode::Exact,
                            Err(_) => shift::LanguageMode::Local { depth: local_depth },
                        },
                        other => {
                            return Err(Error::InvalidInput(format!(
                                "mode must be `auto`, `exact` or `local`, not `{other}`"
                            )))
                        }
                    };
                    let r = shift::language(&s, &win, lang_mode, &b.oracle)?;
                    match r.exactness {
                        shift::Exactness::Exact => {
                            let _ = writeln!(out, "# exactness: exact");
                        }
                        shift::Exactness::LocallyAdmissibleAtDepth(d) => {
                            let _ = writeln!(
                                out,
                                "# exactness: locally admissible at depth {d} (superset)"
                            );
                        }
                    }
                    if let Some(k) = r.expansion_bound {
                        let _ = writeln!(out, "# expansion-bound: {k}");
                    }
                    let _ = writeln!(out, "patterns = {}", r.patterns.len());
                    for p in &r.patterns {
                        let _ = writeln!(out, "{}", textio::print_pattern(p));
                    }
                }
                Source::Graph(g) => {
                    let m = MonoidSpec::additive_z();
                    let win = parse_window(&m, &window)?;
                    let pats = graph_word_patterns(&g, &win, &b.oracle)?;
                    let _ = writeln!(out, "# exactness: exact (graph paths)");
                    let _ = writeln!(out, "patterns = {}", pats.len());
                    for p in &pats {
                        let _ = writeln!(out, "{}", textio::print_pattern(p));
                    }
                }
            }
        }
        Cmd::Member {
            input,
            preperiod,
            period,
            left_period,
            check_budget,
            budgets,
        } => {
            let b = budgets_from(&budgets)?;
            let _ = writeln!(out, "# subshift member");
            budget_header(&mut out, &budgets, &b);
            let Source::Spec(s) = resolve_source(&input, budgets.bound)? else {
                return Err(Error::InvalidInput(
                    "membership needs a spec input, not a graph".into(),
                ));
            };
            let config = match left_period {
                Some(lp) => shift::EventuallyPeriodicConfig::two_sided(
                    symbols_of(&lp),
                    symbols_of(&preperiod),
                    symbols_of(&period),
                )?,
                None => shift::EventuallyPeriodicConfig::one_sided(
                    symbols_of(&preperiod),
                    symbols_of(&period),
                )?,
            };
            let v = shift::member(&s, &config, check_budget)?;
            if let Some(k) = v.expansion_bound {
                let _ = writeln!(out, "expansion-bound = {k}");
            }
            match v.verdict {
                Verdict::Admissible => {
                    let _ = writeln!(out, "verdict = admissible");
                }
                Verdict::Inadmissible(w) => {
                    let _ = writeln!(out, "verdict = inadmissible");
                    let _ = writeln!(out, "witness-position = {}", w.position);
                    let _ = writeln!(
                        out,
                        "witness-pattern = {}",
                        textio::print_pattern(&w.pattern)
                    );
                }
                Verdict::Undetermined { budget_used } => {
                    let _ = writeln!(out, "verdict = undetermined");
                    let _ = writeln!(out, "budget-used = {budget_used}");
                    exit = 2;
                }
            }
        }
        Cmd::Classify { input, budgets } => {
            let b = budgets_from(&budgets)?;
            let _ = writeln!(out, "# subshift classify");
            budget_header(&mut out, &budgets, &b);
            match resolve_source(&input, budgets.bound)? {
                Source::Spec(s) => {
                    let report = classifier::classification_report(&s, &b)?;
                    let _ = write!(out, "{report}");
                }
                Source::Graph(g) => {
                    let oracle = GraphOracle::new(&g, Side::TwoSided)?;
                    let _ = writeln!(out, "[finite-type]");
                    let _ = writeln!(out, "verdict = unknown (graph-presented input)");
                    let _ = writeln!(out, "[step]");
                    match classifier::min_step(&oracle, b.step_bound, &b.oracle)? {
                        Some(m) => {
                            let _ = writeln!(out, "min-step = {m}");
                        }
                        None => {
                            let _ = writeln!(out, "min-step = none-at-bound-{}", b.step_bound);
                        }
                    }
                    let ev = classifier::sofic_evidence(&oracle, b.follower_range, &b.oracle)?;
                    let _ = writeln!(out, "[follower-growth]");
                    for (l, n, sat) in &ev.profile {
                        let _ = writeln!(out, "depth-{l} = {n} vertices, saturated={sat}");
                    }
                    let _ = writeln!(
                        out,
                        "max-terminal-per-letter = {}",
                        ev.max_terminal_per_letter
                    );
                    let orders: Vec<usize> = g
                        .alphabet
                        .iter()
                        .map(|a| {
                            graph::initial_vertices(&g, std::slice::from_ref(a))
                                .map(|s| s.len())
                                .unwrap_or(0)
                        })
                        .collect();
                    let _ = writeln!(out, "[presentation]");
                    let _ = writeln!(
                        out,
                        "max-initial-per-letter = {}",
                        orders.iter().max().copied().unwrap_or(0)
                    );
                }
            }
        }
        Cmd::FollowerGraph {
            input,
            format,
            budgets,
        } => {
            let b = budgets_from(&budgets)?;
            let oracle: Box<dyn WordOracle> = match resolve_source(&input, budgets.bound)? {
                Source::Spec(s) => Box::new(s.exact_oracle(&b.oracle)?),
                Source::Graph(g) => Box::new(GraphOracle::new(&g, Side::TwoSided)?),
            };
            let mut comments = vec![format!(
                "follower graphs over depths {}..{}",
                b.follower_range.0, b.follower_range.1
            )];
            let mut last = None;
            for depth in b.follower_range.0..=b.follower_range.1 {
                let fg = graph::follower_set_graph(oracle.as_ref(), depth, &b.oracle)?;
                comments.push(format!(
                    "depth-{depth}: {} vertices, saturated={}",
                    fg.vertices.len(),
                    fg.saturated
                ));
                last = Some(fg);
            }
            let fg = last.expect("nonempty range");
            match format.as_str() {
                "dot" => {
                    let _ = write!(out, "{}", dot::follower_to_dot(&fg, &comments)?);
                }
                "text" => {
                    let _ = writeln!(out, "# subshift follower-graph");
                    budget_header(&mut out, &budgets, &b);
                    for c in &comments {
                        let _ = writeln!(out, "# {c}");
                    }
                    let _ = writeln!(out, "vertices = {}", fg.vertices.len());
                    let _ = writeln!(out, "saturated = {}", fg.saturated);
                    for v in &fg.vertices {
                        let name: Vec<String> = v
                            .witness
                            .iter()
                            .map(|&a| fg.alphabet.symbol(a).to_string())
                            .collect();
                        let _ = writeln!(
                            out,
                            "vertex V({}) followers={}",
                            name.join(""),
                            v.followers.len()
                        );
                    }
                }
                other => {
                    return Err(Error::InvalidInput(format!(
                        "format must be `text` or `dot`, not `{other}`"
                    )))
                }
            }
        }
        Cmd::HigherBlock {
            input,
            classical,
            partition,
            budgets,
        } => {
            let b = budgets_from(&budgets)?;
            let _ = writeln!(out, "# subshift higher-block");
            budget_header(&mut out, &budgets, &b);
            let Source::Spec(s) = resolve_source(&input, budgets.bound)? else {
                return Err(Error::InvalidInput(
                    "higher-block recoding needs a spec input".into(),
                ));
            };
            let part = match (classical, partition) {
                (Some(n), None) => higher_block::PartitionN::classical(&s, n, &b.oracle)?,
                (None, Some(path)) => {
                    let text = read_file(&path)?;
                    let (m, cyls) = textio::parse_partition(&text, &path)?;
                    if m != s.monoid {
                        return Err(Error::InvalidInput(
                            "partition monoid disagrees with the spec".into(),
                        ));
                    }
                    higher_block::PartitionN::new(&s, cyls, &b.oracle)?
                }
                _ => {
                    return Err(Error::InvalidInput(
                        "pass exactly one of --classical N or --partition FILE".into(),
                    ))
                }
            };
            let cond = higher_block::check_conditions(&part, &s);
            let flag = |f: higher_block::ConditionFlag| {
                format!(
                    "{}{}",
                    f.holds,
                    if f.from_kind_table {
                        " (kind table)"
                    } else {
                        ""
                    }
                )
            };
            let _ = writeln!(out, "[conditions]");
            for (name, f) in [
                ("B1", cond.b1),
                ("B2", cond.b2),
                ("B3", cond.b3),
                ("B4", cond.b4),
                ("B5", cond.b5),
                ("C1", cond.c1),
                ("C2", cond.c2),
                ("C3", cond.c3),
                ("C4", cond.c4),
            ] {
                let _ = writeln!(out, "{name} = {}", flag(f));
            }
            let (spec, choice) = higher_block::higher_block_spec(&part, &s, &b.oracle)?;
            let _ = writeln!(out, "[generators]");
            let _ = writeln!(out, "overlap = {:?}", choice.overlap);
            let _ = writeln!(out, "image = {:?}", choice.image);
            let _ = writeln!(out, "[decoding]");
            for (i, c) in part.cylinders().iter().enumerate() {
                let _ = writeln!(out, "{} = {}", part.symbol_for(i), textio::print_pattern(c));
            }
            let _ = writeln!(out, "[spec]");
            let _ = write!(out, "{}", textio::print_spec(&spec));
        }
        Cmd::ApplyCode {
            code,
            input,
            budgets,
        } => {
            let b = budgets_from(&budgets)?;
            let _ = writeln!(out, "# subshift apply-code");
            budget_header(&mut out, &budgets, &b);
            let code = resolve_code(&code, budgets.bound)?;
            let w = WindowConfig(textio::parse_pattern(&code.monoid(), &input)?);
            let r = block_code::apply(&code, &w)?;
            let _ = writeln!(out, "defined = {}", r.defined.len());
            for (e, s) in &r.defined {
                let _ = writeln!(out, "{e} -> {s}");
            }
            for e in &r.no_class {
                let _ = writeln!(out, "{e} -> no-class");
            }
        }
        Cmd::EdgeShift {
            graph,
            monoid,
            budgets,
        } => {
            let b = budgets_from(&budgets)?;
            let _ = writeln!(out, "# subshift edge-shift");
            budget_header(&mut out, &budgets, &b);
            let g = match resolve_source(&graph, budgets.bound)? {
                Source::Graph(g) => g,
                Source::Spec(_) => {
                    return Err(Error::InvalidInput("edge-shift needs a graph input".into()))
                }
            };
            let m = MonoidSpec::from_name(&monoid)?;
            let s = graph::edge_shift_spec(&g.graph, m)?;
            let _ = write!(out, "{}", textio::print_spec(&s));
        }
        Cmd::Preimage {
            code,
            target,
            budgets,
        } => {
            let b = budgets_from(&budgets)?;
            let _ = writeln!(out, "# subshift preimage");
            budget_header(&mut out, &budgets, &b);
            let code = resolve_code(&code, budgets.bound)?;
            let CodeBody::Uniform(rule) = &code.body else {
                return Err(Error::InvalidInput(
                    "preimages are taken through uniform rules".into(),
                ));
            };
            let Source::Spec(target) = resolve_source(&target, budgets.bound)? else {
                return Err(Error::InvalidInput("preimage target must be a spec".into()));
            };
            let pre = block_code::preimage_spec(rule, &target, &b.oracle)?;
            let _ = write!(out, "{}", textio::print_spec(&pre));
        }
        Cmd::Fixture { name, budgets } => {
            let b = budgets_from(&budgets)?;
            let _ = writeln!(out, "# subshift fixture");
            budget_header(&mut out, &budgets, &b);
            let bundle = fixtures::fixture(&name, budgets.bound)?;
            for n in &bundle.notes {
                let _ = writeln!(out, "# {n}");
            }
            if let Some(s) = &bundle.spec {
                let _ = writeln!(out, "[spec]");
                let _ = write!(out, "{}", textio::print_spec(s));
            }
            if let Some(c) = &bundle.code {
                let _ = writeln!(out, "[code]");
                let _ = write!(out, "{}", textio::print_code(c));
            }
            if let Some(g) = &bundle.graph {
                let _ = writeln!(out, "[graph]");
                let _ = write!(out, "{}", textio::print_graph(g));
            }
            if let Some(cyls) = &bundle.partition_cylinders {
                let _ = writeln!(out, "[partition]");
                for c in cyls {
                    let _ = writeln!(out, "cyl {}", textio::print_pattern(c));
                }
            }
        }
    }
    Ok((out, exit))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
        Err(e) => {
            // --help / --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
