//! Line-oriented text formats for shift specs, codes, graphs, partitions
//! and patterns, shared by the CLI and the fixture printers. Parse errors
//! cite the file, line and grammar production.

use crate::alphabet::{Alphabet, Symbol};
use crate::block_code::{CodeBody, CylinderPartition, GeneralizedCode, SlidingBlockRule};
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, LabeledGraph};
use crate::monoid::{Element, IndexSet, MonoidKind, MonoidSpec};
use crate::pattern::{ForbiddenSet, Pattern};
use crate::shift::ShiftSpec;

fn perr(file: &str, line: usize, production: &'static str, message: String) -> Error {
    Error::Parse {
        file: file.into(),
        line,
        production,
        message,
    }
}

/// Parses one lattice point in the per-monoid index syntax: plain integers
/// for the additive lines, comma-joined tuples for the additive planes,
/// positive integers for the multiplicative naturals, and `p/q` fractions
/// for the rationals.
pub fn parse_index(m: &MonoidSpec, s: &str) -> Result<Element> {
    let bad = || Error::InvalidInput(format!("`{s}` is not an index for {}", m.name()));
    let e = match m.kind {
        MonoidKind::AdditiveN | MonoidKind::AdditiveZ => {
            Element::int(s.parse::<i64>().map_err(|_| bad())?)
        }
        MonoidKind::AdditiveZd(d) => {
            let parts: Vec<i64> = s
                .split(',')
                .map(|p| p.parse::<i64>().map_err(|_| bad()))
                .collect::<Result<_>>()?;
            if parts.len() != d as usize {
                return Err(bad());
            }
            Element::tuple(parts)
        }
        MonoidKind::MultiplicativeNstar => Element::nat(s.parse::<u64>().map_err(|_| bad())?),
        MonoidKind::MultiplicativeQstar => match s.split_once('/') {
            Some((p, q)) => Element::ratio(
                p.parse::<u64>().map_err(|_| bad())?,
                q.parse::<u64>().map_err(|_| bad())?,
            )?,
            None => Element::ratio(s.parse::<u64>().map_err(|_| bad())?, 1)?,
        },
    };
    m.validate(&e)?;
    Ok(e)
}

/// Parses whitespace-separated `index:symbol` pairs.
pub fn parse_pattern(m: &MonoidSpec, s: &str) -> Result<Pattern> {
    let mut entries = Vec::new();
    for tok in s.split_whitespace() {
        let (idx, sym) = tok
            .split_once(':')
            .ok_or_else(|| Error::InvalidInput(format!("`{tok}` is not `index:symbol`")))?;
        entries.push((parse_index(m, idx)?, Symbol::new(sym)));
    }
    Pattern::new(entries)
}

pub fn print_pattern(p: &Pattern) -> String {
    p.iter()
        .map(|(e, s)| format!("{e}:{s}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parses a shift spec file: `monoid <name>`, `alphabet <sym>...`,
/// repeated `forbid <pattern>` lines, optional `family <name> bound <K>`,
/// optional `step <indices>`.
pub fn parse_spec(text: &str, file: &str) -> Result<ShiftSpec> {
    let mut monoid: Option<MonoidSpec> = None;
    let mut alphabet: Option<Alphabet> = None;
    let mut forbids: Vec<String> = Vec::new();
    let mut family: Option<(String, u32)> = None;
    let mut step: Option<String> = None;
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match key {
            "monoid" => {
                monoid = Some(
                    MonoidSpec::from_name(rest)
                        .map_err(|e| perr(file, no + 1, "monoid", e.to_string()))?,
                )
            }
            "alphabet" => {
                alphabet = Some(
                    Alphabet::from_strs(rest.split_whitespace())
                        .map_err(|e| perr(file, no + 1, "alphabet", e.to_string()))?,
                )
            }
            "forbid" => forbids.push(rest.to_string()),
            "family" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                match parts.as_slice() {
                    [name, "bound", k] => {
                        let k = k.parse::<u32>().map_err(|_| {
                            perr(file, no + 1, "family", format!("bad bound `{k}`"))
                        })?;
                        family = Some((name.to_string(), k));
                    }
                    _ => {
                        return Err(perr(
                            file,
                            no + 1,
                            "family",
                            "expected `family <name> bound <K>`".into(),
                        ))
                    }
                }
            }
            "step" => step = Some(rest.to_string()),
            _ => {
                return Err(perr(
                    file,
                    no + 1,
                    "spec-line",
                    format!("unknown directive `{key}`"),
                ))
            }
        }
    }
    let (monoid, alphabet, mut patterns, tag) = match family {
        Some((name, bound)) => {
            let f = crate::fixtures::expand_family(&name, bound)
                .map_err(|e| perr(file, 0, "family", e.to_string()))?;
            if let Some(m) = monoid {
                if m != f.monoid {
                    return Err(perr(
                        file,
                        0,
                        "family",
                        format!("declared monoid {} disagrees with the family", m.name()),
                    ));
                }
            }
            let alphabet = alphabet.unwrap_or_else(|| f.alphabet.clone());
            (
                f.monoid,
                alphabet,
                f.patterns().to_vec(),
                Some((name, bound)),
            )
        }
        None => {
            let m =
                monoid.ok_or_else(|| perr(file, 0, "monoid", "missing `monoid` line".into()))?;
            let a = alphabet
                .ok_or_else(|| perr(file, 0, "alphabet", "missing `alphabet` line".into()))?;
            (m, a, Vec::new(), None)
        }
    };
    for f in &forbids {
        patterns
            .push(parse_pattern(&monoid, f).map_err(|e| perr(file, 0, "forbid", e.to_string()))?);
    }
    let mut forbidden = ForbiddenSet::new(monoid, alphabet, patterns)
        .map_err(|e| perr(file, 0, "spec", e.to_string()))?;
    if let Some((name, bound)) = tag {
        forbidden = forbidden.with_family(name, bound);
    }
    let mut spec = ShiftSpec::new(forbidden);
    if let Some(step) = step {
        let indices: Vec<Element> = step
            .split_whitespace()
            .map(|t| parse_index(&monoid, t))
            .collect::<Result<_>>()
            .map_err(|e| perr(file, 0, "step", e.to_string()))?;
        spec = spec
            .with_step_hint(IndexSet::new(indices))
            .map_err(|e| perr(file, 0, "step", e.to_string()))?;
    }
    Ok(spec)
}

pub fn print_spec(s: &ShiftSpec) -> String {
    let mut out = String::new();
    out.push_str(&format!("monoid {}\n", s.monoid.name()));
    out.push_str("alphabet");
    for sym in s.alphabet.iter() {
        out.push_str(&format!(" {sym}"));
    }
    out.push('\n');
    if let Some(tag) = &s.forbidden.family {
        out.push_str(&format!("family {} bound {}\n", tag.name, tag.bound));
    }
    for p in s.forbidden.patterns() {
        out.push_str(&format!("forbid {}\n", print_pattern(p)));
    }
    if let Some(h) = &s.step_hint {
        out.push_str("step");
        for e in h.iter() {
            out.push_str(&format!(" {e}"));
        }
        out.push('\n');
    }
    out
}

/// Parses a code file. Uniform rules use `monoid`, `window <indices>`,
/// `target <sym>...` (optional), and `map <pattern> -> <symbol>` rows;
/// partitions use `class <symbol>` headers followed by `cyl <pattern>`
/// lines.
pub fn parse_code(text: &str, file: &str) -> Result<GeneralizedCode> {
    let mut monoid: Option<MonoidSpec> = None;
    let mut window: Option<IndexSet> = None;
    let mut rows: Vec<(Pattern, Symbol)> = Vec::new();
    let mut classes: Vec<(Symbol, Vec<Pattern>)> = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        let m = || -> Result<MonoidSpec> {
            monoid.ok_or_else(|| perr(file, no + 1, "code", "missing `monoid` line".into()))
        };
        match key {
            "monoid" => {
                monoid = Some(
                    MonoidSpec::from_name(rest)
                        .map_err(|e| perr(file, no + 1, "monoid", e.to_string()))?,
                )
            }
            "window" => {
                let mm = m()?;
                let indices: Vec<Element> = rest
                    .split_whitespace()
                    .map(|t| parse_index(&mm, t))
                    .collect::<Result<_>>()
                    .map_err(|e| perr(file, no + 1, "window", e.to_string()))?;
                window = Some(IndexSet::new(indices));
            }
            "map" => {
                let mm = m()?;
                let (lhs, rhs) = rest.split_once("->").ok_or_else(|| {
                    perr(
                        file,
                        no + 1,
                        "map",
                        "expected `map <pattern> -> <symbol>`".into(),
                    )
                })?;
                let pat = parse_pattern(&mm, lhs.trim())
                    .map_err(|e| perr(file, no + 1, "map", e.to_string()))?;
                rows.push((pat, Symbol::new(rhs.trim())));
            }
            "class" => classes.push((Symbol::new(rest), Vec::new())),
            "cyl" => {
                let mm = m()?;
                let pat = parse_pattern(&mm, rest)
                    .map_err(|e| perr(file, no + 1, "cyl", e.to_string()))?;
                classes
                    .last_mut()
                    .ok_or_else(|| perr(file, no + 1, "cyl", "`cyl` before any `class`".into()))?
                    .1
                    .push(pat);
            }
            _ => {
                return Err(perr(
                    file,
                    no + 1,
                    "code-line",
                    format!("unknown directive `{key}`"),
                ))
            }
        }
    }
    let monoid = monoid.ok_or_else(|| perr(file, 0, "code", "missing `monoid` line".into()))?;
    if !rows.is_empty() {
        let window = window
            .ok_or_else(|| perr(file, 0, "code", "missing `window` line for a rule".into()))?;
        let mut source: Vec<Symbol> = rows
            .iter()
            .flat_map(|(p, _)| p.iter().map(|(_, s)| s.clone()).collect::<Vec<_>>())
            .collect();
        source.sort();
        source.dedup();
        let mut target: Vec<Symbol> = rows.iter().map(|(_, v)| v.clone()).collect();
        target.sort();
        target.dedup();
        let mut rule = SlidingBlockRule::new(
            monoid,
            window,
            Alphabet::new(source).map_err(|e| perr(file, 0, "code", e.to_string()))?,
            Alphabet::new(target).map_err(|e| perr(file, 0, "code", e.to_string()))?,
        )
        .map_err(|e| perr(file, 0, "code", e.to_string()))?;
        for (p, v) in rows {
            rule.insert_row(&p, &v)
                .map_err(|e| perr(file, 0, "map", e.to_string()))?;
        }
        Ok(GeneralizedCode::uniform(rule))
    } else if !classes.is_empty() {
        let mut source: Vec<Symbol> = classes
            .iter()
            .flat_map(|(_, cyls)| {
                cyls.iter()
                    .flat_map(|c| c.iter().map(|(_, s)| s.clone()).collect::<Vec<_>>())
            })
            .collect();
        source.sort();
        source.dedup();
        let mut target: Vec<Symbol> = classes.iter().map(|(s, _)| s.clone()).collect();
        target.sort();
        target.dedup();
        let part = CylinderPartition::new(
            monoid,
            Alphabet::new(source).map_err(|e| perr(file, 0, "code", e.to_string()))?,
            Alphabet::new(target).map_err(|e| perr(file, 0, "code", e.to_string()))?,
            classes,
        )
        .map_err(|e| perr(file, 0, "code", e.to_string()))?;
        Ok(GeneralizedCode::partitioned(part))
    } else {
        Err(perr(
            file,
            0,
            "code",
            "no `map` rows and no `class` blocks".into(),
        ))
    }
}

pub fn print_code(c: &GeneralizedCode) -> String {
    let mut out = String::new();
    out.push_str(&format!("monoid {}\n", c.monoid().name()));
    match &c.body {
        CodeBody::Uniform(rule) => {
            out.push_str("window");
            for e in rule.window.iter() {
                out.push_str(&format!(" {e}"));
            }
            out.push('\n');
            for (p, v) in rule.rows() {
                out.push_str(&format!("map {} -> {v}\n", print_pattern(&p)));
            }
        }
        CodeBody::Partitioned(part) => {
            for (sym, cyls) in part.classes() {
                out.push_str(&format!("class {sym}\n"));
                for c in cyls {
                    out.push_str(&format!("cyl {}\n", print_pattern(c)));
                }
            }
        }
    }
    out
}

/// Parses a graph file: `vertex <id>` lines then
/// `edge <id> <src> <dst> label <symbol>` lines.
pub fn parse_graph(text: &str, file: &str) -> Result<LabeledGraph> {
    let mut g = DirectedGraph::new();
    let mut labels: Vec<Symbol> = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            ["vertex", name] => {
                g.add_vertex(*name)
                    .map_err(|e| perr(file, no + 1, "vertex", e.to_string()))?;
            }
            ["edge", name, src, dst, "label", label] => {
                let si = g
                    .vertex_index(src)
                    .ok_or_else(|| perr(file, no + 1, "edge", format!("unknown vertex `{src}`")))?;
                let di = g
                    .vertex_index(dst)
                    .ok_or_else(|| perr(file, no + 1, "edge", format!("unknown vertex `{dst}`")))?;
                g.add_edge(*name, si, di)
                    .map_err(|e| perr(file, no + 1, "edge", e.to_string()))?;
                labels.push(Symbol::new(*label));
            }
            _ => {
                return Err(perr(
                    file,
                    no + 1,
                    "graph-line",
                    "expected `vertex <id>` or `edge <id> <src> <dst> label <symbol>`".into(),
                ))
            }
        }
    }
    LabeledGraph::new(g, labels).map_err(|e| perr(file, 0, "graph", e.to_string()))
}

pub fn print_graph(g: &LabeledGraph) -> String {
    let mut out = String::new();
    for v in g.graph.vertices() {
        out.push_str(&format!("vertex {v}\n"));
    }
    for (i, e) in g.graph.edges().iter().enumerate() {
        out.push_str(&format!(
            "edge {} {} {} label {}\n",
            e.name,
            g.graph.vertices()[e.src],
            g.graph.vertices()[e.dst],
            g.label(i)
        ));
    }
    out
}

/// Parses a partition file: `monoid <name>` then `cyl <pattern>` lines.
pub fn parse_partition(text: &str, file: &str) -> Result<(MonoidSpec, Vec<Pattern>)> {
    let mut monoid: Option<MonoidSpec> = None;
    let mut cyls = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match key {
            "monoid" => {
                monoid = Some(
                    MonoidSpec::from_name(rest.trim())
                        .map_err(|e| perr(file, no + 1, "monoid", e.to_string()))?,
                )
            }
            "cyl" => {
                let m = monoid
                    .ok_or_else(|| perr(file, no + 1, "cyl", "missing `monoid` line".into()))?;
                cyls.push(
                    parse_pattern(&m, rest.trim())
                        .map_err(|e| perr(file, no + 1, "cyl", e.to_string()))?,
                );
            }
            _ => {
                return Err(perr(
                    file,
                    no + 1,
                    "partition-line",
                    format!("unknown directive `{key}`"),
                ))
            }
        }
    }
    let monoid =
        monoid.ok_or_else(|| perr(file, 0, "partition", "missing `monoid` line".into()))?;
    Ok((monoid, cyls))
}
