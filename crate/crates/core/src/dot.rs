//! Deterministic DOT emission for graphs, plus a parser for the emitted
//! subset grammar so outputs can be round-tripped.

use crate::alphabet::Symbol;
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, FollowerSetGraph, LabeledGraph};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "'"))
}

/// Emits a labeled graph. Vertex and edge order follow construction order,
/// so identical graphs print identically.
pub fn labeled_to_dot(g: &LabeledGraph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str("// ");
        out.push_str(c);
        out.push('\n');
    }
    out.push_str("digraph shift {\n  rankdir=LR;\n");
    for v in g.graph.vertices() {
        out.push_str(&format!("  {};\n", quote(v)));
    }
    for (i, e) in g.graph.edges().iter().enumerate() {
        out.push_str(&format!(
            "  {} -> {} [label={}];\n",
            quote(&g.graph.vertices()[e.src]),
            quote(&g.graph.vertices()[e.dst]),
            quote(g.label(i).as_str()),
        ));
    }
    out.push_str("}\n");
    out
}

pub fn directed_to_dot(g: &DirectedGraph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str("// ");
        out.push_str(c);
        out.push('\n');
    }
    out.push_str("digraph shift {\n  rankdir=LR;\n");
    for v in g.vertices() {
        out.push_str(&format!("  {};\n", quote(v)));
    }
    for e in g.edges() {
        out.push_str(&format!(
            "  {} -> {} [label={}];\n",
            quote(&g.vertices()[e.src]),
            quote(&g.vertices()[e.dst]),
            quote(&e.name),
        ));
    }
    out.push_str("}\n");
    out
}

pub fn follower_to_dot(fg: &FollowerSetGraph, comments: &[String]) -> Result<String> {
    Ok(labeled_to_dot(&fg.to_labeled()?, comments))
}

fn unquote(s: &str) -> Result<&str> {
    s.strip_prefix('"')
        .and_then(|s| s.strip_suffix('"'))
        .ok_or_else(|| Error::InvalidInput(format!("expected a quoted token, got `{s}`")))
}

/// Parses the emitted subset grammar back into a labeled graph. Edge names
/// are regenerated; compare graphs by vertex names and labeled edge
/// multisets.
pub fn parse_dot(text: &str) -> Result<LabeledGraph> {
    let mut g = DirectedGraph::new();
    let mut labels: Vec<Symbol> = Vec::new();
    let mut edge_no = 0usize;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let err = |production: &'static str, message: String| Error::Parse {
            file: "<dot>".into(),
            line: lineno + 1,
            production,
            message,
        };
        if line.is_empty()
            || line.starts_with("//")
            || line.starts_with("digraph")
            || line == "}"
            || line.starts_with("rankdir")
        {
            continue;
        }
        let line = line
            .strip_suffix(';')
            .ok_or_else(|| err("statement", "missing terminating `;`".into()))?;
        if let Some((lhs, rest)) = line.split_once("->") {
            let src = unquote(lhs.trim())?;
            let (dst_part, label_part) = rest
                .split_once('[')
                .ok_or_else(|| err("edge", "missing label attribute".into()))?;
            let dst = unquote(dst_part.trim())?;
            let label = label_part
                .trim()
                .strip_suffix(']')
                .and_then(|a| a.strip_prefix("label="))
                .ok_or_else(|| err("edge", "malformed label attribute".into()))?;
            let label = unquote(label.trim())?;
            let si = g
                .vertex_index(src)
                .ok_or_else(|| err("edge", format!("unknown vertex `{src}`")))?;
            let di = g
                .vertex_index(dst)
                .ok_or_else(|| err("edge", format!("unknown vertex `{dst}`")))?;
            g.add_edge(format!("e{edge_no}"), si, di)?;
            labels.push(Symbol::new(label));
            edge_no += 1;
        } else {
            g.add_vertex(unquote(line.trim())?)?;
        }
    }
    LabeledGraph::new(g, labels)
}

/// Vertex-name set plus labeled-edge multiset equality, the notion of
/// sameness the round-trip guarantees.
pub fn same_presentation(a: &LabeledGraph, b: &LabeledGraph) -> bool {
    let mut va: Vec<&String> = a.graph.vertices().iter().collect();
    let mut vb: Vec<&String> = b.graph.vertices().iter().collect();
    va.sort();
    vb.sort();
    if va != vb {
        return false;
    }
    let key = |g: &LabeledGraph| {
        let mut edges: Vec<(String, String, String)> = g
            .graph
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| {
                (
                    g.graph.vertices()[e.src].clone(),
                    g.graph.vertices()[e.dst].clone(),
                    g.label(i).to_string(),
                )
            })
            .collect();
        edges.sort();
        edges
    };
    key(a) == key(b)
}
