//! Minimal Graphviz output for undirected multigraphs, and a reader for the
//! subset this module writes.

use std::fmt::Write;

use crate::error::ComplexError;

#[derive(Debug, Clone, Default)]
pub struct DotGraph {
    name: String,
    nodes: Vec<String>,
    edges: Vec<(String, String, Option<String>)>,
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

impl DotGraph {
    pub fn new(name: impl Into<String>) -> Self {
        DotGraph { name: name.into(), ..Default::default() }
    }

    pub fn node(&mut self, name: &str) {
        self.nodes.push(name.to_string());
    }

    pub fn edge(&mut self, a: &str, b: &str, label: Option<&str>) {
        self.edges.push((a.to_string(), b.to_string(), label.map(str::to_string)));
    }

    /// Loops are written as ordinary `a -- a` edges, which Graphviz draws.
    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "graph {} {{", quote(&self.name)).unwrap();
        for n in &self.nodes {
            writeln!(out, "  {};", quote(n)).unwrap();
        }
        for (a, b, label) in &self.edges {
            match label {
                Some(l) => writeln!(out, "  {} -- {} [label={}];", quote(a), quote(b), quote(l)).unwrap(),
                None => writeln!(out, "  {} -- {};", quote(a), quote(b)).unwrap(),
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Nodes and edges (as name pairs) of a graph produced by [`DotGraph::render`].
pub fn parse_dot(text: &str) -> Result<(Vec<String>, Vec<(String, String)>), ComplexError> {
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    let mut offset = 0;
    for line in text.lines() {
        let start = offset;
        offset += line.len() + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with("graph ") || line == "}" {
            continue;
        }
        let body = line.strip_suffix(';').ok_or_else(|| ComplexError::Syntax { position: start, message: "missing ';'".into() })?;
        let body = match body.find(" [") {
            Some(i) => &body[..i],
            None => body,
        };
        let names = quoted_names(body).ok_or_else(|| ComplexError::Syntax { position: start, message: "bad quoting".into() })?;
        match names.as_slice() {
            [n] => nodes.push(n.clone()),
            [a, b] if body.contains("--") => edges.push((a.clone(), b.clone())),
            _ => return Err(ComplexError::Syntax { position: start, message: format!("unexpected statement {body:?}") }),
        }
    }
    Ok((nodes, edges))
}

fn quoted_names(s: &str) -> Option<Vec<String>> {
    let mut out = Vec::new();
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        if c != '"' {
            continue;
        }
        let mut name = String::new();
        loop {
            match chars.next()? {
                '\\' => name.push(chars.next()?),
                '"' => break,
                ch => name.push(ch),
            }
        }
        out.push(name);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_then_parse() {
        let mut g = DotGraph::new("r");
        g.node("2");
        g.node("x'");
        g.edge("2", "2", Some("t3"));
        g.edge("2", "x'", None);
        let (nodes, edges) = parse_dot(&g.render()).unwrap();
        assert_eq!(nodes, ["2", "x'"]);
        assert_eq!(edges, [("2".to_string(), "2".to_string()), ("2".to_string(), "x'".to_string())]);
    }
}
