//! Graph file formats: JSON, plain edge lists and DOT.

use serde::{Deserialize, Serialize};

use super::Digraph;
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    vertices: Vec<String>,
    edges: Vec<JsonEdge>,
}

#[derive(Serialize, Deserialize)]
struct JsonEdge {
    from: String,
    to: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

/// `{"vertices": [...], "edges": [{"from", "to", "label"?}]}`.
pub fn from_json(text: &str) -> Result<Digraph> {
    let raw: JsonGraph = serde_json::from_str(text)?;
    let mut g = Digraph::new();
    for v in raw.vertices {
        g.add_vertex(v)?;
    }
    for e in raw.edges {
        g.add_edge_by_name(&e.from, &e.to, e.label.as_deref())?;
    }
    Ok(g)
}

pub fn to_json_value(g: &Digraph) -> serde_json::Value {
    let raw = JsonGraph {
        vertices: g.names().to_vec(),
        edges: g
            .edges()
            .iter()
            .map(|e| JsonEdge {
                from: g.name(e.from).to_owned(),
                to: g.name(e.to).to_owned(),
                label: e.label.clone(),
            })
            .collect(),
    };
    serde_json::to_value(raw).expect("plain data")
}

pub fn to_json(g: &Digraph) -> String {
    serde_json::to_string_pretty(&to_json_value(g)).expect("plain data")
}

/// One `from to [label]` per line; `#` starts a comment. A line with a single
/// token declares an isolated vertex. Vertices are declared on first sight.
pub fn from_edge_list(text: &str) -> Result<Digraph> {
    let mut g = Digraph::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            [] => {}
            [v] => {
                g.ensure_vertex(v);
            }
            [a, b] | [a, b, _] => {
                let u = g.ensure_vertex(a);
                let v = g.ensure_vertex(b);
                g.add_edge(u, v, toks.get(2).map(|s| s.to_string()))?;
            }
            _ => {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("expected `from to [label]`, got {} tokens", toks.len()),
                })
            }
        }
    }
    Ok(g)
}

pub fn to_edge_list(g: &Digraph) -> String {
    let mut out = String::new();
    for e in g.edges() {
        out.push_str(g.name(e.from));
        out.push(' ');
        out.push_str(g.name(e.to));
        if let Some(l) = &e.label {
            out.push(' ');
            out.push_str(l);
        }
        out.push('\n');
    }
    for v in g.vertices() {
        if g.successors(v).is_empty() && g.predecessors(v).is_empty() {
            out.push_str(g.name(v));
            out.push('\n');
        }
    }
    out
}

/// Picks JSON when the text starts with `{`, else the edge-list format.
pub fn parse_graph(text: &str) -> Result<Digraph> {
    if text.trim_start().starts_with('{') {
        from_json(text)
    } else if text.trim_start().starts_with("digraph") {
        from_dot(text)
    } else {
        from_edge_list(text)
    }
}

fn quote(s: &str) -> String {
    let mut q = String::with_capacity(s.len() + 2);
    q.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            q.push('\\');
        }
        q.push(c);
    }
    q.push('"');
    q
}

/// DOT export. Every vertex is declared before the edges so isolated vertices
/// and vertex order survive a round trip. `marked` gets a double circle.
pub fn to_dot(g: &Digraph, marked: Option<usize>) -> String {
    let mut out = String::from("digraph G {\n");
    for v in g.vertices() {
        out.push_str("  ");
        out.push_str(&quote(g.name(v)));
        if Some(v) == marked {
            out.push_str(" [shape=doublecircle]");
        }
        out.push_str(";\n");
    }
    for e in g.edges() {
        out.push_str("  ");
        out.push_str(&quote(g.name(e.from)));
        out.push_str(" -> ");
        out.push_str(&quote(g.name(e.to)));
        if let Some(l) = &e.label {
            out.push_str(" [label=");
            out.push_str(&quote(l));
            out.push(']');
        }
        out.push_str(";\n");
    }
    out.push_str("}\n");
    out
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
}

impl Lexer<'_> {
    fn skip_ws(&mut self) {
        while self.chars.peek().is_some_and(|c| c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        if self.chars.peek() == Some(&'"') {
            self.chars.next();
            let mut s = String::new();
            while let Some(c) = self.chars.next() {
                match c {
                    '\\' => s.extend(self.chars.next()),
                    '"' => return Some(s),
                    _ => s.push(c),
                }
            }
            None
        } else {
            let mut s = String::new();
            while let Some(&c) = self.chars.peek() {
                if c.is_alphanumeric() || c == '_' || c == '.' || c == '\'' {
                    s.push(c);
                    self.chars.next();
                } else {
                    break;
                }
            }
            (!s.is_empty()).then_some(s)
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        let mut probe = self.chars.clone();
        for c in s.chars() {
            if probe.next() != Some(c) {
                return false;
            }
        }
        self.chars = probe;
        true
    }

    // `[k=v, ...]`; returns the label if present
    fn attrs(&mut self) -> Result<Option<String>> {
        let mut label = None;
        if !self.eat("[") {
            return Ok(None);
        }
        loop {
            if self.eat("]") {
                return Ok(label);
            }
            let key = self.ident().ok_or_else(|| dot_err("attribute name"))?;
            if !self.eat("=") {
                return Err(dot_err("`=` in attribute"));
            }
            let val = self.ident().ok_or_else(|| dot_err("attribute value"))?;
            if key == "label" {
                label = Some(val);
            }
            self.eat(",");
            self.eat(";");
        }
    }
}

fn dot_err(what: &str) -> Error {
    Error::Parse {
        line: 0,
        msg: format!("DOT: expected {what}"),
    }
}

/// Parses the subset of DOT produced by [`to_dot`]: vertex statements and
/// `a -> b [label=..]` edges.
pub fn from_dot(text: &str) -> Result<Digraph> {
    let mut lx = Lexer {
        chars: text.chars().peekable(),
    };
    if !lx.eat("digraph") {
        return Err(dot_err("`digraph`"));
    }
    if !lx.eat("{") {
        lx.ident();
        if !lx.eat("{") {
            return Err(dot_err("`{`"));
        }
    }
    let mut g = Digraph::new();
    loop {
        if lx.eat("}") {
            return Ok(g);
        }
        let a = lx.ident().ok_or_else(|| dot_err("vertex"))?;
        if matches!(a.as_str(), "graph" | "node" | "edge") {
            lx.attrs()?;
            lx.eat(";");
            continue;
        }
        let u = g.ensure_vertex(&a);
        if lx.eat("->") {
            let b = lx.ident().ok_or_else(|| dot_err("edge target"))?;
            let v = g.ensure_vertex(&b);
            let label = lx.attrs()?;
            g.add_edge(u, v, label)?;
        } else {
            lx.attrs()?;
        }
        lx.eat(";");
    }
}
