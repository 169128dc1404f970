//! The `.dg` text format for weighted graphs.
//!
//! Three statement forms:
//!
//! ```text
//! chain [0, 0, -2, -3]
//! cycle (0, 0, -1, -1)
//! graph { E: -1  A: -2  B: -2  C: -2  E--A  E--B  E--C }
//! ```
//!
//! Identifiers are alphanumeric (plus `_`), weights are signed decimal
//! integers, `--` joins two vertices, and a repeated edge line raises the
//! multiplicity. `#` starts a comment running to the end of the line.
//! Chains and cycles name their vertices `C1 … Cn` in path order.
//!
//! [`print_graph`] inverts [`parse_graph`] exactly: parsing the printed text
//! reproduces the same vertex names, weights, and edge multiset.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use dualgraph::{DualGraph, GraphError, VertexId};

/// 1-based position of a token in the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// A parse or validation failure, located when a source position is known.
#[derive(Debug)]
pub struct ParseError {
    pub span: Option<Span>,
    pub message: String,
}

impl ParseError {
    fn at(span: Span, message: impl Into<String>) -> Self {
        ParseError {
            span: Some(span),
            message: message.into(),
        }
    }

    fn whole(message: impl Into<String>) -> Self {
        ParseError {
            span: None,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.span {
            Some(span) => write!(f, "{span}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

impl std::error::Error for ParseError {}

/// A parsed source: the original text, the graph, and where each vertex was
/// declared (chain/cycle vertices point at their weight tokens).
#[derive(Debug)]
pub struct GraphDocument {
    /// The original text, kept next to the value it parsed to.
    #[allow(dead_code)]
    pub source: String,
    pub graph: DualGraph,
    /// Declaration position of each vertex, for downstream diagnostics.
    #[allow(dead_code)]
    pub spans: BTreeMap<VertexId, Span>,
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    LBracket,
    RBracket,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Colon,
    DashDash,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Int(n) => write!(f, "integer `{n}`"),
            Tok::LBracket => write!(f, "`[`"),
            Tok::RBracket => write!(f, "`]`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::LBrace => write!(f, "`{{`"),
            Tok::RBrace => write!(f, "`}}`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Colon => write!(f, "`:`"),
            Tok::DashDash => write!(f, "`--`"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Span)>, ParseError> {
    let mut out = Vec::new();
    for (li, raw_line) in text.lines().enumerate() {
        let line = match raw_line.find('#') {
            Some(i) => &raw_line[..i],
            None => raw_line,
        };
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let span = Span {
                line: li + 1,
                col: i + 1,
            };
            let c = chars[i];
            match c {
                c if c.is_whitespace() => i += 1,
                '[' => {
                    out.push((Tok::LBracket, span));
                    i += 1;
                }
                ']' => {
                    out.push((Tok::RBracket, span));
                    i += 1;
                }
                '(' => {
                    out.push((Tok::LParen, span));
                    i += 1;
                }
                ')' => {
                    out.push((Tok::RParen, span));
                    i += 1;
                }
                '{' => {
                    out.push((Tok::LBrace, span));
                    i += 1;
                }
                '}' => {
                    out.push((Tok::RBrace, span));
                    i += 1;
                }
                ',' => {
                    out.push((Tok::Comma, span));
                    i += 1;
                }
                ':' => {
                    out.push((Tok::Colon, span));
                    i += 1;
                }
                '-' => {
                    if chars.get(i + 1) == Some(&'-') {
                        out.push((Tok::DashDash, span));
                        i += 2;
                    } else if chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()) {
                        let start = i;
                        i += 1;
                        while chars.get(i).is_some_and(|d| d.is_ascii_digit()) {
                            i += 1;
                        }
                        let text: String = chars[start..i].iter().collect();
                        let n = text.parse::<i64>().map_err(|_| {
                            ParseError::at(span, format!("integer `{text}` is out of range"))
                        })?;
                        out.push((Tok::Int(n), span));
                    } else {
                        return Err(ParseError::at(
                            span,
                            "expected `--` (an edge) or a digit after `-`",
                        ));
                    }
                }
                c if c.is_ascii_digit() => {
                    let start = i;
                    while chars.get(i).is_some_and(|d| d.is_ascii_digit()) {
                        i += 1;
                    }
                    let text: String = chars[start..i].iter().collect();
                    let n = text.parse::<i64>().map_err(|_| {
                        ParseError::at(span, format!("integer `{text}` is out of range"))
                    })?;
                    out.push((Tok::Int(n), span));
                }
                c if c.is_alphabetic() || c == '_' => {
                    let start = i;
                    while chars
                        .get(i)
                        .is_some_and(|x| x.is_alphanumeric() || *x == '_')
                    {
                        i += 1;
                    }
                    let text: String = chars[start..i].iter().collect();
                    out.push((Tok::Ident(text), span));
                }
                other => {
                    return Err(ParseError::at(span, format!("unexpected character `{other}`")));
                }
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Parser<'a> {
    toks: &'a [(Tok, Span)],
    at: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&(Tok, Span)> {
        self.toks.get(self.at)
    }

    fn next(&mut self) -> Option<&(Tok, Span)> {
        let t = self.toks.get(self.at);
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: &Tok) -> Result<Span, ParseError> {
        match self.next() {
            Some((tok, span)) if tok == want => Ok(*span),
            Some((tok, span)) => Err(ParseError::at(*span, format!("expected {want}, found {tok}"))),
            None => Err(ParseError::whole(format!(
                "expected {want}, found end of input"
            ))),
        }
    }

    fn int(&mut self) -> Result<(i64, Span), ParseError> {
        match self.next() {
            Some((Tok::Int(n), span)) => Ok((*n, *span)),
            Some((tok, span)) => Err(ParseError::at(*span, format!("expected a weight, found {tok}"))),
            None => Err(ParseError::whole("expected a weight, found end of input")),
        }
    }

    /// Comma-separated integers, possibly empty, up to (not consuming) `end`.
    fn int_list(&mut self, end: &Tok) -> Result<Vec<(i64, Span)>, ParseError> {
        let mut out = Vec::new();
        if self.peek().map(|(t, _)| t) == Some(end) {
            return Ok(out);
        }
        loop {
            out.push(self.int()?);
            match self.peek() {
                Some((Tok::Comma, _)) => {
                    self.next();
                    // Tolerate a trailing comma before the closer.
                    if self.peek().map(|(t, _)| t) == Some(end) {
                        return Ok(out);
                    }
                }
                _ => return Ok(out),
            }
        }
    }
}

/// Parse one `.dg` statement into a validated graph.
pub fn parse_graph(text: &str) -> Result<GraphDocument, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks: &toks, at: 0 };
    let (graph, spans) = match p.next() {
        Some((Tok::Ident(kw), span)) => {
            let (kw, span) = (kw.clone(), *span);
            match kw.as_str() {
                "chain" => parse_chain(&mut p, span)?,
                "cycle" => parse_cycle(&mut p, span)?,
                "graph" => parse_block(&mut p, span)?,
                other => {
                    return Err(ParseError::at(
                        span,
                        format!("expected `chain`, `cycle`, or `graph`, found `{other}`"),
                    ))
                }
            }
        }
        Some((tok, span)) => {
            return Err(ParseError::at(
                *span,
                format!("expected `chain`, `cycle`, or `graph`, found {tok}"),
            ))
        }
        None => return Err(ParseError::whole("empty input: expected a graph statement")),
    };
    if let Some((tok, span)) = p.peek() {
        return Err(ParseError::at(*span, format!("unexpected {tok} after the graph")));
    }
    Ok(GraphDocument {
        source: text.to_string(),
        graph,
        spans,
    })
}

type Parsed = (DualGraph, BTreeMap<VertexId, Span>);

fn parse_chain(p: &mut Parser<'_>, kw: Span) -> Result<Parsed, ParseError> {
    p.expect(&Tok::LBracket)?;
    let items = p.int_list(&Tok::RBracket)?;
    p.expect(&Tok::RBracket)?;
    if items.is_empty() {
        return Err(ParseError::at(kw, "a chain needs at least one weight"));
    }
    let ws: Vec<i64> = items.iter().map(|(w, _)| *w).collect();
    let graph = DualGraph::chain(&ws);
    let spans = items
        .iter()
        .enumerate()
        .map(|(i, (_, span))| (VertexId::new(format!("C{}", i + 1)), *span))
        .collect();
    Ok((graph, spans))
}

fn parse_cycle(p: &mut Parser<'_>, kw: Span) -> Result<Parsed, ParseError> {
    p.expect(&Tok::LParen)?;
    let items = p.int_list(&Tok::RParen)?;
    p.expect(&Tok::RParen)?;
    if items.len() < 2 {
        return Err(ParseError::at(
            kw,
            "a cycle needs at least two weights (a single vertex cannot meet itself)",
        ));
    }
    let ws: Vec<i64> = items.iter().map(|(w, _)| *w).collect();
    let graph = DualGraph::cycle(&ws);
    let spans = items
        .iter()
        .enumerate()
        .map(|(i, (_, span))| (VertexId::new(format!("C{}", i + 1)), *span))
        .collect();
    Ok((graph, spans))
}

fn parse_block(p: &mut Parser<'_>, kw: Span) -> Result<Parsed, ParseError> {
    p.expect(&Tok::LBrace)?;
    let mut decls: Vec<(VertexId, i64)> = Vec::new();
    let mut spans: BTreeMap<VertexId, Span> = BTreeMap::new();
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    loop {
        match p.next() {
            Some((Tok::RBrace, _)) => break,
            Some((Tok::Ident(name), span)) => {
                let (name, span) = (name.clone(), *span);
                match p.next() {
                    Some((Tok::Colon, _)) => {
                        let (w, _) = p.int()?;
                        let id = VertexId::new(name);
                        if spans.contains_key(&id) {
                            return Err(ParseError::at(
                                span,
                                format!("vertex `{}` is declared twice", id.as_str()),
                            ));
                        }
                        spans.insert(id.clone(), span);
                        decls.push((id, w));
                    }
                    Some((Tok::DashDash, _)) => {
                        let other = match p.next() {
                            Some((Tok::Ident(o), ospan)) => (VertexId::new(o.clone()), *ospan),
                            Some((tok, span)) => {
                                return Err(ParseError::at(
                                    *span,
                                    format!("expected a vertex name after `--`, found {tok}"),
                                ))
                            }
                            None => {
                                return Err(ParseError::whole(
                                    "expected a vertex name after `--`, found end of input",
                                ))
                            }
                        };
                        let u = VertexId::new(name);
                        if !spans.contains_key(&u) {
                            return Err(ParseError::at(
                                span,
                                format!("edge endpoint `{}` is not declared", u.as_str()),
                            ));
                        }
                        if !spans.contains_key(&other.0) {
                            return Err(ParseError::at(
                                other.1,
                                format!("edge endpoint `{}` is not declared", other.0.as_str()),
                            ));
                        }
                        if u == other.0 {
                            return Err(ParseError::at(
                                span,
                                format!("edge `{0}--{0}` would be a loop", u.as_str()),
                            ));
                        }
                        edges.push((u, other.0));
                    }
                    Some((tok, span)) => {
                        return Err(ParseError::at(
                            *span,
                            format!("expected `:` (a weight) or `--` (an edge), found {tok}"),
                        ))
                    }
                    None => {
                        return Err(ParseError::whole(
                            "expected `:` or `--` after a vertex name, found end of input",
                        ))
                    }
                }
            }
            Some((tok, span)) => {
                return Err(ParseError::at(
                    *span,
                    format!("expected a vertex declaration, an edge, or `}}`, found {tok}"),
                ))
            }
            None => return Err(ParseError::whole("unclosed `graph {` block")),
        }
    }
    if decls.is_empty() {
        return Err(ParseError::at(kw, "a graph needs at least one vertex"));
    }
    match DualGraph::new(decls, edges) {
        Ok(graph) => Ok((graph, spans)),
        Err(GraphError::Disconnected(a, b)) => Err(ParseError::at(
            kw,
            format!(
                "the graph is not connected: no path joins `{}` and `{}`",
                a.as_str(),
                b.as_str()
            ),
        )),
        Err(e) => Err(ParseError::at(kw, e.to_string())),
    }
}

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

/// True when the vertex names are exactly `C1 … Cn` arranged as a path (for
/// `want_cycle = false`) or a cycle (`true`) in index order — i.e. the graph
/// is literally what `chain [...]`/`cycle (...)` would parse to.
fn canonical_ids_in_order(g: &DualGraph, want_cycle: bool) -> Option<Vec<VertexId>> {
    let n = g.vertex_count();
    let ids: Vec<VertexId> = (1..=n).map(|i| VertexId::new(format!("C{i}"))).collect();
    let actual: BTreeSet<&VertexId> = g.vertices().map(|(v, _)| v).collect();
    if actual != ids.iter().collect() {
        return None;
    }
    let expected_edges: Vec<((usize, usize), u32)> = if want_cycle {
        if n == 2 {
            vec![((0, 1), 2)]
        } else if n >= 3 {
            let mut e: Vec<((usize, usize), u32)> =
                (0..n - 1).map(|i| ((i, i + 1), 1)).collect();
            e.push(((0, n - 1), 1));
            e
        } else {
            return None;
        }
    } else {
        (0..n.saturating_sub(1)).map(|i| ((i, i + 1), 1)).collect()
    };
    let total: u32 = expected_edges.iter().map(|(_, m)| m).sum();
    let actual_total: u32 = g.edges().map(|(_, _, m)| m).sum();
    if total != actual_total {
        return None;
    }
    for ((i, j), m) in expected_edges {
        if g.edge_multiplicity(&ids[i], &ids[j]) != m {
            return None;
        }
    }
    Some(ids)
}

/// Render a graph as `.dg` text, preserving vertex names exactly.
///
/// Uses the `chain`/`cycle` sugar only when the graph is literally the value
/// such a statement parses to (names `C1 … Cn` in order); everything else is
/// printed as a `graph { ... }` block. Parsing the output reproduces the
/// input value exactly.
pub fn print_graph(g: &DualGraph) -> String {
    if let Some(ids) = canonical_ids_in_order(g, false) {
        let ws: Vec<String> = ids
            .iter()
            .map(|v| g.weight(v).unwrap().to_string())
            .collect();
        return format!("chain [{}]", ws.join(", "));
    }
    if let Some(ids) = canonical_ids_in_order(g, true) {
        let ws: Vec<String> = ids
            .iter()
            .map(|v| g.weight(v).unwrap().to_string())
            .collect();
        return format!("cycle ({})", ws.join(", "));
    }
    let mut out = String::from("graph {\n");
    for (v, w) in g.vertices() {
        out.push_str(&format!("  {}: {w}\n", v.as_str()));
    }
    for (u, v, m) in g.edges() {
        for _ in 0..m {
            out.push_str(&format!("  {}--{}\n", u.as_str(), v.as_str()));
        }
    }
    out.push('}');
    out
}

/// Render a graph by its weight sequence when its shape allows: chains print
/// as `chain [...]` (standard orientation), cycles as `cycle (...)`
/// (standard reading), and anything else falls back to [`print_graph`].
/// Unlike [`print_graph`] this renames chain/cycle vertices to `C1 … Cn`.
pub fn print_presentation(g: &DualGraph) -> String {
    if let Some((_, ws)) = g.as_chain() {
        let ws: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
        format!("chain [{}]", ws.join(", "))
    } else if let Some((_, ws)) = g.as_cycle_reading() {
        let ws: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
        format!("cycle ({})", ws.join(", "))
    } else {
        print_graph(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roundtrip(text: &str) {
        let doc = parse_graph(text).unwrap();
        let printed = print_graph(&doc.graph);
        let again = parse_graph(&printed).unwrap();
        assert_eq!(doc.graph, again.graph, "print → parse changed the value");
    }

    #[test]
    fn parses_the_three_statement_forms() {
        let chain = parse_graph("chain [0, 0, -2, -3]").unwrap();
        assert_eq!(chain.graph.vertex_count(), 4);
        assert_eq!(chain.graph.weight(&VertexId::new("C4")), Some(-3));

        let cycle = parse_graph("cycle (0, 0, -1, -1)").unwrap();
        assert_eq!(cycle.graph.edge_count(), 4);

        let fork =
            parse_graph("graph { E: -1  A: -2  B: -2  C: -2  E--A  E--B  E--C }").unwrap();
        assert_eq!(fork.graph.valency(&VertexId::new("E")), 3);
        assert_eq!(fork.graph.weight(&VertexId::new("E")), Some(-1));
    }

    #[test]
    fn parse_print_parse_is_identity() {
        roundtrip("chain [0]");
        roundtrip("chain [0, 0, -2, -3]");
        roundtrip("cycle (0, 0)");
        roundtrip("cycle (0, 0, -1, -1)");
        roundtrip("graph { E: -1  A: -2  B: -2  C: -2  E--A  E--B  E--C }");
        roundtrip("graph { A: 0  B: -1  A--B  A--B }"); // multi-edge
        roundtrip("graph { only: 5 }");
    }

    #[test]
    fn comments_and_newlines_are_ignored(){
        let text = "# a fork\ngraph {\n  E: -1  # the center\n  A: -2\n  E--A\n}";
        let doc = parse_graph(text).unwrap();
        assert_eq!(doc.graph.vertex_count(), 2);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_graph("chain [0, 0, -2,").unwrap_err();
        assert!(e.to_string().contains("end of input"), "{e}");

        let e = parse_graph("graph { A: -1  B: -2  A--X }").unwrap_err();
        assert_eq!(e.span.map(|s| (s.line, s.col)), Some((1, 26)));
        assert!(e.to_string().contains("not declared"), "{e}");

        let e = parse_graph("graph { A: -1  A: -2 }").unwrap_err();
        assert!(e.to_string().contains("declared twice"), "{e}");

        let e = parse_graph("graph { A: -1  A--A }").unwrap_err();
        assert!(e.to_string().contains("loop"), "{e}");

        let e = parse_graph("graph { A: -1  B: -2 }").unwrap_err();
        assert!(e.to_string().contains("not connected"), "{e}");

        let e = parse_graph("lattice [0]").unwrap_err();
        assert!(e.to_string().contains("expected `chain`"), "{e}");
    }

    #[test]
    fn repeated_edges_accumulate_multiplicity() {
        let doc = parse_graph("graph { A: 0  B: 0  A--B  A--B  A--B }").unwrap();
        assert_eq!(
            doc.graph
                .edge_multiplicity(&VertexId::new("A"), &VertexId::new("B")),
            3
        );
    }

    #[test]
    fn presentation_uses_shape_sugar() {
        // Same path, scrambled names: print_graph keeps names, presentation
        // renders the weight sequence in its standard orientation.
        let doc = parse_graph("graph { left: -2  mid: 0  right: -3  left--mid  mid--right }")
            .unwrap();
        assert!(print_graph(&doc.graph).starts_with("graph {"));
        assert_eq!(print_presentation(&doc.graph), "chain [-2, 0, -3]");
    }
}
