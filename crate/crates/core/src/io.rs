//! The line-oriented model format and transition system export.
//!
//! ```text
//! # comments run to the end of the line
//! component v 2
//! component u 1
//! edge u 1 v
//! edge v 2 v
//! edge v 1 u
//! param v v:0 u:0 = 2
//! param v v:2 u:0 = 1
//! param v default = 2
//! param u v:1 = 1
//! param u default = 0
//! ```
//!
//! A `param` row selects one context of its target by giving, for each regulator, the low
//! endpoint of the regulator's activity interval. Regulators whose only interval is the full
//! range may be left out. `default` fills every context without an explicit row.

use std::fmt::Write as _;

use crate::dynamics::TransitionSystem;
use crate::error::{ParseError, Result};
use crate::model::{
    Component, ComponentId, ContextSpace, Edge, Level, Limits, Model, Parametrization,
    RegulatoryGraph,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

/// Where each part of a parsed model was declared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceMap {
    pub components: Vec<Location>,
    pub edges: Vec<(Edge, Location)>,
    /// Per component and context: the row that set it, or `None` when filled by `default`.
    pub params: Vec<Vec<Option<Location>>>,
}

/// A parsed model together with its source text and declaration sites.
#[derive(Debug, Clone)]
pub struct ModelDocument {
    pub source: String,
    pub model: Model,
    pub source_map: SourceMap,
}

impl ModelDocument {
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_with_limits(text, Limits::default())
    }

    pub fn parse_with_limits(text: &str, limits: Limits) -> Result<Self> {
        Parser::new(text, limits).run()
    }
}

pub fn parse_model(text: &str) -> Result<Model> {
    Ok(ModelDocument::parse(text)?.model)
}

pub fn parse_model_with_limits(text: &str, limits: Limits) -> Result<Model> {
    Ok(ModelDocument::parse_with_limits(text, limits)?.model)
}

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Statement<'a> {
    line: usize,
    tokens: Vec<Token<'a>>,
}

impl<'a> Statement<'a> {
    fn at(&self, token: &Token<'_>) -> Location {
        Location {
            line: self.line,
            column: token.column,
        }
    }

    fn error(&self, token: &Token<'_>, message: impl Into<String>) -> ParseError {
        ParseError::new(self.line, token.column, message)
    }

    fn end_error(&self, message: impl Into<String>) -> ParseError {
        let last = self.tokens.last().expect("statements are non-empty");
        ParseError::new(self.line, last.column + last.text.chars().count(), message)
    }
}

fn tokenize(text: &str) -> Vec<Statement<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let content = raw.split('#').next().unwrap_or("");
            let mut tokens = Vec::new();
            let mut start: Option<usize> = None;
            for (byte, ch) in content
                .char_indices()
                .chain(std::iter::once((content.len(), ' ')))
            {
                if ch.is_whitespace() {
                    if let Some(s) = start.take() {
                        tokens.push(Token {
                            text: &content[s..byte],
                            column: content[..s].chars().count() + 1,
                        });
                    }
                } else if start.is_none() {
                    start = Some(byte);
                }
            }
            (!tokens.is_empty()).then_some(Statement {
                line: i + 1,
                tokens,
            })
        })
        .collect()
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_level(stmt: &Statement<'_>, token: &Token<'_>, what: &str) -> Result<Level, ParseError> {
    if token.text.is_empty() || !token.text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(stmt.error(
            token,
            format!(
                "{what} must be a non-negative integer, found `{}`",
                token.text
            ),
        ));
    }
    token.text.parse::<Level>().map_err(|_| {
        stmt.error(
            token,
            format!(
                "{what} `{}` exceeds the maximum of {}",
                token.text,
                Level::MAX
            ),
        )
    })
}

struct Parser<'a> {
    statements: Vec<Statement<'a>>,
    limits: Limits,
    source: &'a str,
}

impl<'a> Parser<'a> {
    fn new(source: &'a str, limits: Limits) -> Self {
        Parser {
            statements: tokenize(source),
            limits,
            source,
        }
    }

    fn run(self) -> Result<ModelDocument> {
        for stmt in &self.statements {
            let keyword = &stmt.tokens[0];
            if !matches!(keyword.text, "component" | "edge" | "param") {
                return Err(stmt
                    .error(keyword, format!("unknown statement `{}`", keyword.text))
                    .into());
            }
        }
        let (components, component_sites) = self.components()?;
        let owned: Vec<String> = components.iter().map(|c| c.name.clone()).collect();
        let names: Vec<&str> = owned.iter().map(String::as_str).collect();
        let edge_sites = self.edges(&components, &names)?;
        let edges = edge_sites.iter().map(|(e, _)| *e).collect();
        let graph = RegulatoryGraph::new(components, edges)?;
        let spaces: Vec<ContextSpace> = graph
            .component_ids()
            .map(|v| ContextSpace::new(&graph, v, &self.limits))
            .collect::<Result<_>>()?;
        let (tables, param_sites) = self.params(&graph, &spaces, &names, &component_sites)?;
        let model = Model::with_limits(graph, Parametrization::from_tables(tables), self.limits)?;
        Ok(ModelDocument {
            source: self.source.to_string(),
            model,
            source_map: SourceMap {
                components: component_sites,
                edges: edge_sites,
                params: param_sites,
            },
        })
    }

    fn of_kind(&self, keyword: &'static str) -> impl Iterator<Item = &Statement<'a>> {
        self.statements
            .iter()
            .filter(move |s| s.tokens[0].text == keyword)
    }

    fn components(&self) -> Result<(Vec<Component>, Vec<Location>), ParseError> {
        let mut components: Vec<Component> = Vec::new();
        let mut sites = Vec::new();
        for stmt in self.of_kind("component") {
            let t = &stmt.tokens;
            if t.len() != 3 {
                return Err(stmt.error(&t[0], "expected `component <name> <max_level>`"));
            }
            if !is_identifier(t[1].text) {
                return Err(stmt.error(&t[1], format!("invalid component name `{}`", t[1].text)));
            }
            if components.iter().any(|c| c.name == t[1].text) {
                return Err(stmt.error(
                    &t[1],
                    format!("component `{}` declared more than once", t[1].text),
                ));
            }
            let rho = parse_level(stmt, &t[2], "max level")?;
            if rho == 0 {
                return Err(stmt.error(&t[2], "max level must be >= 1"));
            }
            components.push(Component::new(t[1].text, rho));
            sites.push(stmt.at(&t[0]));
        }
        Ok((components, sites))
    }

    fn lookup(
        stmt: &Statement<'_>,
        token: &Token<'_>,
        names: &[&str],
    ) -> Result<ComponentId, ParseError> {
        names
            .iter()
            .position(|n| *n == token.text)
            .map(ComponentId)
            .ok_or_else(|| stmt.error(token, format!("unknown component `{}`", token.text)))
    }

    fn edges(
        &self,
        components: &[Component],
        names: &[&str],
    ) -> Result<Vec<(Edge, Location)>, ParseError> {
        let mut sites: Vec<(Edge, Location)> = Vec::new();
        for stmt in self.of_kind("edge") {
            let t = &stmt.tokens;
            if t.len() != 4 {
                return Err(stmt.error(&t[0], "expected `edge <source> <threshold> <target>`"));
            }
            let source = Self::lookup(stmt, &t[1], names)?;
            let threshold = parse_level(stmt, &t[2], "threshold")?;
            let target = Self::lookup(stmt, &t[3], names)?;
            let rho = components[source.index()].max_level;
            if threshold == 0 || threshold > rho {
                return Err(stmt.error(
                    &t[2],
                    format!(
                        "threshold {threshold} is outside [1,{rho}] for `{}`",
                        t[1].text
                    ),
                ));
            }
            let edge = Edge::new(source, threshold, target);
            if sites.iter().any(|(e, _)| *e == edge) {
                return Err(stmt.error(
                    &t[0],
                    format!("duplicate edge {} {} {}", t[1].text, threshold, t[3].text),
                ));
            }
            sites.push((edge, stmt.at(&t[0])));
        }
        Ok(sites)
    }

    #[allow(clippy::type_complexity)]
    fn params(
        &self,
        graph: &RegulatoryGraph,
        spaces: &[ContextSpace],
        names: &[&str],
        component_sites: &[Location],
    ) -> Result<(Vec<Vec<Level>>, Vec<Vec<Option<Location>>>), ParseError> {
        let mut values: Vec<Vec<Option<Level>>> =
            spaces.iter().map(|s| vec![None; s.len()]).collect();
        let mut sites: Vec<Vec<Option<Location>>> =
            spaces.iter().map(|s| vec![None; s.len()]).collect();
        let mut defaults: Vec<Option<(Level, Location)>> = vec![None; graph.len()];

        for stmt in self.of_kind("param") {
            let t = &stmt.tokens;
            if t.len() < 4 || t[t.len() - 2].text != "=" {
                return Err(
                    stmt.end_error("expected `param <target> <regulator>:<low>... = <value>`")
                );
            }
            let v = Self::lookup(stmt, &t[1], names)?;
            let value_token = &t[t.len() - 1];
            let value = parse_level(stmt, value_token, "parameter value")?;
            let rho = graph.max_level(v);
            if value > rho {
                return Err(stmt.error(
                    value_token,
                    format!(
                        "parameter value {value} exceeds max level {rho} of `{}`",
                        t[1].text
                    ),
                ));
            }
            let selectors = &t[2..t.len() - 2];
            if selectors.len() == 1 && selectors[0].text == "default" {
                if defaults[v.index()].is_some() {
                    return Err(
                        stmt.error(&selectors[0], format!("second default for `{}`", t[1].text))
                    );
                }
                defaults[v.index()] = Some((value, stmt.at(&t[0])));
                continue;
            }
            let space = &spaces[v.index()];
            let mut chosen: Vec<Option<usize>> = vec![None; graph.len()];
            for sel in selectors {
                let (name, low) = sel.text.split_once(':').ok_or_else(|| {
                    stmt.error(
                        sel,
                        format!("expected `<regulator>:<low>`, found `{}`", sel.text),
                    )
                })?;
                let u = names
                    .iter()
                    .position(|n| *n == name)
                    .map(ComponentId)
                    .ok_or_else(|| stmt.error(sel, format!("unknown component `{name}`")))?;
                if chosen[u.index()].is_some() {
                    return Err(stmt.error(sel, format!("`{name}` selected more than once")));
                }
                let low_token = Token {
                    text: low,
                    column: sel.column + name.chars().count() + 1,
                };
                let low = parse_level(stmt, &low_token, "interval low endpoint")?;
                let position = space
                    .bound_position(u, low)
                    .filter(|&p| p < space.interval_count(u))
                    .ok_or_else(|| {
                        stmt.error(
                            &low_token,
                            format!(
                                "no context of `{}` has an interval of `{name}` starting at {low}",
                                t[1].text
                            ),
                        )
                    })?;
                chosen[u.index()] = Some(position);
            }
            let mut ctx = 0;
            for u in graph.component_ids() {
                let index = match chosen[u.index()] {
                    Some(i) => i,
                    None if space.interval_count(u) == 1 => 0,
                    None => {
                        return Err(stmt.end_error(format!(
                            "missing selector for regulator `{}` of `{}`",
                            graph.name(u),
                            t[1].text
                        )))
                    }
                };
                ctx += index * space.stride(u);
            }
            if let Some(previous) = sites[v.index()][ctx] {
                return Err(stmt.error(
                    &t[0],
                    format!(
                        "context {} of `{}` already set on line {}",
                        space.context(ctx),
                        t[1].text,
                        previous.line
                    ),
                ));
            }
            values[v.index()][ctx] = Some(value);
            sites[v.index()][ctx] = Some(stmt.at(&t[0]));
        }

        let mut tables = Vec::with_capacity(graph.len());
        for v in graph.component_ids() {
            let space = &spaces[v.index()];
            let default = defaults[v.index()].map(|(value, _)| value);
            let table = values[v.index()]
                .iter()
                .enumerate()
                .map(|(ctx, value)| {
                    value.or(default).ok_or_else(|| {
                        let site = component_sites[v.index()];
                        ParseError::new(
                            site.line,
                            site.column,
                            format!(
                                "missing parameter row for context {} of `{}`",
                                space.context(ctx),
                                graph.name(v)
                            ),
                        )
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            tables.push(table);
        }
        Ok((tables, sites))
    }
}

/// Canonical text of a model: components in declaration order, edges in the fixed edge
/// order, one `param` row per context in table order, no defaults.
pub fn serialize_model(model: &Model) -> String {
    let graph = model.graph();
    let mut out = String::new();
    for c in graph.components() {
        writeln!(out, "component {} {}", c.name, c.max_level).unwrap();
    }
    for e in graph.edges() {
        writeln!(
            out,
            "edge {} {} {}",
            graph.name(e.source),
            e.threshold,
            graph.name(e.target)
        )
        .unwrap();
    }
    for v in graph.component_ids() {
        let space = model.space(v);
        let shown: Vec<ComponentId> = graph
            .component_ids()
            .filter(|&u| space.interval_count(u) > 1)
            .collect();
        for (ctx, value) in model.params().table(v).iter().enumerate() {
            write!(out, "param {}", graph.name(v)).unwrap();
            for &u in &shown {
                write!(out, " {}:{}", graph.name(u), space.interval(ctx, u).low).unwrap();
            }
            writeln!(out, " = {value}").unwrap();
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TsFormat {
    /// `(<levels>) -> (<levels>)`, one sorted line per transition.
    Edges,
    /// Graphviz digraph with one node per state.
    Dot,
}

pub fn export_ts(ts: &TransitionSystem, format: TsFormat) -> String {
    let mut out = String::new();
    match format {
        TsFormat::Edges => {
            for (from, to) in ts.transitions() {
                writeln!(out, "{from} -> {to}").unwrap();
            }
        }
        TsFormat::Dot => {
            out.push_str("digraph ts {\n");
            let space = ts.state_space();
            for (i, state) in space.iter().enumerate() {
                writeln!(out, "  s{i} [label=\"{state}\"];").unwrap();
            }
            for &(a, b) in ts.index_pairs() {
                writeln!(out, "  s{a} -> s{b};").unwrap();
            }
            out.push_str("}\n");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{async_ts, sync_ts};
    use crate::error::Error;

    pub(crate) const FEEDBACK: &str = "\
component v 2
component u 1
edge u 1 v
edge v 2 v
edge v 1 u
param v v:0 u:0 = 2
param v v:2 u:0 = 1
param v v:0 u:1 = 2
param v v:2 u:1 = 1
param u v:0 = 0
param u v:1 = 1
";

    const RAMP_MINIMAL: &str = "\
component v 2
component u 1
edge u 1 v
param v u:0 = 0
param v u:1 = 2
param u = 0
";

    fn parse_err(text: &str) -> ParseError {
        match parse_model(text) {
            Err(Error::Parse(e)) => e,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn parses_feedback() {
        let m = parse_model(FEEDBACK).unwrap();
        assert_eq!(m.graph().len(), 2);
        assert_eq!(m.graph().edges().len(), 3);
        assert_eq!(m.params().table(ComponentId(0)), &[2, 1, 2, 1]);
        assert_eq!(m.params().table(ComponentId(1)), &[0, 1]);
    }

    #[test]
    fn rejects_zero_max_level() {
        let e = parse_err("component v 0\n");
        assert_eq!((e.line, e.column), (1, 13));
        assert!(e.message.contains(">= 1"));
    }

    #[test]
    fn rejects_selector_without_context() {
        let text = FEEDBACK.replace("param v v:0 u:0 = 2", "param v v:1 u:0 = 2");
        let e = parse_err(&text);
        assert_eq!((e.line, e.column), (6, 11));
        assert!(e.message.contains("starting at 1"), "{}", e.message);
    }

    #[test]
    fn semantic_errors_carry_locations() {
        let cases = [
            ("component v 1\nedge w 1 v\n", (2, 6), "unknown component"),
            ("component v 1\nedge v 2 v\n", (2, 8), "outside [1,1]"),
            (
                "component v 1\nedge v 1 v\nedge v 1 v\n",
                (3, 1),
                "duplicate edge",
            ),
            (
                "component v 1\nparam v = 0\nparam v = 1\n",
                (3, 1),
                "already set",
            ),
            (
                "component v 1\nedge v 1 v\nparam v v:0 = 0\n",
                (1, 1),
                "missing parameter row",
            ),
            ("component v 1\nparam v = 2\n", (2, 11), "exceeds max level"),
            (
                "component v 1\nparam v default = 1\nparam v default = 0\n",
                (3, 9),
                "second default",
            ),
            (
                "component v 1\nedge v 1 v\nparam v = 0\n",
                (3, 12),
                "missing selector",
            ),
            ("component v 99999999\n", (1, 13), "exceeds the maximum"),
            ("component v 1\nfoo\n", (2, 1), "unknown statement"),
            (
                "component v 1\nparam v v:0 v:0 = 1\n",
                (2, 13),
                "more than once",
            ),
        ];
        for (text, (line, column), needle) in cases {
            let e = parse_err(text);
            assert_eq!((e.line, e.column), (line, column), "{text:?}: {e}");
            assert!(e.message.contains(needle), "{text:?}: {e}");
        }
    }

    #[test]
    fn default_rows_and_comments() {
        let text = "\
# toy
component v 2   # target
component u 1
edge u 1 v
param v u:1 = 2
param v default = 0
param u default = 1
";
        let doc = ModelDocument::parse(text).unwrap();
        assert_eq!(doc.model.params().table(ComponentId(0)), &[0, 2]);
        assert_eq!(
            doc.source_map.params[0][1],
            Some(Location { line: 5, column: 1 })
        );
        assert_eq!(doc.source_map.params[0][0], None);
        assert_eq!(
            doc.source_map.components[1],
            Location { line: 3, column: 1 }
        );
    }

    #[test]
    fn serialize_ramp_minimal() {
        let m = parse_model(RAMP_MINIMAL).unwrap();
        let text = serialize_model(&m);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(
            lines.iter().filter(|l| l.starts_with("component ")).count(),
            2
        );
        assert_eq!(lines.iter().filter(|l| l.starts_with("edge ")).count(), 1);
        assert_eq!(lines.iter().filter(|l| l.starts_with("param ")).count(), 3);
        assert_eq!(text, RAMP_MINIMAL);
    }

    #[test]
    fn serialize_roundtrip_feedback() {
        let m = parse_model(FEEDBACK).unwrap();
        let text = serialize_model(&m);
        assert_eq!(parse_model(&text).unwrap(), m);
        assert_eq!(serialize_model(&parse_model(&text).unwrap()), text);
        // canonical edge order differs from the input document
        assert!(text.contains("edge v 2 v\nedge v 1 u\nedge u 1 v\n"));
    }

    #[test]
    fn export_edges_of_feedback_ts() {
        let m = parse_model(FEEDBACK).unwrap();
        let text = export_ts(&async_ts(&m).unwrap(), TsFormat::Edges);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 9);
        assert_eq!(lines[0], "(0,0) -> (1,0)");
        let mut sorted = lines.clone();
        sorted.sort();
        assert_eq!(lines, sorted);
        assert!(text.ends_with('\n'));

        let sync = export_ts(&sync_ts(&m).unwrap(), TsFormat::Edges);
        assert_eq!(sync.lines().count(), 6);
    }

    #[test]
    fn export_empty_and_dot() {
        let m = parse_model("component w 1\nparam w = 1\n").unwrap();
        let ts = async_ts(&m).unwrap();
        assert_eq!(ts.len(), 1);
        let still =
            parse_model("component w 1\nedge w 1 w\nparam w w:0 = 0\nparam w w:1 = 1\n").unwrap();
        assert_eq!(export_ts(&async_ts(&still).unwrap(), TsFormat::Edges), "");
        let dot = export_ts(&ts, TsFormat::Dot);
        assert!(dot.starts_with("digraph ts {\n"));
        assert!(dot.contains("s1 [label=\"(1)\"];"));
        assert!(dot.contains("s0 -> s1;"));
    }
}
