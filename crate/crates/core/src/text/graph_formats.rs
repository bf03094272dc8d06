use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result, SourceLocation};
use crate::model::{Fact, Graph};

/// Concrete syntax of a graph file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    /// `<s> <p> <o> .` per line, IRIs only.
    NTriples,
    /// `p(a,b).` facts with bare tokens.
    SimpleFacts,
}

impl GraphFormat {
    /// `.nt` or `.facts`.
    pub fn from_extension(ext: &str) -> Option<Self> {
        match ext {
            "nt" => Some(GraphFormat::NTriples),
            "facts" => Some(GraphFormat::SimpleFacts),
            _ => None,
        }
    }
}

impl FromStr for GraphFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "ntriples" | "nt" => Ok(GraphFormat::NTriples),
            "facts" | "simple-facts" => Ok(GraphFormat::SimpleFacts),
            other => Err(format!("unknown graph format `{other}` (expected ntriples or facts)")),
        }
    }
}

impl fmt::Display for GraphFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphFormat::NTriples => "ntriples",
            GraphFormat::SimpleFacts => "facts",
        })
    }
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph> {
    let mut graph = Graph::new();
    for (i, raw) in text.split('\n').enumerate() {
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        let mut cursor = LineCursor::new(line, i + 1);
        match format {
            GraphFormat::NTriples => {
                if let Some(fact) = ntriples_line(&mut cursor)? {
                    graph.insert(fact);
                }
            }
            GraphFormat::SimpleFacts => {
                while let Some(fact) = simple_fact(&mut cursor)? {
                    graph.insert(fact);
                }
            }
        }
    }
    Ok(graph)
}

/// Writes a graph in the requested format, one fact per line, sorted.
pub fn serialize_graph(graph: &Graph, format: GraphFormat) -> String {
    let mut out = String::new();
    for f in graph.facts() {
        match format {
            GraphFormat::NTriples => {
                out.push_str(&format!("<{}> <{}> <{}> .\n", f.subject, f.property, f.object))
            }
            GraphFormat::SimpleFacts => {
                out.push_str(&format!("{}({},{}).\n", f.property, f.subject, f.object))
            }
        }
    }
    out
}

struct LineCursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl LineCursor {
    fn new(src: &str, line: usize) -> Self {
        LineCursor {
            chars: src.chars().collect(),
            pos: 0,
            line,
        }
    }

    fn location(&self) -> SourceLocation {
        SourceLocation::new(self.line, self.pos + 1)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::parse(self.location(), message)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c == ' ' || c == '\t') {
            self.pos += 1;
        }
    }

    fn at_end_or_comment(&mut self) -> bool {
        self.skip_ws();
        matches!(self.peek(), None | Some('#'))
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }
}

fn ntriples_line(cur: &mut LineCursor) -> Result<Option<Fact>> {
    if cur.at_end_or_comment() {
        return Ok(None);
    }
    let subject = iri(cur, "subject")?;
    let predicate = iri(cur, "predicate")?;
    let object = iri(cur, "object")?;
    cur.expect('.')?;
    if !cur.at_end_or_comment() {
        return Err(cur.error("unexpected text after `.`"));
    }
    Ok(Some(Fact::new(predicate.as_str(), subject.as_str(), object.as_str())))
}

fn iri(cur: &mut LineCursor, role: &str) -> Result<String> {
    cur.skip_ws();
    match cur.peek() {
        Some('<') => {
            let start = cur.location();
            cur.pos += 1;
            let mut text = String::new();
            loop {
                match cur.peek() {
                    Some('>') => {
                        cur.pos += 1;
                        break;
                    }
                    Some(c) if c.is_whitespace() || matches!(c, '<' | '"') => {
                        return Err(cur.error(format!("invalid character {c:?} in IRI")))
                    }
                    Some(c) => {
                        text.push(c);
                        cur.pos += 1;
                    }
                    None => return Err(Error::parse(start, "unterminated IRI")),
                }
            }
            if text.is_empty() {
                return Err(Error::parse(start, "empty IRI"));
            }
            Ok(text)
        }
        Some('"') => Err(cur.error(format!(
            "literals are not supported ({role} position); only IRIs may appear in graphs"
        ))),
        Some('_') if cur.chars.get(cur.pos + 1) == Some(&':') => Err(cur.error(format!(
            "blank nodes are not supported ({role} position); only IRIs may appear in graphs"
        ))),
        Some(_) => Err(cur.error(format!("expected an IRI in {role} position"))),
        None => Err(cur.error(format!("missing {role}"))),
    }
}

fn is_token_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_token_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | ':' | '.' | '/' | '#' | '-')
}

fn token(cur: &mut LineCursor, what: &str) -> Result<String> {
    cur.skip_ws();
    if !cur.peek().is_some_and(is_token_start) {
        return Err(cur.error(format!("expected {what}")));
    }
    let start = cur.pos;
    while cur.peek().is_some_and(is_token_char) {
        cur.pos += 1;
    }
    Ok(cur.chars[start..cur.pos].iter().collect())
}

fn simple_fact(cur: &mut LineCursor) -> Result<Option<Fact>> {
    if cur.at_end_or_comment() {
        return Ok(None);
    }
    let property = token(cur, "a property name")?;
    cur.expect('(')?;
    let subject = token(cur, "a subject node")?;
    cur.expect(',')?;
    let object = token(cur, "an object node")?;
    cur.expect(')')?;
    cur.expect('.')?;
    Ok(Some(Fact::new(property.as_str(), subject.as_str(), object.as_str())))
}
