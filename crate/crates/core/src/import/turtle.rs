//! A reader for the small Turtle subset that SHACL shapes graphs need:
//! `@prefix`, prefixed names, `<IRI>`s, `a`, `[...]` blank nodes, `(...)`
//! collections, `;`/`,` separators and integer literals.

use std::collections::BTreeMap;

use crate::error::{Error, Result, SourceLocation};

pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Iri(String),
    /// Blank node, numbered in order of appearance.
    Blank(usize),
    List(Vec<Located>),
    Integer(String),
    /// Lexical form of a string literal; language tags and datatypes are
    /// dropped.
    Literal(String),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Located {
    pub term: Term,
    pub location: SourceLocation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triple {
    pub subject: Term,
    pub predicate: String,
    pub predicate_location: SourceLocation,
    pub object: Located,
}

/// Parsed document: prefixes plus triples with blank nodes and lists kept
/// as structure.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TurtleDoc {
    pub prefixes: BTreeMap<String, String>,
    pub triples: Vec<Triple>,
    /// Blank nodes written in subject position at the top level, in order.
    pub top_level_blanks: Vec<usize>,
}

impl TurtleDoc {
    /// Triples whose subject is `subject`, in document order.
    pub fn about(&self, subject: &Term) -> impl Iterator<Item = &Triple> {
        let subject = subject.clone();
        self.triples.iter().filter(move |t| t.subject == subject)
    }
}

pub fn parse_turtle(text: &str) -> Result<TurtleDoc> {
    let mut reader = Reader {
        chars: text.chars().collect(),
        pos: 0,
        line: 1,
        col: 1,
        doc: TurtleDoc::default(),
        blanks: 0,
    };
    reader.document()?;
    Ok(reader.doc)
}

struct Reader {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
    doc: TurtleDoc,
    blanks: usize,
}

fn is_pn_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '-'
}

impl Reader {
    fn location(&self) -> SourceLocation {
        SourceLocation::new(self.line, self.col)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, k: usize) -> Option<char> {
        self.chars.get(self.pos + k).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while self.peek().is_some_and(|c| c != '\n') {
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::parse(self.location(), message))
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected `{c}`"))
        }
    }

    fn document(&mut self) -> Result<()> {
        loop {
            self.skip_ws();
            match self.peek() {
                None => return Ok(()),
                Some('@') => self.directive()?,
                Some(_) => self.triples()?,
            }
        }
    }

    fn directive(&mut self) -> Result<()> {
        let at = self.location();
        self.bump();
        let mut word = String::new();
        while self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            word.push(self.bump().unwrap());
        }
        if word != "prefix" {
            return Err(Error::parse(at, format!("unsupported directive `@{word}`")));
        }
        self.skip_ws();
        let mut prefix = String::new();
        while self.peek().is_some_and(is_pn_char) {
            prefix.push(self.bump().unwrap());
        }
        if self.peek() != Some(':') {
            return self.error("expected `:` after the prefix name");
        }
        self.bump();
        self.skip_ws();
        let iri = self.iri_ref()?;
        self.expect('.')?;
        self.doc.prefixes.insert(prefix, iri);
        Ok(())
    }

    fn iri_ref(&mut self) -> Result<String> {
        let at = self.location();
        if self.peek() != Some('<') {
            return self.error("expected `<`");
        }
        self.bump();
        let mut iri = String::new();
        loop {
            match self.peek() {
                Some('>') => {
                    self.bump();
                    return Ok(iri);
                }
                Some(c) if c.is_whitespace() || c == '<' || c == '"' => {
                    return self.error(format!("invalid character {c:?} in IRI"))
                }
                Some(_) => iri.push(self.bump().unwrap()),
                None => return Err(Error::parse(at, "unterminated IRI")),
            }
        }
    }

    fn prefixed_name(&mut self) -> Result<String> {
        let at = self.location();
        let mut prefix = String::new();
        while self.peek().is_some_and(is_pn_char) {
            prefix.push(self.bump().unwrap());
        }
        if self.peek() != Some(':') {
            return Err(Error::parse(at, format!("unexpected `{prefix}`")));
        }
        self.bump();
        let mut local = String::new();
        // a `.` belongs to the local name only when more name characters follow
        while let Some(c) = self.peek() {
            if is_pn_char(c) || (c == '.' && self.peek_at(1).is_some_and(is_pn_char)) {
                local.push(self.bump().unwrap());
            } else {
                break;
            }
        }
        let Some(ns) = self.doc.prefixes.get(&prefix) else {
            return Err(Error::parse(at, format!("undeclared prefix `{prefix}:`")));
        };
        Ok(format!("{ns}{local}"))
    }

    fn iri(&mut self) -> Result<String> {
        self.skip_ws();
        if self.peek() == Some('<') {
            self.iri_ref()
        } else {
            self.prefixed_name()
        }
    }

    fn triples(&mut self) -> Result<()> {
        self.skip_ws();
        let subject = if self.peek() == Some('[') {
            let id = self.blank_node_property_list()?;
            self.doc.top_level_blanks.push(id);
            self.skip_ws();
            if self.peek() == Some('.') {
                self.bump();
                return Ok(());
            }
            Term::Blank(id)
        } else if self.peek() == Some('(') {
            return self.error("collections are not supported in subject position");
        } else {
            Term::Iri(self.iri()?)
        };
        self.predicate_object_list(&subject)?;
        self.expect('.')
    }

    fn predicate_object_list(&mut self, subject: &Term) -> Result<()> {
        loop {
            self.skip_ws();
            let predicate_location = self.location();
            let predicate = if self.peek() == Some('a') && !self.peek_at(1).is_some_and(|c| is_pn_char(c) || c == ':') {
                self.bump();
                RDF_TYPE.to_owned()
            } else {
                self.iri()?
            };
            loop {
                let object = self.object()?;
                self.doc.triples.push(Triple {
                    subject: subject.clone(),
                    predicate: predicate.clone(),
                    predicate_location,
                    object,
                });
                self.skip_ws();
                if self.peek() == Some(',') {
                    self.bump();
                } else {
                    break;
                }
            }
            self.skip_ws();
            if self.peek() != Some(';') {
                return Ok(());
            }
            while self.peek() == Some(';') {
                self.bump();
                self.skip_ws();
            }
            if matches!(self.peek(), Some('.') | Some(']')) {
                return Ok(());
            }
        }
    }

    fn blank_node_property_list(&mut self) -> Result<usize> {
        self.bump();
        let id = self.blanks;
        self.blanks += 1;
        self.skip_ws();
        if self.peek() != Some(']') {
            self.predicate_object_list(&Term::Blank(id))?;
        }
        self.expect(']')?;
        Ok(id)
    }

    fn string_literal(&mut self, quote: char) -> Result<String> {
        let at = self.location();
        self.bump();
        let mut text = String::new();
        loop {
            match self.bump() {
                Some(c) if c == quote => break,
                Some('\\') => match self.bump() {
                    Some('n') => text.push('\n'),
                    Some('t') => text.push('\t'),
                    Some('r') => text.push('\r'),
                    Some(c @ ('"' | '\'' | '\\')) => text.push(c),
                    _ => return Err(Error::parse(at, "invalid escape in string literal")),
                },
                Some('\n') | None => return Err(Error::parse(at, "unterminated string literal")),
                Some(c) => text.push(c),
            }
        }
        if self.peek() == Some('@') {
            self.bump();
            while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '-') {
                self.bump();
            }
        } else if self.peek() == Some('^') && self.peek_at(1) == Some('^') {
            self.bump();
            self.bump();
            self.iri()?;
        }
        Ok(text)
    }

    fn object(&mut self) -> Result<Located> {
        self.skip_ws();
        let location = self.location();
        let term = match self.peek() {
            Some('[') => Term::Blank(self.blank_node_property_list()?),
            Some('(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_ws();
                    if self.peek() == Some(')') {
                        self.bump();
                        break;
                    }
                    if self.peek().is_none() {
                        return Err(Error::parse(location, "unterminated collection"));
                    }
                    items.push(self.object()?);
                }
                Term::List(items)
            }
            Some(c) if c.is_ascii_digit() || c == '+' || c == '-' => {
                let mut digits = String::new();
                if c == '+' {
                    self.bump();
                } else if c == '-' {
                    digits.push(self.bump().unwrap());
                }
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    digits.push(self.bump().unwrap());
                }
                if self.peek().is_some_and(|c| c == 'e' || c == 'E')
                    || (self.peek() == Some('.') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()))
                {
                    return Err(Error::parse(location, "only integer literals are supported"));
                }
                if digits.is_empty() || digits == "-" {
                    return Err(Error::parse(location, "expected digits"));
                }
                Term::Integer(digits)
            }
            Some(q @ ('"' | '\'')) => Term::Literal(self.string_literal(q)?),
            Some('_') if self.peek_at(1) == Some(':') => {
                return Err(Error::parse(location, "labelled blank nodes are not supported; use `[...]`"))
            }
            Some(_) => Term::Iri(self.iri()?),
            None => return self.error("expected an object"),
        };
        Ok(Located { term, location })
    }
}
