//! Parser for the shape-schema DSL.
//!
//! ```text
//! shape Person := >= 1 name . top & closed(name, knows) .
//! target {alice} <= Person .
//! targetClass rdf:type Employee ~> Person .
//! ```

use std::num::NonZeroU32;

use crate::error::{Error, Result, SourceLocation};
use crate::model::{desugar, PathExpr, ShapeExpr, ShapeName, ShapeSchema, Target};

/// Words that cannot be used as bare names; write `<word>` instead.
pub const KEYWORDS: &[&str] = &[
    "shape",
    "target",
    "targetNode",
    "targetSubjectsOf",
    "targetObjectsOf",
    "targetClass",
    "top",
    "exists",
    "forall",
    "eq",
    "disj",
    "closed",
];

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Iri(String),
    Int(String),
    Define,  // :=
    Subsume, // <=
    AtLeast, // >=
    Arrow,   // ~>
    Sym(char),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("`{w}`"),
            Tok::Iri(i) => format!("`<{i}>`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Define => "`:=`".into(),
            Tok::Subsume => "`<=`".into(),
            Tok::AtLeast => "`>=`".into(),
            Tok::Arrow => "`~>`".into(),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::Eof => "end of input".into(),
        }
    }
}

pub(crate) fn is_name_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

pub(crate) fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '-'
}

fn lex(text: &str) -> Result<Vec<(Tok, SourceLocation)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);

    macro_rules! bump {
        () => {{
            let c = chars[i];
            i += 1;
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        }};
    }

    while i < chars.len() {
        let c = chars[i];
        let here = SourceLocation::new(line, col);
        let next = chars.get(i + 1).copied();
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                bump!();
            }
            continue;
        }
        let tok = if is_name_start(c) {
            let mut word = String::new();
            while i < chars.len() && is_name_char(chars[i]) {
                word.push(bump!());
            }
            // prefixed form `ex:local`; a `:` followed by `=` is `:=`
            if i + 1 < chars.len() && chars[i] == ':' && is_name_char(chars[i + 1]) {
                word.push(bump!());
                while i < chars.len() && is_name_char(chars[i]) {
                    word.push(bump!());
                }
            }
            Tok::Word(word)
        } else if c.is_ascii_digit() {
            let mut digits = String::new();
            while i < chars.len() && chars[i].is_ascii_digit() {
                digits.push(bump!());
            }
            Tok::Int(digits)
        } else if c == '<' && next == Some('=') {
            bump!();
            bump!();
            Tok::Subsume
        } else if c == '<' {
            bump!();
            let mut iri = String::new();
            loop {
                match chars.get(i) {
                    Some('>') => {
                        bump!();
                        break;
                    }
                    Some(&ch) if ch.is_whitespace() || ch == '<' => {
                        return Err(Error::parse(
                            SourceLocation::new(line, col),
                            format!("invalid character {ch:?} in `<...>` name"),
                        ))
                    }
                    Some(_) => iri.push(bump!()),
                    None => return Err(Error::parse(here, "unterminated `<...>` name")),
                }
            }
            if iri.is_empty() {
                return Err(Error::parse(here, "empty `<>` name"));
            }
            Tok::Iri(iri)
        } else if c == ':' && next == Some('=') {
            bump!();
            bump!();
            Tok::Define
        } else if c == '>' && next == Some('=') {
            bump!();
            bump!();
            Tok::AtLeast
        } else if c == '~' && next == Some('>') {
            bump!();
            bump!();
            Tok::Arrow
        } else if "{}()&|!^/*?.,".contains(c) {
            bump!();
            Tok::Sym(c)
        } else {
            return Err(Error::parse(here, format!("unexpected character {c:?}")));
        };
        toks.push((tok, here));
    }
    toks.push((Tok::Eof, SourceLocation::new(line, col)));
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, SourceLocation)>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.pos + offset).min(self.toks.len() - 1);
        &self.toks[i].0
    }

    fn location(&self) -> SourceLocation {
        self.toks[self.pos].1
    }

    fn advance(&mut self) -> Tok {
        let tok = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        tok
    }

    fn error<T>(&self, expected: &str) -> Result<T> {
        Err(Error::parse(
            self.location(),
            format!("expected {expected}, found {}", self.peek().describe()),
        ))
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.advance();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            self.error(&tok.describe())
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Word(w) if w == kw)
    }

    fn name(&mut self, what: &str) -> Result<String> {
        match self.peek().clone() {
            Tok::Word(w) if !KEYWORDS.contains(&w.as_str()) => {
                self.advance();
                Ok(w)
            }
            Tok::Iri(i) => {
                self.advance();
                Ok(i)
            }
            Tok::Word(w) => Err(Error::parse(
                self.location(),
                format!("`{w}` is a keyword; write <{w}> to use it as {what}"),
            )),
            _ => self.error(what),
        }
    }

    fn schema(&mut self) -> Result<ShapeSchema> {
        let mut definitions: Vec<(ShapeName, ShapeExpr, SourceLocation)> = Vec::new();
        let mut targets = Vec::new();
        loop {
            let at = self.location();
            let Tok::Word(kw) = self.peek().clone() else {
                if *self.peek() == Tok::Eof {
                    break;
                }
                return self.error("`shape` or a target statement");
            };
            self.advance();
            match kw.as_str() {
                "shape" => {
                    let name = ShapeName::new(self.name("a shape name")?);
                    self.expect(Tok::Define)?;
                    let body = self.shape()?;
                    self.expect(Tok::Sym('.'))?;
                    if definitions.iter().any(|(n, _, _)| *n == name) {
                        return Err(Error::parse(at, format!("shape {name} is defined twice")));
                    }
                    definitions.push((name, desugar(&body), at));
                }
                "target" => {
                    let lhs = self.shape()?;
                    self.expect(Tok::Subsume)?;
                    let rhs = self.shape()?;
                    self.expect(Tok::Sym('.'))?;
                    targets.push(Target::new(desugar(&lhs), desugar(&rhs)));
                }
                "targetNode" | "targetSubjectsOf" | "targetObjectsOf" | "targetClass" => {
                    let lhs = match kw.as_str() {
                        "targetNode" => ShapeExpr::constant(self.name("a node name")?.as_str()),
                        "targetSubjectsOf" => ShapeExpr::at_least(
                            1,
                            PathExpr::prop(self.name("a property name")?.as_str()),
                            ShapeExpr::Top,
                        ),
                        "targetObjectsOf" => ShapeExpr::at_least(
                            1,
                            PathExpr::inverse(self.name("a property name")?.as_str()),
                            ShapeExpr::Top,
                        ),
                        _ => {
                            let r = self.name("a property name")?;
                            let c = self.name("a class node name")?;
                            ShapeExpr::at_least(
                                1,
                                PathExpr::prop(r.as_str()),
                                ShapeExpr::constant(c.as_str()),
                            )
                        }
                    };
                    self.expect(Tok::Arrow)?;
                    let rhs = ShapeExpr::shape_ref(self.name("a shape name")?.as_str());
                    self.expect(Tok::Sym('.'))?;
                    targets.push(Target::new(lhs, rhs));
                }
                _ => {
                    self.pos -= 1;
                    return self.error("`shape` or a target statement");
                }
            }
        }
        ShapeSchema::from_parts(
            definitions.into_iter().map(|(n, s, _)| (n, s)),
            targets,
        )
    }

    fn shape(&mut self) -> Result<ShapeExpr> {
        let mut left = self.conjunction()?;
        while self.eat(&Tok::Sym('|')) {
            left = ShapeExpr::or(left, self.conjunction()?);
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<ShapeExpr> {
        let mut left = self.unary()?;
        while self.eat(&Tok::Sym('&')) {
            left = ShapeExpr::and(left, self.unary()?);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<ShapeExpr> {
        if self.eat(&Tok::Sym('!')) {
            return Ok(ShapeExpr::negate(self.unary()?));
        }
        if self.eat(&Tok::AtLeast) {
            let at = self.location();
            let Tok::Int(digits) = self.advance() else {
                return Err(Error::parse(at, "expected a count after `>=`"));
            };
            let n = digits
                .parse::<u32>()
                .ok()
                .and_then(NonZeroU32::new)
                .ok_or_else(|| {
                    Error::parse(at, format!("count must be between 1 and {}", u32::MAX))
                })?;
            let path = self.path()?;
            self.expect(Tok::Sym('.'))?;
            return Ok(ShapeExpr::AtLeast(n, path, Box::new(self.unary()?)));
        }
        if self.is_keyword("exists") || self.is_keyword("forall") {
            let universal = self.is_keyword("forall");
            self.advance();
            let path = self.path()?;
            self.expect(Tok::Sym('.'))?;
            let body = self.unary()?;
            return Ok(if universal {
                ShapeExpr::forall(path, body)
            } else {
                ShapeExpr::exists(path, body)
            });
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<ShapeExpr> {
        if self.eat(&Tok::Sym('(')) {
            let inner = self.shape()?;
            self.expect(Tok::Sym(')'))?;
            return Ok(inner);
        }
        if self.eat(&Tok::Sym('{')) {
            let c = self.name("a node name")?;
            self.expect(Tok::Sym('}'))?;
            return Ok(ShapeExpr::constant(c.as_str()));
        }
        if self.is_keyword("top") {
            self.advance();
            return Ok(ShapeExpr::Top);
        }
        for kw in ["eq", "disj"] {
            if self.is_keyword(kw) && *self.peek_at(1) == Tok::Sym('(') {
                self.advance();
                self.advance();
                let p = self.name("a property name")?;
                self.expect(Tok::Sym(','))?;
                let path = self.path()?;
                self.expect(Tok::Sym(')'))?;
                return Ok(if kw == "eq" {
                    ShapeExpr::equals(p.as_str(), path)
                } else {
                    ShapeExpr::disjoint(p.as_str(), path)
                });
            }
        }
        if self.is_keyword("closed") && *self.peek_at(1) == Tok::Sym('(') {
            self.advance();
            self.advance();
            let mut props = Vec::new();
            if !self.eat(&Tok::Sym(')')) {
                loop {
                    props.push(self.name("a property name")?);
                    if self.eat(&Tok::Sym(')')) {
                        break;
                    }
                    self.expect(Tok::Sym(','))?;
                }
            }
            return Ok(ShapeExpr::closed(props.iter().map(String::as_str)));
        }
        let name = self.name("a shape")?;
        Ok(ShapeExpr::shape_ref(name.as_str()))
    }

    fn path(&mut self) -> Result<PathExpr> {
        let mut left = self.path_sequence()?;
        while self.eat(&Tok::Sym('|')) {
            left = PathExpr::union(left, self.path_sequence()?);
        }
        Ok(left)
    }

    fn path_sequence(&mut self) -> Result<PathExpr> {
        let mut left = self.path_postfix()?;
        while self.eat(&Tok::Sym('/')) {
            left = PathExpr::compose(left, self.path_postfix()?);
        }
        Ok(left)
    }

    fn path_postfix(&mut self) -> Result<PathExpr> {
        let mut path = self.path_primary()?;
        loop {
            if self.eat(&Tok::Sym('*')) {
                path = PathExpr::star(path);
            } else if self.eat(&Tok::Sym('?')) {
                path = PathExpr::optional(path);
            } else {
                return Ok(path);
            }
        }
    }

    fn path_primary(&mut self) -> Result<PathExpr> {
        if self.eat(&Tok::Sym('(')) {
            let inner = self.path()?;
            self.expect(Tok::Sym(')'))?;
            return Ok(inner);
        }
        if self.eat(&Tok::Sym('^')) {
            if *self.peek() == Tok::Sym('(') {
                return self.error("a property name (`^` applies to property names only)");
            }
            return Ok(PathExpr::inverse(self.name("a property name")?.as_str()));
        }
        Ok(PathExpr::prop(self.name("a path")?.as_str()))
    }
}

/// Parses a schema written in the DSL. `exists`/`forall` are desugared, so
/// the result only contains core constructors.
pub fn parse_schema(text: &str) -> Result<ShapeSchema> {
    Parser::new(text)?.schema()
}

/// Parses a single shape expression (desugared).
pub fn parse_shape_expr(text: &str) -> Result<ShapeExpr> {
    let mut p = Parser::new(text)?;
    let shape = p.shape()?;
    if *p.peek() != Tok::Eof {
        return p.error("end of input");
    }
    Ok(desugar(&shape))
}

/// Parses a single path expression.
pub fn parse_path_expr(text: &str) -> Result<PathExpr> {
    let mut p = Parser::new(text)?;
    let path = p.path()?;
    if *p.peek() != Tok::Eof {
        return p.error("end of input");
    }
    Ok(path)
}
