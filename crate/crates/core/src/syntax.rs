//! Text syntax for paths, elements and orthogonal sets.
//!
//! ```text
//! expr    := product ('|' product)*          orthogonal join
//! product := unary ('.' unary)*              semigroup product
//! unary   := primary ('^-1')*
//! primary := '0' | element | set | 'ck' set | '(' expr ')'
//! element := path '*' path '^-1'
//! set     := '{' (element (';' element)*)? '}'
//! path    := '1_' vertex | edge ids written by juxtaposition
//! ```
//!
//! Juxtaposed edge ids are segmented against the graph; a word that admits
//! more than one segmentation into a valid path is rejected as ambiguous.

use thiserror::Error;

use crate::element::GisElement;
use crate::graph::{DirectedGraph, EdgeId, Path, RESERVED_CHARS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at position {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl ParseError {
    fn new(pos: usize, message: impl Into<String>) -> Self {
        ParseError {
            pos,
            message: message.into(),
        }
    }
}

/// Parsed expression tree; evaluated by [`crate::eval`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Element(GisElement),
    Set(Vec<GisElement>),
    Ck(Vec<GisElement>),
    Product(Vec<Expr>),
    Join(Vec<Expr>),
    Inverse(Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Star,
    Inv,
    Open,
    Close,
    Semi,
    Dot,
    LParen,
    RParen,
    Bar,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '*' => Tok::Star,
            '{' => Tok::Open,
            '}' => Tok::Close,
            ';' => Tok::Semi,
            '.' => Tok::Dot,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '|' => Tok::Bar,
            '^' => {
                let rest: String = chars[i..].iter().take(3).map(|&(_, c)| c).collect();
                if rest != "^-1" {
                    return Err(ParseError::new(pos, "expected `^-1`"));
                }
                i += 3;
                out.push((pos, Tok::Inv));
                continue;
            }
            c if RESERVED_CHARS.contains(&c) => {
                return Err(ParseError::new(pos, format!("unexpected `{c}`")));
            }
            _ => {
                let start = i;
                while i < chars.len()
                    && !chars[i].1.is_whitespace()
                    && !RESERVED_CHARS.contains(&chars[i].1)
                {
                    i += 1;
                }
                let word: String = chars[start..i].iter().map(|&(_, c)| c).collect();
                out.push((pos, Tok::Word(word)));
                continue;
            }
        };
        out.push((pos, tok));
        i += 1;
    }
    Ok(out)
}

/// Parses a single path word: `1_v` or juxtaposed edge ids.
pub fn parse_path(graph: &DirectedGraph, word: &str) -> Result<Path, ParseError> {
    parse_path_at(graph, word, 0)
}

fn parse_path_at(graph: &DirectedGraph, word: &str, pos: usize) -> Result<Path, ParseError> {
    if let Some(v) = word.strip_prefix("1_") {
        let v = graph
            .vertex(v)
            .map_err(|_| ParseError::new(pos, format!("unknown vertex `{v}`")))?;
        return Ok(Path::empty(v));
    }
    let mut found: Vec<Path> = Vec::new();
    let mut stack: Vec<EdgeId> = Vec::new();
    segment(graph, word, None, &mut stack, &mut found);
    match found.len() {
        0 => {
            let all_ids = segments_ignoring_matching(graph, word);
            if all_ids {
                Err(ParseError::new(pos, format!("`{word}` is not a path: edges do not match")))
            } else {
                Err(ParseError::new(pos, format!("undefined edge id in `{word}`")))
            }
        }
        1 => Ok(found.pop().expect("one path")),
        _ => Err(ParseError::new(pos, format!("ambiguous path `{word}`"))),
    }
}

fn segment(
    graph: &DirectedGraph,
    rest: &str,
    current: Option<&Path>,
    stack: &mut Vec<EdgeId>,
    found: &mut Vec<Path>,
) {
    if found.len() > 1 {
        return;
    }
    if rest.is_empty() {
        if let Some(p) = current {
            found.push(p.clone());
        }
        return;
    }
    for e in graph.edges() {
        let name = graph.edge_name(e);
        if let Some(tail) = rest.strip_prefix(name) {
            let next = match current {
                None => graph.edge_path(e),
                Some(p) => match graph.extend(p, e) {
                    Ok(q) => q,
                    Err(_) => continue,
                },
            };
            stack.push(e);
            segment(graph, tail, Some(&next), stack, found);
            stack.pop();
        }
    }
}

fn segments_ignoring_matching(graph: &DirectedGraph, rest: &str) -> bool {
    rest.is_empty()
        || graph.edges().any(|e| {
            rest.strip_prefix(graph.edge_name(e))
                .is_some_and(|tail| segments_ignoring_matching(graph, tail))
        })
}

struct Parser<'a> {
    graph: &'a DirectedGraph,
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn new(graph: &'a DirectedGraph, src: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            graph,
            toks: tokenize(src)?,
            at: 0,
            end: src.len(),
        })
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(ParseError::new(self.pos(), format!("expected {what}")))
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.at < self.toks.len() {
            Err(ParseError::new(self.pos(), "unexpected trailing input"))
        } else {
            Ok(())
        }
    }

    fn word(&mut self) -> Result<(usize, String), ParseError> {
        match self.toks.get(self.at) {
            Some((pos, Tok::Word(w))) => {
                let out = (*pos, w.clone());
                self.at += 1;
                Ok(out)
            }
            _ => Err(ParseError::new(self.pos(), "expected a path")),
        }
    }

    fn element(&mut self) -> Result<GisElement, ParseError> {
        let (pos, w) = self.word()?;
        if w == "0" {
            return Ok(GisElement::Zero);
        }
        let x = parse_path_at(self.graph, &w, pos)?;
        self.expect(Tok::Star, "`*`")?;
        let (pos_y, wy) = self.word()?;
        let y = parse_path_at(self.graph, &wy, pos_y)?;
        self.expect(Tok::Inv, "`^-1`")?;
        GisElement::pair(x, y).map_err(|e| ParseError::new(pos, e.to_string()))
    }

    fn set_body(&mut self) -> Result<Vec<GisElement>, ParseError> {
        self.expect(Tok::Open, "`{`")?;
        let mut out = Vec::new();
        if self.eat(&Tok::Close) {
            return Ok(out);
        }
        loop {
            let e = self.element()?;
            if !e.is_zero() {
                out.push(e);
            }
            if self.eat(&Tok::Close) {
                return Ok(out);
            }
            self.expect(Tok::Semi, "`;` or `}`")?;
        }
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(Tok::LParen) => {
                self.at += 1;
                let e = self.join()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Some(Tok::Open) => Ok(Expr::Set(self.set_body()?)),
            Some(Tok::Word(w)) if w == "ck" && self.toks.get(self.at + 1).map(|t| &t.1) == Some(&Tok::Open) => {
                self.at += 1;
                Ok(Expr::Ck(self.set_body()?))
            }
            Some(Tok::Word(_)) => Ok(Expr::Element(self.element()?)),
            _ => Err(ParseError::new(self.pos(), "expected an element, set or `(`")),
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.primary()?;
        while self.eat(&Tok::Inv) {
            e = Expr::Inverse(Box::new(e));
        }
        Ok(e)
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut items = vec![self.unary()?];
        while self.eat(&Tok::Dot) {
            items.push(self.unary()?);
        }
        Ok(if items.len() == 1 {
            items.pop().expect("one item")
        } else {
            Expr::Product(items)
        })
    }

    fn join(&mut self) -> Result<Expr, ParseError> {
        let mut items = vec![self.product()?];
        while self.eat(&Tok::Bar) {
            items.push(self.product()?);
        }
        Ok(if items.len() == 1 {
            items.pop().expect("one item")
        } else {
            Expr::Join(items)
        })
    }
}

pub fn parse_element(graph: &DirectedGraph, src: &str) -> Result<GisElement, ParseError> {
    let mut p = Parser::new(graph, src)?;
    let e = p.element()?;
    p.finish()?;
    Ok(e)
}

/// Parses `{e1; e2; ...}` without checking orthogonality.
pub fn parse_element_list(graph: &DirectedGraph, src: &str) -> Result<Vec<GisElement>, ParseError> {
    let mut p = Parser::new(graph, src)?;
    let list = p.set_body()?;
    p.finish()?;
    Ok(list)
}

/// Parses `ck{...}` without checking orthogonality.
pub fn parse_ck_list(graph: &DirectedGraph, src: &str) -> Result<Vec<GisElement>, ParseError> {
    let mut p = Parser::new(graph, src)?;
    match p.word()? {
        (_, w) if w == "ck" => {}
        (pos, _) => return Err(ParseError::new(pos, "expected `ck{`")),
    }
    let list = p.set_body()?;
    p.finish()?;
    Ok(list)
}

pub fn parse_expr(graph: &DirectedGraph, src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser::new(graph, src)?;
    let e = p.join()?;
    p.finish()?;
    Ok(e)
}
