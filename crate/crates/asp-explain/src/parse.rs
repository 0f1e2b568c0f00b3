//! Concrete syntax: a lexer and recursive-descent parser for programs,
//! answer-set files, and single ground atoms.
//!
//! The grammar mirrors mainstream ASP text so programs transcribe verbatim:
//!
//! ```text
//! program   ::= statement*
//! statement ::= (head | ) (":-" body)? "."
//! head      ::= atom | choice
//! choice    ::= term? "{" atom (";" atom)* "}" term?
//! body      ::= elem ("," elem)*
//! elem      ::= "not"? "-"? atom | aggregate | comparison
//! aggregate ::= "#sum" "{" term ("," term)* ":" atom "}" cmp term
//! ```
//!
//! `%` starts a comment running to the end of the line. Strong negation
//! `-p(t)` is rewritten to a fresh predicate `neg_p(t)`, and one consistency
//! constraint `:- p(X..), neg_p(X..).` is appended per strongly negated
//! predicate. Answer-set files are whitespace-separated ground atoms.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use thiserror::Error;

use crate::ast::{
    Aggregate, ArithOp, Atom, BodyElem, Choice, CmpOp, Comparison, Head, Literal, Program, Rule,
    Term,
};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    fn new(pos: Pos, message: impl Into<String>) -> Self {
        ParseError {
            line: pos.line,
            col: pos.col,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pos {
    line: usize,
    col: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Var(String),
    Int(i64),
    Str(String),
    ColonDash,
    Dot,
    Comma,
    Semi,
    Colon,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Plus,
    Minus,
    Star,
    Cmp(CmpOp),
    HashSum,
}

fn lex(text: &str) -> Result<Vec<(Token, Pos)>, ParseError> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut line = 1;
    let mut col = 1;
    macro_rules! pos {
        () => {
            Pos { line, col }
        };
    }
    while i < chars.len() {
        let c = chars[i];
        let start = pos!();
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
            }
            '%' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            'a'..='z' => {
                let mut s = String::new();
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    s.push(chars[i]);
                    i += 1;
                    col += 1;
                }
                tokens.push((Token::Ident(s), start));
            }
            'A'..='Z' => {
                let mut s = String::new();
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    s.push(chars[i]);
                    i += 1;
                    col += 1;
                }
                tokens.push((Token::Var(s), start));
            }
            '0'..='9' => {
                let mut s = String::new();
                while i < chars.len() && chars[i].is_ascii_digit() {
                    s.push(chars[i]);
                    i += 1;
                    col += 1;
                }
                let n = s
                    .parse::<i64>()
                    .map_err(|_| ParseError::new(start, format!("integer out of range: {s}")))?;
                tokens.push((Token::Int(n), start));
            }
            '"' => {
                i += 1;
                col += 1;
                let mut s = String::new();
                loop {
                    if i >= chars.len() || chars[i] == '\n' {
                        return Err(ParseError::new(start, "unterminated string"));
                    }
                    if chars[i] == '"' {
                        i += 1;
                        col += 1;
                        break;
                    }
                    s.push(chars[i]);
                    i += 1;
                    col += 1;
                }
                tokens.push((Token::Str(s), start));
            }
            '#' => {
                let rest: String = chars[i + 1..]
                    .iter()
                    .take_while(|c| c.is_ascii_alphanumeric())
                    .collect();
                if rest == "sum" {
                    i += 4;
                    col += 4;
                    tokens.push((Token::HashSum, start));
                } else {
                    return Err(ParseError::new(
                        start,
                        format!("unsupported aggregate function: #{rest}"),
                    ));
                }
            }
            ':' => {
                if i + 1 < chars.len() && chars[i + 1] == '-' {
                    i += 2;
                    col += 2;
                    tokens.push((Token::ColonDash, start));
                } else {
                    i += 1;
                    col += 1;
                    tokens.push((Token::Colon, start));
                }
            }
            '!' => {
                if i + 1 < chars.len() && chars[i + 1] == '=' {
                    i += 2;
                    col += 2;
                    tokens.push((Token::Cmp(CmpOp::Ne), start));
                } else {
                    return Err(ParseError::new(start, "expected `!=`"));
                }
            }
            '<' => {
                if i + 1 < chars.len() && chars[i + 1] == '=' {
                    i += 2;
                    col += 2;
                    tokens.push((Token::Cmp(CmpOp::Le), start));
                } else {
                    i += 1;
                    col += 1;
                    tokens.push((Token::Cmp(CmpOp::Lt), start));
                }
            }
            '>' => {
                if i + 1 < chars.len() && chars[i + 1] == '=' {
                    i += 2;
                    col += 2;
                    tokens.push((Token::Cmp(CmpOp::Ge), start));
                } else {
                    i += 1;
                    col += 1;
                    tokens.push((Token::Cmp(CmpOp::Gt), start));
                }
            }
            '=' => {
                i += 1;
                col += 1;
                tokens.push((Token::Cmp(CmpOp::Eq), start));
            }
            '.' => {
                i += 1;
                col += 1;
                tokens.push((Token::Dot, start));
            }
            ',' => {
                i += 1;
                col += 1;
                tokens.push((Token::Comma, start));
            }
            ';' => {
                i += 1;
                col += 1;
                tokens.push((Token::Semi, start));
            }
            '(' => {
                i += 1;
                col += 1;
                tokens.push((Token::LParen, start));
            }
            ')' => {
                i += 1;
                col += 1;
                tokens.push((Token::RParen, start));
            }
            '{' => {
                i += 1;
                col += 1;
                tokens.push((Token::LBrace, start));
            }
            '}' => {
                i += 1;
                col += 1;
                tokens.push((Token::RBrace, start));
            }
            '+' => {
                i += 1;
                col += 1;
                tokens.push((Token::Plus, start));
            }
            '-' => {
                i += 1;
                col += 1;
                tokens.push((Token::Minus, start));
            }
            '*' => {
                i += 1;
                col += 1;
                tokens.push((Token::Star, start));
            }
            other => {
                return Err(ParseError::new(start, format!("unexpected character `{other}`")));
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(Token, Pos)>,
    at: usize,
    end: Pos,
    /// predicate name -> (arity, position of first use)
    arities: BTreeMap<String, (usize, Pos)>,
    /// strongly negated predicates in first-use order: (base name, arity)
    strong_negated: Vec<(String, usize)>,
    check_arities: bool,
}

impl Parser {
    fn new(text: &str, check_arities: bool) -> Result<Self, ParseError> {
        let tokens = lex(text)?;
        let end = tokens
            .last()
            .map(|(_, p)| Pos {
                line: p.line,
                col: p.col + 1,
            })
            .unwrap_or(Pos { line: 1, col: 1 });
        Ok(Parser {
            tokens,
            at: 0,
            end,
            arities: BTreeMap::new(),
            strong_negated: Vec::new(),
            check_arities,
        })
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|(t, _)| t)
    }

    fn peek2(&self) -> Option<&Token> {
        self.tokens.get(self.at + 1).map(|(t, _)| t)
    }

    /// A `-` starts strong negation only when an atom name follows;
    /// otherwise it introduces a negative integer term.
    fn at_strong_negation(&self) -> bool {
        self.peek() == Some(&Token::Minus) && matches!(self.peek2(), Some(Token::Ident(_)))
    }

    fn pos(&self) -> Pos {
        self.tokens.get(self.at).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.at).map(|(t, _)| t.clone());
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, tok: &Token, what: &str) -> Result<(), ParseError> {
        let pos = self.pos();
        match self.next() {
            Some(t) if &t == tok => Ok(()),
            Some(t) => Err(ParseError::new(pos, format!("expected {what}, found {t:?}"))),
            None => Err(ParseError::new(pos, format!("expected {what}, found end of input"))),
        }
    }

    fn eat(&mut self, tok: &Token) -> bool {
        if self.peek() == Some(tok) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn record_atom(&mut self, atom: &Atom, pos: Pos) -> Result<(), ParseError> {
        if !self.check_arities {
            return Ok(());
        }
        let arity = atom.arity();
        match self.arities.get(&atom.predicate) {
            Some((known, _)) if *known != arity => Err(ParseError::new(
                pos,
                format!(
                    "arity clash for predicate `{}`: used with arity {} and {}",
                    atom.predicate, known, arity
                ),
            )),
            Some(_) => Ok(()),
            None => {
                self.arities.insert(atom.predicate.clone(), (arity, pos));
                Ok(())
            }
        }
    }

    fn parse_term(&mut self) -> Result<Term, ParseError> {
        let mut left = self.parse_mul()?;
        loop {
            let op = match self.peek() {
                Some(Token::Plus) => ArithOp::Add,
                Some(Token::Minus) => ArithOp::Sub,
                _ => break,
            };
            self.next();
            let right = self.parse_mul()?;
            left = Term::Arith(op, Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn parse_mul(&mut self) -> Result<Term, ParseError> {
        let mut left = self.parse_primary()?;
        while self.eat(&Token::Star) {
            let right = self.parse_primary()?;
            left = Term::Arith(ArithOp::Mul, Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn parse_primary(&mut self) -> Result<Term, ParseError> {
        let pos = self.pos();
        match self.next() {
            Some(Token::Int(n)) => Ok(Term::Int(n)),
            Some(Token::Minus) => match self.next() {
                Some(Token::Int(n)) => Ok(Term::Int(-n)),
                _ => Err(ParseError::new(pos, "expected integer after `-`")),
            },
            Some(Token::Str(s)) => Ok(Term::Str(s)),
            Some(Token::Var(v)) => Ok(Term::Var(v)),
            Some(Token::Ident(name)) => {
                if self.eat(&Token::LParen) {
                    let mut args = vec![self.parse_term()?];
                    while self.eat(&Token::Comma) {
                        args.push(self.parse_term()?);
                    }
                    self.expect(&Token::RParen, "`)`")?;
                    Ok(Term::Func(name, args))
                } else {
                    Ok(Term::Const(name))
                }
            }
            Some(Token::LParen) => {
                let first = self.parse_term()?;
                if self.eat(&Token::Comma) {
                    let mut items = vec![first, self.parse_term()?];
                    while self.eat(&Token::Comma) {
                        items.push(self.parse_term()?);
                    }
                    self.expect(&Token::RParen, "`)`")?;
                    Ok(Term::Func(String::new(), items))
                } else {
                    self.expect(&Token::RParen, "`)`")?;
                    Ok(first)
                }
            }
            Some(t) => Err(ParseError::new(pos, format!("expected term, found {t:?}"))),
            None => Err(ParseError::new(pos, "expected term, found end of input")),
        }
    }

    /// Parses an atom, with an optional strong-negation prefix already
    /// consumed by the caller.
    fn parse_atom(&mut self, strong_negated: bool) -> Result<Atom, ParseError> {
        let pos = self.pos();
        let name = match self.next() {
            Some(Token::Ident(name)) => name,
            Some(t) => return Err(ParseError::new(pos, format!("expected atom, found {t:?}"))),
            None => return Err(ParseError::new(pos, "expected atom, found end of input")),
        };
        let mut args = Vec::new();
        if self.eat(&Token::LParen) {
            args.push(self.parse_term()?);
            while self.eat(&Token::Comma) {
                args.push(self.parse_term()?);
            }
            self.expect(&Token::RParen, "`)`")?;
        }
        let atom = if strong_negated {
            let renamed = format!("neg_{name}");
            if !self.strong_negated.iter().any(|(n, _)| n == &name) {
                self.strong_negated.push((name.clone(), args.len()));
            }
            Atom::new(renamed, args)
        } else {
            Atom::new(name, args)
        };
        self.record_atom(&atom, pos)?;
        Ok(atom)
    }

    fn term_to_atom(&mut self, term: Term, pos: Pos) -> Result<Atom, ParseError> {
        let atom = match term {
            Term::Const(name) => Atom::new(name, Vec::new()),
            Term::Func(name, args) if !name.is_empty() => Atom::new(name, args),
            other => {
                return Err(ParseError::new(pos, format!("expected atom, found term `{other}`")))
            }
        };
        self.record_atom(&atom, pos)?;
        Ok(atom)
    }

    fn parse_body_elem(&mut self) -> Result<BodyElem, ParseError> {
        let pos = self.pos();
        match self.peek() {
            Some(Token::Ident(id)) if id == "not" => {
                self.next();
                let strong = self.eat(&Token::Minus);
                let atom = self.parse_atom(strong)?;
                Ok(BodyElem::Literal(Literal { atom, negated: true }))
            }
            Some(Token::HashSum) => {
                self.next();
                self.expect(&Token::LBrace, "`{`")?;
                let weight = self.parse_term()?;
                let mut tuple = Vec::new();
                while self.eat(&Token::Comma) {
                    tuple.push(self.parse_term()?);
                }
                self.expect(&Token::Colon, "`:`")?;
                let cond_pos = self.pos();
                let condition = {
                    let term = self.parse_term()?;
                    self.term_to_atom(term, cond_pos)?
                };
                self.expect(&Token::RBrace, "`}`")?;
                let op = match self.next() {
                    Some(Token::Cmp(op)) => op,
                    _ => return Err(ParseError::new(pos, "expected comparison operator after aggregate")),
                };
                let guard = self.parse_term()?;
                Ok(BodyElem::Aggregate(Aggregate {
                    weight,
                    tuple,
                    condition,
                    op,
                    guard,
                }))
            }
            Some(Token::Minus) if self.at_strong_negation() => {
                self.next();
                let atom = self.parse_atom(true)?;
                Ok(BodyElem::Literal(Literal { atom, negated: false }))
            }
            _ => {
                let term = self.parse_term()?;
                if let Some(Token::Cmp(op)) = self.peek() {
                    let op = *op;
                    self.next();
                    let right = self.parse_term()?;
                    Ok(BodyElem::Comparison(Comparison { left: term, op, right }))
                } else {
                    let atom = self.term_to_atom(term, pos)?;
                    Ok(BodyElem::Literal(Literal { atom, negated: false }))
                }
            }
        }
    }

    fn parse_body(&mut self) -> Result<Vec<BodyElem>, ParseError> {
        let mut body = vec![self.parse_body_elem()?];
        while self.eat(&Token::Comma) {
            body.push(self.parse_body_elem()?);
        }
        Ok(body)
    }

    fn parse_choice_atoms(&mut self) -> Result<Vec<Atom>, ParseError> {
        let mut atoms = Vec::new();
        if self.peek() == Some(&Token::RBrace) {
            return Ok(atoms);
        }
        let strong = self.eat(&Token::Minus);
        atoms.push(self.parse_atom(strong)?);
        while self.eat(&Token::Semi) {
            let strong = self.eat(&Token::Minus);
            atoms.push(self.parse_atom(strong)?);
        }
        Ok(atoms)
    }

    /// Parses a head: either an atom or a choice with optional bounds.
    fn parse_head(&mut self) -> Result<Head, ParseError> {
        if self.eat(&Token::LBrace) {
            return self.finish_choice(None);
        }
        if self.at_strong_negation() {
            self.next();
            let atom = self.parse_atom(true)?;
            return Ok(Head::Atom(atom));
        }
        // Could be `atom`, or `term { ... } term`. Try a term and look for `{`.
        let mark = self.at;
        let term = self.parse_term()?;
        if self.eat(&Token::LBrace) {
            self.finish_choice(Some(term))
        } else {
            self.at = mark;
            let atom = self.parse_atom(false)?;
            Ok(Head::Atom(atom))
        }
    }

    fn finish_choice(&mut self, lower: Option<Term>) -> Result<Head, ParseError> {
        let atoms = self.parse_choice_atoms()?;
        self.expect(&Token::RBrace, "`}`")?;
        let upper = match self.peek() {
            Some(Token::Dot) | Some(Token::ColonDash) => None,
            _ => Some(self.parse_term()?),
        };
        Ok(Head::Choice(Choice {
            lower: lower.unwrap_or(Term::Int(0)),
            upper: upper.unwrap_or(Term::Int(atoms.len() as i64)),
            atoms,
        }))
    }

    fn parse_statement(&mut self, source_index: usize) -> Result<Rule, ParseError> {
        if self.eat(&Token::ColonDash) {
            let body = self.parse_body()?;
            self.expect(&Token::Dot, "`.`")?;
            return Ok(Rule {
                head: Head::Choice(Choice::falsum()),
                body,
                source_index,
            });
        }
        let head = self.parse_head()?;
        let body = if self.eat(&Token::ColonDash) {
            self.parse_body()?
        } else {
            Vec::new()
        };
        self.expect(&Token::Dot, "`.`")?;
        Ok(Rule {
            head,
            body,
            source_index,
        })
    }
}

/// Parses a program. Statements are numbered in textual order starting from
/// 1; facts are rules with an empty body. Strong negation is rewritten by
/// predicate renaming, and one consistency constraint is appended per
/// strongly negated predicate.
pub fn parse_program(text: &str) -> Result<Program, ParseError> {
    let mut parser = Parser::new(text, true)?;
    let mut rules = Vec::new();
    while parser.peek().is_some() {
        let rule = parser.parse_statement(rules.len() + 1)?;
        rules.push(rule);
    }
    // One consistency constraint per strongly negated predicate.
    let strong = parser.strong_negated.clone();
    for (name, arity) in strong {
        let vars: Vec<Term> = (1..=arity).map(|i| Term::Var(format!("X{i}"))).collect();
        let pos_atom = Atom::new(name.clone(), vars.clone());
        let neg_atom = Atom::new(format!("neg_{name}"), vars);
        parser.record_atom(&pos_atom, parser.end)?;
        rules.push(Rule {
            head: Head::Choice(Choice::falsum()),
            body: vec![
                BodyElem::Literal(Literal {
                    atom: pos_atom,
                    negated: false,
                }),
                BodyElem::Literal(Literal {
                    atom: neg_atom,
                    negated: false,
                }),
            ],
            source_index: rules.len() + 1,
        });
    }
    Ok(Program { rules })
}

/// Parses an answer-set file: ground atoms separated by whitespace, with `%`
/// comments. Predicates unknown to the program are accepted; they may extend
/// the Herbrand base.
pub fn parse_answer_set(text: &str, _program: &Program) -> Result<BTreeSet<Atom>, ParseError> {
    let mut parser = Parser::new(text, false)?;
    let mut atoms = BTreeSet::new();
    while parser.peek().is_some() {
        let pos = parser.pos();
        let strong = parser.eat(&Token::Minus);
        let atom = parser.parse_atom(strong)?;
        if !atom.is_ground() {
            return Err(ParseError::new(pos, format!("non-ground atom `{atom}` in answer set")));
        }
        atoms.insert(atom);
    }
    Ok(atoms)
}

/// Parses a single ground atom, as used for query atoms and extra base atoms.
pub fn parse_ground_atom(text: &str) -> Result<Atom, ParseError> {
    let mut parser = Parser::new(text, false)?;
    let pos = parser.pos();
    let strong = parser.eat(&Token::Minus);
    let atom = parser.parse_atom(strong)?;
    if parser.peek().is_some() {
        return Err(ParseError::new(parser.pos(), "trailing input after atom"));
    }
    if !atom.is_ground() {
        return Err(ParseError::new(pos, format!("atom `{atom}` is not ground")));
    }
    Ok(atom)
}
