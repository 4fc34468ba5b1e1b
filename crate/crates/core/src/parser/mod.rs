//! Operator-precedence parser for Prolog text.
//!
//! The grammar covers atoms (plain, symbolic and quoted), decimal integers
//! and floats, variables, lists with `|` tails, compound terms in functional
//! and operator notation, and `%` / `/* */` comments. Operators come from an
//! [`OperatorTable`]; `op/3` directives inside a program take effect for the
//! clauses that follow them.

mod lexer;

use std::collections::HashMap;
use std::path::Path;

use lexer::{Lexer, Token, TokenKind};

use crate::error::{Error, Result};
use crate::term::{Clause, OperatorTable, Specifier, Term};

/// Clauses and directives of a program text, in source order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SourceProgram {
    pub clauses: Vec<Clause>,
    /// Goals of `:- Goal.` directives.
    pub directives: Vec<Term>,
}

impl SourceProgram {
    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty() && self.directives.is_empty()
    }
}

/// Parses one term; a trailing period is optional.
pub fn parse_term(text: &str) -> Result<Term> {
    parse_term_with(text, OperatorTable::iso())
}

pub fn parse_term_with(text: &str, ops: &OperatorTable) -> Result<Term> {
    let mut parser = Parser::new(text, ops)?;
    let term = parser.parse(1200)?;
    parser.finish_single()?;
    Ok(term)
}

/// Parses comma-separated terms sharing one variable scope. Commas nested
/// inside parentheses, brackets or quotes do not split.
pub fn parse_terms(text: &str) -> Result<Vec<Term>> {
    parse_terms_with(text, OperatorTable::iso())
}

pub fn parse_terms_with(text: &str, ops: &OperatorTable) -> Result<Vec<Term>> {
    let mut parser = Parser::new(text, ops)?;
    let mut terms = vec![parser.parse(999)?];
    while parser.peek().kind == TokenKind::Comma {
        parser.advance();
        terms.push(parser.parse(999)?);
    }
    parser.finish_single()?;
    Ok(terms)
}

/// Parses a single clause; the trailing period is optional.
pub fn parse_clause(text: &str) -> Result<Clause> {
    parse_clause_with(text, OperatorTable::iso())
}

pub fn parse_clause_with(text: &str, ops: &OperatorTable) -> Result<Clause> {
    let term = parse_term_with(text, ops)?;
    Clause::from_term(&term)
}

/// Parses a list term, failing with `ListExpected` for anything else.
pub fn parse_list(text: &str) -> Result<Term> {
    let term = parse_term(text)?;
    if term.is_list() {
        Ok(term)
    } else {
        Err(Error::ListExpected(format!("{term} is not a list")))
    }
}

/// Parses a structure, failing with `StructureExpected` for anything else.
pub fn parse_structure(text: &str) -> Result<Term> {
    let term = parse_term(text)?;
    if term.is_structure() {
        Ok(term)
    } else {
        Err(Error::StructureExpected(format!("{term} is not a structure")))
    }
}

/// Parses a whole program with the standard operator table.
pub fn parse_program(text: &str) -> Result<SourceProgram> {
    let mut ops = OperatorTable::default();
    parse_program_with(text, &mut ops)
}

/// Parses a program file.
pub fn parse_program_file(path: impl AsRef<Path>) -> Result<SourceProgram> {
    let text = read_source(path.as_ref())?;
    parse_program(&text)
}

pub(crate) fn read_source(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::prolog(format!("cannot read {}: {e}", path.display())))
}

/// Parses a program, applying `op/3` directives to `ops` as they are met.
pub fn parse_program_with(text: &str, ops: &mut OperatorTable) -> Result<SourceProgram> {
    let tokens = Lexer::new(text).tokenize()?;
    let mut program = SourceProgram::default();
    let mut start = 0;
    while tokens[start].kind != TokenKind::Eof {
        let mut parser = Parser::from_tokens(&tokens[start..], ops);
        let term = parser.parse(1200)?;
        let next = parser.peek().clone();
        if next.kind != TokenKind::End {
            return Err(Error::syntax(
                "operator expected or missing period",
                next.line,
                next.column,
            ));
        }
        start += parser.pos + 1;
        let clause = Clause::from_term(&term)
            .map_err(|e| e.context(format!("line {}", next.line)))?;
        if let Some(goal) = clause.directive_goal() {
            apply_op_directive(goal, ops)?;
            program.directives.push(goal.clone());
        } else {
            program.clauses.push(clause);
        }
    }
    Ok(program)
}

/// Executes `op(P, S, Name)` or `op(P, S, [Names])` directives against `ops`;
/// other goals are ignored. Returns whether the goal was an `op/3` call.
pub(crate) fn apply_op_directive(goal: &Term, ops: &mut OperatorTable) -> Result<bool> {
    if !goal.has_indicator("op", 3) {
        return Ok(false);
    }
    let args = goal.arguments()?;
    let priority = match &args[0] {
        Term::Integer(p) if (0..=1200).contains(p) => *p as u16,
        other => return Err(Error::prolog(format!("bad operator priority {other}"))),
    };
    let spec: Specifier = match args[1].atom_name() {
        Some(name) => name.parse()?,
        None => return Err(Error::prolog(format!("bad operator specifier {}", args[1]))),
    };
    let names = if args[2].is_list() {
        args[2].list_items()?
    } else {
        vec![args[2].clone()]
    };
    for name in names {
        match name.atom_name() {
            Some(n) => ops.define(priority, spec, n)?,
            None => return Err(Error::prolog(format!("bad operator name {name}"))),
        }
    }
    Ok(true)
}

struct Parser<'t> {
    tokens: std::borrow::Cow<'t, [Token]>,
    pos: usize,
    ops: &'t OperatorTable,
    vars: HashMap<String, Term>,
    next_position: usize,
}

impl<'t> Parser<'t> {
    fn new(text: &str, ops: &'t OperatorTable) -> Result<Self> {
        let tokens = Lexer::new(text).tokenize()?;
        Ok(Parser {
            tokens: std::borrow::Cow::Owned(tokens),
            pos: 0,
            ops,
            vars: HashMap::new(),
            next_position: 0,
        })
    }

    fn from_tokens(tokens: &'t [Token], ops: &'t OperatorTable) -> Self {
        Parser {
            tokens: std::borrow::Cow::Borrowed(tokens),
            pos: 0,
            ops,
            vars: HashMap::new(),
            next_position: 0,
        }
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    fn peek_at(&self, offset: usize) -> &Token {
        &self.tokens[(self.pos + offset).min(self.tokens.len() - 1)]
    }

    fn advance(&mut self) -> Token {
        let tok = self.peek().clone();
        if self.pos < self.tokens.len() - 1 {
            self.pos += 1;
        }
        tok
    }

    fn error_at(tok: &Token, message: impl Into<String>) -> Error {
        Error::syntax(message, tok.line, tok.column)
    }

    fn expect(&mut self, kind: TokenKind, what: &str) -> Result<()> {
        let tok = self.advance();
        if tok.kind == kind {
            Ok(())
        } else {
            Err(Self::error_at(&tok, format!("expected {what}, found {}", describe(&tok.kind))))
        }
    }

    /// Accepts an optional final period followed by end of input.
    fn finish_single(&mut self) -> Result<()> {
        if self.peek().kind == TokenKind::End {
            self.advance();
        }
        let tok = self.peek();
        if tok.kind != TokenKind::Eof {
            return Err(Self::error_at(
                tok,
                format!("unexpected {} after term", describe(&tok.kind)),
            ));
        }
        Ok(())
    }

    fn variable(&mut self, name: &str) -> Term {
        if name == "_" {
            let t = Term::anonymous(self.next_position);
            self.next_position += 1;
            return t;
        }
        if let Some(t) = self.vars.get(name) {
            return t.clone();
        }
        let t = Term::variable(name, self.next_position).expect("lexer yields valid names");
        self.next_position += 1;
        self.vars.insert(name.to_string(), t.clone());
        t
    }

    fn is_term_end(kind: &TokenKind) -> bool {
        matches!(
            kind,
            TokenKind::Close
                | TokenKind::CloseList
                | TokenKind::CloseCurly
                | TokenKind::Comma
                | TokenKind::Bar
                | TokenKind::End
                | TokenKind::Eof
        )
    }

    fn infix_name<'a>(&self, tok: &'a Token) -> Option<&'a str> {
        match &tok.kind {
            TokenKind::Name {
                text,
                quoted: false,
            } => Some(text),
            _ => None,
        }
    }

    /// Parses a term whose priority is at most `max`.
    fn parse(&mut self, max: u16) -> Result<Term> {
        let (mut left, mut left_priority) = self.primary(max)?;
        loop {
            let tok = self.peek().clone();
            if tok.kind == TokenKind::Comma {
                if max >= 1000 && left_priority <= 999 {
                    self.advance();
                    let right = self.parse(1000)?;
                    left = Term::structure(",", [left, right]);
                    left_priority = 1000;
                    continue;
                }
                break;
            }
            let Some(name) = self.infix_name(&tok) else {
                break;
            };
            if let Some(op) = self.ops.infix(name) {
                let (lmax, rmax) = op.specifier().argument_priorities(op.priority());
                if op.priority() <= max && left_priority <= lmax {
                    let name = name.to_string();
                    let priority = op.priority();
                    self.advance();
                    let right = self.parse(rmax)?;
                    left = Term::structure(&name, [left, right]);
                    left_priority = priority;
                    continue;
                }
            }
            if let Some(op) = self.ops.postfix(name) {
                let (lmax, _) = op.specifier().argument_priorities(op.priority());
                if op.priority() <= max && left_priority <= lmax {
                    let name = name.to_string();
                    let priority = op.priority();
                    self.advance();
                    left = Term::structure(&name, [left]);
                    left_priority = priority;
                    continue;
                }
            }
            break;
        }
        Ok(left)
    }

    fn primary(&mut self, max: u16) -> Result<(Term, u16)> {
        let tok = self.advance();
        match tok.kind {
            TokenKind::Int(ref digits) => Ok((integer(digits, false, &tok)?, 0)),
            TokenKind::Float(v) => Ok((Term::Double(v), 0)),
            TokenKind::Var(ref name) => Ok((self.variable(name), 0)),
            TokenKind::Open => {
                let inner = self.parse(1200)?;
                self.expect(TokenKind::Close, "`)`")?;
                Ok((inner, 0))
            }
            TokenKind::OpenList => {
                if self.peek().kind == TokenKind::CloseList {
                    self.advance();
                    return Ok((Term::EmptyList, 0));
                }
                let mut items = vec![self.parse(999)?];
                while self.peek().kind == TokenKind::Comma {
                    self.advance();
                    items.push(self.parse(999)?);
                }
                let tail = if self.peek().kind == TokenKind::Bar {
                    self.advance();
                    Some(self.parse(999)?)
                } else {
                    None
                };
                self.expect(TokenKind::CloseList, "`]`")?;
                Ok((Term::list(items, tail), 0))
            }
            TokenKind::OpenCurly => Err(Self::error_at(&tok, "curly terms are not supported")),
            TokenKind::Name { ref text, quoted } => self.name(text, quoted, &tok, max),
            ref other => Err(Self::error_at(
                &tok,
                format!("unexpected {}", describe(other)),
            )),
        }
    }

    fn name(&mut self, text: &str, quoted: bool, tok: &Token, max: u16) -> Result<(Term, u16)> {
        if tok.functional {
            self.advance();
            let mut args = vec![self.parse(999)?];
            while self.peek().kind == TokenKind::Comma {
                self.advance();
                args.push(self.parse(999)?);
            }
            self.expect(TokenKind::Close, "`)` or `,`")?;
            return Ok((Term::structure(text, args), 0));
        }
        if quoted {
            return Ok((Term::atom_exact(text), 0));
        }
        // negative numeric literal
        let next = self.peek().clone();
        if text == "-" && !next.layout_before {
            match next.kind {
                TokenKind::Int(ref digits) => {
                    self.advance();
                    return Ok((integer(digits, true, &next)?, 0));
                }
                TokenKind::Float(v) => {
                    self.advance();
                    return Ok((Term::Double(-v), 0));
                }
                _ => {}
            }
        }
        if let Some(op) = self.ops.prefix(text).cloned() {
            if !self.prefix_is_atom(&next) {
                let (_, amax) = op.specifier().argument_priorities(op.priority());
                if op.priority() > max {
                    return Err(Self::error_at(
                        tok,
                        format!("operator `{text}` exceeds priority {max}"),
                    ));
                }
                let arg = self.parse(amax)?;
                return Ok((Term::structure(text, [arg]), op.priority()));
            }
        }
        Ok((Term::atom_exact(text), 0))
    }

    /// A prefix operator stands for itself when nothing can follow as its
    /// operand.
    fn prefix_is_atom(&self, next: &Token) -> bool {
        if Self::is_term_end(&next.kind) {
            return true;
        }
        match self.infix_name(next) {
            Some(name) if !next.functional => {
                let infix_like = self.ops.infix(name).is_some() || self.ops.postfix(name).is_some();
                let operand_like = self.ops.prefix(name).is_some()
                    || (name == "-" && matches!(self.peek_at(1).kind, TokenKind::Int(_) | TokenKind::Float(_)));
                infix_like && !operand_like
            }
            _ => false,
        }
    }
}

fn integer(digits: &str, negative: bool, tok: &Token) -> Result<Term> {
    let text = if negative {
        format!("-{digits}")
    } else {
        digits.to_string()
    };
    let value: i64 = text
        .parse()
        .map_err(|_| Error::syntax(format!("integer {text} out of range"), tok.line, tok.column))?;
    Ok(match i32::try_from(value) {
        Ok(small) => Term::Integer(small),
        Err(_) => Term::Long(value),
    })
}

fn describe(kind: &TokenKind) -> String {
    match kind {
        TokenKind::Name { text, .. } => format!("`{text}`"),
        TokenKind::Var(v) => format!("variable `{v}`"),
        TokenKind::Int(d) => format!("number {d}"),
        TokenKind::Float(v) => format!("number {v}"),
        TokenKind::Open => "`(`".into(),
        TokenKind::Close => "`)`".into(),
        TokenKind::OpenList => "`[`".into(),
        TokenKind::CloseList => "`]`".into(),
        TokenKind::OpenCurly => "`{`".into(),
        TokenKind::CloseCurly => "`}`".into(),
        TokenKind::Comma => "`,`".into(),
        TokenKind::Bar => "`|`".into(),
        TokenKind::End => "end of clause".into(),
        TokenKind::Eof => "end of input".into(),
    }
}
