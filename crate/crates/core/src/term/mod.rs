//! Immutable term model.
//!
//! [`Term`] is a cheap-to-clone sum type: compound payloads sit behind
//! [`Arc`] so terms can be shared freely across threads. The constructors on
//! `Term` normalise reserved names: `Term::atom("true")` yields
//! [`Term::True`], `Term::atom("[]")` yields [`Term::EmptyList`], and so on,
//! so each constant has exactly one representation.

mod clause;
mod indicator;
mod operator;
mod order;
mod unify;
mod write;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::Arc;

pub use clause::Clause;
pub use indicator::Indicator;
pub(crate) use clause::{flatten_conjunction, normalize_variables};
pub(crate) use indicator::IndicatorRef;
pub use operator::{Operator, OperatorTable, Specifier};
pub use order::compare_terms;
pub use unify::Substitution;
pub use write::{format_atom, format_term, is_simple_atom};
pub(crate) use write::{format_op_directive, is_alnum, is_symbol_char};

use crate::convert::HostValue;
use crate::error::{Error, Result};

/// Functor reported by list cells.
pub const LIST_FUNCTOR: &str = ".";
/// Functor reported by reference terms.
pub const REFERENCE_FUNCTOR: &str = "@";

#[derive(Debug, Clone)]
pub enum Term {
    Atom(Arc<str>),
    Integer(i32),
    Long(i64),
    Float(f32),
    Double(f64),
    Variable(Variable),
    List(Arc<Cons>),
    Structure(Arc<Structure>),
    Reference(Reference),
    Nil,
    True,
    Fail,
    Cut,
    EmptyList,
}

/// Variant tag returned by [`Term::term_type`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TermType {
    Atom,
    Integer,
    Long,
    Float,
    Double,
    Variable,
    List,
    Structure,
    Reference,
    Nil,
    True,
    Fail,
    Cut,
    EmptyList,
}

/// Width requested from [`Term::new_number`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NumberKind {
    Integer,
    Long,
    Float,
    Double,
}

/// Untyped numeric input for [`Term::new_number`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Numeric {
    Int(i64),
    Real(f64),
}

impl From<i32> for Numeric {
    fn from(v: i32) -> Self {
        Numeric::Int(v as i64)
    }
}

impl From<i64> for Numeric {
    fn from(v: i64) -> Self {
        Numeric::Int(v)
    }
}

impl From<f32> for Numeric {
    fn from(v: f32) -> Self {
        Numeric::Real(v as f64)
    }
}

impl From<f64> for Numeric {
    fn from(v: f64) -> Self {
        Numeric::Real(v)
    }
}

/// A logic variable. Identity is the pair (name, position): two variables
/// are the same variable iff both fields agree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Variable {
    name: Option<Arc<str>>,
    position: usize,
}

impl Variable {
    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn position(&self) -> usize {
        self.position
    }

    pub fn is_anonymous(&self) -> bool {
        self.name.is_none()
    }

    pub(crate) fn new_unchecked(name: Option<Arc<str>>, position: usize) -> Self {
        Variable { name, position }
    }
}

#[derive(Debug, Clone)]
pub struct Cons {
    pub head: Term,
    pub tail: Term,
}

impl Drop for Cons {
    // Unlink the spine iteratively; recursive drops overflow on long lists.
    fn drop(&mut self) {
        let mut tail = std::mem::replace(&mut self.tail, Term::EmptyList);
        while let Term::List(cell) = tail {
            match Arc::try_unwrap(cell) {
                Ok(mut cons) => tail = std::mem::replace(&mut cons.tail, Term::EmptyList),
                Err(_) => break,
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct Structure {
    pub functor: Arc<str>,
    pub args: Vec<Term>,
}

static NEXT_REFERENCE: AtomicU64 = AtomicU64::new(1);

/// Handle to a host value carried through logic code as `@(J#...)`.
#[derive(Debug, Clone)]
pub struct Reference {
    id: u64,
    value: Arc<HostValue>,
}

impl Reference {
    pub fn id(&self) -> u64 {
        self.id
    }

    /// Identification atom text, e.g. `J#00000000000000425`.
    pub fn label(&self) -> String {
        format!("J#{:017}", self.id)
    }

    pub fn value(&self) -> &HostValue {
        &self.value
    }
}

impl PartialEq for Reference {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}

impl Eq for Reference {}

impl Term {
    // ---------------------------------------------------------------
    // construction

    /// Atom named `functor`. A single layer of surrounding quotes is
    /// stripped; reserved names map onto their constants.
    pub fn atom(functor: &str) -> Term {
        Term::atom_exact(crate::convert::remove_quotes(functor))
    }

    /// Atom whose name is exactly `name` (no quote stripping).
    pub fn atom_exact(name: &str) -> Term {
        match name {
            "nil" => Term::Nil,
            "true" => Term::True,
            "fail" => Term::Fail,
            "!" => Term::Cut,
            "[]" => Term::EmptyList,
            _ => Term::Atom(Arc::from(name)),
        }
    }

    pub fn integer(value: i32) -> Term {
        Term::Integer(value)
    }

    pub fn long(value: i64) -> Term {
        Term::Long(value)
    }

    pub fn float(value: f32) -> Term {
        Term::Float(value)
    }

    pub fn double(value: f64) -> Term {
        Term::Double(value)
    }

    /// Numeric term of the requested width; `None` yields zero.
    pub fn new_number(kind: NumberKind, value: Option<Numeric>) -> Result<Term> {
        let value = value.unwrap_or(Numeric::Int(0));
        let out_of_range =
            |v: &dyn fmt::Display| Error::prolog(format!("{v} is not representable as {kind:?}"));
        match (kind, value) {
            (NumberKind::Integer, Numeric::Int(v)) => i32::try_from(v)
                .map(Term::Integer)
                .map_err(|_| out_of_range(&v)),
            (NumberKind::Long, Numeric::Int(v)) => Ok(Term::Long(v)),
            (NumberKind::Integer | NumberKind::Long, Numeric::Real(v)) => {
                if v.fract() != 0.0 || !v.is_finite() {
                    return Err(out_of_range(&v));
                }
                let limit = if kind == NumberKind::Integer { 2f64.powi(31) } else { 2f64.powi(63) };
                if v < -limit || v >= limit {
                    return Err(out_of_range(&v));
                }
                Ok(if kind == NumberKind::Integer {
                    Term::Integer(v as i32)
                } else {
                    Term::Long(v as i64)
                })
            }
            (NumberKind::Float, value) => {
                let v = match value {
                    Numeric::Int(i) => i as f64,
                    Numeric::Real(r) => r,
                };
                if v.is_finite() && (v as f32).is_infinite() {
                    return Err(out_of_range(&v));
                }
                Ok(Term::Float(v as f32))
            }
            (NumberKind::Double, Numeric::Int(i)) => Ok(Term::Double(i as f64)),
            (NumberKind::Double, Numeric::Real(r)) => Ok(Term::Double(r)),
        }
    }

    /// Named variable; `name` must look like a variable (`[A-Z_][A-Za-z0-9_]*`).
    /// The name `_` alone yields an anonymous variable.
    pub fn variable(name: &str, position: usize) -> Result<Term> {
        let mut chars = name.chars();
        let valid = match chars.next() {
            Some(c) if c.is_ascii_uppercase() || c == '_' => {
                chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
            }
            _ => false,
        };
        if !valid {
            return Err(Error::syntax(format!("`{name}` is not a variable name"), 1, 1));
        }
        if name == "_" {
            return Ok(Term::anonymous(position));
        }
        Ok(Term::Variable(Variable {
            name: Some(Arc::from(name)),
            position,
        }))
    }

    pub fn anonymous(position: usize) -> Term {
        Term::Variable(Variable {
            name: None,
            position,
        })
    }

    /// Right-nested list of `items` closed by `tail` (default `[]`).
    pub fn list(items: impl IntoIterator<Item = Term>, tail: Option<Term>) -> Term {
        let items: Vec<Term> = items.into_iter().collect();
        let mut acc = tail.unwrap_or(Term::EmptyList);
        for head in items.into_iter().rev() {
            acc = Term::cons(head, acc);
        }
        acc
    }

    pub fn cons(head: Term, tail: Term) -> Term {
        Term::List(Arc::new(Cons { head, tail }))
    }

    /// Compound term. With no arguments the result is the atom `functor`.
    pub fn structure(functor: &str, args: impl IntoIterator<Item = Term>) -> Term {
        let args: Vec<Term> = args.into_iter().collect();
        if args.is_empty() {
            return Term::atom_exact(functor);
        }
        if functor == LIST_FUNCTOR && args.len() == 2 {
            let mut it = args.into_iter();
            let head = it.next().unwrap();
            let tail = it.next().unwrap();
            return Term::cons(head, tail);
        }
        Term::Structure(Arc::new(Structure {
            functor: Arc::from(functor),
            args,
        }))
    }

    /// Infix expression `left op right`; `op` must be an infix operator of
    /// the standard table.
    pub fn expression(left: Term, op: &str, right: Term) -> Result<Term> {
        OperatorTable::iso().expression(left, op, right)
    }

    pub fn reference(value: HostValue) -> Term {
        let id = NEXT_REFERENCE.fetch_add(1, AtomicOrdering::Relaxed);
        Term::Reference(Reference {
            id,
            value: Arc::new(value),
        })
    }

    /// `:- include('file')` directive term.
    pub fn include_directive(file: &str) -> Term {
        Term::structure(":-", [Term::structure("include", [Term::atom_exact(file)])])
    }

    // ---------------------------------------------------------------
    // inspection

    pub fn term_type(&self) -> TermType {
        match self {
            Term::Atom(_) => TermType::Atom,
            Term::Integer(_) => TermType::Integer,
            Term::Long(_) => TermType::Long,
            Term::Float(_) => TermType::Float,
            Term::Double(_) => TermType::Double,
            Term::Variable(_) => TermType::Variable,
            Term::List(_) => TermType::List,
            Term::Structure(_) => TermType::Structure,
            Term::Reference(_) => TermType::Reference,
            Term::Nil => TermType::Nil,
            Term::True => TermType::True,
            Term::Fail => TermType::Fail,
            Term::Cut => TermType::Cut,
            Term::EmptyList => TermType::EmptyList,
        }
    }

    /// Name of an atom-class term, `None` otherwise.
    pub(crate) fn atom_name(&self) -> Option<&str> {
        match self {
            Term::Atom(name) => Some(name),
            Term::Nil => Some("nil"),
            Term::True => Some("true"),
            Term::Fail => Some("fail"),
            Term::Cut => Some("!"),
            Term::EmptyList => Some("[]"),
            _ => None,
        }
    }

    pub fn functor(&self) -> Result<&str> {
        match self {
            Term::List(_) => Ok(LIST_FUNCTOR),
            Term::Structure(s) => Ok(&s.functor),
            Term::Reference(_) => Ok(REFERENCE_FUNCTOR),
            Term::Variable(_) => Err(Error::Functor(format!("variable {self} has no functor"))),
            Term::Integer(_) | Term::Long(_) | Term::Float(_) | Term::Double(_) => {
                Err(Error::Functor(format!("number {self} has no functor")))
            }
            _ => Ok(self.atom_name().expect("atom-class term")),
        }
    }

    pub fn arity(&self) -> Result<usize> {
        match self {
            Term::Variable(_) => Err(Error::Arity(format!("variable {self} has no arity"))),
            Term::List(_) => Ok(2),
            Term::Structure(s) => Ok(s.args.len()),
            Term::Reference(_) => Ok(1),
            _ => Ok(0),
        }
    }

    pub fn indicator(&self) -> Result<Indicator> {
        match self {
            Term::Variable(_)
            | Term::Integer(_)
            | Term::Long(_)
            | Term::Float(_)
            | Term::Double(_) => Err(Error::Indicator(format!("{self} has no indicator"))),
            _ => Ok(Indicator::new(self.functor()?, self.arity()?)),
        }
    }

    pub fn has_indicator(&self, functor: &str, arity: usize) -> bool {
        matches!(self.indicator(), Ok(ind) if ind.functor() == functor && ind.arity() == arity)
    }

    pub fn arguments(&self) -> Result<Vec<Term>> {
        match self {
            Term::List(cell) => Ok(vec![cell.head.clone(), cell.tail.clone()]),
            Term::Structure(s) => Ok(s.args.clone()),
            Term::Reference(r) => Ok(vec![Term::Atom(Arc::from(r.label()))]),
            _ => Err(Error::CompoundExpected(format!("{self} has no arguments"))),
        }
    }

    /// Argument at zero-based `index`.
    pub fn argument(&self, index: usize) -> Result<Term> {
        let args = self.arguments()?;
        let arity = args.len();
        args.into_iter().nth(index).ok_or_else(|| {
            Error::prolog(format!("argument index {index} out of range for arity {arity}"))
        })
    }

    /// Referenced host value, for reference terms.
    pub fn object(&self) -> Option<&HostValue> {
        match self {
            Term::Reference(r) => Some(r.value()),
            _ => None,
        }
    }

    /// List elements, or `ListExpected` when the term is not a proper list.
    pub fn list_items(&self) -> Result<Vec<Term>> {
        let mut items = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                Term::EmptyList => return Ok(items),
                Term::List(cell) => {
                    items.push(cell.head.clone());
                    cur = &cell.tail;
                }
                _ => return Err(Error::ListExpected(format!("{self} is not a proper list"))),
            }
        }
    }

    /// Iterates the elements of a list; stops at the first non-cons tail.
    pub fn iter(&self) -> ListIter<'_> {
        ListIter { cur: self }
    }

    /// Head and tail of a list cell.
    pub fn head_tail(&self) -> Result<(&Term, &Term)> {
        match self {
            Term::List(cell) => Ok((&cell.head, &cell.tail)),
            _ => Err(Error::ListExpected(format!("{self} is not a list cell"))),
        }
    }

    pub fn is_atom(&self) -> bool {
        self.atom_name().is_some()
    }

    pub fn is_number(&self) -> bool {
        matches!(
            self,
            Term::Integer(_) | Term::Long(_) | Term::Float(_) | Term::Double(_)
        )
    }

    pub fn is_atomic(&self) -> bool {
        self.is_atom() || self.is_number()
    }

    pub fn is_compound(&self) -> bool {
        matches!(self, Term::List(_) | Term::Structure(_) | Term::Reference(_))
    }

    pub fn is_integer(&self) -> bool {
        matches!(self, Term::Integer(_))
    }

    pub fn is_long(&self) -> bool {
        matches!(self, Term::Long(_))
    }

    pub fn is_float(&self) -> bool {
        matches!(self, Term::Float(_))
    }

    pub fn is_double(&self) -> bool {
        matches!(self, Term::Double(_))
    }

    pub fn is_variable(&self) -> bool {
        matches!(self, Term::Variable(_))
    }

    pub fn is_list(&self) -> bool {
        matches!(self, Term::List(_) | Term::EmptyList)
    }

    pub fn is_empty_list(&self) -> bool {
        matches!(self, Term::EmptyList)
    }

    pub fn is_structure(&self) -> bool {
        matches!(self, Term::Structure(_))
    }

    pub fn is_nil(&self) -> bool {
        matches!(self, Term::Nil)
    }

    pub fn is_true(&self) -> bool {
        matches!(self, Term::True)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Term::Fail)
    }

    pub fn is_cut(&self) -> bool {
        matches!(self, Term::Cut)
    }

    /// Compound whose functor is an operator of the standard table.
    pub fn is_evaluable(&self) -> bool {
        match self {
            Term::Structure(s) => {
                let ops = OperatorTable::iso();
                match s.args.len() {
                    1 => ops.prefix(&s.functor).is_some() || ops.postfix(&s.functor).is_some(),
                    2 => ops.infix(&s.functor).is_some(),
                    _ => false,
                }
            }
            _ => false,
        }
    }

    pub fn is_reference(&self) -> bool {
        self.is_object_type() || self.is_null_type()
    }

    /// Reference to any non-null host value.
    pub fn is_object_type(&self) -> bool {
        matches!(self.object(), Some(v) if !matches!(v, HostValue::Null))
    }

    pub fn is_null_type(&self) -> bool {
        matches!(self.object(), Some(HostValue::Null))
    }

    pub fn is_true_type(&self) -> bool {
        matches!(self.object(), Some(HostValue::Bool(true)))
    }

    pub fn is_false_type(&self) -> bool {
        matches!(self.object(), Some(HostValue::Bool(false)))
    }

    pub fn is_void_type(&self) -> bool {
        matches!(self.object(), Some(HostValue::Void))
    }

    /// True when no variable occurs in the term.
    pub fn is_ground(&self) -> bool {
        match self {
            Term::Variable(_) => false,
            Term::List(_) => {
                let mut cur = self;
                while let Term::List(c) = cur {
                    if !c.head.is_ground() {
                        return false;
                    }
                    cur = &c.tail;
                }
                cur.is_ground()
            }
            Term::Structure(s) => s.args.iter().all(Term::is_ground),
            _ => true,
        }
    }

    /// Variables in first-occurrence order (depth-first, left to right).
    pub fn variables(&self) -> Vec<Variable> {
        let mut out = Vec::new();
        self.collect_variables(&mut out);
        out
    }

    pub(crate) fn collect_variables(&self, out: &mut Vec<Variable>) {
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            match t {
                Term::Variable(v) => {
                    if !out.contains(v) {
                        out.push(v.clone());
                    }
                }
                Term::List(cell) => {
                    stack.push(&cell.tail);
                    stack.push(&cell.head);
                }
                Term::Structure(s) => stack.extend(s.args.iter().rev()),
                _ => {}
            }
        }
    }

    /// Checks whether `self` and `other` unify (no occurs check). Neither
    /// term is modified.
    pub fn unify(&self, other: &Term) -> bool {
        unify::unify(self, other, false).is_some()
    }

    pub fn unify_with_occurs_check(&self, other: &Term) -> bool {
        unify::unify(self, other, true).is_some()
    }

    /// Most general unifier in triangular form, when one exists.
    pub fn unifier(&self, other: &Term) -> Option<Substitution> {
        unify::unify(self, other, false)
    }

    /// Replaces variables according to `map`; unmapped variables stay.
    pub fn substitute(&self, map: &dyn Fn(&Variable) -> Option<Term>) -> Term {
        match self {
            Term::Variable(v) => map(v).unwrap_or_else(|| self.clone()),
            Term::List(_) => {
                let mut items = Vec::new();
                let mut cur = self;
                while let Term::List(c) = cur {
                    items.push(c.head.substitute(map));
                    cur = &c.tail;
                }
                Term::list(items, Some(cur.substitute(map)))
            }
            Term::Structure(s) => Term::Structure(Arc::new(Structure {
                functor: s.functor.clone(),
                args: s.args.iter().map(|a| a.substitute(map)).collect(),
            })),
            _ => self.clone(),
        }
    }

    /// Canonical text using `ops` for operator notation.
    pub fn to_string_with(&self, ops: &OperatorTable) -> String {
        format_term(self, ops)
    }
}

pub struct ListIter<'a> {
    cur: &'a Term,
}

impl<'a> Iterator for ListIter<'a> {
    type Item = &'a Term;

    fn next(&mut self) -> Option<&'a Term> {
        match self.cur {
            Term::List(cell) => {
                self.cur = &cell.tail;
                Some(&cell.head)
            }
            _ => None,
        }
    }
}

impl<'a> IntoIterator for &'a Term {
    type Item = &'a Term;
    type IntoIter = ListIter<'a>;

    fn into_iter(self) -> ListIter<'a> {
        self.iter()
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Term) -> bool {
        match (self, other) {
            (Term::Atom(a), Term::Atom(b)) => a == b,
            (Term::Integer(a), Term::Integer(b)) => a == b,
            (Term::Long(a), Term::Long(b)) => a == b,
            (Term::Float(a), Term::Float(b)) => a.to_bits() == b.to_bits(),
            (Term::Double(a), Term::Double(b)) => a.to_bits() == b.to_bits(),
            (Term::Variable(a), Term::Variable(b)) => a == b,
            (Term::List(_), Term::List(_)) => {
                let (mut x, mut y) = (self, other);
                loop {
                    match (x, y) {
                        (Term::List(a), Term::List(b)) => {
                            if Arc::ptr_eq(a, b) {
                                return true;
                            }
                            if a.head != b.head {
                                return false;
                            }
                            x = &a.tail;
                            y = &b.tail;
                        }
                        _ => return x == y,
                    }
                }
            }
            (Term::Structure(a), Term::Structure(b)) => {
                Arc::ptr_eq(a, b) || (a.functor == b.functor && a.args == b.args)
            }
            (Term::Reference(a), Term::Reference(b)) => a == b,
            (Term::Nil, Term::Nil)
            | (Term::True, Term::True)
            | (Term::Fail, Term::Fail)
            | (Term::Cut, Term::Cut)
            | (Term::EmptyList, Term::EmptyList) => true,
            _ => false,
        }
    }
}

impl Eq for Term {}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        std::mem::discriminant(self).hash(state);
        match self {
            Term::Atom(a) => a.hash(state),
            Term::Integer(v) => v.hash(state),
            Term::Long(v) => v.hash(state),
            Term::Float(v) => v.to_bits().hash(state),
            Term::Double(v) => v.to_bits().hash(state),
            Term::Variable(v) => v.hash(state),
            Term::List(_) => {
                let mut cur = self;
                while let Term::List(cell) = cur {
                    cell.head.hash(state);
                    cur = &cell.tail;
                }
                cur.hash(state);
            }
            Term::Structure(s) => {
                s.functor.hash(state);
                s.args.hash(state);
            }
            Term::Reference(r) => r.id.hash(state),
            _ => {}
        }
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Term {
    /// Standard order of terms.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        compare_terms(self, other)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_term(self, OperatorTable::iso()))
    }
}

impl From<&str> for Term {
    fn from(s: &str) -> Term {
        Term::atom(s)
    }
}

impl From<i32> for Term {
    fn from(v: i32) -> Term {
        Term::Integer(v)
    }
}

impl From<i64> for Term {
    fn from(v: i64) -> Term {
        Term::Long(v)
    }
}

impl From<f64> for Term {
    fn from(v: f64) -> Term {
        Term::Double(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::ErrorKind;

    fn atom(s: &str) -> Term {
        Term::atom(s)
    }

    #[test]
    fn simple_and_complex_atoms() {
        let pam = atom("pam");
        assert_eq!(pam.to_string(), "pam");
        assert_eq!(pam.arity().unwrap(), 0);
        let hw = atom("hello world");
        assert_eq!(hw.to_string(), "'hello world'");
        assert_eq!(atom("a").indicator().unwrap().to_string(), "a/0");
        // quotes supplied by the caller are not part of the name
        assert_eq!(atom("'pam'"), pam);
    }

    #[test]
    fn reserved_names_are_constants() {
        assert_eq!(atom("true"), Term::True);
        assert_eq!(atom("fail"), Term::Fail);
        assert_eq!(atom("nil"), Term::Nil);
        assert_eq!(atom("!"), Term::Cut);
        assert_eq!(atom("[]"), Term::EmptyList);
        assert_eq!(Term::Cut.to_string(), "!");
        assert_eq!(Term::Nil.to_string(), "nil");
        assert!(Term::Fail.is_atomic());
    }

    #[test]
    fn numbers() {
        assert_eq!(
            Term::new_number(NumberKind::Integer, Some(10.into())).unwrap(),
            Term::Integer(10)
        );
        assert_eq!(
            Term::new_number(NumberKind::Integer, None).unwrap(),
            Term::Integer(0)
        );
        assert_eq!(
            Term::new_number(NumberKind::Double, None).unwrap(),
            Term::Double(0.0)
        );
        let pi = Term::new_number(NumberKind::Double, Some(std::f64::consts::PI.into())).unwrap();
        assert!(pi.to_string().starts_with("3.14159"));
        let err = Term::new_number(NumberKind::Integer, Some(Numeric::Int(1 << 40))).unwrap_err();
        assert_eq!(err.kind(), ErrorKind::Prolog);
        assert!(Term::new_number(NumberKind::Float, Some(Numeric::Real(1e300))).is_err());
        assert!(Term::new_number(NumberKind::Long, Some(Numeric::Real(2.5))).is_err());
    }

    #[test]
    fn variables() {
        let x = Term::variable("X", 0).unwrap();
        assert_eq!(x.to_string(), "X");
        let z = Term::variable("Z", 2).unwrap();
        match &z {
            Term::Variable(v) => assert_eq!(v.position(), 2),
            _ => unreachable!(),
        }
        assert!(matches!(Term::anonymous(0), Term::Variable(v) if v.is_anonymous()));
        assert_eq!(
            Term::variable("lower", 0).unwrap_err().kind(),
            ErrorKind::Syntax
        );
        assert_eq!(Term::variable("", 0).unwrap_err().kind(), ErrorKind::Syntax);
    }

    #[test]
    fn lists() {
        let empty = Term::list([], None);
        assert_eq!(empty, Term::EmptyList);
        assert_eq!(empty.to_string(), "[]");
        assert_eq!(empty.arity().unwrap(), 0);
        let l = Term::list([1.into(), 2.into(), 3.into()], None);
        assert_eq!(l.to_string(), "[1,2,3]");
        assert_eq!(l.functor().unwrap(), ".");
        assert_eq!(l.arity().unwrap(), 2);
        let collected: Vec<_> = l.iter().cloned().collect();
        assert_eq!(collected, vec![Term::Integer(1), Term::Integer(2), Term::Integer(3)]);
        let partial = Term::list([1.into()], Some(Term::variable("T", 0).unwrap()));
        assert_eq!(partial.to_string(), "[1|T]");
        assert_eq!(partial.list_items().unwrap_err().kind(), ErrorKind::ListExpected);
    }

    #[test]
    fn structures() {
        let p = Term::structure("parent", [atom("pam"), atom("bob")]);
        assert_eq!(p.to_string(), "parent(pam,bob)");
        assert_eq!(p.indicator().unwrap().to_string(), "parent/2");
        assert!(p.has_indicator("parent", 2));
        assert!(!p.has_indicator("parent", 1));
        let z = Term::variable("Z", 0).unwrap();
        assert_eq!(
            Term::structure("dark", [z]).indicator().unwrap().to_string(),
            "dark/1"
        );
        let ff = Term::structure("f", [Term::structure("f", [atom("a")])]);
        assert_eq!(ff.arity().unwrap(), 1);
        assert_eq!(ff.to_string(), "f(f(a))");
        assert_eq!(Term::structure("a", []), atom("a"));
        assert_eq!(p.argument(1).unwrap(), atom("bob"));
        assert_eq!(p.argument(2).unwrap_err().kind(), ErrorKind::Prolog);
    }

    #[test]
    fn expressions() {
        let e = Term::expression(5.into(), "+", 3.into()).unwrap();
        assert_eq!(e.to_string(), "5+3");
        assert_eq!(e.functor().unwrap(), "+");
        assert!(e.is_evaluable());
        let x = Term::variable("X", 0).unwrap();
        let is = Term::expression(x, "is", e).unwrap();
        assert_eq!(is.to_string(), "X is 5+3");
        assert_eq!(
            Term::expression(atom("a"), "=", atom("a")).unwrap().to_string(),
            "a=a"
        );
        assert_eq!(
            Term::expression(atom("a"), "nope", atom("b")).unwrap_err().kind(),
            ErrorKind::Prolog
        );
    }

    #[test]
    fn references() {
        let r = Term::reference(HostValue::Null);
        assert!(r.is_null_type());
        assert!(r.is_reference());
        assert!(!r.is_object_type());
        let t = Term::reference(HostValue::Bool(true));
        assert!(t.is_true_type() && t.is_object_type());
        assert!(Term::reference(HostValue::Bool(false)).is_false_type());
        assert!(Term::reference(HostValue::Void).is_void_type());
        assert_eq!(r.functor().unwrap(), "@");
        assert_eq!(r.arity().unwrap(), 1);
        let text = r.to_string();
        assert!(text.starts_with("@(J#") && text.ends_with(')'));
        assert_eq!(text.len(), "@(J#00000000000000425)".len());
    }

    #[test]
    fn inspection_errors() {
        let x = Term::variable("X", 0).unwrap();
        assert_eq!(x.functor().unwrap_err().kind(), ErrorKind::Functor);
        assert_eq!(x.arity().unwrap_err().kind(), ErrorKind::Arity);
        assert_eq!(x.indicator().unwrap_err().kind(), ErrorKind::Indicator);
        assert_eq!(Term::Integer(3).functor().unwrap_err().kind(), ErrorKind::Functor);
        assert_eq!(
            atom("a").arguments().unwrap_err().kind(),
            ErrorKind::CompoundExpected
        );
        assert_eq!(
            Term::Integer(1).argument(0).unwrap_err().kind(),
            ErrorKind::CompoundExpected
        );
        assert!(Term::EmptyList.is_empty_list());
    }

    #[test]
    fn variable_collection_order() {
        let t = Term::structure(
            "f",
            [
                Term::variable("B", 1).unwrap(),
                Term::list([Term::variable("A", 0).unwrap()], None),
                Term::variable("B", 1).unwrap(),
            ],
        );
        let names: Vec<_> = t.variables().iter().map(|v| v.name().unwrap().to_string()).collect();
        assert_eq!(names, ["B", "A"]);
        assert!(!t.is_ground());
    }
}
