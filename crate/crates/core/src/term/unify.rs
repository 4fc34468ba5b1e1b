//! Side-effect-free unification over immutable terms.
//!
//! Bindings are collected in a triangular [`Substitution`]; the input terms
//! are never touched. Without the occurs check a variable may be bound to a
//! term containing itself; compound pairs already under comparison are
//! remembered so such cyclic bindings still terminate.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use super::{Term, Variable};

/// Variable bindings produced by unification, in triangular form: a bound
/// value may itself mention variables bound elsewhere in the map.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Substitution {
    bindings: HashMap<Variable, Term>,
}

impl Substitution {
    pub fn get(&self, var: &Variable) -> Option<&Term> {
        self.bindings.get(var)
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Variable, &Term)> {
        self.bindings.iter()
    }

    /// Applies the substitution until no bound variable remains. Must not be
    /// called on a cyclic substitution.
    pub fn resolve(&self, term: &Term) -> Term {
        term.substitute(&|v: &Variable| self.bindings.get(v).map(|t| self.resolve(t)))
    }

    fn walk<'a>(&'a self, mut term: &'a Term) -> &'a Term {
        while let Term::Variable(v) = term {
            match self.bindings.get(v) {
                Some(bound) => term = bound,
                None => break,
            }
        }
        term
    }

    fn occurs(&self, var: &Variable, term: &Term) -> bool {
        let mut stack = vec![term];
        while let Some(t) = stack.pop() {
            match self.walk(t) {
                Term::Variable(v) => {
                    if v == var {
                        return true;
                    }
                }
                Term::List(cell) => {
                    stack.push(&cell.head);
                    stack.push(&cell.tail);
                }
                Term::Structure(s) => stack.extend(s.args.iter()),
                _ => {}
            }
        }
        false
    }
}

fn compound_key(t: &Term) -> Option<usize> {
    match t {
        Term::List(c) => Some(Arc::as_ptr(c) as *const u8 as usize),
        Term::Structure(s) => Some(Arc::as_ptr(s) as *const u8 as usize),
        _ => None,
    }
}

pub(crate) fn unify(a: &Term, b: &Term, occurs_check: bool) -> Option<Substitution> {
    let mut subst = Substitution::default();
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut stack: Vec<(Term, Term)> = vec![(a.clone(), b.clone())];
    while let Some((x, y)) = stack.pop() {
        let x = subst.walk(&x).clone();
        let y = subst.walk(&y).clone();
        match (&x, &y) {
            (Term::Variable(v), Term::Variable(w)) if v == w => {}
            (Term::Variable(v), other) | (other, Term::Variable(v)) => {
                if occurs_check && subst.occurs(v, other) {
                    return None;
                }
                subst.bindings.insert(v.clone(), other.clone());
            }
            (Term::List(p), Term::List(q)) => {
                if let (Some(kx), Some(ky)) = (compound_key(&x), compound_key(&y)) {
                    if kx == ky || !seen.insert((kx, ky)) {
                        continue;
                    }
                }
                stack.push((p.tail.clone(), q.tail.clone()));
                stack.push((p.head.clone(), q.head.clone()));
            }
            (Term::Structure(p), Term::Structure(q)) => {
                if p.functor != q.functor || p.args.len() != q.args.len() {
                    return None;
                }
                if let (Some(kx), Some(ky)) = (compound_key(&x), compound_key(&y)) {
                    if kx == ky || !seen.insert((kx, ky)) {
                        continue;
                    }
                }
                for (s, t) in p.args.iter().zip(&q.args).rev() {
                    stack.push((s.clone(), t.clone()));
                }
            }
            _ => {
                if x != y {
                    return None;
                }
            }
        }
    }
    Some(subst)
}
