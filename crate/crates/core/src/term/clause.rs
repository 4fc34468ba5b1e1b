use std::collections::HashMap;
use std::fmt;

use super::{write, Indicator, OperatorTable, Term, Variable};
use crate::error::{Error, Result};

/// A fact, a rule or a directive.
///
/// Variables are renumbered on construction so positions follow first
/// occurrence (head first, then body, left to right).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clause {
    head: Term,
    body: Term,
    directive: bool,
}

/// Right-nested `,`/2 conjunction of `goals`; `true` when empty.
pub(crate) fn conjunction(goals: Vec<Term>) -> Term {
    let mut iter = goals.into_iter().rev();
    let Some(mut acc) = iter.next() else {
        return Term::True;
    };
    for goal in iter {
        acc = Term::structure(",", [goal, acc]);
    }
    acc
}

/// Goals of a right-nested `,`/2 conjunction.
pub(crate) fn flatten_conjunction(body: &Term) -> Vec<Term> {
    let mut out = Vec::new();
    let mut cur = body;
    loop {
        match cur {
            Term::Structure(s) if &*s.functor == "," && s.args.len() == 2 => {
                out.push(s.args[0].clone());
                cur = &s.args[1];
            }
            _ => {
                out.push(cur.clone());
                return out;
            }
        }
    }
}

fn check_head(head: &Term) -> Result<()> {
    match head {
        Term::Structure(_) => Ok(()),
        t if t.is_atom() => Ok(()),
        _ => Err(Error::prolog(format!("{head} cannot be a clause head"))),
    }
}

fn check_goal(goal: &Term) -> Result<()> {
    match goal {
        Term::Integer(_) | Term::Long(_) | Term::Float(_) | Term::Double(_) | Term::List(_) => {
            Err(Error::prolog(format!("{goal} is not callable")))
        }
        _ => Ok(()),
    }
}

/// Renumbers variable positions by first occurrence.
pub(crate) fn normalize_variables(terms: &[&Term]) -> Vec<Term> {
    let mut order: Vec<Variable> = Vec::new();
    for t in terms {
        t.collect_variables(&mut order);
    }
    let renumber: HashMap<Variable, usize> = order
        .into_iter()
        .enumerate()
        .map(|(i, v)| (v, i))
        .collect();
    terms
        .iter()
        .map(|t| {
            t.substitute(&|v: &Variable| {
                renumber
                    .get(v)
                    .map(|&pos| Term::Variable(Variable::new_unchecked(v.name.clone(), pos)))
            })
        })
        .collect()
}

impl Clause {
    /// Clause `head :- body[0], body[1], ...`; a fact when `body` is empty.
    pub fn new(head: Term, body: Vec<Term>) -> Result<Self> {
        Clause::with_body(head, conjunction(body))
    }

    pub fn fact(head: Term) -> Result<Self> {
        Clause::with_body(head, Term::True)
    }

    /// Clause whose body is an already formed goal term.
    pub fn with_body(head: Term, body: Term) -> Result<Self> {
        check_head(&head)?;
        for goal in flatten_conjunction(&body) {
            check_goal(&goal)?;
        }
        let mut normalized = normalize_variables(&[&head, &body]).into_iter();
        Ok(Clause {
            head: normalized.next().unwrap(),
            body: normalized.next().unwrap(),
            directive: false,
        })
    }

    /// Directive `:- goal`.
    pub fn directive(goal: Term) -> Result<Self> {
        check_goal(&goal)?;
        let goal = normalize_variables(&[&goal]).pop().unwrap();
        Ok(Clause {
            head: Term::structure(":-", [goal]),
            body: Term::True,
            directive: true,
        })
    }

    /// Reads `H :- B`, `:- G` or a plain fact term.
    pub fn from_term(term: &Term) -> Result<Self> {
        if let Term::Structure(s) = term {
            if &*s.functor == ":-" {
                match s.args.as_slice() {
                    [head, body] => return Clause::with_body(head.clone(), body.clone()),
                    [goal] => return Clause::directive(goal.clone()),
                    _ => {}
                }
            }
        }
        Clause::fact(term.clone())
    }

    pub fn head(&self) -> &Term {
        &self.head
    }

    pub fn body(&self) -> &Term {
        &self.body
    }

    /// Goal of a directive.
    pub fn directive_goal(&self) -> Option<&Term> {
        match &self.head {
            Term::Structure(s) if self.directive => Some(&s.args[0]),
            _ => None,
        }
    }

    pub fn is_fact(&self) -> bool {
        !self.directive && self.body.is_true()
    }

    pub fn is_rule(&self) -> bool {
        !self.directive && !self.body.is_true()
    }

    pub fn is_directive(&self) -> bool {
        self.directive
    }

    pub fn functor(&self) -> &str {
        self.head.functor().expect("clause heads have functors")
    }

    pub fn arity(&self) -> usize {
        self.head.arity().expect("clause heads have arities")
    }

    pub fn indicator(&self) -> Indicator {
        Indicator::new(self.functor(), self.arity())
    }

    pub fn body_array(&self) -> Vec<Term> {
        if self.body.is_true() {
            return Vec::new();
        }
        flatten_conjunction(&self.body)
    }

    pub fn body_iter(&self) -> std::vec::IntoIter<Term> {
        self.body_array().into_iter()
    }

    /// The clause as a single term (`:-(H, B)` for rules).
    pub fn to_term(&self) -> Term {
        if self.directive || self.body.is_true() {
            self.head.clone()
        } else {
            Term::structure(":-", [self.head.clone(), self.body.clone()])
        }
    }

    /// True when the two clauses unify as terms.
    pub fn unify(&self, other: &Clause) -> bool {
        self.to_term().unify(&other.to_term())
    }

    /// Clause text terminated by a period, using `ops` for operators.
    pub fn to_string_with(&self, ops: &OperatorTable) -> String {
        let mut text = self.to_term().to_string_with(ops);
        if text.ends_with(write::is_symbol_char) {
            text.push(' ');
        }
        text.push('.');
        text
    }

    /// Listing layout: one body goal per line.
    pub fn listing(&self, ops: &OperatorTable) -> String {
        let goals = self.body_array();
        if !self.is_rule() || goals.len() == 1 {
            return self.to_string_with(ops);
        }
        let wrapped = |t: &Term, max: u16| {
            let text = t.to_string_with(ops);
            if write::term_priority(t, ops) > max {
                format!("({text})")
            } else {
                text
            }
        };
        let mut out = format!("{} :-", wrapped(&self.head, 1199));
        for (i, goal) in goals.iter().enumerate() {
            out.push_str("\n    ");
            out.push_str(&wrapped(goal, 999));
            if i + 1 < goals.len() {
                out.push(',');
            } else {
                if out.ends_with(write::is_symbol_char) {
                    out.push(' ');
                }
                out.push('.');
            }
        }
        out
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(OperatorTable::iso()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::ErrorKind;

    fn var(name: &str, pos: usize) -> Term {
        Term::variable(name, pos).unwrap()
    }

    #[test]
    fn grandparent_rule() {
        let (x, y, z) = (var("X", 0), var("Y", 1), var("Z", 2));
        let head = Term::structure("grandparent", [x.clone(), z.clone()]);
        let body = vec![
            Term::structure("parent", [x, y.clone()]),
            Term::structure("parent", [y, z]),
        ];
        let clause = Clause::new(head, body).unwrap();
        assert!(clause.is_rule());
        assert_eq!(clause.body_array().len(), 2);
        assert_eq!(clause.indicator().to_string(), "grandparent/2");
        assert_eq!(
            clause.to_string(),
            "grandparent(X,Z) :- parent(X,Y),parent(Y,Z)."
        );
        assert!(clause.unify(&clause));
    }

    #[test]
    fn facts_and_directives() {
        let fact = Clause::new(
            Term::structure("parent", [Term::atom("pam"), Term::atom("bob")]),
            vec![],
        )
        .unwrap();
        assert!(fact.is_fact() && !fact.is_rule());
        assert_eq!(fact.to_string(), "parent(pam,bob).");
        let directive = Clause::directive(Term::structure("include", [Term::atom("f.pl")])).unwrap();
        assert!(directive.is_directive());
        assert_eq!(directive.to_string(), ":- include('f.pl').");
    }

    #[test]
    fn invalid_heads() {
        assert_eq!(
            Clause::fact(var("X", 0)).unwrap_err().kind(),
            ErrorKind::Prolog
        );
        assert_eq!(
            Clause::fact(Term::Integer(1)).unwrap_err().kind(),
            ErrorKind::Prolog
        );
        assert!(Clause::new(Term::atom("p"), vec![Term::Integer(1)]).is_err());
    }

    #[test]
    fn positions_follow_first_occurrence() {
        let clause = Clause::new(
            Term::structure("dark", [var("Z", 2)]),
            vec![Term::structure("black", [var("Z", 2)])],
        )
        .unwrap();
        let vars = clause.to_term().variables();
        assert_eq!(vars.len(), 1);
        assert_eq!(vars[0].position(), 0);
    }

    #[test]
    fn listing_layout() {
        let clause = Clause::new(
            Term::atom("p"),
            vec![Term::atom("a"), Term::structure(";", [Term::atom("b"), Term::atom("c")])],
        )
        .unwrap();
        assert_eq!(clause.listing(OperatorTable::iso()), "p :-\n    a,\n    (b;c).");
    }
}
