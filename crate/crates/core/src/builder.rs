//! Fluent construction of queries and clauses.
//!
//! Pieces may be given as terms or as text. Named variables are shared by
//! name across pieces, so `begin("dark(X)").comma("big(X)")` constrains one
//! `X`. Misuse (for example `comma` before `begin`) is remembered and
//! reported by the finishing call.

use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::query::Query;
use crate::term::{normalize_variables, Clause, Term, Variable};

/// A goal given as a term or as text parsed with the engine's operators.
pub trait GoalSource {
    fn into_goal(self, engine: &Engine) -> Result<Term>;
}

impl GoalSource for Term {
    fn into_goal(self, _: &Engine) -> Result<Term> {
        Ok(self)
    }
}

impl GoalSource for &Term {
    fn into_goal(self, _: &Engine) -> Result<Term> {
        Ok(self.clone())
    }
}

impl GoalSource for &str {
    fn into_goal(self, engine: &Engine) -> Result<Term> {
        engine.parse_term(self)
    }
}

impl GoalSource for &String {
    fn into_goal(self, engine: &Engine) -> Result<Term> {
        engine.parse_term(self)
    }
}

/// Gives every named variable one identity across `pieces` and keeps the
/// anonymous variables of different pieces apart.
fn merge_scope(pieces: Vec<Term>) -> Vec<Term> {
    pieces
        .into_iter()
        .enumerate()
        .map(|(k, piece)| {
            piece.substitute(&|v: &Variable| {
                Some(match v.name() {
                    Some(name) => Term::Variable(Variable::new_unchecked(Some(name.into()), 0)),
                    None => Term::anonymous((k + 1) * 1_000_000 + v.position()),
                })
            })
        })
        .collect()
}

fn conjunction(goals: &[Term]) -> Term {
    let mut iter = goals.iter().rev();
    let mut acc = iter.next().cloned().unwrap_or(Term::True);
    for goal in iter {
        acc = Term::structure(",", [goal.clone(), acc]);
    }
    acc
}

fn disjunction(branches: &[Term]) -> Term {
    let mut iter = branches.iter().rev();
    let mut acc = iter.next().cloned().unwrap_or(Term::Fail);
    for branch in iter {
        acc = Term::structure(";", [branch.clone(), acc]);
    }
    acc
}

/// Builds `g1, g2 ; g3` style goals left to right; `;` binds looser than
/// `,` as in program text, so `a.comma(b).semicolon(c).comma(d)` means
/// `(a, b) ; (c, d)`.
pub struct QueryBuilder<'e> {
    engine: &'e Engine,
    /// Disjuncts, each a list of conjuncts.
    branches: Vec<Vec<Term>>,
    error: Option<Error>,
}

impl<'e> QueryBuilder<'e> {
    pub fn new(engine: &'e Engine) -> Self {
        QueryBuilder {
            engine,
            branches: Vec::new(),
            error: None,
        }
    }

    fn fail(&mut self, message: &str) {
        if self.error.is_none() {
            self.error = Some(Error::prolog(message));
        }
    }

    fn piece(&mut self, goal: impl GoalSource) -> Option<Term> {
        match goal.into_goal(self.engine) {
            Ok(t) => Some(t),
            Err(e) => {
                self.error.get_or_insert(e);
                None
            }
        }
    }

    /// First goal of the query.
    pub fn begin(&mut self, goal: impl GoalSource) -> &mut Self {
        if !self.branches.is_empty() {
            self.fail("begin called twice on a query builder");
            return self;
        }
        if let Some(t) = self.piece(goal) {
            self.branches.push(vec![t]);
        }
        self
    }

    /// First goal written as `left op right`.
    pub fn begin_op(&mut self, left: Term, op: &str, right: Term) -> &mut Self {
        match self.engine.operators().expression(left, op, right) {
            Ok(t) => self.begin(t),
            Err(e) => {
                self.error.get_or_insert(e);
                self
            }
        }
    }

    /// Appends a conjunct.
    pub fn comma(&mut self, goal: impl GoalSource) -> &mut Self {
        if self.branches.is_empty() {
            self.fail("comma called before begin");
            return self;
        }
        if let Some(t) = self.piece(goal) {
            self.branches.last_mut().unwrap().push(t);
        }
        self
    }

    pub fn comma_op(&mut self, left: Term, op: &str, right: Term) -> &mut Self {
        match self.engine.operators().expression(left, op, right) {
            Ok(t) => self.comma(t),
            Err(e) => {
                self.error.get_or_insert(e);
                self
            }
        }
    }

    /// Starts a new disjunct.
    pub fn semicolon(&mut self, goal: impl GoalSource) -> &mut Self {
        if self.branches.is_empty() {
            self.fail("semicolon called before begin");
            return self;
        }
        if let Some(t) = self.piece(goal) {
            self.branches.push(vec![t]);
        }
        self
    }

    pub fn semicolon_op(&mut self, left: Term, op: &str, right: Term) -> &mut Self {
        match self.engine.operators().expression(left, op, right) {
            Ok(t) => self.semicolon(t),
            Err(e) => {
                self.error.get_or_insert(e);
                self
            }
        }
    }

    /// The goal built so far.
    pub fn goal(&self) -> Result<Term> {
        if let Some(e) = &self.error {
            return Err(e.clone());
        }
        if self.branches.is_empty() {
            return Err(Error::prolog("query builder is empty"));
        }
        let flat: Vec<Term> = self.branches.iter().flatten().cloned().collect();
        let mut merged = merge_scope(flat).into_iter();
        let branches: Vec<Term> = self
            .branches
            .iter()
            .map(|b| {
                let goals: Vec<Term> = merged.by_ref().take(b.len()).collect();
                conjunction(&goals)
            })
            .collect();
        let goal = disjunction(&branches);
        Ok(normalize_variables(&[&goal]).pop().unwrap())
    }

    /// Text of the goal, rendered with the engine's operators.
    pub fn query_string(&self) -> Result<String> {
        Ok(self.engine.format_term(&self.goal()?))
    }

    /// Opens the query and resets the builder.
    pub fn query(&mut self) -> Result<Query> {
        let goal = self.goal();
        self.reset();
        self.engine.query_terms(&[goal?])
    }

    pub fn reset(&mut self) {
        self.branches.clear();
        self.error = None;
    }
}

/// Builds `head :- g1, g2, ...` and hands it to the engine.
pub struct ClauseBuilder<'e> {
    engine: &'e mut Engine,
    head: Option<Term>,
    body: Vec<Term>,
    necked: bool,
    error: Option<Error>,
}

impl<'e> ClauseBuilder<'e> {
    pub fn new(engine: &'e mut Engine) -> Self {
        ClauseBuilder {
            engine,
            head: None,
            body: Vec::new(),
            necked: false,
            error: None,
        }
    }

    fn fail(&mut self, message: &str) {
        if self.error.is_none() {
            self.error = Some(Error::prolog(message));
        }
    }

    fn piece(&mut self, goal: impl GoalSource) -> Option<Term> {
        match goal.into_goal(self.engine) {
            Ok(t) => Some(t),
            Err(e) => {
                self.error.get_or_insert(e);
                None
            }
        }
    }

    /// Clause head.
    pub fn begin(&mut self, head: impl GoalSource) -> &mut Self {
        if self.head.is_some() {
            self.fail("begin called twice on a clause builder");
            return self;
        }
        if let Some(t) = self.piece(head) {
            self.head = Some(t);
        }
        self
    }

    /// First body goal.
    pub fn neck(&mut self, goal: impl GoalSource) -> &mut Self {
        if self.head.is_none() {
            self.fail("neck called before begin");
            return self;
        }
        if self.necked {
            self.fail("neck called twice");
            return self;
        }
        self.necked = true;
        if let Some(t) = self.piece(goal) {
            self.body.push(t);
        }
        self
    }

    pub fn neck_op(&mut self, left: Term, op: &str, right: Term) -> &mut Self {
        match self.engine.operators().expression(left, op, right) {
            Ok(t) => self.neck(t),
            Err(e) => {
                self.error.get_or_insert(e);
                self
            }
        }
    }

    /// Further body goal.
    pub fn comma(&mut self, goal: impl GoalSource) -> &mut Self {
        if !self.necked {
            self.fail("comma called before neck");
            return self;
        }
        if let Some(t) = self.piece(goal) {
            self.body.push(t);
        }
        self
    }

    pub fn comma_op(&mut self, left: Term, op: &str, right: Term) -> &mut Self {
        match self.engine.operators().expression(left, op, right) {
            Ok(t) => self.comma(t),
            Err(e) => {
                self.error.get_or_insert(e);
                self
            }
        }
    }

    /// The clause built so far; a fact when `neck` was never called.
    pub fn clause(&self) -> Result<Clause> {
        if let Some(e) = &self.error {
            return Err(e.clone());
        }
        let Some(head) = &self.head else {
            return Err(Error::prolog("clause builder has no head"));
        };
        let mut pieces = vec![head.clone()];
        pieces.extend(self.body.iter().cloned());
        let mut merged = merge_scope(pieces).into_iter();
        let head = merged.next().unwrap();
        Clause::new(head, merged.collect())
    }

    /// Text of the clause, rendered with the engine's operators.
    pub fn clause_string(&self) -> Result<String> {
        Ok(self.clause()?.to_string_with(self.engine.operators()))
    }

    fn finish(&mut self) -> Result<Clause> {
        let clause = self.clause();
        self.reset();
        clause
    }

    pub fn asserta(&mut self) -> Result<bool> {
        let clause = self.finish()?;
        self.engine.asserta_clause(clause)
    }

    pub fn assertz(&mut self) -> Result<bool> {
        let clause = self.finish()?;
        self.engine.assertz_clause(clause)
    }

    /// Whether a stored clause unifies with the built one.
    pub fn check(&mut self) -> Result<bool> {
        let clause = self.finish()?;
        self.engine.clause_terms(clause.head().clone(), &clause.body_array())
    }

    pub fn retract(&mut self) -> Result<bool> {
        let clause = self.finish()?;
        self.engine.retract_clause(&clause)
    }

    pub fn reset(&mut self) {
        self.head = None;
        self.body.clear();
        self.necked = false;
        self.error = None;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clause_builder_listing() {
        let mut engine = Engine::new();
        let mut b = engine.clause_builder();
        b.begin("dark(Z)").neck("black(Z)").assertz().unwrap();
        b.begin("dark(Z)").neck("brown(Z)").assertz().unwrap();
        assert!(b.begin("dark(Z)").neck("black(Z)").check().unwrap());
        drop(b);
        assert_eq!(
            engine.program_text(),
            "dark(Z) :- black(Z).\ndark(Z) :- brown(Z).\n"
        );
    }

    #[test]
    fn misuse_is_reported() {
        let mut engine = Engine::new();
        let mut b = engine.clause_builder();
        assert!(b.neck("a").assertz().is_err());
        assert!(b.begin("h").comma("a").assertz().is_err());
        assert!(b.begin("h").assertz().unwrap());
        let engine = Engine::new();
        let mut q = engine.query_builder();
        assert!(q.comma("a").query().is_err());
        assert!(q.begin("f(").query().is_err());
    }

    #[test]
    fn query_builder_shapes() {
        let mut engine = Engine::new();
        engine
            .consult_str("dark(cat). dark(bear). big(bear). big(whale).")
            .unwrap();
        let mut q = engine.query_builder();
        q.begin("dark(X)").comma("big(X)");
        assert_eq!(q.query_string().unwrap(), "dark(X),big(X)");
        let rows = q.query().unwrap().all().unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0]["X"], Term::atom("bear"));
        q.begin("a").comma("b").semicolon("c").comma("d");
        assert_eq!(q.goal().unwrap(), engine.parse_term("a, b ; c, d").unwrap());
        q.reset();
        q.begin_op(Term::atom("X"), "=", Term::Integer(1));
        assert!(q.query().is_ok());
    }

    #[test]
    fn op_pieces_use_engine_operators() {
        let mut engine = Engine::new();
        engine.define_operator(700, "xfx", "===>").unwrap();
        let x = Term::variable("X", 0).unwrap();
        let mut b = engine.clause_builder();
        b.begin("rule(X)").neck_op(x, "===>", Term::atom("b"));
        assert_eq!(b.clause_string().unwrap(), "rule(X) :- X===>b.");
        let plain = Engine::new();
        let mut q = plain.query_builder();
        assert!(q.begin_op(Term::atom("a"), "===>", Term::atom("b")).goal().is_err());
    }
}
