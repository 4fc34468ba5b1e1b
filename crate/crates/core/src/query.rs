//! Solution cursor over a goal.

use std::sync::Arc;

use indexmap::IndexMap;

use crate::convert::{term_to_host, HostValue};
use crate::engine::kb::KnowledgeBase;
use crate::engine::machine::Machine;
use crate::engine::Stats;
use crate::error::{Error, Result};
use crate::logger::Logger;
use crate::term::Term;

/// Variable name to bound term, in first-occurrence order.
pub type Bindings = IndexMap<String, Term>;

/// Variable name to host value.
pub type HostBindings = IndexMap<String, HostValue>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueryState {
    Open,
    Exhausted,
    Disposed,
}

/// An open query.
///
/// All collectors share one cursor: after two calls to
/// [`Query::next_solution`], [`Query::all`] returns only the solutions that
/// remain.
pub struct Query {
    goals: Vec<Term>,
    machine: Machine,
    /// Named goal variables and their heap cells.
    vars: Vec<(String, usize)>,
    /// Solution found by a look-ahead and not yet handed out.
    pending: Option<Vec<Term>>,
    delivered: usize,
    state: QueryState,
}

impl std::fmt::Debug for Query {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Query")
            .field("goals", &self.goals)
            .field("state", &self.state)
            .finish()
    }
}

impl Query {
    pub(crate) fn new(
        kb: Arc<KnowledgeBase>,
        goals: Vec<Term>,
        logger: Logger,
        indexing: bool,
    ) -> Self {
        let mut machine = Machine::new(kb, logger, indexing);
        let mut vars: Vec<(String, usize)> = Vec::new();
        for (var, cell) in machine.load(&goals) {
            if let Some(name) = var.name() {
                if !vars.iter().any(|(n, _)| n == name) {
                    vars.push((name.to_string(), cell));
                }
            }
        }
        Query {
            goals,
            machine,
            vars,
            pending: None,
            delivered: 0,
            state: QueryState::Open,
        }
    }

    pub fn goals(&self) -> &[Term] {
        &self.goals
    }

    /// Names of the goal's free variables in first-occurrence order.
    pub fn variables(&self) -> Vec<&str> {
        self.vars.iter().map(|(n, _)| n.as_str()).collect()
    }

    pub fn state(&self) -> QueryState {
        self.state
    }

    /// Resolution counters accumulated so far.
    pub fn stats(&self) -> Stats {
        self.machine.stats()
    }

    fn check_open(&self) -> Result<()> {
        if self.state == QueryState::Disposed {
            return Err(Error::prolog("query has been disposed"));
        }
        Ok(())
    }

    fn advance(&mut self) -> Result<bool> {
        if self.pending.is_some() {
            return Ok(true);
        }
        if self.state == QueryState::Exhausted {
            return Ok(false);
        }
        match self.machine.next_solution() {
            Ok(true) => {
                let row = self
                    .vars
                    .iter()
                    .map(|(_, cell)| self.machine.term_of(&crate::engine::machine::Cell::Var(*cell)))
                    .collect::<Result<Vec<_>>>();
                match row {
                    Ok(row) => {
                        self.pending = Some(row);
                        Ok(true)
                    }
                    Err(e) => {
                        self.state = QueryState::Exhausted;
                        Err(e)
                    }
                }
            }
            Ok(false) => {
                self.state = QueryState::Exhausted;
                Ok(false)
            }
            Err(e) => {
                self.state = QueryState::Exhausted;
                Err(e)
            }
        }
    }

    /// True when the goal has at least one solution.
    pub fn has_solution(&mut self) -> Result<bool> {
        self.check_open()?;
        Ok(self.delivered > 0 || self.advance()?)
    }

    /// True when another solution can be fetched. Repeated calls do not
    /// move the cursor.
    pub fn has_more_solutions(&mut self) -> Result<bool> {
        self.check_open()?;
        self.advance()
    }

    /// Terms bound to the goal variables in the next solution.
    pub fn next_solution(&mut self) -> Result<Vec<Term>> {
        self.check_open()?;
        if !self.advance()? {
            return Err(Error::prolog("query has no more solutions"));
        }
        self.delivered += 1;
        Ok(self.pending.take().unwrap())
    }

    pub fn next_variables_solution(&mut self) -> Result<Bindings> {
        let row = self.next_solution()?;
        Ok(self.bindings(row))
    }

    fn bindings(&self, row: Vec<Term>) -> Bindings {
        self.vars
            .iter()
            .map(|(n, _)| n.clone())
            .zip(row)
            .collect()
    }

    fn take_rows(&mut self, limit: Option<usize>) -> Result<Vec<Vec<Term>>> {
        self.check_open()?;
        let mut rows = Vec::new();
        while limit.is_none_or(|n| rows.len() < n) && self.advance()? {
            rows.push(self.next_solution()?);
        }
        Ok(rows)
    }

    /// Next solution as a map, or an empty map when there is none.
    pub fn one(&mut self) -> Result<Bindings> {
        Ok(self.take_rows(Some(1))?.pop().map(|r| self.bindings(r)).unwrap_or_default())
    }

    pub fn one_variables_solution(&mut self) -> Result<Bindings> {
        self.one()
    }

    /// Next solution as a term array, empty when there is none.
    pub fn one_solution(&mut self) -> Result<Vec<Term>> {
        Ok(self.take_rows(Some(1))?.pop().unwrap_or_default())
    }

    /// Up to `n` solutions as an `n x m` term matrix.
    pub fn n_solutions(&mut self, n: usize) -> Result<Vec<Vec<Term>>> {
        self.take_rows(Some(n))
    }

    pub fn n_variables_solutions(&mut self, n: usize) -> Result<Vec<Bindings>> {
        let rows = self.take_rows(Some(n))?;
        Ok(rows.into_iter().map(|r| self.bindings(r)).collect())
    }

    /// Every remaining solution as a list of maps.
    pub fn all(&mut self) -> Result<Vec<Bindings>> {
        self.all_variables_solutions()
    }

    pub fn all_solutions(&mut self) -> Result<Vec<Vec<Term>>> {
        self.take_rows(None)
    }

    pub fn all_variables_solutions(&mut self) -> Result<Vec<Bindings>> {
        let rows = self.take_rows(None)?;
        Ok(rows.into_iter().map(|r| self.bindings(r)).collect())
    }

    // ---------------------------------------------------------------
    // host-valued collectors

    pub fn one_result(&mut self) -> Result<Vec<HostValue>> {
        self.one_solution()?.iter().map(term_to_host).collect()
    }

    pub fn n_results(&mut self, n: usize) -> Result<Vec<Vec<HostValue>>> {
        to_host_rows(self.n_solutions(n)?)
    }

    pub fn all_results(&mut self) -> Result<Vec<Vec<HostValue>>> {
        to_host_rows(self.all_solutions()?)
    }

    pub fn one_variables_result(&mut self) -> Result<HostBindings> {
        to_host_map(self.one()?)
    }

    pub fn all_variables_results(&mut self) -> Result<Vec<HostBindings>> {
        self.all()?.into_iter().map(to_host_map).collect()
    }

    /// Releases the query. Further use is an error; disposing twice is not.
    pub fn dispose(&mut self) {
        self.state = QueryState::Disposed;
        self.pending = None;
    }

    pub fn is_disposed(&self) -> bool {
        self.state == QueryState::Disposed
    }
}

fn to_host_rows(rows: Vec<Vec<Term>>) -> Result<Vec<Vec<HostValue>>> {
    rows.iter()
        .map(|row| row.iter().map(term_to_host).collect())
        .collect()
}

fn to_host_map(bindings: Bindings) -> Result<HostBindings> {
    bindings
        .into_iter()
        .map(|(k, v)| term_to_host(&v).map(|h| (k, h)))
        .collect()
}

/// Yields the remaining solutions; an error ends the iteration.
impl Iterator for Query {
    type Item = Result<Bindings>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.state == QueryState::Disposed {
            return None;
        }
        match self.has_more_solutions() {
            Ok(true) => Some(self.next_variables_solution()),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::engine::Engine;
    use crate::term::Term;

    fn zoo() -> Engine {
        let mut e = Engine::new();
        e.consult_str("black(cat). brown(bear). dark(Z) :- black(Z). dark(Z) :- brown(Z).")
            .unwrap();
        e
    }

    #[test]
    fn cursor_walk() {
        let e = zoo();
        let mut q = e.query("dark(X)").unwrap();
        assert!(q.has_more_solutions().unwrap());
        assert!(q.has_more_solutions().unwrap());
        assert_eq!(q.next_variables_solution().unwrap()["X"], Term::atom("cat"));
        assert_eq!(q.next_solution().unwrap(), vec![Term::atom("bear")]);
        assert!(!q.has_more_solutions().unwrap());
        assert!(q.next_solution().is_err());
        assert!(q.has_solution().unwrap());
    }

    #[test]
    fn dispose_is_final_and_idempotent() {
        let e = zoo();
        let mut q = e.query("dark(X)").unwrap();
        q.dispose();
        q.dispose();
        assert!(q.has_more_solutions().is_err());
        assert!(q.all().is_err());
        assert_eq!(e.query_all("dark(X)").unwrap().len(), 2);
    }

    #[test]
    fn collectors_share_the_cursor() {
        let e = zoo();
        let mut q = e.query("dark(X)").unwrap();
        q.next_solution().unwrap();
        assert_eq!(q.all_solutions().unwrap(), vec![vec![Term::atom("bear")]]);
        assert!(e.query("fail").unwrap().one().unwrap().is_empty());
        assert!(e.query("dark(X)").unwrap().n_solutions(0).unwrap().is_empty());
    }

    #[test]
    fn host_collectors() {
        let e = zoo();
        let rows = e.query("X is 5+3").unwrap().all_variables_results().unwrap();
        assert_eq!(rows[0]["X"], crate::HostValue::Int(8));
        let one = e.query("dark(X)").unwrap().one_result().unwrap();
        assert_eq!(one, vec![crate::HostValue::Text("cat".into())]);
        assert!(e.query("dark(X), dark(Y), X \\== Y, Z = _").unwrap().one_result().is_err());
    }

    #[test]
    fn iteration_matches_explicit_loop() {
        let e = zoo();
        let via_iter: Vec<_> = e.query("dark(X)").unwrap().map(|b| b.unwrap()).collect();
        assert_eq!(via_iter, e.query_all("dark(X)").unwrap());
    }
}
