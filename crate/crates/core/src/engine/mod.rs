//! Knowledge base lifecycle and the query entry points.

mod arith;
pub(crate) mod kb;
pub(crate) mod machine;

use std::collections::{BTreeSet, HashSet};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use indexmap::IndexMap;

use crate::builder::{ClauseBuilder, QueryBuilder};
use crate::error::{Error, Result};
use crate::logger::Logger;
use crate::parser::{
    parse_program_with, parse_term_with, read_source, SourceProgram,
};
use crate::query::{Bindings, Query};
use crate::term::{flatten_conjunction, format_op_directive, Clause, Indicator, Operator, OperatorTable, Specifier, Term};
use kb::KnowledgeBase;
use machine::BUILTINS;

/// Counters collected while solving a query.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Stats {
    /// User predicate calls.
    pub inferences: u64,
    pub choice_points: u64,
    /// Executed `!` goals.
    pub cuts: u64,
    pub backtracks: u64,
}

/// Constant facts about the engine build and host.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineInfo {
    pub name: String,
    pub version: String,
    pub license: String,
    pub os_name: String,
    pub os_arch: String,
    /// Whether the engine implements full ISO Prolog. It does not: only the
    /// core control constructs, unification, arithmetic and type checks are
    /// built in.
    pub iso_compliant: bool,
}

impl EngineInfo {
    pub fn current() -> Self {
        EngineInfo {
            name: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            license: env!("CARGO_PKG_LICENSE").to_string(),
            os_name: std::env::consts::OS.to_string(),
            os_arch: std::env::consts::ARCH.to_string(),
            iso_compliant: false,
        }
    }

    pub fn run_on_linux(&self) -> bool {
        self.os_name == "linux"
    }

    pub fn run_on_osx(&self) -> bool {
        self.os_name == "macos"
    }

    pub fn run_on_windows(&self) -> bool {
        self.os_name == "windows"
    }
}

/// A logic engine holding one knowledge base.
///
/// Open queries keep the snapshot of the knowledge base they started from,
/// so asserting or retracting while a query is open never disturbs it.
#[derive(Clone)]
pub struct Engine {
    kb: Arc<KnowledgeBase>,
    logger: Logger,
    indexing: bool,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new()
    }
}

impl std::fmt::Debug for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Engine")
            .field("clauses", &self.program_size())
            .field("indexing", &self.indexing)
            .finish()
    }
}

/// Goals of a query text: an optional `?-` prefix and trailing period are
/// accepted and a top-level conjunction is split.
fn split_goals(term: Term) -> Vec<Term> {
    let term = match &term {
        Term::Structure(s) if &*s.functor == "?-" && s.args.len() == 1 => s.args[0].clone(),
        _ => term,
    };
    flatten_conjunction(&term)
}

impl Engine {
    pub fn new() -> Self {
        Engine::with_logger(Logger::default())
    }

    pub fn with_logger(logger: Logger) -> Self {
        Engine {
            kb: Arc::new(KnowledgeBase::default()),
            logger,
            indexing: true,
        }
    }

    /// Engine loaded from a program file.
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let mut engine = Engine::new();
        engine.consult(path)?;
        Ok(engine)
    }

    pub fn logger(&self) -> &Logger {
        &self.logger
    }

    /// Turns first-argument indexing on or off for queries created later.
    pub fn set_indexing(&mut self, enabled: bool) {
        self.indexing = enabled;
    }

    pub fn indexing(&self) -> bool {
        self.indexing
    }

    fn kb_mut(&mut self) -> &mut KnowledgeBase {
        Arc::make_mut(&mut self.kb)
    }

    // ---------------------------------------------------------------
    // parsing with this engine's operators

    pub fn parse_term(&self, text: &str) -> Result<Term> {
        parse_term_with(text, &self.kb.ops)
    }

    pub fn parse_clause(&self, text: &str) -> Result<Clause> {
        Clause::from_term(&self.parse_term(text)?)
    }

    /// Goals of a query text such as `?- a(X), b(X).`
    pub fn parse_goals(&self, text: &str) -> Result<Vec<Term>> {
        Ok(split_goals(self.parse_term(text)?))
    }

    /// Renders a term with this engine's operators.
    pub fn format_term(&self, term: &Term) -> String {
        term.to_string_with(&self.kb.ops)
    }

    // ---------------------------------------------------------------
    // clauses

    /// Adds a clause at the front of its family. Returns false when a
    /// variant of it is already stored.
    pub fn asserta(&mut self, text: &str) -> Result<bool> {
        let clause = self.parse_clause(text)?;
        self.asserta_clause(clause)
    }

    /// Adds a clause at the back of its family.
    pub fn assertz(&mut self, text: &str) -> Result<bool> {
        let clause = self.parse_clause(text)?;
        self.assertz_clause(clause)
    }

    pub fn asserta_clause(&mut self, clause: Clause) -> Result<bool> {
        self.kb_mut().add(clause, true)
    }

    pub fn assertz_clause(&mut self, clause: Clause) -> Result<bool> {
        self.kb_mut().add(clause, false)
    }

    pub fn asserta_terms(&mut self, head: Term, body: &[Term]) -> Result<bool> {
        self.asserta_clause(Clause::new(head, body.to_vec())?)
    }

    pub fn assertz_terms(&mut self, head: Term, body: &[Term]) -> Result<bool> {
        self.assertz_clause(Clause::new(head, body.to_vec())?)
    }

    /// Removes the first clause unifying with `text`.
    pub fn retract(&mut self, text: &str) -> Result<bool> {
        let clause = self.parse_clause(text)?;
        self.retract_clause(&clause)
    }

    pub fn retract_clause(&mut self, clause: &Clause) -> Result<bool> {
        if !self.kb.matches(clause) {
            return Ok(false);
        }
        self.kb_mut().retract(clause)
    }

    pub fn retract_terms(&mut self, head: Term, body: &[Term]) -> Result<bool> {
        self.retract_clause(&Clause::new(head, body.to_vec())?)
    }

    /// Removes every clause of `functor/arity`.
    pub fn abolish(&mut self, functor: &str, arity: usize) -> Result<bool> {
        let indicator = Indicator::new(functor, arity);
        if self.kb.family(functor, arity).is_none() {
            if machine::is_builtin(functor, arity) {
                return Err(Error::prolog(format!(
                    "cannot modify built-in predicate {indicator}"
                )));
            }
            return Ok(false);
        }
        self.kb_mut().abolish(&indicator)
    }

    /// True when a stored clause unifies with `text`; nothing is proved.
    pub fn clause(&self, text: &str) -> Result<bool> {
        Ok(self.kb.matches(&self.parse_clause(text)?))
    }

    pub fn clause_terms(&self, head: Term, body: &[Term]) -> Result<bool> {
        Ok(self.kb.matches(&Clause::new(head, body.to_vec())?))
    }

    /// True when the goal text has at least one solution.
    pub fn contains(&self, text: &str) -> Result<bool> {
        self.query(text)?.has_solution()
    }

    pub fn contains_terms(&self, goals: &[Term]) -> Result<bool> {
        self.query_terms(goals)?.has_solution()
    }

    // ---------------------------------------------------------------
    // program sources

    /// Replaces the knowledge base with the program in `path`.
    pub fn consult(&mut self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let text = read_source(path)?;
        self.load(&text, Some(path), true)
    }

    pub fn consult_str(&mut self, text: &str) -> Result<()> {
        self.load(text, None, true)
    }

    /// Merges the program in `path` into the knowledge base.
    pub fn include(&mut self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let text = read_source(path)?;
        self.load(&text, Some(path), false)
    }

    pub fn include_str(&mut self, text: &str) -> Result<()> {
        self.load(text, None, false)
    }

    /// Parses everything first, so a failed load leaves the engine as it
    /// was. Goals of directives other than `op/3` and `include/1` run once
    /// the program is in place; a failing directive is logged, not raised.
    fn load(&mut self, text: &str, path: Option<&Path>, replace: bool) -> Result<()> {
        let mut kb = (*self.kb).clone();
        if replace {
            kb.clear();
        }
        let mut goals = Vec::new();
        let mut visited = HashSet::new();
        if let Some(p) = path {
            visited.insert(p.canonicalize().unwrap_or_else(|_| p.to_path_buf()));
        }
        load_into(&mut kb, text, path, &mut goals, &mut visited)?;
        self.kb = Arc::new(kb);
        for goal in goals {
            let shown = self.format_term(&goal);
            match self.contains_terms(std::slice::from_ref(&goal)) {
                Ok(true) => {}
                Ok(false) => self
                    .logger
                    .warn("consult", format!("directive {shown} failed")),
                Err(e) => self.logger.warn(
                    "consult",
                    format!("directive {shown} raised {e}"),
                ),
            }
        }
        Ok(())
    }

    /// Writes the program: operator changes first, then every clause,
    /// families in insertion order.
    pub fn write_program(&self, out: &mut dyn Write) -> Result<()> {
        out.write_all(self.program_text().as_bytes())?;
        Ok(())
    }

    pub fn program_text(&self) -> String {
        let ops = &self.kb.ops;
        let mut text = String::new();
        for op in ops.changes_from_iso() {
            text.push_str(&format_op_directive(op.priority(), op.specifier(), op.name()));
            text.push('\n');
        }
        for clause in self.kb.clauses() {
            text.push_str(&clause.listing(ops));
            text.push('\n');
        }
        text
    }

    /// Saves the program to `path` in a form [`Engine::consult`] reads back.
    pub fn persist(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.program_text())
            .map_err(|e| Error::prolog(format!("cannot write {}: {e}", path.display())))
    }

    /// Text of the directive including `file`.
    pub fn include_directive(file: &str) -> String {
        format!("{}.", Term::include_directive(file))
    }

    // ---------------------------------------------------------------
    // operators and predicates

    pub fn define_operator(&mut self, priority: u16, specifier: &str, name: &str) -> Result<()> {
        let specifier: Specifier = specifier.parse()?;
        self.kb_mut().ops.define(priority, specifier, name)
    }

    pub fn current_operator(&self, priority: u16, specifier: &str, name: &str) -> bool {
        specifier
            .parse::<Specifier>()
            .is_ok_and(|s| self.kb.ops.contains(priority, s, name))
    }

    pub fn current_operators(&self) -> Vec<Operator> {
        self.kb.ops.operators()
    }

    pub fn operators(&self) -> &OperatorTable {
        &self.kb.ops
    }

    /// User predicates.
    pub fn predicates(&self) -> BTreeSet<Indicator> {
        self.kb.families().map(|(i, _)| i.clone()).collect()
    }

    pub fn builtins(&self) -> BTreeSet<Indicator> {
        BUILTINS
            .iter()
            .map(|&(name, arity)| Indicator::new(name, arity))
            .collect()
    }

    /// User predicates and built-ins.
    pub fn current_predicates(&self) -> BTreeSet<Indicator> {
        let mut all = self.predicates();
        all.extend(self.builtins());
        all
    }

    pub fn current_predicate(&self, functor: &str, arity: usize) -> bool {
        self.kb.family(functor, arity).is_some() || machine::is_builtin(functor, arity)
    }

    pub fn program_clauses(&self) -> Vec<Clause> {
        self.kb.clauses().cloned().collect()
    }

    /// Clauses grouped by predicate, families in insertion order.
    pub fn program_map(&self) -> IndexMap<Indicator, Vec<Clause>> {
        self.kb
            .families()
            .map(|(i, f)| (i.clone(), f.clauses().iter().map(|c| c.clause.clone()).collect()))
            .collect()
    }

    pub fn program_size(&self) -> usize {
        self.kb.size()
    }

    pub fn is_program_empty(&self) -> bool {
        self.program_size() == 0
    }

    /// Clears the program. Operator definitions are kept.
    pub fn dispose(&mut self) {
        self.kb_mut().clear();
    }

    // ---------------------------------------------------------------
    // queries

    pub fn query(&self, text: &str) -> Result<Query> {
        let goals = self.parse_goals(text)?;
        self.query_terms(&goals)
    }

    pub fn query_terms(&self, goals: &[Term]) -> Result<Query> {
        for goal in goals {
            if goal.is_number() || goal.is_list() {
                return Err(Error::prolog(format!("{goal} is not callable")));
            }
        }
        Ok(Query::new(
            self.kb.clone(),
            goals.to_vec(),
            self.logger.clone(),
            self.indexing,
        ))
    }

    /// First solution, or an empty map when there is none.
    pub fn query_one(&self, text: &str) -> Result<Bindings> {
        self.query(text)?.one()
    }

    pub fn query_n(&self, text: &str, n: usize) -> Result<Vec<Bindings>> {
        self.query(text)?.n_variables_solutions(n)
    }

    pub fn query_all(&self, text: &str) -> Result<Vec<Bindings>> {
        self.query(text)?.all()
    }

    pub fn query_builder(&self) -> QueryBuilder<'_> {
        QueryBuilder::new(self)
    }

    pub fn clause_builder(&mut self) -> ClauseBuilder<'_> {
        ClauseBuilder::new(self)
    }

    pub fn unify(&self, a: &Term, b: &Term) -> bool {
        a.unify(b)
    }

    pub fn info(&self) -> EngineInfo {
        EngineInfo::current()
    }
}

fn load_into(
    kb: &mut KnowledgeBase,
    text: &str,
    path: Option<&Path>,
    goals: &mut Vec<Term>,
    visited: &mut HashSet<PathBuf>,
) -> Result<()> {
    let SourceProgram {
        clauses,
        directives,
    } = parse_program_with(text, &mut kb.ops).map_err(|e| match path {
        Some(p) => e.context(p.display()),
        None => e,
    })?;
    for clause in clauses {
        kb.add(clause, false)?;
    }
    for goal in directives {
        // op/3 was applied while parsing
        if goal.has_indicator("op", 3) {
            continue;
        }
        let name = goal.functor().unwrap_or("");
        match (name, goal.arity().unwrap_or(0)) {
            ("include" | "consult" | "ensure_loaded", 1) => {
                let arg = goal.argument(0)?;
                let file = crate::convert::term_to_host(&arg)?.to_string();
                let mut target = PathBuf::from(&file);
                if target.is_relative() {
                    if let Some(dir) = path.and_then(Path::parent) {
                        target = dir.join(target);
                    }
                }
                if !target.exists() && target.extension().is_none() {
                    target.set_extension("pl");
                }
                let key = target.canonicalize().unwrap_or_else(|_| target.clone());
                if !visited.insert(key) {
                    continue;
                }
                let text = read_source(&target)?;
                load_into(kb, &text, Some(&target), goals, visited)?;
            }
            ("dynamic" | "discontiguous" | "multifile", 1) => {}
            _ => goals.push(goal),
        }
    }
    Ok(())
}
