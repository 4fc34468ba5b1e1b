//! Eval-style scripting facade.
//!
//! ```
//! use termbridge::{HostValue, ScriptSession};
//!
//! let mut session = ScriptSession::new();
//! assert!(session.eval("?- X is 5+3.").unwrap());
//! assert_eq!(session.get("X"), HostValue::Int(8));
//! ```

use std::io::Read;
use std::path::Path;

use indexmap::IndexMap;

use crate::convert::{host_to_term, term_to_host, HostValue};
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::query::{Bindings, HostBindings};
use crate::term::{Term, Variable};

/// Evaluates goal and program text against one engine and keeps the
/// bindings of the last successful goal.
#[derive(Debug, Default)]
pub struct ScriptSession {
    engine: Engine,
    terms: Bindings,
    bindings: HostBindings,
    preset: IndexMap<String, HostValue>,
    query_mode: bool,
}

impl ScriptSession {
    pub fn new() -> Self {
        ScriptSession::with_engine(Engine::new())
    }

    pub fn with_engine(engine: Engine) -> Self {
        ScriptSession {
            engine,
            ..ScriptSession::default()
        }
    }

    pub fn engine(&self) -> &Engine {
        &self.engine
    }

    pub fn engine_mut(&mut self) -> &mut Engine {
        &mut self.engine
    }

    pub fn into_engine(self) -> Engine {
        self.engine
    }

    /// In query mode text without a leading `?-` is also run as a goal.
    pub fn set_query_mode(&mut self, on: bool) {
        self.query_mode = on;
    }

    /// Runs `?- Goal.` text, or adds clause text to the program.
    ///
    /// For goals the result is whether a solution was found; for program
    /// text it is `true` once the text has been parsed and loaded.
    pub fn eval(&mut self, text: &str) -> Result<bool> {
        let trimmed = text.trim();
        if trimmed.starts_with("?-") || self.query_mode {
            self.eval_goal(trimmed)
        } else {
            self.engine.include_str(text)?;
            Ok(true)
        }
    }

    /// Loads program text from a reader, merging it into the program.
    pub fn eval_reader(&mut self, mut reader: impl Read) -> Result<bool> {
        let mut text = String::new();
        reader
            .read_to_string(&mut text)
            .map_err(|e| Error::prolog(format!("cannot read program: {e}")))?;
        self.engine.include_str(&text)?;
        Ok(true)
    }

    pub fn eval_file(&mut self, path: impl AsRef<Path>) -> Result<bool> {
        self.engine.include(path)?;
        Ok(true)
    }

    fn eval_goal(&mut self, text: &str) -> Result<bool> {
        self.terms.clear();
        self.bindings.clear();
        let preset = std::mem::take(&mut self.preset);
        let goals = self.engine.parse_goals(text)?;
        let goals: Vec<Term> = goals
            .iter()
            .map(|g| {
                g.substitute(&|v: &Variable| {
                    v.name()
                        .and_then(|n| preset.get(n))
                        .map(host_to_term)
                })
            })
            .collect();
        let mut query = self.engine.query_terms(&goals)?;
        let found = query.has_more_solutions()?;
        if !found {
            return Ok(false);
        }
        let solution = query.next_variables_solution()?;
        for (name, value) in preset {
            // pre-bound variables read back as what was put
            self.bindings.insert(name, value);
        }
        for (name, term) in solution {
            let host = term_to_host(&term).unwrap_or(HostValue::Null);
            self.bindings.insert(name.clone(), host);
            self.terms.insert(name, term);
        }
        Ok(true)
    }

    /// Host value bound to `name` by the last goal; `Null` when unbound.
    pub fn get(&self, name: &str) -> HostValue {
        self.bindings.get(name).cloned().unwrap_or(HostValue::Null)
    }

    /// Term bound to `name` by the last goal.
    pub fn get_term(&self, name: &str) -> Option<&Term> {
        self.terms.get(name)
    }

    pub fn bindings(&self) -> &HostBindings {
        &self.bindings
    }

    /// Pre-binds `name` for the next goal.
    pub fn put(&mut self, name: &str, value: impl Into<HostValue>) {
        self.preset.insert(name.to_string(), value.into());
    }
}
