//! An embeddable logic-programming engine with a typed bridge between host
//! values and Prolog terms.
//!
//! ```
//! use termbridge::Engine;
//!
//! let mut engine = Engine::new();
//! engine.asserta("sample('hello wolrd')").unwrap();
//! let solution = engine.query("sample(X)").unwrap().one().unwrap();
//! assert_eq!(solution["X"].to_string(), "'hello wolrd'");
//! ```

pub mod bench;
pub mod builder;
pub mod cli;
pub mod convert;
pub mod engine;
pub mod error;
pub mod logger;
pub mod parser;
pub mod query;
pub mod script;
pub mod term;

pub use builder::{ClauseBuilder, GoalSource, QueryBuilder};
pub use convert::{HostKind, HostObject, HostValue};
pub use engine::{Engine, EngineInfo, Stats};
pub use error::{Error, ErrorKind, Result};
pub use logger::{Level, Logger};
pub use parser::{
    parse_clause, parse_list, parse_program, parse_structure, parse_term, parse_terms,
    SourceProgram,
};
pub use query::{Bindings, HostBindings, Query, QueryState};
pub use script::ScriptSession;
pub use term::{
    Clause, Indicator, NumberKind, Numeric, Operator, OperatorTable, Specifier, Term, TermType,
    Variable,
};
