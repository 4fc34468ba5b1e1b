use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use super::Term;
use crate::error::{Error, Result};

/// Associativity and position code of an operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Specifier {
    Xfx,
    Xfy,
    Yfx,
    Fy,
    Fx,
    Xf,
    Yf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Fixity {
    Prefix,
    Infix,
    Postfix,
}

impl Specifier {
    pub const ALL: [Specifier; 7] = [
        Specifier::Xfx,
        Specifier::Xfy,
        Specifier::Yfx,
        Specifier::Fy,
        Specifier::Fx,
        Specifier::Xf,
        Specifier::Yf,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Specifier::Xfx => "xfx",
            Specifier::Xfy => "xfy",
            Specifier::Yfx => "yfx",
            Specifier::Fy => "fy",
            Specifier::Fx => "fx",
            Specifier::Xf => "xf",
            Specifier::Yf => "yf",
        }
    }

    pub(crate) fn fixity(self) -> Fixity {
        match self {
            Specifier::Xfx | Specifier::Xfy | Specifier::Yfx => Fixity::Infix,
            Specifier::Fy | Specifier::Fx => Fixity::Prefix,
            Specifier::Xf | Specifier::Yf => Fixity::Postfix,
        }
    }

    /// Maximum priorities allowed for the (left, right) arguments of an
    /// operator of priority `p`. Absent sides are reported as 0.
    pub(crate) fn argument_priorities(self, p: u16) -> (u16, u16) {
        let below = p.saturating_sub(1);
        match self {
            Specifier::Xfx => (below, below),
            Specifier::Xfy => (below, p),
            Specifier::Yfx => (p, below),
            Specifier::Fy => (0, p),
            Specifier::Fx => (0, below),
            Specifier::Xf => (below, 0),
            Specifier::Yf => (p, 0),
        }
    }
}

impl fmt::Display for Specifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Specifier {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Specifier::ALL
            .into_iter()
            .find(|spec| spec.as_str() == s)
            .ok_or_else(|| Error::prolog(format!("`{s}` is not an operator specifier")))
    }
}

/// Operator definition. Operators order by priority.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Operator {
    name: Arc<str>,
    specifier: Specifier,
    priority: u16,
}

impl Operator {
    pub fn new(priority: u16, specifier: Specifier, name: &str) -> Result<Self> {
        if priority > 1200 {
            return Err(Error::prolog(format!(
                "operator priority {priority} outside 0..=1200"
            )));
        }
        if name.is_empty() {
            return Err(Error::prolog("operator name must not be empty"));
        }
        Ok(Operator {
            name: Arc::from(name),
            specifier,
            priority,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn specifier(&self) -> Specifier {
        self.specifier
    }

    pub fn priority(&self) -> u16 {
        self.priority
    }
}

impl PartialOrd for Operator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Operator {
    fn cmp(&self, other: &Self) -> Ordering {
        self.priority
            .cmp(&other.priority)
            .then_with(|| self.name.cmp(&other.name))
            .then_with(|| self.specifier.cmp(&other.specifier))
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "op({}, {}, {})",
            self.priority,
            self.specifier,
            super::format_atom(&self.name)
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct Slots {
    prefix: Option<Operator>,
    infix: Option<Operator>,
    postfix: Option<Operator>,
}

/// Operator table keyed by name, one slot per fixity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorTable {
    ops: BTreeMap<Arc<str>, Slots>,
}

const ISO_OPERATORS: &[(u16, Specifier, &str)] = &[
    (1200, Specifier::Xfx, ":-"),
    (1200, Specifier::Xfx, "-->"),
    (1200, Specifier::Fx, ":-"),
    (1200, Specifier::Fx, "?-"),
    (1100, Specifier::Xfy, ";"),
    (1050, Specifier::Xfy, "->"),
    (1000, Specifier::Xfy, ","),
    (900, Specifier::Fy, "\\+"),
    (700, Specifier::Xfx, "="),
    (700, Specifier::Xfx, "\\="),
    (700, Specifier::Xfx, "=="),
    (700, Specifier::Xfx, "\\=="),
    (700, Specifier::Xfx, "@<"),
    (700, Specifier::Xfx, "@>"),
    (700, Specifier::Xfx, "@=<"),
    (700, Specifier::Xfx, "@>="),
    (700, Specifier::Xfx, "=.."),
    (700, Specifier::Xfx, "is"),
    (700, Specifier::Xfx, "=:="),
    (700, Specifier::Xfx, "=\\="),
    (700, Specifier::Xfx, "<"),
    (700, Specifier::Xfx, ">"),
    (700, Specifier::Xfx, "=<"),
    (700, Specifier::Xfx, ">="),
    (500, Specifier::Yfx, "+"),
    (500, Specifier::Yfx, "-"),
    (500, Specifier::Yfx, "/\\"),
    (500, Specifier::Yfx, "\\/"),
    (400, Specifier::Yfx, "*"),
    (400, Specifier::Yfx, "/"),
    (400, Specifier::Yfx, "//"),
    (400, Specifier::Yfx, "rem"),
    (400, Specifier::Yfx, "mod"),
    (400, Specifier::Yfx, "<<"),
    (400, Specifier::Yfx, ">>"),
    (200, Specifier::Xfx, "**"),
    (200, Specifier::Xfy, "^"),
    (200, Specifier::Fy, "-"),
    (200, Specifier::Fy, "+"),
    (200, Specifier::Fy, "\\"),
];

impl Default for OperatorTable {
    fn default() -> Self {
        OperatorTable::iso().clone()
    }
}

impl OperatorTable {
    /// Table without any operator.
    pub fn empty() -> Self {
        OperatorTable {
            ops: BTreeMap::new(),
        }
    }

    /// Shared ISO core table.
    pub fn iso() -> &'static OperatorTable {
        static ISO: OnceLock<OperatorTable> = OnceLock::new();
        ISO.get_or_init(|| {
            let mut table = OperatorTable::empty();
            for &(priority, spec, name) in ISO_OPERATORS {
                table
                    .define(priority, spec, name)
                    .expect("static operator table is valid");
            }
            table
        })
    }

    /// Defines (or with priority 0 removes) an operator.
    pub fn define(&mut self, priority: u16, specifier: Specifier, name: &str) -> Result<()> {
        let op = Operator::new(priority, specifier, name)?;
        if name == "," && !(priority == 1000 && specifier == Specifier::Xfy) {
            return Err(Error::prolog("the comma operator cannot be modified"));
        }
        let slots = self.ops.entry(Arc::from(name)).or_default();
        let slot = match specifier.fixity() {
            Fixity::Prefix => &mut slots.prefix,
            Fixity::Infix => &mut slots.infix,
            Fixity::Postfix => &mut slots.postfix,
        };
        *slot = (priority > 0).then_some(op);
        if slots.prefix.is_none() && slots.infix.is_none() && slots.postfix.is_none() {
            self.ops.remove(name);
        }
        Ok(())
    }

    pub fn prefix(&self, name: &str) -> Option<&Operator> {
        self.ops.get(name).and_then(|s| s.prefix.as_ref())
    }

    pub fn infix(&self, name: &str) -> Option<&Operator> {
        self.ops.get(name).and_then(|s| s.infix.as_ref())
    }

    pub fn postfix(&self, name: &str) -> Option<&Operator> {
        self.ops.get(name).and_then(|s| s.postfix.as_ref())
    }

    pub fn is_operator(&self, name: &str) -> bool {
        self.ops.contains_key(name)
    }

    /// True when exactly this definition is present.
    pub fn contains(&self, priority: u16, specifier: Specifier, name: &str) -> bool {
        let slot = match specifier.fixity() {
            Fixity::Prefix => self.prefix(name),
            Fixity::Infix => self.infix(name),
            Fixity::Postfix => self.postfix(name),
        };
        matches!(slot, Some(op) if op.priority == priority && op.specifier == specifier)
    }

    /// Every defined operator, ordered by priority.
    pub fn operators(&self) -> Vec<Operator> {
        let mut all: Vec<Operator> = self
            .ops
            .values()
            .flat_map(|s| [&s.prefix, &s.infix, &s.postfix])
            .flatten()
            .cloned()
            .collect();
        all.sort();
        all
    }

    /// Definitions that differ from the ISO table, including removals
    /// (reported with priority 0).
    pub fn changes_from_iso(&self) -> Vec<Operator> {
        let iso = OperatorTable::iso();
        let mut out: Vec<Operator> = self
            .operators()
            .into_iter()
            .filter(|op| !iso.contains(op.priority, op.specifier, &op.name))
            .collect();
        for op in iso.operators() {
            let present = match op.specifier.fixity() {
                Fixity::Prefix => self.prefix(&op.name),
                Fixity::Infix => self.infix(&op.name),
                Fixity::Postfix => self.postfix(&op.name),
            };
            if present.is_none() {
                out.push(Operator {
                    priority: 0,
                    ..op
                });
            }
        }
        out
    }

    /// Builds `op(left, right)` after checking `op` is an infix operator.
    pub fn expression(&self, left: Term, op: &str, right: Term) -> Result<Term> {
        if self.infix(op).is_none() {
            return Err(Error::prolog(format!("`{op}` is not an infix operator")));
        }
        Ok(Term::structure(op, [left, right]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iso_table_entries() {
        let ops = OperatorTable::iso();
        assert!(ops.contains(500, Specifier::Yfx, "+"));
        assert!(ops.contains(1200, Specifier::Fx, ":-"));
        assert!(ops.contains(1200, Specifier::Xfx, ":-"));
        assert!(ops.contains(200, Specifier::Fy, "-"));
        assert!(!ops.contains(400, Specifier::Yfx, "+"));
        assert!(ops.changes_from_iso().is_empty());
    }

    #[test]
    fn define_and_remove() {
        let mut ops = OperatorTable::default();
        ops.define(700, Specifier::Xfx, "===").unwrap();
        assert!(ops.infix("===").is_some());
        assert_eq!(ops.changes_from_iso().len(), 1);
        ops.define(0, Specifier::Xfx, "===").unwrap();
        assert!(!ops.is_operator("==="));
        ops.define(0, Specifier::Yfx, "mod").unwrap();
        let changes = ops.changes_from_iso();
        assert_eq!(changes.len(), 1);
        assert_eq!(changes[0].priority(), 0);
        assert!(ops.define(1201, Specifier::Xfx, "x").is_err());
        assert!(ops.define(10, Specifier::Xfx, ",").is_err());
    }

    #[test]
    fn operators_order_by_priority() {
        let a = Operator::new(200, Specifier::Xfx, "**").unwrap();
        let b = Operator::new(700, Specifier::Xfx, "=").unwrap();
        assert!(a < b);
        assert_eq!(a.to_string(), "op(200, xfx, '**')");
        assert_eq!("xfy".parse::<Specifier>().unwrap(), Specifier::Xfy);
        assert!("xyz".parse::<Specifier>().is_err());
    }
}
