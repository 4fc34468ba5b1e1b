use std::collections::{HashMap, HashSet};
use std::sync::{Arc, OnceLock};

use indexmap::IndexMap;

use super::machine::{compile, is_builtin, Cell, Key};
use crate::error::{Error, Result};
use crate::term::{Clause, Indicator, IndicatorRef, OperatorTable, Term};

pub(crate) struct StoredClause {
    pub clause: Clause,
    pub head: Cell,
    pub body: Vec<Cell>,
    pub nvars: usize,
    key: Option<Key>,
    variant: Term,
}

/// Clause identity up to variable renaming. Clauses are normalized on
/// construction, so dropping variable names is enough.
fn variant_key(clause: &Clause) -> Term {
    clause
        .to_term()
        .substitute(&|v| Some(Term::anonymous(v.position())))
}

impl StoredClause {
    fn new(clause: Clause) -> Self {
        let body = clause.body_array();
        let (head, body, nvars) = compile(clause.head(), &body);
        let key = match &head {
            Cell::Str(s) => Key::of(&s.args[0]),
            _ => None,
        };
        let variant = variant_key(&clause);
        StoredClause {
            clause,
            head,
            body,
            nvars,
            key,
            variant,
        }
    }
}

struct FirstArgIndex {
    buckets: HashMap<Key, Arc<[u32]>>,
    /// Clauses whose first argument is a variable; the fallback for keys
    /// without a bucket.
    unkeyed: Arc<[u32]>,
}

/// All clauses of one predicate, in order.
#[derive(Default)]
pub(crate) struct Family {
    clauses: Vec<Arc<StoredClause>>,
    variants: HashSet<Term>,
    all: OnceLock<Arc<[u32]>>,
    index: OnceLock<FirstArgIndex>,
}

impl Clone for Family {
    fn clone(&self) -> Self {
        Family {
            clauses: self.clauses.clone(),
            variants: self.variants.clone(),
            all: OnceLock::new(),
            index: OnceLock::new(),
        }
    }
}

impl Family {
    pub fn clauses(&self) -> &[Arc<StoredClause>] {
        &self.clauses
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn all(&self) -> Arc<[u32]> {
        self.all
            .get_or_init(|| (0..self.clauses.len() as u32).collect())
            .clone()
    }

    /// Clauses that may match a call whose first argument has `key`.
    pub fn candidates(&self, key: Option<&Key>) -> Arc<[u32]> {
        let Some(key) = key else {
            return self.all();
        };
        if self.clauses.len() < 2 {
            return self.all();
        }
        let index = self.index.get_or_init(|| self.build_index());
        index
            .buckets
            .get(key)
            .unwrap_or(&index.unkeyed)
            .clone()
    }

    fn build_index(&self) -> FirstArgIndex {
        let mut buckets: HashMap<Key, Vec<u32>> = HashMap::new();
        let mut unkeyed: Vec<u32> = Vec::new();
        for (i, clause) in self.clauses.iter().enumerate() {
            let i = i as u32;
            match &clause.key {
                None => {
                    unkeyed.push(i);
                    for bucket in buckets.values_mut() {
                        bucket.push(i);
                    }
                }
                Some(key) => buckets
                    .entry(key.clone())
                    .or_insert_with(|| unkeyed.clone())
                    .push(i),
            }
        }
        FirstArgIndex {
            buckets: buckets.into_iter().map(|(k, v)| (k, v.into())).collect(),
            unkeyed: unkeyed.into(),
        }
    }

    fn touched(&mut self) {
        self.all = OnceLock::new();
        self.index = OnceLock::new();
    }
}

#[derive(Clone, Default)]
pub(crate) struct KnowledgeBase {
    families: IndexMap<Indicator, Arc<Family>>,
    pub ops: OperatorTable,
}

fn check_modifiable(indicator: &Indicator) -> Result<()> {
    if is_builtin(indicator.functor(), indicator.arity()) {
        return Err(Error::prolog(format!(
            "cannot modify built-in predicate {indicator}"
        )));
    }
    Ok(())
}

impl KnowledgeBase {
    pub fn family(&self, name: &str, arity: usize) -> Option<&Arc<Family>> {
        self.families.get(&IndicatorRef(name, arity))
    }

    pub fn families(&self) -> impl Iterator<Item = (&Indicator, &Arc<Family>)> {
        self.families.iter()
    }

    pub fn clauses(&self) -> impl Iterator<Item = &Clause> {
        self.families
            .values()
            .flat_map(|f| f.clauses.iter().map(|c| &c.clause))
    }

    pub fn size(&self) -> usize {
        self.families.values().map(|f| f.len()).sum()
    }

    /// Adds `clause` unless a variant is already stored; reports whether it
    /// was added.
    pub fn add(&mut self, clause: Clause, front: bool) -> Result<bool> {
        if clause.is_directive() {
            return Err(Error::prolog(format!(
                "directive {clause} cannot be stored as a clause"
            )));
        }
        let indicator = clause.indicator();
        check_modifiable(&indicator)?;
        let stored = StoredClause::new(clause);
        let family = self.families.entry(indicator).or_default();
        if family.variants.contains(&stored.variant) {
            return Ok(false);
        }
        let family = Arc::make_mut(family);
        family.variants.insert(stored.variant.clone());
        if front {
            family.clauses.insert(0, Arc::new(stored));
        } else {
            family.clauses.push(Arc::new(stored));
        }
        family.touched();
        Ok(true)
    }

    /// Removes the first stored clause unifying with `clause`.
    pub fn retract(&mut self, clause: &Clause) -> Result<bool> {
        let indicator = clause.indicator();
        check_modifiable(&indicator)?;
        let Some(family) = self.families.get_mut(&indicator) else {
            return Ok(false);
        };
        let Some(pos) = family
            .clauses
            .iter()
            .position(|stored| unifies_apart(clause, &stored.clause))
        else {
            return Ok(false);
        };
        let family = Arc::make_mut(family);
        let removed = family.clauses.remove(pos);
        family.variants.remove(&removed.variant);
        family.touched();
        if family.clauses.is_empty() {
            self.families.shift_remove(&indicator);
        }
        Ok(true)
    }

    pub fn abolish(&mut self, indicator: &Indicator) -> Result<bool> {
        check_modifiable(indicator)?;
        Ok(self.families.shift_remove(indicator).is_some())
    }

    /// True when some stored clause unifies with `clause`.
    pub fn matches(&self, clause: &Clause) -> bool {
        self.family(clause.functor(), clause.arity())
            .is_some_and(|f| f.clauses.iter().any(|s| unifies_apart(clause, &s.clause)))
    }

    pub fn clear(&mut self) {
        self.families.clear();
    }
}

/// Unifies two clauses after renaming the stored one apart.
fn unifies_apart(probe: &Clause, stored: &Clause) -> bool {
    let probe = probe.to_term();
    let offset = probe
        .variables()
        .iter()
        .map(|v| v.position() + 1)
        .max()
        .unwrap_or(0);
    let stored = stored
        .to_term()
        .substitute(&|v| Some(Term::anonymous(v.position() + offset)));
    probe.unify(&stored)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_clause;

    fn kb(src: &[&str]) -> KnowledgeBase {
        let mut kb = KnowledgeBase::default();
        for s in src {
            kb.add(parse_clause(s).unwrap(), false).unwrap();
        }
        kb
    }

    #[test]
    fn variants_are_duplicates() {
        let mut kb = kb(&["p(X, Y) :- q(X, Y)"]);
        assert!(!kb.add(parse_clause("p(A, B) :- q(A, B)").unwrap(), false).unwrap());
        assert!(kb.add(parse_clause("p(A, A) :- q(A, A)").unwrap(), false).unwrap());
        assert_eq!(kb.size(), 2);
    }

    #[test]
    fn index_keeps_variable_clauses_in_order() {
        let kb = kb(&["f(a, 1)", "f(X, 2)", "f(b, 3)", "f(a, 4)"]);
        let fam = kb.family("f", 2).unwrap();
        let a = Key::Atom(Arc::from("a"));
        assert_eq!(&*fam.candidates(Some(&a)), &[0, 1, 3]);
        let c = Key::Atom(Arc::from("c"));
        assert_eq!(&*fam.candidates(Some(&c)), &[1]);
        assert_eq!(&*fam.candidates(None), &[0, 1, 2, 3]);
    }

    #[test]
    fn retract_by_unification() {
        let mut kb = kb(&["p(X) :- q(X)", "p(a)"]);
        assert!(kb.retract(&parse_clause("p(a)").unwrap()).unwrap());
        assert_eq!(kb.size(), 1);
        assert!(kb.clauses().next().unwrap().is_rule());
        assert!(kb.add(parse_clause("true").unwrap(), false).is_err());
    }
}
