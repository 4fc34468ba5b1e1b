//! Random term generators and small reference implementations used by
//! the integration and acceptance tests.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use termbridge::Term;

pub const ATOMS: &[&str] = &[
    "a",
    "b",
    "foo",
    "hello world",
    "it's",
    "[]",
    "{}",
    "-",
    "+",
    "*",
    "-->",
    ",",
    "|",
    "",
    "A",
    "_x",
    "x\ny",
    "tab\there",
    "back\\slash",
    "\"dq\"",
    "is",
    "mod",
    "caf\u{e9}",
    "!",
    ";",
];

pub const INFIX: &[&str] = &[
    "+", "-", "*", "/", "//", "mod", "**", "^", "=", "\\=", "==", "is", "<", ">=", "=..", ":-",
    "-->", ",", ";", "->", ":", "@<", "rem", "xor", "/\\", ">>",
];

pub const PREFIX: &[&str] = &["-", "+", "\\+", "\\", ":-", "?-", "dynamic"];

pub fn random_atom(rng: &mut impl Rng) -> Term {
    Term::atom_exact(ATOMS.choose(rng).unwrap())
}

pub fn random_number(rng: &mut impl Rng) -> Term {
    match rng.gen_range(0..4) {
        0 => Term::integer(rng.gen_range(-1000..1000)),
        1 => Term::integer(rng.gen()),
        2 => Term::long(rng.gen_range(i64::MIN..i64::MAX)),
        _ => {
            let x: f64 = rng.gen_range(-1e6..1e6);
            Term::double(if rng.gen_bool(0.3) { x.trunc() } else { x })
        }
    }
}

/// A random ground term, `depth` levels deep at most. Numbers that do
/// not survive printing exactly (single-precision floats, longs in 32-bit
/// range) are not produced.
pub fn random_ground(rng: &mut impl Rng, depth: u32) -> Term {
    let long_ok = |t: Term| match t {
        Term::Long(v) if i32::try_from(v).is_ok() => Term::integer(v as i32),
        other => other,
    };
    if depth == 0 || rng.gen_bool(0.3) {
        return if rng.gen_bool(0.5) {
            random_atom(rng)
        } else {
            long_ok(random_number(rng))
        };
    }
    let sub = |rng: &mut _| random_ground(rng, depth - 1);
    match rng.gen_range(0..6) {
        0 => {
            let op = INFIX.choose(rng).unwrap();
            Term::structure(op, [sub(rng), sub(rng)])
        }
        1 => {
            let op = PREFIX.choose(rng).unwrap();
            Term::structure(op, [sub(rng)])
        }
        2 | 3 => {
            let n = rng.gen_range(0..4);
            let items: Vec<Term> = (0..n).map(|_| sub(rng)).collect();
            let tail = rng.gen_bool(0.3).then(|| sub(rng));
            if items.is_empty() {
                Term::EmptyList
            } else {
                Term::list(items, tail)
            }
        }
        _ => {
            let functor = ATOMS.choose(rng).unwrap();
            let n = rng.gen_range(1..4);
            Term::structure(functor, (0..n).map(|_| sub(rng)).collect::<Vec<_>>())
        }
    }
}

// -------------------------------------------------------------------
// unification by substitution enumeration

/// Every subterm of `t`, including `t`.
pub fn subterms(t: &Term, out: &mut Vec<Term>) {
    out.push(t.clone());
    if t.is_compound() {
        for arg in t.arguments().unwrap() {
            subterms(&arg, out);
        }
    }
}

fn var_key(t: &Term) -> Option<String> {
    match t {
        Term::Variable(v) => Some(format!("{}#{}", v.name().unwrap_or("_"), v.position())),
        _ => None,
    }
}

/// Applies a triangular substitution to `t`. `None` when a binding chain
/// loops back on itself, which no finite term satisfies.
fn resolve(t: &Term, subst: &[(String, Term)], seen: &mut Vec<String>) -> Option<Term> {
    if let Some(key) = var_key(t) {
        return match subst.iter().find(|(k, _)| *k == key) {
            None => Some(t.clone()),
            Some((_, value)) => {
                if seen.contains(&key) {
                    return None;
                }
                seen.push(key);
                let r = resolve(value, subst, seen);
                seen.pop();
                r
            }
        };
    }
    if t.is_compound() {
        let args = t
            .arguments()
            .unwrap()
            .iter()
            .map(|a| resolve(a, subst, seen))
            .collect::<Option<Vec<_>>>()?;
        return Some(Term::structure(t.functor().unwrap(), args));
    }
    Some(t.clone())
}

/// Whether some finite substitution makes `s` and `t` identical.
///
/// A unifier in triangular form only binds variables to subterms of the
/// inputs, so trying every assignment of variable to subterm (or to
/// nothing) is exhaustive.
pub fn unifiable_by_enumeration(s: &Term, t: &Term) -> bool {
    let mut vars: Vec<String> = Vec::new();
    for v in s.variables().into_iter().chain(t.variables()) {
        let key = var_key(&Term::Variable(v)).unwrap();
        if !vars.contains(&key) {
            vars.push(key);
        }
    }
    let mut candidates = Vec::new();
    subterms(s, &mut candidates);
    subterms(t, &mut candidates);
    let mut choice = vec![0usize; vars.len()];
    let options = candidates.len() + 1;
    loop {
        let subst: Vec<(String, Term)> = vars
            .iter()
            .zip(&choice)
            .filter(|(_, &c)| c < candidates.len())
            .map(|(v, &c)| (v.clone(), candidates[c].clone()))
            .collect();
        if let (Some(a), Some(b)) = (
            resolve(s, &subst, &mut Vec::new()),
            resolve(t, &subst, &mut Vec::new()),
        ) {
            if a == b {
                return true;
            }
        }
        // next assignment
        let mut i = 0;
        loop {
            if i == choice.len() {
                return false;
            }
            choice[i] += 1;
            if choice[i] < options {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// All terms of depth at most two over atoms `a`, `b`, integers `1`, `2`,
/// variables `X`, `Y` and the binary functor `f`.
pub fn small_alphabet_terms() -> Vec<Term> {
    let leaves = vec![
        Term::atom("a"),
        Term::atom("b"),
        Term::integer(1),
        Term::integer(2),
        Term::variable("X", 0).unwrap(),
        Term::variable("Y", 1).unwrap(),
    ];
    let mut all = leaves.clone();
    for l in &leaves {
        for r in &leaves {
            all.push(Term::structure("f", [l.clone(), r.clone()]));
        }
    }
    all
}

// -------------------------------------------------------------------
// resolution by direct enumeration

#[derive(Debug, Clone, PartialEq)]
pub enum OracleClause {
    /// `pred(c).`
    Fact(usize, usize),
    /// `pred(X) :- body(X).`
    Pass(usize, usize),
    /// `pred(c) :- body(d).`
    Ground(usize, usize, usize, usize),
}

pub const PREDS: [&str; 4] = ["p", "q", "r", "s"];
pub const CONSTS: [&str; 5] = ["a", "b", "c", "d", "e"];

impl OracleClause {
    pub fn pred(&self) -> usize {
        match *self {
            OracleClause::Fact(p, _) | OracleClause::Pass(p, _) | OracleClause::Ground(p, ..) => p,
        }
    }

    pub fn text(&self) -> String {
        match *self {
            OracleClause::Fact(p, c) => format!("{}({})", PREDS[p], CONSTS[c]),
            OracleClause::Pass(p, b) => format!("{}(X) :- {}(X)", PREDS[p], PREDS[b]),
            OracleClause::Ground(p, c, b, d) => {
                format!("{}({}) :- {}({})", PREDS[p], CONSTS[c], PREDS[b], CONSTS[d])
            }
        }
    }
}

/// Values `X` takes, in order, when solving `pred(X)` (`arg == None`) or
/// `pred(c)` against `program` depth-first in clause order.
pub fn solve(program: &[OracleClause], pred: usize, arg: Option<usize>) -> Vec<usize> {
    let mut out = Vec::new();
    for clause in program.iter().filter(|c| c.pred() == pred) {
        match *clause {
            OracleClause::Fact(_, c) => {
                if arg.is_none_or(|a| a == c) {
                    out.push(c);
                }
            }
            OracleClause::Pass(_, body) => out.extend(solve(program, body, arg)),
            OracleClause::Ground(_, c, body, d) => {
                if arg.is_none_or(|a| a == c) {
                    let n = solve(program, body, Some(d)).len();
                    out.extend(std::iter::repeat_n(c, n));
                }
            }
        }
    }
    out
}

/// A random program; rules only call predicates later in `PREDS`, so
/// every query terminates.
pub fn random_program(rng: &mut impl Rng) -> Vec<(OracleClause, bool)> {
    let mut clauses = Vec::new();
    for _ in 0..rng.gen_range(0..=20) {
        let c = OracleClause::Fact(rng.gen_range(0..PREDS.len()), rng.gen_range(0..CONSTS.len()));
        clauses.push((c, rng.gen_bool(0.7)));
    }
    for _ in 0..rng.gen_range(0..=3) {
        let p = rng.gen_range(0..PREDS.len() - 1);
        let b = rng.gen_range(p + 1..PREDS.len());
        let c = if rng.gen_bool(0.5) {
            OracleClause::Pass(p, b)
        } else {
            OracleClause::Ground(p, rng.gen_range(0..CONSTS.len()), b, rng.gen_range(0..CONSTS.len()))
        };
        let at = rng.gen_range(0..=clauses.len());
        clauses.insert(at, (c, rng.gen_bool(0.7)));
    }
    clauses
}

/// Clause order after applying each clause with assertz (`true`) or
/// asserta (`false`); an identical clause already present is skipped.
pub fn stored_order(steps: &[(OracleClause, bool)]) -> Vec<OracleClause> {
    let mut out: Vec<OracleClause> = Vec::new();
    for (clause, at_end) in steps {
        if out.contains(clause) {
            continue;
        }
        if *at_end {
            out.push(clause.clone());
        } else {
            out.insert(0, clause.clone());
        }
    }
    out
}

// -------------------------------------------------------------------
// standard order classes

/// 0 variables, 1 atoms, 2 numbers, 3 compounds.
pub fn order_class(t: &Term) -> u8 {
    if t.is_variable() {
        0
    } else if t.is_number() {
        2
    } else if t.is_compound() {
        3
    } else {
        1
    }
}

pub fn random_mixed(rng: &mut impl Rng, n: usize) -> Vec<Term> {
    (0..n)
        .map(|i| match rng.gen_range(0..4) {
            0 => Term::variable(&format!("V{}", rng.gen_range(0..5)), i).unwrap(),
            1 => random_atom(rng),
            2 => random_number(rng),
            _ => {
                let n = rng.gen_range(1..3);
                Term::structure("g", (0..n).map(|_| random_atom(rng)).collect::<Vec<_>>())
            }
        })
        .collect()
}
