//! Resolution machine: depth-first SLD resolution with a binding heap, a
//! trail, continuation frames and a choice-point stack.
//!
//! Clause bodies are stored as templates whose variables are frame slots
//! (`Local`); entering a clause reserves fresh heap cells for the slots and
//! unifies the head template against the goal without copying it.

use std::collections::{HashMap, HashSet};
use std::rc::Rc;
use std::sync::Arc;

use super::arith::{self, Num};
use super::kb::{Family, KnowledgeBase, StoredClause};
use super::Stats;
use crate::error::{Error, Result};
use crate::logger::Logger;
use crate::term::{compare_terms, Cons, Indicator, Reference, Structure, Term, Variable};

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Cell {
    /// Heap variable.
    Var(usize),
    /// Clause-template slot.
    Local(u32),
    Atom(Arc<str>),
    Int(i32),
    Long(i64),
    Float(f32),
    Double(f64),
    Str(Arc<Compound>),
    Cons(Arc<ConsCell>),
    Obj(Reference),
    /// Internal control goal: drop choice points above the given height.
    CutTo(usize),
}

#[derive(Debug, PartialEq)]
pub(crate) struct Compound {
    pub name: Arc<str>,
    pub args: Box<[Cell]>,
    ground: bool,
}

#[derive(Debug, PartialEq)]
pub(crate) struct ConsCell {
    pub head: Cell,
    pub tail: Cell,
    ground: bool,
}

impl Drop for ConsCell {
    fn drop(&mut self) {
        let mut tail = std::mem::replace(&mut self.tail, Cell::Int(0));
        while let Cell::Cons(arc) = tail {
            match Arc::try_unwrap(arc) {
                Ok(mut cell) => tail = std::mem::replace(&mut cell.tail, Cell::Int(0)),
                Err(_) => break,
            }
        }
    }
}

impl Cell {
    pub fn compound(name: Arc<str>, args: Vec<Cell>) -> Cell {
        if args.is_empty() {
            return Cell::Atom(name);
        }
        if &*name == "." && args.len() == 2 {
            let mut it = args.into_iter();
            let head = it.next().unwrap();
            return Cell::cons(head, it.next().unwrap());
        }
        let ground = args.iter().all(Cell::is_ground_template);
        Cell::Str(Arc::new(Compound {
            name,
            args: args.into_boxed_slice(),
            ground,
        }))
    }

    pub fn cons(head: Cell, tail: Cell) -> Cell {
        let ground = head.is_ground_template() && tail.is_ground_template();
        Cell::Cons(Arc::new(ConsCell { head, tail, ground }))
    }

    /// True when the cell holds no variables or slots at construction.
    fn is_ground_template(&self) -> bool {
        match self {
            Cell::Var(_) | Cell::Local(_) => false,
            Cell::Str(s) => s.ground,
            Cell::Cons(c) => c.ground,
            _ => true,
        }
    }

    pub fn from_term(term: &Term, var: &mut dyn FnMut(&Variable) -> Cell) -> Cell {
        match term {
            Term::Atom(name) => Cell::Atom(name.clone()),
            Term::Integer(v) => Cell::Int(*v),
            Term::Long(v) => Cell::Long(*v),
            Term::Float(v) => Cell::Float(*v),
            Term::Double(v) => Cell::Double(*v),
            Term::Variable(v) => var(v),
            Term::Structure(s) => Cell::compound(
                s.functor.clone(),
                s.args.iter().map(|a| Cell::from_term(a, var)).collect(),
            ),
            Term::List(_) => {
                let mut heads = Vec::new();
                let mut cur = term;
                while let Term::List(c) = cur {
                    heads.push(Cell::from_term(&c.head, var));
                    cur = &c.tail;
                }
                let mut acc = Cell::from_term(cur, var);
                while let Some(head) = heads.pop() {
                    acc = Cell::cons(head, acc);
                }
                acc
            }
            Term::Reference(r) => Cell::Obj(r.clone()),
            constant => Cell::Atom(Arc::from(constant.atom_name().unwrap())),
        }
    }

    /// Name and arguments of a callable cell.
    fn callable(&self) -> Option<(&str, &[Cell])> {
        match self {
            Cell::Atom(name) => Some((name, &[])),
            Cell::Str(s) => Some((&s.name, &s.args)),
            _ => None,
        }
    }
}

fn atom_term(name: &Arc<str>) -> Term {
    match &**name {
        "nil" | "true" | "fail" | "!" | "[]" => Term::atom_exact(name),
        _ => Term::Atom(name.clone()),
    }
}

fn atomic_eq(a: &Cell, b: &Cell) -> bool {
    match (a, b) {
        (Cell::Atom(x), Cell::Atom(y)) => x == y,
        (Cell::Int(x), Cell::Int(y)) => x == y,
        (Cell::Long(x), Cell::Long(y)) => x == y,
        (Cell::Float(x), Cell::Float(y)) => x.to_bits() == y.to_bits(),
        (Cell::Double(x), Cell::Double(y)) => x.to_bits() == y.to_bits(),
        (Cell::Obj(x), Cell::Obj(y)) => x.id() == y.id(),
        _ => false,
    }
}

/// First-argument index key.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) enum Key {
    Atom(Arc<str>),
    Int(i32),
    Long(i64),
    Float(u32),
    Double(u64),
    Functor(Arc<str>, usize),
    Obj(u64),
}

impl Key {
    /// Key of a dereferenced cell; `None` for variables.
    pub fn of(cell: &Cell) -> Option<Key> {
        Some(match cell {
            Cell::Atom(a) => Key::Atom(a.clone()),
            Cell::Int(v) => Key::Int(*v),
            Cell::Long(v) => Key::Long(*v),
            Cell::Float(v) => Key::Float(v.to_bits()),
            Cell::Double(v) => Key::Double(v.to_bits()),
            Cell::Str(s) => Key::Functor(s.name.clone(), s.args.len()),
            Cell::Cons(_) => Key::Functor(Arc::from("."), 2),
            Cell::Obj(r) => Key::Obj(r.id()),
            Cell::Var(_) | Cell::Local(_) | Cell::CutTo(_) => return None,
        })
    }
}

struct Frame {
    goal: Cell,
    barrier: usize,
    next: Option<Rc<Frame>>,
}

impl Drop for Frame {
    fn drop(&mut self) {
        let mut next = self.next.take();
        while let Some(rc) = next {
            match Rc::try_unwrap(rc) {
                Ok(mut frame) => next = frame.next.take(),
                Err(_) => break,
            }
        }
    }
}

enum Alt {
    /// Remaining candidate clauses for a call.
    Clauses {
        goal: Cell,
        family: Arc<Family>,
        candidates: Arc<[u32]>,
        pos: usize,
    },
    /// Resume with a goal (second branch of a disjunction).
    Goal { goal: Cell, barrier: usize },
    /// Undo scope; never resumed.
    Scope,
}

struct Choice {
    alt: Alt,
    trail_len: usize,
    heap_len: usize,
    next: Option<Rc<Frame>>,
}

pub(crate) const BUILTINS: &[(&str, usize)] = &[
    ("true", 0),
    ("fail", 0),
    ("false", 0),
    ("!", 0),
    (",", 2),
    (";", 2),
    ("->", 2),
    ("\\+", 1),
    ("not", 1),
    ("call", 1),
    ("call", 2),
    ("call", 3),
    ("call", 4),
    ("call", 5),
    ("call", 6),
    ("call", 7),
    ("call", 8),
    ("=", 2),
    ("\\=", 2),
    ("==", 2),
    ("\\==", 2),
    ("@<", 2),
    ("@>", 2),
    ("@=<", 2),
    ("@>=", 2),
    ("compare", 3),
    ("var", 1),
    ("nonvar", 1),
    ("atom", 1),
    ("number", 1),
    ("integer", 1),
    ("float", 1),
    ("atomic", 1),
    ("compound", 1),
    ("callable", 1),
    ("is_list", 1),
    ("ground", 1),
    ("is", 2),
    ("=:=", 2),
    ("=\\=", 2),
    ("<", 2),
    (">", 2),
    ("=<", 2),
    (">=", 2),
];

pub(crate) fn is_builtin(name: &str, arity: usize) -> bool {
    BUILTINS.iter().any(|&(n, a)| n == name && a == arity)
}

/// After this many steps a single unification starts remembering visited
/// compound pairs, so unifying cyclic bindings terminates.
const CYCLE_GUARD: usize = 100_000;

pub(crate) struct Machine {
    kb: Arc<KnowledgeBase>,
    logger: Logger,
    indexing: bool,
    heap: Vec<Option<Cell>>,
    trail: Vec<usize>,
    choices: Vec<Choice>,
    cont: Option<Rc<Frame>>,
    scratch: Vec<(Cell, Cell)>,
    warned: HashSet<Indicator>,
    stats: Stats,
    started: bool,
    done: bool,
}

impl Machine {
    pub fn new(kb: Arc<KnowledgeBase>, logger: Logger, indexing: bool) -> Self {
        Machine {
            kb,
            logger,
            indexing,
            heap: Vec::new(),
            trail: Vec::new(),
            choices: Vec::new(),
            cont: None,
            scratch: Vec::new(),
            warned: HashSet::new(),
            stats: Stats::default(),
            started: false,
            done: false,
        }
    }

    /// Loads the goal conjunction; returns the heap cell of every distinct
    /// goal variable in first-occurrence order.
    pub fn load(&mut self, goals: &[Term]) -> Vec<(Variable, usize)> {
        let mut vars: Vec<(Variable, usize)> = Vec::new();
        let mut cells = Vec::with_capacity(goals.len());
        for goal in goals {
            let heap = &mut self.heap;
            // named variables are shared by name across goals
            let cell = Cell::from_term(goal, &mut |v| {
                let same = |w: &Variable| match (v.name(), w.name()) {
                    (Some(a), Some(b)) if !v.is_anonymous() && !w.is_anonymous() => a == b,
                    _ => w == v,
                };
                if let Some((_, i)) = vars.iter().find(|(w, _)| same(w)) {
                    return Cell::Var(*i);
                }
                heap.push(None);
                let i = heap.len() - 1;
                vars.push((v.clone(), i));
                Cell::Var(i)
            });
            cells.push(cell);
        }
        let mut cont = None;
        for cell in cells.into_iter().rev() {
            cont = Some(Rc::new(Frame {
                goal: cell,
                barrier: 0,
                next: cont,
            }));
        }
        self.cont = cont;
        vars
    }

    pub fn stats(&self) -> Stats {
        self.stats
    }

    /// Advances to the next solution.
    pub fn next_solution(&mut self) -> Result<bool> {
        if self.done {
            return Ok(false);
        }
        if self.started && !self.backtrack() {
            self.done = true;
            return Ok(false);
        }
        self.started = true;
        let result = self.run();
        if !matches!(result, Ok(true)) {
            self.done = true;
        }
        result
    }

    fn run(&mut self) -> Result<bool> {
        loop {
            let Some(frame) = self.cont.take() else {
                return Ok(true);
            };
            self.cont = frame.next.clone();
            let goal = self.deref(&frame.goal);
            // a variable goal behaves like call/1: cut inside it is local
            let barrier = if matches!(frame.goal, Cell::Var(_)) {
                self.choices.len()
            } else {
                frame.barrier
            };
            drop(frame);
            if !self.step(goal, barrier)? && !self.backtrack() {
                return Ok(false);
            }
        }
    }

    // ---------------------------------------------------------------
    // bindings

    pub fn deref(&self, cell: &Cell) -> Cell {
        let mut cur = cell.clone();
        while let Cell::Var(i) = cur {
            match &self.heap[i] {
                Some(bound) => cur = bound.clone(),
                None => break,
            }
        }
        cur
    }

    fn bind(&mut self, var: usize, value: Cell) {
        self.heap[var] = Some(value);
        if self.choices.last().is_some_and(|c| var < c.heap_len) {
            self.trail.push(var);
        }
    }

    fn undo(&mut self, trail_len: usize, heap_len: usize) {
        while self.trail.len() > trail_len {
            let var = self.trail.pop().unwrap();
            if var < self.heap.len() {
                self.heap[var] = None;
            }
        }
        self.heap.truncate(heap_len);
    }

    fn push_choice(&mut self, alt: Alt, next: Option<Rc<Frame>>) {
        if !matches!(alt, Alt::Scope) {
            self.stats.choice_points += 1;
        }
        self.choices.push(Choice {
            alt,
            trail_len: self.trail.len(),
            heap_len: self.heap.len(),
            next,
        });
    }

    fn push_goal(&mut self, goal: Cell, barrier: usize) {
        let next = self.cont.take();
        self.cont = Some(Rc::new(Frame {
            goal,
            barrier,
            next,
        }));
    }

    pub fn unify(&mut self, a: Cell, b: Cell) -> bool {
        let mut stack = std::mem::take(&mut self.scratch);
        stack.clear();
        stack.push((a, b));
        let mut steps = 0usize;
        let mut seen: HashSet<(usize, usize)> = HashSet::new();
        let mut ok = true;
        while let Some((a, b)) = stack.pop() {
            let a = self.deref(&a);
            let b = self.deref(&b);
            steps += 1;
            match (&a, &b) {
                (Cell::Var(i), Cell::Var(j)) => {
                    if i != j {
                        // younger cell points at the older one
                        if i < j {
                            self.bind(*j, a.clone());
                        } else {
                            self.bind(*i, b.clone());
                        }
                    }
                }
                (Cell::Var(i), _) => self.bind(*i, b.clone()),
                (_, Cell::Var(j)) => self.bind(*j, a.clone()),
                (Cell::Str(x), Cell::Str(y)) => {
                    if Arc::ptr_eq(x, y) {
                        continue;
                    }
                    if x.name != y.name || x.args.len() != y.args.len() {
                        ok = false;
                        break;
                    }
                    if steps > CYCLE_GUARD
                        && !seen.insert((Arc::as_ptr(x) as usize, Arc::as_ptr(y) as usize))
                    {
                        continue;
                    }
                    for (p, q) in x.args.iter().zip(y.args.iter()).rev() {
                        stack.push((p.clone(), q.clone()));
                    }
                }
                (Cell::Cons(x), Cell::Cons(y)) => {
                    if Arc::ptr_eq(x, y) {
                        continue;
                    }
                    if steps > CYCLE_GUARD
                        && !seen.insert((Arc::as_ptr(x) as usize, Arc::as_ptr(y) as usize))
                    {
                        continue;
                    }
                    stack.push((x.tail.clone(), y.tail.clone()));
                    stack.push((x.head.clone(), y.head.clone()));
                }
                _ => {
                    if !atomic_eq(&a, &b) {
                        ok = false;
                        break;
                    }
                }
            }
        }
        stack.clear();
        self.scratch = stack;
        ok
    }

    /// Instantiates a clause template with its slots at `base`.
    fn build(&self, t: &Cell, base: usize) -> Cell {
        match t {
            Cell::Local(n) => Cell::Var(base + *n as usize),
            Cell::Str(s) if !s.ground => Cell::Str(Arc::new(Compound {
                name: s.name.clone(),
                args: s.args.iter().map(|a| self.build(a, base)).collect(),
                ground: false,
            })),
            Cell::Cons(c) if !c.ground => {
                let mut heads = Vec::new();
                let mut cur = t;
                while let Cell::Cons(c) = cur {
                    if c.ground {
                        break;
                    }
                    heads.push(self.build(&c.head, base));
                    cur = &c.tail;
                }
                let mut acc = self.build(cur, base);
                while let Some(head) = heads.pop() {
                    acc = Cell::Cons(Arc::new(ConsCell {
                        head,
                        tail: acc,
                        ground: false,
                    }));
                }
                acc
            }
            other => other.clone(),
        }
    }

    /// Unifies a head template (slots at `base`) with a goal argument.
    fn unify_head(&mut self, t: &Cell, base: usize, term: &Cell) -> bool {
        match t {
            Cell::Local(n) => {
                let slot = base + *n as usize;
                if self.heap[slot].is_none() {
                    // first occurrence: fresh slot, no trail entry needed
                    let value = match term {
                        Cell::Var(_) => self.deref(term),
                        other => other.clone(),
                    };
                    if value != Cell::Var(slot) {
                        self.heap[slot] = Some(value);
                    }
                    true
                } else {
                    self.unify(Cell::Var(slot), term.clone())
                }
            }
            Cell::Str(ts) if !ts.ground => match self.deref(term) {
                Cell::Var(v) => {
                    let built = self.build(t, base);
                    self.bind(v, built);
                    true
                }
                Cell::Str(s) => {
                    if s.name != ts.name || s.args.len() != ts.args.len() {
                        return false;
                    }
                    ts.args
                        .iter()
                        .zip(s.args.iter())
                        .all(|(ta, sa)| self.unify_head(ta, base, sa))
                }
                _ => false,
            },
            Cell::Cons(tc) if !tc.ground => match self.deref(term) {
                Cell::Var(v) => {
                    let built = self.build(t, base);
                    self.bind(v, built);
                    true
                }
                Cell::Cons(c) => {
                    self.unify_head(&tc.head, base, &c.head)
                        && self.unify_head(&tc.tail, base, &c.tail)
                }
                _ => false,
            },
            Cell::Str(_) | Cell::Cons(_) => self.unify(t.clone(), term.clone()),
            atomic => match self.deref(term) {
                Cell::Var(v) => {
                    self.bind(v, atomic.clone());
                    true
                }
                other => atomic_eq(atomic, &other),
            },
        }
    }

    /// Runs `f` and undoes every binding it made.
    fn probe(&mut self, f: impl FnOnce(&mut Self) -> bool) -> bool {
        self.push_choice(Alt::Scope, None);
        let ok = f(self);
        let scope = self.choices.pop().unwrap();
        self.undo(scope.trail_len, scope.heap_len);
        ok
    }

    // ---------------------------------------------------------------
    // backtracking

    fn backtrack(&mut self) -> bool {
        loop {
            let Some(top) = self.choices.last() else {
                return false;
            };
            let (trail_len, heap_len) = (top.trail_len, top.heap_len);
            self.undo(trail_len, heap_len);
            self.stats.backtracks += 1;
            let height = self.choices.len() - 1;
            let top = self.choices.last_mut().unwrap();
            match &mut top.alt {
                Alt::Goal { .. } | Alt::Scope => {
                    let choice = self.choices.pop().unwrap();
                    if let Alt::Goal { goal, barrier } = choice.alt {
                        self.cont = choice.next;
                        self.push_goal(goal, barrier);
                        return true;
                    }
                }
                Alt::Clauses {
                    goal,
                    family,
                    candidates,
                    pos,
                } => {
                    let index = candidates[*pos] as usize;
                    let goal = goal.clone();
                    let family = family.clone();
                    *pos += 1;
                    let next = if *pos == candidates.len() {
                        self.choices.pop().unwrap().next
                    } else {
                        top.next.clone()
                    };
                    self.cont = next;
                    if self.enter(&goal, &family.clauses()[index], height) {
                        return true;
                    }
                }
            }
        }
    }

    fn enter(&mut self, goal: &Cell, clause: &StoredClause, barrier: usize) -> bool {
        let base = self.heap.len();
        self.heap.resize(base + clause.nvars, None);
        if let (Cell::Str(h), Cell::Str(g)) = (&clause.head, goal) {
            for (t, a) in h.args.iter().zip(g.args.iter()) {
                if !self.unify_head(t, base, a) {
                    return false;
                }
            }
        }
        for g in clause.body.iter().rev() {
            let cell = self.build(g, base);
            self.push_goal(cell, barrier);
        }
        true
    }

    // ---------------------------------------------------------------
    // goals

    fn step(&mut self, goal: Cell, barrier: usize) -> Result<bool> {
        let (name, args) = match &goal {
            Cell::Var(_) => return Err(Error::prolog("goal is not sufficiently instantiated")),
            Cell::CutTo(height) => {
                self.choices.truncate(*height);
                return Ok(true);
            }
            other => match other.callable() {
                Some(c) => c,
                None => {
                    let shown = self.term_of(other)?;
                    return Err(Error::prolog(format!("{shown} is not callable")));
                }
            },
        };
        match (name, args.len()) {
            ("true", 0) => Ok(true),
            ("fail" | "false", 0) => Ok(false),
            ("!", 0) => {
                self.stats.cuts += 1;
                self.choices.truncate(barrier);
                Ok(true)
            }
            (",", 2) => {
                let (a, b) = (args[0].clone(), args[1].clone());
                self.push_goal(b, barrier);
                self.push_goal(a, barrier);
                Ok(true)
            }
            (";", 2) => {
                let left = self.deref(&args[0]);
                let right = args[1].clone();
                if let Cell::Str(s) = &left {
                    if &*s.name == "->" && s.args.len() == 2 {
                        let height = self.choices.len();
                        self.push_choice(
                            Alt::Goal {
                                goal: right,
                                barrier,
                            },
                            self.cont.clone(),
                        );
                        self.push_goal(s.args[1].clone(), barrier);
                        self.push_goal(Cell::CutTo(height), barrier);
                        self.push_goal(s.args[0].clone(), height + 1);
                        return Ok(true);
                    }
                }
                self.push_choice(
                    Alt::Goal {
                        goal: right,
                        barrier,
                    },
                    self.cont.clone(),
                );
                self.push_goal(left, barrier);
                Ok(true)
            }
            ("->", 2) => {
                let height = self.choices.len();
                self.push_goal(args[1].clone(), barrier);
                self.push_goal(Cell::CutTo(height), barrier);
                self.push_goal(args[0].clone(), height);
                Ok(true)
            }
            ("\\+" | "not", 1) => {
                let height = self.choices.len();
                let inner = args[0].clone();
                self.push_choice(
                    Alt::Goal {
                        goal: Cell::Atom(Arc::from("true")),
                        barrier,
                    },
                    self.cont.clone(),
                );
                self.cont = None;
                self.push_goal(Cell::Atom(Arc::from("fail")), barrier);
                self.push_goal(Cell::CutTo(height), barrier);
                self.push_goal(inner, height + 1);
                Ok(true)
            }
            ("call", n) if n >= 1 => {
                let target = self.deref(&args[0]);
                let extra = &args[1..];
                let goal = if extra.is_empty() {
                    target
                } else {
                    match &target {
                        Cell::Atom(f) => Cell::compound(f.clone(), extra.to_vec()),
                        Cell::Str(s) => {
                            let mut all = s.args.to_vec();
                            all.extend_from_slice(extra);
                            Cell::compound(s.name.clone(), all)
                        }
                        Cell::Var(_) => {
                            return Err(Error::prolog("call/N: goal is not sufficiently instantiated"))
                        }
                        other => {
                            let shown = self.term_of(other)?;
                            return Err(Error::prolog(format!("{shown} is not callable")));
                        }
                    }
                };
                if matches!(goal, Cell::Var(_)) {
                    return Err(Error::prolog("call/1: goal is not sufficiently instantiated"));
                }
                let height = self.choices.len();
                self.push_goal(goal, height);
                Ok(true)
            }
            ("=", 2) => {
                let (a, b) = (args[0].clone(), args[1].clone());
                Ok(self.unify(a, b))
            }
            ("\\=", 2) => {
                let (a, b) = (args[0].clone(), args[1].clone());
                Ok(!self.probe(|m| m.unify(a, b)))
            }
            ("==" | "\\==" | "@<" | "@>" | "@=<" | "@>=", 2) => {
                let ord = self.compare(&args[0], &args[1])?;
                Ok(match name {
                    "==" => ord.is_eq(),
                    "\\==" => ord.is_ne(),
                    "@<" => ord.is_lt(),
                    "@>" => ord.is_gt(),
                    "@=<" => ord.is_le(),
                    _ => ord.is_ge(),
                })
            }
            ("compare", 3) => {
                let ord = self.compare(&args[1], &args[2])?;
                let symbol = match ord {
                    std::cmp::Ordering::Less => "<",
                    std::cmp::Ordering::Equal => "=",
                    std::cmp::Ordering::Greater => ">",
                };
                let a = args[0].clone();
                Ok(self.unify(a, Cell::Atom(Arc::from(symbol))))
            }
            (
                "var" | "nonvar" | "atom" | "number" | "integer" | "float" | "atomic" | "compound"
                | "callable" | "is_list" | "ground",
                1,
            ) => Ok(self.type_check(name, &args[0])),
            ("is", 2) => {
                let value = self.eval(&args[1])?.to_cell();
                let target = args[0].clone();
                Ok(self.unify(target, value))
            }
            ("=:=" | "=\\=" | "<" | ">" | "=<" | ">=", 2) => {
                let a = self.eval(&args[0])?;
                let b = self.eval(&args[1])?;
                let ord = arith::compare_values(a, b);
                Ok(match name {
                    "=:=" => ord == Some(std::cmp::Ordering::Equal),
                    "=\\=" => ord != Some(std::cmp::Ordering::Equal),
                    "<" => ord == Some(std::cmp::Ordering::Less),
                    ">" => ord == Some(std::cmp::Ordering::Greater),
                    "=<" => ord.is_some_and(|o| o.is_le()),
                    _ => ord.is_some_and(|o| o.is_ge()),
                })
            }
            _ => Ok(self.call_user(&goal)),
        }
    }

    fn call_user(&mut self, goal: &Cell) -> bool {
        let (name, args) = goal.callable().unwrap();
        let kb = self.kb.clone();
        let Some(family) = kb.family(name, args.len()) else {
            let indicator = Indicator::new(name, args.len());
            if self.warned.insert(indicator.clone()) {
                self.logger
                    .warn("engine", format!("unknown predicate {indicator}, failing"));
            }
            return false;
        };
        self.stats.inferences += 1;
        let candidates = if self.indexing && !args.is_empty() {
            let first = self.deref(&args[0]);
            family.candidates(Key::of(&first).as_ref())
        } else {
            family.all()
        };
        match candidates.len() {
            0 => false,
            1 => {
                let barrier = self.choices.len();
                self.enter(goal, &family.clauses()[candidates[0] as usize], barrier)
            }
            _ => {
                let barrier = self.choices.len();
                let first = candidates[0] as usize;
                self.push_choice(
                    Alt::Clauses {
                        goal: goal.clone(),
                        family: family.clone(),
                        candidates,
                        pos: 1,
                    },
                    self.cont.clone(),
                );
                self.enter(goal, &family.clauses()[first], barrier)
            }
        }
    }

    fn type_check(&self, name: &str, arg: &Cell) -> bool {
        let cell = self.deref(arg);
        match name {
            "var" => matches!(cell, Cell::Var(_)),
            "nonvar" => !matches!(cell, Cell::Var(_)),
            "atom" => matches!(cell, Cell::Atom(_)),
            "number" => matches!(
                cell,
                Cell::Int(_) | Cell::Long(_) | Cell::Float(_) | Cell::Double(_)
            ),
            "integer" => matches!(cell, Cell::Int(_) | Cell::Long(_)),
            "float" => matches!(cell, Cell::Float(_) | Cell::Double(_)),
            "atomic" => !matches!(
                cell,
                Cell::Var(_) | Cell::Str(_) | Cell::Cons(_) | Cell::Obj(_)
            ),
            "compound" => matches!(cell, Cell::Str(_) | Cell::Cons(_) | Cell::Obj(_)),
            "callable" => matches!(cell, Cell::Atom(_) | Cell::Str(_)),
            "is_list" => {
                let mut cur = cell;
                loop {
                    match cur {
                        Cell::Cons(c) => cur = self.deref(&c.tail),
                        Cell::Atom(a) => return &*a == "[]",
                        _ => return false,
                    }
                }
            }
            _ => self.is_ground(&cell),
        }
    }

    fn is_ground(&self, cell: &Cell) -> bool {
        let mut stack = vec![cell.clone()];
        let mut seen = HashSet::new();
        while let Some(c) = stack.pop() {
            if let Cell::Var(i) = c {
                if !seen.insert(i) {
                    continue;
                }
            }
            match self.deref(&c) {
                Cell::Var(_) => return false,
                Cell::Str(s) => stack.extend(s.args.iter().cloned()),
                Cell::Cons(c) => {
                    stack.push(c.head.clone());
                    stack.push(c.tail.clone());
                }
                _ => {}
            }
        }
        true
    }

    fn compare(&self, a: &Cell, b: &Cell) -> Result<std::cmp::Ordering> {
        Ok(compare_terms(&self.term_of(a)?, &self.term_of(b)?))
    }

    fn eval(&self, cell: &Cell) -> Result<Num> {
        match self.deref(cell) {
            Cell::Int(v) => Ok(Num::Int(v as i64)),
            Cell::Long(v) => Ok(Num::Int(v)),
            Cell::Float(v) => Ok(Num::Float(v)),
            Cell::Double(v) => Ok(Num::Double(v)),
            Cell::Var(_) => Err(Error::prolog("arguments are not sufficiently instantiated")),
            Cell::Atom(name) => arith::constant(&name)
                .ok_or_else(|| Error::prolog(format!("{}/0 is not evaluable", atom_term(&name)))),
            Cell::Str(s) => match &*s.args {
                [x] => arith::apply_unary(&s.name, self.eval(x)?),
                [x, y] => arith::apply_binary(&s.name, self.eval(x)?, self.eval(y)?),
                _ => Err(Error::prolog(format!(
                    "{}/{} is not evaluable",
                    s.name,
                    s.args.len()
                ))),
            },
            Cell::Cons(c) if matches!(self.deref(&c.tail), Cell::Atom(ref a) if &**a == "[]") => {
                self.eval(&c.head)
            }
            other => {
                let shown = self.term_of(&other)?;
                Err(Error::prolog(format!("{shown} is not evaluable")))
            }
        }
    }

    // ---------------------------------------------------------------
    // reading terms back

    /// Fully dereferenced term for `cell`; unbound variables read as
    /// `_G<n>`. Cyclic bindings are reported as an error.
    pub fn term_of(&self, cell: &Cell) -> Result<Term> {
        let mut active = HashSet::new();
        self.read(cell, &mut active)
    }

    /// Dereferences, checking the chain's first variable against `active`.
    fn walk(&self, cell: &Cell, active: &HashSet<usize>) -> Result<(Cell, Option<usize>)> {
        let first = match cell {
            Cell::Var(i) if self.heap[*i].is_some() => Some(*i),
            _ => None,
        };
        if let Some(i) = first {
            if active.contains(&i) {
                return Err(Error::prolog("cannot read a cyclic term"));
            }
        }
        Ok((self.deref(cell), first))
    }

    fn read(&self, cell: &Cell, active: &mut HashSet<usize>) -> Result<Term> {
        let (cell, first) = self.walk(cell, active)?;
        if let Some(i) = first {
            active.insert(i);
        }
        let out = match &cell {
            Cell::Var(i) => Term::Variable(Variable::new_unchecked(
                Some(Arc::from(format!("_G{i}"))),
                *i,
            )),
            Cell::Atom(a) => atom_term(a),
            Cell::Int(v) => Term::Integer(*v),
            Cell::Long(v) => Term::Long(*v),
            Cell::Float(v) => Term::Float(*v),
            Cell::Double(v) => Term::Double(*v),
            Cell::Obj(r) => Term::Reference(r.clone()),
            Cell::Str(s) => {
                let args = s
                    .args
                    .iter()
                    .map(|a| self.read(a, active))
                    .collect::<Result<Vec<_>>>()?;
                Term::Structure(Arc::new(Structure {
                    functor: s.name.clone(),
                    args,
                }))
            }
            Cell::Cons(_) => {
                let mut heads = Vec::new();
                let mut spine = Vec::new();
                let mut cur = cell.clone();
                while let Cell::Cons(c) = &cur {
                    heads.push(self.read(&c.head, active)?);
                    let (next, var) = self.walk(&c.tail, active)?;
                    if let Some(i) = var {
                        active.insert(i);
                        spine.push(i);
                    }
                    cur = next;
                }
                let mut acc = self.read(&cur, active)?;
                for i in spine {
                    active.remove(&i);
                }
                while let Some(head) = heads.pop() {
                    acc = Term::List(Arc::new(Cons { head, tail: acc }));
                }
                acc
            }
            Cell::Local(_) | Cell::CutTo(_) => unreachable!("internal cell escaped"),
        };
        if let Some(i) = first {
            active.remove(&i);
        }
        Ok(out)
    }
}

/// Compiles a clause into head and body templates.
pub(crate) fn compile(head: &Term, body: &[Term]) -> (Cell, Vec<Cell>, usize) {
    let mut slots: HashMap<Variable, u32> = HashMap::new();
    let mut slot = |v: &Variable| {
        let next = slots.len() as u32;
        Cell::Local(*slots.entry(v.clone()).or_insert(next))
    };
    let head = Cell::from_term(head, &mut slot);
    let body = body
        .iter()
        .filter(|g| !matches!(g, Term::True))
        .map(|g| Cell::from_term(g, &mut slot))
        .collect();
    (head, body, slots.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn list_cells_round_trip() {
        let term = crate::parser::parse_term("f([a, B, 1 | T], g(B))").unwrap();
        let mut m = Machine::new(Arc::new(KnowledgeBase::default()), Logger::default(), true);
        let vars = m.load(std::slice::from_ref(&term));
        assert_eq!(vars.len(), 2);
        let cell = m.cont.as_ref().unwrap().goal.clone();
        let back = m.term_of(&cell).unwrap();
        assert_eq!(back.to_string(), "f([a,_G0,1|_G1],g(_G0))");
    }

    #[test]
    fn cyclic_unification_terminates() {
        let mut m = Machine::new(Arc::new(KnowledgeBase::default()), Logger::default(), true);
        m.heap.extend([None, None]);
        let fx = Cell::compound(Arc::from("f"), vec![Cell::Var(0)]);
        let fy = Cell::compound(Arc::from("f"), vec![Cell::Var(1)]);
        assert!(m.unify(Cell::Var(0), fx));
        assert!(m.unify(Cell::Var(1), fy));
        assert!(m.unify(Cell::Var(0), Cell::Var(1)));
        assert!(m.term_of(&Cell::Var(0)).is_err());
    }
}
