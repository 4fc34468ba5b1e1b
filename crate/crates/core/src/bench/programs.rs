//! Benchmark programs. Each goal is one measured operation.

use std::fmt::Write;

/// How a benchmark goal is collected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Collect {
    /// First solution only.
    One,
    /// Every solution.
    All,
}

#[derive(Debug, Clone)]
pub struct BenchSpec {
    pub name: &'static str,
    pub description: &'static str,
    pub program: String,
    pub goal: &'static str,
    pub collect: Collect,
}

pub const NAMES: [&str; 17] = [
    "boresea",
    "choice_point",
    "choice_point_0arg",
    "backtrack1",
    "backtrack2",
    "cut_100_times",
    "dereference",
    "environment",
    "environment_0arg",
    "index_clause",
    "create_list",
    "create_struct",
    "match_list",
    "match_struct",
    "unification",
    "bench_query",
    "bench_query_all",
];

/// Counted loop shared by most programs: runs `G` `N` times. Loop goals
/// are ground so every round does the same work.
const LOOP: &str = "
loop(0, _) :- !.
loop(N, G) :- call(G), M is N - 1, loop(M, G).
";

const BORESEA: &str = "
boresea :- loop(300, lips).
lips :- l1.
l1 :- l2.   l2 :- l3.   l3 :- l4.   l4 :- l5.   l5 :- l6.
l6 :- l7.   l7 :- l8.   l8 :- l9.   l9 :- l10.  l10 :- l11.
l11 :- l12. l12 :- l13. l13 :- l14. l14 :- l15. l15 :- l16.
l16 :- l17. l17 :- l18. l18 :- l19. l19 :- l20. l20.
";

const CHOICE_POINT: &str = "
choice_point :- loop(2000, cp_any).
cp_any :- cp(_).
cp(1). cp(2). cp(3).
";

const CHOICE_POINT_0ARG: &str = "
choice_point_0arg :- loop(2000, cp0).
cp0 :- true.
cp0 :- fail.
cp0 :- fail, fail.
";

const BACKTRACK1: &str = "
backtrack1 :- loop(20, deep).
deep :- nat(0, X), X >= 200, !.
nat(X, X).
nat(X, Y) :- X1 is X + 1, X1 =< 200, nat(X1, Y).
";

const CUT_100: &str = "
cut_100_times :- cut_loop(100).
cut_loop(N) :- N > 0, cut_it, M is N - 1, cut_loop(M).
cut_loop(0).
cut_it :- !.
cut_it :- fail.
";

const DEREFERENCE: &str = "
dereference :- loop(20, deref).
deref :- chain(300, First, Last), Last = a, First == a.
chain(0, X, X) :- !.
chain(N, X, Y) :- M is N - 1, Y = Z, chain(M, X, Z).
";

const ENVIRONMENT: &str = "
environment :- loop(1000, env).
env :- env(7).
env(N) :- e(N, A, B, C, D, E), f(A, B, C, D, E).
e(N, A, B, C, D, E) :- A = N, B = A, C = B, D = C, E = D.
f(A, B, C, D, E) :- A == E, B == D, C == C.
";

const ENVIRONMENT_0ARG: &str = "
environment_0arg :- loop(2000, env0).
env0 :- e1, e2, e3, e4.
e1. e2. e3. e4.
";

const LISTS: &str = "
mk_list(0, []) :- !.
mk_list(N, [N|T]) :- M is N - 1, mk_list(M, T).
";

const STRUCTS: &str = "
mk_struct(0, leaf) :- !.
mk_struct(N, node(N, T)) :- M is N - 1, mk_struct(M, T).
";

const CREATE_LIST: &str = "
create_list :- loop(50, one_list).
one_list :- mk_list(100, _).
";

const CREATE_STRUCT: &str = "
create_struct :- loop(50, one_struct).
one_struct :- mk_struct(100, _).
";

const MATCH_LIST: &str = "
match_list :- mk_list(100, A), mk_list(100, B), loop(200, A = B).
";

const MATCH_STRUCT: &str = "
match_struct :- mk_struct(100, A), mk_struct(100, B), loop(200, A = B).
";

const UNIFICATION: &str = "
unification :- loop(1000, unify_once).
unify_once :-
    f(X, g(Y, Z), [a, b|W], h(V, V)) = f(1, g(2, 3), [a, b, c], h(k(U), k(4))),
    X == 1, Y == 2, Z == 3, W == [c], U == 4.
";

fn backtrack2() -> String {
    let mut text = String::from("backtrack2 :- loop(20, shallow).\nshallow :- s(X), X >= 200, !.\n");
    for i in 1..=200 {
        writeln!(text, "s({i}).").unwrap();
    }
    text
}

fn index_clause() -> String {
    let mut text = String::from(
        "index_clause :- ix(100).\nix(0) :- !.\nix(N) :- idx(N, _), M is N - 1, ix(M).\n",
    );
    for i in 1..=100 {
        writeln!(text, "idx({i}, v{i}).").unwrap();
    }
    text
}

fn people() -> String {
    let mut text = String::new();
    for i in 0..100 {
        writeln!(text, "person(p{i}, {}).", 20 + i % 50).unwrap();
    }
    text
}

fn spec(
    name: &'static str,
    description: &'static str,
    parts: &[&str],
    goal: &'static str,
    collect: Collect,
) -> BenchSpec {
    BenchSpec {
        name,
        description,
        program: parts.concat(),
        goal,
        collect,
    }
}

/// The whole suite in report order.
pub fn suite() -> Vec<BenchSpec> {
    use Collect::{All, One};
    let backtrack2 = backtrack2();
    let index_clause = index_clause();
    let people = people();
    vec![
        spec(
            "boresea",
            "deterministic call chains; peak inference rate",
            &[LOOP, BORESEA],
            "boresea",
            One,
        ),
        spec(
            "choice_point",
            "calls that leave a choice point on a 1-argument predicate",
            &[LOOP, CHOICE_POINT],
            "choice_point",
            One,
        ),
        spec(
            "choice_point_0arg",
            "calls that leave a choice point on a 0-argument predicate",
            &[LOOP, CHOICE_POINT_0ARG],
            "choice_point_0arg",
            One,
        ),
        spec(
            "backtrack1",
            "deep backtracking into a recursive generator",
            &[LOOP, BACKTRACK1],
            "backtrack1",
            One,
        ),
        spec(
            "backtrack2",
            "shallow backtracking over a flat fact table",
            &[LOOP, &backtrack2],
            "backtrack2",
            One,
        ),
        spec(
            "cut_100_times",
            "a loop executing exactly 100 cuts",
            &[CUT_100],
            "cut_100_times",
            One,
        ),
        spec(
            "dereference",
            "long chains of bound variables",
            &[LOOP, DEREFERENCE],
            "dereference",
            One,
        ),
        spec(
            "environment",
            "clauses with many local variables",
            &[LOOP, ENVIRONMENT],
            "environment",
            One,
        ),
        spec(
            "environment_0arg",
            "0-argument clauses with several body goals",
            &[LOOP, ENVIRONMENT_0ARG],
            "environment_0arg",
            One,
        ),
        spec(
            "index_clause",
            "first-argument selection in a 100-clause predicate",
            &[&index_clause],
            "index_clause",
            One,
        ),
        spec(
            "create_list",
            "building 100-element lists",
            &[LOOP, LISTS, CREATE_LIST],
            "create_list",
            One,
        ),
        spec(
            "create_struct",
            "building 100-level nested structures",
            &[LOOP, STRUCTS, CREATE_STRUCT],
            "create_struct",
            One,
        ),
        spec(
            "match_list",
            "unifying two 100-element lists",
            &[LOOP, LISTS, MATCH_LIST],
            "match_list",
            One,
        ),
        spec(
            "match_struct",
            "unifying two 100-level structures",
            &[LOOP, STRUCTS, MATCH_STRUCT],
            "match_struct",
            One,
        ),
        spec(
            "unification",
            "mixed unification of nested terms with variables",
            &[LOOP, UNIFICATION],
            "unification",
            One,
        ),
        spec(
            "bench_query",
            "opening a query and reading its first solution",
            &[&people],
            "person(P, 42)",
            One,
        ),
        spec(
            "bench_query_all",
            "opening a query and collecting every solution",
            &[&people],
            "person(P, A)",
            All,
        ),
    ]
}

pub fn find(name: &str) -> Option<BenchSpec> {
    suite().into_iter().find(|s| s.name == name)
}
