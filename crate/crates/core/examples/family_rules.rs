// Recursive rules, negation, cut and arithmetic over a family tree.

use std::path::Path;

use termbridge::Engine;

fn main() -> termbridge::Result<()> {
    let mut engine = Engine::new();
    engine.consult(Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data/family.pl"))?;

    let show = |engine: &Engine, goal: &str| -> termbridge::Result<()> {
        let rows = engine.query_all(goal)?;
        let text: Vec<String> = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        println!("{goal:<32} {}", text.join(" | "));
        Ok(())
    };

    show(&engine, "mother(M, bob)")?;
    show(&engine, "grandparent(tom, G)")?;
    show(&engine, "ancestor(A, jim)")?;
    show(&engine, "sibling(ann, S)")?;
    show(&engine, "female(X), \\+ parent(X, _)")?;

    // The first parent only.
    engine.assertz("first_child(P, C) :- parent(P, C), !")?;
    show(&engine, "first_child(tom, C)")?;

    engine.assertz("count_to(N, N) :- !")?;
    engine.assertz("count_to(I, N) :- J is I + 1, count_to(J, N)")?;
    engine.assertz("generation(jim, 0)")?;
    engine.assertz("generation(X, N) :- parent(X, C), generation(C, M), N is M + 1")?;
    show(&engine, "generation(tom, N)")?;

    let stats = {
        let mut q = engine.query("count_to(0, 10000)")?;
        q.has_solution()?;
        q.stats()
    };
    println!("count_to(0, 10000): {} inferences", stats.inferences);

    println!("user predicates: {}", engine.predicates().len());
    println!("built-in predicates: {}", engine.builtins().len());
    Ok(())
}
