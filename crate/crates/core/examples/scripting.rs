// Eval-style scripting: goals in, host values out.

use termbridge::{HostValue, ScriptSession};

fn main() -> termbridge::Result<()> {
    let mut session = ScriptSession::new();

    session.eval("?- X is 5+3.")?;
    println!("X = {}", session.get("X"));

    session.eval(
        "parent(pam, bob). parent(tom, bob). parent(bob, ann).
         grandparent(G, C) :- parent(G, P), parent(P, C).",
    )?;
    if session.eval("?- parent(Parent, Child).")? {
        println!("{} is a parent of {}", session.get("Parent"), session.get("Child"));
    }

    session.put("Who", "ann");
    session.eval("?- grandparent(G, Who).")?;
    println!("grandparent of ann: {}", session.get("G"));

    let found = session.eval("?- parent(ann, _).")?;
    println!("ann has children: {found}");

    session.set_query_mode(true);
    session.eval("L = [1, 2.5, three]")?;
    match session.get("L") {
        HostValue::Seq(items) => println!("L has {} items: {items:?}", items.len()),
        other => println!("unexpected {other:?}"),
    }

    let program = "likes(mary, wine).\nlikes(john, mary).\n";
    session.set_query_mode(false);
    session.eval_reader(program.as_bytes())?;
    session.eval("?- likes(john, W).")?;
    println!("john likes {}", session.get("W"));
    Ok(())
}
