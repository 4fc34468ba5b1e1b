// User-defined operators in parsing and printing.

use termbridge::{Engine, Specifier};

fn main() -> termbridge::Result<()> {
    let mut engine = Engine::new();
    engine.consult_str(
        ":- op(700, xfx, ===>).
         :- op(200, xfy, likes).
         rule(a ===> b).
         rule(b ===> c).
         fact(mary likes wine).",
    )?;
    println!("===> defined: {}", engine.current_operator(700, "xfx", "===>"));

    for row in engine.query_all("rule(X ===> Y)")? {
        println!("{} leads to {}", row["X"], row["Y"]);
    }
    let row = engine.query("fact(Who likes What)")?.one()?;
    println!("{} likes {}", row["Who"], row["What"]);

    engine.define_operator(400, "yfx", "times")?;
    let t = engine.parse_term("2 times 3 times 4")?;
    println!("{} has functor {} and reads back as {}", engine.format_term(&t), t.functor()?, t);

    let custom: Vec<String> = engine
        .operators()
        .changes_from_iso()
        .iter()
        .map(|op| format!("{} {} {}", op.priority(), op.specifier().as_str(), op.name()))
        .collect();
    println!("changes from the standard table: {custom:?}");
    assert_eq!(engine.operators().infix("times").map(|o| o.specifier()), Some(Specifier::Yfx));

    println!("error: {}", engine.define_operator(1300, "xfx", "bad").unwrap_err());
    Ok(())
}
