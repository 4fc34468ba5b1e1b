// Composing goals with the query builder.

use termbridge::{Engine, Term};

fn main() -> termbridge::Result<()> {
    let mut engine = Engine::new();
    engine.consult_str(
        "big(bear). big(elephant). small(cat).
         brown(bear). black(cat). gray(elephant).",
    )?;

    let mut builder = engine.query_builder();
    builder.begin("big(X)").comma("gray(X)").semicolon("small(X)");
    println!("goal: {}", builder.query_string()?);
    for row in builder.query()?.all()? {
        println!("X = {}", row["X"]);
    }

    // Operator goals built from terms.
    builder
        .begin_op(Term::variable("N", 0)?, "is", engine.parse_term("6 * 7")?)
        .comma_op(Term::variable("N", 0)?, ">", Term::integer(40));
    let row = builder.query()?.one()?;
    println!("N = {}", row["N"]);

    // Misuse is reported when the query is opened.
    let err = builder.comma("big(X)").query().unwrap_err();
    println!("error: {err}");
    Ok(())
}
