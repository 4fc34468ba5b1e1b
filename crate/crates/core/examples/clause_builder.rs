// Building rules with the clause builder and listing the program.

use termbridge::Engine;

fn main() -> termbridge::Result<()> {
    let mut engine = Engine::new();
    engine.consult_str("black(cat). brown(bear).")?;

    let mut builder = engine.clause_builder();
    builder.begin("dark(Z)").neck("black(Z)").assertz()?;
    builder.begin("dark(Z)").neck("brown(Z)").assertz()?;
    println!("exists: {}", builder.begin("dark(Z)").neck("brown(Z)").check()?);
    // Asserting the same clause again changes nothing.
    println!("added again: {}", builder.begin("dark(Z)").neck("black(Z)").assertz()?);
    drop(builder);

    print!("{}", engine.program_text());

    let dark = engine.query_all("dark(X)")?;
    println!("{} dark animals", dark.len());

    engine.clause_builder().begin("dark(Z)").neck("black(Z)").retract()?;
    print!("after retract:\n{}", engine.program_text());
    Ok(())
}
