// Assert a fact, query it, read the binding.

use termbridge::{Engine, Term};

fn main() -> termbridge::Result<()> {
    let mut engine = Engine::new();
    engine.asserta("sample('hello wolrd')")?;

    let solution = engine.query("sample(X)")?.one()?;
    let x = &solution["X"];
    assert_eq!(*x, Term::atom("'hello wolrd'"));
    println!("X = {x}");

    let info = engine.info();
    println!("{} {} on {}/{}", info.name, info.version, info.os_name, info.os_arch);
    Ok(())
}
