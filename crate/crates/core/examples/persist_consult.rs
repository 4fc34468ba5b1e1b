// Writing a program to disk and loading it back, with includes.

use std::path::Path;

use termbridge::Engine;

fn main() -> termbridge::Result<()> {
    let dir = std::env::temp_dir().join(format!("termbridge-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| termbridge::Error::Prolog(e.to_string()))?;

    let mut engine = Engine::new();
    engine.define_operator(700, "xfx", "===>")?;
    engine.consult_str("step(a ===> b). step(b ===> c). path(X, Y) :- step(X ===> Y).")?;
    let file = dir.join("steps.pl");
    engine.persist(&file)?;
    println!("{}", std::fs::read_to_string(&file).unwrap_or_default());

    let mut reloaded = Engine::new();
    reloaded.consult(&file)?;
    assert_eq!(reloaded.program_map(), engine.program_map());
    println!("reloaded {} clauses", reloaded.program_size());

    // consult replaces, include merges.
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    reloaded.include(data.join("family.pl"))?;
    println!("after include: {} clauses", reloaded.program_size());
    reloaded.consult(data.join("lib_colors.pl"))?;
    println!("after consult: {} clauses", reloaded.program_size());
    for row in reloaded.query_all("color(A, C)")? {
        println!("{} is {}", row["A"], row["C"]);
    }
    println!("directive text: {}", Engine::include_directive("zoo"));

    let _ = std::fs::remove_dir_all(&dir);
    Ok(())
}
