// Consult a program file and read solutions in the different shapes a
// query offers.

use std::path::Path;

use termbridge::Engine;

fn main() -> termbridge::Result<()> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data/zoo.pl");
    let engine = Engine::from_file(&path)?;
    println!("{} clauses in {} predicates", engine.program_size(), engine.predicates().len());

    let mut query = engine.query("dark(X), big(X)")?;
    while query.has_more_solutions()? {
        let row = query.next_variables_solution()?;
        println!("dark and big: {}", row["X"]);
    }
    query.dispose();

    let all = engine.query_all("dark(X)")?;
    let names: Vec<String> = all.iter().map(|b| b["X"].to_string()).collect();
    println!("dark: {}", names.join(", "));

    let matrix = engine.query("big(X)")?.all_solutions()?;
    println!("big as a matrix: {matrix:?}");

    let hosts = engine.query("small(X)")?.all_results()?;
    println!("small as host values: {hosts:?}");

    println!("is a cat dark? {}", engine.contains("dark(cat)")?);
    println!("is an elephant dark? {}", engine.contains("dark(elephant)")?);
    Ok(())
}
