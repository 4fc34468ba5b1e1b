// The leveled logger and the error taxonomy.

use termbridge::{Engine, ErrorKind, Level, Logger, Term};

fn main() {
    let dir = std::env::temp_dir();
    let logger = Logger::with_level(&dir, Level::Debug);
    logger.info("example", "starting");
    println!("log file: {}", logger.current_file().display());

    // Unknown predicates fail with a warning in the log.
    let engine = Engine::with_logger(logger.clone());
    let found = engine.contains("no_such_predicate(1)").unwrap();
    println!("no_such_predicate(1): {found}");

    let errors = [
        Term::variable("X", 0).unwrap().arity().unwrap_err(),
        engine.parse_term("f(").unwrap_err(),
        engine.query("X is foo + 1").and_then(|mut q| q.one()).unwrap_err(),
        Term::atom("a").list_items().unwrap_err(),
    ];
    for e in &errors {
        println!("{:<22} {e}", e.kind().name());
        if let Some(loc) = e.location() {
            println!("{:<22} at {loc:?}", "");
        }
    }
    assert_eq!(errors[1].kind(), ErrorKind::Syntax);
}
