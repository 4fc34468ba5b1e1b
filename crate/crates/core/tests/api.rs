use indexmap::IndexMap;
use termbridge::convert::{
    contains_quotes, from_term_array, from_term_maps, host_to_term_as, remove_quotes,
    term_to_host_as, to_term_array, to_term_matrix,
};
use termbridge::logger::log_file_name;
use termbridge::{Engine, ErrorKind, HostKind, HostValue, Level, Logger, QueryState, Term, TermType};

fn zoo() -> Engine {
    let mut engine = Engine::new();
    engine
        .consult_str(
            "big(bear). big(elephant). small(cat).
             brown(bear). black(cat). gray(elephant).
             dark(Z) :- black(Z).
             dark(Z) :- brown(Z).",
        )
        .unwrap();
    engine
}

#[test]
fn query_lifecycle() {
    let engine = zoo();
    let mut q = engine.query("dark(X)").unwrap();
    assert_eq!(q.variables(), ["X"]);
    assert_eq!(q.state(), QueryState::Open);
    assert!(q.has_solution().unwrap());
    assert_eq!(q.next_solution().unwrap(), [Term::atom("cat")]);
    assert!(q.has_more_solutions().unwrap());
    assert_eq!(q.next_variables_solution().unwrap()["X"], Term::atom("bear"));
    assert!(!q.has_more_solutions().unwrap());
    assert!(q.next_solution().is_err());
    assert_eq!(q.state(), QueryState::Exhausted);
    q.dispose();
    q.dispose();
    assert_eq!(q.state(), QueryState::Disposed);
    assert_eq!(q.all().unwrap_err().kind(), ErrorKind::Prolog);
}

#[test]
fn solution_shapes() {
    let engine = zoo();
    assert_eq!(engine.query("big(X)").unwrap().n_solutions(1).unwrap().len(), 1);
    assert_eq!(engine.query("big(X), small(Y)").unwrap().all_solutions().unwrap()[1].len(), 2);
    assert!(engine.query("big(cat)").unwrap().one().unwrap().is_empty());
    let hosts = engine.query("dark(X)").unwrap().all_results().unwrap();
    assert_eq!(
        hosts,
        [[HostValue::Text("cat".into())], [HostValue::Text("bear".into())]]
    );
    let iterated: Vec<_> = engine.query("big(X)").unwrap().map(|r| r.unwrap()).collect();
    assert_eq!(iterated.len(), 2);
    // repeated names are one variable
    assert_eq!(engine.query_all("big(X), brown(X)").unwrap().len(), 1);
    // anonymous variables are not reported
    assert_eq!(engine.query("big(_)").unwrap().variables().len(), 0);
}

#[test]
fn goals_must_be_callable() {
    let engine = Engine::new();
    assert!(engine.query("1").is_err());
    assert!(engine.query_terms(&[Term::integer(3)]).is_err());
    assert!(engine.query("foo(").is_err());
}

#[test]
fn typed_and_aggregate_conversion() {
    let seven = Term::integer(7);
    assert_eq!(term_to_host_as(&seven, HostKind::Long).unwrap(), HostValue::Long(7));
    assert_eq!(term_to_host_as(&seven, HostKind::Byte).unwrap(), HostValue::Byte(7));
    assert_eq!(term_to_host_as(&seven, HostKind::Double).unwrap(), HostValue::Double(7.0));
    assert!(term_to_host_as(&Term::integer(300), HostKind::Byte).is_err());
    assert!(term_to_host_as(&Term::atom("x"), HostKind::Int).is_err());
    assert_eq!(host_to_term_as(&HostValue::Text("pam".into()), TermType::Atom).unwrap(), Term::atom("pam"));
    assert_eq!(host_to_term_as(&HostValue::Int(7), TermType::Long).unwrap(), Term::long(7));

    let host = vec![HostValue::Text("a".into()), HostValue::Int(1)];
    let terms = to_term_array(&host);
    assert_eq!(terms, [Term::atom("a"), Term::integer(1)]);
    assert_eq!(from_term_array(&terms).unwrap(), host);
    assert!(to_term_matrix(&[]).is_empty());
    let bad = [Term::atom("ok"), Term::variable("V", 0).unwrap()];
    assert!(from_term_array(&bad).unwrap_err().to_string().contains('1'));

    let rows = zoo().query("big(Parent), small(Child)").unwrap().all().unwrap();
    let maps = from_term_maps(&rows).unwrap();
    assert_eq!(maps[0]["Parent"], HostValue::Text("bear".into()));
    assert_eq!(maps.len(), 2);
    let empty: Vec<IndexMap<String, Term>> = Vec::new();
    assert!(from_term_maps(&empty).unwrap().is_empty());
}

#[test]
fn quotes() {
    assert!(contains_quotes("'pam'"));
    assert_eq!(remove_quotes("'pam'"), "pam");
    assert!(!contains_quotes("pam"));
    assert_eq!(remove_quotes("pam"), "pam");
    assert!(contains_quotes("''"));
    assert_eq!(remove_quotes("''"), "");
    assert_eq!(
        termbridge::convert::term_to_host(&Term::atom_exact("hello world")).unwrap(),
        HostValue::Text("hello world".into())
    );
}

#[test]
fn log_file_and_levels() {
    let dir = tempfile::tempdir().unwrap();
    let logger = Logger::with_level(dir.path(), Level::Trace);
    logger.trace("test", "finest record");
    logger.warn("test", "warning record");
    let text = std::fs::read_to_string(logger.current_file()).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().nth(1).unwrap().contains("WARN test warning record"));
    assert_eq!(Level::Trace.platform_name(), "FINEST");
    assert_eq!(Level::Error.platform_name(), "SEVERE");

    let name = log_file_name("termbridge", chrono::NaiveDate::from_ymd_opt(2024, 3, 9).unwrap());
    assert_eq!(name, "termbridge-2024.03.09");

    // an unwritable directory only loses the file copy
    let missing = Logger::with_level(dir.path().join("no/such/dir"), Level::Info);
    missing.error("test", "still fine", None);
    logger.set_level(Level::Error);
    assert!(!logger.enabled(Level::Warn));
}

#[test]
fn engine_info() {
    let info = Engine::new().info();
    assert_eq!(info.name, "termbridge");
    assert!(!info.iso_compliant);
    assert_eq!(info.run_on_linux(), cfg!(target_os = "linux"));
}
