// Moving values between the host and terms.

use indexmap::IndexMap;
use termbridge::convert::{
    from_term_matrix, host_to_term, host_to_term_as, remove_quotes, term_to_host,
    term_to_host_as, to_term_map,
};
use termbridge::{Engine, HostKind, HostValue, Term, TermType};

fn main() -> termbridge::Result<()> {
    let values = [
        HostValue::Null,
        HostValue::Bool(true),
        HostValue::Bool(false),
        HostValue::Text("hello world".into()),
        HostValue::Int(42),
        HostValue::Long(1 << 40),
        HostValue::Float(1.5),
        HostValue::Double(2.25),
        HostValue::Seq(vec![HostValue::Int(1), HostValue::Int(2), HostValue::Int(3)]),
    ];
    for value in &values {
        let term = host_to_term(value);
        let back = term_to_host(&term)?;
        println!("{:>14} -> {:<14} -> {back}", value.to_string(), term.to_string());
    }

    // Narrow integer kinds become plain integers.
    println!("char 'A' -> {}", host_to_term(&HostValue::Char('A')));
    println!("byte 7 -> {}", host_to_term(&HostValue::Byte(7)));

    // Typed conversion picks the host width.
    let seven = Term::integer(7);
    println!("as long: {:?}", term_to_host_as(&seven, HostKind::Long)?);
    println!("300 as byte: {}", term_to_host_as(&Term::integer(300), HostKind::Byte).unwrap_err());
    println!("as double term: {}", host_to_term_as(&HostValue::Int(7), TermType::Double)?);

    // Structures come back as functor plus arguments.
    let s = term_to_host(&Term::structure("point", [Term::integer(1), Term::atom("a")]))?;
    println!("structure: {s:?}");

    // Host objects travel through logic code as references.
    let mut engine = Engine::new();
    let handle = HostValue::object(vec![1u8, 2, 3]);
    engine.assertz_terms(
        Term::structure("buffer", [Term::atom("main"), host_to_term(&handle)]),
        &[],
    )?;
    let row = engine.query("buffer(main, B)")?.one()?;
    if let HostValue::Object(obj) = term_to_host(&row["B"])? {
        println!("buffer contents: {:?}", obj.downcast_ref::<Vec<u8>>());
    }

    // Solutions as host matrices and maps.
    engine.consult_str("black(cat). brown(bear). dark(Z) :- black(Z). dark(Z) :- brown(Z).")?;
    let matrix = engine.query("dark(X)")?.all_solutions()?;
    println!("matrix: {:?}", from_term_matrix(&matrix)?);

    let mut map = IndexMap::new();
    map.insert("Parent".to_string(), HostValue::Text("pam".into()));
    map.insert("Child".to_string(), HostValue::Text("bob".into()));
    println!("map: {:?}", to_term_map(&map));

    println!("{}", remove_quotes("'pam'"));
    println!("{}", term_to_host(&Term::variable("X", 0)?).unwrap_err());
    Ok(())
}
