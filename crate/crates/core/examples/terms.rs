// Building, inspecting and printing terms.

use termbridge::{parse_term, Term, TermType};

fn main() -> termbridge::Result<()> {
    let x = Term::variable("X", 0)?;
    let point = Term::structure("point", [Term::integer(3), Term::double(4.5), x.clone()]);
    println!("{point} has indicator {}", point.indicator()?);
    println!("second argument: {}", point.argument(1)?);

    let list = Term::list([Term::atom("a"), Term::atom("b")], Some(Term::variable("T", 1)?));
    println!("{list} is a list with {} visible items", list.iter().count());

    // Atoms that need quotes keep them when printed.
    for name in ["cat", "hello world", "[]", "'quoted'"] {
        println!("{:>14} -> {}", name, Term::atom_exact(name));
    }

    let parsed = parse_term("X = f(Y, [1, 2 | Z]), Y is 2 * (3 + 4)")?;
    println!("parsed: {parsed}");
    println!("ground? {}  variables: {}", parsed.is_ground(), parsed.variables().len());

    let a = parse_term("f(X, b)")?;
    let b = parse_term("f(a, Y)")?;
    if let Some(subst) = a.unifier(&b) {
        println!("{a} = {b} gives {}", subst.resolve(&a));
    }
    assert!(!parse_term("X")?.unify_with_occurs_check(&parse_term("f(X)")?));

    let kinds: Vec<TermType> = [Term::integer(1), Term::long(1 << 40), Term::float(1.5)]
        .iter()
        .map(Term::term_type)
        .collect();
    println!("{kinds:?}");

    // Standard order: variables, then atoms, then numbers, then compounds.
    let mut mixed = [point, Term::integer(7), Term::atom("z"), x, Term::atom("a")];
    mixed.sort();
    let shown: Vec<String> = mixed.iter().map(Term::to_string).collect();
    println!("sorted: {}", shown.join(" "));
    Ok(())
}
