//! Canonical term printer.
//!
//! The output is the text format read back by the parser: atoms are quoted
//! only when needed, lists use bracket notation and operator terms are
//! written in operator notation with the fewest parentheses the priorities
//! allow.

use super::{OperatorTable, Specifier, Term};

pub(crate) fn is_symbol_char(c: char) -> bool {
    "+-*/\\^<>=~:.?@#&$".contains(c)
}

pub(crate) fn is_alnum(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

/// True when `name` can be written without quotes.
pub fn is_simple_atom(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => chars.all(|c| c.is_ascii_alphanumeric() || c == '_'),
        _ => name == "[]" || name == "!",
    }
}

fn is_symbolic(name: &str) -> bool {
    !name.is_empty() && name.chars().all(is_symbol_char)
}

/// Atom text, quoted and escaped when it is not a simple atom.
pub fn format_atom(name: &str) -> String {
    if is_simple_atom(name) {
        return name.to_string();
    }
    let mut out = String::with_capacity(name.len() + 2);
    out.push('\'');
    for c in name.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\'' => out.push_str("\\'"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            _ => out.push(c),
        }
    }
    out.push('\'');
    out
}

fn format_real(text: String) -> String {
    match text.as_str() {
        "inf" => return "1.0Inf".into(),
        "-inf" => return "-1.0Inf".into(),
        "NaN" => return "1.5NaN".into(),
        _ => {}
    }
    match text.find('e') {
        Some(e) if !text[..e].contains('.') => format!("{}.0{}", &text[..e], &text[e..]),
        _ => text,
    }
}

pub(crate) fn format_double(v: f64) -> String {
    format_real(format!("{v:?}"))
}

pub(crate) fn format_float(v: f32) -> String {
    format_real(format!("{v:?}"))
}

/// Canonical text of `term` under the operator table `ops`.
pub fn format_term(term: &Term, ops: &OperatorTable) -> String {
    Writer { ops }.term(term, 1200)
}

struct Writer<'a> {
    ops: &'a OperatorTable,
}

fn needs_space(left: &str, right: &str) -> bool {
    match (left.chars().last(), right.chars().next()) {
        (Some(a), Some(b)) => {
            (is_alnum(a) && is_alnum(b)) || (is_symbol_char(a) && is_symbol_char(b))
        }
        _ => false,
    }
}

fn join(out: &mut String, piece: &str) {
    if needs_space(out, piece) {
        out.push(' ');
    }
    out.push_str(piece);
}

fn spaced_infix(name: &str) -> bool {
    name.starts_with(|c: char| c.is_alphabetic()) || name == ":-" || name == "-->"
}

impl Writer<'_> {
    /// Atom in operand position: operator names are quoted so they never
    /// read back as operators.
    fn atom(&self, name: &str) -> String {
        if (is_simple_atom(name) && !self.ops.is_operator(name)) || name == "[]" || name == "!" {
            name.to_string()
        } else {
            let quoted = format_atom(name);
            if quoted.starts_with('\'') {
                quoted
            } else {
                // simple alphanumeric name that is also an operator
                format!("'{name}'")
            }
        }
    }

    fn term(&self, term: &Term, max: u16) -> String {
        match term {
            Term::Variable(v) => v.name().unwrap_or("_").to_string(),
            Term::Integer(v) => v.to_string(),
            Term::Long(v) => v.to_string(),
            Term::Float(v) => format_float(*v),
            Term::Double(v) => format_double(*v),
            Term::List(_) => self.list(term),
            Term::Reference(r) => format!("@({})", r.label()),
            Term::Structure(s) => self.structure(&s.functor, &s.args, max),
            _ => self.atom(term.atom_name().unwrap()),
        }
    }

    fn list(&self, term: &Term) -> String {
        let mut out = String::from("[");
        let mut cur = term;
        let mut first = true;
        while let Term::List(cell) = cur {
            if !first {
                out.push(',');
            }
            first = false;
            out.push_str(&self.term(&cell.head, 999));
            cur = &cell.tail;
        }
        if !cur.is_empty_list() {
            out.push('|');
            out.push_str(&self.term(cur, 999));
        }
        out.push(']');
        out
    }

    fn operator_name_printable(name: &str) -> bool {
        is_symbolic(name) || is_simple_atom(name) || name == "," || name == ";" || name == "|"
    }

    fn structure(&self, functor: &str, args: &[Term], max: u16) -> String {
        if Self::operator_name_printable(functor) {
            if let Some(text) = self.operator_form(functor, args, max) {
                return text;
            }
        }
        let mut out = match functor {
            "[]" => "'[]'".to_string(),
            _ => format_atom(functor),
        };
        out.push('(');
        for (i, arg) in args.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&self.term(arg, 999));
        }
        out.push(')');
        out
    }

    fn operator_form(&self, name: &str, args: &[Term], max: u16) -> Option<String> {
        let (text, priority) = match args {
            [left, right] => {
                let op = self.ops.infix(name)?;
                let (lmax, rmax) = op.specifier().argument_priorities(op.priority());
                let l = self.term(left, lmax);
                let r = self.term(right, rmax);
                let mut out = l;
                if spaced_infix(name) {
                    out.push(' ');
                    out.push_str(name);
                    out.push(' ');
                    out.push_str(&r);
                } else {
                    join(&mut out, name);
                    join(&mut out, &r);
                }
                (out, op.priority())
            }
            [arg] => {
                if let Some(op) = self.ops.prefix(name) {
                    if arg.is_number() {
                        return None;
                    }
                    let (_, amax) = op.specifier().argument_priorities(op.priority());
                    let a = self.term(arg, amax);
                    let mut out = name.to_string();
                    let tight = matches!(name, "-" | "+" | "\\");
                    if !tight
                        || a.starts_with('(')
                        || a.starts_with(|c: char| c.is_ascii_digit())
                    {
                        out.push(' ');
                        out.push_str(&a);
                    } else {
                        join(&mut out, &a);
                    }
                    (out, op.priority())
                } else {
                    let op = self.ops.postfix(name)?;
                    let (amax, _) = op.specifier().argument_priorities(op.priority());
                    let mut out = self.term(arg, amax);
                    if is_symbolic(name) {
                        join(&mut out, name);
                    } else {
                        out.push(' ');
                        out.push_str(name);
                    }
                    (out, op.priority())
                }
            }
            _ => return None,
        };
        Some(if priority > max {
            format!("({text})")
        } else {
            text
        })
    }
}

/// Priority of `term` when written with `ops` (0 for non-operator terms).
pub(crate) fn term_priority(term: &Term, ops: &OperatorTable) -> u16 {
    let Term::Structure(s) = term else { return 0 };
    if !Writer::operator_name_printable(&s.functor) {
        return 0;
    }
    match s.args.as_slice() {
        [_, _] => ops.infix(&s.functor).map_or(0, |op| op.priority()),
        [arg] => match ops.prefix(&s.functor) {
            Some(_) if arg.is_number() => 0,
            Some(op) => op.priority(),
            None => ops.postfix(&s.functor).map_or(0, |op| op.priority()),
        },
        _ => 0,
    }
}

/// Specifier-aware helper used by listings of `op/3` directives.
pub(crate) fn format_op_directive(priority: u16, spec: Specifier, name: &str) -> String {
    format!(":- op({priority}, {spec}, {}).", format_atom(name))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> Term {
        crate::parser::parse_term(text).unwrap()
    }

    fn show(t: &Term) -> String {
        t.to_string()
    }

    #[test]
    fn atoms() {
        assert_eq!(format_atom("pam"), "pam");
        assert_eq!(format_atom("Pam"), "'Pam'");
        assert_eq!(format_atom("hello world"), "'hello world'");
        assert_eq!(format_atom("it's"), "'it\\'s'");
        assert_eq!(format_atom("a\\b\n"), "'a\\\\b\\n'");
        assert_eq!(format_atom(""), "''");
        assert_eq!(format_atom("[]"), "[]");
        assert_eq!(show(&Term::atom("is")), "'is'");
    }

    #[test]
    fn numbers() {
        assert_eq!(show(&Term::Double(1.0)), "1.0");
        assert_eq!(show(&Term::Double(1e20)), "1.0e20");
        assert_eq!(show(&Term::Double(1.5e-7)), "1.5e-7");
        assert_eq!(show(&Term::Double(f64::INFINITY)), "1.0Inf");
        assert_eq!(show(&Term::Float(0.5)), "0.5");
        assert_eq!(show(&Term::Integer(-3)), "-3");
    }

    #[test]
    fn operators() {
        assert_eq!(show(&p("X is 5+3")), "X is 5+3");
        assert_eq!(show(&p("1+2*3")), "1+2*3");
        assert_eq!(show(&p("(1+2)*3")), "(1+2)*3");
        assert_eq!(show(&p("1-(2-3)")), "1-(2-3)");
        assert_eq!(show(&p("1-2-3")), "1-2-3");
        assert_eq!(show(&p("a:-b,c;d")), "a :- b,c;d");
        assert_eq!(show(&p("f((a,b))")), "f((a,b))");
        assert_eq!(show(&p("\\+a")), "\\+ a");
        assert_eq!(show(&p("- a")), "-a");
        assert_eq!(show(&p("-(1)")), "'-'(1)");
        assert_eq!(show(&p("- (-(a))")), "- -a");
        assert_eq!(show(&p("1 - -1")), "1- -1");
        assert_eq!(show(&p("-((a,b))")), "- (a,b)");
        assert_eq!(show(&p("2**(-1)")), "2** -1");
        assert_eq!(show(&p("(a:-b):-c")), "(a :- b) :- c");
        assert_eq!(show(&p("a=b")), "a=b");
        assert_eq!(show(&p("f(-)")), "f('-')");
        assert_eq!(show(&p("f((a;b))")), "f((a;b))");
        assert_eq!(show(&p("X = (a:-b)")), "X=(a :- b)");
    }

    #[test]
    fn lists_and_structures() {
        assert_eq!(show(&p("[a,b|T]")), "[a,b|T]");
        assert_eq!(show(&p("[(a,b)]")), "[(a,b)]");
        assert_eq!(show(&p("'hello world'(x)")), "'hello world'(x)");
        assert_eq!(show(&p("f(A,_,B)")), "f(A,_,B)");
    }
}
