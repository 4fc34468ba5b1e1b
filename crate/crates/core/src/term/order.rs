//! Standard order of terms: Variables < Atoms < Numbers < Compounds.
//!
//! Atoms (including the reserved constants) compare alphabetically by name.
//! Numbers compare by mathematical value; equal values of different widths
//! break ties by width (integer < long < float < double) and NaN sorts after
//! every other number. Compounds compare by arity, then name, then arguments
//! left to right.

use std::cmp::Ordering;

use super::{Term, LIST_FUNCTOR, REFERENCE_FUNCTOR};

fn class(t: &Term) -> u8 {
    match t {
        Term::Variable(_) => 0,
        Term::Integer(_) | Term::Long(_) | Term::Float(_) | Term::Double(_) => 2,
        Term::List(_) | Term::Structure(_) | Term::Reference(_) => 3,
        _ => 1,
    }
}

#[derive(Clone, Copy)]
enum Num {
    Int(i64),
    Real(f64),
}

fn numeric(t: &Term) -> (Num, u8) {
    match *t {
        Term::Integer(v) => (Num::Int(v as i64), 0),
        Term::Long(v) => (Num::Int(v), 1),
        Term::Float(v) => (Num::Real(v as f64), 2),
        Term::Double(v) => (Num::Real(v), 3),
        _ => unreachable!("numeric called on non-number"),
    }
}

const TWO_63: f64 = 9_223_372_036_854_775_808.0;

fn cmp_int_real(i: i64, f: f64) -> Ordering {
    if f.is_nan() || f >= TWO_63 {
        return Ordering::Less;
    }
    if f < -TWO_63 {
        return Ordering::Greater;
    }
    let whole = f.trunc();
    match i.cmp(&(whole as i64)) {
        Ordering::Equal => {
            let frac = f - whole;
            if frac > 0.0 {
                Ordering::Less
            } else if frac < 0.0 {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        }
        other => other,
    }
}

fn cmp_real(a: f64, b: f64) -> Ordering {
    match (a.is_nan(), b.is_nan()) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        // -0.0 and 0.0 are the same value
        _ => a.partial_cmp(&b).unwrap(),
    }
}

fn cmp_numbers(a: &Term, b: &Term) -> Ordering {
    let (x, tx) = numeric(a);
    let (y, ty) = numeric(b);
    let by_value = match (x, y) {
        (Num::Int(i), Num::Int(j)) => i.cmp(&j),
        (Num::Int(i), Num::Real(f)) => cmp_int_real(i, f),
        (Num::Real(f), Num::Int(i)) => cmp_int_real(i, f).reverse(),
        (Num::Real(f), Num::Real(g)) => cmp_real(f, g),
    };
    by_value.then(tx.cmp(&ty)).then_with(|| match (x, y) {
        // same width, same value: -0.0 sorts before 0.0
        (Num::Real(f), Num::Real(g)) => f.total_cmp(&g),
        _ => Ordering::Equal,
    })
}

fn compound_header(t: &Term) -> (usize, &str) {
    match t {
        Term::List(_) => (2, LIST_FUNCTOR),
        Term::Reference(_) => (1, REFERENCE_FUNCTOR),
        Term::Structure(s) => (s.args.len(), &s.functor),
        _ => unreachable!("compound_header called on non-compound"),
    }
}

/// Total order over terms.
pub fn compare_terms(a: &Term, b: &Term) -> Ordering {
    let (mut a, mut b) = (a, b);
    loop {
        let ca = class(a);
        let cb = class(b);
        if ca != cb {
            return ca.cmp(&cb);
        }
        match ca {
            0 => {
                let (Term::Variable(x), Term::Variable(y)) = (a, b) else {
                    unreachable!()
                };
                return x
                    .position
                    .cmp(&y.position)
                    .then_with(|| x.name.cmp(&y.name));
            }
            1 => return a.atom_name().unwrap().cmp(b.atom_name().unwrap()),
            2 => return cmp_numbers(a, b),
            _ => {}
        }
        let (arity_a, name_a) = compound_header(a);
        let (arity_b, name_b) = compound_header(b);
        let header = arity_a.cmp(&arity_b).then_with(|| name_a.cmp(name_b));
        if header != Ordering::Equal {
            return header;
        }
        match (a, b) {
            (Term::List(x), Term::List(y)) => {
                let head = compare_terms(&x.head, &y.head);
                if head != Ordering::Equal {
                    return head;
                }
                // walk the spine iteratively so long lists cannot overflow
                a = &x.tail;
                b = &y.tail;
            }
            (Term::Structure(x), Term::Structure(y)) => {
                let (last_a, init_a) = x.args.split_last().unwrap();
                let (last_b, init_b) = y.args.split_last().unwrap();
                for (p, q) in init_a.iter().zip(init_b) {
                    let ord = compare_terms(p, q);
                    if ord != Ordering::Equal {
                        return ord;
                    }
                }
                a = last_a;
                b = last_b;
            }
            (Term::Reference(x), Term::Reference(y)) => return x.id.cmp(&y.id),
            _ => {
                // a reference against a user structure `@`/1
                let pa = a.arguments().unwrap();
                let pb = b.arguments().unwrap();
                return compare_terms(&pa[0], &pb[0]);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convert::HostValue;

    fn v(name: &str, pos: usize) -> Term {
        Term::variable(name, pos).unwrap()
    }

    #[test]
    fn class_order() {
        let mut items = vec![
            Term::structure("f", [Term::atom("a")]),
            Term::Integer(3),
            Term::atom("foo"),
            v("X", 0),
        ];
        items.sort();
        assert_eq!(
            items,
            vec![
                v("X", 0),
                Term::atom("foo"),
                Term::Integer(3),
                Term::structure("f", [Term::atom("a")]),
            ]
        );
        assert_eq!(compare_terms(&v("X", 0), &Term::atom("a")), Ordering::Less);
        assert_eq!(
            compare_terms(&Term::atom("a"), &Term::atom("a")),
            Ordering::Equal
        );
    }

    #[test]
    fn numbers_by_value_then_width() {
        assert_eq!(
            compare_terms(&Term::Integer(1), &Term::Long(1)),
            Ordering::Less
        );
        assert_eq!(
            compare_terms(&Term::Long(2), &Term::Double(1.5)),
            Ordering::Greater
        );
        assert_eq!(
            compare_terms(&Term::Double(f64::NAN), &Term::Long(i64::MAX)),
            Ordering::Greater
        );
        // i64::MAX is not exactly representable as f64
        assert_eq!(
            compare_terms(&Term::Long(i64::MAX), &Term::Double(TWO_63)),
            Ordering::Less
        );
        assert_eq!(
            compare_terms(&Term::Long(i64::MAX - 1), &Term::Long(i64::MAX)),
            Ordering::Less
        );
        assert_eq!(
            compare_terms(&Term::Double(0.0), &Term::Double(-0.0)),
            Ordering::Greater
        );
    }

    #[test]
    fn compounds_by_arity_name_args() {
        let f2 = Term::structure("f", [Term::atom("a"), Term::atom("b")]);
        let g1 = Term::structure("g", [Term::atom("a")]);
        assert_eq!(compare_terms(&g1, &f2), Ordering::Less);
        let list = Term::list([Term::atom("a")], None);
        let dot = Term::structure("g", [Term::atom("a"), Term::atom("b")]);
        // "." sorts before "g"
        assert_eq!(compare_terms(&list, &dot), Ordering::Less);
        let r1 = Term::reference(HostValue::Null);
        let r2 = Term::reference(HostValue::Null);
        assert_eq!(compare_terms(&r1, &r2), Ordering::Less);
    }

    #[test]
    fn variables_by_position_then_name() {
        assert_eq!(compare_terms(&v("B", 0), &v("A", 1)), Ordering::Less);
        assert_eq!(
            compare_terms(&Term::anonymous(0), &v("A", 0)),
            Ordering::Less
        );
    }

    #[test]
    fn long_lists_do_not_overflow() {
        let a = Term::list((0..200_000).map(Term::Integer), None);
        let b = Term::list((0..200_000).map(Term::Integer), None);
        assert_eq!(compare_terms(&a, &b), Ordering::Equal);
    }
}
