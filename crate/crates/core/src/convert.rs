//! Conversion between host values and terms.
//!
//! | host value            | term                  |
//! |-----------------------|-----------------------|
//! | `Null`                | `nil`                 |
//! | `Bool(true/false)`    | `true` / `fail`       |
//! | `Text`                | atom                  |
//! | `Int` / `Long`        | integer / long        |
//! | `Float` / `Double`    | float / double        |
//! | `Seq`                 | list                  |
//! | `Byte`/`Short`/`Char` | integer (one way)     |
//! | `Map`/`Object`/`Void` | reference             |
//! | `Structure`           | structure             |
//!
//! Narrow integers and characters collapse to integer terms; the typed
//! functions ([`term_to_host_as`], [`host_to_term_as`]) recover a specific
//! width when the caller knows it.

use std::any::Any;
use std::fmt;
use std::sync::Arc;

use indexmap::IndexMap;

use crate::error::{Error, Result};
use crate::term::{Term, TermType};

/// Opaque host object compared by identity.
#[derive(Clone)]
pub struct HostObject(Arc<dyn Any + Send + Sync>);

impl HostObject {
    pub fn new<T: Any + Send + Sync>(value: T) -> Self {
        HostObject(Arc::new(value))
    }

    pub fn downcast_ref<T: Any>(&self) -> Option<&T> {
        self.0.downcast_ref()
    }

    pub fn ptr_eq(&self, other: &HostObject) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl PartialEq for HostObject {
    fn eq(&self, other: &Self) -> bool {
        self.ptr_eq(other)
    }
}

impl fmt::Debug for HostObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HostObject({:p})", Arc::as_ptr(&self.0))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum HostValue {
    Null,
    Bool(bool),
    Text(String),
    Int(i32),
    Long(i64),
    Float(f32),
    Double(f64),
    Byte(i8),
    Short(i16),
    Char(char),
    Seq(Vec<HostValue>),
    Map(IndexMap<String, HostValue>),
    /// Functor and converted arguments of a structure term.
    Structure {
        functor: String,
        args: Vec<HostValue>,
    },
    Object(HostObject),
    /// Absence of a value, as returned by procedures without a result.
    Void,
}

/// Target kinds for typed conversion to host values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HostKind {
    Bool,
    Text,
    Int,
    Long,
    Float,
    Double,
    Byte,
    Short,
    Char,
    Seq,
}

impl HostValue {
    pub fn object<T: Any + Send + Sync>(value: T) -> Self {
        HostValue::Object(HostObject::new(value))
    }

    pub fn as_text(&self) -> Option<&str> {
        match self {
            HostValue::Text(s) => Some(s),
            _ => None,
        }
    }

    /// Integral value of any integer-like variant.
    pub fn as_i64(&self) -> Option<i64> {
        match *self {
            HostValue::Int(v) => Some(v as i64),
            HostValue::Long(v) => Some(v),
            HostValue::Byte(v) => Some(v as i64),
            HostValue::Short(v) => Some(v as i64),
            HostValue::Char(c) => Some(c as i64),
            _ => None,
        }
    }

    pub fn is_null(&self) -> bool {
        matches!(self, HostValue::Null)
    }
}

impl fmt::Display for HostValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HostValue::Null => f.write_str("null"),
            HostValue::Bool(b) => write!(f, "{b}"),
            HostValue::Text(s) => f.write_str(s),
            HostValue::Int(v) => write!(f, "{v}"),
            HostValue::Long(v) => write!(f, "{v}"),
            HostValue::Float(v) => write!(f, "{v}"),
            HostValue::Double(v) => write!(f, "{v}"),
            HostValue::Byte(v) => write!(f, "{v}"),
            HostValue::Short(v) => write!(f, "{v}"),
            HostValue::Char(c) => write!(f, "{c}"),
            HostValue::Seq(items) => {
                f.write_str("[")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{item}")?;
                }
                f.write_str("]")
            }
            HostValue::Map(map) => {
                f.write_str("{")?;
                for (i, (k, v)) in map.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{k}: {v}")?;
                }
                f.write_str("}")
            }
            HostValue::Structure { functor, args } => {
                write!(f, "{functor}(")?;
                for (i, arg) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{arg}")?;
                }
                f.write_str(")")
            }
            HostValue::Object(o) => write!(f, "{o:?}"),
            HostValue::Void => f.write_str("void"),
        }
    }
}

macro_rules! host_from {
    ($($t:ty => $variant:ident),* $(,)?) => {
        $(impl From<$t> for HostValue {
            fn from(v: $t) -> Self {
                HostValue::$variant(v)
            }
        })*
    };
}

host_from!(
    bool => Bool,
    String => Text,
    i32 => Int,
    i64 => Long,
    f32 => Float,
    f64 => Double,
    i8 => Byte,
    i16 => Short,
    char => Char,
    Vec<HostValue> => Seq,
);

impl From<&str> for HostValue {
    fn from(v: &str) -> Self {
        HostValue::Text(v.to_string())
    }
}

/// True when `functor` starts and ends with a single quote.
pub fn contains_quotes(functor: &str) -> bool {
    functor.len() >= 2 && functor.starts_with('\'') && functor.ends_with('\'')
}

/// Strips one layer of surrounding single quotes, if present.
pub fn remove_quotes(functor: &str) -> &str {
    if contains_quotes(functor) {
        &functor[1..functor.len() - 1]
    } else {
        functor
    }
}

/// Converts a host value to a term. Never fails.
pub fn host_to_term(value: &HostValue) -> Term {
    match value {
        HostValue::Null => Term::Nil,
        HostValue::Bool(true) => Term::True,
        HostValue::Bool(false) => Term::Fail,
        HostValue::Text(s) => Term::atom_exact(s),
        HostValue::Int(v) => Term::Integer(*v),
        HostValue::Long(v) => Term::Long(*v),
        HostValue::Float(v) => Term::Float(*v),
        HostValue::Double(v) => Term::Double(*v),
        HostValue::Byte(v) => Term::Integer(*v as i32),
        HostValue::Short(v) => Term::Integer(*v as i32),
        HostValue::Char(c) => Term::Integer(*c as i32),
        HostValue::Seq(items) => Term::list(items.iter().map(host_to_term), None),
        HostValue::Structure { functor, args } => {
            Term::structure(functor, args.iter().map(host_to_term))
        }
        HostValue::Map(_) | HostValue::Object(_) | HostValue::Void => Term::reference(value.clone()),
    }
}

/// Converts a term to a host value; variables and the cut have no host
/// equivalent.
pub fn term_to_host(term: &Term) -> Result<HostValue> {
    Ok(match term {
        Term::Nil => HostValue::Null,
        Term::True => HostValue::Bool(true),
        Term::Fail => HostValue::Bool(false),
        Term::Atom(name) => HostValue::Text(remove_quotes(name).to_string()),
        Term::EmptyList => HostValue::Seq(Vec::new()),
        Term::Integer(v) => HostValue::Int(*v),
        Term::Long(v) => HostValue::Long(*v),
        Term::Float(v) => HostValue::Float(*v),
        Term::Double(v) => HostValue::Double(*v),
        Term::List(_) => {
            let mut items = Vec::new();
            let mut cur = term;
            while let Term::List(cell) = cur {
                items.push(term_to_host(&cell.head)?);
                cur = &cell.tail;
            }
            if cur.is_empty_list() {
                HostValue::Seq(items)
            } else {
                // partial list: keep the last cell as a structure
                let tail = term_to_host(cur)?;
                let mut acc = tail;
                for item in items.into_iter().rev() {
                    acc = HostValue::Structure {
                        functor: ".".into(),
                        args: vec![item, acc],
                    };
                }
                acc
            }
        }
        Term::Structure(s) => HostValue::Structure {
            functor: s.functor.to_string(),
            args: s.args.iter().map(term_to_host).collect::<Result<_>>()?,
        },
        Term::Reference(r) => r.value().clone(),
        Term::Variable(_) => {
            return Err(Error::UnknownTerm(format!(
                "free variable {term} has no host equivalent"
            )))
        }
        Term::Cut => {
            return Err(Error::UnknownTerm(
                "the cut has no host equivalent".to_string(),
            ))
        }
    })
}

fn incompatible(what: impl fmt::Display, kind: impl fmt::Debug) -> Error {
    Error::prolog(format!("{what} cannot be converted to {kind:?}"))
}

enum Number {
    Int(i64),
    Real(f64),
}

fn term_number(term: &Term) -> Option<Number> {
    match *term {
        Term::Integer(v) => Some(Number::Int(v as i64)),
        Term::Long(v) => Some(Number::Int(v)),
        Term::Float(v) => Some(Number::Real(v as f64)),
        Term::Double(v) => Some(Number::Real(v)),
        _ => None,
    }
}

fn integral(n: &Number) -> Option<i64> {
    match *n {
        Number::Int(v) => Some(v),
        Number::Real(r) if r.fract() == 0.0 && r.abs() < 9.2e18 => Some(r as i64),
        Number::Real(_) => None,
    }
}

/// Real value when it converts exactly.
fn exact_real(n: &Number, bits: u32) -> Option<f64> {
    match *n {
        Number::Real(r) if bits == 32 => ((r as f32) as f64 == r || r.is_nan()).then_some(r),
        Number::Real(r) => Some(r),
        Number::Int(v) => {
            let r = if bits == 32 { v as f32 as f64 } else { v as f64 };
            (r as i64 == v && r.abs() < 9.2e18).then_some(r)
        }
    }
}

/// Converts `term` to the requested host kind without changing its value.
pub fn term_to_host_as(term: &Term, kind: HostKind) -> Result<HostValue> {
    let fail = || incompatible(term, kind);
    match kind {
        HostKind::Bool => match term {
            Term::True => Ok(HostValue::Bool(true)),
            Term::Fail => Ok(HostValue::Bool(false)),
            _ => Err(fail()),
        },
        HostKind::Text => match term.atom_name() {
            Some(name) => Ok(HostValue::Text(remove_quotes(name).to_string())),
            None => Err(fail()),
        },
        HostKind::Seq => {
            if !term.is_list() {
                return Err(fail());
            }
            let items = term.list_items()?;
            Ok(HostValue::Seq(items.iter().map(term_to_host).collect::<Result<_>>()?))
        }
        HostKind::Float | HostKind::Double => {
            let n = term_number(term).ok_or_else(fail)?;
            let bits = if kind == HostKind::Float { 32 } else { 64 };
            let r = exact_real(&n, bits).ok_or_else(fail)?;
            Ok(if bits == 32 {
                HostValue::Float(r as f32)
            } else {
                HostValue::Double(r)
            })
        }
        _ => {
            let n = term_number(term).ok_or_else(fail)?;
            let v = integral(&n).ok_or_else(fail)?;
            let out_of_range = || Error::prolog(format!("{v} is out of range for {kind:?}"));
            Ok(match kind {
                HostKind::Int => HostValue::Int(i32::try_from(v).map_err(|_| out_of_range())?),
                HostKind::Long => HostValue::Long(v),
                HostKind::Byte => HostValue::Byte(i8::try_from(v).map_err(|_| out_of_range())?),
                HostKind::Short => {
                    HostValue::Short(i16::try_from(v).map_err(|_| out_of_range())?)
                }
                HostKind::Char => HostValue::Char(
                    u32::try_from(v)
                        .ok()
                        .and_then(char::from_u32)
                        .ok_or_else(out_of_range)?,
                ),
                _ => unreachable!(),
            })
        }
    }
}

/// Converts a host value to a term of the requested type.
pub fn host_to_term_as(value: &HostValue, kind: TermType) -> Result<Term> {
    cast_term(&host_to_term(value), kind).map_err(|_| incompatible(value, kind))
}

/// Re-expresses `term` as the requested term type, keeping its value.
pub fn cast_term(term: &Term, kind: TermType) -> Result<Term> {
    if term.term_type() == kind {
        return Ok(term.clone());
    }
    let fail = || incompatible(term, kind);
    match kind {
        TermType::Integer | TermType::Long => {
            let v = term_number(term).as_ref().and_then(integral).ok_or_else(fail)?;
            if kind == TermType::Long {
                Ok(Term::Long(v))
            } else {
                i32::try_from(v).map(Term::Integer).map_err(|_| fail())
            }
        }
        TermType::Float => {
            let n = term_number(term).ok_or_else(fail)?;
            exact_real(&n, 32).map(|r| Term::Float(r as f32)).ok_or_else(fail)
        }
        TermType::Double => {
            let n = term_number(term).ok_or_else(fail)?;
            exact_real(&n, 64).map(Term::Double).ok_or_else(fail)
        }
        TermType::Atom => match term.atom_name() {
            Some(_) => Ok(term.clone()),
            None => Err(fail()),
        },
        TermType::List if term.is_empty_list() => Ok(term.clone()),
        TermType::EmptyList if term.is_list() && term.list_items().is_ok_and(|v| v.is_empty()) => {
            Ok(Term::EmptyList)
        }
        _ => Err(fail()),
    }
}

pub fn to_term_array(values: &[HostValue]) -> Vec<Term> {
    values.iter().map(host_to_term).collect()
}

pub fn from_term_array(terms: &[Term]) -> Result<Vec<HostValue>> {
    terms
        .iter()
        .enumerate()
        .map(|(i, t)| term_to_host(t).map_err(|e| e.context(format!("index {i}"))))
        .collect()
}

pub fn to_term_matrix(rows: &[Vec<HostValue>]) -> Vec<Vec<Term>> {
    rows.iter().map(|row| to_term_array(row)).collect()
}

pub fn from_term_matrix(rows: &[Vec<Term>]) -> Result<Vec<Vec<HostValue>>> {
    rows.iter()
        .enumerate()
        .map(|(i, row)| from_term_array(row).map_err(|e| e.context(format!("row {i}"))))
        .collect()
}

pub fn to_term_map(map: &IndexMap<String, HostValue>) -> IndexMap<String, Term> {
    map.iter().map(|(k, v)| (k.clone(), host_to_term(v))).collect()
}

pub fn from_term_map(map: &IndexMap<String, Term>) -> Result<IndexMap<String, HostValue>> {
    map.iter()
        .map(|(k, t)| {
            term_to_host(t)
                .map(|v| (k.clone(), v))
                .map_err(|e| e.context(format!("key {k}")))
        })
        .collect()
}

pub fn to_term_maps(maps: &[IndexMap<String, HostValue>]) -> Vec<IndexMap<String, Term>> {
    maps.iter().map(to_term_map).collect()
}

pub fn from_term_maps(maps: &[IndexMap<String, Term>]) -> Result<Vec<IndexMap<String, HostValue>>> {
    maps.iter()
        .enumerate()
        .map(|(i, m)| from_term_map(m).map_err(|e| e.context(format!("solution {i}"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::ErrorKind;

    #[test]
    fn table_rows() {
        assert_eq!(host_to_term(&HostValue::Null), Term::Nil);
        assert_eq!(host_to_term(&true.into()), Term::True);
        assert_eq!(host_to_term(&false.into()), Term::Fail);
        assert_eq!(host_to_term(&"pam".into()), Term::atom("pam"));
        assert_eq!(host_to_term(&7i32.into()), Term::Integer(7));
        assert_eq!(host_to_term(&7i64.into()), Term::Long(7));
        assert_eq!(host_to_term(&1.5f32.into()), Term::Float(1.5));
        assert_eq!(host_to_term(&1.5f64.into()), Term::Double(1.5));
        let seq = HostValue::Seq(vec![1.into(), 2.into(), 3.into()]);
        assert_eq!(host_to_term(&seq).to_string(), "[1,2,3]");
        assert_eq!(host_to_term(&'A'.into()), Term::Integer(65));
        assert_eq!(host_to_term(&HostValue::Byte(-3)), Term::Integer(-3));
    }

    #[test]
    fn inverse_rows() {
        assert_eq!(term_to_host(&Term::Integer(8)).unwrap(), HostValue::Int(8));
        assert_eq!(
            term_to_host(&Term::atom("hello world")).unwrap(),
            HostValue::Text("hello world".into())
        );
        assert_eq!(
            term_to_host(&Term::atom_exact("'quoted'")).unwrap(),
            HostValue::Text("quoted".into())
        );
        let list = Term::list([Term::Integer(1), Term::Integer(2)], None);
        assert_eq!(
            term_to_host(&list).unwrap(),
            HostValue::Seq(vec![1.into(), 2.into()])
        );
        assert_eq!(term_to_host(&Term::EmptyList).unwrap(), HostValue::Seq(vec![]));
        let s = Term::structure("point", [Term::Integer(1), Term::atom("x")]);
        assert_eq!(
            term_to_host(&s).unwrap(),
            HostValue::Structure {
                functor: "point".into(),
                args: vec![1.into(), "x".into()]
            }
        );
    }

    #[test]
    fn unknown_terms() {
        let x = Term::variable("X", 0).unwrap();
        assert_eq!(term_to_host(&x).unwrap_err().kind(), ErrorKind::UnknownTerm);
        assert_eq!(term_to_host(&Term::Cut).unwrap_err().kind(), ErrorKind::UnknownTerm);
        let err = from_term_array(&[Term::Integer(1), x]).unwrap_err();
        assert!(err.message().starts_with("index 1"));
    }

    #[test]
    fn references_hold_identity() {
        let obj = HostValue::object(vec![1u8, 2, 3]);
        let t = host_to_term(&obj);
        assert!(t.is_object_type());
        let back = term_to_host(&t).unwrap();
        assert_eq!(back, obj);
        let HostValue::Object(o) = back else { unreachable!() };
        assert_eq!(o.downcast_ref::<Vec<u8>>().unwrap(), &vec![1u8, 2, 3]);
        let map = HostValue::Map(IndexMap::from([("k".to_string(), HostValue::Int(1))]));
        assert!(host_to_term(&map).is_reference());
    }

    #[test]
    fn typed() {
        assert_eq!(
            term_to_host_as(&Term::Integer(7), HostKind::Long).unwrap(),
            HostValue::Long(7)
        );
        assert_eq!(
            term_to_host_as(&Term::Integer(7), HostKind::Byte).unwrap(),
            HostValue::Byte(7)
        );
        assert_eq!(
            term_to_host_as(&Term::Integer(300), HostKind::Byte)
                .unwrap_err()
                .kind(),
            ErrorKind::Prolog
        );
        assert_eq!(
            term_to_host_as(&Term::Integer(65), HostKind::Char).unwrap(),
            HostValue::Char('A')
        );
        assert!(term_to_host_as(&Term::Double(1.5), HostKind::Int).is_err());
        assert!(term_to_host_as(&Term::atom("a"), HostKind::Int).is_err());
        assert_eq!(
            cast_term(&Term::atom("pam"), TermType::Atom).unwrap(),
            Term::atom("pam")
        );
        assert_eq!(
            host_to_term_as(&HostValue::Int(7), TermType::Long).unwrap(),
            Term::Long(7)
        );
        assert!(host_to_term_as(&HostValue::Long(1 << 40), TermType::Integer).is_err());
        assert_eq!(
            cast_term(&Term::Long(3), TermType::Double).unwrap(),
            Term::Double(3.0)
        );
    }

    #[test]
    fn aggregates() {
        let rows = vec![vec![HostValue::from("a")], vec![HostValue::Int(1)]];
        let terms = to_term_matrix(&rows);
        assert_eq!(terms, vec![vec![Term::atom("a")], vec![Term::Integer(1)]]);
        assert_eq!(from_term_matrix(&terms).unwrap(), rows);
        assert!(to_term_array(&[]).is_empty());
        let map = IndexMap::from([("X".to_string(), Term::atom("hello world"))]);
        assert_eq!(
            from_term_map(&map).unwrap(),
            IndexMap::from([("X".to_string(), HostValue::from("hello world"))])
        );
        assert!(from_term_map(&IndexMap::new()).unwrap().is_empty());
    }

    #[test]
    fn quotes() {
        assert!(contains_quotes("'pam'"));
        assert_eq!(remove_quotes("'pam'"), "pam");
        assert!(!contains_quotes("pam"));
        assert_eq!(remove_quotes("pam"), "pam");
        assert!(contains_quotes("''"));
        assert_eq!(remove_quotes("''"), "");
    }
}
