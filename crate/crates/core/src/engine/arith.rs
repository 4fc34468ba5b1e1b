//! Arithmetic evaluation for `is/2` and the numeric comparisons.
//!
//! Integer operands stay integral (results that do not fit 32 bits become
//! longs, overflow past 64 bits is an error); two floats give a float; any
//! other mix is computed in double precision. Integer `/` truncates toward
//! zero.

use std::cmp::Ordering;

use super::machine::Cell;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Num {
    Int(i64),
    Float(f32),
    Double(f64),
}

impl Num {
    pub fn to_cell(self) -> Cell {
        match self {
            Num::Int(v) => match i32::try_from(v) {
                Ok(small) => Cell::Int(small),
                Err(_) => Cell::Long(v),
            },
            Num::Float(v) => Cell::Float(v),
            Num::Double(v) => Cell::Double(v),
        }
    }

    fn as_f64(self) -> f64 {
        match self {
            Num::Int(v) => v as f64,
            Num::Float(v) => v as f64,
            Num::Double(v) => v,
        }
    }
}

fn overflow(op: &str) -> Error {
    Error::prolog(format!("integer overflow in {op}"))
}

fn zero_division() -> Error {
    Error::prolog("division by zero")
}

fn int_only(op: &str, a: Num) -> Result<i64> {
    match a {
        Num::Int(v) => Ok(v),
        other => Err(Error::prolog(format!(
            "{op} expects integers, got {}",
            other.as_f64()
        ))),
    }
}

/// Applies a binary operation, choosing the result width from the operands.
fn binary_float(a: Num, b: Num, f: impl Fn(f64, f64) -> f64) -> Num {
    match (a, b) {
        (Num::Float(x), Num::Float(y)) => Num::Float(f(x as f64, y as f64) as f32),
        _ => Num::Double(f(a.as_f64(), b.as_f64())),
    }
}

pub(crate) fn apply_binary(op: &str, a: Num, b: Num) -> Result<Num> {
    if let (Num::Int(x), Num::Int(y)) = (a, b) {
        return int_binary(op, x, y);
    }
    Ok(match op {
        "+" => binary_float(a, b, |x, y| x + y),
        "-" => binary_float(a, b, |x, y| x - y),
        "*" => binary_float(a, b, |x, y| x * y),
        "/" => {
            if b.as_f64() == 0.0 {
                return Err(zero_division());
            }
            binary_float(a, b, |x, y| x / y)
        }
        "**" | "^" => binary_float(a, b, f64::powf),
        "min" => {
            if compare(a, b) == Ordering::Greater {
                b
            } else {
                a
            }
        }
        "max" => {
            if compare(a, b) == Ordering::Less {
                b
            } else {
                a
            }
        }
        "atan2" => Num::Double(a.as_f64().atan2(b.as_f64())),
        "//" | "mod" | "rem" | "<<" | ">>" | "/\\" | "\\/" | "xor" | "gcd" => {
            int_only(op, a)?;
            int_only(op, b)?;
            unreachable!()
        }
        _ => return Err(Error::prolog(format!("{op}/2 is not an arithmetic function"))),
    })
}

fn int_binary(op: &str, x: i64, y: i64) -> Result<Num> {
    let v = match op {
        "+" => x.checked_add(y).ok_or_else(|| overflow(op))?,
        "-" => x.checked_sub(y).ok_or_else(|| overflow(op))?,
        "*" => x.checked_mul(y).ok_or_else(|| overflow(op))?,
        "/" | "//" => {
            if y == 0 {
                return Err(zero_division());
            }
            x.checked_div(y).ok_or_else(|| overflow(op))?
        }
        "rem" => {
            if y == 0 {
                return Err(zero_division());
            }
            x.checked_rem(y).ok_or_else(|| overflow(op))?
        }
        "mod" => {
            if y == 0 {
                return Err(zero_division());
            }
            x.checked_rem_euclid(y).ok_or_else(|| overflow(op))?;
            let r = x.wrapping_rem(y);
            if r != 0 && ((r < 0) != (y < 0)) {
                r + y
            } else {
                r
            }
        }
        "min" => x.min(y),
        "max" => x.max(y),
        "**" | "^" => {
            if y < 0 {
                if op == "^" && x != 1 && x != -1 {
                    return Err(Error::prolog("negative integer exponent"));
                }
                return Ok(Num::Double((x as f64).powf(y as f64)));
            }
            let exp = u32::try_from(y).map_err(|_| overflow(op))?;
            x.checked_pow(exp).ok_or_else(|| overflow(op))?
        }
        "<<" => {
            let shift = u32::try_from(y).map_err(|_| overflow(op))?;
            let v = x.checked_shl(shift).ok_or_else(|| overflow(op))?;
            if v >> shift != x {
                return Err(overflow(op));
            }
            v
        }
        ">>" => x >> y.clamp(0, 63),
        "/\\" => x & y,
        "\\/" => x | y,
        "xor" => x ^ y,
        "gcd" => {
            let (mut a, mut b) = (x.unsigned_abs(), y.unsigned_abs());
            while b != 0 {
                (a, b) = (b, a % b);
            }
            i64::try_from(a).map_err(|_| overflow(op))?
        }
        "atan2" => return Ok(Num::Double((x as f64).atan2(y as f64))),
        _ => return Err(Error::prolog(format!("{op}/2 is not an arithmetic function"))),
    };
    Ok(Num::Int(v))
}

fn unary_float(a: Num, f: impl Fn(f64) -> f64) -> Num {
    match a {
        Num::Float(x) => Num::Float(f(x as f64) as f32),
        _ => Num::Double(f(a.as_f64())),
    }
}

fn to_integer(op: &str, v: f64) -> Result<Num> {
    if !v.is_finite() || v.abs() >= 9.223_372_036_854_776e18 {
        return Err(overflow(op));
    }
    Ok(Num::Int(v as i64))
}

pub(crate) fn apply_unary(op: &str, a: Num) -> Result<Num> {
    Ok(match op {
        "-" => match a {
            Num::Int(x) => Num::Int(x.checked_neg().ok_or_else(|| overflow(op))?),
            Num::Float(x) => Num::Float(-x),
            Num::Double(x) => Num::Double(-x),
        },
        "+" => a,
        "abs" => match a {
            Num::Int(x) => Num::Int(x.checked_abs().ok_or_else(|| overflow(op))?),
            Num::Float(x) => Num::Float(x.abs()),
            Num::Double(x) => Num::Double(x.abs()),
        },
        "sign" => match a {
            Num::Int(x) => Num::Int(x.signum()),
            Num::Float(x) => Num::Float(if x == 0.0 { 0.0 } else { x.signum() }),
            Num::Double(x) => Num::Double(if x == 0.0 { 0.0 } else { x.signum() }),
        },
        "\\" => Num::Int(!int_only(op, a)?),
        "sqrt" => Num::Double(a.as_f64().sqrt()),
        "sin" => unary_float(a, f64::sin),
        "cos" => unary_float(a, f64::cos),
        "tan" => unary_float(a, f64::tan),
        "atan" => unary_float(a, f64::atan),
        "exp" => unary_float(a, f64::exp),
        "log" => {
            if a.as_f64() <= 0.0 {
                return Err(Error::prolog("log of a non-positive number"));
            }
            unary_float(a, f64::ln)
        }
        "float" => Num::Double(a.as_f64()),
        "integer" => match a {
            Num::Int(_) => a,
            _ => to_integer(op, a.as_f64().round())?,
        },
        "float_integer_part" => unary_float(a, f64::trunc),
        "float_fractional_part" => unary_float(a, f64::fract),
        "truncate" | "round" | "ceiling" | "floor" => match a {
            Num::Int(_) => a,
            _ => {
                let v = a.as_f64();
                let r = match op {
                    "truncate" => v.trunc(),
                    "round" => v.round(),
                    "ceiling" => v.ceil(),
                    _ => v.floor(),
                };
                to_integer(op, r)?
            }
        },
        _ => return Err(Error::prolog(format!("{op}/1 is not an arithmetic function"))),
    })
}

pub(crate) fn constant(name: &str) -> Option<Num> {
    match name {
        "pi" => Some(Num::Double(std::f64::consts::PI)),
        "e" => Some(Num::Double(std::f64::consts::E)),
        "inf" | "infinite" => Some(Num::Double(f64::INFINITY)),
        "nan" => Some(Num::Double(f64::NAN)),
        "max_tagged_integer" => Some(Num::Int(i32::MAX as i64)),
        _ => None,
    }
}

const TWO_63: f64 = 9_223_372_036_854_775_808.0;

fn cmp_int_real(i: i64, f: f64) -> Option<Ordering> {
    if f.is_nan() {
        return None;
    }
    if f >= TWO_63 {
        return Some(Ordering::Less);
    }
    if f < -TWO_63 {
        return Some(Ordering::Greater);
    }
    let whole = f.trunc();
    Some(i.cmp(&(whole as i64)).then_with(|| {
        let frac = f - whole;
        if frac > 0.0 {
            Ordering::Less
        } else if frac < 0.0 {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    }))
}

/// Numeric comparison by exact value. NaN compares unequal to everything,
/// which the caller treats as "not equal, not less, not greater".
pub(crate) fn compare_values(a: Num, b: Num) -> Option<Ordering> {
    match (a, b) {
        (Num::Int(x), Num::Int(y)) => Some(x.cmp(&y)),
        (Num::Int(x), other) => cmp_int_real(x, other.as_f64()),
        (other, Num::Int(y)) => cmp_int_real(y, other.as_f64()).map(Ordering::reverse),
        _ => a.as_f64().partial_cmp(&b.as_f64()),
    }
}

fn compare(a: Num, b: Num) -> Ordering {
    compare_values(a, b).unwrap_or(Ordering::Equal)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_ops() {
        assert_eq!(apply_binary("+", Num::Int(5), Num::Int(3)).unwrap(), Num::Int(8));
        assert_eq!(apply_binary("/", Num::Int(7), Num::Int(2)).unwrap(), Num::Int(3));
        assert_eq!(apply_binary("/", Num::Int(-7), Num::Int(2)).unwrap(), Num::Int(-3));
        assert_eq!(apply_binary("mod", Num::Int(-7), Num::Int(2)).unwrap(), Num::Int(1));
        assert_eq!(apply_binary("rem", Num::Int(-7), Num::Int(2)).unwrap(), Num::Int(-1));
        assert!(apply_binary("/", Num::Int(1), Num::Int(0)).is_err());
        assert!(apply_binary("*", Num::Int(i64::MAX), Num::Int(2)).is_err());
        assert_eq!(apply_binary("**", Num::Int(2), Num::Int(10)).unwrap(), Num::Int(1024));
        assert!(apply_binary("<<", Num::Int(1), Num::Int(64)).is_err());
    }

    #[test]
    fn widths() {
        assert_eq!(
            apply_binary("+", Num::Float(1.5), Num::Float(1.0)).unwrap(),
            Num::Float(2.5)
        );
        assert_eq!(
            apply_binary("+", Num::Int(1), Num::Float(1.5)).unwrap(),
            Num::Double(2.5)
        );
        assert_eq!(Num::Int(1 << 40).to_cell(), Cell::Long(1 << 40));
        assert_eq!(Num::Int(3).to_cell(), Cell::Int(3));
        assert!(apply_binary("mod", Num::Double(1.0), Num::Int(2)).is_err());
    }

    #[test]
    fn unary() {
        assert_eq!(apply_unary("-", Num::Int(3)).unwrap(), Num::Int(-3));
        assert_eq!(apply_unary("truncate", Num::Double(-2.7)).unwrap(), Num::Int(-2));
        assert!(apply_unary("truncate", Num::Double(f64::NAN)).is_err());
        assert!(apply_unary("nope", Num::Int(1)).is_err());
    }

    #[test]
    fn comparisons() {
        assert_eq!(
            compare_values(Num::Int(1), Num::Double(1.0)),
            Some(Ordering::Equal)
        );
        assert_eq!(
            compare_values(Num::Int(i64::MAX), Num::Double(TWO_63)),
            Some(Ordering::Less)
        );
        assert_eq!(compare_values(Num::Double(f64::NAN), Num::Int(0)), None);
    }
}
