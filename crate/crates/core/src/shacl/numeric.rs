//! Exact numeric values of XSD literals, for range comparisons across
//! integer, decimal, float and double.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::model::Literal;
use crate::vocab::xsd;

#[derive(Debug, Clone, PartialEq)]
pub enum Numeric {
    Finite(BigRational),
    PosInf,
    NegInf,
    NaN,
}

impl Numeric {
    /// Total over non-NaN values; NaN compares with nothing.
    pub fn compare(&self, other: &Numeric) -> Option<Ordering> {
        use Numeric::*;
        match (self, other) {
            (NaN, _) | (_, NaN) => None,
            (Finite(a), Finite(b)) => Some(a.cmp(b)),
            (PosInf, PosInf) | (NegInf, NegInf) => Some(Ordering::Equal),
            (PosInf, _) | (_, NegInf) => Some(Ordering::Greater),
            (NegInf, _) | (_, PosInf) => Some(Ordering::Less),
        }
    }
}

const INTEGER_TYPES: &[&str] = &[
    xsd::INTEGER,
    xsd::INT,
    xsd::LONG,
    xsd::SHORT,
    xsd::BYTE,
    xsd::NON_NEGATIVE_INTEGER,
    xsd::POSITIVE_INTEGER,
    xsd::NON_POSITIVE_INTEGER,
    xsd::NEGATIVE_INTEGER,
    xsd::UNSIGNED_LONG,
    xsd::UNSIGNED_INT,
    xsd::UNSIGNED_SHORT,
    xsd::UNSIGNED_BYTE,
];

pub fn is_numeric_datatype(datatype: &str) -> bool {
    INTEGER_TYPES.contains(&datatype) || matches!(datatype, xsd::DECIMAL | xsd::FLOAT | xsd::DOUBLE)
}

/// The exact value of a numeric literal, or `None` for non-numeric
/// datatypes and ill-formed lexical forms.
pub fn numeric_value(literal: &Literal) -> Option<Numeric> {
    let lex = literal.lexical().trim();
    let dt = literal.datatype().as_str();
    if INTEGER_TYPES.contains(&dt) {
        parse_integer(lex).map(|i| Numeric::Finite(BigRational::from_integer(i)))
    } else if dt == xsd::DECIMAL {
        parse_decimal(lex).map(Numeric::Finite)
    } else if dt == xsd::FLOAT || dt == xsd::DOUBLE {
        match lex {
            "INF" | "+INF" => Some(Numeric::PosInf),
            "-INF" => Some(Numeric::NegInf),
            "NaN" => Some(Numeric::NaN),
            _ => parse_floating(lex).map(Numeric::Finite),
        }
    } else {
        None
    }
}

/// Whether `lexical` is a valid form for a datatype this module knows.
/// Unknown datatypes are accepted.
pub fn lexical_ok(literal: &Literal) -> bool {
    let dt = literal.datatype().as_str();
    if is_numeric_datatype(dt) {
        numeric_value(literal).is_some()
    } else if dt == xsd::BOOLEAN {
        matches!(literal.lexical(), "true" | "false" | "1" | "0")
    } else {
        true
    }
}

fn split_sign(s: &str) -> (bool, &str) {
    match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    }
}

fn all_digits(s: &str) -> bool {
    s.bytes().all(|b| b.is_ascii_digit())
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let (neg, digits) = split_sign(s);
    if digits.is_empty() || !all_digits(digits) {
        return None;
    }
    let v: BigInt = digits.parse().ok()?;
    Some(if neg { -v } else { v })
}

fn parse_decimal(s: &str) -> Option<BigRational> {
    let (neg, body) = split_sign(s);
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if (int.is_empty() && frac.is_empty()) || !all_digits(int) || !all_digits(frac) {
        return None;
    }
    let digits = format!("{int}{frac}");
    let mantissa: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    let scale = BigInt::from(10u32).pow(frac.len() as u32);
    let v = BigRational::new(mantissa, scale);
    Some(if neg { -v } else { v })
}

fn parse_floating(s: &str) -> Option<BigRational> {
    let Some(idx) = s.find(['e', 'E']) else {
        return parse_decimal(s);
    };
    let mantissa = parse_decimal(&s[..idx])?;
    let exp = parse_integer(&s[idx + 1..])?;
    let exp: i32 = exp.try_into().ok()?;
    if exp.abs() > 4096 {
        return None;
    }
    let ten = BigRational::from_integer(BigInt::from(10u32));
    let factor = if exp >= 0 {
        num_traits::pow(ten, exp as usize)
    } else {
        BigRational::one() / num_traits::pow(ten, (-exp) as usize)
    };
    Some(mantissa * factor)
}
