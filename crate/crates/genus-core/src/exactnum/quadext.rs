//! Numbers a + b*sqrt(d) for a square-free integer d. The engine instantiates
//! only d = 6, but the arithmetic is generic.

use super::{ArithOp, Rat};
use crate::{Error, Result};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

#[derive(Clone, PartialEq, Eq)]
pub struct QuadExt {
    a: Rat,
    b: Rat,
    d: u32,
}

fn is_square_free(d: u32) -> bool {
    if d == 0 {
        return false;
    }
    let mut p = 2u32;
    let mut d = d;
    while p * p <= d {
        if d % (p * p) == 0 {
            return false;
        }
        while d % p == 0 {
            d /= p;
        }
        p += 1;
    }
    true
}

impl QuadExt {
    pub fn new(a: Rat, b: Rat, d: u32) -> Result<Self> {
        if !is_square_free(d) || d == 1 {
            return Err(Error::NotSquareFree(d));
        }
        Ok(QuadExt { a, b, d })
    }

    /// a + b*sqrt(6), the only field the engine actually uses.
    pub fn sqrt6(a: Rat, b: Rat) -> Self {
        QuadExt { a, b, d: 6 }
    }

    pub fn rational(&self) -> &Rat {
        &self.a
    }

    pub fn radical_coeff(&self) -> &Rat {
        &self.b
    }

    pub fn radicand(&self) -> u32 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// True when the value lies in Q (no radical component).
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadExt {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d,
        }
    }

    /// Field norm a^2 - d*b^2; multiplicative, zero only at zero.
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - Rat::from(self.d as i64) * &self.b * &self.b
    }

    fn check_same_field(&self, rhs: &Self) -> Result<()> {
        if self.d != rhs.d {
            return Err(Error::MismatchedRadicand {
                left: self.d,
                right: rhs.d,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.check_same_field(rhs)?;
        Ok(self + rhs)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_same_field(rhs)?;
        Ok(self * rhs)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        self.check_same_field(rhs)?;
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // multiply by the conjugate; the norm is nonzero since d is not a square
        let n = rhs.norm();
        let num = self * &rhs.conj();
        Ok(QuadExt {
            a: &num.a / &n,
            b: &num.b / &n,
            d: self.d,
        })
    }

    pub fn scale(&self, c: &Rat) -> Self {
        QuadExt {
            a: &self.a * c,
            b: &self.b * c,
            d: self.d,
        }
    }
}

impl Add<&QuadExt> for &QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: &QuadExt) -> QuadExt {
        assert_eq!(self.d, rhs.d, "mismatched radicand");
        QuadExt {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
            d: self.d,
        }
    }
}

impl Sub<&QuadExt> for &QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: &QuadExt) -> QuadExt {
        assert_eq!(self.d, rhs.d, "mismatched radicand");
        QuadExt {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
            d: self.d,
        }
    }
}

impl Mul<&QuadExt> for &QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: &QuadExt) -> QuadExt {
        assert_eq!(self.d, rhs.d, "mismatched radicand");
        let d = Rat::from(self.d as i64);
        QuadExt {
            a: &self.a * &rhs.a + &d * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            d: self.d,
        }
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt {
            a: -&self.a,
            b: -&self.b,
            d: self.d,
        }
    }
}

/// Four-function arithmetic with field- and zero-divisor checks as errors.
pub fn quadext_arith(a: &QuadExt, b: &QuadExt, op: ArithOp) -> Result<QuadExt> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => {
            a.check_same_field(b)?;
            Ok(a - b)
        }
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Div => a.checked_div(b),
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for QuadExt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_err = || Error::Parse {
            kind: "quadratic extension",
            input: s.to_string(),
        };
        // "a + b*sqrt(d)"; the rational parts carry their own signs
        let (a_part, rest) = s.split_once(" + ").ok_or_else(parse_err)?;
        let (b_part, d_part) = rest.split_once("*sqrt(").ok_or_else(parse_err)?;
        let d_part = d_part.strip_suffix(')').ok_or_else(parse_err)?;
        let a: Rat = a_part.parse().map_err(|_| parse_err())?;
        let b: Rat = b_part.parse().map_err(|_| parse_err())?;
        let d: u32 = d_part.trim().parse().map_err(|_| parse_err())?;
        QuadExt::new(a, b, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: (i64, i64), b: (i64, i64)) -> QuadExt {
        QuadExt::sqrt6(Rat::ratio(a.0, a.1), Rat::ratio(b.0, b.1))
    }

    #[test]
    fn defining_relation() {
        let root = q((0, 1), (1, 1));
        assert_eq!(&root * &root, q((6, 1), (0, 1)));
    }

    #[test]
    fn inverse_eighth_root_squares() {
        // 1/(8*sqrt(6)) = sqrt(6)/48, whose square is 1/384
        let x = q((0, 1), (1, 48));
        assert_eq!(&x * &x, q((1, 384), (0, 1)));
    }

    #[test]
    fn conjugate_norm() {
        let x = q((3, 2), (-5, 7));
        let prod = &x * &x.conj();
        assert!(prod.is_rational());
        assert_eq!(prod.rational(), &x.norm());
        assert_eq!(x.norm(), Rat::ratio(3, 2).pow(2).unwrap() - Rat::ratio(25, 49) * Rat::from(6));
    }

    #[test]
    fn division_round_trips() {
        let x = q((3, 2), (-5, 7));
        let y = q((-1, 3), (2, 1));
        let z = x.checked_div(&y).unwrap();
        assert_eq!(&z * &y, x);
        assert!(x.checked_div(&q((0, 1), (0, 1))).is_err());
    }

    #[test]
    fn field_mismatch_is_an_error() {
        let x = QuadExt::new(Rat::one(), Rat::one(), 5).unwrap();
        let y = QuadExt::sqrt6(Rat::one(), Rat::one());
        assert!(matches!(
            quadext_arith(&x, &y, ArithOp::Add),
            Err(Error::MismatchedRadicand { left: 5, right: 6 })
        ));
        assert!(QuadExt::new(Rat::one(), Rat::one(), 12).is_err());
        assert!(QuadExt::new(Rat::one(), Rat::one(), 1).is_err());
    }

    #[test]
    fn display_round_trip() {
        let x = q((-49, 768), (0, 1));
        assert_eq!(x.to_string(), "-49/768 + 0*sqrt(6)");
        assert_eq!(x.to_string().parse::<QuadExt>().unwrap(), x);
        let y = q((0, 1), (-1, 48));
        assert_eq!(y.to_string().parse::<QuadExt>().unwrap(), y);
    }
}
