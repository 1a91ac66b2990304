//! Rationals scaled by a power of sqrt(pi), written coeff * pi^(e/2).
//! Sums only combine like powers; products add exponents. Half-integer Gamma
//! values land here: Gamma(n) is rational, Gamma(n + 1/2) is rational*sqrt(pi).

use super::Rat;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::One;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, PartialEq, Eq)]
pub struct SqrtPiScaled {
    coeff: Rat,
    pi_half_exponent: i64,
}

impl SqrtPiScaled {
    pub fn new(coeff: Rat, pi_half_exponent: i64) -> Self {
        SqrtPiScaled {
            coeff,
            pi_half_exponent,
        }
    }

    pub fn rational(coeff: Rat) -> Self {
        SqrtPiScaled {
            coeff,
            pi_half_exponent: 0,
        }
    }

    pub fn coeff(&self) -> &Rat {
        &self.coeff
    }

    pub fn pi_half_exponent(&self) -> i64 {
        self.pi_half_exponent
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        if self.pi_half_exponent != rhs.pi_half_exponent {
            return Err(Error::PiExponentMismatch {
                left: self.pi_half_exponent,
                right: rhs.pi_half_exponent,
            });
        }
        Ok(SqrtPiScaled {
            coeff: &self.coeff + &rhs.coeff,
            pi_half_exponent: self.pi_half_exponent,
        })
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        SqrtPiScaled {
            coeff: &self.coeff * &rhs.coeff,
            pi_half_exponent: self.pi_half_exponent + rhs.pi_half_exponent,
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        SqrtPiScaled {
            coeff: &self.coeff * c,
            pi_half_exponent: self.pi_half_exponent,
        }
    }

    pub fn recip(&self) -> Result<Self> {
        Ok(SqrtPiScaled {
            coeff: self.coeff.recip()?,
            pi_half_exponent: -self.pi_half_exponent,
        })
    }
}

impl fmt::Display for SqrtPiScaled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pi_half_exponent == 0 {
            return write!(f, "{}", self.coeff);
        }
        let e = self.pi_half_exponent;
        if e % 2 == 0 {
            write!(f, "{} * pi^({})", self.coeff, e / 2)
        } else {
            write!(f, "{} * pi^({}/2)", self.coeff, e)
        }
    }
}

impl fmt::Debug for SqrtPiScaled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for SqrtPiScaled {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_err = || Error::Parse {
            kind: "pi-scaled rational",
            input: s.to_string(),
        };
        match s.split_once(" * pi^(") {
            None => Ok(SqrtPiScaled::rational(s.trim().parse()?)),
            Some((c, e)) => {
                let coeff: Rat = c.parse().map_err(|_| parse_err())?;
                let e = e.strip_suffix(')').ok_or_else(parse_err)?;
                let half = match e.split_once('/') {
                    None => 2 * e.parse::<i64>().map_err(|_| parse_err())?,
                    Some((num, "2")) => num.parse::<i64>().map_err(|_| parse_err())?,
                    Some(_) => return Err(parse_err()),
                };
                Ok(SqrtPiScaled::new(coeff, half))
            }
        }
    }
}

/// Gamma at a positive integer or half-integer argument, exactly.
/// Gamma(n) = (n-1)!, Gamma(1/2) = sqrt(pi), Gamma(x+1) = x*Gamma(x).
pub fn gamma_half_integer(m: &Rat) -> Result<SqrtPiScaled> {
    let twice = (m * &Rat::from(2)).to_bigint().map_err(|_| Error::BadGammaArgument(m.to_string()))?;
    if twice <= BigInt::from(0) {
        return Err(Error::BadGammaArgument(m.to_string()));
    }
    if m.is_integer() {
        let n: u64 = m
            .to_bigint()
            .unwrap()
            .try_into()
            .map_err(|_| Error::BadGammaArgument(m.to_string()))?;
        Ok(SqrtPiScaled::rational(Rat::from_bigint(super::factorial(
            n - 1,
        ))))
    } else {
        // m = k + 1/2: Gamma(m) = (2k)!/(4^k k!) * sqrt(pi)
        let k: u64 = ((twice - BigInt::one()) / BigInt::from(2))
            .try_into()
            .map_err(|_| Error::BadGammaArgument(m.to_string()))?;
        let num = Rat::from_bigint(super::factorial(2 * k));
        let den = Rat::from_bigint(super::factorial(k)) * Rat::from(4).pow(k as i64).unwrap();
        Ok(SqrtPiScaled::new(num / den, 1))
    }
}
