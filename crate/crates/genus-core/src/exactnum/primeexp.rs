//! Radical monomials Prod_p p^(e_p) with rational exponents, used only for
//! the double-scaling pinning constants. No general real arithmetic: the
//! representable values are exactly the products of rational prime powers.

use super::Rat;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PrimeExponentReal {
    // prime -> reduced rational exponent; zero exponents never stored
    exps: BTreeMap<u64, Rat>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += 1;
    }
    true
}

impl PrimeExponentReal {
    pub fn one() -> Self {
        PrimeExponentReal {
            exps: BTreeMap::new(),
        }
    }

    pub fn prime_power(p: u64, e: Rat) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut exps = BTreeMap::new();
        if !e.is_zero() {
            exps.insert(p, e);
        }
        Ok(PrimeExponentReal { exps })
    }

    /// Exact factorization of a positive rational into prime powers.
    pub fn from_rational(q: &Rat) -> Result<Self> {
        if !q.is_positive() {
            return Err(Error::BadArgument(format!(
                "cannot factor the non-positive value {q}"
            )));
        }
        let mut out = PrimeExponentReal::one();
        out.absorb_integer(q.numer(), 1);
        out.absorb_integer(q.denom(), -1);
        Ok(out)
    }

    fn absorb_integer(&mut self, n: &BigInt, sign: i64) {
        let mut n = n.abs().to_u64().expect("pinning-constant integers are small");
        let mut p = 2u64;
        while n > 1 {
            if n % p == 0 {
                let mut k = 0i64;
                while n % p == 0 {
                    n /= p;
                    k += 1;
                }
                self.push(p, Rat::from(sign * k));
            }
            p += 1;
        }
    }

    fn push(&mut self, p: u64, e: Rat) {
        let cur = self.exps.remove(&p).unwrap_or_else(Rat::zero);
        let new = cur + e;
        if !new.is_zero() {
            self.exps.insert(p, new);
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (p, e) in &rhs.exps {
            out.push(*p, e.clone());
        }
        out
    }

    pub fn pow(&self, k: &Rat) -> Self {
        if k.is_zero() {
            return PrimeExponentReal::one();
        }
        PrimeExponentReal {
            exps: self
                .exps
                .iter()
                .map(|(p, e)| (*p, e * k))
                .collect(),
        }
    }

    pub fn recip(&self) -> Self {
        self.pow(&Rat::from(-1))
    }

    pub fn exponent_of(&self, p: u64) -> Rat {
        self.exps.get(&p).cloned().unwrap_or_else(Rat::zero)
    }

    /// The rational this value equals, when every exponent is an integer.
    pub fn to_rational(&self) -> Option<Rat> {
        let mut out = Rat::one();
        for (p, e) in &self.exps {
            let e = e.to_bigint().ok()?.to_i64()?;
            out = out * Rat::from(*p as i64).pow(e).expect("prime is nonzero");
        }
        Some(out)
    }
}

impl fmt::Display for PrimeExponentReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .exps
            .iter()
            .map(|(p, e)| format!("{p}^({e})"))
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}
