//! Finite Laurent polynomials in u = nu - (nu-1)*z0. These carry the whole
//! partial-fraction bookkeeping: negative powers are pole orders at the
//! caustic point z0 = nu/(nu-1).

use super::PolyQ;
use crate::exactnum::Rat;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentU {
    min_degree: i64,
    // coefficient of u^(min_degree + i) at index i; both ends nonzero unless zero element
    coeffs: Vec<Rat>,
}

impl LaurentU {
    pub fn zero() -> Self {
        LaurentU {
            min_degree: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        LaurentU {
            min_degree: 0,
            coeffs: vec![c],
        }
        .trimmed()
    }

    pub fn one() -> Self {
        LaurentU::constant(Rat::one())
    }

    /// c * u^k.
    pub fn monomial(c: Rat, k: i64) -> Self {
        LaurentU {
            min_degree: k,
            coeffs: vec![c],
        }
        .trimmed()
    }

    pub fn from_coeffs(min_degree: i64, coeffs: Vec<Rat>) -> Self {
        LaurentU { min_degree, coeffs }.trimmed()
    }

    /// Plain polynomial in u, coefficient of u^i at index i.
    pub fn from_poly(p: &PolyQ) -> Self {
        LaurentU {
            min_degree: 0,
            coeffs: p.coeffs().to_vec(),
        }
        .trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(Rat::is_zero) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.min_degree += lead_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.min_degree = 0;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_degree(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.min_degree)
    }

    pub fn max_degree(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.min_degree + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, k: i64) -> Rat {
        if self.is_zero() || k < self.min_degree {
            return Rat::zero();
        }
        let i = (k - self.min_degree) as usize;
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.min_degree + i as i64, c))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.min_degree.min(rhs.min_degree);
        let hi = self.max_degree().unwrap().max(rhs.max_degree().unwrap());
        let coeffs = (lo..=hi).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        LaurentU {
            min_degree: lo,
            coeffs,
        }
        .trimmed()
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentU {
            min_degree: self.min_degree,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return LaurentU::zero();
        }
        LaurentU {
            min_degree: self.min_degree,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return LaurentU::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentU {
            min_degree: self.min_degree + rhs.min_degree,
            coeffs,
        }
        .trimmed()
    }

    /// Multiply by u^k.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return LaurentU::zero();
        }
        LaurentU {
            min_degree: self.min_degree + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Value at u = 1, i.e. the plain sum of coefficients.
    pub fn eval_at_one(&self) -> Rat {
        self.coeffs.iter().sum()
    }

    pub fn eval(&self, u: &Rat) -> Result<Rat> {
        if self.is_zero() {
            return Ok(Rat::zero());
        }
        if u.is_zero() && self.min_degree < 0 {
            return Err(Error::DivisionByZero);
        }
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * u + c;
        }
        Ok(acc * u.pow(self.min_degree)?)
    }

    /// The nonnegative-degree part as a PolyQ; errors if any pole term remains.
    pub fn into_poly(&self, context: &'static str) -> Result<PolyQ> {
        if self.min_degree().is_some_and(|m| m < 0) {
            return Err(Error::Divisibility { context });
        }
        let mut coeffs = vec![Rat::zero(); self.min_degree.max(0) as usize];
        coeffs.extend(self.coeffs.iter().cloned());
        Ok(PolyQ::from_coeffs(coeffs))
    }
}

/// Antiderivative with respect to z, where z and u are tied by dz = -du/(nu-1):
/// termwise u^k maps to -u^(k+1)/((nu-1)(k+1)). A u^-1 term has no Laurent
/// antiderivative; that is the resonance this engine is never allowed to hit,
/// so it comes back as an error carrying the offending coefficient.
pub fn laurent_antiderivative_u(nu: u32, f: &LaurentU) -> Result<LaurentU> {
    let res = f.coeff(-1);
    if !res.is_zero() {
        return Err(Error::Resonance {
            coefficient: res.to_string(),
        });
    }
    let mut out = LaurentU::zero();
    for (k, c) in f.iter() {
        if c.is_zero() {
            continue;
        }
        let denom = Rat::from(-((nu as i64 - 1) * (k + 1)));
        out = out.add(&LaurentU::monomial(c / &denom, k + 1));
    }
    Ok(out)
}

/// ((nu - u)/(nu - 1))^m as a degree-m polynomial in u; this is z0^m rewritten
/// in the u variable.
pub fn z0_power_to_u(nu: u32, m: u32) -> LaurentU {
    let base = LaurentU::from_coeffs(
        0,
        vec![
            Rat::from(nu as i64) / Rat::from(nu as i64 - 1),
            Rat::from(-1) / Rat::from(nu as i64 - 1),
        ],
    );
    let mut acc = LaurentU::one();
    for _ in 0..m {
        acc = acc.mul(&base);
    }
    acc
}
