//! Truncated power series in s with exact rational coefficients, used to
//! cross-check every closed form against its expansion at s = 0.

use super::ratz0::{LogExtendedZ0, RationalZ0};
use crate::combinatorics::c_nu;
use crate::exactnum::{binomial, Rat};
use crate::{Error, Result};

/// Coefficients of s^0..s^order. Binary operations truncate to the shorter
/// operand; an order mismatch is information loss, not an error.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PowerSeriesS {
    coeffs: Vec<Rat>,
}

impl PowerSeriesS {
    pub fn zero(order: usize) -> Self {
        PowerSeriesS {
            coeffs: vec![Rat::zero(); order + 1],
        }
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the s^0 term");
        PowerSeriesS { coeffs }
    }

    pub fn constant(c: Rat, order: usize) -> Self {
        let mut s = PowerSeriesS::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, j: usize) -> &Rat {
        &self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        PowerSeriesS {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        PowerSeriesS {
            coeffs: (0..=n).map(|j| &self.coeffs[j] + &rhs.coeffs[j]).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        PowerSeriesS {
            coeffs: (0..=n).map(|j| &self.coeffs[j] - &rhs.coeffs[j]).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        PowerSeriesS {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        PowerSeriesS {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let mut out = vec![Rat::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] += &(a * b);
            }
        }
        PowerSeriesS { coeffs: out }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = PowerSeriesS::constant(Rat::one(), self.order());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv0 = self.coeffs[0].recip()?;
        let mut out = vec![Rat::zero(); self.coeffs.len()];
        out[0] = inv0.clone();
        for n in 1..self.coeffs.len() {
            let mut acc = Rat::zero();
            for k in 1..=n {
                acc += &(&self.coeffs[k] * &out[n - k]);
            }
            out[n] = -(&acc) * &inv0;
        }
        Ok(PowerSeriesS { coeffs: out })
    }

    /// log of a series with constant term 1, term by term from f'/f.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::BadArgument(format!(
                "log needs constant term 1, got {}",
                self.coeffs[0]
            )));
        }
        let inv = self.inverse()?;
        let n = self.order();
        let mut out = vec![Rat::zero(); n + 1];
        // (log f)' = f'/f; integrate the product coefficients
        for m in 1..=n {
            let mut acc = Rat::zero();
            for k in 1..=m {
                acc += &(&self.coeffs[k] * &inv.coeffs[m - k] * &Rat::from(k as i64));
            }
            out[m] = acc / Rat::from(m as i64);
        }
        Ok(PowerSeriesS { coeffs: out })
    }

    /// Termwise d/ds; the top coefficient's image is unknown, so the order
    /// drops by one.
    pub fn derivative_s(&self) -> Self {
        if self.coeffs.len() == 1 {
            return PowerSeriesS::zero(0);
        }
        PowerSeriesS {
            coeffs: (1..self.coeffs.len())
                .map(|j| &self.coeffs[j] * &Rat::from(j as i64))
                .collect(),
        }
    }

    /// (s d/ds) keeps the order: it rescales coefficient j by j.
    pub fn theta(&self) -> Self {
        PowerSeriesS {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| c * &Rat::from(j as i64))
                .collect(),
        }
    }
}

/// Series of z0(s) itself: coefficient j is c_nu^j * binom(nu j, j-1)/j.
pub fn z0_series(nu: u32, order: usize) -> Result<PowerSeriesS> {
    let c = Rat::from_bigint(c_nu(nu)?);
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(Rat::one());
    let mut cpow = Rat::one();
    for j in 1..=order as u64 {
        cpow = &cpow * &c;
        let zeta = Rat::new(binomial(nu as u64 * j, j - 1), j.into())?;
        coeffs.push(&cpow * &zeta);
    }
    Ok(PowerSeriesS::from_coeffs(coeffs))
}

/// u(s) = nu - (nu-1) z0(s).
pub fn u_series(nu: u32, order: usize) -> Result<PowerSeriesS> {
    let z = z0_series(nu, order)?;
    Ok(PowerSeriesS::constant(Rat::from(nu as i64), order)
        .sub(&z.scale(&Rat::from(nu as i64 - 1))))
}

/// Expand a rational value of z0 around s = 0 to the requested order.
pub fn compose_rational(f: &RationalZ0, order: usize) -> Result<PowerSeriesS> {
    let nu = f.nu();
    if f.is_zero() {
        return Ok(PowerSeriesS::zero(order));
    }
    let z = z0_series(nu, order)?;
    // Horner over the numerator
    let mut num = PowerSeriesS::zero(order);
    for c in f.numerator().coeffs().iter().rev() {
        num = num.mul(&z).add(&PowerSeriesS::constant(c.clone(), order));
    }
    let zinv = z.inverse()?;
    let uinv = u_series(nu, order)?.inverse()?;
    let mut out = num;
    for _ in 0..f.z0_pole() {
        out = out.mul(&zinv);
    }
    for _ in 0..f.u_pole() {
        out = out.mul(&uinv);
    }
    Ok(out)
}

/// Expand rational + c1 log z0 + c2 log u; both logs vanish at s = 0, so the
/// result is an honest power series.
pub fn compose_log_extended(f: &LogExtendedZ0, order: usize) -> Result<PowerSeriesS> {
    let nu = f.nu();
    let mut out = compose_rational(&f.rational, order)?;
    if !f.log_z0.is_zero() {
        out = out.add(&z0_series(nu, order)?.log()?.scale(&f.log_z0));
    }
    if !f.log_u.is_zero() {
        out = out.add(&u_series(nu, order)?.log()?.scale(&f.log_u));
    }
    Ok(out)
}
