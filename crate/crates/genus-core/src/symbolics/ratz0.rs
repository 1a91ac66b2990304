//! Rational functions of z0 with all poles confined to z0 = 0 and u = 0
//! (u = nu - (nu-1)*z0), optionally extended by logarithms of z0 and u.
//! Values stay canonical: the numerator shares no factor with the denominator.

use super::{LaurentU, PolyQ};
use crate::combinatorics::c_nu;
use crate::exactnum::Rat;
use crate::{Error, Result};
use std::fmt;

/// numerator / (z0^z0_pole * u^u_pole), canonical.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalZ0 {
    nu: u32,
    numerator: PolyQ,
    z0_pole: u32,
    u_pole: u32,
}

/// The denominator factor u as a polynomial in z0.
pub fn u_poly(nu: u32) -> PolyQ {
    PolyQ::from_coeffs(vec![Rat::from(nu as i64), Rat::from(-(nu as i64 - 1))])
}

impl RationalZ0 {
    pub fn new(nu: u32, numerator: PolyQ, z0_pole: u32, u_pole: u32) -> Self {
        RationalZ0 {
            nu,
            numerator,
            z0_pole,
            u_pole,
        }
        .canonicalized()
    }

    pub fn zero(nu: u32) -> Self {
        RationalZ0 {
            nu,
            numerator: PolyQ::zero(),
            z0_pole: 0,
            u_pole: 0,
        }
    }

    pub fn constant(nu: u32, c: Rat) -> Self {
        RationalZ0 {
            nu,
            numerator: PolyQ::constant(c),
            z0_pole: 0,
            u_pole: 0,
        }
    }

    pub fn z0(nu: u32) -> Self {
        RationalZ0 {
            nu,
            numerator: PolyQ::x(),
            z0_pole: 0,
            u_pole: 0,
        }
    }

    pub fn from_poly(nu: u32, p: PolyQ) -> Self {
        RationalZ0 {
            nu,
            numerator: p,
            z0_pole: 0,
            u_pole: 0,
        }
    }

    /// z0^z0_power * l(u) brought over the common denominator.
    pub fn from_z0_laurent(nu: u32, z0_power: i64, l: &LaurentU) -> Self {
        if l.is_zero() {
            return RationalZ0::zero(nu);
        }
        let min = l.min_degree().unwrap();
        let u_pole = (-min).max(0) as u32;
        let up = u_poly(nu);
        // numerator = sum_k c_k u^(k + u_pole), a true polynomial
        let mut num = PolyQ::zero();
        let mut upow = up.pow((l.min_degree().unwrap() + u_pole as i64) as usize);
        for (_, c) in l.iter() {
            num = num.add(&upow.scale(c));
            upow = upow.mul(&up);
        }
        let (z0_pole, shift) = if z0_power < 0 {
            ((-z0_power) as u32, 0usize)
        } else {
            (0, z0_power as usize)
        };
        RationalZ0::new(nu, num.shift_up(shift), z0_pole, u_pole)
    }

    fn canonicalized(mut self) -> Self {
        if self.numerator.is_zero() {
            self.z0_pole = 0;
            self.u_pole = 0;
            return self;
        }
        while self.z0_pole > 0 && self.numerator.coeff(0).is_zero() {
            let coeffs = self.numerator.coeffs()[1..].to_vec();
            self.numerator = PolyQ::from_coeffs(coeffs);
            self.z0_pole -= 1;
        }
        let up = u_poly(self.nu);
        while self.u_pole > 0 {
            let (q, r) = self.numerator.div_rem(&up);
            if r.is_zero() {
                self.numerator = q;
                self.u_pole -= 1;
            } else {
                break;
            }
        }
        self
    }

    pub fn nu(&self) -> u32 {
        self.nu
    }

    pub fn numerator(&self) -> &PolyQ {
        &self.numerator
    }

    pub fn z0_pole(&self) -> u32 {
        self.z0_pole
    }

    pub fn u_pole(&self) -> u32 {
        self.u_pole
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.nu, rhs.nu, "mixed nu");
        let p = self.z0_pole.max(rhs.z0_pole);
        let q = self.u_pole.max(rhs.u_pole);
        let up = u_poly(self.nu);
        let lift = |f: &Self| {
            f.numerator
                .shift_up((p - f.z0_pole) as usize)
                .mul(&up.pow((q - f.u_pole) as usize))
        };
        RationalZ0::new(self.nu, lift(self).add(&lift(rhs)), p, q)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        RationalZ0 {
            nu: self.nu,
            numerator: self.numerator.neg(),
            z0_pole: self.z0_pole,
            u_pole: self.u_pole,
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return RationalZ0::zero(self.nu);
        }
        RationalZ0 {
            nu: self.nu,
            numerator: self.numerator.scale(c),
            z0_pole: self.z0_pole,
            u_pole: self.u_pole,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.nu, rhs.nu, "mixed nu");
        RationalZ0::new(
            self.nu,
            self.numerator.mul(&rhs.numerator),
            self.z0_pole + rhs.z0_pole,
            self.u_pole + rhs.u_pole,
        )
    }

    pub fn mul_poly(&self, p: &PolyQ) -> Self {
        RationalZ0::new(
            self.nu,
            self.numerator.mul(p),
            self.z0_pole,
            self.u_pole,
        )
    }

    /// Multiply by z0^k (k of either sign).
    pub fn mul_z0_pow(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        if k >= 0 {
            RationalZ0::new(
                self.nu,
                self.numerator.shift_up(k as usize),
                self.z0_pole,
                self.u_pole,
            )
        } else {
            RationalZ0::new(
                self.nu,
                self.numerator.clone(),
                self.z0_pole + (-k) as u32,
                self.u_pole,
            )
        }
    }

    /// Multiply by u^k (k of either sign).
    pub fn mul_u_pow(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        if k >= 0 {
            RationalZ0::new(
                self.nu,
                self.numerator.mul(&u_poly(self.nu).pow(k as usize)),
                self.z0_pole,
                self.u_pole,
            )
        } else {
            RationalZ0::new(
                self.nu,
                self.numerator.clone(),
                self.z0_pole,
                self.u_pole + (-k) as u32,
            )
        }
    }

    /// d/dz0 by the quotient rule; the pole set never grows beyond {z0, u}.
    pub fn derivative_z0(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let p = self.z0_pole as i64;
        let q = self.u_pole as i64;
        let up = u_poly(self.nu);
        // [N' z0 u - p N u + q (nu-1) N z0] / (z0^(p+1) u^(q+1))
        let mut num = self
            .numerator
            .derivative()
            .mul(&PolyQ::x())
            .mul(&up);
        num = num.sub(&self.numerator.mul(&up).scale(&Rat::from(p)));
        num = num.add(
            &self
                .numerator
                .mul(&PolyQ::x())
                .scale(&Rat::from(q * (self.nu as i64 - 1))),
        );
        RationalZ0::new(self.nu, num, self.z0_pole + 1, self.u_pole + 1)
    }

    /// d/ds via dz0/ds = c_nu z0^(nu+1)/u.
    pub fn derivative_s(&self) -> Self {
        let c = Rat::from_bigint(c_nu(self.nu).expect("nu checked at construction"));
        self.derivative_z0()
            .mul_z0_pow(self.nu as i64 + 1)
            .mul_u_pow(-1)
            .scale(&c)
    }

    /// Multiply by s = (z0 - 1)/(c_nu z0^nu).
    pub fn mul_s(&self) -> Self {
        let c = Rat::from_bigint(c_nu(self.nu).expect("nu checked at construction"));
        self.mul_poly(&PolyQ::from_coeffs(vec![Rat::from(-1), Rat::one()]))
            .mul_z0_pow(-(self.nu as i64))
            .scale(&c.recip().expect("c_nu is positive"))
    }

    pub fn value_at(&self, x: &Rat) -> Result<Rat> {
        let den = x.pow(self.z0_pole as i64)? * u_poly(self.nu).eval(x).pow(self.u_pole as i64)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.numerator.eval(x) / den)
    }

    /// z0 = 1 is u = 1, so the denominator is 1 there.
    pub fn vanishes_at_one(&self) -> bool {
        self.numerator.eval(&Rat::one()).is_zero()
    }

    /// Canonical text form, e.g. "(2/3 - 4/3*z0) / (z0^2 * (2-1*z0)^9)".
    pub fn render(&self) -> String {
        let num = self.numerator.render("z0");
        let mut factors = Vec::new();
        if self.z0_pole > 0 {
            factors.push(if self.z0_pole == 1 {
                "z0".to_string()
            } else {
                format!("z0^{}", self.z0_pole)
            });
        }
        if self.u_pole > 0 {
            let u = format!("({}-{}*z0)", self.nu, self.nu - 1);
            factors.push(if self.u_pole == 1 {
                u
            } else {
                format!("{u}^{}", self.u_pole)
            });
        }
        if factors.is_empty() {
            num
        } else {
            format!("({}) / ({})", num, factors.join(" * "))
        }
    }
}

impl fmt::Display for RationalZ0 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// RationalZ0 plus c1*log(z0) + c2*log(u). Differentiating in s always lands
/// back in RationalZ0, which is why the log coefficients are bare rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LogExtendedZ0 {
    pub rational: RationalZ0,
    pub log_z0: Rat,
    pub log_u: Rat,
}

impl LogExtendedZ0 {
    pub fn from_rational(rational: RationalZ0) -> Self {
        LogExtendedZ0 {
            rational,
            log_z0: Rat::zero(),
            log_u: Rat::zero(),
        }
    }

    pub fn new(rational: RationalZ0, log_z0: Rat, log_u: Rat) -> Self {
        LogExtendedZ0 {
            rational,
            log_z0,
            log_u,
        }
    }

    pub fn nu(&self) -> u32 {
        self.rational.nu()
    }

    pub fn has_logs(&self) -> bool {
        !self.log_z0.is_zero() || !self.log_u.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        LogExtendedZ0 {
            rational: self.rational.add(&rhs.rational),
            log_z0: &self.log_z0 + &rhs.log_z0,
            log_u: &self.log_u + &rhs.log_u,
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        LogExtendedZ0 {
            rational: self.rational.scale(c),
            log_z0: &self.log_z0 * c,
            log_u: &self.log_u * c,
        }
    }

    /// d/ds; log z0 contributes c_nu z0^nu/u, log u contributes
    /// -(nu-1) c_nu z0^(nu+1)/u^2.
    pub fn derivative_s(&self) -> RationalZ0 {
        let nu = self.nu();
        let c = Rat::from_bigint(c_nu(nu).expect("nu checked at construction"));
        let mut out = self.rational.derivative_s();
        if !self.log_z0.is_zero() {
            let term = RationalZ0::new(
                nu,
                PolyQ::x().pow(nu as usize).scale(&(&c * &self.log_z0)),
                0,
                1,
            );
            out = out.add(&term);
        }
        if !self.log_u.is_zero() {
            let coeff = -(Rat::from(nu as i64 - 1)) * &c * &self.log_u;
            let term = RationalZ0::new(nu, PolyQ::x().pow(nu as usize + 1).scale(&coeff), 0, 2);
            out = out.add(&term);
        }
        out
    }

    /// Value at z0 = 1 comes from the rational part alone (both logs vanish).
    pub fn vanishes_at_one(&self) -> bool {
        self.rational.vanishes_at_one()
    }
}

/// z0Power and a Laurent factor kept separate. The net z0 exponent is what the
/// integral-equation bookkeeping needs; absorbing it into u too early destroys
/// the cancellation structure.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialTerm {
    pub z0_power: i64,
    pub laurent: LaurentU,
}

impl MonomialTerm {
    pub fn new(z0_power: i64, laurent: LaurentU) -> Self {
        MonomialTerm { z0_power, laurent }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        MonomialTerm {
            z0_power: self.z0_power + rhs.z0_power,
            laurent: self.laurent.mul(&rhs.laurent),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        MonomialTerm {
            z0_power: self.z0_power,
            laurent: self.laurent.scale(c),
        }
    }

    pub fn to_rational(&self, nu: u32) -> RationalZ0 {
        RationalZ0::from_z0_laurent(nu, self.z0_power, &self.laurent)
    }
}

/// Coefficient of x^g in log(z_0 + z_1 x + ... + z_g x^g), for g >= 1, where
/// z_0 must be z0 itself. The log z0 constant never reaches positive orders,
/// so the result is rational.
pub fn series_log_coefficient(zs: &[RationalZ0], g: usize) -> Result<RationalZ0> {
    if zs.is_empty() || zs.len() <= g {
        return Err(Error::BadArgument(format!(
            "need z_0..z_{g}, got {} entries",
            zs.len()
        )));
    }
    let nu = zs[0].nu();
    if zs[0] != RationalZ0::z0(nu) {
        return Err(Error::BadArgument(
            "leading series entry must be z0 itself".to_string(),
        ));
    }
    if g == 0 {
        return Err(Error::BadArgument(
            "order 0 of the log series is log z0, not rational".to_string(),
        ));
    }
    // a_m = z_m / z0; l_g = a_g - sum_{m<g} (m/g) l_m a_{g-m}
    let a: Vec<RationalZ0> = zs.iter().map(|z| z.mul_z0_pow(-1)).collect();
    let mut l: Vec<RationalZ0> = vec![RationalZ0::zero(nu); g + 1];
    for m in 1..=g {
        let mut acc = a[m].clone();
        for k in 1..m {
            let w = Rat::ratio(k as i64, m as i64);
            acc = acc.sub(&l[k].mul(&a[m - k]).scale(&w));
        }
        l[m] = acc;
    }
    Ok(l[g].clone())
}
