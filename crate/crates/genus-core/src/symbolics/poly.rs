//! Dense univariate polynomials over the rationals. The variable is anonymous;
//! rendering takes the variable name as an argument.

use crate::exactnum::Rat;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyQ {
    // coefficient of x^i at index i, trailing zeros trimmed, empty means zero
    coeffs: Vec<Rat>,
}

impl PolyQ {
    pub fn zero() -> Self {
        PolyQ { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        PolyQ { coeffs: vec![c] }.trimmed()
    }

    pub fn one() -> Self {
        PolyQ::constant(Rat::one())
    }

    /// x itself.
    pub fn x() -> Self {
        PolyQ {
            coeffs: vec![Rat::zero(), Rat::one()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        PolyQ { coeffs }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(Rat::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the zero polynomial is reported as None.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        PolyQ { coeffs }.trimmed()
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        PolyQ {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return PolyQ::zero();
        }
        PolyQ {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return PolyQ::zero();
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
        PolyQ { coeffs }.trimmed()
    }

    /// Multiply by x^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return PolyQ::zero();
        }
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        PolyQ { coeffs }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = PolyQ::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| Rat::from(i as i64) * c)
            .collect();
        PolyQ { coeffs }.trimmed()
    }

    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dlead = divisor.leading().unwrap();
        let ddeg = divisor.degree().unwrap();
        let mut rem = self.clone();
        let mut quot = PolyQ::zero();
        while let Some(rdeg) = rem.degree() {
            if rdeg < ddeg {
                break;
            }
            let factor = rem.leading().unwrap() / dlead;
            let term = PolyQ::constant(factor).shift_up(rdeg - ddeg);
            rem = rem.sub(&term.mul(divisor));
            quot = quot.add(&term);
        }
        (quot, rem)
    }

    /// Division that must leave no remainder.
    pub fn div_exact(&self, divisor: &Self, context: &'static str) -> Result<Self> {
        let (q, r) = self.div_rem(divisor);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Divisibility { context })
        }
    }

    /// Render with an explicit variable name, lowest degree first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            match i {
                0 => out.push_str(&mag.to_string()),
                _ => {
                    if !mag.is_one() {
                        out.push_str(&format!("{mag}*"));
                    }
                    out.push_str(var);
                    if i > 1 {
                        out.push_str(&format!("^{i}"));
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> PolyQ {
        PolyQ::from_coeffs(cs.iter().map(|&c| Rat::from(c)).collect())
    }

    #[test]
    fn trim_and_degree() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(p(&[0]).degree(), None);
        assert!(p(&[2]).sub(&p(&[2])).is_zero());
    }

    #[test]
    fn mul_eval() {
        let a = p(&[1, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(a.mul(&b), p(&[-1, 0, 1]));
        assert_eq!(a.mul(&b).eval(&Rat::from(3)), Rat::from(8));
    }

    #[test]
    fn division() {
        let n = p(&[-1, 0, 0, 1]);
        let d = p(&[-1, 1]);
        let q = n.div_exact(&d, "test").unwrap();
        assert_eq!(q, p(&[1, 1, 1]));
        assert!(p(&[1, 0, 1]).div_exact(&d, "test").is_err());
        let (q, r) = p(&[1, 0, 1]).div_rem(&d);
        assert_eq!(q, p(&[1, 1]));
        assert_eq!(r, p(&[2]));
    }

    #[test]
    fn rendering() {
        assert_eq!(p(&[0, -1, 2]).render("z0"), "-z0 + 2*z0^2");
        assert_eq!(PolyQ::zero().render("z0"), "0");
        assert_eq!(
            PolyQ::from_coeffs(vec![Rat::ratio(1, 2), Rat::ratio(-4, 3)]).render("u"),
            "1/2 - 4/3*u"
        );
    }
}
