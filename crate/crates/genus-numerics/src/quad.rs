//! Precision plumbing and Gauss-Legendre quadrature.

use crate::{NumError, Result};
use genus_core::exactnum::Rat;
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Rational};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

pub const DEFAULT_PRECISION: u32 = 200;

/// Exact rational carried over through the "p/q" text form.
pub fn rational_from_rat(r: &Rat) -> Rational {
    r.to_string()
        .parse()
        .expect("canonical rational text always parses")
}

/// Exact rational to float, rounded once at the target precision.
pub fn float_from_rat(prec: u32, r: &Rat) -> Float {
    Float::with_val(prec, &rational_from_rat(r))
}

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

/// A fixed-order Gauss-Legendre rule on [-1, 1].
pub struct QuadRule {
    pub nodes: Vec<Float>,
    pub weights: Vec<Float>,
    pub prec: u32,
}

/// P_n(x) and P_{n-1}(x) by the three-term recurrence.
fn legendre_pair(n: usize, x: &Float, prec: u32) -> (Float, Float) {
    let mut p_prev = Float::with_val(prec, 1);
    let mut p = x.clone();
    for k in 1..n {
        let a = p.clone() * x * (2 * k as u32 + 1);
        let next = (a - p_prev * (k as u32)) / (k as u32 + 1);
        p_prev = p;
        p = next;
    }
    (p, p_prev)
}

impl QuadRule {
    /// Shared rule lookup: node construction costs O(n^2), so repeated
    /// runs at one (order, precision) pair reuse a single build.
    pub fn cached(n: usize, prec: u32) -> Result<Arc<Self>> {
        static RULES: OnceLock<Mutex<HashMap<(usize, u32), Arc<QuadRule>>>> = OnceLock::new();
        let store = RULES.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(rule) = store.lock().unwrap().get(&(n, prec)) {
            return Ok(Arc::clone(rule));
        }
        let rule = Arc::new(QuadRule::gauss_legendre(n, prec)?);
        store
            .lock()
            .unwrap()
            .entry((n, prec))
            .or_insert_with(|| Arc::clone(&rule));
        Ok(rule)
    }

    pub fn gauss_legendre(n: usize, prec: u32) -> Result<Self> {
        assert!(n >= 2);
        let pi_val = pi(prec);
        let tol = Float::with_val(prec, 2).pow(-(prec as i32) + 8);
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for k in 1..=n {
            // Chebyshev-flavored initial guess, then Newton on P_n
            let guess = pi_val.clone() * (4 * k as u32 - 1) / (4 * n as u32 + 2);
            let mut x = guess.cos();
            let mut converged = false;
            for _ in 0..200 {
                let (p, p_prev) = legendre_pair(n, &x, prec);
                // P_n'(x) = n (x P_n - P_{n-1}) / (x^2 - 1)
                let x2m1 = x.clone() * &x - 1u32;
                let dp = (x.clone() * &p - p_prev) * (n as u32) / x2m1;
                let step = p / dp;
                x -= &step;
                if step.abs() < tol {
                    converged = true;
                    break;
                }
            }
            if !converged {
                return Err(NumError::NonConvergence {
                    iters: 200,
                    residual: format!("{:e}", x),
                });
            }
            let (p, p_prev) = legendre_pair(n, &x, prec);
            let x2m1 = x.clone() * &x - 1u32;
            let dp = (x.clone() * &p - p_prev) * (n as u32) / x2m1.clone();
            // w = 2 / ((1 - x^2) P_n'(x)^2)
            let w = Float::with_val(prec, 2) / (-x2m1 * dp.clone() * dp);
            nodes.push(x);
            weights.push(w);
        }
        Ok(QuadRule {
            nodes,
            weights,
            prec,
        })
    }

    /// Integrate f over [a, b] with this rule mapped affinely.
    pub fn integrate<F: FnMut(&Float) -> Float>(&self, a: &Float, b: &Float, mut f: F) -> Float {
        let prec = self.prec;
        let half_width = Float::with_val(prec, b - a) / 2u32;
        let center = Float::with_val(prec, a + b) / 2u32;
        let mut total = Float::with_val(prec, 0);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let point = half_width.clone() * x + &center;
            total += f(&point) * w;
        }
        total * half_width
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_conversion_is_exact() {
        let r = Rat::ratio(-355, 113);
        let f = float_from_rat(64, &r);
        let back = f * 113u32;
        assert_eq!(back, Float::with_val(64, -355));
    }

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let prec = 128;
        let rule = QuadRule::gauss_legendre(12, prec).unwrap();
        // x^10 over [0, 1] = 1/11
        let a = Float::with_val(prec, 0);
        let b = Float::with_val(prec, 1);
        let got = rule.integrate(&a, &b, |x| x.clone().pow(10));
        let want = Float::with_val(prec, 1) / 11u32;
        let err = Float::with_val(prec, &got - &want).abs();
        assert!(err < Float::with_val(prec, 2).pow(-100), "{:e}", err);
    }

    #[test]
    fn rule_handles_smooth_transcendentals() {
        let prec = 200;
        let rule = QuadRule::gauss_legendre(60, prec).unwrap();
        // int_0^1 e^x = e - 1
        let a = Float::with_val(prec, 0);
        let b = Float::with_val(prec, 1);
        let got = rule.integrate(&a, &b, |x| x.clone().exp());
        let want = Float::with_val(prec, 1).exp() - 1u32;
        let err = Float::with_val(prec, &got - &want).abs();
        assert!(err < Float::with_val(prec, 2).pow(-150), "{:e}", err);
    }
}
