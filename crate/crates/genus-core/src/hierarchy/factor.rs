//! w-derivatives of the hierarchy factors f_k(s, w) = w^(1-2k) z_k(w^(nu-1) s)
//! evaluated at w = 1, in the factored form
//!   (f_k)_{w^(n)}(s, 1) = z0 * sum_m coeff_m / u^(2k+m).
//! The coefficient below m = n vanishes identically (the vanishing lemma);
//! each value is computed anyway and checked, never assumed.

use super::derived::DerivedRows;
use super::wtable::p_table;
use crate::exactnum::{binomial, Rat};
use crate::symbolics::{LaurentU, MonomialTerm};
use crate::{Error, Result};

pub fn factor_w_derivative(
    nu: u32,
    k: u32,
    n: u32,
    rows: &mut DerivedRows,
) -> Result<MonomialTerm> {
    assert_eq!(rows.genus(), k, "rows are for a different genus");
    if k == 0 && n == 0 {
        return Ok(MonomialTerm::new(1, LaurentU::one()));
    }
    rows.extend_to(n);
    let p = p_table(nu, n, k);
    let m_max = 3 * k as i64 + 2 * n as i64 - 1;
    let mut coeffs = Vec::with_capacity((m_max + 1) as usize);
    for m in 0..=m_max {
        let mut acc = Rat::zero();
        for (j, pj) in p.iter().enumerate() {
            if pj.is_zero() {
                continue;
            }
            let mut inner = Rat::zero();
            for r in 0..=(j.min(m as usize)) {
                let a = rows.entry(j, m - r as i64);
                if a.is_zero() {
                    continue;
                }
                let mut term = Rat::from_bigint(binomial(j as u64, r as u64)) * a;
                if (j - r) % 2 == 1 {
                    term = -term;
                }
                inner += &term;
            }
            acc += &(pj * &inner);
        }
        if m < n as i64 && !acc.is_zero() {
            return Err(Error::VanishingLemma {
                k,
                n,
                m: m as u32,
                value: acc.to_string(),
            });
        }
        coeffs.push(acc);
    }
    // coefficient of u^(-(2k+m)) is coeffs[m]
    let laurent = LaurentU::from_coeffs(
        -(2 * k as i64 + m_max),
        coeffs.into_iter().rev().collect(),
    );
    Ok(MonomialTerm::new(1, laurent))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolics::{compose_rational, PowerSeriesS, RationalZ0};

    fn lau(min: i64, cs: &[i64]) -> LaurentU {
        LaurentU::from_coeffs(min, cs.iter().map(|&c| Rat::from(c)).collect())
    }

    #[test]
    fn base_and_first_derivative() {
        let mut rows = DerivedRows::base_z0(2);
        let f = factor_w_derivative(2, 0, 0, &mut rows).unwrap();
        assert_eq!(f, MonomialTerm::new(1, LaurentU::one()));
        // d/dw [w z0(ws)] at w=1 collapses to z0/u
        let f1 = factor_w_derivative(2, 0, 1, &mut rows).unwrap();
        assert_eq!(f1, MonomialTerm::new(1, lau(-1, &[1])));
    }

    #[test]
    fn higher_w_derivatives_of_the_planar_factor() {
        let mut rows = DerivedRows::base_z0(2);
        let f2 = factor_w_derivative(2, 0, 2, &mut rows).unwrap();
        assert_eq!(f2.laurent, lau(-3, &[2, -2, 0]));
        let f3 = factor_w_derivative(2, 0, 3, &mut rows).unwrap();
        assert_eq!(f3.laurent, lau(-5, &[12, -24, 12, 0, 0]));
    }

    #[test]
    fn matches_direct_chain_rule_series() {
        // sum_j (nu-1)^j T_j^(n,1-2k) s^j z_k^(j)(s) as a series must equal
        // the factored form; exercised on the genus-1 factor
        for nu in [2u32, 3] {
            let nn = nu as i64;
            let base = vec![
                Rat::ratio(nn * (nn + 2), 12),
                Rat::ratio(-nn * (3 * nn + 2), 12),
                Rat::ratio(nn * nn, 6),
            ];
            let z1 = RationalZ0::from_z0_laurent(
                nu,
                1,
                &LaurentU::from_coeffs(-4, base.iter().rev().cloned().collect()),
            );
            let mut rows = DerivedRows::new(nu, 1, base);
            let order = 8usize;
            for n in 1..=3u32 {
                let f = factor_w_derivative(nu, 1, n, &mut rows).unwrap();
                assert_eq!(f.z0_power, 1);
                let got = compose_rational(&f.to_rational(nu), order).unwrap();
                // direct route
                let t = crate::hierarchy::wtable::w_table(nu, n, -1);
                let mut expect = PowerSeriesS::zero(order);
                let mut deriv = z1.clone();
                let mut spow = RationalZ0::constant(nu, Rat::one());
                let mut scale = Rat::one();
                for tj in t.iter() {
                    let term = deriv.mul(&spow).scale(&(tj * &scale));
                    expect = expect.add(&compose_rational(&term, order).unwrap());
                    deriv = deriv.derivative_s();
                    spow = spow.mul_s();
                    scale = scale * Rat::from(nn - 1);
                }
                assert_eq!(got, expect, "nu={nu} n={n}");
            }
        }
    }

    #[test]
    fn vanishing_coefficients_are_checked_not_skipped() {
        // every (k,n) visited here must produce zeros below m = n
        let nu = 3u32;
        let mut rows = DerivedRows::base_z0(nu);
        for n in 1..=6u32 {
            let f = factor_w_derivative(nu, 0, n, &mut rows).unwrap();
            assert!(f.laurent.max_degree().unwrap() <= -(n as i64));
        }
    }

    #[test]
    fn planar_second_w_derivative_vanishes_at_origin() {
        // at s=0 (u=1) the coefficients 2 and -2 cancel
        let mut rows = DerivedRows::base_z0(2);
        let f2 = factor_w_derivative(2, 0, 2, &mut rows).unwrap();
        assert!(f2.laurent.eval_at_one().is_zero());
    }
}
