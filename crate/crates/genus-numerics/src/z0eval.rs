//! Floating-point evaluation of the fundamental function and the genus sums.

use crate::quad::{float_from_rat, rational_from_rat};
use crate::{NumError, Result};
use genus_core::combinatorics::c_nu;
use genus_core::engine::Engine;
use genus_core::exactnum::Rat;
use genus_core::painleve::critical_coupling;
use genus_core::symbolics::{LogExtendedZ0, RationalZ0};
use rug::ops::Pow;
use rug::Float;

fn f_and_df(nu: u32, c: &Float, s: &Float, z: &Float, prec: u32) -> (Float, Float) {
    // F(z) = z - c s z^nu - 1, F'(z) = 1 - nu c s z^(nu-1)
    let zpow = z.clone().pow(nu - 1);
    let cs = Float::with_val(prec, c * s);
    let f = z.clone() - cs.clone() * zpow.clone() * z - 1u32;
    let df = Float::with_val(prec, 1) - cs * zpow * nu;
    (f, df)
}

/// Root of z = 1 + c_nu s z^nu on the branch through z(0) = 1.
///
/// Defined for s <= s_c; the critical value itself returns the exact
/// endpoint nu/(nu-1).
pub fn z0_eval(nu: u32, s: &Float, prec: u32) -> Result<Float> {
    let s_c = rational_from_rat(&critical_coupling(nu)?);
    if *s == s_c {
        return Ok(Float::with_val(prec, nu) / (nu - 1));
    }
    if *s > s_c {
        // A coupling one rounding step above the exact critical value is
        // the critical value as far as the caller's precision can say.
        let p = s.prec();
        let wide = p + 64;
        let rel = Float::with_val(wide, s - &s_c) / Float::with_val(wide, &s_c);
        if rel <= Float::with_val(wide, 2).pow(-(p as i32) + 2) {
            return Ok(Float::with_val(prec, nu) / (nu - 1));
        }
        return Err(NumError::Domain {
            s: format!("{:e}", s),
            s_c: s_c.to_string(),
        });
    }

    let work = prec + 32;
    let c = float_from_rat(work, &Rat::from(c_nu(nu)?));
    let s = Float::with_val(work, s);

    // Bracket the branch: F < 0 at the low end, F > 0 at the high end.
    let (mut lo, mut hi) = if s >= 0u32 {
        (
            Float::with_val(work, 1),
            Float::with_val(work, nu) / (nu - 1),
        )
    } else {
        (Float::with_val(work, 0), Float::with_val(work, 1))
    };
    let (f_lo, _) = f_and_df(nu, &c, &s, &lo, work);
    if f_lo == 0 {
        return Ok(Float::with_val(prec, &lo));
    }
    let (f_hi, _) = f_and_df(nu, &c, &s, &hi, work);
    if f_hi == 0 {
        return Ok(Float::with_val(prec, &hi));
    }

    // Bisect into the basin, then let Newton finish.
    let coarse = Float::with_val(work, 2).pow(-24i32);
    for _ in 0..80 {
        let mid = Float::with_val(work, &lo + &hi) / 2u32;
        let (f_mid, _) = f_and_df(nu, &c, &s, &mid, work);
        if f_mid < 0 {
            lo = mid;
        } else {
            hi = mid;
        }
        let width = Float::with_val(work, &hi - &lo);
        if width < coarse {
            break;
        }
    }
    let mut z = Float::with_val(work, &lo + &hi) / 2u32;
    let step_tol = Float::with_val(work, 2).pow(-(prec as i32) - 16);
    let mut converged = false;
    for _ in 0..100 {
        let (f, df) = f_and_df(nu, &c, &s, &z, work);
        let step = f / df;
        z -= &step;
        if step.abs() < step_tol {
            converged = true;
            break;
        }
    }
    let (residual, _) = f_and_df(nu, &c, &s, &z, work);
    let res_tol = Float::with_val(work, 2).pow(-(prec as i32) + 8);
    if !converged || residual.clone().abs() >= res_tol {
        return Err(NumError::NonConvergence {
            iters: 100,
            residual: format!("{:e}", residual),
        });
    }
    Ok(Float::with_val(prec, &z))
}

/// Rational function of z0 evaluated at a floating point.
pub fn eval_rational_z0(r: &RationalZ0, nu: u32, z0: &Float, prec: u32) -> Float {
    let mut num = Float::with_val(prec, 0);
    for c in r.numerator().coeffs().iter().rev() {
        num = num * z0 + float_from_rat(prec, c);
    }
    let u = Float::with_val(prec, nu) - Float::with_val(prec, nu - 1) * z0;
    num / (z0.clone().pow(r.z0_pole()) * u.pow(r.u_pole()))
}

/// Log-extended function of z0 evaluated at a floating point.
pub fn eval_log_extended(e: &LogExtendedZ0, nu: u32, z0: &Float, prec: u32) -> Float {
    let mut total = eval_rational_z0(&e.rational, nu, z0, prec);
    if !e.log_z0.is_zero() {
        total += float_from_rat(prec, &e.log_z0) * z0.clone().ln();
    }
    if !e.log_u.is_zero() {
        let u = Float::with_val(prec, nu) - Float::with_val(prec, nu - 1) * z0;
        total += float_from_rat(prec, &e.log_u) * u.ln();
    }
    total
}

/// Truncated genus sums at one coupling.
pub struct ExpansionEval {
    /// z0 + sum over 1 <= g <= G of z_g(z0) N^(-2g)
    pub z: Float,
    /// N^2 e_0 + e_1 + sum over 2 <= g <= G of e_g(z0) N^(2-2g)
    pub e: Float,
}

pub fn genus_expansion_eval(
    nu: u32,
    s: &Float,
    big_n: u32,
    gcap: u32,
    prec: u32,
) -> Result<ExpansionEval> {
    if big_n == 0 {
        return Err(NumError::BadInput("matrix size must be positive".into()));
    }
    let z0 = z0_eval(nu, s, prec)?;
    let mut engine = Engine::with_genus_cap(nu, gcap.max(2))?;
    let n_f = Float::with_val(prec, big_n);

    let mut z = z0.clone();
    for g in 1..=gcap {
        let row = engine.z_row(g)?;
        let term = eval_rational_z0(&row.to_rational(), nu, &z0, prec);
        z += term / n_f.clone().pow(2 * g);
    }

    let mut e = eval_log_extended(engine.energy(0)?, nu, &z0, prec) * n_f.clone() * &n_f;
    if gcap >= 1 {
        e += eval_log_extended(engine.energy(1)?, nu, &z0, prec);
    }
    for g in 2..=gcap {
        let term = eval_log_extended(engine.energy(g)?, nu, &z0, prec);
        e += term / n_f.clone().pow(2 * g - 2);
    }
    Ok(ExpansionEval { z, e })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn coupling_zero_gives_one() {
        for nu in 2..=5 {
            let s = Float::with_val(200, 0);
            let z = z0_eval(nu, &s, 200).unwrap();
            assert_eq!(z, Float::with_val(200, 1));
        }
    }

    #[test]
    fn quartic_critical_point_is_exact() {
        let s = Float::with_val(200, 1) / 48u32;
        let z = z0_eval(2, &s, 200).unwrap();
        assert_eq!(z, Float::with_val(200, 2));
    }

    #[test]
    fn quartic_negative_coupling_fixture() {
        // s = -1: 12 z^2 + z - 1 = 0 has positive root 1/4
        let s = Float::with_val(200, -1);
        let z = z0_eval(2, &s, 200).unwrap();
        let err = Float::with_val(200, &z - &Float::with_val(200, 0.25)).abs();
        assert!(err < Float::with_val(200, 2).pow(-190i32), "{:e}", err);
    }

    #[test]
    fn beyond_the_caustic_is_rejected() {
        let s = Float::with_val(200, 1) / 40u32;
        match z0_eval(2, &s, 200) {
            Err(NumError::Domain { .. }) => {}
            other => panic!("expected a domain error, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn quartic_branch_matches_the_quadratic_formula() {
        let prec = 200;
        let tol = Float::with_val(prec, 2).pow(-(prec as i32) + 10);
        let mut rng = ChaCha20Rng::seed_from_u64(0x2a0e);
        for _ in 0..100 {
            // s uniform in (-1, 1/48)
            let t: f64 = rng.gen();
            let s = Float::with_val(prec, t * (1.0 / 48.0 + 1.0) - 1.0);
            let z = z0_eval(2, &s, prec).unwrap();
            if s == 0 {
                assert_eq!(z, Float::with_val(prec, 1));
                continue;
            }
            // z0 = (1 - sqrt(1 - 48 s)) / (24 s); extra working bits absorb
            // the cancellation when s sits near zero
            let wide = prec + 64;
            let s_w = Float::with_val(wide, &s);
            let disc = (Float::with_val(wide, 1) - Float::with_val(wide, 48) * &s_w).sqrt();
            let closed = (Float::with_val(wide, 1) - disc) / (Float::with_val(wide, 24) * &s_w);
            let err = Float::with_val(wide, &z - &closed).abs();
            assert!(err < tol, "s = {:e}: {:e}", s, err);
        }
    }

    #[test]
    fn expansion_collapses_at_zero_coupling() {
        let s = Float::with_val(200, 0);
        let ev = genus_expansion_eval(2, &s, 16, 3, 200).unwrap();
        let one = Float::with_val(200, 1);
        assert_eq!(ev.z, one);
        let tol = Float::with_val(200, 2).pow(-180i32);
        assert!(ev.e.clone().abs() < tol, "{:e}", ev.e);
    }

    #[test]
    fn truncation_gap_is_the_next_genus_term() {
        // Raising G from 2 to 3 at N = 32 changes z by z_3(z0) 32^-6,
        // up to the tiny G = 4 tail.
        let prec = 200;
        let s = Float::with_val(prec, -0.05);
        let g2 = genus_expansion_eval(2, &s, 32, 2, prec).unwrap();
        let g3 = genus_expansion_eval(2, &s, 32, 3, prec).unwrap();
        let diff = Float::with_val(prec, &g3.z - &g2.z).abs();

        let z0 = z0_eval(2, &s, prec).unwrap();
        let mut engine = Engine::new(2).unwrap();
        let z3 = eval_rational_z0(&engine.z_row(3).unwrap().to_rational(), 2, &z0, prec);
        let expected = z3.abs() * Float::with_val(prec, 32).pow(-6i32);
        assert!(diff <= expected.clone() * Float::with_val(prec, 1.01));
        assert!(diff >= expected * Float::with_val(prec, 0.99));
    }

    #[test]
    fn low_genus_evaluations_match_closed_forms() {
        // nu = 2, s = 1/96: z0 from the quadratic formula, e_1 = -log(2 - z0)/12
        let prec = 200;
        let s = Float::with_val(prec, 1) / 96u32;
        let z0 = z0_eval(2, &s, prec).unwrap();
        let mut engine = Engine::new(2).unwrap();
        let e1 = eval_log_extended(engine.energy(1).unwrap(), 2, &z0, prec);
        let u = Float::with_val(prec, 2) - &z0;
        let closed = -u.ln() / 12u32;
        let err = Float::with_val(prec, &e1 - &closed).abs();
        assert!(err < Float::with_val(prec, 2).pow(-190i32), "{:e}", err);
    }
}
