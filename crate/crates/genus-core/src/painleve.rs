//! Asymptotic data tied to the double-scaling limit: the alpha recursion in
//! Q(sqrt(6)), the top-pole recursion it mirrors, the t_g sequence, the
//! pinning constants, and the divergence witness for the genus series.

use crate::exactnum::{gamma_half_integer, PrimeExponentReal, QuadExt, Rat, SqrtPiScaled};
use crate::hierarchy::ZRow;
use crate::{Error, Result};

/// alpha_0 = 1 and
///   alpha_{g+1} = (25g^2-1)/(8 sqrt(6)) alpha_g - 1/2 sum_{m=1}^{g} alpha_m alpha_{g+1-m},
/// carried exactly in Q(sqrt(6)). Entries alternate between the rational line
/// and the sqrt(6) line.
pub fn alpha_sequence(gmax: u32) -> Vec<QuadExt> {
    let mut alphas = vec![QuadExt::sqrt6(Rat::one(), Rat::zero())];
    for g in 0..gmax {
        let gi = g as i64;
        // 1/(8 sqrt(6)) = sqrt(6)/48
        let lead = QuadExt::sqrt6(Rat::zero(), Rat::ratio(25 * gi * gi - 1, 48));
        let mut next = &lead * &alphas[g as usize];
        for m in 1..=g as usize {
            let cross = &alphas[m] * &alphas[g as usize + 1 - m];
            next = &next - &cross.scale(&Rat::ratio(1, 2));
        }
        alphas.push(next);
    }
    alphas
}

/// Top partial-fraction coefficients a_{3g-1}^{(g)} for g = 1..=gmax from the
/// quadratic recursion
///   a^{(g+1)} = nu^3 (25g^2-1)/6 a^{(g)} + nu/2 sum_{m=1}^{g} a^{(m)} a^{(g+1-m)},
/// seeded with a^{(1)} = nu^2/6. This never touches the integral-equation
/// solve, which is what makes it a useful cross-check on it.
pub fn top_pole_sequence(nu: u32, gmax: u32) -> Result<Vec<Rat>> {
    if nu < 2 {
        return Err(Error::BadNu(nu));
    }
    let n = nu as i64;
    let mut tops = vec![Rat::ratio(n * n, 6)];
    for g in 1..gmax {
        let gi = g as i64;
        let mut next = &tops[g as usize - 1] * &Rat::ratio(n * n * n * (25 * gi * gi - 1), 6);
        for m in 1..=g as usize {
            next = next + Rat::ratio(n, 2) * &tops[m - 1] * &tops[g as usize - m];
        }
        tops.push(next);
    }
    Ok(tops)
}

fn qpow(x: &QuadExt, e: u32) -> QuadExt {
    let mut out = QuadExt::sqrt6(Rat::one(), Rat::zero());
    for _ in 0..e {
        out = &out * x;
    }
    out
}

/// At nu = 2 the top poles and the alpha sequence are the same data:
///   a_{3g-1}^{(g)} = -2^{5g-1} sigma^g alpha_g, sigma = sqrt(6)/3.
/// Checked two ways for g = 1..=gmax: the exact identity in Q(sqrt(6)), and
/// the square-plus-sign splitting of it.
pub fn hop_check(gmax: u32) -> Result<()> {
    let tops = top_pole_sequence(2, gmax)?;
    let alphas = alpha_sequence(gmax);
    let sigma = QuadExt::sqrt6(Rat::zero(), Rat::ratio(1, 3));
    for g in 1..=gmax {
        let scale = -Rat::from(2).pow(5 * g as i64 - 1).unwrap();
        let predicted = qpow(&sigma, g).checked_mul(&alphas[g as usize])?.scale(&scale);
        let actual = &tops[g as usize - 1];
        if !predicted.is_rational() || predicted.rational() != actual {
            return Err(Error::FormsDisagree {
                g,
                left: actual.to_string(),
                right: predicted.to_string(),
            });
        }
        // squared form: a^2 = 2^(10g-2) (2/3)^g |N(alpha_g)|, with the sign of
        // a carried by -sigma^g alpha_g
        let square = actual * actual;
        let predicted_square = Rat::from(2).pow(10 * g as i64 - 2).unwrap()
            * Rat::ratio(2, 3).pow(g as i64).unwrap()
            * alphas[g as usize].norm().abs();
        if square != predicted_square {
            return Err(Error::FormsDisagree {
                g,
                left: square.to_string(),
                right: predicted_square.to_string(),
            });
        }
        if actual.is_negative() != predicted.rational().is_negative() {
            return Err(Error::FormsDisagree {
                g,
                left: actual.to_string(),
                right: predicted.to_string(),
            });
        }
    }
    Ok(())
}

/// t_0 = 2/sqrt(pi); for g >= 1,
///   t_g = 2^-(7g-3) a_{3g-1}^{(g)}(nu=2) / Gamma((5g-1)/2)
/// and equivalently
///   t_g = -2^-(g-2) 6^-(g/2) alpha_g / Gamma((5g-1)/2).
/// Both forms are evaluated and must agree exactly.
pub fn tg_sequence(gmax: u32) -> Result<Vec<SqrtPiScaled>> {
    let tops = top_pole_sequence(2, gmax.max(1))?;
    let alphas = alpha_sequence(gmax.max(1));
    let mut out = vec![SqrtPiScaled::new(Rat::from(2), -1)];
    for g in 1..=gmax {
        let gamma = gamma_half_integer(&Rat::ratio(5 * g as i64 - 1, 2))?;
        let inv_gamma = gamma.recip()?;
        let a_form = inv_gamma
            .scale(&tops[g as usize - 1])
            .scale(&Rat::from(2).pow(-(7 * g as i64 - 3))?);
        // 6^(g/2) splits into a rational part and one surviving sqrt(6) when
        // g is odd; that radical cancels against alpha_g's
        let mut radical_free = alphas[g as usize].scale(&Rat::from(6).pow(-(g as i64 / 2))?);
        if g % 2 == 1 {
            // 1/sqrt(6) = sqrt(6)/6
            radical_free = &radical_free * &QuadExt::sqrt6(Rat::zero(), Rat::ratio(1, 6));
        }
        if !radical_free.is_rational() {
            return Err(Error::FormsDisagree {
                g,
                left: a_form.to_string(),
                right: radical_free.to_string(),
            });
        }
        let b_form = inv_gamma
            .scale(radical_free.rational())
            .scale(&-Rat::from(2).pow(-(g as i64 - 2))?);
        if a_form != b_form {
            return Err(Error::FormsDisagree {
                g,
                left: a_form.to_string(),
                right: b_form.to_string(),
            });
        }
        out.push(a_form);
    }
    Ok(out)
}

/// The compact rendering 7/sqrt(4320 pi) denotes a different number than
/// t_2 = 7/(4320 sqrt(pi)); verified by comparing squares. A true return
/// means the compact rendering is wrong and display code should warn.
pub fn t2_flat_radical_display_differs() -> Result<bool> {
    let t2 = tg_sequence(2)?[2].clone();
    let t2_squared = t2.mul(&t2);
    // (7/sqrt(4320 pi))^2 = 49/4320 * pi^-1
    let flat_squared = SqrtPiScaled::new(Rat::ratio(49, 4320), -2);
    Ok(t2_squared.pi_half_exponent() != flat_squared.pi_half_exponent()
        || t2_squared.coeff() != flat_squared.coeff())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PinningConstants {
    pub gamma1: PrimeExponentReal,
    pub gamma2: PrimeExponentReal,
}

/// gamma2 = 2^(3/5) 3^(2/5) and gamma1 = (1/4) gamma2^-3, with the three
/// relations that pin them checked on construction: the closed monomial form
/// of gamma1, gamma2^5 = 72, and 192 gamma1 = (2/3) gamma2^2.
pub fn pinning_constants() -> Result<PinningConstants> {
    let gamma2 = PrimeExponentReal::prime_power(2, Rat::ratio(3, 5))?
        .mul(&PrimeExponentReal::prime_power(3, Rat::ratio(2, 5))?);
    let gamma1 = PrimeExponentReal::from_rational(&Rat::ratio(1, 4))?
        .mul(&gamma2.pow(&Rat::from(-3)));
    let closed = PrimeExponentReal::prime_power(2, Rat::ratio(-19, 5))?
        .mul(&PrimeExponentReal::prime_power(3, Rat::ratio(-6, 5))?);
    if gamma1 != closed {
        return Err(Error::PinningRelation {
            relation: "gamma1 = 2^(-19/5) 3^(-6/5)",
        });
    }
    if gamma2.pow(&Rat::from(5)).to_rational() != Some(Rat::from(72)) {
        return Err(Error::PinningRelation {
            relation: "gamma2^5 = 72",
        });
    }
    let lhs = PrimeExponentReal::from_rational(&Rat::from(192))?.mul(&gamma1);
    let rhs = PrimeExponentReal::from_rational(&Rat::ratio(2, 3))?.mul(&gamma2.pow(&Rat::from(2)));
    if lhs != rhs {
        return Err(Error::PinningRelation {
            relation: "192 gamma1 = (2/3) gamma2^2",
        });
    }
    Ok(PinningConstants { gamma1, gamma2 })
}

/// Critical coupling s_c = (nu-1)^(nu-1) / (c_nu nu^nu); the series for z0
/// converges for |s| < s_c and the square-root branch point sits there.
pub fn critical_coupling(nu: u32) -> Result<Rat> {
    let c = Rat::from_bigint(crate::combinatorics::c_nu(nu)?);
    let n = nu as i64;
    let num = Rat::from(n - 1).pow(n - 1)?;
    let den = c * Rat::from(n).pow(n)?;
    Ok(num / den)
}

/// Square of the caustic slope: near s_c,
///   z0 - nu/(nu-1) ~ -sqrt(K (s - s_c)) with K = -2 c_nu nu^(nu+1)/(nu-1)^(nu+2),
/// from expanding 0 = F_s ds + (1/2) F_zz dz0^2 at the branch endpoint.
pub fn caustic_slope_squared(nu: u32) -> Result<Rat> {
    let c = Rat::from_bigint(crate::combinatorics::c_nu(nu)?);
    let n = nu as i64;
    Ok(Rat::from(-2) * c * Rat::from(n).pow(n + 1)? / Rat::from(n - 1).pow(n + 2)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleScalingData {
    pub s_c: Rat,
    pub caustic_slope_squared: Rat,
    /// (nu/(nu-1)) a_{3g-1}^{(g)} for g = 1..=gmax: the coefficient data of
    /// the double-scaled expansion around the critical point.
    pub terms: Vec<Rat>,
}

pub fn double_scaling_series(nu: u32, gmax: u32) -> Result<DoubleScalingData> {
    let tops = top_pole_sequence(nu, gmax)?;
    let factor = Rat::ratio(nu as i64, nu as i64 - 1);
    Ok(DoubleScalingData {
        s_c: critical_coupling(nu)?,
        caustic_slope_squared: caustic_slope_squared(nu)?,
        terms: tops.iter().map(|a| &factor * a).collect(),
    })
}

/// Successive top-pole ratios a^{(g+1)}/a^{(g)} for g = 1..gmax. Their growth
/// at least like g^2 witnesses the zero radius of the genus series.
pub fn divergence_ratios(nu: u32, gmax: u32) -> Result<Vec<Rat>> {
    let tops = top_pole_sequence(nu, gmax)?;
    tops.windows(2).map(|w| Ok(&w[1] / &w[0])).collect()
}

/// The recursion must reproduce the integral-equation solve exactly.
pub fn check_top_pole_against_rows(rows: &[ZRow]) -> Result<()> {
    if rows.is_empty() {
        return Ok(());
    }
    let nu = rows[0].nu();
    let tops = top_pole_sequence(nu, rows.len() as u32)?;
    for (row, top) in rows.iter().zip(&tops) {
        if row.top_coefficient() != top {
            return Err(Error::FormsDisagree {
                g: row.genus(),
                left: row.top_coefficient().to_string(),
                right: top.to_string(),
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hierarchy::solve_rows_to;

    fn r(p: i64, q: i64) -> Rat {
        Rat::ratio(p, q)
    }

    #[test]
    fn alpha_opening_values() {
        let a = alpha_sequence(3);
        assert_eq!(a[0], QuadExt::sqrt6(Rat::one(), Rat::zero()));
        assert_eq!(a[1], QuadExt::sqrt6(Rat::zero(), r(-1, 48)));
        assert_eq!(a[2], QuadExt::sqrt6(r(-49, 768), Rat::zero()));
        assert_eq!(a[3], QuadExt::sqrt6(Rat::zero(), r(-1225, 9216)));
    }

    #[test]
    fn alpha_parity_alternates() {
        for (g, a) in alpha_sequence(9).iter().enumerate() {
            if g % 2 == 0 {
                assert!(a.radical_coeff().is_zero(), "g={g}");
                assert!(!a.rational().is_zero(), "g={g}");
            } else {
                assert!(a.rational().is_zero(), "g={g}");
                assert!(!a.radical_coeff().is_zero(), "g={g}");
            }
        }
    }

    #[test]
    fn top_pole_opening_values() {
        for (nu, expect) in [(2, r(196, 9)), (3, r(1323, 8)), (4, r(6272, 9)), (5, r(153125, 72))] {
            let tops = top_pole_sequence(nu, 2).unwrap();
            assert_eq!(tops[0], r(nu as i64 * nu as i64, 6));
            assert_eq!(tops[1], expect, "nu={nu}");
        }
        assert_eq!(top_pole_sequence(2, 3).unwrap()[2], r(78400, 27));
    }

    #[test]
    fn recursion_matches_integral_equation_rows() {
        for nu in [2u32, 3] {
            let (rows, _) = solve_rows_to(nu, 3).unwrap();
            check_top_pole_against_rows(&rows).unwrap();
        }
    }

    #[test]
    fn hop_holds_through_genus_eight() {
        hop_check(8).unwrap();
    }

    #[test]
    fn tg_opening_values() {
        let ts = tg_sequence(2).unwrap();
        assert_eq!(ts[0], SqrtPiScaled::new(Rat::from(2), -1));
        assert_eq!(ts[1], SqrtPiScaled::rational(r(1, 24)));
        assert_eq!(ts[2], SqrtPiScaled::new(r(7, 4320), -1));
        assert_eq!(ts[2].to_string(), "7/4320 * pi^(-1/2)");
    }

    #[test]
    fn tg_forms_agree_through_genus_six() {
        assert_eq!(tg_sequence(6).unwrap().len(), 7);
    }

    #[test]
    fn flat_radical_display_of_t2_is_a_different_number() {
        assert!(t2_flat_radical_display_differs().unwrap());
    }

    #[test]
    fn pinning_constants_hold() {
        let p = pinning_constants().unwrap();
        assert_eq!(p.gamma2.pow(&Rat::from(5)).to_rational(), Some(Rat::from(72)));
        assert_eq!(p.gamma1.to_rational(), None);
    }

    #[test]
    fn critical_coupling_values() {
        assert_eq!(critical_coupling(2).unwrap(), r(1, 48));
        assert_eq!(critical_coupling(3).unwrap(), r(1, 405));
        for nu in 2..=6 {
            assert!(critical_coupling(nu).unwrap().is_positive());
        }
    }

    #[test]
    fn caustic_slope_squared_is_negative() {
        // s < s_c on the physical branch, so the square root argument
        // K (s - s_c) is positive exactly when K < 0
        for nu in 2..=5 {
            assert!(caustic_slope_squared(nu).unwrap().is_negative());
        }
        assert_eq!(caustic_slope_squared(2).unwrap(), r(-192, 1));
    }

    #[test]
    fn double_scaling_terms_rescale_tops() {
        let ds = double_scaling_series(2, 2).unwrap();
        assert_eq!(ds.terms[0], r(4, 3));
        assert_eq!(ds.terms[1], r(392, 9));
        assert_eq!(ds.s_c, r(1, 48));
    }

    #[test]
    fn ratios_outgrow_g_squared() {
        for nu in [2u32, 3, 4] {
            let ratios = divergence_ratios(nu, 10).unwrap();
            for g in 2..=9usize {
                let bound = Rat::from((g * g) as i64);
                assert!(
                    ratios[g - 1] >= bound,
                    "nu={nu} g={g}: {} < {}",
                    ratios[g - 1],
                    bound
                );
            }
        }
    }
}
