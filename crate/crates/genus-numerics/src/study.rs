//! Cross-validation studies: truncation error scaling in the matrix
//! size, and the square-root approach to the critical coupling.

use crate::quad::float_from_rat;
use crate::recurrence::recurrence_stieltjes;
use crate::z0eval::{genus_expansion_eval, z0_eval};
use crate::{NumError, Result};
use genus_core::painleve::{caustic_slope_squared, critical_coupling};
use rug::ops::Pow;
use rug::Float;

/// Truncation errors E(N) = |b^2_(N,N)(t) - genus sum through G| and the
/// fitted slope of log E against log N.
pub struct ConvergenceReport {
    pub big_ns: Vec<u32>,
    pub errors: Vec<Float>,
    pub slope: f64,
}

pub fn convergence_study(
    nu: u32,
    t: &Float,
    big_ns: &[u32],
    gcap: u32,
    prec: u32,
) -> Result<ConvergenceReport> {
    if big_ns.len() < 2 {
        return Err(NumError::BadInput(
            "need at least two matrix sizes to fit a slope".into(),
        ));
    }
    let s = -t.clone();
    let mut errors = Vec::with_capacity(big_ns.len());
    for &big_n in big_ns {
        let ladder = recurrence_stieltjes(nu, t, big_n, big_n, prec)?;
        let truncated = genus_expansion_eval(nu, &s, big_n, gcap, prec)?;
        let gap = Float::with_val(
            prec,
            &ladder.b_squared[big_n as usize] - &truncated.z,
        )
        .abs();
        errors.push(gap);
    }

    let mut xs = Vec::with_capacity(big_ns.len());
    let mut ys = Vec::with_capacity(big_ns.len());
    for (&big_n, err) in big_ns.iter().zip(&errors) {
        let e = err.to_f64();
        if !(e > 0.0) {
            return Err(NumError::BadInput(
                "a truncation error vanished; nothing to fit".into(),
            ));
        }
        xs.push((big_n as f64).ln());
        ys.push(e.ln());
    }
    let n = xs.len() as f64;
    let x_bar = xs.iter().sum::<f64>() / n;
    let y_bar = ys.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        num += (x - x_bar) * (y - y_bar);
        den += (x - x_bar) * (x - x_bar);
    }
    Ok(ConvergenceReport {
        big_ns: big_ns.to_vec(),
        errors,
        slope: num / den,
    })
}

/// One point of the approach to the critical coupling.
pub struct CausticSample {
    pub k: u32,
    pub s: Float,
    pub ratio: Float,
}

/// At s = s_c (1 - 10^-k) the branch leaves its endpoint like a square
/// root; the ratio against the asymptote drifts to one as k grows.
pub fn caustic_probe(nu: u32, prec: u32) -> Result<Vec<CausticSample>> {
    let s_c = float_from_rat(prec, &critical_coupling(nu)?);
    let minus_slope_sq = -caustic_slope_squared(nu)?;
    let endpoint = Float::with_val(prec, nu) / (nu - 1);
    let mut samples = Vec::new();
    for k in 3..=8u32 {
        let offset = s_c.clone() * Float::with_val(prec, 10).pow(-(k as i32));
        let s = Float::with_val(prec, &s_c - &offset);
        let z0 = z0_eval(nu, &s, prec)?;
        let asymptote = -(float_from_rat(prec, &minus_slope_sq) * &offset).sqrt();
        let ratio = (z0 - &endpoint) / asymptote;
        samples.push(CausticSample { k, s, ratio });
    }
    Ok(samples)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planar_truncation_decays_like_n_to_the_minus_two() {
        let prec = 200;
        let t = Float::with_val(prec, 0.05);
        let report = convergence_study(2, &t, &[8, 12, 16, 24], 0, prec).unwrap();
        for pair in report.errors.windows(2) {
            assert!(pair[1] < pair[0], "errors should shrink with size");
        }
        assert!(
            (report.slope + 2.0).abs() < 0.3,
            "slope {}",
            report.slope
        );
    }

    #[test]
    fn one_loop_truncation_steepens_the_slope() {
        let prec = 200;
        let t = Float::with_val(prec, 0.05);
        let report = convergence_study(2, &t, &[8, 12, 16, 24], 1, prec).unwrap();
        assert!(
            (report.slope + 4.0).abs() < 0.4,
            "slope {}",
            report.slope
        );
    }

    #[test]
    fn caustic_ratio_walks_to_one() {
        let prec = 200;
        for nu in [2u32, 3] {
            let samples = caustic_probe(nu, prec).unwrap();
            assert_eq!(samples[0].k, 3);
            let close = |s: &CausticSample| {
                Float::with_val(prec, &s.ratio - &Float::with_val(prec, 1)).abs()
            };
            for pair in samples.windows(2) {
                assert!(close(&pair[1]) < close(&pair[0]), "nu {}", nu);
            }
            let at_six = samples.iter().find(|s| s.k == 6).unwrap();
            let bound = Float::with_val(prec, 10).pow(-5i32).sqrt();
            assert!(close(at_six) < bound, "nu {}: {:e}", nu, close(at_six));
        }
    }

    #[test]
    fn quartic_caustic_asymptote_is_exact_downstairs() {
        // s_c - s = s_c 10^-6 at nu = 2: z0 - 2 = -2 sqrt(10^-6) (1 + O(sqrt))
        let prec = 200;
        let samples = caustic_probe(2, prec).unwrap();
        let at_six = samples.iter().find(|s| s.k == 6).unwrap();
        let z0 = z0_eval(2, &at_six.s, prec).unwrap();
        let drop = Float::with_val(prec, &z0 - &Float::with_val(prec, 2));
        assert!(drop < 0, "branch approaches from below");
        let scale = Float::with_val(prec, 2) * Float::with_val(prec, 10).pow(-3i32);
        let rel = Float::with_val(prec, drop.clone().abs() / &scale) - 1u32;
        assert!(rel.abs() < Float::with_val(prec, 0.01));
    }
}
