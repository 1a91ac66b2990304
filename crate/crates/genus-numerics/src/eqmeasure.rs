//! Equilibrium eigenvalue density on the rescaled support (-1, 1).
//!
//! Two independent routes to the same density: a closed polynomial form
//! in the branch parameter, and a reconstruction through the endpoint
//! and the even corrector polynomial. The parameter z0 runs over [0, 1];
//! z0 = 1 is the zero-coupling semicircle.

use crate::quad::{float_from_rat, pi, QuadRule};
use crate::{NumError, Result};
use genus_core::combinatorics::c_nu;
use genus_core::exactnum::{binomial, Rat};
use rug::ops::Pow;
use rug::Float;

fn check_params(nu: u32, z0: &Float, eta: &Float) -> Result<()> {
    if nu < 2 {
        return Err(NumError::Core(genus_core::Error::BadNu(nu)));
    }
    if !(*z0 >= 0 && *z0 <= 1) {
        return Err(NumError::BadInput(format!(
            "branch parameter {} outside [0, 1]",
            z0
        )));
    }
    if !(*eta >= -1 && *eta <= 1) {
        return Err(NumError::BadInput(format!(
            "scaled eigenvalue {} outside [-1, 1]",
            eta
        )));
    }
    Ok(())
}

/// Closed form: (2/pi) (z0 + (1 - z0) B^-1 [(2 eta)^(2nu-2)
/// + sum_j 2 C(2j-1, j-1) (2 eta)^(2nu-2-2j)]) sqrt(1 - eta^2).
pub fn density_display(nu: u32, z0: &Float, eta: &Float, prec: u32) -> Result<Float> {
    check_params(nu, z0, eta)?;
    let b = float_from_rat(prec, &Rat::from(binomial(2 * nu as u64 - 1, nu as u64 - 1)));
    let two_eta_sq = Float::with_val(prec, 2 * eta.clone()).square();

    let mut bracket = two_eta_sq.clone().pow(nu - 1);
    for j in 1..nu {
        let coeff = Float::with_val(prec, 2) * float_from_rat(prec, &Rat::from(binomial(2 * j as u64 - 1, j as u64 - 1)));
        bracket += coeff * two_eta_sq.clone().pow(nu - 1 - j);
    }
    bracket /= b;

    let inner = z0.clone() + (Float::with_val(prec, 1) - z0) * bracket;
    let half_circle = (Float::with_val(prec, 1) - eta.clone().square()).sqrt();
    Ok(Float::with_val(prec, 2) / pi(prec) * inner * half_circle)
}

/// Reconstruction: endpoint beta = 2 sqrt(z0), coupling
/// t = (1 - z0) / (c_nu z0^nu), moment ladder v_i, corrector
/// h(lambda) = 1 + sum_j h_j lambda^(2j), then
/// rho(eta) = beta^2 / (2 pi) sqrt(1 - eta^2) h(beta eta).
///
/// The coupling formula divides by z0^nu, so z0 = 0 is outside this
/// route's domain even though the closed form extends there.
pub fn density_constructed(nu: u32, z0: &Float, eta: &Float, prec: u32) -> Result<Float> {
    check_params(nu, z0, eta)?;
    if *z0 == 0 {
        return Err(NumError::BadInput(
            "the reconstruction route needs a positive branch parameter".into(),
        ));
    }
    let beta_sq = Float::with_val(prec, 4 * z0.clone());
    let c = float_from_rat(prec, &Rat::from(c_nu(nu)?));
    let t = (Float::with_val(prec, 1) - z0) / (c * z0.clone().pow(nu));

    // v_0 = beta^2/2, v_i = C(2i-1, i-1) 4^-i beta^(2i+2) / (i+1)
    let mut v = vec![beta_sq.clone() / 2u32];
    for i in 1..=nu as u64 - 1 {
        let num = Rat::from(binomial(2 * i - 1, i - 1));
        let scale = float_from_rat(prec, &num)
            / Float::with_val(prec, 4).pow(i as u32)
            / Float::with_val(prec, i as u32 + 1);
        v.push(scale * beta_sq.clone().pow(i as u32 + 1));
    }

    // h_j = 4 nu (nu - j) t v_(nu-1-j) / beta^2
    let eta_beta_sq = beta_sq.clone() * eta.clone().square();
    let mut h = Float::with_val(prec, 1);
    for j in 0..nu {
        let hj = Float::with_val(prec, 4 * nu * (nu - j)) * &t * &v[(nu - 1 - j) as usize]
            / &beta_sq;
        h += hj * eta_beta_sq.clone().pow(j);
    }

    let half_circle = (Float::with_val(prec, 1) - eta.clone().square()).sqrt();
    Ok(beta_sq / (Float::with_val(prec, 2) * pi(prec)) * half_circle * h)
}

/// Total mass of the density, integrated with the substitution
/// eta = sin(phi) so the integrand is smooth through the endpoints.
pub fn normalization(nu: u32, z0: &Float, nodes: usize, prec: u32) -> Result<Float> {
    let origin = Float::with_val(prec, 0);
    check_params(nu, z0, &origin)?;
    let rule = QuadRule::cached(nodes, prec)?;
    let half_pi = pi(prec) / 2u32;
    let lo = -half_pi.clone();
    let mut failure = None;
    let total = rule.integrate(&lo, &half_pi, |phi| {
        let eta = phi.clone().sin();
        let cos = phi.clone().cos();
        match density_display(nu, z0, &eta, prec) {
            Ok(rho) => rho * cos,
            Err(e) => {
                failure.get_or_insert(e);
                Float::with_val(prec, 0)
            }
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(total),
    }
}

/// Largest gap between the two density routes over an interior grid of
/// ten branch parameters crossed with five scaled eigenvalues.
pub fn two_path_max_deviation(nu: u32, prec: u32) -> Result<Float> {
    let etas: Vec<Float> = [(-9, 10), (-1, 2), (0, 1), (1, 2), (9, 10)]
        .iter()
        .map(|&(p, q)| Float::with_val(prec, p) / q)
        .collect();
    let mut worst = Float::with_val(prec, 0);
    for tenths in 1..=10u32 {
        let z0 = Float::with_val(prec, tenths) / 10u32;
        for eta in &etas {
            let a = density_display(nu, &z0, eta, prec)?;
            let b = density_constructed(nu, &z0, eta, prec)?;
            let gap = Float::with_val(prec, &a - &b).abs();
            if gap > worst {
                worst = gap;
            }
        }
    }
    Ok(worst)
}
