//! Recurrence coefficients of monic polynomials orthogonal under
//! exp(-N (lambda^2/2 + t lambda^(2 nu))).
//!
//! Two routes: Stieltjes moment ladders through tail-bounded quadrature,
//! and (for the quartic weight) the forward string recursion seeded by
//! the first moment ratio.

use crate::quad::QuadRule;
use crate::{NumError, Result};
use rug::ops::Pow;
use rug::Float;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Stieltjes,
    StringForward,
}

/// One computed ladder of squared recurrence coefficients.
///
/// `b_squared[n]` holds b^2_n; index 0 is the conventional zero.
pub struct RecurrenceRun {
    pub method: Method,
    pub nu: u32,
    pub big_n: u32,
    pub t: Float,
    pub prec: u32,
    pub b_squared: Vec<Float>,
}

fn check_weight(nu: u32, t: &Float, big_n: u32) -> Result<()> {
    if nu < 2 {
        return Err(NumError::Core(genus_core::Error::BadNu(nu)));
    }
    if !(*t >= 0) {
        return Err(NumError::BadInput(format!(
            "coupling {} must be nonnegative for a normalizable weight",
            t
        )));
    }
    if big_n < 1 || big_n > 64 {
        return Err(NumError::BadInput(format!(
            "matrix size {} outside the supported range 1..=64",
            big_n
        )));
    }
    Ok(())
}

/// Smallest half-width R in steps of 1/2 with
/// 2 nmax ln R - N (R^2/2 + t R^(2 nu)) <= -(P + 16) ln 2,
/// so the dropped tail sits below the target precision.
fn cutoff(nu: u32, t: f64, big_n: u32, nmax: u32, prec: u32) -> f64 {
    let target = -((prec + 16) as f64) * std::f64::consts::LN_2;
    let mut r = 2.0f64;
    loop {
        let exponent =
            2.0 * nmax as f64 * r.ln() - big_n as f64 * (r * r / 2.0 + t * r.powi(2 * nu as i32));
        if exponent <= target {
            return r;
        }
        r += 0.5;
    }
}

/// One ladder pass at a fixed node count: weighted node values cached
/// once, then every h_n is a single dot product.
fn ladder_at(
    nu: u32,
    t: &Float,
    big_n: u32,
    nmax: u32,
    rule: &QuadRule,
    r: f64,
    prec: u32,
) -> Result<Vec<Float>> {
    let a = Float::with_val(prec, 0);
    let b = Float::with_val(prec, r);
    let half_width = Float::with_val(prec, &b - &a) / 2u32;
    let center = Float::with_val(prec, &a + &b) / 2u32;

    // lambda_i and W_i = w(lambda_i) * gl_i, shared by every rung
    let mut lambdas = Vec::with_capacity(rule.nodes.len());
    let mut weights = Vec::with_capacity(rule.nodes.len());
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        let lambda = half_width.clone() * x + &center;
        let expo = -(lambda.clone().square() / 2u32
            + t.clone() * lambda.clone().pow(2 * nu))
            * big_n;
        weights.push(expo.exp() * w * &half_width);
        lambdas.push(lambda);
    }

    let dot = |vals: &[Float]| -> Float {
        let mut acc = Float::with_val(prec, 0);
        for (v, w) in vals.iter().zip(&weights) {
            acc += v.clone().square() * w;
        }
        acc * 2u32
    };

    let mut prev: Vec<Float> = lambdas.iter().map(|_| Float::with_val(prec, 1)).collect();
    let mut cur: Vec<Float> = lambdas.clone();
    let mut h_prev = dot(&prev);
    if !(h_prev > 0) {
        return Err(NumError::PrecisionLoss {
            context: "norm of the constant polynomial",
            prec,
        });
    }
    let mut out = vec![Float::with_val(prec, 0)];
    for n in 1..=nmax {
        let h = dot(&cur);
        if !(h > 0) {
            return Err(NumError::PrecisionLoss {
                context: "moment ladder lost positivity",
                prec,
            });
        }
        let b_sq = Float::with_val(prec, &h / &h_prev);
        if n < nmax {
            for i in 0..lambdas.len() {
                let next = lambdas[i].clone() * &cur[i] - b_sq.clone() * &prev[i];
                prev[i] = std::mem::replace(&mut cur[i], next);
            }
        }
        h_prev = h;
        out.push(b_sq);
    }
    Ok(out)
}

pub fn recurrence_stieltjes(
    nu: u32,
    t: &Float,
    big_n: u32,
    nmax: u32,
    prec: u32,
) -> Result<RecurrenceRun> {
    check_weight(nu, t, big_n)?;
    if nmax < 1 {
        return Err(NumError::BadInput("need at least one coefficient".into()));
    }
    let work = prec + 32;
    let t_w = Float::with_val(work, t);
    let r = cutoff(nu, t.to_f64(), big_n, nmax, prec);
    let settle = Float::with_val(work, 2).pow(-(prec as i32) + 24);

    let mut nodes = 64usize;
    let mut previous: Option<Vec<Float>> = None;
    while nodes <= 16384 {
        let rule = QuadRule::cached(nodes, work)?;
        let ladder = ladder_at(nu, &t_w, big_n, nmax, &rule, r, work)?;
        if let Some(last) = &previous {
            let mut gap = Float::with_val(work, 0);
            for (a, b) in last.iter().zip(&ladder) {
                let d = Float::with_val(work, a - b).abs();
                if d > gap {
                    gap = d;
                }
            }
            if gap < settle {
                return Ok(RecurrenceRun {
                    method: Method::Stieltjes,
                    nu,
                    big_n,
                    t: t_w,
                    prec,
                    b_squared: ladder
                        .into_iter()
                        .map(|v| Float::with_val(prec, v))
                        .collect(),
                });
            }
        }
        previous = Some(ladder);
        nodes *= 2;
    }
    Err(NumError::PrecisionLoss {
        context: "quadrature refinement stalled",
        prec,
    })
}

/// Forward recursion of the quartic string relation
/// n/N = b^2_n (1 + 4 t (b^2_(n-1) + b^2_n + b^2_(n+1))),
/// seeded by b^2_1 from the first two weight moments.
pub fn string_forward(t: &Float, big_n: u32, nmax: u32, prec: u32) -> Result<RecurrenceRun> {
    check_weight(2, t, big_n)?;
    if !(*t > 0) {
        return Err(NumError::BadInput(
            "the forward string step divides by the coupling".into(),
        ));
    }
    if nmax < 1 {
        return Err(NumError::BadInput("need at least one coefficient".into()));
    }
    let work = prec + 32;
    let t_w = Float::with_val(work, t);
    let seed = recurrence_stieltjes(2, t, big_n, 1, prec)?;
    let mut b = vec![Float::with_val(work, 0), Float::with_val(work, &seed.b_squared[1])];
    for n in 1..nmax {
        let ratio = Float::with_val(work, n) / big_n;
        let next = (ratio - &b[n as usize]) / (Float::with_val(work, 4) * &t_w * &b[n as usize])
            - &b[n as usize - 1]
            - &b[n as usize];
        if !(next > 0) {
            return Err(NumError::Unstable { last_stable: n });
        }
        b.push(next);
    }
    Ok(RecurrenceRun {
        method: Method::StringForward,
        nu: 2,
        big_n,
        t: t_w,
        prec,
        b_squared: b.into_iter().map(|v| Float::with_val(prec, v)).collect(),
    })
}

/// Worst violation of the string relation over the interior rungs of a
/// computed ladder.
pub fn string_residual(run: &RecurrenceRun) -> Result<Float> {
    if run.nu != 2 {
        return Err(NumError::BadInput(
            "the string relation applies to the quartic weight".into(),
        ));
    }
    let prec = run.prec;
    let b = &run.b_squared;
    if b.len() < 3 {
        return Err(NumError::BadInput(
            "need at least two rungs beyond the seed".into(),
        ));
    }
    let mut worst = Float::with_val(prec, 0);
    for n in 1..b.len() - 1 {
        let neighbor_sum = Float::with_val(prec, &b[n - 1] + &b[n]) + &b[n + 1];
        let lhs = b[n].clone()
            * (Float::with_val(prec, 1) + Float::with_val(prec, 4) * &run.t * neighbor_sum);
        let target = Float::with_val(prec, n as u32) / run.big_n;
        let gap = (lhs - target).abs();
        if gap > worst {
            worst = gap;
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_coupling_recovers_the_gaussian_ladder() {
        let prec = 200;
        let t = Float::with_val(prec, 0);
        let run = recurrence_stieltjes(2, &t, 16, 16, prec).unwrap();
        let tol = Float::with_val(prec, 1e-30);
        for n in 0..=16u32 {
            let want = Float::with_val(prec, n) / 16u32;
            let gap = Float::with_val(prec, &run.b_squared[n as usize] - &want).abs();
            assert!(gap < tol, "n = {}: {:e}", n, gap);
        }
    }

    #[test]
    fn string_route_agrees_with_the_moment_route() {
        let prec = 200;
        let t = Float::with_val(prec, 0.05);
        let stieltjes = recurrence_stieltjes(2, &t, 16, 16, prec).unwrap();
        let string = string_forward(&t, 16, 16, prec).unwrap();
        let tol = Float::with_val(prec, 1e-15);
        for n in 0..=16usize {
            let gap =
                Float::with_val(prec, &stieltjes.b_squared[n] - &string.b_squared[n]).abs();
            assert!(gap < tol, "n = {}: {:e}", n, gap);
        }
    }

    #[test]
    fn moment_route_satisfies_the_string_relation() {
        let prec = 200;
        let t = Float::with_val(prec, 0.05);
        let run = recurrence_stieltjes(2, &t, 24, 24, prec).unwrap();
        let residual = string_residual(&run).unwrap();
        assert!(residual < Float::with_val(prec, 1e-25), "{:e}", residual);
    }

    #[test]
    fn forward_route_blows_up_without_enough_bits() {
        let t = Float::with_val(64, 0.05);
        match string_forward(&t, 8, 80, 64) {
            Err(NumError::Unstable { last_stable }) => assert!(last_stable > 1),
            Ok(_) => panic!("expected the forward recursion to lose positivity"),
            Err(e) => panic!("unexpected error {}", e),
        }
    }

    #[test]
    fn negative_coupling_is_rejected() {
        let t = Float::with_val(64, -0.01);
        assert!(matches!(
            recurrence_stieltjes(2, &t, 8, 4, 64),
            Err(NumError::BadInput(_))
        ));
    }

    #[test]
    fn sextic_ladder_is_increasing_at_small_coupling() {
        let prec = 128;
        let t = Float::with_val(prec, 0.01);
        let run = recurrence_stieltjes(3, &t, 12, 12, prec).unwrap();
        for n in 1..12usize {
            assert!(run.b_squared[n] < run.b_squared[n + 1], "n = {}", n);
        }
    }
}
