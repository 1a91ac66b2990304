//! Closed forms and frozen tables restated independently of the solver,
//! shared by the validate registry and the acceptance suite.

use genus_core::exactnum::Rat;
use genus_core::symbolics::{LogExtendedZ0, PolyQ, RationalZ0};
use num_bigint::BigInt;

pub fn r(p: i64, q: i64) -> Rat {
    Rat::ratio(p, q)
}

/// z1 as a partial-fraction row over u: (nu(nu+2)/12, -nu(3nu+2)/12, nu^2/6).
pub fn z1_row(nu: u32) -> Vec<Rat> {
    let n = nu as i64;
    vec![
        r(n * (n + 2), 12),
        r(-n * (3 * n + 2), 12),
        r(n * n, 6),
    ]
}

/// z2 = z0 (z0 - 1) P4(z0) / u^9 with P4 quartic in z0.
pub fn z2_closed(nu: u32) -> RationalZ0 {
    let n = nu as i128;
    let pows: Vec<i128> = (0..=8).map(|e| n.pow(e)).collect();
    let c0 = 2 * pows[6] - 14 * pows[7] + 24 * pows[8];
    let c1 = -12 * pows[3] + 148 * pows[4] - 546 * pows[5] + 758 * pows[6]
        - 252 * pows[7]
        - 96 * pows[8];
    let c2 = 264 * pows[2] - 1510 * pows[3] + 2551 * pows[4] - 500 * pows[5] - 1789 * pows[6]
        + 840 * pows[7]
        + 144 * pows[8];
    let c3 = -536 * pows[1] + 1396 * pows[2] + 912 * pows[3] - 4596 * pows[4] + 2492 * pows[5]
        + 1296 * pows[6]
        - 868 * pows[7]
        - 96 * pows[8];
    let c4 = 168 + 234 * pows[1] - 1467 * pows[2] + 558 * pows[3] + 1902 * pows[4]
        - 1446 * pows[5]
        - 267 * pows[6]
        + 294 * pows[7]
        + 24 * pows[8];
    let quartic = PolyQ::from_coeffs(
        [c0, c1, c2, c3, c4]
            .iter()
            .map(|&c| Rat::from_bigint(BigInt::from(c)))
            .collect(),
    );
    let scale = r((nu as i64 - 1) * nu as i64, 1440);
    let num = PolyQ::from_coeffs(vec![Rat::zero(), r(-1, 1), Rat::one()]).mul(&quartic);
    RationalZ0::from_poly(nu, num.scale(&scale)).mul_u_pow(-9)
}

/// e2 = (z0 - 1) Q(z0) / u^5 with Q quartic in z0.
pub fn e2_closed(nu: u32) -> RationalZ0 {
    let n = nu as i64;
    let p = |e: u32| n.pow(e);
    let c0 = -p(3) + 5 * p(4) + 8 * p(5);
    let c1 = -p(2) + 41 * p(3) - 24 * p(4) - 16 * p(5);
    let c2 = 44 * n - 89 * p(2) + 54 * p(3) - 17 * p(4) + 8 * p(5);
    let c3 = -12 - 12 * n + 108 * p(2) - 132 * p(3) + 48 * p(4);
    let c4 = -12 + 48 * n - 72 * p(2) + 48 * p(3) - 12 * p(4);
    let q = PolyQ::from_coeffs([c0, c1, c2, c3, c4].iter().map(|&c| Rat::from(c)).collect())
        .scale(&r(n - 1, 2880));
    RationalZ0::from_poly(nu, PolyQ::from_coeffs(vec![r(-1, 1), Rat::one()]).mul(&q))
        .mul_u_pow(-5)
}

/// e0 = (1/2) log z0 + eta (z0 - 1)(z0 - rho), eta = (nu-1)^2/(4 nu (nu+1)),
/// rho = 3(nu+1)/(nu-1).
pub fn e0_closed(nu: u32) -> LogExtendedZ0 {
    let n = nu as i64;
    let eta = r((n - 1) * (n - 1), 4 * n * (n + 1));
    let rho = r(3 * (n + 1), n - 1);
    let poly = PolyQ::from_coeffs(vec![
        rho.clone(),
        -(Rat::one() + rho),
        Rat::one(),
    ])
    .scale(&eta);
    LogExtendedZ0 {
        rational: RationalZ0::from_poly(nu, poly),
        log_z0: r(1, 2),
        log_u: Rat::zero(),
    }
}

/// e1 = -(1/12) log u.
pub fn e1_closed(nu: u32) -> LogExtendedZ0 {
    LogExtendedZ0 {
        rational: RationalZ0::zero(nu),
        log_z0: Rat::zero(),
        log_u: r(-1, 12),
    }
}

/// Quartic-weight z3 partial-fraction row, frozen from an independent solve.
pub fn quartic_z3_row() -> Vec<Rat> {
    [
        (10796, 9),
        (-297416, 27),
        (1182748, 27),
        (-888160, 9),
        (3723580, 27),
        (-3308648, 27),
        (608972, 9),
        (-573488, 27),
        (78400, 27),
    ]
    .iter()
    .map(|&(p, q)| r(p, q))
    .collect()
}

/// Quartic-weight e3 numerator over (z0 - 1), frozen: e3 = (z0-1) Q / u^10
/// with deg Q = 9.
pub fn quartic_e3_q() -> Vec<Rat> {
    [
        (-4315i64, 2268i64),
        (6359, 567),
        (-231451, 9072),
        (252709, 9072),
        (-126971, 9072),
        (15325, 9072),
        (799, 1008),
        (-23, 144),
        (19, 1008),
        (-1, 1008),
    ]
    .iter()
    .map(|&(p, q)| r(p, q))
    .collect()
}

/// Top partial-fraction coefficient of z2 for nu = 2..=5.
pub fn top_pole_openings() -> Vec<(u32, Rat)> {
    vec![
        (2, r(196, 9)),
        (3, r(1323, 8)),
        (4, r(6272, 9)),
        (5, r(153125, 72)),
    ]
}

/// Quartic-weight planar map counts for j = 0..=6.
pub fn quartic_planar_counts() -> Vec<BigInt> {
    [1i64, 12, 576, 51840, 6967296, 1254113280, 283787919360]
        .iter()
        .map(|&v| BigInt::from(v))
        .collect()
}

/// Quartic-weight cumulant tables kappa_g(j) for g = 0, 1, 2 and j = 0..=5.
pub fn quartic_kappa_tables() -> [Vec<BigInt>; 3] {
    let row = |vals: [i64; 6]| vals.iter().map(|&v| BigInt::from(v)).collect();
    [
        row([0, 2, 36, 1728, 145152, 17915904]),
        row([0, 1, 60, 6336, 964224, 192098304]),
        row([0, 0, 0, 1440, 770688, 348033024]),
    ]
}
