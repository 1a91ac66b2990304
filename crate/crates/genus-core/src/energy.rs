//! Free-energy coefficients e_g of the genus expansion. Genus 0 and 1 are
//! closed forms with logarithms; every higher genus is a rational function
//! (z0-1) Q(z0) / u^o solved from an Euler-operator equation whose forcing is
//! assembled out of the lower energies and the z-rows.

use crate::exactnum::{factorial, Rat};
use crate::hierarchy::{w_table, ZRow};
use crate::symbolics::{
    compose_log_extended, compose_rational, series_log_coefficient, u_poly, LogExtendedZ0, PolyQ,
    RationalZ0,
};
use crate::{Error, Result};
use num_bigint::BigInt;

/// e_0 = (1/2) log z0 + eta (z0-1)(z0-r) with eta = (nu-1)^2/(4nu(nu+1)) and
/// r = 3(nu+1)/(nu-1).
pub fn e0(nu: u32) -> Result<LogExtendedZ0> {
    if nu < 2 {
        return Err(Error::BadNu(nu));
    }
    let n = nu as i64;
    let eta = Rat::ratio((n - 1) * (n - 1), 4 * n * (n + 1));
    let r = Rat::ratio(3 * (n + 1), n - 1);
    let quad = PolyQ::from_coeffs(vec![Rat::from(-1), Rat::one()])
        .mul(&PolyQ::from_coeffs(vec![-&r, Rat::one()]))
        .scale(&eta);
    Ok(LogExtendedZ0::new(
        RationalZ0::from_poly(nu, quad),
        Rat::ratio(1, 2),
        Rat::zero(),
    ))
}

/// e_1 = -(1/12) log u.
pub fn e1(nu: u32) -> Result<LogExtendedZ0> {
    if nu < 2 {
        return Err(Error::BadNu(nu));
    }
    Ok(LogExtendedZ0::new(
        RationalZ0::zero(nu),
        Rat::zero(),
        Rat::ratio(-1, 12),
    ))
}

/// s^j (d/ds)^j applied to a log-extended energy. The j = 0 term is the
/// caller's business (it needs the transfer coefficient to vanish on logs);
/// here j >= 1, which always lands in the rational class.
fn theta_power(e: &LogExtendedZ0, j: u32) -> RationalZ0 {
    assert!(j >= 1);
    let mut v = e.derivative_s();
    for _ in 1..j {
        v = v.derivative_s();
    }
    for _ in 0..j {
        v = v.mul_s();
    }
    v
}

/// The genus-g forcing for the energy equation:
///   -sum_{l=1..g} 2/(2l+2)! W_l + [x^g] log(z_0 + z_1 x + ... + z_g x^g),
/// where W_l pushes 2l+2 w-derivatives through e_{g-l} with the transfer
/// table at exponent 2-2(g-l).
///
/// energies[m] must be e_m for m = 0..g-1; zrows[m] the genus-(m+1) row up to
/// genus g.
pub fn drivers(nu: u32, g: u32, energies: &[LogExtendedZ0], zrows: &[ZRow]) -> Result<RationalZ0> {
    assert!(g >= 1);
    assert!(energies.len() >= g as usize, "need every energy below g");
    assert!(zrows.len() >= g as usize, "need every z-row up to g");
    let step = Rat::from(nu as i64 - 1);
    let mut total = RationalZ0::zero(nu);
    for l in 1..=g {
        let e = &energies[(g - l) as usize];
        let n = 2 * l + 2;
        let c = 2 - 2 * (g - l) as i64;
        let t = w_table(nu, n, c);
        let mut w = RationalZ0::zero(nu);
        if !t[0].is_zero() {
            if e.has_logs() {
                return Err(Error::SurvivingLog {
                    context: "undifferentiated log energy in a W block",
                });
            }
            w = w.add(&e.rational.scale(&t[0]));
        }
        let mut pw = Rat::one();
        for (j, tj) in t.iter().enumerate().skip(1) {
            pw = &pw * &step;
            if tj.is_zero() {
                continue;
            }
            w = w.add(&theta_power(e, j as u32).scale(&(tj * &pw)));
        }
        let weight = Rat::from_bigint(factorial(n as u64)).recip()? * Rat::from(-2);
        total = total.add(&w.scale(&weight));
    }
    let mut zs = vec![RationalZ0::z0(nu)];
    for row in zrows.iter().take(g as usize) {
        zs.push(row.to_rational());
    }
    let log_term = series_log_coefficient(&zs, g as usize)?;
    total = total.add(&log_term);
    if !total.vanishes_at_one() {
        return Err(Error::PoleAtOne {
            context: "drivers must vanish at the regular point",
        });
    }
    Ok(total)
}

/// A solved energy coefficient: form = (z0-1) Q(z0) / u^o with deg Q = d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnergySolution {
    pub form: RationalZ0,
    pub o: u32,
    pub d: u32,
}

/// ((nu-1) theta - a)((nu-1) theta - b) f, theta = s d/ds.
fn euler_apply(nu: u32, f: &RationalZ0, a: i64, b: i64) -> RationalZ0 {
    let step = Rat::from(nu as i64 - 1);
    let once = |v: &RationalZ0, shift: i64| {
        v.derivative_s()
            .mul_s()
            .scale(&step)
            .sub(&v.scale(&Rat::from(shift)))
    };
    once(&once(f, b), a)
}

/// Exact dense linear solve; None when the system is inconsistent or the
/// solution is not unique.
fn solve_linear(mut m: Vec<Vec<Rat>>, mut rhs: Vec<Rat>) -> Option<Vec<Rat>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivot_of_col = vec![usize::MAX; cols];
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        rhs.swap(row, p);
        let inv = m[row][col].recip().ok()?;
        for c in col..cols {
            m[row][c] = &m[row][c] * &inv;
        }
        rhs[row] = &rhs[row] * &inv;
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..cols {
                    let t = &m[row][c] * &factor;
                    m[r][c] = &m[r][c] - &t;
                }
                let t = &rhs[row] * &factor;
                rhs[r] = &rhs[r] - &t;
            }
        }
        pivot_of_col[col] = row;
        row += 1;
        if row == rows {
            break;
        }
    }
    // inconsistent rows
    for r in row..rows {
        if !rhs[r].is_zero() {
            return None;
        }
    }
    // a free column means non-uniqueness
    if pivot_of_col.iter().any(|&p| p == usize::MAX) {
        return None;
    }
    Some((0..cols).map(|c| rhs[pivot_of_col[c]].clone()).collect())
}

fn try_ansatz(nu: u32, g: u32, d_forcing: &RationalZ0, o: u32, dcap: u32) -> Option<RationalZ0> {
    let a = 2 * g as i64 - 2;
    let b = 2 * g as i64 - 1;
    let z_minus_one = PolyQ::from_coeffs(vec![Rat::from(-1), Rat::one()]);
    let basis: Vec<RationalZ0> = (0..=dcap as usize)
        .map(|i| {
            RationalZ0::new(
                nu,
                z_minus_one.mul(&PolyQ::x().pow(i)),
                0,
                o,
            )
        })
        .collect();
    let images: Vec<RationalZ0> = basis.iter().map(|f| euler_apply(nu, f, a, b)).collect();
    let zp = images
        .iter()
        .chain(std::iter::once(d_forcing))
        .map(|v| v.z0_pole())
        .max()
        .unwrap();
    let up = images
        .iter()
        .chain(std::iter::once(d_forcing))
        .map(|v| v.u_pole())
        .max()
        .unwrap();
    let upoly = u_poly(nu);
    let lift = |v: &RationalZ0| {
        v.numerator()
            .shift_up((zp - v.z0_pole()) as usize)
            .mul(&upoly.pow((up - v.u_pole()) as usize))
    };
    let lifted: Vec<PolyQ> = images.iter().map(lift).collect();
    let rhs_poly = lift(d_forcing);
    let deg = lifted
        .iter()
        .chain(std::iter::once(&rhs_poly))
        .filter_map(|p| p.degree())
        .max()
        .unwrap_or(0);
    let mut m = vec![vec![Rat::zero(); basis.len()]; deg + 1];
    let mut rhs = vec![Rat::zero(); deg + 1];
    for (i, p) in lifted.iter().enumerate() {
        for (r, slot) in m.iter_mut().enumerate() {
            slot[i] = p.coeff(r);
        }
    }
    for (r, slot) in rhs.iter_mut().enumerate() {
        *slot = rhs_poly.coeff(r);
    }
    let q = solve_linear(m, rhs)?;
    let qpoly = PolyQ::from_coeffs(q);
    let candidate = RationalZ0::new(nu, z_minus_one.mul(&qpoly), 0, o);
    // exact residual check, not a consequence of the solve alone when the
    // lift had common factors
    if euler_apply(nu, &candidate, a, b).sub(d_forcing).is_zero() {
        Some(candidate)
    } else {
        None
    }
}

/// Solve the Euler-operator equation
///   ((nu-1)theta - (2g-2)) ((nu-1)theta - (2g-1)) e_g = drivers_g
/// inside the family (z0-1) Q(z0) / u^o, searching o (the 5(g-1) shape first)
/// and capping deg Q at 3g+2, then cross-check the expansion coefficient by
/// coefficient through order 3g+12.
pub fn solve_eg(
    nu: u32,
    g: u32,
    energies: &[LogExtendedZ0],
    zrows: &[ZRow],
) -> Result<EnergySolution> {
    assert!(g >= 2, "genus 0 and 1 are closed forms");
    let d_forcing = drivers(nu, g, energies, zrows)?;
    let dcap = 3 * g + 2;
    let o_cap = 5 * g;
    let preferred = 5 * (g - 1);
    let mut candidates: Vec<u32> = Vec::with_capacity(o_cap as usize);
    candidates.push(preferred);
    candidates.extend((1..=o_cap).filter(|&o| o != preferred));
    let mut solved = None;
    for o in candidates {
        if let Some(c) = try_ansatz(nu, g, &d_forcing, o, dcap) {
            solved = Some(c);
            break;
        }
    }
    let Some(form) = solved else {
        return Err(Error::AnsatzSearch { g, o_cap, d_cap: dcap });
    };

    // series cross-check: e_{g,m} = D_m / (A_m B_m), resonant D_m must vanish
    let order = (3 * g + 12) as usize;
    let e_series = compose_rational(&form, order)?;
    let d_series = compose_rational(&d_forcing, order)?;
    let step = nu as i64 - 1;
    for m in 0..=order {
        let am = Rat::from(step * m as i64 - (2 * g as i64 - 2));
        let bm = Rat::from(step * m as i64 - (2 * g as i64 - 1));
        if am.is_zero() || bm.is_zero() {
            if !d_series.coeff(m).is_zero() {
                return Err(Error::ResonantDriver {
                    m,
                    value: d_series.coeff(m).to_string(),
                });
            }
            continue;
        }
        let expect = d_series.coeff(m) / &(&am * &bm);
        if &expect != e_series.coeff(m) {
            return Err(Error::SeriesMismatch {
                m,
                left: e_series.coeff(m).to_string(),
                right: expect.to_string(),
            });
        }
    }

    let o = form.u_pole();
    let qpoly = form
        .numerator()
        .div_exact(
            &PolyQ::from_coeffs(vec![Rat::from(-1), Rat::one()]),
            "energy numerator must vanish at z0 = 1",
        )?;
    let d = qpoly.degree().unwrap_or(0) as u32;
    Ok(EnergySolution { form, o, d })
}

/// kappa_g(j) = j! [s^j] e_g for j = 0..=jmax; each must be a nonnegative
/// integer. The genus only labels the error context.
pub fn kappa(g: u32, jmax: u32, energy: &LogExtendedZ0) -> Result<Vec<BigInt>> {
    let series = compose_log_extended(energy, jmax as usize)?;
    let mut out = Vec::with_capacity(jmax as usize + 1);
    let mut fact = Rat::one();
    for j in 0..=jmax {
        if j > 0 {
            fact = fact * Rat::from(j as i64);
        }
        let v = &fact * series.coeff(j as usize);
        if v.is_negative() {
            return Err(Error::BadCount {
                g,
                j,
                value: v.to_string(),
            });
        }
        out.push(v.to_bigint().map_err(|_| Error::BadCount {
            g,
            j,
            value: v.to_string(),
        })?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hierarchy::solve_rows_to;

    fn r(p: i64, q: i64) -> Rat {
        Rat::ratio(p, q)
    }

    fn closed_e2(nu: u32) -> RationalZ0 {
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

    #[test]
    fn low_genus_energies_expand_to_map_counts() {
        let e = e0(2).unwrap();
        let k0 = kappa(0, 5, &e).unwrap();
        assert_eq!(
            k0,
            [0i64, 2, 36, 1728, 145152, 17915904]
                .iter()
                .map(|&v| BigInt::from(v))
                .collect::<Vec<_>>()
        );
        let k1 = kappa(1, 5, &e1(2).unwrap()).unwrap();
        assert_eq!(
            k1,
            [0i64, 1, 60, 6336, 964224, 192098304]
                .iter()
                .map(|&v| BigInt::from(v))
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn genus_two_matches_closed_form() {
        for nu in [2u32, 3] {
            let (rows, _) = solve_rows_to(nu, 2).unwrap();
            let energies = vec![e0(nu).unwrap(), e1(nu).unwrap()];
            let sol = solve_eg(nu, 2, &energies, &rows).unwrap();
            assert_eq!(sol.form, closed_e2(nu), "nu={nu}");
            assert_eq!((sol.o, sol.d), (5, 4));
        }
    }

    #[test]
    fn genus_two_series_observations() {
        // resonant coefficients and the first fixed ones at nu=2
        let (rows, _) = solve_rows_to(2, 2).unwrap();
        let energies = vec![e0(2).unwrap(), e1(2).unwrap()];
        let d = drivers(2, 2, &energies, &rows).unwrap();
        let ds = compose_rational(&d, 4).unwrap();
        assert!(ds.coeff(2).is_zero());
        assert!(ds.coeff(3).is_zero());
        assert_eq!(ds.coeff(4), &r(64224, 1));
        let sol = solve_eg(2, 2, &energies, &rows).unwrap();
        let es = compose_rational(&sol.form, 4).unwrap();
        assert_eq!(es.coeff(3), &r(240, 1));
        assert_eq!(es.coeff(4), &r(32112, 1));
    }

    #[test]
    fn genus_three_frozen_coefficients() {
        let (rows, _) = solve_rows_to(2, 3).unwrap();
        let mut energies = vec![e0(2).unwrap(), e1(2).unwrap()];
        let sol2 = solve_eg(2, 2, &energies, &rows).unwrap();
        energies.push(LogExtendedZ0::from_rational(sol2.form));
        let sol3 = solve_eg(2, 3, &energies, &rows).unwrap();
        assert_eq!((sol3.o, sol3.d), (10, 9));
        let q = sol3
            .form
            .numerator()
            .div_exact(
                &PolyQ::from_coeffs(vec![r(-1, 1), Rat::one()]),
                "test",
            )
            .unwrap();
        let expect: Vec<Rat> = [
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
        .collect();
        assert_eq!(q.coeffs(), &expect[..]);
    }

    #[test]
    fn genus_two_kappa_table() {
        let (rows, _) = solve_rows_to(2, 2).unwrap();
        let energies = vec![e0(2).unwrap(), e1(2).unwrap()];
        let sol = solve_eg(2, 2, &energies, &rows).unwrap();
        let k2 = kappa(2, 5, &LogExtendedZ0::from_rational(sol.form)).unwrap();
        assert_eq!(
            k2,
            [0i64, 0, 0, 1440, 770688, 348033024]
                .iter()
                .map(|&v| BigInt::from(v))
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn closed_low_energies_satisfy_their_own_euler_equation() {
        // g=1: ((nu-1)theta)((nu-1)theta - 1) e_1 = drivers_1
        for nu in [2u32, 3] {
            let (rows, _) = solve_rows_to(nu, 1).unwrap();
            let energies = vec![e0(nu).unwrap()];
            let d = drivers(nu, 1, &energies, &rows).unwrap();
            // theta e_1 is rational, so apply the operator to it directly:
            // L e_1 = ((nu-1)theta - 1)((nu-1)theta) e_1
            //       = ((nu-1)theta - 1) [(nu-1) theta e_1]
            let step = Rat::from(nu as i64 - 1);
            let t1 = e1(nu).unwrap().derivative_s().mul_s().scale(&step);
            let l_e1 = t1.derivative_s().mul_s().scale(&step).sub(&t1);
            assert_eq!(l_e1, d, "nu={nu}");
        }
    }
}
