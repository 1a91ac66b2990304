//! The string hierarchy: assembling the forcing for each genus from lower
//! rows, solving the linearized integral equation in closed form, and the
//! two-legged map counts that certify the rows combinatorially.

mod derived;
mod factor;
mod wtable;

pub use derived::DerivedRows;
pub use factor::factor_w_derivative;
pub use wtable::{falling_factorial, p_table, w_table};

use crate::combinatorics::{c_nu, compositions, d_coeff_symmetric, partitions};
use crate::exactnum::{factorial, Rat};
use crate::symbolics::{
    compose_rational, laurent_antiderivative_u, z0_series, z0_power_to_u, LaurentU, MonomialTerm,
    RationalZ0,
};
use crate::{Error, Result};
use num_bigint::BigInt;
use std::collections::HashMap;

/// The genus-g correction z_g = z0 * sum_l coeffs[l] / u^(2g+l), l = 0..3g-1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZRow {
    nu: u32,
    g: u32,
    coeffs: Vec<Rat>,
}

impl ZRow {
    /// Validates the structural invariants: 3g entries summing to zero
    /// (finiteness at the regular point u = 1), nonvanishing top entry
    /// (pole order exactly 5g-1), and a positive top entry.
    pub fn new(nu: u32, g: u32, coeffs: Vec<Rat>) -> Result<Self> {
        assert!(g >= 1, "genus-0 has no row");
        if coeffs.len() != 3 * g as usize {
            return Err(Error::PoleOrder {
                expected: 5 * g - 1,
                found: 2 * g + (coeffs.len() as u32).saturating_sub(1),
            });
        }
        let sum: Rat = coeffs.iter().sum();
        if !sum.is_zero() {
            return Err(Error::RowSum {
                g,
                value: sum.to_string(),
            });
        }
        let top = coeffs.last().unwrap();
        if top.is_zero() {
            let found = coeffs
                .iter()
                .rposition(|c| !c.is_zero())
                .map(|l| 2 * g + l as u32)
                .unwrap_or(0);
            return Err(Error::PoleOrder {
                expected: 5 * g - 1,
                found,
            });
        }
        if top.is_negative() {
            return Err(Error::TopCoefficient {
                g,
                value: top.to_string(),
            });
        }
        Ok(ZRow { nu, g, coeffs })
    }

    /// The closed form of the first correction:
    /// (nu(nu+2)/12, -nu(3nu+2)/12, nu^2/6).
    pub fn closed_z1(nu: u32) -> Result<Self> {
        if nu < 2 {
            return Err(Error::BadNu(nu));
        }
        let n = nu as i64;
        ZRow::new(
            nu,
            1,
            vec![
                Rat::ratio(n * (n + 2), 12),
                Rat::ratio(-n * (3 * n + 2), 12),
                Rat::ratio(n * n, 6),
            ],
        )
    }

    pub fn nu(&self) -> u32 {
        self.nu
    }

    pub fn genus(&self) -> u32 {
        self.g
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn top_coefficient(&self) -> &Rat {
        self.coeffs.last().unwrap()
    }

    pub fn pole_order(&self) -> u32 {
        5 * self.g - 1
    }

    pub fn to_rational(&self) -> RationalZ0 {
        let min = -(5 * self.g as i64 - 1);
        let lau = LaurentU::from_coeffs(min, self.coeffs.iter().rev().cloned().collect());
        RationalZ0::from_z0_laurent(self.nu, 1, &lau)
    }

    pub fn to_tower(&self) -> DerivedRows {
        DerivedRows::new(self.nu, self.g, self.coeffs.clone())
    }
}

fn fw_cached(
    cache: &mut HashMap<(u32, u32), MonomialTerm>,
    towers: &mut [DerivedRows],
    nu: u32,
    k: u32,
    n: u32,
) -> Result<MonomialTerm> {
    if let Some(t) = cache.get(&(k, n)) {
        return Ok(t.clone());
    }
    let t = factor_w_derivative(nu, k, n, &mut towers[k as usize])?;
    cache.insert((k, n), t.clone());
    Ok(t)
}

fn check_term(nu: u32, g: u32, term: &MonomialTerm) -> Result<()> {
    if term.z0_power != nu as i64 + 1 {
        return Err(Error::ForcingPower {
            expected: nu as i64 + 1,
            found: term.z0_power,
        });
    }
    if let Some(max) = term.laurent.max_degree() {
        let required = 2 * g as i64 + 1;
        if max > -required {
            return Err(Error::ForcingPoleBound {
                g,
                required,
                found: -max,
            });
        }
    }
    Ok(())
}

/// The genus-g forcing, as z0^(nu+1) times a Laurent series in u. towers[k]
/// must hold the derivative tower of genus k for every k < g.
pub fn forcing(nu: u32, g: u32, towers: &mut [DerivedRows]) -> Result<MonomialTerm> {
    assert!(g >= 1, "forcing starts at genus 1");
    assert!(towers.len() >= g as usize, "need towers for every genus below g");
    let slots = (nu + 1) as usize;
    let c = Rat::from_bigint(c_nu(nu)?);
    let mut cache: HashMap<(u32, u32), MonomialTerm> = HashMap::new();
    let mut total = LaurentU::zero();

    // derivative of the (nu+1)-fold product of undifferentiated factors,
    // spread over compositions with every index below g
    let w0 = &c * &Rat::ratio(1, nu as i64 + 1);
    for ks in compositions(g, slots, g.saturating_sub(1)) {
        for pos in 0..slots {
            let mut term = MonomialTerm::new(0, LaurentU::one());
            for (i, &k) in ks.iter().enumerate() {
                let n = u32::from(i == pos);
                term = term.mul(&fw_cached(&mut cache, towers, nu, k, n)?);
            }
            check_term(nu, g, &term)?;
            total = total.add(&term.laurent.scale(&w0));
        }
    }

    // nonlinear blocks: one for each partition weight 2l+1, l = 1..g
    for l in 1..=g {
        let rest = g - l;
        for lambda in partitions(2 * l + 1, slots) {
            let d = d_coeff_symmetric(nu, &lambda)?;
            if d == BigInt::from(0) {
                continue;
            }
            let mut coef = Rat::from_bigint(d);
            for &part in lambda.parts() {
                coef = coef / Rat::from_bigint(factorial(part as u64));
            }
            let mut slot_n: Vec<u32> = lambda.parts().to_vec();
            slot_n.resize(slots, 0);
            for ks in compositions(rest, slots, rest) {
                let mut term = MonomialTerm::new(0, LaurentU::one());
                for (i, &k) in ks.iter().enumerate() {
                    term = term.mul(&fw_cached(&mut cache, towers, nu, k, slot_n[i])?);
                }
                check_term(nu, g, &term)?;
                total = total.add(&term.laurent.scale(&coef));
            }
        }
    }

    let out = MonomialTerm::new(nu as i64 + 1, total);
    check_term(nu, g, &out)?;
    Ok(out)
}

/// Solve the linearized string equation for the genus-g row from the forcing:
/// integrate (1/c_nu) z0^(2g-2) u L(u) in u, fix the constant at u = 1, peel
/// off z0^(2g-1), and read the partial-fraction row.
pub fn solve_zg(nu: u32, g: u32, towers: &mut [DerivedRows]) -> Result<ZRow> {
    let f = forcing(nu, g, towers)?;
    let c = Rat::from_bigint(c_nu(nu)?);
    let integrand = z0_power_to_u(nu, 2 * g - 2)
        .mul(&f.laurent)
        .shift(1)
        .scale(&c.recip()?);
    let anti = laurent_antiderivative_u(nu, &integrand)?;
    let fixed = anti.sub(&LaurentU::constant(anti.eval_at_one()));
    let shifted = fixed.shift(5 * g as i64 - 2);
    let poly = shifted.into_poly("antiderivative deeper than the genus pole")?;
    let divisor = z0_power_to_u(nu, 2 * g - 1).into_poly("z0 power")?;
    let (q, r) = poly.div_rem(&divisor);
    if !r.is_zero() {
        return Err(Error::Divisibility {
            context: "row numerator not divisible by the z0 power",
        });
    }
    // q = sum_l a_l u^(3g-1-l)
    let top = 3 * g as usize - 1;
    if q.degree().map_or(false, |d| d > top) {
        // a quotient degree above 3g-1 would mean a pole shallower than 2g
        return Err(Error::PoleOrder {
            expected: 5 * g - 1,
            found: (2 * g as i64 + top as i64 - q.degree().unwrap() as i64).max(0) as u32,
        });
    }
    let coeffs: Vec<Rat> = (0..=top).map(|l| q.coeff(top - l).clone()).collect();
    ZRow::new(nu, g, coeffs)
}

/// All rows up to gmax, each solved from the towers of the rows before it.
/// Returns (rows, towers); towers[k] is the derivative tower of genus k,
/// towers[0] being the planar one.
pub fn solve_rows_to(nu: u32, gmax: u32) -> Result<(Vec<ZRow>, Vec<DerivedRows>)> {
    let mut towers = vec![DerivedRows::base_z0(nu)];
    let mut rows = Vec::new();
    for g in 1..=gmax {
        let row = solve_zg(nu, g, &mut towers)?;
        towers.push(row.to_tower());
        rows.push(row);
    }
    Ok((rows, towers))
}

/// Two-legged map counts of the tower's genus for j = 0..=jmax, computed two
/// independent ways (derivative-row sums against series expansion) and
/// required to be equal nonnegative integers.
pub fn two_legged_counts(
    nu: u32,
    jmax: u32,
    tower: &mut DerivedRows,
    zrow: Option<&ZRow>,
) -> Result<Vec<BigInt>> {
    let g = tower.genus();
    let series = match (g, zrow) {
        (0, _) => z0_series(nu, jmax as usize)?,
        (_, Some(row)) => {
            assert_eq!(row.genus(), g, "row and tower genus differ");
            compose_rational(&row.to_rational(), jmax as usize)?
        }
        (_, None) => {
            return Err(Error::BadArgument(
                "counts above genus 0 need the solved row".to_string(),
            ))
        }
    };
    tower.extend_to(jmax);
    let c = Rat::from_bigint(c_nu(nu)?);
    let mut out = Vec::with_capacity(jmax as usize + 1);
    let mut cpow = Rat::one();
    let mut fact = Rat::one();
    for j in 0..=jmax {
        if j > 0 {
            cpow = &cpow * &c;
            fact = fact * Rat::from(j as i64);
        }
        let rec = &cpow * &tower.row_sum(j);
        let ser = &fact * series.coeff(j as usize);
        if rec != ser {
            return Err(Error::CountMismatch {
                g,
                j,
                recursion: rec.to_string(),
                series: ser.to_string(),
            });
        }
        if rec.is_negative() {
            return Err(Error::BadCount {
                g,
                j,
                value: rec.to_string(),
            });
        }
        let n = rec.to_bigint().map_err(|_| Error::BadCount {
            g,
            j,
            value: rec.to_string(),
        })?;
        out.push(n);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolics::PolyQ;

    fn r(p: i64, q: i64) -> Rat {
        Rat::ratio(p, q)
    }

    #[test]
    fn first_row_matches_closed_form() {
        for nu in 2..=6u32 {
            let (rows, _) = solve_rows_to(nu, 1).unwrap();
            assert_eq!(rows[0], ZRow::closed_z1(nu).unwrap(), "nu={nu}");
        }
    }

    fn closed_z2(nu: u32) -> RationalZ0 {
        let n = nu as i128;
        let pows: Vec<i128> = (0..=8).map(|e| n.pow(e)).collect();
        let c0 = 2 * pows[6] - 14 * pows[7] + 24 * pows[8];
        let c1 = -12 * pows[3] + 148 * pows[4] - 546 * pows[5] + 758 * pows[6]
            - 252 * pows[7]
            - 96 * pows[8];
        let c2 = 264 * pows[2] - 1510 * pows[3] + 2551 * pows[4] - 500 * pows[5]
            - 1789 * pows[6]
            + 840 * pows[7]
            + 144 * pows[8];
        let c3 = -536 * pows[1] + 1396 * pows[2] + 912 * pows[3] - 4596 * pows[4]
            + 2492 * pows[5]
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

    #[test]
    fn second_row_matches_closed_form() {
        for nu in [2u32, 3] {
            let (rows, _) = solve_rows_to(nu, 2).unwrap();
            assert_eq!(rows[1].to_rational(), closed_z2(nu), "nu={nu}");
            assert_eq!(rows[1].pole_order(), 9);
        }
    }

    #[test]
    fn second_row_top_entries() {
        // a_5^(2) across nu
        let expect = [r(196, 9), r(1323, 8), r(6272, 9), r(153125, 72)];
        for (i, nu) in (2..=5u32).enumerate() {
            let (rows, _) = solve_rows_to(nu, 2).unwrap();
            assert_eq!(rows[1].top_coefficient(), &expect[i], "nu={nu}");
        }
    }

    #[test]
    fn third_row_frozen_values() {
        let (rows, _) = solve_rows_to(2, 3).unwrap();
        let expect: Vec<Rat> = [
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
        .collect();
        assert_eq!(rows[2].coeffs(), &expect[..]);
    }

    #[test]
    fn planar_counts_table() {
        let mut tower = DerivedRows::base_z0(2);
        let counts = two_legged_counts(2, 6, &mut tower, None).unwrap();
        let expect: Vec<BigInt> = [
            1i64,
            12,
            576,
            51840,
            6967296,
            1254113280,
            283787919360,
        ]
        .iter()
        .map(|&v| BigInt::from(v))
        .collect();
        assert_eq!(counts, expect);
    }

    #[test]
    fn higher_genus_count_tables() {
        let (rows, mut towers) = solve_rows_to(2, 2).unwrap();
        let g1 = two_legged_counts(2, 6, &mut towers[1], Some(&rows[0])).unwrap();
        assert_eq!(
            g1,
            [0i64, 0, 192, 62208, 19243008, 6469632000, 2416497131520]
                .iter()
                .map(|&v| BigInt::from(v))
                .collect::<Vec<_>>()
        );
        let g2 = two_legged_counts(2, 6, &mut towers[2], Some(&rows[1])).unwrap();
        assert_eq!(
            g2,
            [0i64, 0, 0, 0, 3870720, 4598415360, 3912833433600]
                .iter()
                .map(|&v| BigInt::from(v))
                .collect::<Vec<_>>()
        );
        let (rows3, mut towers3) = solve_rows_to(3, 2).unwrap();
        let h1 = two_legged_counts(3, 5, &mut towers3[1], Some(&rows3[0])).unwrap();
        assert_eq!(
            h1,
            [0i64, 30, 79200, 171072000, 404974080000, 1087318080000000]
                .iter()
                .map(|&v| BigInt::from(v))
                .collect::<Vec<_>>()
        );
        let h2 = two_legged_counts(3, 5, &mut towers3[2], Some(&rows3[1])).unwrap();
        assert_eq!(
            h2,
            [0i64, 0, 21240, 355492800, 2543591808000, 14738910336000000]
                .iter()
                .map(|&v| BigInt::from(v))
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn row_validation_errors() {
        assert!(matches!(
            ZRow::new(2, 1, vec![r(1, 1), r(-1, 1), Rat::zero()]),
            Err(Error::PoleOrder { expected: 4, found: 3 })
        ));
        assert!(matches!(
            ZRow::new(2, 1, vec![r(1, 1), r(1, 1), r(1, 1)]),
            Err(Error::RowSum { g: 1, .. })
        ));
        assert!(matches!(
            ZRow::new(2, 1, vec![r(1, 1), r(1, 1), r(-2, 1)]),
            Err(Error::TopCoefficient { g: 1, .. })
        ));
    }

    #[test]
    fn forcing_shape_genus_one() {
        // hand-assembled at nu=2: z0^3 (32/u^3 - 80/u^4 + 48/u^5)
        let mut towers = vec![DerivedRows::base_z0(2)];
        let f = forcing(2, 1, &mut towers).unwrap();
        assert_eq!(f.z0_power, 3);
        assert_eq!(
            f.laurent,
            LaurentU::from_coeffs(-5, vec![r(48, 1), r(-80, 1), r(32, 1)])
        );
    }
}
