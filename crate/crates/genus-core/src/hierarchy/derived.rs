//! Laurent rows of the s-derivatives of a z-row. Row j encodes
//!   z_k^(j)(s) = c_nu^j z0^(j nu + 1) sum_l a_l^(k,j) / u^(2k+l+j),
//! and differentiating once more acts row-locally:
//!   a_l^(k,j) = ((j-1) nu - (2k+l+j-2)) a_l^(k,j-1)
//!             + nu (2k+l+j-2) a_{l-1}^(k,j-1).

use crate::exactnum::Rat;

pub struct DerivedRows {
    nu: u32,
    k: u32,
    rows: Vec<Vec<Rat>>,
}

impl DerivedRows {
    /// Genus-k tower over the base row a^(k,0); genus 0 uses base [1]
    /// (z_0 is z0 itself).
    pub fn new(nu: u32, k: u32, base: Vec<Rat>) -> Self {
        assert!(
            (k == 0 && base.len() == 1) || base.len() == 3 * k as usize,
            "base row of genus {k} must have {} entries",
            if k == 0 { 1 } else { 3 * k as usize }
        );
        DerivedRows {
            nu,
            k,
            rows: vec![base],
        }
    }

    pub fn base_z0(nu: u32) -> Self {
        DerivedRows::new(nu, 0, vec![Rat::one()])
    }

    pub fn genus(&self) -> u32 {
        self.k
    }

    /// a_l^(k,j) with out-of-range l reading as zero.
    pub(crate) fn entry(&self, j: usize, l: i64) -> Rat {
        if l < 0 || l as usize >= self.rows[j].len() {
            Rat::zero()
        } else {
            self.rows[j][l as usize].clone()
        }
    }

    pub fn extend_to(&mut self, jmax: u32) {
        let nu = self.nu as i64;
        let k = self.k as i64;
        while self.rows.len() <= jmax as usize {
            let j = self.rows.len() as i64;
            // row j has entries l = 0 .. 3k+j-1, except the genus-0 base
            let len = (3 * k + j).max(1) as usize;
            let mut next = vec![Rat::zero(); len];
            for (l, slot) in next.iter_mut().enumerate() {
                let shift = 2 * k + l as i64 + j - 2;
                let keep = Rat::from((j - 1) * nu - shift);
                let carry = Rat::from(nu * shift);
                *slot = &(&self.entry(j as usize - 1, l as i64) * &keep)
                    + &(&self.entry(j as usize - 1, l as i64 - 1) * &carry);
            }
            self.rows.push(next);
        }
    }

    /// Row j; extend_to(j) must have been called.
    pub fn row(&self, j: u32) -> &[Rat] {
        &self.rows[j as usize]
    }

    pub fn row_sum(&self, j: u32) -> Rat {
        self.rows[j as usize].iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolics::{compose_rational, z0_series, LaurentU, RationalZ0};

    #[test]
    fn z0_tower_low_rows() {
        let mut d = DerivedRows::base_z0(2);
        d.extend_to(3);
        assert_eq!(d.row(0), &[Rat::one()]);
        assert_eq!(d.row(1), &[Rat::one()]);
        assert_eq!(d.row(2), &[Rat::from(2), Rat::from(2)]);
        // third derivative row for nu=2: differentiating once more
        assert_eq!(d.row(3), &[Rat::from(6), Rat::from(12), Rat::from(12)]);
        // c^3 * rowsum = 3! [s^3] z0 = 51840
        assert_eq!(d.row_sum(3), Rat::from(30));
    }

    #[test]
    fn rows_match_symbolic_differentiation() {
        // genus-1 row for nu, checked against derivative_s of the rational form
        for nu in [2u32, 3] {
            let n = nu as i64;
            let base = vec![
                Rat::ratio(n * (n + 2), 12),
                Rat::ratio(-n * (3 * n + 2), 12),
                Rat::ratio(n * n, 6),
            ];
            let mut d = DerivedRows::new(nu, 1, base.clone());
            d.extend_to(2);
            let c = Rat::from_bigint(crate::combinatorics::c_nu(nu).unwrap());
            let z1 = RationalZ0::from_z0_laurent(
                nu,
                1,
                &LaurentU::from_coeffs(-4, base.iter().rev().cloned().collect()),
            );
            for j in 1..=2u32 {
                // encoded: c^j z0^(j nu + 1) sum_l a_l / u^(2+l+j)
                let row = d.row(j);
                let enc = RationalZ0::from_z0_laurent(
                    nu,
                    j as i64 * n + 1,
                    &LaurentU::from_coeffs(
                        -(2 + row.len() as i64 - 1 + j as i64),
                        row.iter().rev().cloned().collect(),
                    ),
                )
                .scale(&c.pow(j as i64).unwrap());
                let direct = if j == 1 {
                    z1.derivative_s()
                } else {
                    z1.derivative_s().derivative_s()
                };
                assert_eq!(enc, direct, "nu={nu} j={j}");
            }
        }
    }

    #[test]
    fn genus0_row_sums_give_planar_counts() {
        // c^j * rowsum(j) = j! [s^j] z0
        for nu in [2u32, 4] {
            let mut d = DerivedRows::base_z0(nu);
            d.extend_to(6);
            let c = Rat::from_bigint(crate::combinatorics::c_nu(nu).unwrap());
            let z = z0_series(nu, 6).unwrap();
            let mut fact = Rat::one();
            for j in 0..=6u32 {
                if j > 0 {
                    fact = fact * Rat::from(j as i64);
                }
                let lhs = c.pow(j as i64).unwrap() * d.row_sum(j);
                assert_eq!(lhs, &fact * z.coeff(j as usize), "nu={nu} j={j}");
            }
        }
    }

    #[test]
    fn series_route_matches_for_genus0_rows() {
        // row encoding vs compose_rational for each derivative of z0
        let nu = 3u32;
        let mut d = DerivedRows::base_z0(nu);
        d.extend_to(4);
        let c = Rat::from_bigint(crate::combinatorics::c_nu(nu).unwrap());
        let m = 8usize;
        let mut expect = compose_rational(&RationalZ0::z0(nu), m + 4).unwrap();
        for j in 1..=4u32 {
            expect = expect.derivative_s();
            let row = d.row(j);
            let enc = RationalZ0::from_z0_laurent(
                nu,
                j as i64 * nu as i64 + 1,
                &LaurentU::from_coeffs(
                    -(row.len() as i64 - 1 + j as i64),
                    row.iter().rev().cloned().collect(),
                ),
            )
            .scale(&c.pow(j as i64).unwrap());
            let got = compose_rational(&enc, m).unwrap();
            assert_eq!(got, expect.truncate(m), "j={j}");
        }
    }
}
