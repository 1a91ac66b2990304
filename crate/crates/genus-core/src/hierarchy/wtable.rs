//! Transfer tables for pushing d^n/dw^n through w^c h(w^(nu-1) s) at w = 1:
//!   d^n/dw^n [w^c h(w^(nu-1) s)] |_{w=1} = sum_j (nu-1)^j T_j^(n,c) s^j h^(j)(s).

use crate::exactnum::Rat;

/// c (c-1) ... (c-n+1).
pub fn falling_factorial(c: i64, n: u32) -> Rat {
    let mut acc = Rat::one();
    for k in 0..n as i64 {
        acc = acc * Rat::from(c - k);
    }
    acc
}

/// T_j^(n,c) for j = 0..=n, by the row recurrence
/// T_j^(n) = T_{j-1}^(n-1) + (c + (nu-1) j - (n-1)) T_j^(n-1).
pub fn w_table(nu: u32, n: u32, c: i64) -> Vec<Rat> {
    let step = nu as i64 - 1;
    let mut row = vec![Rat::one()];
    for m in 1..=n {
        let mut next = vec![Rat::zero(); m as usize + 1];
        for j in 0..=m as usize {
            let mut v = Rat::zero();
            if j >= 1 {
                v += &row[j - 1];
            }
            if j < row.len() {
                let scale = Rat::from(c + step * j as i64 - (m as i64 - 1));
                v += &(&row[j] * &scale);
            }
            next[j] = v;
        }
        row = next;
    }
    debug_assert_eq!(row[0], falling_factorial(c, n));
    debug_assert!(row[n as usize].is_one());
    row
}

/// P_j^(n,k) = T_j^(n, 1-2k): the table at the exponent carried by the k-th
/// z-row factor.
pub fn p_table(nu: u32, n: u32, k: u32) -> Vec<Rat> {
    w_table(nu, n, 1 - 2 * k as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolics::PolyQ;

    #[test]
    fn edges_and_known_zeros() {
        let t = w_table(3, 4, 5);
        assert_eq!(t[0], falling_factorial(5, 4)); // 5*4*3*2
        assert_eq!(t[0], Rat::from(120));
        assert!(t[4].is_one());
        // the exponents that kill the undifferentiated energy terms
        for g in 1..=4u32 {
            assert!(w_table(2, 2 * g, 0)[0].is_zero());
            assert!(w_table(2, 2 * g + 2, 2)[0].is_zero());
        }
    }

    #[test]
    fn chain_rule_identity() {
        // h(s) = 1 + 2s + 3s^3 + s^5; both sides as polynomials in s
        let h = PolyQ::from_coeffs(
            [1i64, 2, 0, 3, 0, 1].iter().map(|&c| Rat::from(c)).collect(),
        );
        for (nu, c, n) in [(3u32, 3i64, 4u32), (2, -2, 3), (4, 0, 5), (3, -1, 6)] {
            // direct: w^c h(w^(nu-1) s) = sum_k a_k s^k w^(c+(nu-1)k)
            let mut direct = PolyQ::zero();
            for (k, a) in h.coeffs().iter().enumerate() {
                let w_exp = c + (nu as i64 - 1) * k as i64;
                let term = PolyQ::from_coeffs(vec![a * &falling_factorial(w_exp, n)]);
                direct = direct.add(&term.mul(&PolyQ::x().pow(k)));
            }
            // table route: sum_j (nu-1)^j T_j s^j h^(j)(s)
            let t = w_table(nu, n, c);
            let mut table = PolyQ::zero();
            let mut hj = h.clone();
            let mut sj = PolyQ::one();
            let mut pw = Rat::one();
            for tj in t.iter() {
                table = table.add(&hj.mul(&sj).scale(&(tj * &pw)));
                hj = hj.derivative();
                sj = sj.mul(&PolyQ::x());
                pw = pw * Rat::from(nu as i64 - 1);
            }
            assert_eq!(direct, table, "nu={nu} c={c} n={n}");
        }
    }
}
