//! Per-weight facade that caches everything solved so far: z-rows, derivative
//! towers, energies. Work is strictly incremental, so asking for genus 4 after
//! genus 2 only pays for genera 3 and 4.

use crate::energy::{e0, e1, kappa, solve_eg, EnergySolution};
use crate::hierarchy::{solve_zg, two_legged_counts, DerivedRows, ZRow};
use crate::symbolics::LogExtendedZ0;
use crate::{Error, Result};
use num_bigint::BigInt;

pub const DEFAULT_GENUS_CAP: u32 = 6;

pub struct Engine {
    nu: u32,
    genus_cap: u32,
    towers: Vec<DerivedRows>,
    rows: Vec<ZRow>,
    energies: Vec<LogExtendedZ0>,
    solutions: Vec<EnergySolution>,
}

impl Engine {
    pub fn new(nu: u32) -> Result<Self> {
        Engine::with_genus_cap(nu, DEFAULT_GENUS_CAP)
    }

    pub fn with_genus_cap(nu: u32, genus_cap: u32) -> Result<Self> {
        if nu < 2 {
            return Err(Error::BadNu(nu));
        }
        Ok(Engine {
            nu,
            genus_cap,
            towers: vec![DerivedRows::base_z0(nu)],
            rows: Vec::new(),
            energies: vec![e0(nu)?, e1(nu)?],
            solutions: Vec::new(),
        })
    }

    pub fn nu(&self) -> u32 {
        self.nu
    }

    pub fn genus_cap(&self) -> u32 {
        self.genus_cap
    }

    fn check_cap(&self, g: u32) -> Result<()> {
        if g > self.genus_cap {
            return Err(Error::GenusCap {
                g,
                cap: self.genus_cap,
            });
        }
        Ok(())
    }

    fn ensure_rows(&mut self, g: u32) -> Result<()> {
        self.check_cap(g)?;
        for gg in self.rows.len() as u32 + 1..=g {
            let row = solve_zg(self.nu, gg, &mut self.towers)?;
            self.towers.push(row.to_tower());
            self.rows.push(row);
        }
        Ok(())
    }

    fn ensure_energies(&mut self, g: u32) -> Result<()> {
        self.check_cap(g)?;
        self.ensure_rows(g)?;
        for gg in self.energies.len() as u32..=g {
            let sol = solve_eg(self.nu, gg, &self.energies, &self.rows)?;
            self.energies
                .push(LogExtendedZ0::from_rational(sol.form.clone()));
            self.solutions.push(sol);
        }
        Ok(())
    }

    /// Partial-fraction row of z_g, g >= 1.
    pub fn z_row(&mut self, g: u32) -> Result<&ZRow> {
        if g == 0 {
            return Err(Error::BadArgument(
                "genus 0 is z0 itself, not a pole row".into(),
            ));
        }
        self.ensure_rows(g)?;
        Ok(&self.rows[g as usize - 1])
    }

    /// e_g; genus 0 and 1 carry their logarithms.
    pub fn energy(&mut self, g: u32) -> Result<&LogExtendedZ0> {
        self.ensure_energies(g)?;
        Ok(&self.energies[g as usize])
    }

    /// Solved shape of e_g for g >= 2: the rational form plus its observed
    /// pole order and numerator degree.
    pub fn energy_solution(&mut self, g: u32) -> Result<&EnergySolution> {
        if g < 2 {
            return Err(Error::BadArgument(
                "genus 0 and 1 energies are closed forms, not solved shapes".into(),
            ));
        }
        self.ensure_energies(g)?;
        Ok(&self.solutions[g as usize - 2])
    }

    /// Two-legged map counts at this genus for j = 0..=jmax, cross-checked
    /// between the derivative-row recursion and the series expansion.
    pub fn counts(&mut self, g: u32, jmax: u32) -> Result<Vec<BigInt>> {
        self.ensure_rows(g)?;
        let row = if g == 0 {
            None
        } else {
            Some(&self.rows[g as usize - 1])
        };
        two_legged_counts(self.nu, jmax, &mut self.towers[g as usize], row)
    }

    /// kappa_g(j) = j! [s^j] e_g for j = 0..=jmax.
    pub fn kappa(&mut self, g: u32, jmax: u32) -> Result<Vec<BigInt>> {
        self.ensure_energies(g)?;
        kappa(g, jmax, &self.energies[g as usize])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cap_is_enforced() {
        let mut engine = Engine::new(2).unwrap();
        assert!(matches!(
            engine.z_row(7),
            Err(Error::GenusCap { g: 7, cap: 6 })
        ));
        let mut tight = Engine::with_genus_cap(2, 1).unwrap();
        assert!(tight.z_row(1).is_ok());
        assert!(matches!(
            tight.energy(2),
            Err(Error::GenusCap { g: 2, cap: 1 })
        ));
    }

    #[test]
    fn incremental_solves_agree_with_batch() {
        let mut engine = Engine::new(2).unwrap();
        let first = engine.z_row(1).unwrap().coeffs().to_vec();
        let (rows, _) = crate::hierarchy::solve_rows_to(2, 3).unwrap();
        assert_eq!(first, rows[0].coeffs());
        assert_eq!(engine.z_row(3).unwrap().coeffs(), rows[2].coeffs());
        // repeated access hits the cache and returns the same data
        assert_eq!(engine.z_row(3).unwrap().coeffs(), rows[2].coeffs());
    }

    #[test]
    fn energies_report_their_shape() {
        let mut engine = Engine::new(2).unwrap();
        assert!(engine.energy(0).unwrap().has_logs());
        assert!(engine.energy(1).unwrap().has_logs());
        let sol = engine.energy_solution(2).unwrap();
        assert_eq!((sol.o, sol.d), (5, 4));
        assert!(engine.energy_solution(1).is_err());
    }

    #[test]
    fn counts_and_kappa_route_through_cache() {
        let mut engine = Engine::new(2).unwrap();
        let planar = engine.counts(0, 4).unwrap();
        assert_eq!(
            planar,
            [1i64, 12, 576, 51840, 6967296]
                .iter()
                .map(|&v| BigInt::from(v))
                .collect::<Vec<_>>()
        );
        let k1 = engine.kappa(1, 3).unwrap();
        assert_eq!(
            k1,
            [0i64, 1, 60, 6336]
                .iter()
                .map(|&v| BigInt::from(v))
                .collect::<Vec<_>>()
        );
    }
}
