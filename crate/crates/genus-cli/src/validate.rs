//! Self-check registry: every module contributes checks with stable ids,
//! reported as one table row each. A check either passes with a short
//! summary or fails with the first witness it found.

use crate::commands::CliError;
use crate::fixtures;
use crate::render::Document;
use genus_core::combinatorics::{
    c_nu, d_coeff_symmetric, d_coeff_walks, monomial_symmetric, partitions, DownturnWalk,
    Partition,
};
use genus_core::energy::drivers;
use genus_core::engine::Engine;
use genus_core::exactnum::{
    binomial, gamma_half_integer, Rat, SqrtPiScaled,
};
use genus_core::hierarchy::{factor_w_derivative, solve_rows_to, DerivedRows, ZRow};
use genus_core::painleve::{
    alpha_sequence, divergence_ratios, hop_check, pinning_constants, tg_sequence,
};
use genus_core::symbolics::{
    compose_rational, z0_series, LogExtendedZ0, PowerSeriesS, RationalZ0,
};
use genus_numerics::{
    convergence_study, recurrence_stieltjes, string_forward, two_path_max_deviation, z0_eval,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rug::ops::Pow;
use rug::Float;
use serde_json::json;
use std::collections::HashMap;

type Check = Result<String, String>;

struct Ctx {
    nu_max: u32,
    gmax: u32,
    prec: u32,
    rows: HashMap<u32, Vec<ZRow>>,
}

impl Ctx {
    fn rows(&mut self, nu: u32, depth: u32) -> Result<&[ZRow], String> {
        let have = self.rows.get(&nu).map_or(0, |r| r.len());
        if have < depth as usize {
            let (rows, _) = solve_rows_to(nu, depth).map_err(|e| e.to_string())?;
            self.rows.insert(nu, rows);
        }
        Ok(self.rows.get(&nu).unwrap())
    }
}

fn rat_sample(rng: &mut ChaCha20Rng) -> Rat {
    Rat::ratio(rng.gen_range(-60..=60), rng.gen_range(1..=24))
}

fn check_field_axioms(_ctx: &mut Ctx) -> Check {
    let mut rng = ChaCha20Rng::seed_from_u64(0x67656e31);
    for trial in 0..200 {
        let (a, b, c) = (rat_sample(&mut rng), rat_sample(&mut rng), rat_sample(&mut rng));
        let assoc = (a.clone() + b.clone()) + c.clone() == a.clone() + (b.clone() + c.clone());
        let distrib =
            a.clone() * (b.clone() + c.clone()) == a.clone() * b.clone() + a.clone() * c.clone();
        let comm = a.clone() * b.clone() == b.clone() * a.clone();
        if !(assoc && distrib && comm) {
            return Err(format!("rational axiom broke on trial {trial}"));
        }
        if !b.is_zero() {
            let inv = b.recip().map_err(|e| e.to_string())?;
            if b.clone() * inv != Rat::one() {
                return Err(format!("rational inverse broke on trial {trial}"));
            }
        }
    }
    let mut rng = ChaCha20Rng::seed_from_u64(0x67656e32);
    for trial in 0..200 {
        let q = |rng: &mut ChaCha20Rng| {
            genus_core::exactnum::QuadExt::sqrt6(rat_sample(rng), rat_sample(rng))
        };
        let (a, b, c) = (q(&mut rng), q(&mut rng), q(&mut rng));
        let ab_c = (&(&a * &b) * &c).clone();
        let a_bc = (&a * &(&b * &c)).clone();
        let left = &a * &(b.checked_add(&c).map_err(|e| e.to_string())?);
        let right = (&a * &b).checked_add(&(&a * &c)).map_err(|e| e.to_string())?;
        if ab_c != a_bc || left != right {
            return Err(format!("quadratic-field axiom broke on trial {trial}"));
        }
        if !b.is_zero() {
            let div = a.checked_div(&b).map_err(|e| e.to_string())?;
            if &div * &b != a {
                return Err(format!("quadratic-field division broke on trial {trial}"));
            }
        }
    }
    Ok("400 randomized triples over Q and Q(sqrt(6))".into())
}

fn check_quadext_norm(_ctx: &mut Ctx) -> Check {
    let mut rng = ChaCha20Rng::seed_from_u64(0x67656e33);
    for trial in 0..300 {
        let a = genus_core::exactnum::QuadExt::sqrt6(rat_sample(&mut rng), rat_sample(&mut rng));
        let b = genus_core::exactnum::QuadExt::sqrt6(rat_sample(&mut rng), rat_sample(&mut rng));
        if (&a * &b).norm() != a.norm() * b.norm() {
            return Err(format!("norm multiplicativity broke on trial {trial}"));
        }
        if a.conj().norm() != a.norm() {
            return Err(format!("conjugation changed a norm on trial {trial}"));
        }
    }
    Ok("norm(ab) = norm(a) norm(b) on 300 random pairs".into())
}

fn check_sqrtpi_bookkeeping(_ctx: &mut Ctx) -> Check {
    let half = |p: i64, q: i64, e: i64| SqrtPiScaled::new(Rat::ratio(p, q), e);
    let (a, b, c) = (half(3, 7, 1), half(-5, 2, -2), half(11, 4, 3));
    if a.mul(&b).mul(&c) != a.mul(&b.mul(&c)) {
        return Err("pi-power multiplication is not associative".into());
    }
    if a.mul(&b).pi_half_exponent() != -1 {
        return Err("pi-power exponents do not add".into());
    }
    if a.checked_add(&b).is_ok() {
        return Err("addition across different pi powers should be rejected".into());
    }
    let gammas = [
        (Rat::ratio(1, 2), half(1, 1, 1)),
        (Rat::ratio(3, 2), half(1, 2, 1)),
        (Rat::ratio(5, 2), half(3, 4, 1)),
        (Rat::from(4), SqrtPiScaled::rational(Rat::from(6))),
    ];
    for (arg, expect) in gammas {
        let got = gamma_half_integer(&arg).map_err(|e| e.to_string())?;
        if got != expect {
            return Err(format!("gamma({arg}) came out as {got}, expected {expect}"));
        }
    }
    Ok("exponent ledger and half-integer gamma fixtures".into())
}

fn sample_rationals(ctx: &mut Ctx) -> Result<Vec<RationalZ0>, String> {
    let rows = ctx.rows(2, 2)?;
    let z1 = rows[0].to_rational();
    let z2 = rows[1].to_rational();
    Ok(vec![
        RationalZ0::z0(2),
        z1.clone(),
        z2.clone(),
        fixtures::e2_closed(2),
        z1.mul(&z2),
        z1.scale(&Rat::ratio(-3, 7)),
    ])
}

fn check_canonical_idempotence(ctx: &mut Ctx) -> Check {
    let samples = sample_rationals(ctx)?;
    let zero = RationalZ0::zero(2);
    let one = RationalZ0::from_poly(2, genus_core::symbolics::PolyQ::one());
    for (i, f) in samples.iter().enumerate() {
        if &f.add(&zero) != f || &f.mul(&one) != f {
            return Err(format!("identity elements moved sample {i}"));
        }
        if !f.sub(f).is_zero() {
            return Err(format!("f - f is not the canonical zero for sample {i}"));
        }
        if &f.add(f).scale(&Rat::ratio(1, 2)) != f {
            return Err(format!("rescaling (f+f)/2 left canonical form for sample {i}"));
        }
    }
    Ok("identity, cancellation and rescale fixpoints on 6 forms".into())
}

fn check_compose_ring_map(ctx: &mut Ctx) -> Check {
    let samples = sample_rationals(ctx)?;
    let order = 12usize;
    for (i, f) in samples.iter().enumerate() {
        for (j, g) in samples.iter().enumerate() {
            let fs = compose_rational(f, order).map_err(|e| e.to_string())?;
            let gs = compose_rational(g, order).map_err(|e| e.to_string())?;
            let sum = compose_rational(&f.add(g), order).map_err(|e| e.to_string())?;
            let prod = compose_rational(&f.mul(g), order).map_err(|e| e.to_string())?;
            if sum != fs.add(&gs) {
                return Err(format!("expansion is not additive on samples {i},{j}"));
            }
            if prod != fs.mul(&gs) {
                return Err(format!("expansion is not multiplicative on samples {i},{j}"));
            }
        }
    }
    Ok(format!("ring map on {}^2 sample pairs to order {order}", samples.len()))
}

fn check_derivative_commutes(ctx: &mut Ctx) -> Check {
    let base = sample_rationals(ctx)?;
    let mut samples = Vec::new();
    for f in &base {
        samples.push(f.clone());
        samples.push(f.scale(&Rat::ratio(5, 3)));
        samples.push(f.mul_s());
        samples.push(f.derivative_s());
    }
    let order = 12usize;
    for (i, f) in samples.iter().take(20).enumerate() {
        let direct = compose_rational(&f.derivative_s(), order - 1).map_err(|e| e.to_string())?;
        let expanded = compose_rational(f, order)
            .map_err(|e| e.to_string())?
            .derivative_s();
        if direct != expanded {
            return Err(format!("d/ds does not commute with expansion on sample {i}"));
        }
    }
    Ok("d/ds against expansion on 20 forms to order 12".into())
}

fn check_z0_series_inverts(_ctx: &mut Ctx) -> Check {
    let order = 20usize;
    for nu in 2..=5u32 {
        let z = z0_series(nu, order).map_err(|e| e.to_string())?;
        let c = Rat::from_bigint(c_nu(nu).map_err(|e| e.to_string())?);
        let mut s_coeffs = vec![Rat::zero(); order + 1];
        s_coeffs[1] = Rat::one();
        let s = PowerSeriesS::from_coeffs(s_coeffs);
        let residual = PowerSeriesS::constant(Rat::one(), order)
            .sub(&z)
            .add(&s.mul(&z.pow(nu as usize)).scale(&c));
        if let Some(j) = residual.coeffs().iter().position(|r| !r.is_zero()) {
            return Err(format!("defining relation fails at order {j} for nu={nu}"));
        }
    }
    Ok("1 - z + c s z^nu vanishes to order 20, nu = 2..5".into())
}

fn check_d_route_agreement(ctx: &mut Ctx) -> Check {
    let nu_cap = ctx.nu_max.min(4);
    let mut checked = 0usize;
    for nu in 2..=nu_cap {
        let max_len = (nu + 1) as usize;
        for n in (1..=9u32).step_by(2) {
            for lambda in partitions(n, max_len) {
                let walks = d_coeff_walks(nu, &lambda).map_err(|e| e.to_string())?;
                let symm = d_coeff_symmetric(nu, &lambda).map_err(|e| e.to_string())?;
                if walks != symm {
                    return Err(format!(
                        "routes disagree at nu={nu}, lambda={lambda}: {walks} vs {symm}"
                    ));
                }
                checked += 1;
            }
        }
    }
    for nu in 2..=ctx.nu_max.min(5) {
        let single = Partition::new(vec![3]).map_err(|e| e.to_string())?;
        let expect = Rat::from(nu as i64) * Rat::from_bigint(c_nu(nu).map_err(|e| e.to_string())?);
        let got = d_coeff_walks(nu, &single).map_err(|e| e.to_string())?;
        if Rat::from_bigint(got.clone()) != expect {
            return Err(format!("d at [3] is {got}, expected {expect} for nu={nu}"));
        }
    }
    Ok(format!("two routes agree on {checked} partitions, nu <= {nu_cap}"))
}

fn check_d_values_even(ctx: &mut Ctx) -> Check {
    let nu_cap = ctx.nu_max.min(4);
    for nu in 2..=nu_cap {
        let max_len = (nu + 1) as usize;
        for n in (1..=9u32).step_by(2) {
            for lambda in partitions(n, max_len) {
                let d = d_coeff_walks(nu, &lambda).map_err(|e| e.to_string())?;
                if &d % 2 != num_bigint::BigInt::from(0) {
                    return Err(format!("odd value {d} at nu={nu}, lambda={lambda}"));
                }
            }
        }
    }
    Ok(format!("every coefficient even, nu <= {nu_cap}, |lambda| <= 9"))
}

fn check_walk_census(ctx: &mut Ctx) -> Check {
    for nu in 2..=ctx.nu_max.min(6) {
        let walks = DownturnWalk::enumerate(nu).map_err(|e| e.to_string())?;
        let expect = binomial(2 * nu as u64, nu as u64 + 1);
        if num_bigint::BigInt::from(walks.len()) != expect {
            return Err(format!(
                "nu={nu} has {} walks, expected {expect}",
                walks.len()
            ));
        }
    }
    Ok(format!("census matches binomial(2nu, nu+1), nu <= {}", ctx.nu_max.min(6)))
}

fn check_monomial_symmetry(_ctx: &mut Ctx) -> Check {
    let mut rng = ChaCha20Rng::seed_from_u64(0x67656e34);
    for trial in 0..40 {
        let len = rng.gen_range(3..=6usize);
        let mut args: Vec<Rat> = (0..len).map(|_| rat_sample(&mut rng)).collect();
        let n = rng.gen_range(1..=7u32);
        let lambda_pool = partitions(n, len);
        let lambda = &lambda_pool[rng.gen_range(0..lambda_pool.len())];
        let before = monomial_symmetric(lambda, &args).map_err(|e| e.to_string())?;
        for _ in 0..4 {
            let i = rng.gen_range(0..len);
            let j = rng.gen_range(0..len);
            args.swap(i, j);
        }
        let after = monomial_symmetric(lambda, &args).map_err(|e| e.to_string())?;
        if before != after {
            return Err(format!("permutation changed the value on trial {trial}"));
        }
    }
    Ok("permutation invariance on 40 random evaluations".into())
}

fn check_vanishing_lemma(ctx: &mut Ctx) -> Check {
    for nu in [2u32, 3] {
        let rows = ctx.rows(nu, 4)?.to_vec();
        let mut towers = vec![DerivedRows::base_z0(nu)];
        towers.extend(rows.iter().map(|r| r.to_tower()));
        for k in 0..=4u32 {
            for n in 0..=9u32 {
                factor_w_derivative(nu, k, n, &mut towers[k as usize])
                    .map_err(|e| format!("nu={nu}, k={k}, n={n}: {e}"))?;
            }
        }
    }
    Ok("pole cancellations hold for k <= 4, n <= 9, nu in {2,3}".into())
}

fn check_row_sums_vanish(ctx: &mut Ctx) -> Check {
    let (nu_max, gmax) = (ctx.nu_max, ctx.gmax);
    for nu in 2..=nu_max {
        let rows = ctx.rows(nu, gmax)?;
        for row in rows {
            let total: Rat = row.coeffs().iter().cloned().fold(Rat::zero(), |a, b| a + b);
            if !total.is_zero() {
                return Err(format!(
                    "coefficients of genus {} sum to {total} at nu={nu}",
                    row.genus()
                ));
            }
        }
    }
    Ok(format!("rows sum to zero for g <= {gmax}, nu <= {nu_max}"))
}

fn check_top_positive(ctx: &mut Ctx) -> Check {
    let (nu_max, gmax) = (ctx.nu_max, ctx.gmax);
    for nu in 2..=nu_max {
        let rows = ctx.rows(nu, gmax)?;
        for row in rows {
            if row.top_coefficient().is_negative() || row.top_coefficient().is_zero() {
                return Err(format!(
                    "top coefficient {} at genus {}, nu={nu}",
                    row.top_coefficient(),
                    row.genus()
                ));
            }
        }
    }
    Ok(format!("deepest pole positive for g <= {gmax}, nu <= {nu_max}"))
}

fn check_z1_z2_closed_forms(ctx: &mut Ctx) -> Check {
    let nu_cap = ctx.nu_max.min(5);
    for nu in 2..=nu_cap {
        let rows = ctx.rows(nu, 2)?;
        if rows[0].coeffs() != &fixtures::z1_row(nu)[..] {
            return Err(format!("z1 row deviates from the closed form at nu={nu}"));
        }
        if rows[1].to_rational() != fixtures::z2_closed(nu) {
            return Err(format!("z2 deviates from the closed form at nu={nu}"));
        }
        if rows[1].pole_order() != 9 {
            return Err(format!("z2 pole order {} at nu={nu}", rows[1].pole_order()));
        }
    }
    Ok(format!("closed z1 and z2 reproduced for nu <= {nu_cap}"))
}

fn check_z3_structure(ctx: &mut Ctx) -> Check {
    let nu_cap = ctx.nu_max.min(5);
    for nu in 2..=nu_cap {
        let rows = ctx.rows(nu, 3)?;
        let row = &rows[2];
        if row.pole_order() != 14 {
            return Err(format!("z3 pole order {} at nu={nu}", row.pole_order()));
        }
        let rational = row.to_rational();
        let z0_shift = genus_core::symbolics::PolyQ::from_coeffs(vec![Rat::zero(), Rat::one()]);
        let at_one = genus_core::symbolics::PolyQ::from_coeffs(vec![Rat::ratio(-1, 1), Rat::one()]);
        let reduced = rational
            .numerator()
            .div_exact(&z0_shift, "z3 numerator over z0")
            .and_then(|p| p.div_exact(&at_one, "z3 numerator over z0-1"))
            .map_err(|e| format!("nu={nu}: {e}"))?;
        if reduced.degree() != Some(7) {
            return Err(format!(
                "z3 reduced numerator degree {:?} at nu={nu}",
                reduced.degree()
            ));
        }
        if nu == 2 && row.coeffs() != &fixtures::quartic_z3_row()[..] {
            return Err("quartic z3 row deviates from the frozen values".into());
        }
    }
    Ok(format!("z0 (z0-1) x degree-7 over u^14 for nu <= {nu_cap}"))
}

fn check_count_oracle(ctx: &mut Ctx) -> Check {
    let gmax = ctx.gmax.min(3);
    for nu in [2u32, 3] {
        let mut engine = Engine::with_genus_cap(nu, gmax.max(2)).map_err(|e| e.to_string())?;
        for g in 0..=gmax {
            engine.counts(g, 10).map_err(|e| format!("nu={nu}, g={g}: {e}"))?;
        }
    }
    let mut engine = Engine::new(2).map_err(|e| e.to_string())?;
    let planar = engine.counts(0, 6).map_err(|e| e.to_string())?;
    if planar != fixtures::quartic_planar_counts() {
        return Err("quartic planar counts deviate from the frozen table".into());
    }
    Ok(format!(
        "recursion and series counts agree, g <= {gmax}, j <= 10, nu in {{2,3}}"
    ))
}

fn energies_to(engine: &mut Engine, g: u32) -> Result<Vec<LogExtendedZ0>, String> {
    (0..=g)
        .map(|m| {
            engine
                .energy(m)
                .map(|e| e.clone())
                .map_err(|e| e.to_string())
        })
        .collect()
}

fn check_low_genus_energies(ctx: &mut Ctx) -> Check {
    let nu_cap = ctx.nu_max.min(5);
    for nu in 2..=nu_cap {
        let mut engine = Engine::new(nu).map_err(|e| e.to_string())?;
        let e0 = engine.energy(0).map_err(|e| e.to_string())?;
        if e0 != &fixtures::e0_closed(nu) {
            return Err(format!("e0 deviates from the closed form at nu={nu}"));
        }
        let e1 = engine.energy(1).map_err(|e| e.to_string())?;
        if e1 != &fixtures::e1_closed(nu) {
            return Err(format!("e1 deviates from the closed form at nu={nu}"));
        }
        let e2 = engine.energy(2).map_err(|e| e.to_string())?;
        if e2.has_logs() || e2.rational != fixtures::e2_closed(nu) {
            return Err(format!("e2 deviates from the closed form at nu={nu}"));
        }
    }
    Ok(format!("e0, e1, e2 match their closed forms for nu <= {nu_cap}"))
}

fn check_energy_residual(ctx: &mut Ctx) -> Check {
    let (nu_max, gmax) = (ctx.nu_max, ctx.gmax);
    for nu in 2..=nu_max {
        let zrows = ctx.rows(nu, gmax)?.to_vec();
        let mut engine = Engine::with_genus_cap(nu, gmax.max(2)).map_err(|e| e.to_string())?;
        let step = Rat::from(nu as i64 - 1);
        for g in 2..=gmax {
            let energies = energies_to(&mut engine, g - 1)?;
            let e_g = engine.energy(g).map_err(|e| e.to_string())?.clone();
            if e_g.has_logs() {
                return Err(format!("e_{g} carries a log term at nu={nu}"));
            }
            let forcing = drivers(nu, g, &energies, &zrows).map_err(|e| e.to_string())?;
            let apply = |v: &RationalZ0, shift: i64| {
                v.derivative_s()
                    .mul_s()
                    .scale(&step)
                    .sub(&v.scale(&Rat::from(shift)))
            };
            let lhs = apply(&apply(&e_g.rational, 2 * g as i64 - 1), 2 * g as i64 - 2);
            if !lhs.sub(&forcing).is_zero() {
                return Err(format!("Euler-operator residual nonzero at nu={nu}, g={g}"));
            }
        }
    }
    Ok(format!("operator residual vanishes, 2 <= g <= {gmax}, nu <= {nu_max}"))
}

fn check_energy_pole_structure(ctx: &mut Ctx) -> Check {
    let (nu_max, gmax) = (ctx.nu_max, ctx.gmax);
    for nu in 2..=nu_max {
        let mut engine = Engine::with_genus_cap(nu, gmax.max(2)).map_err(|e| e.to_string())?;
        for g in 2..=gmax {
            let sol = engine.energy_solution(g).map_err(|e| e.to_string())?;
            if sol.form.z0_pole() != 0 {
                return Err(format!("e_{g} has a z0 pole at nu={nu}"));
            }
            if sol.o != 5 * (g - 1) {
                return Err(format!("e_{g} u-pole is {} at nu={nu}", sol.o));
            }
            if !sol.form.vanishes_at_one() {
                return Err(format!("e_{g} does not vanish at z0=1 for nu={nu}"));
            }
        }
    }
    Ok(format!("e_g = (z0-1) Q / u^(5g-5), 2 <= g <= {gmax}, nu <= {nu_max}"))
}

fn check_resonance_guard(ctx: &mut Ctx) -> Check {
    let gmax = ctx.gmax;
    let zrows = ctx.rows(2, gmax)?.to_vec();
    let mut engine = Engine::with_genus_cap(2, gmax.max(2)).map_err(|e| e.to_string())?;
    for g in 2..=gmax {
        let energies = energies_to(&mut engine, g - 1)?;
        let forcing = drivers(2, g, &energies, &zrows).map_err(|e| e.to_string())?;
        let series = compose_rational(&forcing, 3 * g as usize + 12).map_err(|e| e.to_string())?;
        for m in [2 * g as usize - 2, 2 * g as usize - 1] {
            if !series.coeff(m).is_zero() {
                return Err(format!("resonant driver coefficient at g={g}, m={m}"));
            }
        }
    }
    Ok(format!("resonant orders carry zero drivers, g <= {gmax}, nu = 2"))
}

fn check_kappa_counts(ctx: &mut Ctx) -> Check {
    let gmax = ctx.gmax.min(3);
    for nu in [2u32, 3] {
        let mut engine = Engine::with_genus_cap(nu, gmax.max(2)).map_err(|e| e.to_string())?;
        for g in 0..=gmax {
            engine.kappa(g, 8).map_err(|e| format!("nu={nu}, g={g}: {e}"))?;
        }
    }
    let mut engine = Engine::new(2).map_err(|e| e.to_string())?;
    for (g, table) in fixtures::quartic_kappa_tables().iter().enumerate() {
        let got = engine.kappa(g as u32, 5).map_err(|e| e.to_string())?;
        if &got != table {
            return Err(format!("quartic cumulants deviate at g={g}"));
        }
    }
    Ok(format!(
        "cumulants are nonnegative integers, g <= {gmax}, j <= 8, nu in {{2,3}}"
    ))
}

fn check_top_pole_recursion(ctx: &mut Ctx) -> Check {
    let depth = ctx.gmax.min(4);
    for nu in [2u32, 3] {
        let rows = ctx.rows(nu, depth)?;
        genus_core::painleve::check_top_pole_against_rows(rows).map_err(|e| e.to_string())?;
    }
    for (nu, expect) in fixtures::top_pole_openings() {
        let tops = genus_core::painleve::top_pole_sequence(nu, 2).map_err(|e| e.to_string())?;
        if tops[1] != expect {
            return Err(format!("genus-2 opening {} at nu={nu}", tops[1]));
        }
    }
    Ok(format!("recursion equals the solve, g <= {depth}, nu in {{2,3}}"))
}

fn check_quartic_hop(_ctx: &mut Ctx) -> Check {
    hop_check(8).map_err(|e| e.to_string())?;
    Ok("quartic top poles hop onto the alpha line, g <= 8".into())
}

fn check_alpha_rationality(_ctx: &mut Ctx) -> Check {
    let alphas = alpha_sequence(12);
    for (g, alpha) in alphas.iter().enumerate().skip(1) {
        let on_rational_line = alpha.radical_coeff().is_zero();
        let on_radical_line = alpha.rational().is_zero();
        if g % 2 == 0 && !on_rational_line {
            return Err(format!("alpha_{g} should be rational, got {alpha}"));
        }
        if g % 2 == 1 && !on_radical_line {
            return Err(format!("alpha_{g} should be a pure radical, got {alpha}"));
        }
    }
    Ok("alpha_g alternates rational / sqrt(6) lines, g <= 12".into())
}

fn check_tg_pi_exponents(_ctx: &mut Ctx) -> Check {
    let ts = tg_sequence(12).map_err(|e| e.to_string())?;
    for (g, t) in ts.iter().enumerate() {
        let expect = if g % 2 == 0 { -1 } else { 0 };
        if t.pi_half_exponent() != expect {
            return Err(format!(
                "t_{g} carries pi^({}/2), expected pi^({expect}/2)",
                t.pi_half_exponent()
            ));
        }
    }
    Ok("pi^(-1/2) on even g, rational on odd g, g <= 12".into())
}

fn check_gamma_pinning(_ctx: &mut Ctx) -> Check {
    let pins = pinning_constants().map_err(|e| e.to_string())?;
    if pins.gamma2.exponent_of(2) != Rat::ratio(3, 5) || pins.gamma2.exponent_of(3) != Rat::ratio(2, 5)
    {
        return Err("gamma2 monomial exponents are off".into());
    }
    if pins.gamma1.exponent_of(2) != Rat::ratio(-19, 5)
        || pins.gamma1.exponent_of(3) != Rat::ratio(-6, 5)
    {
        return Err("gamma1 monomial exponents are off".into());
    }
    if pins.gamma2.pow(&Rat::from(5)).to_rational() != Some(Rat::from(72)) {
        return Err("gamma2^5 is not 72".into());
    }
    Ok("gamma1 = (1/4) gamma2^-3 and gamma2^5 = 72".into())
}

fn check_ds_divergence(ctx: &mut Ctx) -> Check {
    for nu in 2..=ctx.nu_max.min(4) {
        let ratios = divergence_ratios(nu, 10).map_err(|e| e.to_string())?;
        for g in 2..=9u32 {
            let ratio = &ratios[g as usize - 1];
            if ratio < &Rat::from((g as i64) * (g as i64)) {
                return Err(format!("ratio {ratio} below g^2 at nu={nu}, g={g}"));
            }
        }
    }
    Ok(format!(
        "top-pole ratios grow at least like g^2, g <= 9, nu <= {}",
        ctx.nu_max.min(4)
    ))
}

fn check_density_two_path(ctx: &mut Ctx) -> Check {
    for nu in 2..=ctx.nu_max.min(3) {
        let dev = two_path_max_deviation(nu, ctx.prec).map_err(|e| e.to_string())?;
        if !(dev < 1e-20) {
            return Err(format!("route deviation {dev} at nu={nu}"));
        }
    }
    Ok(format!(
        "display and constructed densities agree to 1e-20, nu <= {}",
        ctx.nu_max.min(3)
    ))
}

fn check_ladder_routes(ctx: &mut Ctx) -> Check {
    let prec = ctx.prec;
    let t = Float::with_val(prec, 1) / 20u32;
    let moments = recurrence_stieltjes(2, &t, 16, 16, prec).map_err(|e| e.to_string())?;
    let string = string_forward(&t, 16, 16, prec).map_err(|e| e.to_string())?;
    let mut worst = Float::with_val(prec, 0);
    for n in 1..=16usize {
        let gap = Float::with_val(prec, &moments.b_squared[n] - &string.b_squared[n]).abs();
        if gap > worst {
            worst = gap;
        }
    }
    if !(worst < 1e-15) {
        return Err(format!("ladder routes diverge by {worst}"));
    }
    Ok("moment and string ladders agree to 1e-15 at N=16".into())
}

fn check_truncation_slopes(ctx: &mut Ctx) -> Check {
    let t = Float::with_val(ctx.prec, 1) / 20u32;
    let report =
        convergence_study(2, &t, &[8, 12, 16, 24], 0, ctx.prec).map_err(|e| e.to_string())?;
    for pair in report.errors.windows(2) {
        if !(pair[1] < pair[0]) {
            return Err("truncation error is not monotone in N".into());
        }
    }
    if (report.slope + 2.0).abs() > 0.3 {
        return Err(format!("planar truncation slope {:.3}", report.slope));
    }
    Ok(format!(
        "planar error decays with slope {:.2} across N = 8..24",
        report.slope
    ))
}

fn check_z0_branch(ctx: &mut Ctx) -> Check {
    let prec = ctx.prec;
    let work = prec + 64;
    let mut rng = ChaCha20Rng::seed_from_u64(0x67656e35);
    for _ in 0..40 {
        let raw: f64 = rng.gen_range(-1.0..(1.0 / 48.0));
        if raw == 0.0 {
            continue;
        }
        let s = Float::with_val(prec, raw);
        let got = z0_eval(2, &s, prec).map_err(|e| e.to_string())?;
        let s_work = Float::with_val(work, &s);
        let disc = (Float::with_val(work, 1) - Float::with_val(work, 48) * &s_work).sqrt();
        let closed = (Float::with_val(work, 1) - disc) / (Float::with_val(work, 24) * &s_work);
        let gap = Float::with_val(work, &got - &closed).abs();
        let tol = Float::with_val(work, 2u32).pow(-(prec as i32) + 10);
        if gap > tol {
            return Err(format!("branch value off by {gap} at s={raw}"));
        }
    }
    Ok("quartic branch matches the quadratic formula on 40 draws".into())
}

fn check_json_roundtrip(_ctx: &mut Ctx) -> Check {
    let doc = crate::commands::cmd_zg(2, 1, None).map_err(|e| match e {
        CliError::Usage(m) | CliError::Structural(m) => m,
    })?;
    let Document::Record(value) = doc else {
        return Err("zg should produce a record".into());
    };
    let first = serde_json::to_string(&value).map_err(|e| e.to_string())?;
    let reparsed: serde_json::Value = serde_json::from_str(&first).map_err(|e| e.to_string())?;
    let second = serde_json::to_string(&reparsed).map_err(|e| e.to_string())?;
    if first != second {
        return Err("serialized record did not survive a parse round trip".into());
    }
    Ok("emitted JSON reparses byte-identically".into())
}

const CHECKS: &[(&str, fn(&mut Ctx) -> Check)] = &[
    ("exactnum.field_axioms", check_field_axioms),
    ("exactnum.quadext_norm", check_quadext_norm),
    ("exactnum.sqrtpi_bookkeeping", check_sqrtpi_bookkeeping),
    ("symbolics.canonical_idempotence", check_canonical_idempotence),
    ("symbolics.compose_ring_map", check_compose_ring_map),
    ("symbolics.derivative_commutes", check_derivative_commutes),
    ("symbolics.z0_series_inverts", check_z0_series_inverts),
    ("combinatorics.d_route_agreement", check_d_route_agreement),
    ("combinatorics.d_values_even", check_d_values_even),
    ("combinatorics.walk_census", check_walk_census),
    ("combinatorics.monomial_symmetry", check_monomial_symmetry),
    ("hierarchy.vanishing_lemma", check_vanishing_lemma),
    ("hierarchy.row_sums_vanish", check_row_sums_vanish),
    ("hierarchy.top_positive", check_top_positive),
    ("hierarchy.low_genus_closed_forms", check_z1_z2_closed_forms),
    ("hierarchy.z3_structure", check_z3_structure),
    ("hierarchy.count_oracle", check_count_oracle),
    ("energy.low_genus_closed_forms", check_low_genus_energies),
    ("energy.operator_residual", check_energy_residual),
    ("energy.pole_structure", check_energy_pole_structure),
    ("energy.resonance_guard", check_resonance_guard),
    ("energy.kappa_counts", check_kappa_counts),
    ("painleve.top_pole_recursion", check_top_pole_recursion),
    ("painleve.quartic_hop", check_quartic_hop),
    ("painleve.alpha_rationality", check_alpha_rationality),
    ("painleve.tg_pi_exponents", check_tg_pi_exponents),
    ("painleve.gamma_pinning", check_gamma_pinning),
    ("painleve.ds_divergence", check_ds_divergence),
    ("numerics.density_two_path", check_density_two_path),
    ("numerics.ladder_routes", check_ladder_routes),
    ("numerics.truncation_slopes", check_truncation_slopes),
    ("numerics.z0_branch", check_z0_branch),
    ("cli.json_roundtrip", check_json_roundtrip),
];

/// Run every registered check; the registry itself is audited last (unique
/// ids, every module represented).
pub fn run(nu_max: u32, gmax: u32, prec: u32) -> (Document, bool) {
    let mut ctx = Ctx {
        nu_max,
        gmax,
        prec,
        rows: HashMap::new(),
    };
    let mut rows = Vec::new();
    let mut all_ok = true;
    for (id, check) in CHECKS {
        let (status, detail) = match check(&mut ctx) {
            Ok(d) => ("ok", d),
            Err(d) => {
                all_ok = false;
                ("FAIL", d)
            }
        };
        rows.push(vec![(*id).to_string(), status.to_string(), detail]);
    }
    let coverage = registry_coverage();
    if let Err(d) = &coverage {
        all_ok = false;
        rows.push(vec!["cli.registry_coverage".into(), "FAIL".into(), d.clone()]);
    } else {
        rows.push(vec![
            "cli.registry_coverage".into(),
            "ok".into(),
            coverage.unwrap(),
        ]);
    }
    let doc = Document::Table {
        meta: json!({
            "schema": "1",
            "command": "validate",
            "nu": nu_max,
            "gmax": gmax,
            "checks": rows.len(),
            "passed": all_ok,
        }),
        columns: vec!["check", "status", "detail"],
        rows,
    };
    (doc, all_ok)
}

fn registry_coverage() -> Result<String, String> {
    let modules = [
        "exactnum",
        "symbolics",
        "combinatorics",
        "hierarchy",
        "energy",
        "painleve",
        "numerics",
        "cli",
    ];
    let mut seen = std::collections::HashSet::new();
    for (id, _) in CHECKS {
        if !seen.insert(*id) {
            return Err(format!("duplicate check id {id}"));
        }
        let module = id.split('.').next().unwrap_or("");
        if !modules.contains(&module) {
            return Err(format!("check {id} names an unknown module"));
        }
    }
    for module in modules {
        if !CHECKS.iter().any(|(id, _)| id.starts_with(&format!("{module}."))) {
            return Err(format!("module {module} has no checks"));
        }
    }
    Ok(format!("{} checks across {} modules", CHECKS.len() + 1, modules.len()))
}
