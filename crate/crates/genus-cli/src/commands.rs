//! One builder per subcommand: each returns a Document ready to render.

use crate::render::Document;
use genus_core::combinatorics::{d_coeff_symmetric, d_coeff_walks, Partition};
use genus_core::engine::{Engine, DEFAULT_GENUS_CAP};
use genus_core::exactnum::Rat;
use genus_core::painleve::{
    alpha_sequence, caustic_slope_squared, critical_coupling, double_scaling_series,
    pinning_constants, t2_flat_radical_display_differs, tg_sequence,
};
use genus_core::symbolics::{LogExtendedZ0, RationalZ0};
use genus_numerics::{
    caustic_probe, convergence_study, density_display, float_from_rat, z0_eval,
};
use rug::ops::Pow;
use rug::Float;
use serde_json::{json, Value};

pub enum CliError {
    /// Malformed request: exit status 2.
    Usage(String),
    /// A mathematical contract failed to hold: exit status 1.
    Structural(String),
}

impl From<genus_core::Error> for CliError {
    fn from(e: genus_core::Error) -> Self {
        use genus_core::Error::*;
        match e {
            BadNu(_) | BadArgument(_) | TooFewArguments { .. } | GenusCap { .. } => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Structural(other.to_string()),
        }
    }
}

impl From<genus_numerics::NumError> for CliError {
    fn from(e: genus_numerics::NumError) -> Self {
        match e {
            genus_numerics::NumError::BadInput(_) => CliError::Usage(e.to_string()),
            genus_numerics::NumError::Core(inner) => CliError::from(inner),
            other => CliError::Structural(other.to_string()),
        }
    }
}

pub type CmdResult = Result<Document, CliError>;

pub fn parse_float(text: &str, prec: u32, what: &str) -> Result<Float, CliError> {
    match Float::parse(text) {
        Ok(incomplete) => Ok(Float::with_val(prec, incomplete)),
        Err(_) => Err(CliError::Usage(format!("{} is not a number: {}", what, text))),
    }
}

pub fn decimal(x: &Float) -> String {
    format!("{:.24e}", x)
}

fn rat_strings(values: &[Rat]) -> Vec<Value> {
    values.iter().map(|r| Value::String(r.to_string())).collect()
}

pub fn rational_value(r: &RationalZ0) -> Value {
    json!({
        "numerator": rat_strings(r.numerator().coeffs()),
        "z0_pole": r.z0_pole(),
        "u_pole": r.u_pole(),
    })
}

fn log_extended_value(e: &LogExtendedZ0) -> Value {
    json!({
        "rational": rational_value(&e.rational),
        "log_z0": e.log_z0.to_string(),
        "log_u": e.log_u.to_string(),
    })
}

pub fn engine_for(nu: u32, cap: Option<u32>) -> Result<Engine, CliError> {
    Ok(Engine::with_genus_cap(nu, cap.unwrap_or(DEFAULT_GENUS_CAP))?)
}

pub fn cmd_zg(nu: u32, g: u32, cap: Option<u32>) -> CmdResult {
    let mut engine = engine_for(nu, cap)?;
    let row = engine.z_row(g)?;
    Ok(Document::Record(json!({
        "schema": "1",
        "command": "zg",
        "nu": nu,
        "g": g,
        "representation": "z0 * sum_l coeffs[l] / u^(2g+l)",
        "pole_order": row.pole_order(),
        "coeffs": rat_strings(row.coeffs()),
    })))
}

pub fn cmd_eg(nu: u32, g: u32, cap: Option<u32>) -> CmdResult {
    let mut engine = engine_for(nu, cap)?;
    let energy = engine.energy(g)?.clone();
    Ok(Document::Record(json!({
        "schema": "1",
        "command": "eg",
        "nu": nu,
        "g": g,
        "value": log_extended_value(&energy),
        "text": format!(
            "{} + ({}) log(z0) + ({}) log(u)",
            energy.rational, energy.log_z0, energy.log_u
        ),
    })))
}

pub fn cmd_counts(nu: u32, g: u32, jmax: u32, cap: Option<u32>) -> CmdResult {
    let mut engine = engine_for(nu, cap)?;
    let counts = engine.counts(g, jmax)?;
    Ok(Document::Record(json!({
        "schema": "1",
        "command": "counts",
        "nu": nu,
        "g": g,
        "jmax": jmax,
        "values": counts.iter().map(|n| Value::String(n.to_string())).collect::<Vec<_>>(),
    })))
}

pub fn cmd_kappa(nu: u32, g: u32, jmax: u32, cap: Option<u32>) -> CmdResult {
    let mut engine = engine_for(nu, cap)?;
    let kappa = engine.kappa(g, jmax)?;
    Ok(Document::Record(json!({
        "schema": "1",
        "command": "kappa",
        "nu": nu,
        "g": g,
        "jmax": jmax,
        "values": kappa.iter().map(|n| Value::String(n.to_string())).collect::<Vec<_>>(),
    })))
}

pub fn cmd_dcoeff(nu: u32, partition_text: &str) -> CmdResult {
    let lambda: Partition = partition_text
        .parse()
        .map_err(|e: genus_core::Error| CliError::Usage(e.to_string()))?;
    let by_walks = d_coeff_walks(nu, &lambda)?;
    let by_symmetry = d_coeff_symmetric(nu, &lambda)?;
    if by_walks != by_symmetry {
        return Err(CliError::Structural(format!(
            "d-coefficient routes disagree for {}: walks {} vs symmetric {}",
            lambda, by_walks, by_symmetry
        )));
    }
    Ok(Document::Record(json!({
        "schema": "1",
        "command": "dcoeff",
        "nu": nu,
        "partition": lambda.to_string(),
        "value": by_walks.to_string(),
        "routes_agree": true,
    })))
}

pub fn cmd_painleve(gmax: u32) -> CmdResult {
    let alphas = alpha_sequence(gmax);
    Ok(Document::Record(json!({
        "schema": "1",
        "command": "painleve",
        "gmax": gmax,
        "alpha": alphas.iter().map(|a| Value::String(a.to_string())).collect::<Vec<_>>(),
    })))
}

pub fn cmd_tg(big_g: u32) -> CmdResult {
    let ts = tg_sequence(big_g)?;
    let values: Vec<Value> = ts[1..]
        .iter()
        .map(|t| Value::String(t.to_string()))
        .collect();
    Ok(Document::Record(json!({
        "schema": "1",
        "command": "tg",
        "G": big_g,
        "t0": ts[0].to_string(),
        "values": values,
        "t2_flat_radical_display_differs": t2_flat_radical_display_differs()?,
    })))
}

pub fn cmd_ds(nu: u32, big_g: u32, xi: Option<&str>, prec: u32) -> CmdResult {
    let data = double_scaling_series(nu, big_g)?;
    let mut doc = json!({
        "schema": "1",
        "command": "ds",
        "nu": nu,
        "G": big_g,
        "s_c": data.s_c.to_string(),
        "caustic_slope_squared": data.caustic_slope_squared.to_string(),
        "scaling": "N^(4/5) (s - s_c) held fixed",
        "terms": rat_strings(&data.terms),
    });
    if let Some(xi_text) = xi {
        if nu != 2 {
            return Err(CliError::Usage(
                "scaled evaluation uses the quartic pinning constants; pass --nu 2".into(),
            ));
        }
        let xi_val = parse_float(xi_text, prec, "--xi")?;
        if !(xi_val < 0) {
            return Err(CliError::Usage(
                "the branch approaches its critical point from below; pass a negative --xi".into(),
            ));
        }
        // gamma1 = 2^(-19/5) 3^(-6/5); the series argument is
        // X = (-K) gamma1 (-xi) with K the caustic slope squared.
        let gamma1 = Float::with_val(prec, 2).pow(Float::with_val(prec, -19) / 5u32)
            * Float::with_val(prec, 3).pow(Float::with_val(prec, -6) / 5u32);
        let minus_k = float_from_rat(prec, &(-data.caustic_slope_squared.clone()));
        let x = minus_k * gamma1 * -xi_val;
        let sqrt_x = x.sqrt();
        let mut value = -sqrt_x.clone();
        for (idx, term) in data.terms.iter().enumerate() {
            let g = idx as u32 + 1;
            value += float_from_rat(prec, term) / sqrt_x.clone().pow(5 * g - 1);
        }
        if let Value::Object(map) = &mut doc {
            map.insert("xi".into(), Value::String(xi_text.to_string()));
            map.insert(
                "xi_series_value".into(),
                Value::String(decimal(&value)),
            );
        }
    }
    Ok(Document::Record(doc))
}

pub fn cmd_numcheck(
    nu: u32,
    t_text: Option<&str>,
    s_text: Option<&str>,
    sizes: &[u32],
    big_g: u32,
    prec: u32,
) -> CmdResult {
    let t = match (t_text, s_text) {
        (Some(t), None) => parse_float(t, prec, "--t")?,
        (None, Some(s)) => -parse_float(s, prec, "--s")?,
        _ => {
            return Err(CliError::Usage(
                "pass the coupling exactly once, as --t or as --s (s = -t)".into(),
            ))
        }
    };
    let report = convergence_study(nu, &t, sizes, big_g, prec)?;
    Ok(Document::Record(json!({
        "schema": "1",
        "command": "numcheck",
        "nu": nu,
        "t": decimal(&t),
        "G": big_g,
        "N": report.big_ns,
        "errors": report.errors.iter().map(|e| Value::String(decimal(e))).collect::<Vec<_>>(),
        "slope": report.slope,
        "expected_slope": -((2 * big_g + 2) as f64),
    })))
}

pub fn cmd_eqmeasure(nu: u32, z0_text: &str, grid: usize, prec: u32) -> CmdResult {
    if grid < 2 {
        return Err(CliError::Usage("need a grid of at least two points".into()));
    }
    let z0 = parse_float(z0_text, prec, "--z0")?;
    let mut rows = Vec::with_capacity(grid);
    for i in 0..grid {
        let eta = Float::with_val(prec, 2 * i as u32) / (grid as u32 - 1) - 1u32;
        let rho = density_display(nu, &z0, &eta, prec)?;
        rows.push(vec![decimal(&eta), decimal(&rho)]);
    }
    Ok(Document::Table {
        meta: json!({
            "schema": "1",
            "command": "eqmeasure",
            "nu": nu,
            "z0": z0_text,
            "grid": grid,
        }),
        columns: vec!["eta", "density"],
        rows,
    })
}

pub fn cmd_plotdata(nu: u32, points: usize, prec: u32) -> CmdResult {
    if points < 2 {
        return Err(CliError::Usage("need at least two sample points".into()));
    }
    let s_c = float_from_rat(prec, &critical_coupling(nu)?);
    let minus_k = float_from_rat(prec, &(-caustic_slope_squared(nu)?));
    let endpoint = Float::with_val(prec, nu) / (nu - 1);
    let s_min = Float::with_val(prec, -24) * &s_c;
    let mut rows = Vec::with_capacity(points);
    for i in 0..points {
        let frac = Float::with_val(prec, i as u32) / (points as u32 - 1);
        let s = s_min.clone() + Float::with_val(prec, &s_c - &s_min) * frac;
        let z0 = z0_eval(nu, &s, prec)?;
        let gap = Float::with_val(prec, &s_c - &s);
        let asymptote = endpoint.clone() - (minus_k.clone() * gap).sqrt();
        rows.push(vec![
            decimal(&(-s.clone())),
            decimal(&s),
            decimal(&z0),
            decimal(&asymptote),
        ]);
    }
    Ok(Document::Table {
        meta: json!({
            "schema": "1",
            "command": "plotdata",
            "nu": nu,
            "points": points,
        }),
        columns: vec!["t", "s", "z0", "caustic_asymptote"],
        rows,
    })
}

/// The square-root pinning data behind the quartic double-scaling fit,
/// exposed for the validate registry.
pub fn quartic_gamma_identities() -> Result<(), CliError> {
    pinning_constants()?;
    Ok(())
}

/// Caustic approach table, exposed for the validate registry.
pub fn caustic_report(nu: u32, prec: u32) -> Result<Vec<(u32, Float)>, CliError> {
    let samples = caustic_probe(nu, prec)?;
    Ok(samples.into_iter().map(|s| (s.k, s.ratio)).collect())
}
