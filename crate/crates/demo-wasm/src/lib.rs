//! Browser bindings for the `www/` demo page.

use wasm_bindgen::prelude::*;
use wildknot::geometry::DEFAULT_TAU;
use wildknot::necklace::{load_trefoil_table, planar_ring, spin_necklace, toy_ring, SpunNecklace};
use wildknot::orbit::{generators_from_necklace, limit_set_points, Expander};
use wildknot::topology::{power_is_inner, trefoil_monodromy};

fn err(e: wildknot::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// Limit-set sample of a small necklace, flattened as `x1 x2 x3 x4` per point.
/// `pearls = 0` selects the spun hexagonal ring, otherwise a planar ring of
/// that many pearls.
#[wasm_bindgen]
pub fn limit_set(pearls: usize, epsilon: f64, depth: usize) -> Result<Vec<f64>, JsError> {
    let mut sn: SpunNecklace = if pearls == 0 {
        spin_necklace(&toy_ring()).map_err(err)?
    } else {
        planar_ring(pearls).map_err(err)?
    };
    if !sn.certify(DEFAULT_TAU).passed() {
        return Err(JsError::new("necklace failed validation"));
    }
    let ex = Expander::new(&generators_from_necklace(&sn).map_err(err)?);
    let pts = limit_set_points(&ex, epsilon, depth).map_err(err)?;
    Ok(pts.into_iter().flatten().collect())
}

/// Spins the bundled trefoil table and validates it at `tau`; one line per
/// clause.
#[wasm_bindgen]
pub fn validate_trefoil(tau: f64) -> Result<String, JsError> {
    let mut sn = spin_necklace(&load_trefoil_table()).map_err(err)?;
    let report = sn.certify(tau);
    let mut lines = vec![format!("{} pearls", sn.len())];
    for c in &report.clauses {
        lines.push(format!(
            "{}: {}/{} passed, worst {:.2e}",
            c.name,
            c.checked - c.failures.len(),
            c.checked,
            c.worst_residual
        ));
    }
    Ok(lines.join("\n"))
}

/// Smallest `k ≤ 12` with `φᵏ` inner, and its conjugator.
#[wasm_bindgen]
pub fn monodromy(radius: usize) -> String {
    let phi = trefoil_monodromy();
    (1..=12)
        .find_map(|k| power_is_inner(&phi, k, radius).map(|c| format!("Out-order: {k}, conjugator: {c}")))
        .unwrap_or_else(|| format!("no power up to 12 is inner within radius {radius}"))
}
