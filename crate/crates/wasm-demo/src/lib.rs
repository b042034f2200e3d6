//! Browser bindings: explore the `g_{λ,μ}` family and its shear, shear an
//! arbitrary algebra, and classify an algebra. Every entry point returns a
//! JSON string; failures come back as `{"error": "..."}`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use shearlab::geometry::is_closed;
use shearlab::notation::{parse_form, parse_vector, Bindings};
use shearlab::rational::parse_q;
use shearlab::shear::{candidate, decompose_dalpha, ds_form, validate_shear, ShearData};
use shearlab::{KForm, LieAlgebra, Vector};

const FAMILY: &str = "([l+m].17,[l].27,[m].37,-[l+m].47,-[l].57,-[m].67,0)";
const PSI: &str = "e1425 + e1436 + e2536 - e4567 + e4237 + e1267 + e1537";

fn err(e: impl std::fmt::Display) -> String {
    json!({ "error": e.to_string() }).to_string()
}

fn algebra_json(g: &LieAlgebra) -> Value {
    let d: Vec<String> = g.diffs().iter().map(|f| f.to_string()).collect();
    json!({ "salamon": g.to_salamon(), "d": d, "lie": g.is_lie() })
}

/// `g_{λ,μ}`, its shear by `F0 = e23` along `E1`, and the fate of `ψ`.
#[wasm_bindgen]
pub fn explore_family(lambda: &str, mu: &str) -> String {
    family(lambda, mu).unwrap_or_else(err)
}

fn family(lambda: &str, mu: &str) -> Result<String, shearlab::Error> {
    let mut b = Bindings::new();
    b.insert("l".into(), parse_q(lambda)?);
    b.insert("m".into(), parse_q(mu)?);
    let g = LieAlgebra::parse_salamon_with(FAMILY, &b)?;
    let x = Vector::basis(7, 1)?;
    let alpha = KForm::basis(7, &[1])?;
    let data = ShearData::new(x.clone(), alpha.clone(), parse_form("e23", 7, Some(2), &b)?, parse_q("-1")?)?;
    let report = validate_shear(&g, &data)?;
    let h = candidate(&g, &data)?;
    let psi = parse_form(PSI, 7, Some(4), &b)?;
    let dec = decompose_dalpha(&g, &x, &alpha)?;
    Ok(json!({
        "g": algebra_json(&g),
        "h": algebra_json(&h),
        "eta": dec.eta_str.to_string(),
        "valid": report.valid,
        "psi_closed_on_g": is_closed(&g, &psi)?,
        "ds_psi": ds_form(&g, &data, &psi)?.to_string(),
        "psi_closed_on_h": is_closed(&h, &psi)?,
        "g_almost_abelian": g.classify()?.almost_abelian,
        "h_almost_abelian": h.classify()?.almost_abelian,
    })
    .to_string())
}

/// Validates and performs a shear; `a` defaults to `-1` when empty.
#[wasm_bindgen]
pub fn shear(algebra: &str, x: &str, alpha: &str, f0: &str, a: &str) -> String {
    run_shear(algebra, x, alpha, f0, a).unwrap_or_else(err)
}

fn run_shear(algebra: &str, x: &str, alpha: &str, f0: &str, a: &str) -> Result<String, shearlab::Error> {
    let b = Bindings::new();
    let g = LieAlgebra::parse_salamon(algebra)?;
    if !g.is_lie() {
        return Ok(json!({ "error": "the input fails the Jacobi identity", "algebra": algebra_json(&g) }).to_string());
    }
    let n = g.dim();
    let a = if a.trim().is_empty() { parse_q("-1")? } else { parse_q(a.trim())? };
    let data = ShearData::new(
        parse_vector(x, n, &b)?,
        parse_form(alpha, n, Some(1), &b)?,
        parse_form(f0, n, Some(2), &b)?,
        a,
    )?;
    let r = validate_shear(&g, &data)?;
    let conditions: Vec<Value> = r
        .conditions
        .iter()
        .map(|c| {
            json!({
                "condition": c.kind.label(),
                "required": c.kind.required(),
                "passed": c.passed,
                "residual": c.residual.as_ref().map(|f| f.to_string()),
            })
        })
        .collect();
    let sheared = r.valid.then(|| candidate(&g, &data)).transpose()?;
    Ok(json!({
        "valid": r.valid,
        "eta0": r.eta_0.to_string(),
        "nu": r.nu.to_string(),
        "conditions": conditions,
        "sheared": sheared.as_ref().map(algebra_json),
    })
    .to_string())
}

/// Jacobi verdict and classification flags.
#[wasm_bindgen]
pub fn algebra_info(algebra: &str) -> String {
    info(algebra).unwrap_or_else(err)
}

fn info(algebra: &str) -> Result<String, shearlab::Error> {
    let g = LieAlgebra::parse_salamon(algebra)?;
    if !g.is_lie() {
        return Ok(json!({ "algebra": algebra_json(&g) }).to_string());
    }
    let c = g.classify()?;
    Ok(json!({
        "algebra": algebra_json(&g),
        "abelian": c.abelian,
        "nilpotent": c.nilpotent,
        "solvable": c.solvable,
        "almost_abelian": c.almost_abelian,
        "derived_dim": c.derived_dim,
        "step_length": c.step_length,
        "derived_length": c.derived_length,
    })
    .to_string())
}
