//! Browser bindings. Every export takes plain numbers and strings and
//! returns a JSON document; failures come back as `{"error": "..."}`.

use lfhh::hh_verify::{kernel_constant, thm1_residual, thm2_residual, thm3_check, thm4_check, thmd_check};
use lfhh::report::to_json_line;
use lfhh::{Alpha, GeneralizedFunction, Interval, KernelKind, TheoremReport, VerifyOptions};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

fn record(r: &TheoremReport) -> Value {
    serde_json::from_str(&to_json_line(r)).expect("report lines are valid JSON")
}

fn inputs(function: &str, a: f64, b: f64, alpha: f64) -> Result<(GeneralizedFunction, Interval, Alpha), String> {
    let f = function.trim().parse::<GeneralizedFunction>().map_err(|e| e.to_string())?;
    let iv = Interval::new(a, b).map_err(|e| e.to_string())?;
    let al = Alpha::new(alpha).map_err(|e| e.to_string())?;
    Ok((f, iv, al))
}

fn render(v: Result<Value, String>) -> String {
    v.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

/// Engine and printed values of the α-only kernel constants on an even α grid.
pub fn constants_curve_value(steps: u32) -> Result<Value, String> {
    let steps = steps.clamp(2, 400);
    let kinds = [KernelKind::Eq32, KernelKind::Eq34, KernelKind::Eq36T2, KernelKind::Eq36T1mt];
    let mut rows = Vec::new();
    for i in 1..=steps {
        let alpha = Alpha::new(f64::from(i) / f64::from(steps)).map_err(|e| e.to_string())?;
        let mut row = serde_json::Map::new();
        row.insert("alpha".into(), json!(alpha.get()));
        for kind in kinds {
            let k = kernel_constant(kind, alpha, None).map_err(|e| e.to_string())?;
            row.insert(kind.as_str().into(), json!({ "engine": k.engine, "paper": k.paper }));
        }
        rows.push(Value::Object(row));
    }
    Ok(json!({ "kinds": kinds.map(KernelKind::as_str), "rows": rows }))
}

/// Both identities and the Hermite-Hadamard chain for one function.
pub fn chain_value(function: &str, a: f64, b: f64, alpha: f64) -> Result<Value, String> {
    let (f, iv, al) = inputs(function, a, b, alpha)?;
    let opts = VerifyOptions::default();
    let d = thmd_check(&f, iv, al, &opts);
    Ok(json!({
        "identities": [record(&thm1_residual(&f, iv, al, &opts)), record(&thm2_residual(&f, iv, al, &opts))],
        "chain": record(&d),
        "midpoint_value": d.detail("midpoint_value"),
        "integral_mean": d.detail("integral_mean"),
        "trapezoid_value": d.detail("trapezoid_value"),
    }))
}

/// Trapezoid and midpoint bounds with conjugate exponents p and p/(p−1).
pub fn bounds_value(function: &str, a: f64, b: f64, alpha: f64, p: f64) -> Result<Value, String> {
    let (f, iv, al) = inputs(function, a, b, alpha)?;
    if !p.is_finite() || p <= 1.0 {
        return Err(format!("p must be a finite number above 1, got {p}"));
    }
    let q = p / (p - 1.0);
    let opts = VerifyOptions::default();
    Ok(json!({
        "p": p,
        "q": q,
        "records": [record(&thm3_check(&f, iv, al, p, q, &opts)), record(&thm4_check(&f, iv, al, p, q, &opts))],
    }))
}

#[wasm_bindgen]
pub fn constants_curve(steps: u32) -> String {
    render(constants_curve_value(steps))
}

#[wasm_bindgen]
pub fn hermite_hadamard_chain(function: &str, a: f64, b: f64, alpha: f64) -> String {
    render(chain_value(function, a, b, alpha))
}

#[wasm_bindgen]
pub fn bound_check(function: &str, a: f64, b: f64, alpha: f64, p: f64) -> String {
    render(bounds_value(function, a, b, alpha, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_reaches_classical_values_at_one() {
        let v = constants_curve_value(10).unwrap();
        let rows = v["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 10);
        let last = &rows[9];
        assert_eq!(last["alpha"], 1.0);
        assert!((last["eq32"]["engine"].as_f64().unwrap() - 0.5).abs() < 1e-12);
        assert!((last["eq34"]["paper"].as_f64().unwrap() - 0.25).abs() < 1e-12);
        let half = &rows[4];
        let ratio = half["eq32"]["engine"].as_f64().unwrap() / half["eq32"]["paper"].as_f64().unwrap();
        assert!((ratio - 2f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn chain_for_a_square() {
        let v = chain_value("poly:0,0,1", 0.0, 1.0, 1.0).unwrap();
        assert!((v["integral_mean"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(v["identities"][0]["satisfied_engine"], true);
        assert_eq!(v["chain"]["status"], "ok");
    }

    #[test]
    fn bounds_use_conjugate_exponent() {
        let v = bounds_value("poly:0,0,1", 1.0, 3.0, 0.5, 3.0).unwrap();
        assert_eq!(v["q"], 1.5);
        assert_eq!(v["records"][0]["theorem"], "thm3");
        assert_eq!(v["records"][1]["theorem"], "thm4");
    }

    #[test]
    fn bad_input_is_reported_not_thrown() {
        let out: Value = serde_json::from_str(&hermite_hadamard_chain("poly:x", 0.0, 1.0, 0.5)).unwrap();
        assert!(out["error"].is_string());
        let out: Value = serde_json::from_str(&bound_check("poly:0,1", 0.0, 1.0, 0.5, 1.0)).unwrap();
        assert!(out["error"].as_str().unwrap().contains("p must"));
        let out: Value = serde_json::from_str(&hermite_hadamard_chain("poly:0,1", 1.0, 0.0, 0.5)).unwrap();
        assert!(out["error"].is_string());
    }
}
