//! Browser bindings: eta as a function of one divisor coefficient, relation
//! discovery, and field invariants. Every entry point returns JSON text.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use galrel_core::arakelov::{arakelov_genus, regulator};
use galrel_core::corpus;
use galrel_core::field::torsion::torsion_units;
use galrel_core::field::{NumberField, PlaceKind};
use galrel_core::group::{build_group, find_relations};
use galrel_core::ideal::class_group_with_units;
use galrel_core::input::FieldSpec;
use galrel_core::theta::{eta, InfiniteDivisor};
use galrel_core::Error;

const BITS: u32 = 128;
const MAX_STEPS: usize = 200;

fn spec_from(field: &str) -> Result<FieldSpec, Error> {
    if field.trim_start().starts_with('{') {
        FieldSpec::from_json(field)
    } else {
        corpus::fixture(field)
    }
}

fn field_from(field: &str) -> Result<NumberField, Error> {
    spec_from(field)?.build(BITS)
}

/// Bundled field names.
pub fn corpus_names() -> Vec<&'static str> {
    corpus::FIXTURES.iter().map(|(n, _)| *n).collect()
}

/// `η_D(O_K)` for `D` zero except at `place`, whose coefficient runs over
/// `steps` evenly spaced values in `[from, to]`.
pub fn eta_curve_json(field: &str, place: usize, from: f64, to: f64, steps: usize, tol: f64) -> Result<String, Error> {
    let k = field_from(field)?;
    let places = k.places().len();
    if place >= places {
        return Err(Error::InvalidInput(format!("place {place} out of range; the field has {places}")));
    }
    if !(2..=MAX_STEPS).contains(&steps) || !(from.is_finite() && to.is_finite() && from < to) {
        return Err(Error::InvalidInput(format!("need 2..={MAX_STEPS} steps over a finite interval")));
    }
    let mut points = Vec::with_capacity(steps);
    for i in 0..steps {
        let a = from + (to - from) * i as f64 / (steps - 1) as f64;
        let mut c = vec![0.0; places];
        c[place] = a;
        let e = eta(&k, &InfiniteDivisor::from_f64(&k, &c)?, tol)?;
        points.push(json!({"a": a, "eta": e.value, "points": e.points}));
    }
    let kinds: Vec<&str> = k.places().iter().map(|p| if p.kind == PlaceKind::Real { "real" } else { "complex" }).collect();
    Ok(json!({"field": k.name(), "places": kinds, "place": place, "tol": tol, "curve": points}).to_string())
}

pub fn relations_json(group: &str) -> Result<String, Error> {
    let g = build_group(group)?;
    let (subs, rels) = find_relations(&g);
    let subgroups: Vec<Value> = subs.iter().map(|h| json!({"order": h.order(), "elements": h.elements()})).collect();
    let relations: Vec<&Vec<i64>> = rels.iter().map(|r| &r.coeffs).collect();
    Ok(json!({"group": g.name(), "order": g.order(), "subgroups": subgroups, "relations": relations}).to_string())
}

pub fn invariants_json(field: &str) -> Result<String, Error> {
    let spec = spec_from(field)?;
    let k = spec.build(BITS)?;
    let (r, s) = k.signature();
    let w = torsion_units(&k)?.order;
    let unit = spec.unit(&k)?;
    let (class_group, reg) = match regulator(&k, unit.as_ref()) {
        Ok((units, reg)) => {
            let cg = class_group_with_units(&k, units)?;
            (json!(cg.structure.invariants()), json!(reg))
        }
        Err(Error::Unsupported(m)) => (json!({"unsupported": m}), json!({"unsupported": m})),
        Err(e) => return Err(e),
    };
    Ok(json!({
        "field": k.name(),
        "degree": k.degree(),
        "r": r,
        "s": s,
        "unit_rank": k.unit_rank(),
        "discriminant": k.discriminant().to_string(),
        "w": w,
        "class_group": class_group,
        "regulator": reg,
        "genus": arakelov_genus(&k, w).value,
    })
    .to_string())
}

fn js(r: Result<String, Error>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e.to_string()))
}

#[wasm_bindgen]
pub fn fields() -> String {
    json!(corpus_names()).to_string()
}

#[wasm_bindgen]
pub fn eta_curve(field: &str, place: usize, from: f64, to: f64, steps: usize, tol: f64) -> Result<String, JsValue> {
    js(eta_curve_json(field, place, from, to, steps, tol))
}

#[wasm_bindgen]
pub fn relations(group: &str) -> Result<String, JsValue> {
    js(relations_json(group))
}

#[wasm_bindgen]
pub fn invariants(field: &str) -> Result<String, JsValue> {
    js(invariants_json(field))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_starts_at_eta_zero() {
        let v: Value = serde_json::from_str(&eta_curve_json("q", 0, 0.0, 1.0, 3, 1e-10).unwrap()).unwrap();
        let first = v["curve"][0]["eta"]["value"].as_f64().unwrap();
        assert!((first - 1.086434811213308).abs() < 1e-9);
        // a larger coefficient shrinks the metric and raises eta
        let last = v["curve"][2]["eta"]["value"].as_f64().unwrap();
        assert!(last > first);
    }

    #[test]
    fn bad_requests_are_errors() {
        assert!(eta_curve_json("q", 1, 0.0, 1.0, 3, 1e-10).is_err());
        assert!(eta_curve_json("q", 0, 1.0, 0.0, 3, 1e-10).is_err());
        assert!(relations_json("X7").is_err());
        assert!(invariants_json("nowhere").is_err());
    }

    #[test]
    fn relations_and_invariants() {
        let v: Value = serde_json::from_str(&relations_json("S3").unwrap()).unwrap();
        assert_eq!(v["relations"].as_array().unwrap().len(), 1);
        let v: Value = serde_json::from_str(&invariants_json("q_sqrtm23").unwrap()).unwrap();
        assert_eq!(v["class_group"], json!([3]));
        let custom = r#"{"name": "Q(sqrt(-5))", "min_poly": [5, 0, 1]}"#;
        let v: Value = serde_json::from_str(&invariants_json(custom).unwrap()).unwrap();
        assert_eq!(v["class_group"], json!([2]));
        assert!(fields().contains("q_zeta8"));
    }
}
