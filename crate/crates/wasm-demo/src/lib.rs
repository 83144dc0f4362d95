//! Browser bindings for the interactive demo page in `www/`.
//!
//! Each export has a plain Rust twin returning `Result<String, String>`
//! so the logic is testable without a JavaScript host.

use richardson::multiplicity::{mult_all, GradedChainCounter};
use richardson::poset::{dim_richardson, interval, length, lower_covers};
use richardson::smt::{hilbert_polynomial, maximal_chain_count};
use richardson::straighten::{straighten, Monomial};
use richardson::tangent::{smooth_product_check, tangent_basis};
use richardson::{GrassContext, PluckerIndex, RichardsonId};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest Grassmannian the page accepts; keeps the diagram readable.
pub const MAX_N: usize = 8;

fn setup(grassmannian: &str, w: &str, v: &str) -> Result<(GrassContext, RichardsonId), String> {
    let ctx = GrassContext::parse(grassmannian).map_err(|e| e.to_string())?;
    if ctx.n() > MAX_N {
        return Err(format!("n is limited to {MAX_N} here"));
    }
    let top = if w.trim().is_empty() { ctx.top() } else { ctx.parse_index(w).map_err(|e| e.to_string())? };
    let bottom = if v.trim().is_empty() { ctx.bottom() } else { ctx.parse_index(v).map_err(|e| e.to_string())? };
    let x = RichardsonId::new(top, bottom).map_err(|e| e.to_string())?;
    Ok((ctx, x))
}

fn big(x: &num_bigint::BigInt) -> Value {
    json!(x.to_string())
}

/// Hasse diagram of [v, w]: nodes with their lengths, cover edges, and the
/// Hilbert polynomial of X_w^v.
pub fn interval_diagram_json(grassmannian: &str, w: &str, v: &str) -> Result<String, String> {
    let (_, x) = setup(grassmannian, w, v)?;
    let elems = interval(&x);
    let nodes: Vec<Value> = elems
        .iter()
        .map(|t| json!({ "id": t.to_string(), "length": length(t) }))
        .collect();
    let edges: Vec<Value> = elems
        .iter()
        .flat_map(|hi| {
            lower_covers(hi)
                .into_iter()
                .filter(|lo| x.contains(lo))
                .map(move |lo| json!([hi.to_string(), lo.to_string()]))
        })
        .collect();
    let h = hilbert_polynomial(&x).map_err(|e| e.to_string())?;
    let out = json!({
        "variety": x.to_string(),
        "dim": dim_richardson(&x),
        "degree": big(&maximal_chain_count(&x)),
        "hilbert": h.poly.to_string(),
        "nodes": nodes,
        "edges": edges,
    });
    Ok(out.to_string())
}

/// Tangent space, smoothness and the four multiplicities at e_τ.
pub fn point_report_json(grassmannian: &str, w: &str, v: &str, tau: &str) -> Result<String, String> {
    let (ctx, x) = setup(grassmannian, w, v)?;
    let tau: PluckerIndex = ctx.parse_index(tau).map_err(|e| e.to_string())?;
    let basis = tangent_basis(&x, &tau).map_err(|e| e.to_string())?;
    let smooth = smooth_product_check(&x, &tau).map_err(|e| e.to_string())?;
    let m = mult_all(&x, &tau).map_err(|e| e.to_string())?;
    let reflected: Vec<String> = basis.reflections().iter().map(|(_, t)| t.to_string()).collect();
    let out = json!({
        "tau": tau.to_string(),
        "dim": dim_richardson(&x),
        "tangent_dim": basis.dim(),
        "tangent_directions": reflected,
        "smooth": smooth.richardson,
        "schubert_smooth": smooth.schubert,
        "opposite_smooth": smooth.opposite,
        "multiplicity": {
            "recursive": big(&m.recursive),
            "product": big(&m.product),
            "determinantal": big(&m.determinantal),
            "oracle": big(&m.oracle),
            "agree": m.agree,
        },
    });
    Ok(out.to_string())
}

/// φ(0..=r_max) for the tangent cone at e_τ.
pub fn cone_series_json(grassmannian: &str, w: &str, v: &str, tau: &str, r_max: usize) -> Result<String, String> {
    let (ctx, x) = setup(grassmannian, w, v)?;
    let tau = ctx.parse_index(tau).map_err(|e| e.to_string())?;
    let mut counter = GradedChainCounter::new(&x, &tau).map_err(|e| e.to_string())?;
    let series: Vec<Value> = (0..=r_max.min(40)).map(|r| big(&counter.hilbert(r))).collect();
    Ok(json!({ "tau": tau.to_string(), "series": series }).to_string())
}

/// Standard form of a monomial such as "1,4;2,3".
pub fn straighten_json(grassmannian: &str, monomial: &str) -> Result<String, String> {
    let ctx = GrassContext::parse(grassmannian).map_err(|e| e.to_string())?;
    if ctx.n() > MAX_N {
        return Err(format!("n is limited to {MAX_N} here"));
    }
    let m = Monomial::parse(ctx, monomial).map_err(|e| e.to_string())?;
    let c = straighten(&m).map_err(|e| e.to_string())?;
    Ok(json!({ "input": m.to_string(), "standard": c.to_string(), "terms": c.len() }).to_string())
}

#[wasm_bindgen]
pub fn interval_diagram(grassmannian: &str, w: &str, v: &str) -> Result<String, JsValue> {
    interval_diagram_json(grassmannian, w, v).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn point_report(grassmannian: &str, w: &str, v: &str, tau: &str) -> Result<String, JsValue> {
    point_report_json(grassmannian, w, v, tau).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn cone_series(grassmannian: &str, w: &str, v: &str, tau: &str, r_max: usize) -> Result<String, JsValue> {
    cone_series_json(grassmannian, w, v, tau, r_max).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn straighten_monomial(grassmannian: &str, monomial: &str) -> Result<String, JsValue> {
    straighten_json(grassmannian, monomial).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn diagram_of_the_quadric() {
        let v = parse(&interval_diagram_json("2,4", "", "").unwrap());
        assert_eq!(v["nodes"].as_array().unwrap().len(), 6);
        assert_eq!(v["edges"].as_array().unwrap().len(), 6);
        assert_eq!(v["dim"], 4);
        assert_eq!(v["degree"], "2");
        let v = parse(&interval_diagram_json("2,4", "2,4", "1,3").unwrap());
        assert_eq!(v["nodes"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn report_at_the_vertex() {
        let v = parse(&point_report_json("2,4", "2,4", "1,2", "1,2").unwrap());
        assert_eq!(v["tangent_dim"], 4);
        assert_eq!(v["dim"], 3);
        assert_eq!(v["smooth"], false);
        assert_eq!(v["multiplicity"]["oracle"], "2");
        assert_eq!(v["multiplicity"]["agree"], true);
        let v = parse(&cone_series_json("2,4", "2,4", "1,2", "1,2", 4).unwrap());
        assert_eq!(v["series"], json!(["1", "4", "9", "16", "25"]));
    }

    #[test]
    fn straighten_the_quadric_relation() {
        let v = parse(&straighten_json("2,4", "1,4;2,3").unwrap());
        assert_eq!(v["standard"], "p[2,4]*p[1,3] - p[3,4]*p[1,2]");
    }

    #[test]
    fn errors_are_messages() {
        assert!(interval_diagram_json("2,4", "1,2", "3,4").unwrap_err().contains("empty"));
        assert!(point_report_json("2,4", "1,4", "", "3,4").is_err());
        assert!(interval_diagram_json("2,12", "", "").is_err());
        assert!(straighten_json("2,4", "1,9").is_err());
    }
}
