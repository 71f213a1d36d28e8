//! WebAssembly bindings for the explorer page in `www/`. Each export takes
//! small integers and returns a JSON string.

use revbch::bch::{BchCode, Variant};
use revbch::cosets::{leader_pair_count_closed, leader_pair_counts_enumerated, negation_range, run_count_l};
use revbch::distance::{best_certificate, CertificateKind};
use revbch::ffield::Extension;
use revbch::theory::{dimension_report, sphere_packing};
use revbch::Error;
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest field the page will build codes in.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;
/// Codewords enumerated per distance request.
pub const DISTANCE_BUDGET: u128 = 1 << 18;
pub const MAX_RUN_LENGTH: u32 = 120;

fn check_order(q: u64, m: u32) -> Result<(), Error> {
    match q.checked_pow(m) {
        Some(o) if o <= MAX_FIELD_ORDER => Ok(()),
        _ => Err(Error::Precondition(format!("q^m must be at most {MAX_FIELD_ORDER}"))),
    }
}

#[derive(Serialize)]
struct CodeView {
    q: u64,
    m: u32,
    n: usize,
    delta: u64,
    variant: Variant,
    generator: String,
    zero_leaders: Vec<u64>,
    k: usize,
    k_closed: Option<i64>,
    case: Option<String>,
    self_reciprocal: bool,
    sphere_packing: bool,
    d_kind: CertificateKind,
    d_lower: u64,
    d_upper: Option<u64>,
    method: String,
    witness: Option<String>,
}

pub fn code_json(q: u64, m: u32, delta: u64, variant: &str) -> Result<String, Error> {
    check_order(q, m)?;
    let variant: Variant = variant.parse()?;
    let ext = Extension::canonical(q, m)?;
    let code = BchCode::new(&ext, delta, variant)?;
    let (k_closed, case) = match variant {
        Variant::Overline => {
            let d = dimension_report(q, m, delta)?;
            (d.k_closed, d.case)
        }
        _ => (None, None),
    };
    let k = code.dimension();
    let cert = best_certificate(&code, DISTANCE_BUDGET)?;
    let view = CodeView {
        q,
        m,
        n: code.n(),
        delta,
        variant,
        generator: code.generator().to_string(),
        zero_leaders: code.zero_leaders().to_vec(),
        k,
        k_closed,
        case,
        self_reciprocal: code.generator().is_self_reciprocal(),
        sphere_packing: sphere_packing(q, m, delta, k as u64)?.triggered(),
        d_kind: cert.kind,
        d_lower: cert.d_lower,
        d_upper: cert.d_upper,
        method: cert.method.clone(),
        witness: cert.witness.as_ref().map(|w| w.to_string()),
    };
    Ok(serde_json::to_string(&view).expect("plain data"))
}

#[derive(Serialize)]
struct LeaderStep {
    l: u64,
    enumerated: u64,
    closed: Option<u64>,
}

/// Count of ordered leader pairs `(i, j)`, `-j` in the coset of `i`, with both
/// leaders at most `l`, for each `l` up to the negation range.
pub fn leader_pairs_json(q: u64, m: u32) -> Result<String, Error> {
    check_order(q, m)?;
    let top = negation_range(q, m)?;
    let counts = leader_pair_counts_enumerated(top, q, m)?;
    let steps: Vec<LeaderStep> = (1..=top)
        .map(|l| LeaderStep { l, enumerated: counts[l as usize - 1], closed: leader_pair_count_closed(l, q, m) })
        .collect();
    Ok(serde_json::to_string(&steps).expect("plain data"))
}

#[derive(Serialize)]
struct RunRow {
    r: u32,
    /// Exact count as a decimal string; it can exceed 2^53.
    count: String,
    share: f64,
}

/// Length-`s` sequences over `q` symbols with a zero run of length at least
/// `r`, for every `r`.
pub fn run_counts_json(q: u64, s: u32) -> Result<String, Error> {
    if !(2..=16).contains(&q) {
        return Err(Error::Precondition("q must lie in 2..=16".into()));
    }
    if !(1..=MAX_RUN_LENGTH).contains(&s) {
        return Err(Error::Precondition(format!("s must lie in 1..={MAX_RUN_LENGTH}")));
    }
    if (q as u128).checked_pow(s).is_none() {
        return Err(Error::Precondition("q^s must fit in 128 bits".into()));
    }
    let total = (q as f64).powi(s as i32);
    let rows: Vec<RunRow> = (1..=s)
        .map(|r| {
            let c = run_count_l(r, s, q);
            RunRow { r, count: c.to_string(), share: c as f64 / total }
        })
        .collect();
    Ok(serde_json::to_string(&rows).expect("plain data"))
}

fn js(r: Result<String, Error>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e.to_string()))
}

#[wasm_bindgen(js_name = exploreCode)]
pub fn explore_code(q: u32, m: u32, delta: u32, variant: &str) -> Result<String, JsValue> {
    js(code_json(q as u64, m, delta as u64, variant))
}

#[wasm_bindgen(js_name = leaderPairs)]
pub fn leader_pairs(q: u32, m: u32) -> Result<String, JsValue> {
    js(leader_pairs_json(q as u64, m))
}

#[wasm_bindgen(js_name = runCounts)]
pub fn run_counts(q: u32, s: u32) -> Result<String, JsValue> {
    js(run_counts_json(q as u64, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn explores_small_codes() {
        let v = parse(code_json(2, 4, 3, "overline").unwrap());
        assert_eq!((v["n"].as_u64(), v["k"].as_u64(), v["d_lower"].as_u64()), (Some(15), Some(6), Some(6)));
        assert_eq!(v["d_kind"], "exact");
        assert_eq!(v["k_closed"], 6);
        let v = parse(code_json(3, 3, 4, "plus").unwrap());
        assert_eq!(v["k_closed"], Value::Null);
        assert!(code_json(2, 20, 3, "overline").is_err());
        assert!(code_json(2, 4, 3, "sideways").is_err());
    }

    #[test]
    fn leader_staircase_agrees() {
        let v = parse(leader_pairs_json(3, 4).unwrap());
        let steps = v.as_array().unwrap();
        assert_eq!(steps.len(), 18);
        for s in steps {
            if !s["closed"].is_null() {
                assert_eq!(s["closed"], s["enumerated"]);
            }
        }
    }

    #[test]
    fn run_table() {
        let v = parse(run_counts_json(2, 3).unwrap());
        let counts: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["count"].as_str().unwrap()).collect();
        // length-3 binary words with a zero run of length >= 1, 2, 3
        assert_eq!(counts, ["7", "3", "1"]);
        assert!(run_counts_json(16, 40).is_err());
        assert!(run_counts_json(1, 4).is_err());
    }
}
