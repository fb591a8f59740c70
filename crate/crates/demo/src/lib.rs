//! wasm-bindgen entry points for the browser page in `www/`.
//!
//! Every export returns a JSON string, either the result or `{"error": …}`,
//! so the same functions run unchanged in native tests.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rmtf::analysis::{failure_bound, kb, validate_params, DecoderShape};
use rmtf::subspace::rank_weight;
use rmtf::ParamSet;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Roundtrips are refused above this many F_q digits in C, to keep the page
/// responsive.
pub const MAX_ROUNDTRIP_DIGITS: usize = 200_000;

fn finish(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn finite(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

#[allow(clippy::too_many_arguments)]
fn params(q: u32, m: u32, n: u32, l: u32, k: u32, w: u32, t: u32, samples: u32, lambda: u32) -> ParamSet {
    let u = |x: u32| x as usize;
    ParamSet { q: q as u64, m: u(m), n: u(n), l: u(l), k: u(k), w: u(w), t: u(t), samples: u(samples), lambda }
}

/// Failure bound for H with `rows` rows and `cols` columns.
#[wasm_bindgen(js_name = failureBound)]
pub fn failure_bound_json(q: u32, m: u32, rows: u32, cols: u32, w: u32, t: u32, samples: u32) -> String {
    let shape = DecoderShape {
        q: q as u64,
        m: m as usize,
        rows: rows as usize,
        cols: cols as usize,
        w: w as usize,
        t: t as usize,
        samples: samples as usize,
    };
    finish(failure_bound(&shape).map_err(|e| e.to_string()).map(|b| {
        json!({
            "log2_p1": finite(b.log2_p1),
            "log2_p2": finite(b.log2_p2),
            "log2_total": finite(b.log2_total),
            "log2_p2_approx": finite(b.log2_p2_approx),
            "regime_ok": b.regime_ok,
            "precision": b.precision,
        })
    }))
}

/// Constraint report and sizes for a full parameter set.
#[wasm_bindgen(js_name = validateParams)]
#[allow(clippy::too_many_arguments)]
pub fn validate_json(q: u32, m: u32, n: u32, l: u32, k: u32, w: u32, t: u32, samples: u32, lambda: u32, statistical: bool) -> String {
    let r = validate_params(&params(q, m, n, l, k, w, t, samples, lambda), statistical);
    let constraints: Vec<Value> = r
        .constraints
        .iter()
        .map(|c| json!({ "name": c.name, "required": c.required, "actual": c.actual, "pass": c.pass }))
        .collect();
    finish(Ok(json!({
        "all_pass": r.all_pass(),
        "constraints": constraints,
        "log2_failure": r.failure.as_ref().map_or(Value::Null, |b| finite(b.log2_total)),
        "log2_epsilon": finite(r.log2_epsilon),
        "sizes": {
            "pk_bytes": r.sizes.pk, "pk_kb": kb(r.sizes.pk),
            "tk_bytes": r.sizes.tk, "tk_kb": kb(r.sizes.tk),
            "ct_bytes": r.sizes.ct, "ct_kb": kb(r.sizes.ct),
        },
    })))
}

/// Generates keys, evaluates on a sampled input and inverts, all from `seed`.
#[wasm_bindgen(js_name = roundtrip)]
#[allow(clippy::too_many_arguments)]
pub fn roundtrip_json(q: u32, m: u32, n: u32, l: u32, k: u32, w: u32, t: u32, samples: u32, seed: u32) -> String {
    finish(roundtrip(params(q, m, n, l, k, w, t, samples, 0), seed as u64))
}

fn roundtrip(p: ParamSet, seed: u64) -> Result<Value, String> {
    p.validate().map_err(|e| e.to_string())?;
    let digits = p.samples.saturating_mul(p.n + p.l).saturating_mul(p.m);
    if digits > MAX_ROUNDTRIP_DIGITS {
        return Err(format!("C would hold {digits} digits; the demo stops at {MAX_ROUNDTRIP_DIGITS}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (pk, tk) = rmtf::gen(&p, &mut rng).map_err(|e| e.to_string())?;
    let (x, e) = rmtf::sample_input(&pk, &mut rng).map_err(|e| e.to_string())?;
    let ct = rmtf::eval(&pk, &x, &e).map_err(|e| e.to_string())?;
    let sizes = json!({
        "pk_bytes": pk.to_bytes().len(),
        "tk_bytes": tk.to_bytes().len(),
        "ct_bytes": ct.to_bytes().len(),
    });
    Ok(match rmtf::invert(&pk, &tk, &ct) {
        Ok((x2, e2)) => json!({
            "recovered": x2 == x && e2 == e,
            "rank_weight": rank_weight(&e2),
            "sizes": sizes,
        }),
        Err(err) => json!({
            "recovered": false,
            "step_failed": err.decode_step().map(|s| s.to_string()),
            "reason": err.to_string(),
            "sizes": sizes,
        }),
    })
}
