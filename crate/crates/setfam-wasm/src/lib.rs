//! Browser bindings for the `setfam` library.  Each export takes and
//! returns JSON strings so the page needs no generated glue beyond the
//! standard wasm-bindgen loader; the same functions compile and run on
//! native targets, which is how this crate is unit-tested.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use setfam::constructions::{build_from_label_str, fn_weight};
use setfam::error::SetFamError;
use setfam::family::Family;
use setfam::genset::generating_set;
use setfam::transforms::{find_sharp_pairs, find_sharp_triples, split_shorten_transform_with_log};

/// Largest ground-set size for which the exported helpers will materialise
/// and return full member lists.  Keeps worst-case payloads around a few
/// megabytes.
const MAX_DEMO_GROUND: u8 = 12;

fn err_json(e: &SetFamError) -> String {
    json!({"ok": false, "error": e.to_string()}).to_string()
}

fn weight_json(w: &setfam::dyadic::DyadicRational) -> Value {
    json!({
        "num": w.numerator().to_string(),
        "exp": w.exponent(),
        "approx": w.to_f64(),
    })
}

/// Weights of the `Fn:<n>` constructions for odd `n` from 7 to `n_max`
/// (clamped to 2001), as a JSON array of `{n, num, exp, approx}` rows.
/// The `approx` field is the nearest `f64`; `num`/`exp` are exact.
#[wasm_bindgen]
pub fn weight_curve(n_max: u32) -> String {
    let n_max = u64::from(n_max).clamp(7, 2001);
    let mut rows = Vec::new();
    let mut n = 7u64;
    while n <= n_max {
        let w = fn_weight(n).expect("odd n >= 7 is in range");
        rows.push(json!({
            "n": n,
            "num": w.numerator().to_string(),
            "exp": w.exponent(),
            "approx": w.to_f64(),
        }));
        n += 2;
    }
    Value::Array(rows).to_string()
}

/// Builds a named family (`Fn:<n>`, `katona:<n>:<k>`, `extend:<label>:<k>`)
/// and returns `{ok, label, n, sets, weight, members}`.  File paths are not
/// resolvable in the browser, so `extend` bases must themselves be labels.
/// Members are included only up to a size cap; past it the summary alone is
/// returned with `members: null`.
#[wasm_bindgen]
pub fn construct_family(label: &str) -> String {
    let resolver = |p: &str| -> setfam::error::Result<Family> {
        Err(SetFamError::InvalidParameter(format!(
            "file paths are not available in the browser demo \
             (tried to read {p:?}); use a label like Fn:7"
        )))
    };
    let named = match build_from_label_str(label, &resolver) {
        Ok(named) => named,
        Err(e) => return err_json(&e),
    };
    let f = &named.family;
    let members: Value = if f.n() <= MAX_DEMO_GROUND {
        f.iter().map(|m| m.elements()).collect::<Vec<_>>().into()
    } else {
        Value::Null
    };
    json!({
        "ok": true,
        "label": named.label,
        "n": f.n(),
        "sets": f.len(),
        "weight": weight_json(&f.weight()),
        "members": members,
    })
    .to_string()
}

/// Parses a family in the text format (`n=<int>` header, one
/// comma-separated set per line) and reports its structure: exact weight,
/// the two standard intersection predicates, compression status, the
/// generators of its up-closure, sharp pairs/triples, and — when the
/// closure is left-compressed and unobstructed — the result of the
/// split-and-shorten transform with its step log.
#[wasm_bindgen]
pub fn analyze_family(text: &str) -> String {
    let f = match Family::from_text(text) {
        Ok(f) => f,
        Err(e) => return err_json(&e),
    };
    if f.n() > MAX_DEMO_GROUND {
        return err_json(&SetFamError::GroundSize {
            n: u64::from(f.n()),
            reason: "the browser demo analyses ground sets up to 12",
        });
    }
    let n = f.n();
    let up = f.is_up_set();
    let closure = match f.up_closure() {
        Ok(c) => c,
        Err(e) => return err_json(&e),
    };
    let gens = match generating_set(&closure) {
        Ok(g) => g,
        Err(e) => return err_json(&e),
    };
    let pairs = find_sharp_pairs(&gens);
    let triples = find_sharp_triples(&gens);

    let mut report = json!({
        "ok": true,
        "n": n,
        "sets": f.len(),
        "weight": weight_json(&f.weight()),
        "up_set": up,
        "left_compressed": f.is_left_compressed(),
        "intersecting_3wise_1": f.is_r_wise_k_intersecting(3, 1),
        "intersecting_2wise_3": f.is_r_wise_k_intersecting(2, 3),
        "almost_trivial": setfam::transforms::is_almost_trivial(&f),
        "closure_sets": closure.len(),
        "generators": gens.iter().map(|g| g.elements()).collect::<Vec<_>>(),
        "sharp_pairs": pairs
            .iter()
            .map(|p| json!({
                "members": [p.a.elements(), p.b.elements()],
                "i": p.i,
                "j": p.j,
            }))
            .collect::<Vec<_>>(),
        "sharp_triples": triples
            .iter()
            .map(|t| json!({
                "members": [t.a.elements(), t.b.elements(), t.c.elements()],
            }))
            .collect::<Vec<_>>(),
    });

    // The transform is shown for the up-closure: the analyzer's structural
    // panel already explains when the input itself was not an up-set.
    report["transform"] = match split_shorten_transform_with_log(&closure) {
        Ok(outcome) => json!({
            "eligible": true,
            "after_sets": outcome.family.len(),
            "after_weight": weight_json(&outcome.family.weight()),
            "steps": serde_json::to_value(&outcome.steps).expect("steps serialize"),
        }),
        Err(e) => json!({"eligible": false, "reason": e.to_string()}),
    };
    report.to_string()
}
