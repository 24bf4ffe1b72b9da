//! Browser bindings: thin string-in/string-out wrappers over the library,
//! built for the single-page demo in `www/`. Every function returns a JSON
//! document; failures come back as `{"error": "..."}` so the page never
//! deals with exceptions.

use flagg::determinant::grothendieck_determinant;
use flagg::perm::{
    diagram, essential_set, flagged_partition_of, flagging_set, grothendieck_divdiff,
    grothendieck_perm, pattern_2143, Permutation,
};
use flagg::poly::Polynomial;
use flagg::render::{to_json, to_latex};
use flagg::tableaux::{enumerate_tableaux, grothendieck_tableau, FlaggedPartition};
use wasm_bindgen::prelude::wasm_bindgen;

fn parse_u32_list(s: &str) -> Result<Vec<u32>, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<u32>()
                .map_err(|_| format!("`{part}` is not a non-negative integer"))
        })
        .collect()
}

fn parse_shape(shape: &str, flag: &str) -> Result<FlaggedPartition, String> {
    let lambda = parse_u32_list(shape)?;
    let flag = parse_u32_list(flag)?;
    if lambda.is_empty() && flag.is_empty() {
        return Ok(FlaggedPartition::empty());
    }
    FlaggedPartition::new(lambda, flag).map_err(|e| e.to_string())
}

fn fail(message: impl std::fmt::Display) -> String {
    serde_json::json!({ "error": message.to_string() }).to_string()
}

fn polynomial_doc(p: &Polynomial) -> serde_json::Value {
    serde_json::json!({
        "text": p.to_string(),
        "latex": to_latex(p),
        "terms": p.num_terms(),
        "json": serde_json::from_str::<serde_json::Value>(&to_json(p)).unwrap(),
    })
}

/// Computes the polynomial of `shape`/`flag` (comma lists) by the given
/// method (`tableau`, `determinant` or `divdiff`).
#[wasm_bindgen]
pub fn compute(shape: &str, flag: &str, method: &str) -> String {
    let fp = match parse_shape(shape, flag) {
        Ok(fp) => fp,
        Err(e) => return fail(e),
    };
    let result = if fp.is_zero_case() {
        Ok(Polynomial::zero())
    } else {
        match method {
            "tableau" => grothendieck_tableau(&fp),
            "determinant" => grothendieck_determinant(&fp),
            "divdiff" => grothendieck_divdiff(&fp),
            other => return fail(format!("unknown method `{other}`")),
        }
    };
    match result {
        Ok(p) => {
            let mut doc = polynomial_doc(&p);
            let obj = doc.as_object_mut().unwrap();
            obj.insert("shape".into(), serde_json::json!(fp.lambda()));
            obj.insert("flag".into(), serde_json::json!(fp.flag()));
            obj.insert("method".into(), serde_json::json!(method));
            doc.to_string()
        }
        Err(e) => fail(e),
    }
}

/// Lists the flagged set-valued tableaux of `shape`/`flag`, at most
/// `limit` of them (0 means no limit), with the total count.
#[wasm_bindgen]
pub fn list_tableaux(shape: &str, flag: &str, limit: u32) -> String {
    let fp = match parse_shape(shape, flag) {
        Ok(fp) => fp,
        Err(e) => return fail(e),
    };
    let mut shown: Vec<String> = Vec::new();
    let mut count: u64 = 0;
    for t in enumerate_tableaux(&fp) {
        if limit == 0 || shown.len() < limit as usize {
            shown.push(t.to_string());
        }
        count += 1;
    }
    serde_json::json!({
        "shape": fp.lambda(),
        "flag": fp.flag(),
        "count": count,
        "shown": shown,
    })
    .to_string()
}

/// Analyzes a permutation in one-line notation (`2,1,4,3`): pattern
/// status, diagram, essential set, shape, and optionally the polynomial.
#[wasm_bindgen]
pub fn perm_report(one_line: &str, with_polynomial: bool) -> String {
    let w: Permutation = match one_line.parse() {
        Ok(w) => w,
        Err(e) => return fail(e),
    };
    let pattern = pattern_2143(&w);
    let mut doc = serde_json::json!({
        "permutation": w.one_line(),
        "length": w.length(),
        "code": w.code(),
        "vexillary": pattern.is_none(),
        "diagram": diagram(&w).into_iter().collect::<Vec<_>>(),
        "essential_set": essential_set(&w).into_iter().collect::<Vec<_>>(),
    });
    let obj = doc.as_object_mut().unwrap();
    if let Some(pos) = pattern {
        obj.insert("pattern_2143".into(), serde_json::json!(pos));
    } else {
        let fp = match flagged_partition_of(&w) {
            Ok(fp) => fp,
            Err(e) => return fail(e),
        };
        obj.insert("lambda".into(), serde_json::json!(fp.lambda()));
        obj.insert("flag".into(), serde_json::json!(fp.flag()));
        if !w.is_identity() {
            match flagging_set(&w) {
                Ok(fs) => obj.insert("flagging_set".into(), serde_json::json!(fs.pairs())),
                Err(e) => return fail(e),
            };
        }
    }
    if with_polynomial {
        match grothendieck_perm(&w) {
            Ok(p) => obj.insert("polynomial".into(), polynomial_doc(&p)),
            Err(e) => return fail(e),
        };
    }
    doc.to_string()
}
