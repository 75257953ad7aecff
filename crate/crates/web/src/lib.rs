//! Browser bindings. Every call takes plain strings and numbers and returns
//! a JSON string; errors come back as `{"error": ...}`.

use formstrength::algebra::{CharClass, Field, FieldSpec, Gf, Rationals};
use formstrength::bounds;
use formstrength::forms::{parse_forms_in, GradedSubspace};
use formstrength::json::witness_json;
use formstrength::oracle::Budget;
use formstrength::quadforms::{collapse_witness, jrank_quadric, normal_form, quad_rank};
use formstrength::subalgebra::{construct, verify, Checks};
use formstrength::{Error, Result};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

fn respond(r: Result<Value>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

/// Budgets sized so a page never hangs for long.
fn budget() -> Budget {
    Budget {
        max_candidates: 200_000,
        ..Budget::default()
    }
}

fn report<F: Field>(f: &F, text: &str) -> Result<Value> {
    let forms = parse_forms_in(f, text, None)?;
    let mut out = Vec::new();
    for q in &forms {
        let rank = quad_rank(f, q)?;
        if q.is_zero() {
            return Err(Error::ZeroForm);
        }
        let strength = rank.div_ceil(2) - 1;
        let normal = match normal_form(f, q) {
            Ok(nf) => json!({ "canonical": nf.canonical.display(&nf.field), "field": nf.field.spec().to_string() }),
            Err(Error::Unsupported(why)) => json!({ "unavailable": why }),
            Err(e) => return Err(e),
        };
        let witness = collapse_witness(f, q, strength + 1)?;
        out.push(json!({
            "form": q.display(f),
            "rank": rank,
            "strength": strength,
            "jrank": jrank_quadric(f, q)?,
            "normal_form": normal,
            "collapse": witness.as_ref().map(witness_json),
        }));
    }
    Ok(Value::Array(out))
}

fn subalgebra_json<F: Field>(f: &F, text: &str, eta: Option<u32>) -> Result<Value> {
    let forms = parse_forms_in(f, text, None)?;
    if forms.is_empty() {
        return Err(Error::EmptySpace);
    }
    let v = GradedSubspace::from_forms(f, forms[0].nvars(), &forms);
    let b = budget();
    let cert = construct(f, &v, eta, &b)?;
    let mut doc = cert.to_json();
    doc["checks"] = serde_json::to_value(verify(&cert, Checks::all(), "input", &b)).expect("serializable");
    doc["summary"] = json!(cert.summary());
    Ok(doc)
}

fn on_field<T>(field: &str, q: impl FnOnce(&Rationals) -> Result<T>, gf: impl FnOnce(&Gf) -> Result<T>) -> Result<T> {
    match field.parse::<FieldSpec>()? {
        FieldSpec::Rationals => q(&Rationals),
        other => gf(&Gf::from_spec(&other)?),
    }
}

/// Rank, strength, normal form and a least collapse of each quadric, one per line.
#[wasm_bindgen]
pub fn quadric_report(field: &str, text: &str) -> String {
    respond(on_field(field, |f| report(f, text), |f| report(f, text)))
}

/// One-parameter bound function evaluated for `lo..=hi`.
#[wasm_bindgen]
pub fn bound_table(function: &str, lo: u32, hi: u32) -> String {
    let cc = CharClass::NotTwoThree;
    let eval = |x: u64| -> Result<String> {
        let v = match function {
            "alpha" => bounds::alpha(x)?,
            "A3" => bounds::a3(cc, x)?,
            "K3" => bounds::k3(cc, x)?,
            "K4" => bounds::k4(cc, x)?,
            "J2" => bounds::j2(x),
            "J3" => bounds::j3(cc, x),
            "pd-quadrics" => bounds::pd_bound_quadrics(x)?,
            other => return Err(Error::InvalidArgument(format!("unknown bound function `{other}`"))),
        };
        Ok(v.to_string())
    };
    respond((lo..=hi).map(|x| Ok(json!({ "arg": x, "value": eval(u64::from(x))? }))).collect::<Result<Vec<_>>>().map(Value::Array))
}

/// The two-degree bound over `0..=max` squared, with the closed-form comparison.
#[wasm_bindgen]
pub fn b2_table(eta: u32, max: u32) -> String {
    let rows = (0..=u64::from(max)).flat_map(|n1| (0..=u64::from(max)).map(move |n2| (n1, n2))).map(|(n1, n2)| {
        let a = bounds::eta_b2_audit(Some(eta), n1, n2)?;
        Ok(json!({
            "n1": n1,
            "n2": n2,
            "value": a.value.to_string(),
            "closed_form": a.closed_form.to_string(),
            "differs": a.differs(),
        }))
    });
    respond(rows.collect::<Result<Vec<_>>>().map(Value::Array))
}

/// Subalgebra certificate with its checks; a negative `eta` means none.
#[wasm_bindgen]
pub fn subalgebra(field: &str, text: &str, eta: i32) -> String {
    let eta = u32::try_from(eta).ok();
    respond(on_field(field, |f| subalgebra_json(f, text, eta), |f| subalgebra_json(f, text, eta)))
}
