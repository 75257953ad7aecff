//! JSON shapes shared by the CLI, the browser demo and the verification
//! suites.

use num_bigint::BigInt;
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::algebra::Field;
use crate::forms::Form;
use crate::quadforms::CollapseWitness;

pub(crate) fn bigint_as_string<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// `{"field", "extension", "pairs": [[g, h], ...]}` with polynomials in the
/// text grammar of the parser.
pub fn witness_json<F: Field>(w: &CollapseWitness<F>) -> Value {
    let f = &w.field;
    json!({
        "field": f.spec().to_string(),
        "extension": w.extension,
        "pairs": w
            .pairs
            .iter()
            .map(|(g, h)| json!([g.display(f), h.display(f)]))
            .collect::<Vec<_>>(),
    })
}

pub fn forms_json<F: Field>(f: &F, forms: &[Form<F::Elem>]) -> Value {
    Value::Array(forms.iter().map(|g| Value::String(g.display(f))).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

/// One line of a verification report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub instance: String,
    pub verdict: Verdict,
    pub detail: String,
}

impl CheckReport {
    pub fn new(check: impl Into<String>, instance: impl Into<String>, verdict: Verdict, detail: impl Into<String>) -> Self {
        CheckReport {
            check: check.into(),
            instance: instance.into(),
            verdict,
            detail: detail.into(),
        }
    }
}
