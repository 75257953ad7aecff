//! Commands that read polynomials over a chosen field.

use anyhow::bail;
use formstrength::algebra::Field;
use formstrength::forms::{parse_forms_in, Form, GradedSubspace};
use formstrength::json::{witness_json, Verdict};
use formstrength::oracle::{
    groebner_with_budget, hilbert_function, is_regular_sequence, krull_dim, singular_codim, Budget, MonomialOrder,
};
use formstrength::quadforms::{
    classify_all_reducible, collapse_witness, jrank_quadric, max_rank_element, normal_form, quad_rank,
    reduced_discriminant, space_min_rank, Discriminant, ReducibleClassification,
};
use formstrength::subalgebra::{construct, verify, Checks};
use formstrength::Error;
use serde_json::{json, Value};

use crate::output::Outcome;
use crate::{Command, Input, OrderArg};

fn read<F: Field>(f: &F, input: &Input) -> anyhow::Result<Vec<Form<F::Elem>>> {
    let forms = parse_forms_in(f, &input.text()?, input.nvars())?;
    if forms.is_empty() {
        bail!(Error::EmptySpace);
    }
    Ok(forms)
}

/// One object for a single form, an array otherwise.
fn one_or_many(mut items: Vec<Value>) -> Value {
    if items.len() == 1 {
        items.pop().expect("one")
    } else {
        Value::Array(items)
    }
}

fn space<F: Field>(f: &F, forms: &[Form<F::Elem>]) -> GradedSubspace<F::Elem> {
    GradedSubspace::from_forms(f, forms[0].nvars(), forms)
}

fn rank_json<F: Field>(f: &F, g: &Form<F::Elem>) -> anyhow::Result<Value> {
    let rank = quad_rank(f, g)?;
    let normal = match normal_form(f, g) {
        Ok(nf) => json!({
            "canonical": nf.canonical.display(&nf.field),
            "field": nf.field.spec().to_string(),
            "extension": nf.extension,
        }),
        Err(Error::Unsupported(why)) => json!({ "unavailable": why }),
        Err(e) => return Err(e.into()),
    };
    let disc = match reduced_discriminant(f, g, g.nvars())? {
        Discriminant::Value(v) => json!(f.format_elem(&v)),
        Discriminant::CriterionByRank { full_rank } => json!({ "full_rank": full_rank }),
    };
    Ok(json!({
        "form": g.display(f),
        "nvars": g.nvars(),
        "rank": rank,
        "normal_form": normal,
        "discriminant": disc,
    }))
}

fn classification_json<F: Field>(f: &F, c: &ReducibleClassification<F>) -> Value {
    match c {
        ReducibleClassification::CommonLinearFactor { field, extension, factor } => json!({
            "kind": c.tag(),
            "factor": factor.display(field),
            "field": field.spec().to_string(),
            "extension": extension,
        }),
        ReducibleClassification::TwoVariableSpace { u, v } => {
            json!({ "kind": c.tag(), "u": u.display(f), "v": v.display(f) })
        }
        ReducibleClassification::Char2AllSquares => json!({ "kind": c.tag() }),
        ReducibleClassification::NotAllReducible { field, extension, witness, rank } => json!({
            "kind": c.tag(),
            "witness": witness.display(field),
            "rank": rank,
            "field": field.spec().to_string(),
            "extension": extension,
        }),
    }
}

pub fn run<F: Field>(f: &F, cmd: &Command, budget: &Budget) -> anyhow::Result<Outcome> {
    match cmd {
        Command::Rank(input) => {
            let items = read(f, input)?.iter().map(|q| rank_json(f, q)).collect::<anyhow::Result<_>>()?;
            Ok(Outcome::json(&one_or_many(items)))
        }
        Command::Strength(input) => {
            let mut items = Vec::new();
            for q in read(f, input)? {
                let rank = quad_rank(f, &q)?;
                if q.is_zero() {
                    bail!(Error::ZeroForm);
                }
                items.push(json!({
                    "form": q.display(f),
                    "rank": rank,
                    "strength": rank.div_ceil(2) - 1,
                    "jrank": jrank_quadric(f, &q)?,
                }));
            }
            Ok(Outcome::json(&one_or_many(items)))
        }
        Command::Collapse { input, k } => {
            let mut items = Vec::new();
            for q in read(f, input)? {
                let w = collapse_witness(f, &q, *k)?;
                items.push(json!({
                    "form": q.display(f),
                    "k": k,
                    "witness": w.as_ref().map(witness_json),
                }));
            }
            Ok(Outcome::json(&one_or_many(items)))
        }
        Command::Classify { input, backend } => {
            let forms = read(f, input)?;
            let v = space(f, &forms);
            let class = classify_all_reducible(f, &v, budget)?;
            let class_json = classification_json(f, &class);
            let m = space_min_rank(f, &v, (*backend).into(), budget)?;
            let (max_form, max_rank) = max_rank_element(f, &v, budget)?;
            Ok(Outcome::json(&json!({
                "field": f.spec().to_string(),
                "dimension": v.basis(2).len(),
                "all_reducible": class_json,
                "min_rank": {
                    "rank": m.rank,
                    "element": m.element.as_ref().map(|e| e.display(f)),
                    "coefficients": m.coefficients.as_ref().map(|c| c.iter().map(|x| f.format_elem(x)).collect::<Vec<_>>()),
                    "rational_only": m.rational_only,
                    "heuristic": m.heuristic,
                },
                "strength": m.rank.div_ceil(2).saturating_sub(1),
                "max_rank": { "rank": max_rank, "element": max_form.display(f) },
            })))
        }
        Command::Subalgebra { input, eta, out, verify: run_checks } => {
            let forms = read(f, input)?;
            let v = space(f, &forms);
            let cert = construct(f, &v, *eta, budget)?;
            let mut doc = cert.to_json();
            let mut verdict = Verdict::Pass;
            if *run_checks {
                let reports = verify(&cert, Checks::all(), "input", budget);
                if reports.iter().any(|r| r.verdict == Verdict::Fail) {
                    verdict = Verdict::Fail;
                } else if reports.iter().any(|r| r.verdict == Verdict::Skipped) {
                    verdict = Verdict::Skipped;
                }
                doc["checks"] = serde_json::to_value(&reports)?;
            }
            let text = serde_json::to_string_pretty(&doc)? + "\n";
            let summary = cert.summary();
            Ok(match out {
                Some(path) => {
                    std::fs::write(path, &text)?;
                    Outcome {
                        stdout: summary + &format!("certificate written to {}\n", path.display()),
                        stderr: None,
                        verdict,
                    }
                }
                None => Outcome {
                    stdout: text,
                    stderr: Some(summary),
                    verdict,
                },
            })
        }
        Command::Gb { input, order, hf, singular } => {
            let forms = read(f, input)?;
            let n = forms[0].nvars();
            let ord = match order {
                OrderArg::Grevlex => MonomialOrder::Grevlex,
                OrderArg::Lex => MonomialOrder::lex(n),
            };
            let gb = groebner_with_budget(f, &forms, &ord, budget)?;
            let basis = gb.forms(f);
            let leading: Vec<String> = gb
                .leading_monomials()
                .into_iter()
                .map(|m| {
                    let mut t = Form::zero(n, m.degree());
                    t.add_term(f, m, f.one());
                    t.display(f)
                })
                .collect();
            let dim = match krull_dim(&gb) {
                Ok(d) => json!(d),
                Err(Error::EmptyVariety) => Value::Null,
                Err(e) => return Err(e.into()),
            };
            let mut doc = json!({
                "field": f.spec().to_string(),
                "nvars": n,
                "order": match order { OrderArg::Grevlex => "grevlex", OrderArg::Lex => "lex" },
                "basis": basis.iter().map(|b| b.display(f)).collect::<Vec<_>>(),
                "leading": leading,
                "krull_dim": dim,
                "hilbert": hilbert_function(&gb, *hf),
                "regular_sequence": is_regular_sequence(f, &forms, budget)?,
            });
            if *singular {
                doc["singular_codim"] = json!(singular_codim(f, &forms, budget)?);
            }
            Ok(Outcome::json(&doc))
        }
        Command::Bounds(_) | Command::Verify { .. } => unreachable!("handled without a field"),
    }
}
