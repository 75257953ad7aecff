//! Small subalgebras for spaces of linear and quadratic forms.
//!
//! The loop keeps a pool of linear forms and a list of quadrics. While the
//! quadrics reduced modulo the pool contain an element of rank at most
//! `2 k*`, that element is absorbed: it equals `sum x_s y_s + G` with `x_s`
//! in the pool and `G` a quadric in its own minimal set of variables, so the
//! cofactors `y_s` and a basis of those variables join the pool and the
//! element leaves the quadric list.

use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::algebra::{Field, Matrix};
use crate::bounds::{alpha, alpha_eta, eta_b2};
use crate::error::{Error, Result};
use crate::forms::{check_degrees, membership_in_subring, Form, GradedSubspace, LinearPool, SubringExpression};
use crate::json::{forms_json, witness_json, CheckReport, Verdict};
use crate::oracle::{is_regular_sequence, Budget};
use crate::quadforms::{collapse_witness, enumerate_min_rank, invariant_directions, CollapseWitness, QuadData};

#[derive(Clone, Debug)]
pub struct CollapseStep<F: Field> {
    /// Quadrics still in play when the step started.
    pub quadrics: usize,
    /// `k*` for that count; the step ran because the least rank was at most `2 k*`.
    pub threshold: usize,
    /// Coefficients of the absorbed element on the quadrics in play.
    pub coefficients: Vec<F::Elem>,
    pub element: Form<F::Elem>,
    /// The element modulo the pool before the step.
    pub reduced: Form<F::Elem>,
    pub rank: usize,
    /// A collapse of `reduced` into `ceil(rank/2)` products.
    pub witness: Option<CollapseWitness<F>>,
    pub added: Vec<Form<F::Elem>>,
    /// Position, among the input quadrics, of the one removed.
    pub dropped: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundRecord {
    pub claimed: BigUint,
    pub actual: usize,
}

#[derive(Clone, Debug)]
pub struct SubalgebraCertificate<F: Field> {
    pub field: F,
    pub nvars: usize,
    pub eta: Option<u32>,
    /// Echelon basis of the input space, linear forms first.
    pub inputs: Vec<Form<F::Elem>>,
    pub n1: usize,
    pub n2: usize,
    pub linear_gens: Vec<Form<F::Elem>>,
    pub quad_gens: Vec<Form<F::Elem>>,
    /// One per input, over the generators in the order linear then quadratic.
    pub rewrites: Vec<Option<SubringExpression<F::Elem>>>,
    pub log: Vec<CollapseStep<F>>,
    /// Largest field degree used by any collapse witness in the log. The
    /// generators themselves are always over the base field.
    pub extension: u32,
    pub bound: BoundRecord,
    /// Least rank of the final quadrics modulo the linear generators.
    pub final_min_rank: Option<usize>,
    /// Set when the stopping decision rested on a partial search (over Q).
    pub unverified_minimum: bool,
}

impl<F: Field> SubalgebraCertificate<F> {
    pub fn generators(&self) -> Vec<Form<F::Elem>> {
        self.linear_gens.iter().chain(&self.quad_gens).cloned().collect()
    }

    pub fn count(&self) -> usize {
        self.linear_gens.len() + self.quad_gens.len()
    }

    pub fn to_json(&self) -> Value {
        let f = &self.field;
        let rewrites: Vec<Value> = self
            .inputs
            .iter()
            .zip(&self.rewrites)
            .map(|(g, r)| {
                json!({
                    "form": g.display(f),
                    "expression": r.as_ref().map(|e| e.display(f)),
                })
            })
            .collect();
        let log: Vec<Value> = self
            .log
            .iter()
            .map(|s| {
                json!({
                    "quadrics": s.quadrics,
                    "threshold": s.threshold,
                    "coefficients": s.coefficients.iter().map(|c| f.format_elem(c)).collect::<Vec<_>>(),
                    "element": s.element.display(f),
                    "reduced": s.reduced.display(f),
                    "rank": s.rank,
                    "witness": s.witness.as_ref().map(witness_json),
                    "added": forms_json(f, &s.added),
                    "dropped": s.dropped + 1,
                })
            })
            .collect();
        let mut flags = Vec::new();
        if self.unverified_minimum {
            flags.push("unverified-minimum");
        }
        json!({
            "field": f.spec().to_string(),
            "nvars": self.nvars,
            "eta": self.eta,
            "dimensions": [self.n1, self.n2],
            "generators": {
                "linear": forms_json(f, &self.linear_gens),
                "quadratic": forms_json(f, &self.quad_gens),
            },
            "rewrites": rewrites,
            "log": log,
            "extension": self.extension,
            "bound": {
                "function": "etaB2",
                "claimed": self.bound.claimed.to_string(),
                "actual": self.bound.actual,
            },
            "final_min_rank": self.final_min_rank,
            "flags": flags,
        })
    }

    /// Plain-text summary for terminals.
    pub fn summary(&self) -> String {
        let f = &self.field;
        let mut out = format!(
            "input dimensions (n1, n2) = ({}, {}); {} collapse step(s)\n",
            self.n1,
            self.n2,
            self.log.len()
        );
        for (i, s) in self.log.iter().enumerate() {
            out += &format!(
                "  step {}: {} has rank {} <= {} mod the pool; added {} linear form(s)\n",
                i + 1,
                s.element.display(f),
                s.rank,
                2 * s.threshold,
                s.added.len()
            );
        }
        let gens: Vec<String> = self.generators().iter().map(|g| g.display(f)).collect();
        out += &format!("generators ({}): {}\n", self.count(), gens.join(", "));
        out += &format!("bound etaB2 = {}, used {}\n", self.bound.claimed, self.bound.actual);
        if self.unverified_minimum {
            out += "warning: the final least rank comes from a partial search\n";
        }
        out
    }
}

fn threshold(eta: Option<u32>, m: usize) -> Result<usize> {
    let v = match eta {
        Some(e) => alpha_eta(e, m as u64)?,
        None => alpha(m as u64)?,
    };
    v.to_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::BudgetExceeded("threshold does not fit a machine word".into()))
}

/// A basis of the smallest space of linear forms whose polynomial ring
/// contains the quadric.
fn minimal_linear_space<F: Field>(f: &F, q: &QuadData<F::Elem>) -> Vec<Form<F::Elem>> {
    let n = q.n;
    let k0 = invariant_directions(f, std::slice::from_ref(q));
    let ann = if k0.is_empty() {
        Matrix::identity(f, n).to_rows()
    } else {
        Matrix::from_rows(k0, n).kernel_basis(f)
    };
    ann.iter().map(|c| Form::linear(f, c)).collect()
}

fn reduced_images<F: Field>(f: &F, pool: &LinearPool<F::Elem>, quads: &[Form<F::Elem>]) -> Vec<QuadData<F::Elem>> {
    quads.iter().map(|g| QuadData::from_form(f, &pool.reduce(f, g))).collect()
}

/// Runs the absorption loop on a space of linear and quadratic forms.
pub fn construct<F: Field>(
    f: &F,
    v: &GradedSubspace<F::Elem>,
    eta: Option<u32>,
    budget: &Budget,
) -> Result<SubalgebraCertificate<F>> {
    check_degrees(v, 2)?;
    let n = v.nvars();
    let linear = v.basis(1).to_vec();
    let input_quads = v.basis(2).to_vec();
    let (n1, n2) = (linear.len(), input_quads.len());
    let mut pool = LinearPool::from_independent(f, n, &linear)?;
    // (position among the inputs, form)
    let mut quads: Vec<(usize, Form<F::Elem>)> = input_quads.iter().cloned().enumerate().collect();
    let mut log = Vec::new();
    let mut final_min_rank = None;
    let mut unverified_minimum = false;
    let mut extension = 1;
    while !quads.is_empty() {
        let m = quads.len();
        let k = threshold(eta, m)?;
        let forms: Vec<Form<F::Elem>> = quads.iter().map(|(_, g)| g.clone()).collect();
        let images = reduced_images(f, &pool, &forms);
        let (rank, c, partial) = enumerate_min_rank(f, &images, budget)?;
        if rank > 2 * k {
            final_min_rank = Some(rank);
            unverified_minimum = partial;
            break;
        }
        let element = forms
            .iter()
            .zip(&c)
            .filter(|(_, t)| !f.is_zero(t))
            .fold(Form::zero(n, 2), |acc, (g, t)| acc.add(f, &g.scale(f, t)));
        let (cofactors, reduced) = pool.divide(f, &element);
        let q = QuadData::from_form(f, &reduced);
        let witness = match collapse_witness(f, &reduced, rank.div_ceil(2)) {
            Ok(w) => w,
            Err(Error::Unsupported(_)) => None,
            Err(e) => return Err(e),
        };
        if let Some(w) = &witness {
            extension = extension.max(w.extension);
        }
        let mut added = Vec::new();
        for l in cofactors.iter().chain(&minimal_linear_space(f, &q)) {
            if !l.is_zero() && pool.insert(f, l) {
                added.push(l.clone());
            }
        }
        let drop_at = c.iter().position(|t| !f.is_zero(t)).expect("projective point");
        let dropped = quads.remove(drop_at).0;
        log.push(CollapseStep {
            quadrics: m,
            threshold: k,
            coefficients: c,
            element,
            reduced,
            rank,
            witness,
            added,
            dropped,
        });
    }
    let linear_gens = pool.forms();
    let quad_gens: Vec<Form<F::Elem>> = quads.into_iter().map(|(_, g)| g).collect();
    let gens: Vec<Form<F::Elem>> = linear_gens.iter().chain(&quad_gens).cloned().collect();
    let inputs: Vec<Form<F::Elem>> = linear.iter().chain(&input_quads).cloned().collect();
    let rewrites = inputs.iter().map(|g| membership_in_subring(f, g, &gens)).collect();
    let claimed = eta_b2(eta, n1 as u64, n2 as u64)?.0;
    Ok(SubalgebraCertificate {
        field: f.clone(),
        nvars: n,
        eta,
        inputs,
        n1,
        n2,
        bound: BoundRecord {
            claimed,
            actual: gens.len(),
        },
        linear_gens,
        quad_gens,
        rewrites,
        log,
        extension,
        final_min_rank,
        unverified_minimum,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Checks {
    pub containment: bool,
    pub count: bool,
    pub regular_sequence: bool,
}

impl Checks {
    pub fn all() -> Self {
        Checks {
            containment: true,
            count: true,
            regular_sequence: true,
        }
    }
}

/// Re-derives the certificate's claims independently of the stored rewrites.
pub fn verify<F: Field>(
    cert: &SubalgebraCertificate<F>,
    checks: Checks,
    instance: &str,
    budget: &Budget,
) -> Vec<CheckReport> {
    let f = &cert.field;
    let gens = cert.generators();
    let mut out = Vec::new();
    if checks.containment {
        let independent = LinearPool::from_independent(f, cert.nvars, &cert.linear_gens).is_ok();
        let missing: Vec<String> = cert
            .inputs
            .iter()
            .filter(|g| match membership_in_subring(f, g, &gens) {
                Some(e) => e.expand(f, &gens, cert.nvars, g.degree()) != **g,
                None => true,
            })
            .map(|g| g.display(f))
            .collect();
        let (verdict, detail) = if !independent {
            (Verdict::Fail, "linear generators are dependent".to_string())
        } else if missing.is_empty() {
            (Verdict::Pass, format!("{} input forms rewritten", cert.inputs.len()))
        } else {
            (Verdict::Fail, format!("not in the subalgebra: {}", missing.join("; ")))
        };
        out.push(CheckReport::new("containment", instance, verdict, detail));
    }
    if checks.count {
        let report = match eta_b2(cert.eta, cert.n1 as u64, cert.n2 as u64) {
            Ok(b) => {
                let ok = BigUint::from(cert.count()) <= b.0 && b.0 == cert.bound.claimed;
                let verdict = if ok { Verdict::Pass } else { Verdict::Fail };
                CheckReport::new("count", instance, verdict, format!("{} generators, bound {}", cert.count(), b.0))
            }
            Err(e) => CheckReport::new("count", instance, Verdict::Skipped, e.to_string()),
        };
        out.push(report);
    }
    if checks.regular_sequence {
        let report = match is_regular_sequence(f, &gens, budget) {
            Ok(true) => CheckReport::new("regular_sequence", instance, Verdict::Pass, format!("{} forms", gens.len())),
            Ok(false) => CheckReport::new(
                "regular_sequence",
                instance,
                Verdict::Fail,
                "codimension below the generator count",
            ),
            Err(e @ Error::BudgetExceeded(_)) => {
                CheckReport::new("regular_sequence", instance, Verdict::Skipped, e.to_string())
            }
            Err(e) => CheckReport::new("regular_sequence", instance, Verdict::Fail, e.to_string()),
        };
        out.push(report);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Gf;
    use crate::forms::parse_forms_in;

    fn space(f: &Gf, src: &str, n: usize) -> GradedSubspace<u64> {
        GradedSubspace::from_forms(f, n, &parse_forms_in(f, src, Some(n)).unwrap())
    }

    fn all_pass(reports: &[CheckReport]) -> bool {
        reports.iter().all(|r| r.verdict == Verdict::Pass)
    }

    #[test]
    fn two_products_trace() {
        let f = Gf::prime(5).unwrap();
        let v = space(&f, "x1*x2\nx3*x4", 4);
        let cert = construct(&f, &v, None, &Budget::default()).unwrap();
        let lin: Vec<String> = cert.linear_gens.iter().map(|g| g.display(&f)).collect();
        let quad: Vec<String> = cert.quad_gens.iter().map(|g| g.display(&f)).collect();
        assert_eq!(lin, ["x1", "x2"]);
        assert_eq!(quad, ["x3*x4"]);
        assert_eq!(cert.count(), 3);
        assert_eq!(cert.bound.claimed, BigUint::from(4u32));
        assert_eq!(cert.log.len(), 1);
        assert_eq!(cert.log[0].rank, 2);
        assert_eq!(cert.final_min_rank, Some(2));
        assert!(all_pass(&verify(&cert, Checks::all(), "trace", &Budget::default())));
    }

    #[test]
    fn single_square_stays() {
        // one quadric needs only to be nonzero modulo the pool
        let f = Gf::prime(5).unwrap();
        let cert = construct(&f, &space(&f, "x1^2", 3), None, &Budget::default()).unwrap();
        assert_eq!(cert.count(), 1);
        assert!(cert.log.is_empty());
        // with two squares the first collapses to its root
        let cert = construct(&f, &space(&f, "x1^2\nx2^2", 3), None, &Budget::default()).unwrap();
        assert_eq!(cert.count(), 2);
        assert_eq!(cert.linear_gens[0].display(&f), "x1");
        assert_eq!(cert.quad_gens[0].display(&f), "x2^2");
    }

    #[test]
    fn strong_space_is_kept() {
        let f = Gf::prime(7).unwrap();
        let v = space(&f, "x1*x2 + x3*x4 + x5*x6\nx1*x3 + x2*x5 + x4*x6", 6);
        let cert = construct(&f, &v, None, &Budget::default()).unwrap();
        assert!(cert.log.is_empty());
        assert_eq!(cert.quad_gens, v.basis(2).to_vec());
    }

    #[test]
    fn tampering_is_caught() {
        let f = Gf::prime(5).unwrap();
        let v = space(&f, "x1*x2\nx3*x4", 4);
        let mut cert = construct(&f, &v, None, &Budget::default()).unwrap();
        cert.linear_gens.remove(0);
        let reports = verify(&cert, Checks::all(), "tampered", &Budget::default());
        let c = &reports[0];
        assert_eq!(c.verdict, Verdict::Fail);
        assert!(c.detail.contains("x1*x2"), "{}", c.detail);
    }

    #[test]
    fn linear_inputs_and_eta() {
        let f = Gf::prime(3).unwrap();
        let v = space(&f, "x1 + x2\nx1*x3 + x2^2\nx4*x5 - x6^2", 6);
        for eta in [None, Some(0), Some(2)] {
            let cert = construct(&f, &v, eta, &Budget::default()).unwrap();
            assert!(all_pass(&verify(&cert, Checks::all(), "mixed", &Budget::default())));
            assert_eq!(cert.log.len() + cert.quad_gens.len(), 2);
        }
    }

    #[test]
    fn certificate_json_shape() {
        let f = Gf::prime(5).unwrap();
        let cert = construct(&f, &space(&f, "x1*x2\nx3*x4", 4), None, &Budget::default()).unwrap();
        let j = cert.to_json();
        assert_eq!(j["bound"]["claimed"], "4");
        assert_eq!(j["generators"]["linear"][0], "x1");
        assert_eq!(j["rewrites"][0]["expression"], "g1*g2");
        assert!(cert.summary().contains("generators (3)"));
    }
}
