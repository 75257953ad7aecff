use super::form::Form;
use crate::algebra::{Field, Matrix};

/// A polynomial in generators `g1, g2, ...`: a list of exponent vectors over
/// the generators with coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubringExpression<E> {
    pub ngens: usize,
    pub terms: Vec<(Vec<u32>, E)>,
}

impl<E: Clone + PartialEq> SubringExpression<E> {
    /// Substitutes the generators back in.
    pub fn expand<F: Field<Elem = E>>(&self, f: &F, gens: &[Form<E>], nvars: usize, degree: u32) -> Form<E> {
        let mut out = Form::zero(nvars, degree);
        for (exps, c) in &self.terms {
            let mut t = Form::constant(f, nvars, c.clone());
            for (g, &e) in gens.iter().zip(exps) {
                t = t.mul(f, &g.pow(f, e));
            }
            out = out.add(f, &t);
        }
        out
    }

    /// Writes the expression with generators named `g1, g2, ...`.
    pub fn display<F: Field<Elem = E>>(&self, f: &F) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (exps, c) in &self.terms {
            let mut factors = Vec::new();
            let cs = f.format_elem(c);
            if cs != "1" || exps.iter().all(|&e| e == 0) {
                factors.push(cs);
            }
            for (i, &e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("g{}", i + 1)),
                    _ => factors.push(format!("g{}^{e}", i + 1)),
                }
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }
}

/// Exponent vectors `e` with `sum e_i * weights[i] = target`.
fn weighted_compositions(weights: &[u32], target: u32) -> Vec<Vec<u32>> {
    fn rec(weights: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == weights.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = weights[i];
        let max = left / w;
        for e in (0..=max).rev() {
            cur.push(e);
            rec(weights, i + 1, left - e * w, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(weights, 0, target, &mut Vec::new(), &mut out);
    out
}

/// Writes `form` as a polynomial in `gens` if it lies in the subring they
/// generate, by an exact linear solve in the matching graded piece.
pub fn membership_in_subring<F: Field>(
    f: &F,
    form: &Form<F::Elem>,
    gens: &[Form<F::Elem>],
) -> Option<SubringExpression<F::Elem>> {
    let gens_used: Vec<usize> = (0..gens.len())
        .filter(|&i| !gens[i].is_zero() && gens[i].degree() > 0)
        .collect();
    let weights: Vec<u32> = gens_used.iter().map(|&i| gens[i].degree()).collect();
    let n = form.nvars();
    if form.is_zero() {
        return Some(SubringExpression {
            ngens: gens.len(),
            terms: Vec::new(),
        });
    }
    let exps = weighted_compositions(&weights, form.degree());
    let products: Vec<Form<F::Elem>> = exps
        .iter()
        .map(|e| {
            let mut t = Form::constant(f, n, f.one());
            for (k, &ek) in e.iter().enumerate() {
                if ek > 0 {
                    t = t.mul(f, &gens[gens_used[k]].pow(f, ek));
                }
            }
            t
        })
        .collect();
    // monomials occurring anywhere
    let mut mons: Vec<_> = products
        .iter()
        .chain(std::iter::once(form))
        .flat_map(|p| p.terms().map(|(m, _)| m.clone()).collect::<Vec<_>>())
        .collect();
    mons.sort();
    mons.dedup();
    let a = Matrix::from_fn(mons.len(), products.len(), |i, j| products[j].coeff(f, &mons[i]));
    let b = form.coeff_vector(f, &mons);
    let x = a.solve(f, &b)?;
    let terms = exps
        .into_iter()
        .zip(x)
        .filter(|(_, c)| !f.is_zero(c))
        .map(|(e, c)| {
            let mut full = vec![0u32; gens.len()];
            for (k, ek) in e.into_iter().enumerate() {
                full[gens_used[k]] = ek;
            }
            (full, c)
        })
        .collect();
    Some(SubringExpression {
        ngens: gens.len(),
        terms,
    })
}
