use std::collections::HashMap;

use super::groebner::{groebner_with_budget, Budget, GroebnerBasis, MonomialOrder};
use crate::algebra::Field;
use crate::error::{Error, Result};
use crate::forms::{Form, GradedSubspace, Monomial};

/// Krull dimension of `R / I` from the leading monomials: the number of
/// variables minus the least number of variables meeting every leading
/// monomial's support.
pub fn krull_dim<E: Clone + PartialEq>(gb: &GroebnerBasis<E>) -> Result<usize> {
    if gb.is_unit() {
        return Err(Error::EmptyVariety);
    }
    let masks: Vec<u64> = gb
        .leading_monomials()
        .iter()
        .map(|m| m.support().iter().fold(0u64, |acc, &i| acc | (1 << i)))
        .collect();
    Ok(gb.nvars - min_hitting_set(&masks))
}

fn min_hitting_set(sets: &[u64]) -> usize {
    fn go(sets: &[u64], chosen: u64, size: usize, best: &mut usize) {
        if size >= *best {
            return;
        }
        let open = sets.iter().filter(|&&s| s & chosen == 0).min_by_key(|s| s.count_ones());
        let Some(&s) = open else {
            *best = size;
            return;
        };
        let mut bits = s;
        while bits != 0 {
            let b = bits & bits.wrapping_neg();
            go(sets, chosen | b, size + 1, best);
            bits &= bits - 1;
        }
    }
    let mut best = usize::MAX;
    go(sets, 0, 0, &mut best);
    best
}

/// `dim_K (R/I)_t` for `t = 0..=t_max`, counting standard monomials.
pub fn hilbert_function<E: Clone + PartialEq>(gb: &GroebnerBasis<E>, t_max: u32) -> Vec<u64> {
    let lms = gb.leading_monomials();
    (0..=t_max)
        .map(|t| {
            Monomial::all_of_degree(gb.nvars, t)
                .iter()
                .filter(|m| !lms.iter().any(|l| l.divides(m)))
                .count() as u64
        })
        .collect()
}

/// Homogeneous forms of positive degree form a regular sequence iff the
/// codimension of the ideal equals their number.
pub fn is_regular_sequence<F: Field>(f: &F, forms: &[Form<F::Elem>], budget: &Budget) -> Result<bool> {
    if forms.iter().any(|g| g.is_zero() || g.degree() == 0) {
        return Ok(false);
    }
    if forms.is_empty() {
        return Ok(true);
    }
    let gb = groebner_with_budget(f, forms, &MonomialOrder::Grevlex, budget)?;
    let n = gb.nvars;
    Ok(krull_dim(&gb)? + forms.len() == n)
}

/// Determinant of a square matrix of forms, by expansion with memoized
/// column subsets. Every entry in a column block must share one degree per row.
pub fn symbolic_det<F: Field>(f: &F, entries: &[Vec<Form<F::Elem>>], nvars: usize) -> Form<F::Elem> {
    let k = entries.len();
    let row_deg: u32 = entries.iter().map(|r| r.first().map_or(0, |g| g.degree())).sum();
    let mut memo: HashMap<u64, Form<F::Elem>> = HashMap::new();
    fn rec<F: Field>(
        f: &F,
        entries: &[Vec<Form<F::Elem>>],
        row: usize,
        used: u64,
        nvars: usize,
        memo: &mut HashMap<u64, Form<F::Elem>>,
    ) -> Form<F::Elem> {
        let k = entries.len();
        if row == k {
            return Form::constant(f, nvars, f.one());
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let deg: u32 = entries[row..].iter().map(|r| r[0].degree()).sum();
        let mut acc = Form::zero(nvars, deg);
        let mut sign_pos = true;
        for c in 0..k {
            if used & (1 << c) != 0 {
                continue;
            }
            let a = &entries[row][c];
            if !a.is_zero() {
                let sub = rec(f, entries, row + 1, used | (1 << c), nvars, memo);
                let term = a.mul(f, &sub);
                acc = if sign_pos { acc.add(f, &term) } else { acc.sub(f, &term) };
            }
            sign_pos = !sign_pos;
        }
        memo.insert(used, acc.clone());
        acc
    }
    if k == 0 {
        return Form::constant(f, nvars, f.one());
    }
    let d = rec(f, entries, 0, 0, nvars, &mut memo);
    debug_assert_eq!(d.degree(), row_deg);
    d
}

/// All `k x k` minors of a matrix of forms, echelonized per degree.
pub fn minors_space<F: Field>(f: &F, m: &[Vec<Form<F::Elem>>], k: usize, nvars: usize) -> GradedSubspace<F::Elem> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut out = GradedSubspace::new(nvars);
    for rs in subsets(rows, k) {
        for cs in subsets(cols, k) {
            let sub: Vec<Vec<Form<F::Elem>>> = rs
                .iter()
                .map(|&i| cs.iter().map(|&j| m[i][j].clone()).collect())
                .collect();
            let d = symbolic_det(f, &sub, nvars);
            if !d.is_zero() {
                out.insert(f, &d);
            }
        }
    }
    out
}

/// `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Height of the ideal generated by `forms` and the maximal minors of their
/// Jacobian matrix. For a regular sequence of `h` forms the quotient
/// satisfies Serre's condition `R_eta` iff this is at least `h + eta + 1`.
/// An empty singular locus is reported as `nvars + 1`.
pub fn singular_codim<F: Field>(f: &F, forms: &[Form<F::Elem>], budget: &Budget) -> Result<usize> {
    let Some(first) = forms.first() else {
        return Err(Error::EmptySpace);
    };
    let n = first.nvars();
    let h = forms.len();
    let jac: Vec<Vec<Form<F::Elem>>> = forms
        .iter()
        .map(|g| (0..n).map(|i| g.partial(f, i).expect("in range")).collect())
        .collect();
    let mut gens: Vec<Form<F::Elem>> = forms.to_vec();
    if h <= n {
        gens.extend(minors_space(f, &jac, h, n).all_forms());
    }
    let gb = groebner_with_budget(f, &gens, &MonomialOrder::Grevlex, budget)?;
    match krull_dim(&gb) {
        Ok(d) => Ok(n - d),
        Err(Error::EmptyVariety) => Ok(n + 1),
        Err(e) => Err(e),
    }
}
