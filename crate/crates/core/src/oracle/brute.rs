//! Exhaustive collapse search over small finite fields.
//!
//! A quadric is a sum of `k` products of linear forms iff it lies in an ideal
//! generated by `k` linear forms, so the search runs over all `k`-dimensional
//! spaces of linear forms, enumerated by their reduced echelon matrices. A
//! cubic has a 1-collapse iff some linear form divides it.

use super::dimension::subsets;
use super::groebner::Budget;
use crate::algebra::Field;
use crate::error::{Error, Result};
use crate::forms::{Form, LinearPool};
use crate::quadforms::CollapseWitness;

fn gaussian_binomial(q: u64, n: usize, k: usize) -> Option<u64> {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num = num.checked_mul((q as u128).checked_pow((n - i) as u32)? - 1)?;
        den = den.checked_mul((q as u128).checked_pow((i + 1) as u32)? - 1)?;
    }
    u64::try_from(num / den).ok()
}

/// Visits every `k x n` reduced echelon matrix over `f` (rows as linear
/// coefficient vectors) until `visit` returns true.
fn for_each_rref<F: Field>(f: &F, n: usize, k: usize, mut visit: impl FnMut(&[Vec<F::Elem>]) -> bool) -> bool {
    let q = f.order().expect("finite field");
    for pivots in subsets(n, k) {
        // free slots: (row, col) with col > pivot[row] and col not a pivot
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| {
                let piv = &pivots;
                (piv[r] + 1..n).filter(move |c| !piv.contains(c)).map(move |c| (r, c))
            })
            .collect();
        let total = q.checked_pow(free.len() as u32).expect("checked by budget");
        for idx in 0..total {
            let mut rows = vec![vec![f.zero(); n]; k];
            for (r, &p) in pivots.iter().enumerate() {
                rows[r][p] = f.one();
            }
            let mut t = idx;
            for &(r, c) in &free {
                rows[r][c] = f.element(t % q);
                t /= q;
            }
            if visit(&rows) {
                return true;
            }
        }
    }
    false
}

/// A collapse of `form` with at most `k` products over the base field
/// (`ext_degree = 1`) or its quadratic extension (`ext_degree = 2`), found by
/// exhaustive search; `None` if there is none.
pub fn brute_strength<F: Field>(
    f: &F,
    form: &Form<F::Elem>,
    k: usize,
    ext_degree: u32,
    budget: &Budget,
) -> Result<Option<CollapseWitness<F>>> {
    if !f.is_finite() {
        return Err(Error::Unsupported("brute-force search needs a finite field".into()));
    }
    let (field, target) = match ext_degree {
        1 => (f.clone(), form.clone()),
        2 => {
            let ext = f
                .quadratic_extension()
                .ok_or_else(|| Error::Unsupported(format!("no quadratic extension of {}", f.spec())))?;
            let t = form.embed(f, &ext);
            (ext, t)
        }
        m => return Err(Error::InvalidArgument(format!("extension degree {m} not in 1..=2"))),
    };
    let n = form.nvars();
    let witness = |pairs| CollapseWitness {
        field: field.clone(),
        extension: ext_degree,
        pairs,
    };
    if target.is_zero() {
        return Ok(Some(witness(Vec::new())));
    }
    let dim = match form.degree() {
        2 => k.min(n),
        3 if k >= 1 => 1,
        3 => return Ok(None),
        d => {
            return Err(Error::Unsupported(format!(
                "brute-force collapse search for degree {d} with k = {k}"
            )))
        }
    };
    if dim == 0 {
        return Ok(None);
    }
    let q = field.order().expect("finite");
    let count = gaussian_binomial(q, n, dim).unwrap_or(u64::MAX);
    if count > budget.max_candidates {
        return Err(Error::BudgetExceeded(format!(
            "{count} candidate subspaces exceed the limit {}",
            budget.max_candidates
        )));
    }
    let mut found = None;
    for_each_rref(&field, n, dim, |rows| {
        let lin: Vec<Form<F::Elem>> = rows.iter().map(|r| Form::linear(&field, r)).collect();
        let pool = LinearPool::from_independent(&field, n, &lin).expect("echelon rows are independent");
        let (cof, rem) = pool.divide(&field, &target);
        if rem.is_zero() {
            let pairs = pool
                .forms()
                .into_iter()
                .zip(cof)
                .filter(|(_, y)| !y.is_zero())
                .collect();
            found = Some(pairs);
            return true;
        }
        false
    });
    Ok(found.map(witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Gf;
    use crate::forms::parse_form;

    #[test]
    fn gaussian_binomial_counts() {
        assert_eq!(gaussian_binomial(2, 3, 1), Some(7));
        assert_eq!(gaussian_binomial(9, 3, 2), Some(91));
        assert_eq!(gaussian_binomial(3, 4, 2), Some(130));
    }

    #[test]
    fn brute_examples() {
        let b = Budget::default();
        let g2 = Gf::prime(2).unwrap();
        let w = brute_strength(&g2, &parse_form(&g2, "x1*x2").unwrap(), 1, 1, &b).unwrap().unwrap();
        assert!(w.reproduces(&g2, &parse_form(&g2, "x1*x2").unwrap()));
        let g4 = Gf::binary(2).unwrap();
        assert!(brute_strength(&g4, &parse_form(&g4, "x1*x2 + x3*x4").unwrap(), 1, 1, &b)
            .unwrap()
            .is_none());
        let g3 = Gf::prime(3).unwrap();
        let h = parse_form(&g3, "x1^2 + x2^2").unwrap();
        assert!(brute_strength(&g3, &h, 1, 1, &b).unwrap().is_none());
        let w = brute_strength(&g3, &h, 1, 2, &b).unwrap().unwrap();
        assert!(w.reproduces(&g3, &h));
    }

    #[test]
    fn cubic_divisibility_probe() {
        let b = Budget::default();
        let f = Gf::prime(5).unwrap();
        let reducible = parse_form(&f, "x1^3 + x1*x2^2 + x2*x1*x3").unwrap();
        assert!(brute_strength(&f, &reducible, 1, 1, &b).unwrap().is_some());
        let fermat = parse_form(&f, "x1^3 + x2^3 + x3^3").unwrap();
        assert!(brute_strength(&f, &fermat, 1, 2, &b).unwrap().is_none());
    }
}
