//! A characteristic-free polynomial in the coefficients that vanishes exactly
//! when a quadric in `N` variables has rank below `N`.

use super::gram::{quad_rank, require_quadric, QuadData};
use crate::algebra::{Field, FieldSpec, Matrix};
use crate::error::{Error, Result};
use crate::forms::Form;
use num_bigint::BigInt;
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Discriminant<E> {
    Value(E),
    /// No canonical integer lift exists; the answer is the rank comparison.
    CriterionByRank { full_rank: bool },
}

impl<E> Discriminant<E> {
    pub fn vanishes<F: Field<Elem = E>>(&self, f: &F) -> bool {
        match self {
            Discriminant::Value(v) => f.is_zero(v),
            Discriminant::CriterionByRank { full_rank } => !full_rank,
        }
    }
}

fn is_gf2<F: Field>(f: &F) -> bool {
    matches!(f.spec(), FieldSpec::Prime(2))
}

/// Outside characteristic 2 the determinant of the symmetric Gram matrix. In
/// characteristic 2 with `N` odd, `F` evaluated at the vector of Pfaffians of
/// the polar matrix with row and column `i` deleted. Over GF(2) with `N` even,
/// the determinant of the Hessian of the 0/1 integer lift, reduced mod 2.
pub fn reduced_discriminant<F: Field>(f: &F, form: &Form<F::Elem>, n: usize) -> Result<Discriminant<F::Elem>> {
    require_quadric(form)?;
    if form.nvars() > n {
        return Err(Error::InvalidArgument(format!(
            "form has {} variables, more than N = {n}",
            form.nvars()
        )));
    }
    let form = form.extend_vars(n);
    let q = QuadData::from_form(f, &form);
    if f.characteristic() != 2 {
        let half = f.inv(&f.from_i64(2)).expect("odd characteristic");
        return Ok(Discriminant::Value(q.polar.map(|x| f.mul(x, &half)).det(f)));
    }
    if n % 2 == 1 {
        let pf: Vec<F::Elem> = (0..n)
            .map(|i| q.polar.delete(&[i], &[i]).pfaffian(f))
            .collect::<Result<_>>()?;
        return Ok(Discriminant::Value(q.eval(f, &pf)));
    }
    if is_gf2(f) {
        // Hessian of the lift: 2 on the diagonal where x_i^2 occurs, b_ij off it
        let h = Matrix::from_fn(n, n, |i, j| {
            let c = &q.upper[(i.min(j), i.max(j))];
            i64::from(!f.is_zero(c)) * if i == j { 2 } else { 1 }
        });
        let odd = integer_det(&h).bit(0);
        return Ok(Discriminant::Value(f.from_i64(i64::from(odd))));
    }
    Ok(Discriminant::CriterionByRank {
        full_rank: quad_rank(f, &form)? == n,
    })
}

/// Exact integer determinant by fraction-free elimination.
fn integer_det(m: &Matrix<i64>) -> BigInt {
    let n = m.rows();
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| BigInt::from(m[(i, j)])).collect()).collect();
    let mut sign = 1i64;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = if n == 0 { BigInt::from(1) } else { a[n - 1][n - 1].clone() };
    d * sign
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Gf;
    use crate::forms::{parse_form, parse_form_in, Monomial};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn discriminant_examples() {
        let g5 = Gf::prime(5).unwrap();
        let d = reduced_discriminant(&g5, &parse_form(&g5, "x1^2 + x2^2 + x3^2").unwrap(), 3).unwrap();
        assert_eq!(d, Discriminant::Value(1));
        let d = reduced_discriminant(&g5, &parse_form(&g5, "x1*x2").unwrap(), 3).unwrap();
        assert!(d.vanishes(&g5));
        let g2 = Gf::prime(2).unwrap();
        let d = reduced_discriminant(&g2, &parse_form(&g2, "x1*x2 + x3*x4").unwrap(), 4).unwrap();
        assert_eq!(d, Discriminant::Value(1));
        let g4 = Gf::binary(2).unwrap();
        let d = reduced_discriminant(&g4, &parse_form(&g4, "x1*x2").unwrap(), 2).unwrap();
        assert_eq!(d, Discriminant::CriterionByRank { full_rank: true });
    }

    #[test]
    fn integer_determinants() {
        let m = Matrix::from_rows(vec![vec![2, 1, 0], vec![1, 2, 1], vec![0, 1, 2]], 3);
        assert_eq!(integer_det(&m), BigInt::from(4));
        let m = Matrix::from_rows(vec![vec![0, 1], vec![1, 0]], 2);
        assert_eq!(integer_det(&m), BigInt::from(-1));
    }

    #[test]
    fn vanishes_iff_rank_deficient_exhaustive_gf2() {
        let f = Gf::prime(2).unwrap();
        for n in 1..=4 {
            let basis = Monomial::all_of_degree(n, 2);
            for bits in 0..(1u64 << basis.len()) {
                let c: Vec<u64> = (0..basis.len()).map(|k| (bits >> k) & 1).collect();
                let form = Form::from_coeffs(&f, n, 2, &basis, &c);
                let d = reduced_discriminant(&f, &form, n).unwrap();
                assert_eq!(d.vanishes(&f), quad_rank(&f, &form).unwrap() < n, "{}", form.display(&f));
            }
        }
    }

    #[test]
    fn vanishes_iff_rank_deficient_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for f in [Gf::prime(3).unwrap(), Gf::prime(7).unwrap(), Gf::binary(2).unwrap(), Gf::binary(3).unwrap()] {
            for _ in 0..300 {
                let n = rng.gen_range(1..=5);
                let basis = Monomial::all_of_degree(n, 2);
                let c: Vec<u64> = basis
                    .iter()
                    .map(|_| if rng.gen_bool(0.4) { 0 } else { rng.gen_range(0..f.size()) })
                    .collect();
                let form = Form::from_coeffs(&f, n, 2, &basis, &c);
                let d = reduced_discriminant(&f, &form, n).unwrap();
                assert_eq!(d.vanishes(&f), quad_rank(&f, &form).unwrap() < n, "{}", form.display(&f));
            }
        }
        let q = crate::algebra::Rationals;
        let g = parse_form_in(&q, "x1^2 - x2^2", 2).unwrap();
        assert!(!reduced_discriminant(&q, &g, 2).unwrap().vanishes(&q));
    }
}
