//! Dense matrices over any [`Field`], with exact elimination.
//!
//! Pivots are always chosen at the lowest available row index, so echelon
//! forms and kernel bases are reproducible.

use std::ops::{Index, IndexMut};

use super::field::Field;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn zeros<F: Field<Elem = E>>(f: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![f.zero(); rows * cols],
        }
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        let mut m = Self::zeros(f, n, n);
        for i in 0..n {
            m[(i, i)] = f.one();
        }
        m
    }

    /// Builds a matrix from rows of equal length; `cols` fixes the width when
    /// `rows` is empty.
    pub fn from_rows(rows: Vec<Vec<E>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row);
        }
        Matrix { rows: r, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = f.zero();
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if !f.is_zero(a) {
                    acc = f.add(&acc, &f.mul(a, &other[(k, j)]));
                }
            }
            acc
        })
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect()
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref<F: Field<Elem = E>>(&self, f: &F) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(&m[(i, c)])) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(&m[(r, c)]).expect("nonzero pivot");
            for j in c..m.cols {
                m[(r, j)] = f.mul(&m[(r, j)], &inv);
            }
            for i in 0..m.rows {
                if i == r || f.is_zero(&m[(i, c)]) {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    let t = f.mul(&factor, &m[(r, j)]);
                    m[(i, j)] = f.sub(&m[(i, j)], &t);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank<F: Field<Elem = E>>(&self, f: &F) -> usize {
        self.rref(f).1.len()
    }

    /// Basis of the right kernel, one vector per free column in increasing order.
    pub fn kernel_basis<F: Field<Elem = E>>(&self, f: &F) -> Vec<Vec<E>> {
        let (r, pivots) = self.rref(f);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![f.zero(); self.cols];
                v[free] = f.one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(&r[(i, free)]);
                }
                v
            })
            .collect()
    }

    /// One solution of `self * x = b`, if any.
    pub fn solve<F: Field<Elem = E>>(&self, f: &F, b: &[E]) -> Option<Vec<E>> {
        assert_eq!(b.len(), self.rows);
        let aug = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref(f);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r[(i, self.cols)].clone();
        }
        Some(x)
    }

    pub fn det<F: Field<Elem = E>>(&self, f: &F) -> E {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = self.rows;
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !f.is_zero(&m[(i, c)])) else {
                return f.zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = f.neg(&det);
            }
            let pivot = m[(c, c)].clone();
            det = f.mul(&det, &pivot);
            let inv = f.inv(&pivot).expect("nonzero pivot");
            for i in c + 1..n {
                if f.is_zero(&m[(i, c)]) {
                    continue;
                }
                let factor = f.mul(&m[(i, c)], &inv);
                for j in c..n {
                    let t = f.mul(&factor, &m[(c, j)]);
                    m[(i, j)] = f.sub(&m[(i, j)], &t);
                }
            }
        }
        det
    }

    pub fn inverse<F: Field<Elem = E>>(&self, f: &F) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                f.one()
            } else {
                f.zero()
            }
        });
        let (r, pivots) = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
    }

    pub fn is_alternating<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                f.is_zero(&self[(i, i)])
                    && (i + 1..self.cols).all(|j| f.is_zero(&f.add(&self[(i, j)], &self[(j, i)])))
            })
    }

    /// Pfaffian of an alternating matrix of even size.
    pub fn pfaffian<F: Field<Elem = E>>(&self, f: &F) -> Result<E> {
        if !self.is_square() || self.rows % 2 == 1 {
            return Err(Error::InvalidArgument(
                "pfaffian needs a square matrix of even size".into(),
            ));
        }
        if !self.is_alternating(f) {
            return Err(Error::NotAlternating);
        }
        let mut m = self.clone();
        let mut acc = f.one();
        while m.rows > 0 {
            let n = m.rows;
            let Some(j) = (1..n).find(|&j| !f.is_zero(&m[(0, j)])) else {
                return Ok(f.zero());
            };
            if j != 1 {
                m.swap_rows(1, j);
                m = m.transpose();
                m.swap_rows(1, j);
                m = m.transpose();
                acc = f.neg(&acc);
            }
            // Pf(A) = a * Pf(C + (v u^T - u v^T) / a), u and v the tails of rows 0 and 1.
            let a = m[(0, 1)].clone();
            acc = f.mul(&acc, &a);
            let ainv = f.inv(&a).expect("nonzero");
            let next = Matrix::from_fn(n - 2, n - 2, |k, l| {
                let (k2, l2) = (k + 2, l + 2);
                let cross = f.sub(
                    &f.mul(&m[(1, k2)], &m[(0, l2)]),
                    &f.mul(&m[(0, k2)], &m[(1, l2)]),
                );
                f.add(&m[(k2, l2)], &f.mul(&cross, &ainv))
            });
            m = next;
        }
        Ok(acc)
    }

    /// The submatrix with the given rows and columns removed.
    pub fn delete(&self, del_rows: &[usize], del_cols: &[usize]) -> Self {
        let rs: Vec<usize> = (0..self.rows).filter(|i| !del_rows.contains(i)).collect();
        let cs: Vec<usize> = (0..self.cols).filter(|j| !del_cols.contains(j)).collect();
        Matrix::from_fn(rs.len(), cs.len(), |i, j| self[(rs[i], cs[j])].clone())
    }

    pub fn map<T: Clone>(&self, g: impl Fn(&E) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(g).collect(),
        }
    }
}

impl<E> Index<(usize, usize)> for Matrix<E> {
    type Output = E;
    fn index(&self, (i, j): (usize, usize)) -> &E {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.data[i * self.cols + j]
    }
}

impl<E> IndexMut<(usize, usize)> for Matrix<E> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut E {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Gf, Rationals};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(f: &Gf, rng: &mut ChaCha8Rng, r: usize, c: usize) -> Matrix<u64> {
        let q = f.size();
        Matrix::from_fn(r, c, |_, _| rng.gen_range(0..q))
    }

    fn random_invertible(f: &Gf, rng: &mut ChaCha8Rng, n: usize) -> Matrix<u64> {
        loop {
            let m = random_matrix(f, rng, n, n);
            if m.rank(f) == n {
                return m;
            }
        }
    }

    fn random_alternating(f: &Gf, rng: &mut ChaCha8Rng, n: usize) -> Matrix<u64> {
        let mut m = Matrix::zeros(f, n, n);
        for i in 0..n {
            for j in i + 1..n {
                let x = rng.gen_range(0..f.size());
                m[(i, j)] = x;
                m[(j, i)] = f.neg(&x);
            }
        }
        m
    }

    #[test]
    fn rank_examples() {
        let q = Rationals;
        let id = Matrix::identity(&q, 3);
        assert_eq!(id.rank(&q), 3);
        assert_eq!(Matrix::zeros(&q, 3, 4).rank(&q), 0);
        let m = Matrix::from_rows(
            vec![
                vec![q.from_i64(1), q.from_i64(2)],
                vec![q.from_i64(2), q.from_i64(4)],
            ],
            2,
        );
        assert_eq!(m.rank(&q), 1);
    }

    #[test]
    fn kernel_examples() {
        let f = Gf::prime(2).unwrap();
        assert!(Matrix::identity(&f, 3).kernel_basis(&f).is_empty());
        assert_eq!(
            Matrix::zeros(&f, 2, 2).kernel_basis(&f),
            vec![vec![1, 0], vec![0, 1]]
        );
        let m = Matrix::from_rows(vec![vec![1, 1]], 2);
        assert_eq!(m.kernel_basis(&f), vec![vec![1, 1]]);
    }

    #[test]
    fn pfaffian_examples() {
        let f = Gf::prime(7).unwrap();
        let a = 3;
        let m = Matrix::from_rows(vec![vec![0, a], vec![f.neg(&a), 0]], 2);
        assert_eq!(m.pfaffian(&f).unwrap(), a);
        let mut h = Matrix::zeros(&f, 4, 4);
        h[(0, 1)] = 1;
        h[(1, 0)] = 6;
        h[(2, 3)] = 1;
        h[(3, 2)] = 6;
        assert_eq!(h.pfaffian(&f).unwrap(), 1);
        assert!(Matrix::zeros(&f, 3, 3).pfaffian(&f).is_err());
        assert_eq!(Matrix::identity(&f, 2).pfaffian(&f), Err(Error::NotAlternating));
    }

    #[test]
    fn pfaffian_squares_to_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for f in [Gf::prime(7).unwrap(), Gf::binary(3).unwrap()] {
            for n in [2, 4, 6] {
                for _ in 0..50 {
                    let a = random_alternating(&f, &mut rng, n);
                    let pf = a.pfaffian(&f).unwrap();
                    assert_eq!(f.mul(&pf, &pf), a.det(&f));
                }
            }
        }
    }

    #[test]
    fn pfaffian_transforms_by_determinant() {
        let f = Gf::prime(11).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let a = random_alternating(&f, &mut rng, 4);
            let b = random_matrix(&f, &mut rng, 4, 4);
            let t = b.transpose().mul(&f, &a).mul(&f, &b);
            assert_eq!(
                t.pfaffian(&f).unwrap(),
                f.mul(&b.det(&f), &a.pfaffian(&f).unwrap())
            );
        }
    }

    #[test]
    fn inverse_and_solve() {
        let f = Gf::prime(13).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let a = random_invertible(&f, &mut rng, 4);
            let ai = a.inverse(&f).unwrap();
            assert_eq!(a.mul(&f, &ai), Matrix::identity(&f, 4));
            let b: Vec<u64> = (0..4).map(|_| rng.gen_range(0..13)).collect();
            let x = a.solve(&f, &b).unwrap();
            assert_eq!(a.mul_vec(&f, &x), b);
        }
        assert!(Matrix::zeros(&f, 2, 2).inverse(&f).is_none());
    }

    proptest! {
        #[test]
        fn rank_is_transpose_and_equivalence_invariant(seed in any::<u64>(), r in 1usize..6, c in 1usize..6) {
            let f = Gf::prime(5).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random_matrix(&f, &mut rng, r, c);
            let rank = m.rank(&f);
            prop_assert_eq!(rank, m.transpose().rank(&f));
            let p = random_invertible(&f, &mut rng, r);
            let q = random_invertible(&f, &mut rng, c);
            prop_assert_eq!(p.mul(&f, &m).mul(&f, &q).rank(&f), rank);
        }

        #[test]
        fn kernel_vectors_are_annihilated(seed in any::<u64>(), r in 1usize..6, c in 1usize..7) {
            let f = Gf::binary(2).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random_matrix(&f, &mut rng, r, c);
            let ker = m.kernel_basis(&f);
            prop_assert_eq!(ker.len(), c - m.rank(&f));
            for v in ker {
                prop_assert!(m.mul_vec(&f, &v).iter().all(|x| *x == 0));
            }
        }
    }
}
