use super::form::Form;
use super::monomial::Monomial;
use crate::algebra::{Field, Matrix};
use crate::error::{Error, Result};

/// An invertible change of coordinates `x = A y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearChange<E> {
    matrix: Matrix<E>,
}

impl<E: Clone + PartialEq> LinearChange<E> {
    pub fn new<F: Field<Elem = E>>(f: &F, matrix: Matrix<E>) -> Result<Self> {
        if !matrix.is_square() || matrix.rank(f) < matrix.rows() {
            return Err(Error::Singular);
        }
        Ok(LinearChange { matrix })
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        LinearChange {
            matrix: Matrix::identity(f, n),
        }
    }

    pub fn matrix(&self) -> &Matrix<E> {
        &self.matrix
    }

    pub fn apply<F: Field<Elem = E>>(&self, f: &F, form: &Form<E>) -> Result<Form<E>> {
        form.change_vars(f, &self.matrix)
    }

    /// The change that applies `self` first and then `next`.
    pub fn then<F: Field<Elem = E>>(&self, f: &F, next: &Self) -> Self {
        LinearChange {
            matrix: self.matrix.mul(f, &next.matrix),
        }
    }

    /// Rows `y = A^{-1} x`: the new coordinates as linear forms in the old ones.
    pub fn new_coordinates<F: Field<Elem = E>>(&self, f: &F) -> Vec<Form<E>> {
        let inv = self.matrix.inverse(f).expect("invertible by construction");
        (0..inv.rows()).map(|i| Form::linear(f, inv.row(i))).collect()
    }
}

/// A reduced echelon family of independent linear forms, used to divide
/// forms by the ideal they generate.
///
/// Each member has a pivot variable with coefficient 1 that occurs in no other
/// member; division eliminates the pivot variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearPool<E> {
    nvars: usize,
    /// `(pivot, form)` sorted by pivot.
    rows: Vec<(usize, Form<E>)>,
}

impl<E: Clone + PartialEq> LinearPool<E> {
    pub fn new(nvars: usize) -> Self {
        LinearPool {
            nvars,
            rows: Vec::new(),
        }
    }

    /// Builds a pool, rejecting dependent or non-linear input.
    pub fn from_independent<F: Field<Elem = E>>(f: &F, nvars: usize, forms: &[Form<E>]) -> Result<Self> {
        let mut pool = LinearPool::new(nvars);
        for l in forms {
            if l.degree() != 1 {
                return Err(Error::WrongDegree {
                    expected: 1,
                    got: l.degree(),
                });
            }
            if !pool.insert(f, l) {
                return Err(Error::Dependent);
            }
        }
        Ok(pool)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    pub fn forms(&self) -> Vec<Form<E>> {
        self.rows.iter().map(|(_, l)| l.clone()).collect()
    }

    /// Adds a linear form; returns false if it was already in the span.
    pub fn insert<F: Field<Elem = E>>(&mut self, f: &F, l: &Form<E>) -> bool {
        assert_eq!(l.degree(), 1);
        let r = self.reduce(f, l);
        if r.is_zero() {
            return false;
        }
        // lowest-index variable is the leading monomial in grlex with x1 first
        let piv = r.support_vars()[0];
        let lc = r.coeff(f, &Monomial::var(self.nvars, piv));
        let r = r.scale(f, &f.inv(&lc).expect("nonzero"));
        let pm = Monomial::var(self.nvars, piv);
        for (_, row) in self.rows.iter_mut() {
            let c = row.coeff(f, &pm);
            if !f.is_zero(&c) {
                *row = row.sub(f, &r.scale(f, &c));
            }
        }
        let pos = self.rows.partition_point(|(p, _)| *p < piv);
        self.rows.insert(pos, (piv, r));
        true
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, l: &Form<E>) -> bool {
        self.reduce(f, l).is_zero()
    }

    /// `g = sum_s pool_s * y_s + remainder` with the remainder free of pivot
    /// variables. Cofactors are returned in pool order.
    pub fn divide<F: Field<Elem = E>>(&self, f: &F, g: &Form<E>) -> (Vec<Form<E>>, Form<E>) {
        let d = g.degree();
        let mut cofactors: Vec<Form<E>> = self
            .rows
            .iter()
            .map(|_| Form::zero(self.nvars, d.saturating_sub(1)))
            .collect();
        if d == 0 {
            return (cofactors, g.clone());
        }
        let mut r = g.clone();
        loop {
            // largest monomial still containing a pivot variable
            let hit = r.terms().find_map(|(m, c)| {
                self.rows
                    .iter()
                    .enumerate()
                    .find(|(_, (p, _))| m.exp(*p) > 0)
                    .map(|(s, (p, _))| (s, *p, m.clone(), c.clone()))
            });
            let Some((s, p, m, c)) = hit else { break };
            let q = m.div(&Monomial::var(self.nvars, p));
            let step = self.rows[s].1.mul_monomial(f, &q, &c);
            r = r.sub(f, &step);
            let mut add = Form::zero(self.nvars, d - 1);
            add.add_term(f, q, c);
            cofactors[s] = cofactors[s].add(f, &add);
        }
        (cofactors, r)
    }

    pub fn reduce<F: Field<Elem = E>>(&self, f: &F, g: &Form<E>) -> Form<E> {
        self.divide(f, g).1
    }
}
