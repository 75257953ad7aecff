use super::super::forms::{Form, Monomial};
use crate::algebra::{Field, Matrix};
use crate::error::{Error, Result};

/// Gram data of a quadric.
///
/// Outside characteristic 2 this is the symmetric matrix `M` with
/// `F = x^T M x`. In characteristic 2 it is the alternating polarization `B`
/// (`B_ij` = coefficient of `x_i x_j`, mirrored) and the vector of square
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymRep<E> {
    Symmetric(Matrix<E>),
    Char2 { polar: Matrix<E>, squares: Vec<E> },
}

pub fn gram<F: Field>(f: &F, form: &Form<F::Elem>) -> Result<SymRep<F::Elem>> {
    require_quadric(form)?;
    let q = QuadData::from_form(f, form);
    Ok(if f.characteristic() == 2 {
        SymRep::Char2 {
            polar: q.polar,
            squares: (0..q.n).map(|i| q.upper[(i, i)].clone()).collect(),
        }
    } else {
        let half = f.inv(&f.from_i64(2)).expect("odd characteristic");
        SymRep::Symmetric(q.polar.map(|x| f.mul(x, &half)))
    })
}

impl<E: Clone + PartialEq> SymRep<E> {
    pub fn to_form<F: Field<Elem = E>>(&self, f: &F) -> Form<E> {
        let (n, get): (usize, Box<dyn Fn(usize, usize) -> E>) = match self {
            SymRep::Symmetric(m) => {
                let two = f.from_i64(2);
                (
                    m.rows(),
                    Box::new(move |i, j| if i == j { m[(i, i)].clone() } else { f.mul(&two, &m[(i, j)]) }),
                )
            }
            SymRep::Char2 { polar, squares } => (
                polar.rows(),
                Box::new(move |i, j| if i == j { squares[i].clone() } else { polar[(i, j)].clone() }),
            ),
        };
        let mut out = Form::zero(n, 2);
        for i in 0..n {
            for j in i..n {
                let m = Monomial::var(n, i).mul(&Monomial::var(n, j));
                out.add_term(f, m, get(i, j));
            }
        }
        out
    }
}

pub(crate) fn require_quadric<E: Clone + PartialEq>(form: &Form<E>) -> Result<()> {
    if form.degree() != 2 {
        return Err(Error::WrongDegree {
            expected: 2,
            got: form.degree(),
        });
    }
    Ok(())
}

/// Characteristic-free coefficient data of a quadric: the upper-triangular
/// coefficient matrix `U` (`F = x^T U x`) and the polar matrix
/// `P = U + U^T`, so `B(x, y) = x^T P y = F(x+y) - F(x) - F(y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadData<E> {
    pub n: usize,
    pub upper: Matrix<E>,
    pub polar: Matrix<E>,
}

impl<E: Clone + PartialEq> QuadData<E> {
    pub fn from_form<F: Field<Elem = E>>(f: &F, form: &Form<E>) -> Self {
        let n = form.nvars();
        let mut upper = Matrix::zeros(f, n, n);
        for (m, c) in form.terms() {
            let s = m.support();
            let (i, j) = if s.len() == 1 { (s[0], s[0]) } else { (s[0], s[1]) };
            upper[(i, j)] = c.clone();
        }
        let polar = Matrix::from_fn(n, n, |i, j| f.add(&upper[(i, j)], &upper[(j, i)]));
        QuadData { n, upper, polar }
    }

    pub fn zero<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        QuadData {
            n,
            upper: Matrix::zeros(f, n, n),
            polar: Matrix::zeros(f, n, n),
        }
    }

    pub fn to_form<F: Field<Elem = E>>(&self, f: &F) -> Form<E> {
        let n = self.n;
        let mut out = Form::zero(n, 2);
        for i in 0..n {
            for j in i..n {
                out.add_term(f, Monomial::var(n, i).mul(&Monomial::var(n, j)), self.upper[(i, j)].clone());
            }
        }
        out
    }

    /// `self + c * other`.
    pub fn axpy<F: Field<Elem = E>>(&self, f: &F, c: &E, other: &Self) -> Self {
        let comb = |a: &Matrix<E>, b: &Matrix<E>| {
            Matrix::from_fn(self.n, self.n, |i, j| f.add(&a[(i, j)], &f.mul(c, &b[(i, j)])))
        };
        QuadData {
            n: self.n,
            upper: comb(&self.upper, &other.upper),
            polar: comb(&self.polar, &other.polar),
        }
    }

    pub fn eval<F: Field<Elem = E>>(&self, f: &F, x: &[E]) -> E {
        let mut acc = f.zero();
        for i in 0..self.n {
            if f.is_zero(&x[i]) {
                continue;
            }
            for j in i..self.n {
                let u = &self.upper[(i, j)];
                if !f.is_zero(u) && !f.is_zero(&x[j]) {
                    acc = f.add(&acc, &f.mul(u, &f.mul(&x[i], &x[j])));
                }
            }
        }
        acc
    }

    pub fn bilinear<F: Field<Elem = E>>(&self, f: &F, x: &[E], y: &[E]) -> E {
        let py = self.polar.mul_vec(f, y);
        x.iter().zip(&py).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
    }

    /// Rank over the algebraic closure: the polar rank, plus one in
    /// characteristic 2 when the form does not vanish on the polar radical.
    pub fn rank<F: Field<Elem = E>>(&self, f: &F) -> usize {
        let r = self.polar.rank(f);
        if f.characteristic() != 2 {
            return r;
        }
        let extra = self
            .polar
            .kernel_basis(f)
            .iter()
            .any(|v| !f.is_zero(&self.eval(f, v)));
        r + usize::from(extra)
    }

    pub fn embed<F: Field<Elem = E>>(&self, f: &F, ext: &F) -> Self {
        QuadData {
            n: self.n,
            upper: self.upper.map(|x| f.embed(ext, x)),
            polar: self.polar.map(|x| f.embed(ext, x)),
        }
    }
}

/// Rank of a quadric over the algebraic closure: the least number of
/// variables it can be written in after a linear change.
pub fn quad_rank<F: Field>(f: &F, form: &Form<F::Elem>) -> Result<usize> {
    require_quadric(form)?;
    Ok(QuadData::from_form(f, form).rank(f))
}
