use std::collections::BTreeMap;

use super::monomial::Monomial;
use crate::algebra::{Field, Matrix};
use crate::error::{Error, Result};

/// A homogeneous polynomial. Only nonzero coefficients are stored and every
/// stored monomial has total degree `degree`; the zero form keeps its degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form<E> {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Monomial, E>,
}

impl<E: Clone + PartialEq> Form<E> {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        Form {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Collects terms, merging repeats and dropping zeros.
    pub fn from_terms<F: Field<Elem = E>>(
        f: &F,
        nvars: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (Monomial, E)>,
    ) -> Result<Self> {
        let mut out = Form::zero(nvars, degree);
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(Error::InvalidArgument(format!(
                    "monomial {m} is not in {nvars} variables"
                )));
            }
            if m.degree() != degree {
                return Err(Error::WrongDegree {
                    expected: degree,
                    got: m.degree(),
                });
            }
            out.add_term(f, m, c);
        }
        Ok(out)
    }

    pub fn var<F: Field<Elem = E>>(f: &F, nvars: usize, i: usize) -> Self {
        let mut out = Form::zero(nvars, 1);
        out.terms.insert(Monomial::var(nvars, i), f.one());
        out
    }

    pub fn constant<F: Field<Elem = E>>(f: &F, nvars: usize, c: E) -> Self {
        let mut out = Form::zero(nvars, 0);
        out.add_term(f, Monomial::one(nvars), c);
        out
    }

    /// The linear form `sum c_i x_i`.
    pub fn linear<F: Field<Elem = E>>(f: &F, coeffs: &[E]) -> Self {
        let n = coeffs.len();
        let mut out = Form::zero(n, 1);
        for (i, c) in coeffs.iter().enumerate() {
            out.add_term(f, Monomial::var(n, i), c.clone());
        }
        out
    }

    /// Coefficients over the monomial list `basis` (missing monomials give zero).
    pub fn from_coeffs<F: Field<Elem = E>>(f: &F, nvars: usize, degree: u32, basis: &[Monomial], coeffs: &[E]) -> Self {
        let mut out = Form::zero(nvars, degree);
        for (m, c) in basis.iter().zip(coeffs) {
            out.add_term(f, m.clone(), c.clone());
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms from the largest monomial down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &E)> {
        self.terms.iter().rev()
    }

    pub fn leading(&self) -> Option<(&Monomial, &E)> {
        self.terms.iter().next_back()
    }

    pub fn coeff<F: Field<Elem = E>>(&self, f: &F, m: &Monomial) -> E {
        self.terms.get(m).cloned().unwrap_or_else(|| f.zero())
    }

    pub fn coeff_vector<F: Field<Elem = E>>(&self, f: &F, basis: &[Monomial]) -> Vec<E> {
        basis.iter().map(|m| self.coeff(f, m)).collect()
    }

    /// Coefficient vector of a linear form.
    pub fn linear_coeffs<F: Field<Elem = E>>(&self, f: &F) -> Vec<E> {
        (0..self.nvars)
            .map(|i| self.coeff(f, &Monomial::var(self.nvars, i)))
            .collect()
    }

    pub fn add_term<F: Field<Elem = E>>(&mut self, f: &F, m: Monomial, c: E) {
        debug_assert_eq!(m.degree(), self.degree);
        if f.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = f.add(old, &c);
                if f.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Variables that occur in some term.
    pub fn support_vars(&self) -> Vec<usize> {
        let mut used = vec![false; self.nvars];
        for m in self.terms.keys() {
            for i in m.support() {
                used[i] = true;
            }
        }
        (0..self.nvars).filter(|&i| used[i]).collect()
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "forms in different rings");
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(f, m.clone(), c.clone());
        }
        out
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        self.add(f, &other.neg(f))
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Self {
        self.map_coeffs(|c| f.neg(c))
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        if f.is_zero(c) {
            return Form::zero(self.nvars, self.degree);
        }
        self.map_coeffs(|x| f.mul(x, c))
    }

    /// Applies `g` to every coefficient; `g` must send nonzero values to nonzero values.
    pub fn map_coeffs<T: Clone + PartialEq>(&self, g: impl Fn(&E) -> T) -> Form<T> {
        Form {
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), g(c))).collect(),
        }
    }

    /// Moves every coefficient into `ext`.
    pub fn embed<F: Field<Elem = E>>(&self, f: &F, ext: &F) -> Self {
        let mut out = Form::zero(self.nvars, self.degree);
        for (m, c) in &self.terms {
            out.add_term(ext, m.clone(), f.embed(ext, c));
        }
        out
    }

    /// Inverse of [`Form::embed`], if every coefficient lies in the base field.
    pub fn restrict<F: Field<Elem = E>>(&self, f: &F, ext: &F) -> Option<Self> {
        let mut out = Form::zero(self.nvars, self.degree);
        for (m, c) in &self.terms {
            out.add_term(f, m.clone(), f.restrict(ext, c)?);
        }
        Some(out)
    }

    /// Same polynomial viewed in a ring with `nvars >= self.nvars` variables.
    pub fn extend_vars(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.exps().to_vec();
                e.resize(nvars, 0);
                (Monomial::new(e), c.clone())
            })
            .collect();
        Form {
            nvars,
            degree: self.degree,
            terms,
        }
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "forms in different rings");
        let mut out = Form::zero(self.nvars, self.degree + other.degree);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(f, m1.mul(m2), f.mul(c1, c2));
            }
        }
        out
    }

    pub fn mul_monomial<F: Field<Elem = E>>(&self, f: &F, m: &Monomial, c: &E) -> Self {
        let mut out = Form::zero(self.nvars, self.degree + m.degree());
        for (m1, c1) in &self.terms {
            out.add_term(f, m1.mul(m), f.mul(c1, c));
        }
        out
    }

    pub fn pow<F: Field<Elem = E>>(&self, f: &F, e: u32) -> Self {
        let mut acc = Form::constant(f, self.nvars, f.one());
        for _ in 0..e {
            acc = acc.mul(f, self);
        }
        acc
    }

    /// Formal partial derivative in the variable with 0-based index `i`.
    pub fn partial<F: Field<Elem = E>>(&self, f: &F, i: usize) -> Result<Self> {
        if i >= self.nvars {
            return Err(Error::InvalidArgument(format!(
                "variable x{} out of range 1..={}",
                i + 1,
                self.nvars
            )));
        }
        let mut out = Form::zero(self.nvars, self.degree.saturating_sub(1));
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            out.add_term(f, m.with_exp(i, e - 1), f.mul(c, &f.from_i64(e as i64)));
        }
        Ok(out)
    }

    pub fn eval<F: Field<Elem = E>>(&self, f: &F, point: &[E]) -> E {
        assert_eq!(point.len(), self.nvars);
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                if e > 0 {
                    t = f.mul(&t, &f.pow(x, e as u64));
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Substitutes `images[i]` for `x_i`. All images must share one degree
    /// and one ring.
    pub fn substitute<F: Field<Elem = E>>(&self, f: &F, images: &[Form<E>]) -> Self {
        assert_eq!(images.len(), self.nvars);
        let img_deg = images.first().map_or(1, |g| g.degree);
        let img_vars = images.first().map_or(self.nvars, |g| g.nvars);
        let mut out = Form::zero(img_vars, self.degree * img_deg);
        // cache powers per variable
        let mut powers: Vec<Vec<Form<E>>> = images
            .iter()
            .map(|g| vec![Form::constant(f, img_vars, f.one()), g.clone()])
            .collect();
        for (m, c) in &self.terms {
            let mut t = Form::constant(f, img_vars, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(f, &images[i]);
                    powers[i].push(next);
                }
                t = t.mul(f, &powers[i][e as usize]);
            }
            for (m2, c2) in t.terms {
                out.add_term(f, m2, c2);
            }
        }
        out
    }

    /// `F(A y)`: substitutes `x_i = sum_j A[i][j] y_j`. The matrix must be invertible.
    pub fn change_vars<F: Field<Elem = E>>(&self, f: &F, a: &Matrix<E>) -> Result<Self> {
        if a.rows() != self.nvars || !a.is_square() {
            return Err(Error::InvalidArgument(format!(
                "change of variables must be {0}x{0}",
                self.nvars
            )));
        }
        if a.rank(f) < self.nvars {
            return Err(Error::Singular);
        }
        Ok(self.apply_linear_map(f, a))
    }

    /// `F(A y)` for any `N x M` matrix `A`, giving a form in `M` variables.
    pub fn apply_linear_map<F: Field<Elem = E>>(&self, f: &F, a: &Matrix<E>) -> Self {
        let images: Vec<Form<E>> = (0..a.rows()).map(|i| Form::linear(f, a.row(i))).collect();
        if images.is_empty() {
            return Form::zero(a.cols(), self.degree);
        }
        self.substitute(f, &images)
    }

    /// `sum_{i,j} x_i x_j d^2F/dx_i dx_j`, which equals `d(d-1) F`.
    pub fn iterated_euler<F: Field<Elem = E>>(&self, f: &F) -> Self {
        let n = self.nvars;
        let mut out = Form::zero(n, self.degree);
        if self.degree < 2 {
            return out;
        }
        for i in 0..n {
            let di = self.partial(f, i).expect("index in range");
            for j in 0..n {
                let dij = di.partial(f, j).expect("index in range");
                if dij.is_zero() {
                    continue;
                }
                let mut m = Monomial::one(n).with_exp(i, 1);
                m = m.with_exp(j, m.exp(j) + 1);
                out = out.add(f, &dij.mul_monomial(f, &m, &f.one()));
            }
        }
        out
    }

    /// Writes the form in the polynomial grammar, largest monomial first.
    pub fn display<F: Field<Elem = E>>(&self, f: &F) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms().enumerate() {
            let text = f.format_elem(c);
            let (neg, mag) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let is_const = m.degree() == 0;
            if mag == "1" && !is_const {
                s.push_str(&m.to_string());
            } else if is_const {
                s.push_str(&mag);
            } else {
                s.push_str(&mag);
                s.push('*');
                s.push_str(&m.to_string());
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Gf, Rationals};
    use crate::forms::parse_form;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_form(f: &Gf, rng: &mut ChaCha8Rng, n: usize, d: u32) -> Form<u64> {
        let basis = Monomial::all_of_degree(n, d);
        let coeffs: Vec<u64> = basis.iter().map(|_| rng.gen_range(0..f.size())).collect();
        Form::from_coeffs(f, n, d, &basis, &coeffs)
    }

    fn random_invertible(f: &Gf, rng: &mut ChaCha8Rng, n: usize) -> Matrix<u64> {
        loop {
            let m = Matrix::from_fn(n, n, |_, _| rng.gen_range(0..f.size()));
            if m.rank(f) == n {
                return m;
            }
        }
    }

    #[test]
    fn partial_derivative_examples() {
        let q = Rationals;
        let f = parse_form(&q, "x1^2*x2").unwrap();
        assert_eq!(f.partial(&q, 0).unwrap().display(&q), "2*x1*x2");
        let g2 = Gf::prime(2).unwrap();
        let sq = parse_form(&g2, "x1^2").unwrap();
        assert!(sq.partial(&g2, 0).unwrap().is_zero());
        let c = parse_form(&q, "x1*x2*x3").unwrap();
        assert_eq!(c.partial(&q, 1).unwrap().display(&q), "x1*x3");
        assert!(c.partial(&q, 3).is_err());
    }

    #[test]
    fn change_vars_examples() {
        let q = Rationals;
        let f = parse_form(&q, "x1^2").unwrap().extend_vars(2);
        assert_eq!(f.change_vars(&q, &Matrix::identity(&q, 2)).unwrap(), f);
        // x1 -> x1 + x2
        let a = Matrix::from_rows(
            vec![vec![q.one(), q.one()], vec![q.zero(), q.one()]],
            2,
        );
        assert_eq!(
            f.change_vars(&q, &a).unwrap().display(&q),
            "x1^2 + 2*x1*x2 + x2^2"
        );
        assert_eq!(
            f.change_vars(&q, &Matrix::zeros(&q, 2, 2)),
            Err(Error::Singular)
        );
    }

    #[test]
    fn change_vars_composes_as_substitution() {
        // F(A(B y)) = (F∘A)(B y)
        let f = Gf::prime(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let form = random_form(&f, &mut rng, 3, 3);
            let a = random_invertible(&f, &mut rng, 3);
            let b = random_invertible(&f, &mut rng, 3);
            let direct = form.change_vars(&f, &a.mul(&f, &b)).unwrap();
            let staged = form
                .change_vars(&f, &a)
                .unwrap()
                .change_vars(&f, &b)
                .unwrap();
            assert_eq!(direct, staged);
        }
    }

    #[test]
    fn iterated_euler_examples() {
        let q = Rationals;
        let f = parse_form(&q, "x1*x2").unwrap();
        assert_eq!(f.iterated_euler(&q).display(&q), "2*x1*x2");
        for p in [2, 3] {
            let g = Gf::prime(p).unwrap();
            let quartic = parse_form(&g, "x1^4 + x1*x2*x3^2 + x2^3*x3").unwrap();
            assert!(quartic.iterated_euler(&g).is_zero());
        }
    }

    #[test]
    fn display_over_q_uses_minus() {
        let q = Rationals;
        let f = parse_form(&q, "-x1^2 + 3/2*x1*x2 - 2*x2^2").unwrap();
        assert_eq!(f.display(&q), "-x1^2 + 3/2*x1*x2 - 2*x2^2");
    }

    proptest! {
        #[test]
        fn euler_identity_in_every_characteristic(seed in any::<u64>(), which in 0usize..4, d in 1u32..5) {
            let f = [Gf::prime(5).unwrap(), Gf::prime(2).unwrap(), Gf::prime(3).unwrap(), Gf::binary(2).unwrap()][which].clone();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let form = random_form(&f, &mut rng, 4, d);
            let k = f.from_i64((d * (d - 1)) as i64);
            prop_assert_eq!(form.iterated_euler(&f), form.scale(&f, &k));
        }

        #[test]
        fn leibniz_rule(seed in any::<u64>(), i in 0usize..4) {
            let f = Gf::prime(7).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_form(&f, &mut rng, 4, 2);
            let b = random_form(&f, &mut rng, 4, 1);
            let lhs = a.mul(&f, &b).partial(&f, i).unwrap();
            let rhs = a.partial(&f, i).unwrap().mul(&f, &b).add(&f, &a.mul(&f, &b.partial(&f, i).unwrap()));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
