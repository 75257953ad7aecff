use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::form::Form;
use super::linear::LinearPool;
use crate::algebra::{Field, Matrix};
use crate::error::{Error, Result};

/// Per-degree dimensions `(n_1, ..., n_d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct DimensionSequence(pub Vec<usize>);

impl DimensionSequence {
    /// Dimension in degree `d >= 1`, zero past the end.
    pub fn get(&self, d: u32) -> usize {
        self.0.get(d as usize - 1).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

/// A graded space of forms kept as a reduced echelon basis in each degree.
///
/// Within a degree every basis form has leading coefficient 1 and no other
/// basis form contains its leading monomial, which makes the basis unique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubspace<E> {
    nvars: usize,
    pieces: BTreeMap<u32, Vec<Form<E>>>,
}

impl<E: Clone + PartialEq> GradedSubspace<E> {
    pub fn new(nvars: usize) -> Self {
        GradedSubspace {
            nvars,
            pieces: BTreeMap::new(),
        }
    }

    pub fn from_forms<F: Field<Elem = E>>(f: &F, nvars: usize, forms: &[Form<E>]) -> Self {
        let mut v = GradedSubspace::new(nvars);
        for g in forms {
            v.insert(f, g);
        }
        v
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Echelon basis in degree `d`, ordered by decreasing leading monomial.
    pub fn basis(&self, d: u32) -> &[Form<E>] {
        self.pieces.get(&d).map_or(&[], |v| v.as_slice())
    }

    /// Degrees with a nonzero piece, ascending.
    pub fn degrees(&self) -> Vec<u32> {
        self.pieces.keys().copied().collect()
    }

    pub fn max_degree(&self) -> u32 {
        self.pieces.keys().next_back().copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.pieces.values().map(Vec::len).sum()
    }

    /// Every basis form, lowest degree first.
    pub fn all_forms(&self) -> Vec<Form<E>> {
        self.pieces.values().flatten().cloned().collect()
    }

    pub fn dimension_sequence(&self) -> DimensionSequence {
        let top = self.max_degree();
        DimensionSequence((1..=top).map(|d| self.basis(d).len()).collect())
    }

    /// Remainder of `g` after eliminating the leading monomials of the basis.
    pub fn reduce<F: Field<Elem = E>>(&self, f: &F, g: &Form<E>) -> Form<E> {
        let mut r = g.clone();
        for b in self.basis(g.degree()) {
            let (lm, _) = b.leading().expect("basis forms are nonzero");
            let c = r.coeff(f, lm);
            if !f.is_zero(&c) {
                r = r.sub(f, &b.scale(f, &c));
            }
        }
        r
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, g: &Form<E>) -> bool {
        self.reduce(f, g).is_zero()
    }

    /// Adds `g` to the span; returns whether the dimension grew.
    pub fn insert<F: Field<Elem = E>>(&mut self, f: &F, g: &Form<E>) -> bool {
        assert_eq!(g.nvars(), self.nvars, "form in a different ring");
        let r = self.reduce(f, g);
        let Some((lm, lc)) = r.leading() else {
            return false;
        };
        let lm = lm.clone();
        let r = r.scale(f, &f.inv(lc).expect("nonzero"));
        let piece = self.pieces.entry(g.degree()).or_default();
        for b in piece.iter_mut() {
            let c = b.coeff(f, &lm);
            if !f.is_zero(&c) {
                *b = b.sub(f, &r.scale(f, &c));
            }
        }
        let pos = piece
            .iter()
            .position(|b| b.leading().expect("nonzero").0 < &lm)
            .unwrap_or(piece.len());
        piece.insert(pos, r);
        true
    }

    /// Image under `F -> F(A y)` for an invertible `A`.
    pub fn change_vars<F: Field<Elem = E>>(&self, f: &F, a: &Matrix<E>) -> Result<Self> {
        let mut out = GradedSubspace::new(self.nvars);
        for g in self.all_forms() {
            out.insert(f, &g.change_vars(f, a)?);
        }
        Ok(out)
    }

    pub fn embed<F: Field<Elem = E>>(&self, f: &F, ext: &F) -> Self {
        let forms: Vec<Form<E>> = self.all_forms().iter().map(|g| g.embed(f, ext)).collect();
        GradedSubspace::from_forms(ext, self.nvars, &forms)
    }
}

/// The span of all first partial derivatives of `form`.
pub fn derivative_space<F: Field>(f: &F, form: &Form<F::Elem>) -> GradedSubspace<F::Elem> {
    let mut v = GradedSubspace::new(form.nvars());
    for i in 0..form.nvars() {
        let d = form.partial(f, i).expect("index in range");
        v.insert(f, &d);
    }
    v
}

/// Image of `v` modulo the independent linear forms `lin`, realized by
/// eliminating one pivot variable per linear form. Variable numbering is kept,
/// so the eliminated variables simply no longer occur.
pub fn reduce_mod_linear<F: Field>(
    f: &F,
    v: &GradedSubspace<F::Elem>,
    lin: &[Form<F::Elem>],
) -> Result<GradedSubspace<F::Elem>> {
    let pool = LinearPool::from_independent(f, v.nvars(), lin)?;
    let mut out = GradedSubspace::new(v.nvars());
    for g in v.all_forms() {
        out.insert(f, &pool.reduce(f, &g));
    }
    Ok(out)
}

pub fn dimension_sequence<E: Clone + PartialEq>(v: &GradedSubspace<E>) -> DimensionSequence {
    v.dimension_sequence()
}

/// Rejects spaces that contain forms of degree 0 or above `max_degree`.
pub fn check_degrees<E: Clone + PartialEq>(v: &GradedSubspace<E>, max_degree: u32) -> Result<()> {
    for d in v.degrees() {
        if d == 0 || d > max_degree {
            return Err(Error::WrongDegree {
                expected: max_degree,
                got: d,
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Gf, Rationals};
    use crate::forms::{parse_form, parse_forms};
    use crate::forms::Monomial;
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
    fn dimension_sequence_examples() {
        let q = Rationals;
        let forms = parse_forms(&q, "x1\nx2^2\nx1*x2").unwrap();
        let v = GradedSubspace::from_forms(&q, 2, &forms);
        assert_eq!(v.dimension_sequence(), DimensionSequence(vec![1, 2]));
        assert_eq!(GradedSubspace::<u64>::new(3).dimension_sequence(), DimensionSequence(vec![]));
    }

    #[test]
    fn derivative_space_examples() {
        let q = Rationals;
        let f = parse_form(&q, "x1*x2 + x3*x4").unwrap();
        assert_eq!(derivative_space(&q, &f).dim(), 4);
        let g2 = Gf::prime(2).unwrap();
        let h = parse_form(&g2, "x1*x2 + x3^2").unwrap();
        assert_eq!(derivative_space(&g2, &h).dim(), 2);
        assert_eq!(derivative_space(&q, &Form::zero(3, 2)).dim(), 0);
    }

    #[test]
    fn reduce_mod_linear_examples() {
        let q = Rationals;
        let f = parse_form(&q, "x1*x2 + x3*x4").unwrap();
        let v = GradedSubspace::from_forms(&q, 4, &[f]);
        let x1 = Form::var(&q, 4, 0);
        let r = reduce_mod_linear(&q, &v, &[x1.clone()]).unwrap();
        assert_eq!(r.basis(2)[0].display(&q), "x3*x4");
        let all: Vec<_> = (0..4).map(|i| Form::var(&q, 4, i)).collect();
        assert!(reduce_mod_linear(&q, &v, &all).unwrap().is_zero());
        assert_eq!(
            reduce_mod_linear(&q, &v, &[x1.clone(), x1]),
            Err(Error::Dependent)
        );
    }

    #[test]
    fn echelon_basis_is_canonical() {
        let f = Gf::prime(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..30 {
            let forms: Vec<_> = (0..3).map(|_| random_form(&f, &mut rng, 3, 2)).collect();
            let a = GradedSubspace::from_forms(&f, 3, &forms);
            // a different spanning set of the same space
            let mixed: Vec<_> = (0..3)
                .map(|i| forms[i].add(&f, &forms[(i + 1) % 3].scale(&f, &2)))
                .chain(forms.iter().cloned())
                .collect();
            let b = GradedSubspace::from_forms(&f, 3, &mixed);
            assert_eq!(a, b);
        }
    }

    proptest! {
        #[test]
        fn derivative_space_commutes_with_change_vars(seed in any::<u64>()) {
            let f = Gf::prime(5).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let form = random_form(&f, &mut rng, 3, 3);
            let a = random_invertible(&f, &mut rng, 3);
            let lhs = derivative_space(&f, &form.change_vars(&f, &a).unwrap());
            let rhs = derivative_space(&f, &form).change_vars(&f, &a).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn dimension_sequence_is_change_vars_invariant(seed in any::<u64>()) {
            let f = Gf::binary(2).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let forms: Vec<_> = (0..4).map(|i| random_form(&f, &mut rng, 3, 1 + (i % 3) as u32)).collect();
            let v = GradedSubspace::from_forms(&f, 3, &forms);
            let a = random_invertible(&f, &mut rng, 3);
            prop_assert_eq!(v.change_vars(&f, &a).unwrap().dimension_sequence(), v.dimension_sequence());
        }

        #[test]
        fn reduction_never_grows_dimensions(seed in any::<u64>(), nl in 1usize..4) {
            let f = Gf::prime(7).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let quads: Vec<_> = (0..3).map(|_| random_form(&f, &mut rng, 5, 2)).collect();
            let v = GradedSubspace::from_forms(&f, 5, &quads);
            let mut pool = GradedSubspace::new(5);
            while pool.dim() < nl {
                pool.insert(&f, &random_form(&f, &mut rng, 5, 1));
            }
            let r = reduce_mod_linear(&f, &v, pool.basis(1)).unwrap();
            prop_assert!(r.basis(2).len() <= v.basis(2).len());
            for g in r.all_forms() {
                prop_assert!(g.support_vars().len() <= 5 - nl);
            }
        }
    }
}
