//! Normal forms `y1*y2 + ... + y_{2h-1}*y_{2h} (+ y_{2h+1}^2)` by repeated
//! splitting of hyperbolic planes.
//!
//! The splitting runs over the base field while it can; if what is left is
//! anisotropic, the remaining work moves to the quadratic extension.

use super::gram::{quad_rank, require_quadric, QuadData};
use crate::algebra::{Field, Matrix};
use crate::error::{Error, Result};
use crate::forms::{Form, Monomial};

/// Search cap for the rational isotropic-vector heuristic.
const RATIONAL_SEARCH: u64 = 200;

#[derive(Clone, Debug)]
pub struct NormalFormResult<F: Field> {
    pub rank: usize,
    /// Field of `change` and `canonical`: the base field or its quadratic extension.
    pub field: F,
    /// 1 for the base field, 2 for the quadratic extension.
    pub extension: u32,
    /// `F(change * y) = canonical`.
    pub change: Matrix<F::Elem>,
    pub canonical: Form<F::Elem>,
}

/// `y1*y2 + ... + y_{2h-1}*y_{2h}`, plus `y_r^2` when `r` is odd.
pub fn canonical_quadric<F: Field>(f: &F, n: usize, r: usize) -> Form<F::Elem> {
    let mut out = Form::zero(n, 2);
    for k in 0..r / 2 {
        out.add_term(f, Monomial::var(n, 2 * k).mul(&Monomial::var(n, 2 * k + 1)), f.one());
    }
    if r % 2 == 1 {
        out.add_term(f, Monomial::var(n, r - 1).with_exp(r - 1, 2), f.one());
    }
    out
}

enum Step<E> {
    Isotropic(Vec<E>),
    Done { square: Option<Vec<E>>, kernel: Vec<Vec<E>> },
    Stuck,
}

fn scale<F: Field>(f: &F, c: &F::Elem, v: &[F::Elem]) -> Vec<F::Elem> {
    v.iter().map(|x| f.mul(c, x)).collect()
}

/// `a + c * b`.
fn axpy<F: Field>(f: &F, a: &[F::Elem], c: &F::Elem, b: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().zip(b).map(|(x, y)| f.add(x, &f.mul(c, y))).collect()
}

/// Orthogonal basis `(e_i, F(e_i))` with `F(e_i) != 0`, plus a basis of the
/// radical of the polar form restricted to the span. Characteristic not 2.
#[allow(clippy::type_complexity)]
fn orthogonalize<F: Field>(f: &F, q: &QuadData<F::Elem>, w: &[Vec<F::Elem>]) -> (Vec<(Vec<F::Elem>, F::Elem)>, Vec<Vec<F::Elem>>) {
    let mut rest: Vec<Vec<F::Elem>> = w.to_vec();
    let mut diag = Vec::new();
    loop {
        let e = if let Some(k) = rest.iter().position(|x| !f.is_zero(&q.eval(f, x))) {
            rest.remove(k)
        } else {
            let mut hit = None;
            'outer: for i in 0..rest.len() {
                for j in i + 1..rest.len() {
                    if !f.is_zero(&q.bilinear(f, &rest[i], &rest[j])) {
                        hit = Some((i, j));
                        break 'outer;
                    }
                }
            }
            let Some((i, j)) = hit else { break };
            let e = axpy(f, &rest[i], &f.one(), &rest[j]);
            rest.remove(i);
            e
        };
        let a = q.eval(f, &e);
        let bee = f.add(&a, &a);
        rest = rest
            .iter()
            .map(|x| {
                let c = f.neg(&f.div(&q.bilinear(f, x, &e), &bee).expect("nonzero"));
                axpy(f, x, &c, &e)
            })
            .collect();
        diag.push((e, a));
    }
    (diag, rest)
}

/// Symplectic planes `(e, f)` with `B(e, f) = 1`, plus the polar radical of
/// the span. Characteristic 2.
#[allow(clippy::type_complexity)]
fn symplectic<F: Field>(f: &F, q: &QuadData<F::Elem>, w: &[Vec<F::Elem>]) -> (Vec<(Vec<F::Elem>, Vec<F::Elem>)>, Vec<Vec<F::Elem>>) {
    let mut rest: Vec<Vec<F::Elem>> = w.to_vec();
    let mut planes = Vec::new();
    loop {
        let mut hit = None;
        'outer: for i in 0..rest.len() {
            for j in i + 1..rest.len() {
                let b = q.bilinear(f, &rest[i], &rest[j]);
                if !f.is_zero(&b) {
                    hit = Some((i, j, b));
                    break 'outer;
                }
            }
        }
        let Some((i, j, b)) = hit else { break };
        let fv = scale(f, &f.inv(&b).expect("nonzero"), &rest.remove(j));
        let ev = rest.remove(i);
        rest = rest
            .iter()
            .map(|z| {
                let z1 = axpy(f, z, &f.neg(&q.bilinear(f, z, &fv)), &ev);
                axpy(f, &z1, &f.neg(&q.bilinear(f, z, &ev)), &fv)
            })
            .collect();
        planes.push((ev, fv));
    }
    (planes, rest)
}

fn find_step_odd<F: Field>(f: &F, q: &QuadData<F::Elem>, w: &[Vec<F::Elem>]) -> Step<F::Elem> {
    let (diag, rad) = orthogonalize(f, q, w);
    if diag.is_empty() {
        return Step::Done { square: None, kernel: rad };
    }
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let t = f.neg(&f.div(&diag[i].1, &diag[j].1).expect("nonzero"));
            if let Some(s) = f.sqrt(&t) {
                return Step::Isotropic(axpy(f, &diag[i].0, &s, &diag[j].0));
            }
        }
    }
    if diag.len() >= 3 {
        let (a1, a2, a3) = (&diag[0].1, &diag[1].1, &diag[2].1);
        let limit = f.order().unwrap_or(RATIONAL_SEARCH);
        for idx in 0..limit {
            let y = f.element(idx);
            let t = f.neg(&f.div(&f.add(a1, &f.mul(a2, &f.mul(&y, &y))), a3).expect("nonzero"));
            if let Some(z) = f.sqrt(&t) {
                let v = axpy(f, &axpy(f, &diag[0].0, &y, &diag[1].0), &z, &diag[2].0);
                return Step::Isotropic(v);
            }
        }
        return Step::Stuck;
    }
    if diag.len() == 1 {
        if let Some(s) = f.sqrt(&diag[0].1) {
            let u = scale(f, &f.inv(&s).expect("nonzero"), &diag[0].0);
            return Step::Done { square: Some(u), kernel: rad };
        }
    }
    Step::Stuck
}

fn find_step_char2<F: Field>(f: &F, q: &QuadData<F::Elem>, w: &[Vec<F::Elem>]) -> Step<F::Elem> {
    let (planes, rad) = symplectic(f, q, w);
    let rad_vals: Vec<F::Elem> = rad.iter().map(|r| q.eval(f, r)).collect();
    if planes.is_empty() {
        let Some(j) = rad_vals.iter().position(|v| !f.is_zero(v)) else {
            return Step::Done { square: None, kernel: rad };
        };
        // F on the radical is the square of a semilinear form
        let roots: Vec<F::Elem> = rad_vals.iter().map(|v| f.sqrt(v).expect("perfect field")).collect();
        let u = scale(f, &f.inv(&roots[j]).expect("nonzero"), &rad[j]);
        let kernel = (0..rad.len())
            .filter(|&k| k != j)
            .map(|k| {
                let c = f.neg(&f.div(&roots[k], &roots[j]).expect("nonzero"));
                axpy(f, &rad[k], &c, &rad[j])
            })
            .collect();
        return Step::Done { square: Some(u), kernel };
    }
    let mut alphas = Vec::new();
    for (e, fv) in &planes {
        let (a, b) = (q.eval(f, e), q.eval(f, fv));
        if f.is_zero(&a) {
            return Step::Isotropic(e.clone());
        }
        if f.is_zero(&b) {
            return Step::Isotropic(fv.clone());
        }
        // a t^2 + t + b = 0 with t = u / a and u^2 + u = a b
        if let Some(u) = f.artin_schreier_root(&f.mul(&a, &b)) {
            let t = f.div(&u, &a).expect("nonzero");
            return Step::Isotropic(axpy(f, fv, &t, e));
        }
        alphas.push(a);
    }
    if planes.len() >= 2 {
        let c = f.sqrt(&f.div(&alphas[0], &alphas[1]).expect("nonzero")).expect("perfect field");
        return Step::Isotropic(axpy(f, &planes[0].0, &c, &planes[1].0));
    }
    if let Some(k) = rad_vals.iter().position(|v| !f.is_zero(v)) {
        let c = f.sqrt(&f.div(&alphas[0], &rad_vals[k]).expect("nonzero")).expect("perfect field");
        return Step::Isotropic(axpy(f, &planes[0].0, &c, &rad[k]));
    }
    Step::Stuck
}

/// Basis of the row space, as the nonzero rows of the reduced echelon form.
fn span_basis<F: Field>(f: &F, vecs: &[Vec<F::Elem>], n: usize) -> Vec<Vec<F::Elem>> {
    if vecs.is_empty() {
        return Vec::new();
    }
    let (r, piv) = Matrix::from_rows(vecs.to_vec(), n).rref(f);
    (0..piv.len()).map(|i| r.row(i).to_vec()).collect()
}

pub fn normal_form<F: Field>(f: &F, form: &Form<F::Elem>) -> Result<NormalFormResult<F>> {
    require_quadric(form)?;
    let n = form.nvars();
    let mut field = f.clone();
    let mut extension = 1;
    let mut q = QuadData::from_form(f, form);
    let mut w: Vec<Vec<F::Elem>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect())
        .collect();
    let mut pairs: Vec<(Vec<F::Elem>, Vec<F::Elem>)> = Vec::new();
    let (square, kernel) = loop {
        let step = if field.characteristic() == 2 {
            find_step_char2(&field, &q, &w)
        } else {
            find_step_odd(&field, &q, &w)
        };
        match step {
            Step::Isotropic(v) => {
                let fd = &field;
                let (k, b) = w
                    .iter()
                    .enumerate()
                    .map(|(k, x)| (k, q.bilinear(fd, &v, x)))
                    .find(|(_, b)| !fd.is_zero(b))
                    .expect("isotropic vector outside the radical");
                let w0 = scale(fd, &fd.inv(&b).expect("nonzero"), &w[k]);
                let wv = axpy(fd, &w0, &fd.neg(&q.eval(fd, &w0)), &v);
                let projected: Vec<Vec<F::Elem>> = w
                    .iter()
                    .map(|x| {
                        let x1 = axpy(fd, x, &fd.neg(&q.bilinear(fd, x, &wv)), &v);
                        axpy(fd, &x1, &fd.neg(&q.bilinear(fd, x, &v)), &wv)
                    })
                    .collect();
                w = span_basis(fd, &projected, n);
                pairs.push((v, wv));
            }
            Step::Done { square, kernel } => break (square, kernel),
            Step::Stuck => {
                if extension > 1 {
                    return Err(Error::Unsupported("normal form did not split over the quadratic extension".into()));
                }
                let Some(ext) = field.quadratic_extension() else {
                    return Err(Error::Unsupported(format!(
                        "normal form of {} needs a quadratic extension of {}",
                        form.display(f),
                        f.spec()
                    )));
                };
                let lift = |v: &Vec<F::Elem>| v.iter().map(|x| f.embed(&ext, x)).collect::<Vec<_>>();
                q = q.embed(f, &ext);
                w = w.iter().map(lift).collect();
                pairs = pairs.iter().map(|(a, b)| (lift(a), lift(b))).collect();
                field = ext;
                extension = 2;
            }
        }
    };
    let rank = 2 * pairs.len() + usize::from(square.is_some());
    let mut cols: Vec<Vec<F::Elem>> = Vec::with_capacity(n);
    for (v, wv) in pairs {
        cols.push(v);
        cols.push(wv);
    }
    cols.extend(square);
    cols.extend(kernel);
    debug_assert_eq!(cols.len(), n);
    let change = Matrix::from_rows(cols, n).transpose();
    let canonical = canonical_quadric(&field, n, rank);
    Ok(NormalFormResult {
        rank,
        field,
        extension,
        change,
        canonical,
    })
}

/// A decomposition `F = sum G_t * H_t` into products of lower-degree forms.
#[derive(Clone, Debug)]
pub struct CollapseWitness<F: Field> {
    /// Field of the factors.
    pub field: F,
    /// 1 for the base field, 2 for its quadratic extension.
    pub extension: u32,
    pub pairs: Vec<(Form<F::Elem>, Form<F::Elem>)>,
}

impl<F: Field> CollapseWitness<F> {
    pub fn expand(&self, nvars: usize, degree: u32) -> Form<F::Elem> {
        let f = &self.field;
        self.pairs
            .iter()
            .fold(Form::zero(nvars, degree), |acc, (g, h)| acc.add(f, &g.mul(f, h)))
    }

    /// Whether the products reproduce `form`, given over the base field `base`.
    pub fn reproduces(&self, base: &F, form: &Form<F::Elem>) -> bool {
        let target = if self.extension > 1 { form.embed(base, &self.field) } else { form.clone() };
        self.pairs
            .iter()
            .all(|(g, h)| g.degree() > 0 && h.degree() > 0 && g.degree() + h.degree() == form.degree())
            && self.expand(form.nvars(), form.degree()) == target
    }
}

/// A witness with at most `k` products iff the rank is at most `2k`.
pub fn collapse_witness<F: Field>(f: &F, form: &Form<F::Elem>, k: usize) -> Result<Option<CollapseWitness<F>>> {
    require_quadric(form)?;
    if quad_rank(f, form)? > 2 * k {
        return Ok(None);
    }
    let nf = normal_form(f, form)?;
    let fd = &nf.field;
    let inv = nf.change.inverse(fd).expect("normal form change is invertible");
    let coord = |i: usize| Form::linear(fd, inv.row(i));
    let mut pairs = Vec::new();
    for t in 0..nf.rank / 2 {
        pairs.push((coord(2 * t), coord(2 * t + 1)));
    }
    if nf.rank % 2 == 1 {
        let y = coord(nf.rank - 1);
        pairs.push((y.clone(), y));
    }
    Ok(Some(CollapseWitness {
        field: nf.field,
        extension: nf.extension,
        pairs,
    }))
}

/// Strength over the algebraic closure: `ceil(r/2) - 1`.
pub fn strength_quadric<F: Field>(f: &F, form: &Form<F::Elem>) -> Result<usize> {
    require_quadric(form)?;
    if form.is_zero() {
        return Err(Error::ZeroForm);
    }
    let r = quad_rank(f, form)?;
    Ok(r.div_ceil(2) - 1)
}

/// Height of the ideal of `F` and its partials, which equals the rank.
pub fn jrank_quadric<F: Field>(f: &F, form: &Form<F::Elem>) -> Result<usize> {
    require_quadric(form)?;
    if form.is_zero() {
        return Err(Error::ZeroForm);
    }
    quad_rank(f, form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Gf, Rationals};
    use crate::forms::{derivative_space, parse_form, parse_form_in};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn check(f: &Gf, form: &Form<u64>) -> NormalFormResult<Gf> {
        let nf = normal_form(f, form).unwrap();
        let lifted = if nf.extension == 1 { form.clone() } else { form.embed(f, &nf.field) };
        assert_eq!(lifted.change_vars(&nf.field, &nf.change).unwrap(), nf.canonical, "{}", form.display(f));
        assert_eq!(nf.rank, quad_rank(f, form).unwrap());
        nf
    }

    #[test]
    fn normal_form_examples() {
        let q = Rationals;
        let nf = normal_form(&q, &parse_form(&q, "x1^2 + x1*x2").unwrap()).unwrap();
        assert_eq!((nf.rank, nf.extension), (2, 1));
        let g5 = Gf::prime(5).unwrap();
        assert_eq!(check(&g5, &parse_form(&g5, "x1^2 + x2^2").unwrap()).extension, 1);
        let g3 = Gf::prime(3).unwrap();
        let nf = check(&g3, &parse_form(&g3, "x1^2 + x2^2").unwrap());
        assert_eq!((nf.rank, nf.extension), (2, 2));
        assert!(normal_form(&q, &parse_form(&q, "x1^2 - 2*x2^2").unwrap()).is_err());
    }

    #[test]
    fn random_normal_forms_reproduce_canonical() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for f in [Gf::prime(2).unwrap(), Gf::prime(3).unwrap(), Gf::prime(5).unwrap(), Gf::binary(2).unwrap()] {
            for _ in 0..200 {
                let n = rng.gen_range(1..=6);
                let basis = Monomial::all_of_degree(n, 2);
                let c: Vec<u64> = basis
                    .iter()
                    .map(|_| if rng.gen_bool(0.5) { 0 } else { rng.gen_range(0..f.size()) })
                    .collect();
                let form = Form::from_coeffs(&f, n, 2, &basis, &c);
                let nf = check(&f, &form);
                let d = derivative_space(&f, &form).dim();
                let expect = if f.characteristic() == 2 && nf.rank % 2 == 1 { nf.rank - 1 } else { nf.rank };
                assert_eq!(d, expect);
            }
        }
    }

    #[test]
    fn strength_examples() {
        let f = Gf::prime(7).unwrap();
        assert_eq!(strength_quadric(&f, &parse_form(&f, "x1*x2").unwrap()).unwrap(), 0);
        assert_eq!(strength_quadric(&f, &parse_form(&f, "x1*x2 + x3*x4").unwrap()).unwrap(), 1);
        assert_eq!(strength_quadric(&f, &parse_form(&f, "x1*x2 + x3*x4 + x5^2").unwrap()).unwrap(), 2);
        assert_eq!(strength_quadric(&f, &Form::zero(2, 2)), Err(Error::ZeroForm));
        assert_eq!(jrank_quadric(&f, &parse_form(&f, "x1*x2 + x3*x4").unwrap()).unwrap(), 4);
    }

    #[test]
    fn collapse_examples() {
        let f = Gf::prime(5).unwrap();
        let g = parse_form(&f, "x1*x2 + x3*x4").unwrap();
        let w = collapse_witness(&f, &g, 2).unwrap().unwrap();
        assert_eq!(w.pairs.len(), 2);
        assert!(w.reproduces(&f, &g));
        assert!(collapse_witness(&f, &g, 1).unwrap().is_none());
        let h = parse_form(&f, "x1^2 + x2^2").unwrap();
        let w = collapse_witness(&f, &h, 1).unwrap().unwrap();
        assert_eq!((w.pairs.len(), w.extension), (1, 1));
        assert!(w.reproduces(&f, &h));
        let g3 = Gf::prime(3).unwrap();
        let h3 = parse_form_in(&g3, "x1^2 + x2^2", 2).unwrap();
        let w = collapse_witness(&g3, &h3, 1).unwrap().unwrap();
        assert_eq!(w.extension, 2);
        assert!(w.reproduces(&g3, &h3));
    }
}
