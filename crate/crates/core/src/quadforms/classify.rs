//! Spaces of quadrics all of whose elements factor.

use super::gram::QuadData;
use super::normal::collapse_witness;
use super::space::visit_projective;
use crate::algebra::{Field, Matrix};
use crate::error::{Error, Result};
use crate::forms::{Form, GradedSubspace, LinearPool};
use crate::oracle::Budget;

#[derive(Clone, Debug)]
pub enum ReducibleClassification<F: Field> {
    /// Every element is divisible by `factor` (over `field`).
    CommonLinearFactor { field: F, extension: u32, factor: Form<F::Elem> },
    /// Every element is a quadric in the two linear forms `u`, `v`.
    TwoVariableSpace { u: Form<F::Elem>, v: Form<F::Elem> },
    /// Characteristic 2 and every element is a square of a linear form.
    Char2AllSquares,
    /// Some element has closure rank at least 3.
    NotAllReducible { field: F, extension: u32, witness: Form<F::Elem>, rank: usize },
}

impl<F: Field> ReducibleClassification<F> {
    pub fn tag(&self) -> &'static str {
        match self {
            ReducibleClassification::CommonLinearFactor { .. } => "common-linear-factor",
            ReducibleClassification::TwoVariableSpace { .. } => "two-variable-space",
            ReducibleClassification::Char2AllSquares => "char2-all-squares",
            ReducibleClassification::NotAllReducible { .. } => "not-all-reducible",
        }
    }
}

fn monic<F: Field>(f: &F, l: &Form<F::Elem>) -> Form<F::Elem> {
    match l.leading() {
        Some((_, c)) => l.scale(f, &f.inv(c).expect("nonzero")),
        None => l.clone(),
    }
}

fn divides_all<F: Field>(f: &F, l: &Form<F::Elem>, forms: &[Form<F::Elem>]) -> bool {
    let pool = LinearPool::from_independent(f, l.nvars(), std::slice::from_ref(l)).expect("nonzero linear form");
    forms.iter().all(|g| pool.divide(f, g).1.is_zero())
}

/// Vectors `w` with `G(x + w) = G(x)` for every `G` in the space: the common
/// polar radical, cut down in characteristic 2 to where every `G` vanishes.
pub(crate) fn invariant_directions<F: Field>(f: &F, images: &[QuadData<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let n = images[0].n;
    let mut rows = Vec::new();
    for q in images {
        rows.extend(q.polar.to_rows());
    }
    let mut k = Matrix::from_rows(rows, n).kernel_basis(f);
    if f.characteristic() == 2 {
        // on the radical each G is additive with G(sum a_j b_j) = (sum a_j sqrt(G(b_j)))^2
        for q in images {
            if k.is_empty() {
                break;
            }
            let roots: Vec<F::Elem> = k
                .iter()
                .map(|b| f.sqrt(&q.eval(f, b)).expect("perfect field"))
                .collect();
            let sub = Matrix::from_rows(vec![roots], k.len()).kernel_basis(f);
            k = sub
                .iter()
                .map(|a| {
                    (0..n)
                        .map(|i| a.iter().zip(&k).fold(f.zero(), |acc, (aj, b)| f.add(&acc, &f.mul(aj, &b[i]))))
                        .collect()
                })
                .collect();
        }
    }
    k
}

fn search_witness<F: Field>(
    f: &F,
    forms: &[Form<F::Elem>],
    budget: &Budget,
) -> Result<Option<(Form<F::Elem>, usize)>> {
    let images: Vec<QuadData<F::Elem>> = forms.iter().map(|g| QuadData::from_form(f, g)).collect();
    let n = images[0].n;
    let mut found = None;
    visit_projective(f, images.len(), budget, |c| {
        let q = images
            .iter()
            .zip(c)
            .fold(QuadData::zero(f, n), |acc, (g, t)| acc.axpy(f, t, g));
        let r = q.rank(f);
        if r >= 3 {
            found = Some((q.to_form(f), r));
            return true;
        }
        false
    })?;
    Ok(found)
}

/// Decides whether every element of a space of quadrics is reducible over the
/// algebraic closure, and if so which of the three structural cases holds.
pub fn classify_all_reducible<F: Field>(
    f: &F,
    v: &GradedSubspace<F::Elem>,
    budget: &Budget,
) -> Result<ReducibleClassification<F>> {
    if let Some(&d) = v.degrees().iter().find(|&&d| d != 2) {
        return Err(Error::WrongDegree { expected: 2, got: d });
    }
    let basis = v.basis(2);
    let Some(first) = basis.first() else {
        return Err(Error::EmptySpace);
    };
    let n = v.nvars();
    let images: Vec<QuadData<F::Elem>> = basis.iter().map(|g| QuadData::from_form(f, g)).collect();
    let r1 = images[0].rank(f);
    if r1 >= 3 {
        return Ok(ReducibleClassification::NotAllReducible {
            field: f.clone(),
            extension: 1,
            witness: first.clone(),
            rank: r1,
        });
    }
    // a common factor must divide the first element; over Q an irrational
    // factor of a rational space would force the space to be one-dimensional,
    // which the two-variable case covers
    let split = match collapse_witness(f, first, 1) {
        Err(Error::Unsupported(_)) => None,
        other => other?,
    };
    if let Some(w) = split {
        let ext = &w.field;
        let lifted: Vec<Form<F::Elem>> = if w.extension > 1 {
            basis.iter().map(|g| g.embed(f, ext)).collect()
        } else {
            basis.to_vec()
        };
        for (a, b) in &w.pairs {
            for l in [a, b] {
                let l = monic(ext, l);
                if divides_all(ext, &l, &lifted) {
                    let (factor, extension) = match (w.extension > 1).then(|| l.restrict(f, ext)).flatten() {
                        Some(base_l) => (base_l, 1),
                        None if w.extension > 1 => (l, w.extension),
                        None => (l, 1),
                    };
                    let field = if extension > 1 { ext.clone() } else { f.clone() };
                    return Ok(ReducibleClassification::CommonLinearFactor { field, extension, factor });
                }
            }
        }
    }
    if f.characteristic() == 2 && images.iter().all(|q| q.polar.rank(f) == 0) {
        return Ok(ReducibleClassification::Char2AllSquares);
    }
    let k0 = invariant_directions(f, &images);
    if n - k0.len() <= 2 {
        let ann = if k0.is_empty() {
            Matrix::identity(f, n).to_rows()
        } else {
            Matrix::from_rows(k0, n).kernel_basis(f)
        };
        let mut lin: Vec<Form<F::Elem>> = ann.iter().map(|c| Form::linear(f, c)).collect();
        lin.sort_by(|a, b| b.leading().map(|x| x.0).cmp(&a.leading().map(|x| x.0)));
        if lin.len() == 2 {
            let v2 = lin.pop().expect("two");
            let u = lin.pop().expect("two");
            return Ok(ReducibleClassification::TwoVariableSpace { u, v: v2 });
        }
    }
    // none of the structural cases: some element has rank >= 3 over the closure
    let mut field = f.clone();
    let mut forms = basis.to_vec();
    let mut extension = 1;
    loop {
        if let Some((witness, rank)) = search_witness(&field, &forms, budget)? {
            return Ok(ReducibleClassification::NotAllReducible { field, extension, witness, rank });
        }
        let Some(next) = field.quadratic_extension() else {
            break;
        };
        if extension >= 4 {
            break;
        }
        forms = forms.iter().map(|g| g.embed(&field, &next)).collect();
        field = next;
        extension *= 2;
    }
    Err(Error::Unsupported(
        "no element of rank at least 3 found within the searched extensions".into(),
    ))
}
