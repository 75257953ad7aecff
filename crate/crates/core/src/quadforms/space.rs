//! Questions about whole spaces of quadrics: least and greatest rank.

use std::str::FromStr;

use super::gram::QuadData;
use crate::algebra::Field;
use crate::error::{Error, Result};
use crate::forms::{Form, GradedSubspace};
use crate::oracle::{groebner_with_budget, krull_dim, minors_space, Budget, MonomialOrder};

/// Number of small rationals tried per coordinate when enumerating over Q.
const RATIONAL_VALUES: u64 = 10;
/// Cap on rational candidates per leading position.
const RATIONAL_CAP: u64 = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Backend {
    /// Exhaustive over rational combinations; exact over finite fields.
    #[default]
    Enumerate,
    /// Over the algebraic closure via the ideals of minors of the pencil.
    Closure,
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "enumerate" => Ok(Backend::Enumerate),
            "closure" => Ok(Backend::Closure),
            _ => Err(Error::InvalidArgument(format!("unknown backend '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinRank<E> {
    pub rank: usize,
    /// Coefficients on the quadric basis of the first combination found with
    /// this rank; absent when the closure backend decides without a witness.
    pub coefficients: Option<Vec<E>>,
    pub element: Option<Form<E>>,
    /// Set when only base-field combinations were examined, so the minimum
    /// over the algebraic closure may be smaller.
    pub rational_only: bool,
    /// Set over Q, where only small coefficients are tried.
    pub heuristic: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpaceStrength<E> {
    pub strength: usize,
    pub min_rank: MinRank<E>,
}

/// Visits the points of projective `(n-1)`-space in a fixed order: leading
/// position ascending, leading coordinate 1, later coordinates in
/// lexicographic order of element indices. Returns whether the enumeration
/// was truncated to small values (over Q).
pub(crate) fn visit_projective<F: Field>(
    f: &F,
    n: usize,
    budget: &Budget,
    mut visit: impl FnMut(&[F::Elem]) -> bool,
) -> Result<bool> {
    let (values, truncated) = match f.order() {
        Some(q) => {
            let mut total: u64 = 0;
            for p in 0..n {
                let c = q.checked_pow((n - 1 - p) as u32).unwrap_or(u64::MAX);
                total = total.saturating_add(c);
            }
            if total > budget.max_candidates {
                return Err(Error::BudgetExceeded(format!(
                    "{total} projective combinations exceed the limit {}",
                    budget.max_candidates
                )));
            }
            (q, false)
        }
        None => {
            let mut s = RATIONAL_VALUES;
            while s > 2 && s.checked_pow(n.saturating_sub(1) as u32).is_none_or(|c| c > RATIONAL_CAP) {
                s -= 1;
            }
            (s, true)
        }
    };
    for p in 0..n {
        let m = n - 1 - p;
        let count = values.pow(m as u32);
        let mut point = vec![f.zero(); n];
        point[p] = f.one();
        for idx in 0..count {
            let mut t = idx;
            for j in (p + 1..n).rev() {
                point[j] = f.element(t % values);
                t /= values;
            }
            if visit(&point) {
                return Ok(truncated);
            }
        }
    }
    Ok(truncated)
}

fn combine<F: Field>(f: &F, images: &[QuadData<F::Elem>], coeffs: &[F::Elem]) -> QuadData<F::Elem> {
    let n = images[0].n;
    images
        .iter()
        .zip(coeffs)
        .filter(|(_, c)| !f.is_zero(c))
        .fold(QuadData::zero(f, n), |acc, (q, c)| acc.axpy(f, c, q))
}

/// Least rank over base-field combinations of `images`, with the first
/// minimizing coefficient vector. Zero combinations count as rank 0.
pub(crate) fn enumerate_min_rank<F: Field>(
    f: &F,
    images: &[QuadData<F::Elem>],
    budget: &Budget,
) -> Result<(usize, Vec<F::Elem>, bool)> {
    let mut best: Option<(usize, Vec<F::Elem>)> = None;
    let truncated = visit_projective(f, images.len(), budget, |c| {
        let r = combine(f, images, c).rank(f);
        if best.as_ref().is_none_or(|(b, _)| r < *b) {
            best = Some((r, c.to_vec()));
        }
        r == 0
    })?;
    let (r, c) = best.ok_or(Error::EmptySpace)?;
    Ok((r, c, truncated))
}

fn quadric_basis<E: Clone + PartialEq>(v: &GradedSubspace<E>) -> Result<&[Form<E>]> {
    if v.degrees().iter().any(|&d| d != 2) {
        let got = *v.degrees().iter().find(|&&d| d != 2).expect("present");
        return Err(Error::WrongDegree { expected: 2, got });
    }
    let basis = v.basis(2);
    if basis.is_empty() {
        return Err(Error::EmptySpace);
    }
    Ok(basis)
}

/// Least closure rank among nonzero elements of a space of quadrics.
pub fn space_min_rank<F: Field>(
    f: &F,
    v: &GradedSubspace<F::Elem>,
    backend: Backend,
    budget: &Budget,
) -> Result<MinRank<F::Elem>> {
    let basis = quadric_basis(v)?;
    let images: Vec<QuadData<F::Elem>> = basis.iter().map(|g| QuadData::from_form(f, g)).collect();
    match backend {
        Backend::Enumerate => {
            let (rank, c, heuristic) = enumerate_min_rank(f, &images, budget)?;
            let element = combine(f, &images, &c).to_form(f);
            Ok(MinRank {
                rank,
                coefficients: Some(c),
                element: Some(element),
                rational_only: images.len() > 1,
                heuristic,
            })
        }
        Backend::Closure => closure_min_rank(f, &images, budget),
    }
}

/// The pencil `sum t_k P_k` as a matrix of linear forms in `t`.
fn parametric_polar<F: Field>(f: &F, images: &[QuadData<F::Elem>]) -> Vec<Vec<Form<F::Elem>>> {
    let n = images[0].n;
    let h = images.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let coeffs: Vec<F::Elem> = images.iter().map(|q| q.polar[(i, j)].clone()).collect();
                    Form::linear(f, &coeffs[..h])
                })
                .collect()
        })
        .collect()
}

fn closure_min_rank<F: Field>(f: &F, images: &[QuadData<F::Elem>], budget: &Budget) -> Result<MinRank<F::Elem>> {
    if f.characteristic() == 2 {
        return Err(Error::Unsupported(
            "the closure backend uses polar minors and needs characteristic other than 2".into(),
        ));
    }
    let h = images.len();
    let n = images[0].n;
    let witness = |rank| MinRank {
        rank,
        coefficients: None,
        element: None,
        rational_only: false,
        heuristic: false,
    };
    if h == 1 {
        return Ok(witness(images[0].rank(f)));
    }
    let pencil = parametric_polar(f, images);
    for s in 1..=n {
        // rank <= s somewhere iff the (s+1)-minors have a projective zero
        let minors = minors_space(f, &pencil, s + 1, h);
        if minors.is_zero() {
            return Ok(witness(s));
        }
        let gb = groebner_with_budget(f, &minors.all_forms(), &MonomialOrder::Grevlex, budget)?;
        match krull_dim(&gb) {
            Ok(d) if d >= 1 => return Ok(witness(s)),
            Ok(_) | Err(Error::EmptyVariety) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(witness(n))
}

/// `ceil(r_min/2) - 1`.
pub fn space_strength<F: Field>(
    f: &F,
    v: &GradedSubspace<F::Elem>,
    backend: Backend,
    budget: &Budget,
) -> Result<SpaceStrength<F::Elem>> {
    let min_rank = space_min_rank(f, v, backend, budget)?;
    Ok(SpaceStrength {
        strength: min_rank.rank.div_ceil(2).saturating_sub(1),
        min_rank,
    })
}

/// An element of greatest closure rank, with that rank. Exhaustive over a
/// finite field; over Q a greedy pencil search adding one basis element at a
/// time with `r + 2` trial scalars.
pub fn max_rank_element<F: Field>(
    f: &F,
    v: &GradedSubspace<F::Elem>,
    budget: &Budget,
) -> Result<(Form<F::Elem>, usize)> {
    let basis = quadric_basis(v)?;
    let images: Vec<QuadData<F::Elem>> = basis.iter().map(|g| QuadData::from_form(f, g)).collect();
    let n = images[0].n;
    if f.is_finite() {
        let mut best: Option<(usize, Vec<F::Elem>)> = None;
        visit_projective(f, images.len(), budget, |c| {
            let r = combine(f, &images, c).rank(f);
            if best.as_ref().is_none_or(|(b, _)| r > *b) {
                best = Some((r, c.to_vec()));
            }
            r == n
        })?;
        let (r, c) = best.ok_or(Error::EmptySpace)?;
        return Ok((combine(f, &images, &c).to_form(f), r));
    }
    let mut cur = images[0].clone();
    let mut r = cur.rank(f);
    for g in &images[1..] {
        let mut best = (r, cur.clone());
        for idx in 1..=(r as u64 + 2) {
            let cand = cur.axpy(f, &f.element(idx), g);
            let rc = cand.rank(f);
            if rc > best.0 {
                best = (rc, cand);
            }
        }
        if best.0 == r {
            // keep the space spanned: any nonzero scalar works
            best.1 = cur.axpy(f, &f.one(), g);
            best.0 = best.1.rank(f);
        }
        (r, cur) = best;
    }
    Ok((cur.to_form(f), r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Gf, Rationals};
    use crate::forms::parse_forms;

    fn space<F: Field>(f: &F, src: &str) -> GradedSubspace<F::Elem> {
        let forms = parse_forms(f, src).unwrap();
        GradedSubspace::from_forms(f, forms[0].nvars(), &forms)
    }

    #[test]
    fn projective_order_and_count() {
        let f = Gf::prime(5).unwrap();
        let mut pts = Vec::new();
        visit_projective(&f, 2, &Budget::default(), |c| {
            pts.push(c.to_vec());
            false
        })
        .unwrap();
        assert_eq!(pts.len(), 6);
        assert_eq!(pts[0], vec![1, 0]);
        assert_eq!(pts[5], vec![0, 1]);
    }

    #[test]
    fn min_rank_examples() {
        let f = Gf::prime(5).unwrap();
        let b = Budget::default();
        let v = space(&f, "x1*x2\nx3*x4");
        let m = space_min_rank(&f, &v, Backend::Enumerate, &b).unwrap();
        assert_eq!(m.rank, 2);
        assert_eq!(m.element.unwrap().display(&f), "x1*x2");
        assert_eq!(space_min_rank(&f, &v, Backend::Closure, &b).unwrap().rank, 2);
        assert_eq!(space_strength(&f, &v, Backend::Enumerate, &b).unwrap().strength, 0);
        let sq = space(&f, "x1^2");
        assert_eq!(space_min_rank(&f, &sq, Backend::Enumerate, &b).unwrap().rank, 1);
        let three = space(&f, "x1^2 + x2^2 + x3^2");
        assert_eq!(space_strength(&f, &three, Backend::Enumerate, &b).unwrap().strength, 1);
    }

    #[test]
    fn closure_sees_irrational_degenerations() {
        // x1^2 + 2 x2^2 and x1*x2 over GF(5): combination x1^2 + c x1 x2 + 2 x2^2
        // has discriminant c^2 - 8, zero only for c^2 = 3, a non-square mod 5
        let f = Gf::prime(5).unwrap();
        let b = Budget::default();
        let v = space(&f, "x1^2 + 2*x2^2\nx1*x2");
        assert_eq!(space_min_rank(&f, &v, Backend::Enumerate, &b).unwrap().rank, 2);
        assert_eq!(space_min_rank(&f, &v, Backend::Closure, &b).unwrap().rank, 1);
    }

    #[test]
    fn max_rank_examples() {
        let f = Gf::prime(5).unwrap();
        let b = Budget::default();
        let v = space(&f, "x1*x2\nx3*x4");
        let (g, r) = max_rank_element(&f, &v, &b).unwrap();
        assert_eq!(r, 4);
        assert_eq!(g.display(&f), "x1*x2 + x3*x4");
        let q = Rationals;
        let v = space(&q, "x1*x2\nx3*x4\nx1^2");
        assert_eq!(max_rank_element(&q, &v, &b).unwrap().1, 4);
    }
}
