//! Buchberger's algorithm with the product and chain criteria and the normal
//! selection strategy.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::algebra::Field;
use crate::error::{Error, Result};
use crate::forms::{Form, Monomial};

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    /// Lexicographic with the given variable priority (0-based, most significant first).
    Lex(Vec<usize>),
}

impl MonomialOrder {
    pub fn lex(nvars: usize) -> Self {
        MonomialOrder::Lex((0..nvars).collect())
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex => a.degree().cmp(&b.degree()).then_with(|| {
                for i in (0..a.nvars()).rev() {
                    match a.exp(i).cmp(&b.exp(i)) {
                        Ordering::Equal => continue,
                        other => return other.reverse(),
                    }
                }
                Ordering::Equal
            }),
            MonomialOrder::Lex(prio) => {
                for &i in prio {
                    match a.exp(i).cmp(&b.exp(i)) {
                        Ordering::Equal => continue,
                        other => return other,
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// Limits for Gröbner computations; exceeding one is reported, never treated
/// as a mathematical answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_pairs: usize,
    pub max_degree: u32,
    pub max_candidates: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_pairs: 50_000,
            max_degree: 40,
            max_candidates: 5_000_000,
        }
    }
}

/// Terms sorted by decreasing monomial in the working order.
type Poly<E> = Vec<(Monomial, E)>;

struct Ctx<'a, F: Field> {
    f: &'a F,
    order: &'a MonomialOrder,
}

impl<F: Field> Ctx<'_, F> {
    fn from_form(&self, g: &Form<F::Elem>) -> Poly<F::Elem> {
        let mut p: Poly<F::Elem> = g.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        p.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        p
    }

    fn monic(&self, p: &mut Poly<F::Elem>) {
        if let Some((_, lc)) = p.first() {
            let inv = self.f.inv(lc).expect("nonzero");
            for (_, c) in p.iter_mut() {
                *c = self.f.mul(c, &inv);
            }
        }
    }

    /// `p - c * m * g`, merging sorted term lists.
    fn sub_scaled(&self, p: &Poly<F::Elem>, c: &F::Elem, m: &Monomial, g: &Poly<F::Elem>) -> Poly<F::Elem> {
        let f = self.f;
        let mut out = Vec::with_capacity(p.len() + g.len());
        let mut i = 0;
        let mut j = 0;
        while i < p.len() || j < g.len() {
            let gm = (j < g.len()).then(|| g[j].0.mul(m));
            let ord = match (i < p.len(), &gm) {
                (true, Some(gm)) => self.order.cmp(&p[i].0, gm),
                (true, None) => Ordering::Greater,
                (false, _) => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(p[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((gm.expect("present"), f.neg(&f.mul(c, &g[j].1))));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = f.sub(&p[i].1, &f.mul(c, &g[j].1));
                    if !f.is_zero(&v) {
                        out.push((p[i].0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    /// Full reduction of `p` by the monic polynomials `basis`.
    fn reduce(&self, mut p: Poly<F::Elem>, basis: &[&Poly<F::Elem>]) -> Poly<F::Elem> {
        let mut rem: Poly<F::Elem> = Vec::new();
        while let Some((lm, lc)) = p.first().cloned() {
            match basis.iter().find(|g| g[0].0.divides(&lm)) {
                Some(g) => {
                    let q = lm.div(&g[0].0);
                    p = self.sub_scaled(&p, &lc, &q, g);
                }
                None => {
                    rem.push(p.remove(0));
                }
            }
        }
        rem
    }

    fn spoly(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let l = a[0].0.lcm(&b[0].0);
        let ma = l.div(&a[0].0);
        let mb = l.div(&b[0].0);
        let a_up: Poly<F::Elem> = a.iter().map(|(m, c)| (m.mul(&ma), c.clone())).collect();
        self.sub_scaled(&a_up, &self.f.one(), &mb, b)
    }
}

/// A reduced Gröbner basis of a homogeneous ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis<E> {
    pub nvars: usize,
    pub order: MonomialOrder,
    polys: Vec<Poly<E>>,
}

impl<E: Clone + PartialEq> GroebnerBasis<E> {
    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().map(|p| p[0].0.clone()).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.polys.iter().any(|p| p[0].0.degree() == 0)
    }

    pub fn forms<F: Field<Elem = E>>(&self, f: &F) -> Vec<Form<E>> {
        self.polys
            .iter()
            .map(|p| {
                let d = p[0].0.degree();
                Form::from_terms(f, self.nvars, d, p.iter().cloned()).expect("homogeneous")
            })
            .collect()
    }

    /// Normal form of `g` modulo the ideal.
    pub fn reduce<F: Field<Elem = E>>(&self, f: &F, g: &Form<E>) -> Form<E> {
        let ctx = Ctx { f, order: &self.order };
        let refs: Vec<&Poly<E>> = self.polys.iter().collect();
        let r = ctx.reduce(ctx.from_form(g), &refs);
        Form::from_terms(f, g.nvars(), g.degree(), r).expect("same degree")
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, g: &Form<E>) -> bool {
        self.reduce(f, g).is_zero()
    }
}

pub fn groebner<F: Field>(f: &F, gens: &[Form<F::Elem>], order: &MonomialOrder) -> Result<GroebnerBasis<F::Elem>> {
    groebner_with_budget(f, gens, order, &Budget::default())
}

pub fn groebner_with_budget<F: Field>(
    f: &F,
    gens: &[Form<F::Elem>],
    order: &MonomialOrder,
    budget: &Budget,
) -> Result<GroebnerBasis<F::Elem>> {
    let nvars = gens.first().map_or(0, |g| g.nvars());
    if gens.iter().any(|g| g.nvars() != nvars) {
        return Err(Error::InvalidArgument("generators live in different rings".into()));
    }
    if let MonomialOrder::Lex(p) = order {
        let mut s = p.clone();
        s.sort_unstable();
        if s != (0..nvars).collect::<Vec<_>>() {
            return Err(Error::InvalidArgument("lex priority must be a permutation of the variables".into()));
        }
    }
    let ctx = Ctx { f, order };
    let mut basis: Vec<Poly<F::Elem>> = Vec::new();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();

    let add = |p: Poly<F::Elem>, basis: &mut Vec<Poly<F::Elem>>, pending: &mut BTreeSet<(usize, usize)>| {
        let idx = basis.len();
        for i in 0..idx {
            pending.insert((i, idx));
        }
        basis.push(p);
    };

    for g in gens {
        let refs: Vec<&Poly<F::Elem>> = basis.iter().collect();
        let mut p = ctx.reduce(ctx.from_form(g), &refs);
        if p.is_empty() {
            continue;
        }
        ctx.monic(&mut p);
        add(p, &mut basis, &mut pending);
    }

    let mut processed = 0usize;
    while !pending.is_empty() {
        // normal strategy: smallest lcm first, ties by index
        let &(i, j) = pending
            .iter()
            .min_by(|a, b| {
                let la = basis[a.0][0].0.lcm(&basis[a.1][0].0);
                let lb = basis[b.0][0].0.lcm(&basis[b.1][0].0);
                order.cmp(&la, &lb).then_with(|| a.cmp(b))
            })
            .expect("nonempty");
        pending.remove(&(i, j));
        let (li, lj) = (&basis[i][0].0, &basis[j][0].0);
        if li.is_coprime(lj) {
            continue;
        }
        let l = li.lcm(lj);
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k][0].0.divides(&l)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        processed += 1;
        if processed > budget.max_pairs {
            return Err(Error::BudgetExceeded(format!("more than {} S-pairs", budget.max_pairs)));
        }
        if l.degree() > budget.max_degree {
            return Err(Error::BudgetExceeded(format!("S-pair degree above {}", budget.max_degree)));
        }
        let s = ctx.spoly(&basis[i], &basis[j]);
        let refs: Vec<&Poly<F::Elem>> = basis.iter().collect();
        let mut r = ctx.reduce(s, &refs);
        if r.is_empty() {
            continue;
        }
        ctx.monic(&mut r);
        add(r, &mut basis, &mut pending);
    }

    // minimal basis: drop elements whose leading monomial another one divides
    let mut keep: Vec<usize> = Vec::new();
    for i in 0..basis.len() {
        let li = &basis[i][0].0;
        let redundant = (0..basis.len()).any(|j| {
            j != i && basis[j][0].0.divides(li) && (basis[j][0].0 != *li || j < i)
        });
        if !redundant {
            keep.push(i);
        }
    }
    let minimal: Vec<Poly<F::Elem>> = keep.into_iter().map(|i| basis[i].clone()).collect();
    let mut reduced: Vec<Poly<F::Elem>> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<&Poly<F::Elem>> = (0..minimal.len()).filter(|&j| j != i).map(|j| &minimal[j]).collect();
        let head = minimal[i][0].clone();
        let tail: Poly<F::Elem> = minimal[i][1..].to_vec();
        let mut p = vec![head];
        p.extend(ctx.reduce(tail, &others));
        reduced.push(p);
    }
    reduced.sort_by(|a, b| order.cmp(&b[0].0, &a[0].0));
    Ok(GroebnerBasis {
        nvars,
        order: order.clone(),
        polys: reduced,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Gf, Rationals};
    use crate::forms::{parse_form_in, parse_forms};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn show<F: Field>(f: &F, gb: &GroebnerBasis<F::Elem>) -> Vec<String> {
        gb.forms(f).iter().map(|g| g.display(f)).collect()
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let q = Rationals;
        let gens = parse_forms(&q, "x1*x2\nx3*x4").unwrap();
        let gb = groebner(&q, &gens, &MonomialOrder::Grevlex).unwrap();
        assert_eq!(show(&q, &gb), ["x1*x2", "x3*x4"]);
    }

    #[test]
    fn hand_run_example() {
        let f = Gf::prime(5).unwrap();
        let gens = parse_forms(&f, "x1^2 + x2^2\nx1*x2").unwrap();
        let gb = groebner(&f, &gens, &MonomialOrder::Grevlex).unwrap();
        let mut got = show(&f, &gb);
        got.sort();
        assert_eq!(got, ["x1*x2", "x1^2 + x2^2", "x2^3"]);
    }

    #[test]
    fn zero_ideal() {
        let q = Rationals;
        let gb = groebner(&q, &[Form::zero(3, 2)], &MonomialOrder::Grevlex).unwrap();
        assert!(gb.is_empty());
        assert!(groebner::<Rationals>(&q, &[], &MonomialOrder::Grevlex).unwrap().is_empty());
    }

    #[test]
    fn lex_and_grevlex_agree_on_membership() {
        let f = Gf::prime(7).unwrap();
        let gens = parse_forms(&f, "x1^2 - x2*x3\nx2^2 - x1*x3\nx3^2 - x1*x2").unwrap();
        let a = groebner(&f, &gens, &MonomialOrder::Grevlex).unwrap();
        let b = groebner(&f, &gens, &MonomialOrder::Lex(vec![2, 0, 1])).unwrap();
        for g in a.forms(&f) {
            assert!(b.contains(&f, &g));
        }
        for g in b.forms(&f) {
            assert!(a.contains(&f, &g));
        }
        let outside = parse_form_in(&f, "x1^2", 3).unwrap();
        assert!(!a.contains(&f, &outside));
    }

    #[test]
    fn budget_is_reported() {
        let f = Gf::prime(7).unwrap();
        let gens = parse_forms(&f, "x1^2 + x2*x3\nx2^2 + x1*x3 + x3^2\nx1*x2 + x3^2").unwrap();
        let tiny = Budget { max_pairs: 1, ..Budget::default() };
        assert!(matches!(
            groebner_with_budget(&f, &gens, &MonomialOrder::Grevlex, &tiny),
            Err(Error::BudgetExceeded(_))
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn basis_is_idempotent_and_contains_generators(seed in any::<u64>()) {
            let f = Gf::prime(5).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let basis = Monomial::all_of_degree(4, 2);
            let gens: Vec<_> = (0..3)
                .map(|_| {
                    let c: Vec<u64> = basis.iter().map(|_| if rng.gen_bool(0.6) { 0 } else { rng.gen_range(0..5) }).collect();
                    Form::from_coeffs(&f, 4, 2, &basis, &c)
                })
                .collect();
            let gb = groebner(&f, &gens, &MonomialOrder::Grevlex).unwrap();
            for g in &gens {
                prop_assert!(gb.contains(&f, g));
            }
            let again = groebner(&f, &gb.forms(&f), &MonomialOrder::Grevlex).unwrap();
            prop_assert_eq!(again, gb);
        }
    }
}
