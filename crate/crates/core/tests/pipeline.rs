//! End-to-end checks across modules through the public API.

use formstrength::algebra::{CharClass, Field, Gf, Matrix, Rationals};
use formstrength::bounds::{eta_b2, eta_b2_audit, k4, pd_bound_quadrics};
use formstrength::forms::{
    derivative_space, membership_in_subring, parse_form, parse_forms_in, reduce_mod_linear, Form, GradedSubspace,
};
use formstrength::json::Verdict;
use formstrength::oracle::{groebner, is_regular_sequence, Budget, MonomialOrder};
use formstrength::quadforms::{collapse_witness, quad_rank, space_min_rank, strength_quadric, Backend};
use formstrength::subalgebra::{construct, verify, Checks};
use formstrength::suites::nforms_fixture;
use proptest::prelude::*;

#[test]
fn strength_and_rank_of_two_products() {
    let f = Gf::prime(5).unwrap();
    let g = parse_form(&f, "x1*x2+x3*x4").unwrap();
    assert_eq!(quad_rank(&f, &g).unwrap(), 4);
    assert_eq!(strength_quadric(&f, &g).unwrap(), 1);
    assert!(collapse_witness(&f, &g, 1).unwrap().is_none());
}

#[test]
fn sum_of_squares_splits_over_gf5() {
    let f = Gf::prime(5).unwrap();
    let g = parse_form(&f, "x1^2 + x2^2").unwrap();
    let w = collapse_witness(&f, &g, 1).unwrap().unwrap();
    assert_eq!(w.extension, 1);
    let (a, b) = &w.pairs[0];
    // the factors are x1 + 2 x2 and x1 - 2 x2 up to scalars
    let prod = a.mul(&f, b);
    assert_eq!(prod, g);
    let mut factors = [a.clone(), b.clone()].map(|l| {
        let c = l.linear_coeffs(&f);
        let inv = f.inv(&c[0]).unwrap();
        f.mul(&c[1], &inv)
    });
    factors.sort();
    assert_eq!(factors, [2, 3]);
}

#[test]
fn groebner_example_gains_a_cubic() {
    let f = Gf::prime(5).unwrap();
    let gens = parse_forms_in(&f, "x1^2 + x2^2\nx1*x2", Some(2)).unwrap();
    let gb = groebner(&f, &gens, &MonomialOrder::Grevlex).unwrap();
    let shown: Vec<String> = gb.forms(&f).iter().map(|g| g.display(&f)).collect();
    assert!(shown.contains(&"x2^3".to_string()), "{shown:?}");
    assert_eq!(gb.len(), 3);
}

#[test]
fn bound_tables() {
    let pd: Vec<String> = (2..=5).map(|n| pd_bound_quadrics(n).unwrap().to_string()).collect();
    assert_eq!(pd, ["4", "20", "68", "196"]);
    let k: Vec<String> = (1..=3).map(|k| k4(CharClass::NotTwoThree, k).unwrap().to_string()).collect();
    assert_eq!(k, ["196", "147465", "1207959568"]);
    let a = eta_b2_audit(Some(1), 0, 1).unwrap();
    assert_eq!(a.value.to_string(), "2");
    assert!(a.differs());
}

#[test]
fn reduction_and_derivatives() {
    let q = Rationals;
    let v = GradedSubspace::from_forms(&q, 4, &[parse_form(&q, "x1*x2 + x3*x4").unwrap()]);
    let x1 = parse_form(&q, "x1").unwrap().extend_vars(4);
    let r = reduce_mod_linear(&q, &v, &[x1]).unwrap();
    assert_eq!(r.basis(2)[0].display(&q), "x3*x4");
    assert_eq!(derivative_space(&q, &parse_form(&q, "x1*x2 + x3*x4").unwrap()).dim(), 4);
    let g2 = Gf::prime(2).unwrap();
    assert_eq!(derivative_space(&g2, &parse_form(&g2, "x1*x2 + x3^2").unwrap()).dim(), 2);
}

#[test]
fn fixture_certificate_is_the_identity() {
    let f = Gf::prime(101).unwrap();
    let forms = nforms_fixture(&f, 2, 1);
    let v = GradedSubspace::from_forms(&f, forms[0].nvars(), &forms);
    let cert = construct(&f, &v, None, &Budget::default()).unwrap();
    assert!(cert.log.is_empty());
    assert_eq!(cert.count(), 2);
    assert_eq!(cert.final_min_rank, Some(4));
    let reports = verify(&cert, Checks::all(), "fixture", &Budget::default());
    assert!(reports.iter().all(|r| r.verdict == Verdict::Pass));
}

#[test]
fn closure_and_enumeration_agree_on_split_pencils() {
    let f = Gf::prime(7).unwrap();
    let forms = parse_forms_in(&f, "x1*x2 + x3*x4\nx1*x3 - x2*x4", Some(4)).unwrap();
    let v = GradedSubspace::from_forms(&f, 4, &forms);
    let e = space_min_rank(&f, &v, Backend::Enumerate, &Budget::default()).unwrap();
    let c = space_min_rank(&f, &v, Backend::Closure, &Budget::default()).unwrap();
    assert!(c.rank <= e.rank);
}

fn quadric(f: &Gf, n: usize, coeffs: &[u64]) -> Form<u64> {
    let basis = formstrength::forms::Monomial::all_of_degree(n, 2);
    let c: Vec<u64> = basis.iter().zip(coeffs.iter().cycle()).map(|(_, &c)| c % f.size()).collect();
    Form::from_coeffs(f, n, 2, &basis, &c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn certificates_verify(
        n in 2usize..=6,
        lin in proptest::collection::vec(proptest::collection::vec(0u64..5, 6), 0..=2),
        quads in proptest::collection::vec(proptest::collection::vec(0u64..5, 21), 1..=3),
        eta in proptest::option::of(0u32..=3),
    ) {
        let f = Gf::prime(5).unwrap();
        let mut forms: Vec<Form<u64>> = lin.iter().map(|c| Form::linear(&f, &c[..n])).filter(|l| !l.is_zero()).collect();
        forms.extend(quads.iter().map(|c| quadric(&f, n, c)));
        let v = GradedSubspace::from_forms(&f, n, &forms);
        let cert = construct(&f, &v, eta, &Budget::default()).unwrap();
        let reports = verify(&cert, Checks::all(), "prop", &Budget::default());
        prop_assert!(reports.iter().all(|r| r.verdict != Verdict::Fail), "{:?}", reports);
        prop_assert_eq!(cert.log.len() + cert.quad_gens.len(), cert.n2);
        let bound = eta_b2(eta, cert.n1 as u64, cert.n2 as u64).unwrap();
        prop_assert!(num_bigint::BigUint::from(cert.count()) <= bound.0);
        for (g, r) in cert.inputs.iter().zip(&cert.rewrites) {
            let e = r.as_ref().expect("rewrite present");
            prop_assert_eq!(&e.expand(&f, &cert.generators(), n, g.degree()), g);
        }
    }

    #[test]
    fn rank_is_invariant_under_invertible_changes(
        coeffs in proptest::collection::vec(0u64..3, 10),
        m in proptest::collection::vec(0u64..3, 16),
    ) {
        let f = Gf::prime(3).unwrap();
        let g = quadric(&f, 4, &coeffs);
        let a = Matrix::from_fn(4, 4, |i, j| m[4 * i + j]);
        prop_assume!(a.det(&f) != 0);
        let h = g.change_vars(&f, &a).unwrap();
        prop_assert_eq!(quad_rank(&f, &g).unwrap(), quad_rank(&f, &h).unwrap());
    }

    #[test]
    fn subring_membership_of_products(a in proptest::collection::vec(0u64..7, 3), b in proptest::collection::vec(0u64..7, 3)) {
        let f = Gf::prime(7).unwrap();
        let (la, lb) = (Form::linear(&f, &a), Form::linear(&f, &b));
        prop_assume!(!la.is_zero() && !lb.is_zero());
        let p = la.mul(&f, &lb);
        let e = membership_in_subring(&f, &p, &[la.clone(), lb.clone()]).unwrap();
        prop_assert_eq!(e.expand(&f, &[la, lb], 3, 2), p);
    }

    #[test]
    fn dependent_quadrics_are_not_regular(coeffs in proptest::collection::vec(0u64..5, 12)) {
        let f = Gf::prime(5).unwrap();
        let g1 = quadric(&f, 3, &coeffs[..6]);
        let g2 = quadric(&f, 3, &coeffs[6..]);
        prop_assume!(!g1.is_zero() && !g2.is_zero());
        let reg = is_regular_sequence(&f, &[g1.clone(), g2.clone()], &Budget::default()).unwrap();
        let v = GradedSubspace::from_forms(&f, 3, &[g1.clone(), g2.clone()]);
        if v.basis(2).len() < 2 {
            prop_assert!(!reg);
        }
    }
}
