//! Algebraic identities as properties. Most strategies draw a seed and let
//! `g2calc::samples` build the inputs, so shrinking reports a seed that
//! replays the failure.

use g2calc::algebra::{int, Polynomial};
use g2calc::cli::{parse, FormExpression};
use g2calc::exterior::{DifferentialForm, PolynomialMap, VectorField};
use g2calc::g2;
use g2calc::numeric::{self, seeded_rng};
use g2calc::samples;
use g2calc::symplectic;
use proptest::prelude::*;
use rand::Rng;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config(100))]

    #[test]
    fn mixed_partials_commute(seed: u64) {
        let mut rng = seeded_rng(seed);
        let p = samples::polynomial(&mut rng, 4, 4, 4);
        let (i, j) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        prop_assert_eq!(p.partial(i).unwrap().partial(j).unwrap(), p.partial(j).unwrap().partial(i).unwrap());
    }

    #[test]
    fn d_squared_vanishes(seed: u64) {
        let mut rng = seeded_rng(seed);
        let dim = rng.gen_range(4..=7);
        let degree = rng.gen_range(0..=5.min(dim - 2));
        let a = samples::form(&mut rng, dim, degree, 3, 3);
        prop_assert!(a.exterior_derivative().unwrap().exterior_derivative().unwrap().is_zero());
    }

    #[test]
    fn canonical_text_parses_back(seed: u64) {
        let mut rng = seeded_rng(seed);
        let dim = rng.gen_range(1..=7);
        let degree = rng.gen_range(0..=dim);
        let a = samples::form(&mut rng, dim, degree, 2, 3);
        let (e, _) = parse(&a.to_string(), dim).unwrap();
        prop_assert_eq!(e.evaluate(dim).unwrap().into_form().unwrap(), a);
    }

    #[test]
    fn parse_inverts_print(e in form_expression()) {
        let printed = e.to_string();
        let (reparsed, _) = parse(&printed, 3).unwrap();
        prop_assert_eq!(reparsed, e, "printed as {}", printed);
    }
}

proptest! {
    #![proptest_config(config(50))]

    #[test]
    fn leibniz_rule(seed: u64) {
        let mut rng = seeded_rng(seed);
        let (p, q) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
        let a = samples::form(&mut rng, 5, p, 2, 2);
        let b = samples::form(&mut rng, 5, q, 2, 2);
        let sign = int(if p % 2 == 0 { 1 } else { -1 });
        let lhs = a.wedge(&b).unwrap().exterior_derivative().unwrap();
        let rhs = &a.exterior_derivative().unwrap().wedge(&b).unwrap() + &a.wedge(&b.exterior_derivative().unwrap()).unwrap().scale(&sign);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn interior_product_is_an_antiderivation(seed: u64) {
        let mut rng = seeded_rng(seed);
        let (p, q) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let a = samples::form(&mut rng, 6, p, 1, 2);
        let b = samples::form(&mut rng, 6, q, 1, 2);
        let x = samples::field(&mut rng, 6, 1);
        let sign = int(if p % 2 == 0 { 1 } else { -1 });
        let lhs = a.wedge(&b).unwrap().interior(&x).unwrap();
        let rhs = &a.interior(&x).unwrap().wedge(&b).unwrap() + &a.wedge(&b.interior(&x).unwrap()).unwrap().scale(&sign);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_contraction_identity(seed: u64) {
        let mut rng = seeded_rng(seed);
        let k = rng.gen_range(1..=3);
        let tau = samples::form(&mut rng, 4, k, 2, 2);
        let x = samples::field(&mut rng, 4, 1);
        let y = samples::field(&mut rng, 4, 2);
        let lhs = tau.interior(&x.bracket(&y).unwrap()).unwrap();
        let rhs = tau.interior(&y).unwrap().lie_derivative(&x).unwrap().checked_sub(&tau.lie_derivative(&x).unwrap().interior(&y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn poincare_primitive_inverts_d(seed: u64) {
        let mut rng = seeded_rng(seed);
        let dim = rng.gen_range(2..=6);
        let k = rng.gen_range(0..dim);
        let a = samples::form(&mut rng, dim, k, 2, 3);
        let da = a.exterior_derivative().unwrap();
        prop_assert_eq!(da.poincare_primitive().unwrap().exterior_derivative().unwrap(), da);
    }

    #[test]
    fn split_reconstructs_and_is_idempotent(seed: u64) {
        let g = g2::preset_phi0();
        let a = samples::form(&mut seeded_rng(seed), 7, 2, 1, 4);
        let s = g2::split_two_form(&g, &a).unwrap();
        prop_assert_eq!(&s.omega7 + &s.omega14, a);
        prop_assert!(g2::split_two_form(&g, &s.omega14).unwrap().omega7.is_zero());
        prop_assert_eq!(g.phi().interior(s.witness_field.as_ref().unwrap()).unwrap(), s.omega7);
    }

    #[test]
    fn gram_is_symmetric_positive_definite(seed: u64) {
        let mut rng = seeded_rng(seed);
        let c = g2calc::algebra::rat(rng.gen_range(1..=9), rng.gen_range(1..=4));
        let g = g2::preset_phi0().scaled(&c).unwrap();
        let p = numeric::random_points(&mut rng, 7, 1).remove(0);
        let m = g2::metric_from_phi(&g, &p).unwrap();
        let gram = nalgebra::DMatrix::from_fn(7, 7, |i, j| m.gram[i][j]);
        prop_assert!((&gram - gram.transpose()).amax() == 0.0);
        prop_assert!(gram.cholesky().is_some());
        prop_assert!(m.volume_coefficient > 0.0);
    }
}

proptest! {
    #![proptest_config(config(30))]

    #[test]
    fn pullback_commutes_with_d(seed: u64) {
        let mut rng = seeded_rng(seed);
        let psi = PolynomialMap::new(3, (0..3).map(|_| samples::polynomial(&mut rng, 3, 2, 2)).collect()).unwrap();
        let k = rng.gen_range(0..=2);
        let a = samples::form(&mut rng, 3, k, 2, 2);
        prop_assert_eq!(psi.pullback(&a).unwrap().exterior_derivative().unwrap(), psi.pullback(&a.exterior_derivative().unwrap()).unwrap());
    }

    #[test]
    fn hamiltonian_fields_are_symplectic(seed: u64) {
        let mut rng = seeded_rng(seed);
        let n = rng.gen_range(1..=3);
        let s = symplectic::preset_omega_std(n).unwrap();
        let h = samples::polynomial(&mut rng, 2 * n, 3, 4);
        prop_assert!(symplectic::is_symplectic_field(&s, &symplectic::hamiltonian_field(&s, &h).unwrap()).unwrap());
    }

    #[test]
    fn hamiltonian_map_is_an_anti_homomorphism(seed: u64) {
        let mut rng = seeded_rng(seed);
        let s = symplectic::preset_omega_std(2).unwrap();
        let f = samples::polynomial(&mut rng, 4, 3, 3);
        let g = samples::polynomial(&mut rng, 4, 3, 3);
        prop_assert!(symplectic::anti_homomorphism_defect(&s, &f, &g).unwrap().is_zero());
    }

    #[test]
    fn rochesterian_field_vanishes_exactly_on_closed_forms(seed: u64) {
        let g = g2::preset_phi0();
        let mut rng = seeded_rng(seed);
        let closed = DifferentialForm::function(samples::polynomial(&mut rng, 7, 3, 3)).exterior_derivative().unwrap();
        prop_assert!(g2::rochesterian_field_of(&g, &closed).unwrap().is_zero());
        let (alpha, x) = samples::rochesterian_form(&mut rng);
        prop_assert_eq!(x.is_zero(), alpha.exterior_derivative().unwrap().is_zero());
    }

    #[test]
    fn flow_drift_is_well_formed(seed: u64) {
        let mut rng = seeded_rng(seed);
        let start = numeric::random_points(&mut rng, 7, 1).remove(0);
        let flow = numeric::integrate_flow(&samples::g2_field(&mut rng), &g2::phi0(), &start, 0.5, 50).unwrap();
        prop_assert!(flow.trajectory.windows(2).all(|w| w[0].0 < w[1].0));
        prop_assert!(flow.pullback_drift.iter().all(|d| *d >= 0.0));
    }
}

#[test]
fn bracket_contraction_on_constant_and_rotation_fields() {
    let g = g2::preset_phi0();
    let mut family: Vec<VectorField> = (1..=7)
        .map(|i| VectorField::coordinate(7, i).unwrap())
        .collect();
    family.push(g2::rotation_generator());
    for x1 in &family {
        for x2 in &family {
            let lhs = g.phi().interior(&x1.bracket(x2).unwrap()).unwrap();
            let rhs = g
                .phi()
                .interior(x2)
                .unwrap()
                .interior(x1)
                .unwrap()
                .exterior_derivative()
                .unwrap();
            assert_eq!(lhs, rhs, "X1 = {x1}, X2 = {x2}");
        }
    }
}

#[test]
fn evaluation_is_multiplicative() {
    let mut rng = seeded_rng(numeric::seed_from_env());
    for _ in 0..20 {
        let p = samples::polynomial(&mut rng, 5, 3, 4);
        let q = samples::polynomial(&mut rng, 5, 3, 4);
        let pt = samples::point(&mut rng, 5);
        let pq: Polynomial = &p * &q;
        assert_eq!(
            pq.eval_exact(&pt).unwrap(),
            p.eval_exact(&pt).unwrap() * q.eval_exact(&pt).unwrap()
        );
    }
}

fn function_expression() -> impl Strategy<Value = FormExpression> {
    let leaf = prop_oneof![
        (0i64..20, 1i64..5).prop_map(|(n, d)| FormExpression::Number(g2calc::algebra::rat(n, d))),
        (1usize..=3).prop_map(FormExpression::Var),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| FormExpression::Neg(Box::new(e))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| FormExpression::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| FormExpression::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| FormExpression::Mul(Box::new(a), Box::new(b))),
        ]
    })
}

fn one_form() -> impl Strategy<Value = FormExpression> {
    let basis = (1usize..=3).prop_map(|i| FormExpression::Basis(vec![i]));
    prop_oneof![
        (function_expression(), basis.clone())
            .prop_map(|(f, b)| FormExpression::Mul(Box::new(f), Box::new(b))),
        (basis, function_expression())
            .prop_map(|(b, f)| FormExpression::Mul(Box::new(b), Box::new(f))),
        function_expression().prop_map(|f| FormExpression::D(Box::new(f))),
    ]
    .prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| FormExpression::Neg(Box::new(e))),
            (inner.clone(), inner).prop_map(|(a, b)| FormExpression::Sub(Box::new(a), Box::new(b))),
        ]
    })
}

/// Typed trees on a 3-chart: functions, 1-forms, and the 2- and 0-forms
/// built from them with `^`, `d` and `i_`.
fn form_expression() -> impl Strategy<Value = FormExpression> {
    let field = || prop::collection::vec(function_expression(), 3);
    prop_oneof![
        function_expression(),
        one_form(),
        (one_form(), one_form()).prop_map(|(a, b)| FormExpression::Wedge(Box::new(a), Box::new(b))),
        one_form().prop_map(|a| FormExpression::D(Box::new(a))),
        (field(), one_form()).prop_map(|(x, a)| FormExpression::Interior(x, Box::new(a))),
        (field(), one_form()).prop_map(|(x, a)| FormExpression::Lie(x, Box::new(a))),
        (one_form(), one_form()).prop_map(|(a, b)| {
            let w = FormExpression::Wedge(Box::new(a), Box::new(b));
            FormExpression::Add(
                Box::new(w.clone()),
                Box::new(FormExpression::Neg(Box::new(w))),
            )
        }),
    ]
}
