use iomdin_core::algebra::{normal_form, rat, standard_basis, Budget, Ideal, Monomial, MonomialOrder, Poly, Ring};
use iomdin_core::frontend::{parse_poly, print_poly};
use iomdin_core::local::milnor_number;
use iomdin_core::Limits;
use proptest::prelude::*;

fn ring3() -> Ring {
    Ring::new(&["x", "y", "z"]).unwrap()
}

fn poly(max_deg: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0..=max_deg, 0..=max_deg, 0..=max_deg), -6i64..=6, 1i64..=3), 0..=max_terms).prop_map(
        move |terms| {
            let r = ring3();
            Poly::from_terms(
                &r,
                terms.into_iter().filter(|((a, b, c), _, _)| a + b + c <= max_deg).map(|((a, b, c), n, d)| {
                    (Monomial::from_exponents(&[a, b, c]), iomdin_core::algebra::ratio(n, d))
                }),
            )
        },
    )
}

/// Brieskorn-Pham oracle, independent of any standard basis.
fn brieskorn_mu(exps: &[u32]) -> u64 {
    exps.iter().map(|&e| u64::from(e - 1)).product()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(p in poly(3, 5), q in poly(3, 5), r in poly(3, 5)) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p + &(-&q), &p - &q);
    }

    #[test]
    fn leibniz(p in poly(3, 5), q in poly(3, 5), i in 0usize..3) {
        let lhs = (&p * &q).derivative(i);
        let rhs = &(&p.derivative(i) * &q) + &(&p * &q.derivative(i));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn print_parse_round_trip(p in poly(4, 6)) {
        let r = ring3();
        prop_assert_eq!(parse_poly(&print_poly(&p), &r).unwrap(), p.clone());
        prop_assert_eq!(parse_poly(&p.to_string(), &r).unwrap(), p);
    }

    #[test]
    fn evaluation_is_a_homomorphism(p in poly(3, 4), q in poly(3, 4), a in -3i64..3, b in -3i64..3, c in -3i64..3) {
        let pt = [rat(a), rat(b), rat(c)];
        prop_assert_eq!((&p * &q).eval(&pt), p.eval(&pt) * q.eval(&pt));
        prop_assert_eq!((&p + &q).eval(&pt), p.eval(&pt) + q.eval(&pt));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn global_normal_form(g1 in poly(2, 3), g2 in poly(2, 3), a in poly(1, 2), b in poly(1, 2), p in poly(3, 4)) {
        let ord = MonomialOrder::degrevlex(3);
        let basis = standard_basis(&[g1.clone(), g2.clone()], &ord, &mut Budget::new("test", 1_000_000)).unwrap();
        let nf = |h: &Poly| normal_form(h, &basis, &ord, &mut Budget::new("test", 1_000_000)).unwrap();
        let member = &(&a * &g1) + &(&b * &g2);
        prop_assert!(nf(&member).is_zero());
        let r = nf(&p);
        prop_assert_eq!(nf(&r), r.clone());
        prop_assert!(nf(&(&p - &r)).is_zero());
        let leads: Vec<Monomial> = basis.iter().map(|g| g.leading_term(&ord).unwrap().0.clone()).collect();
        for (m, _) in r.terms() {
            prop_assert!(leads.iter().all(|l| !l.divides(m)), "{} has a reducible term {:?}", r, m);
        }
    }

    #[test]
    fn local_membership_of_combinations(g1 in poly(2, 3), g2 in poly(2, 3), a in poly(1, 2), b in poly(1, 2)) {
        let r = ring3();
        let ideal = Ideal::new(&r, vec![g1.clone(), g2.clone()]).unwrap();
        let member = &(&a * &g1) + &(&b * &g2);
        prop_assert!(ideal.contains_local(&member, &Limits::default()).unwrap());
    }

    #[test]
    fn saturation_is_idempotent(g1 in poly(2, 3), g2 in poly(2, 3), var in 0usize..3) {
        let r = ring3();
        let lim = Limits::default();
        let h = Poly::var(&r, var);
        let once = Ideal::new(&r, vec![g1, g2]).unwrap().saturate_principal(&h, &lim).unwrap();
        let twice = once.saturate_principal(&h, &lim).unwrap();
        for g in twice.gens() {
            prop_assert!(once.contains(g, &lim).unwrap());
        }
        for g in once.gens() {
            prop_assert!(twice.contains(g, &lim).unwrap());
        }
    }

    #[test]
    fn brieskorn_pham(a in 2u32..=6, b in 2u32..=6, c in 2u32..=6) {
        let g = parse_poly(&format!("x^{a} + y^{b} + z^{c}"), &ring3()).unwrap();
        prop_assert_eq!(milnor_number(&g, &Limits::default()).unwrap(), brieskorn_mu(&[a, b, c]));
    }

    #[test]
    fn milnor_number_is_invariant_under_linear_changes(a in 2u32..=4, b in 2u32..=4, c in 2u32..=4, s in -3i64..=3, t in -3i64..=3, u in -3i64..=3) {
        let r = ring3();
        let g = parse_poly(&format!("x^{a} + y^{b} + z^{c}"), &r).unwrap();
        let images = vec![
            parse_poly(&format!("x + {s}*y + {t}*z"), &r).unwrap(),
            parse_poly(&format!("y + {u}*z"), &r).unwrap(),
            Poly::var(&r, 2),
        ];
        let moved = g.substitute(&images).unwrap();
        prop_assert_eq!(milnor_number(&moved, &Limits::default()).unwrap(), brieskorn_mu(&[a, b, c]));
    }
}

/// Plane curves with their Milnor numbers from `μ = 2δ - r + 1`.
const PLANE_CURVES: &[(&str, u64)] = &[
    ("x^2 + y^3", 2),
    ("x^3 + y^3", 4),
    ("x^2 + y^5", 4),
    ("x^3 + y^4", 6),
    ("x*y*(x + y)", 4),
    ("x^2*y + y^4", 5),
    ("x*y", 1),
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn thom_sebastiani(k in 0..PLANE_CURVES.len(), n in 2u32..=8) {
        let (h, mu_h) = PLANE_CURVES[k];
        let g = parse_poly(&format!("{h} + z^{n}"), &ring3()).unwrap();
        prop_assert_eq!(milnor_number(&g, &Limits::default()).unwrap(), mu_h * u64::from(n - 1));
    }
}
