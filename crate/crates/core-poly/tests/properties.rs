use core_poly::{poly_arith, q, ArithOp, Monomial, Poly, Substitution, VarSet, Q};
use proptest::prelude::*;

fn vars() -> VarSet {
    VarSet::of(&["x", "y", "z"])
}

fn coeff() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| q(n, d))
}

fn poly_with(min_deg: u32, max_deg: u32) -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..=3, 0u32..=3, 0u32..=3), coeff()), 1..5).prop_map(move |ts| {
        let v = vars();
        let mut p = Poly::zero(&v);
        for ((a, b, c), k) in ts {
            let m = Monomial::from_exps(vec![a, b, c]);
            if (min_deg..=max_deg).contains(&m.degree()) {
                p.add_term(m, k);
            }
        }
        p
    })
}

fn poly() -> impl Strategy<Value = Poly> {
    poly_with(0, 4)
}

fn nonzero_poly() -> impl Strategy<Value = Poly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn subst() -> impl Strategy<Value = Substitution> {
    (poly_with(0, 2), poly_with(0, 2), poly_with(0, 2)).prop_map(|(a, b, c)| {
        Substitution::new(&vars())
            .with("x", a)
            .with("y", b)
            .with("z", c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(poly_arith(&a, &b, ArithOp::Sub).unwrap(), &a - &b);
    }

    #[test]
    fn substitution_composes(p in poly(), s in subst(), t in subst()) {
        let stepwise = p.substitute(&s).unwrap().substitute(&t).unwrap();
        let composed = p.substitute(&s.then(&t).unwrap()).unwrap();
        prop_assert_eq!(stepwise, composed);
    }

    #[test]
    fn multiplicity_is_additive(a in nonzero_poly(), b in nonzero_poly()) {
        let ab = &a * &b;
        prop_assert_eq!(
            ab.multiplicity_at_origin().unwrap(),
            a.multiplicity_at_origin().unwrap() + b.multiplicity_at_origin().unwrap()
        );
    }

    #[test]
    fn unit_weights_give_multiplicity(a in nonzero_poly()) {
        prop_assert_eq!(
            a.weighted_order(&[1, 1, 1]).unwrap(),
            u64::from(a.multiplicity_at_origin().unwrap())
        );
    }

    #[test]
    fn translation_round_trip(a in poly(), p in prop::collection::vec(coeff(), 3)) {
        let neg: Vec<Q> = p.iter().map(|c| -c.clone()).collect();
        let back = a.translate_origin(&p).unwrap().translate_origin(&neg).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn display_parse_round_trip(a in poly()) {
        prop_assert_eq!(Poly::parse(&vars(), &a.to_string()).unwrap(), a);
    }

    #[test]
    fn exact_division_inverts_multiplication(a in poly(), b in nonzero_poly()) {
        prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
    }
}
