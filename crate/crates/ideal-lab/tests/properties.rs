use core_poly::{qi, Poly, Substitution, UPoly, VarSet, Q};
use ideal_lab::{
    curve_in_locus, hypersurface_singular_ideal, jet_membership, milnor_number_auto, Ideal,
    ParamCurve,
};
use num_traits::Zero;
use proptest::prelude::*;

fn xyz() -> VarSet {
    VarSet::of(&["x", "y", "z"])
}

const ADE: [(&str, u32); 12] = [
    ("x*y + z^2", 1),
    ("x*y + z^3", 2),
    ("x*y + z^4", 3),
    ("x*y + z^5", 4),
    ("x*y + z^6", 5),
    ("x*y + z^7", 6),
    ("x^2 + y^2*z + z^3", 4),
    ("x^2 + y^2*z + z^4", 5),
    ("x^2 + y^2*z + z^5", 6),
    ("x^2 + y^3 + z^4", 6),
    ("x^2 + y^3 + y*z^3", 7),
    ("x^2 + y^3 + z^5", 8),
];

/// Unimodular integer matrix: a product of a unit lower and a unit upper
/// triangular matrix with small entries.
fn unimodular() -> impl Strategy<Value = [[i64; 3]; 3]> {
    prop::array::uniform6(-2i64..=2).prop_map(|e| {
        let l = [[1, 0, 0], [e[0], 1, 0], [e[1], e[2], 1]];
        let u = [[1, e[3], e[4]], [0, 1, e[5]], [0, 0, 1]];
        let mut m = [[0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = (0..3).map(|k| l[i][k] * u[k][j]).sum();
            }
        }
        m
    })
}

fn linear_change(m: &[[i64; 3]; 3]) -> Substitution {
    let v = xyz();
    let mut s = Substitution::new(&v);
    for (i, name) in ["x", "y", "z"].iter().enumerate() {
        let mut img = Poly::zero(&v);
        for (j, c) in m[i].iter().enumerate() {
            img = img.add_scaled(&Poly::var_at(&v, j), &qi(*c));
        }
        s.set(name, img);
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn milnor_invariant_under_unimodular_change(m in unimodular()) {
        let s = linear_change(&m);
        for (text, mu) in ADE {
            let f = Poly::parse(&xyz(), text).unwrap().substitute(&s).unwrap();
            prop_assert_eq!(milnor_number_auto(&f, mu).unwrap(), mu, "{}", text);
        }
    }
}

#[test]
fn adding_a_square_keeps_milnor_number() {
    let v2 = VarSet::of(&["x", "y"]);
    let v3 = VarSet::of(&["x", "y", "z"]);
    for n in 1..=6u32 {
        let g = Poly::parse(&v2, &format!("x^2 + y^{}", n + 1)).unwrap();
        let f = &g.embed(&v3).unwrap() + &Poly::parse(&v3, "z^2").unwrap();
        assert_eq!(milnor_number_auto(&g, n).unwrap(), n);
        assert_eq!(milnor_number_auto(&f, n).unwrap(), n);
    }
}

fn small_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -3i64..=3), 1..5).prop_map(|ts| {
        let v = xyz();
        let mut p = Poly::zero(&v);
        for ((a, b, c), k) in ts {
            p.add_term(core_poly::Monomial::from_exps(vec![a, b, c]), qi(k));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn membership_monotone_in_bound(g in small_poly(), h in small_poly(), k in small_poly()) {
        let ideal = match Ideal::new(vec![h.clone(), k.clone()]) {
            Ok(i) => i,
            Err(_) => return Ok(()),
        };
        let probe = &(&g * &h) + &k;
        let d0 = probe.total_degree().unwrap_or(0).max(1);
        let mut prev = false;
        for d in d0..d0 + 3 {
            let now = jet_membership(&probe, &ideal, d).unwrap();
            prop_assert!(!prev || now);
            prev = now;
        }
        if let Some(dg) = g.total_degree() {
            let need = (dg + h.total_degree().unwrap_or(0)).max(k.total_degree().unwrap_or(0));
            prop_assert!(jet_membership(&probe, &ideal, need.max(d0)).unwrap());
        }
    }

    #[test]
    fn curve_test_agrees_with_point_evaluation(
        a in prop::collection::vec(-3i64..=3, 3),
        b in prop::collection::vec(-3i64..=3, 3),
        f in small_poly(),
    ) {
        let v = xyz();
        let images: Vec<UPoly> = (0..3).map(|i| UPoly::from_ints(&[0, a[i], b[i]])).collect();
        let Ok(curve) = ParamCurve::new("s", &v, images) else { return Ok(()); };
        let sing = hypersurface_singular_ideal(&f).unwrap_or_else(|_| Ideal::new(vec![Poly::one(&v)]).unwrap());
        let inside = curve_in_locus(&curve, &sing).unwrap();
        let mut all_vanish = true;
        for s in -10i64..10 {
            let pt = curve.point_at(&Q::new(s.into(), 3.into()));
            all_vanish &= sing.vanishes_at(&pt).unwrap();
        }
        if inside {
            prop_assert!(all_vanish);
        }
        for g in sing.gens() {
            let pulled = curve.pullback(g).unwrap();
            for s in -10i64..10 {
                let t = Q::new(s.into(), 3.into());
                prop_assert_eq!(pulled.eval(&t), g.eval(&curve.point_at(&t)).unwrap());
            }
        }
        let _ = Q::zero();
    }
}
