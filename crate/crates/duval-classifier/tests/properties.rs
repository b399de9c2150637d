use core_poly::{qi, Poly, Substitution, VarSet};
use duval_classifier::{
    classify_duval, cubic_factor_type, curve_position, minimal_resolution_dual_graph,
    resolve_with_curve, surface_crepant_count, CurvePosition, DuValType,
};
use ideal_lab::Ideal;
use proptest::prelude::*;

fn xyz() -> VarSet {
    VarSet::of(&["x", "y", "z"])
}

fn parse(s: &str) -> Poly {
    Poly::parse(&xyz(), s).unwrap()
}

fn normal_forms() -> Vec<(&'static str, DuValType)> {
    vec![
        ("x*y + z^2", DuValType::A(1)),
        ("x*y + z^3", DuValType::A(2)),
        ("x*y + z^4", DuValType::A(3)),
        ("x*y + z^5", DuValType::A(4)),
        ("x*y + z^6", DuValType::A(5)),
        ("x*y + z^7", DuValType::A(6)),
        ("x^2 + y^2*z - z^3", DuValType::D(4)),
        ("x^2 + y^2*z - z^4", DuValType::D(5)),
        ("x^2 + y^2*z - z^5", DuValType::D(6)),
        ("x^2 + y^3 - z^4", DuValType::E6),
        ("x^2 + y^3 + y*z^3", DuValType::E7),
        ("x^2 + y^3 + z^5", DuValType::E8),
    ]
}

/// `x_i -> sum_j (L U)_ij x_j` for unitriangular `L`, `U`.
fn unimodular(lower: [i64; 3], upper: [i64; 3]) -> Substitution {
    let v = xyz();
    let [a, b, c] = lower;
    let [d, e, g] = upper;
    let lo = [[1, 0, 0], [a, 1, 0], [b, c, 1]];
    let up = [[1, d, e], [0, 1, g], [0, 0, 1]];
    let mut sub = Substitution::new(&v);
    for i in 0..3 {
        let mut img = Poly::zero(&v);
        for j in 0..3 {
            let m: i64 = (0..3).map(|k| lo[i][k] * up[k][j]).sum();
            img = img.add_scaled(&Poly::var_at(&v, j), &qi(m));
        }
        sub.set(v.name(i), img);
    }
    sub
}

fn small() -> impl Strategy<Value = [i64; 3]> {
    [-2i64..=2, -2i64..=2, -2i64..=2]
}

#[test]
fn node_counts_match_subscripts() {
    for (s, t) in normal_forms() {
        let g = minimal_resolution_dual_graph(&parse(s), t).unwrap();
        assert_eq!(g.node_count(), t.subscript().unwrap() as usize, "{s}");
        assert!(g.is_tree(), "{s}");
        assert_eq!(surface_crepant_count(&parse(s)).unwrap(), g.node_count());
    }
}

#[test]
fn graph_serializes_with_type_tag() {
    let g = resolve_with_curve(&parse("x^2 + y^2*z - z^3"), None).unwrap();
    let v = serde_json::to_value(&g).unwrap();
    assert_eq!(v["type"], "D4");
    assert_eq!(v["nodes"].as_array().unwrap().len(), 4);
    assert_eq!(serde_json::to_value(CurvePosition::DFl).unwrap(), "DF_l");
}

#[test]
fn branch_node_has_three_neighbours() {
    for (s, t) in normal_forms() {
        let g = resolve_with_curve(&parse(s), None).unwrap();
        let branch = g
            .nodes
            .iter()
            .filter(|n| g.neighbours(n).len() == 3)
            .count();
        assert_eq!(branch, usize::from(!matches!(t, DuValType::A(_))), "{s}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn type_survives_linear_change(lo in small(), up in small(), idx in 0usize..12) {
        let (s, t) = normal_forms()[idx];
        let f = parse(s).substitute(&unimodular(lo, up)).unwrap();
        prop_assert_eq!(classify_duval(&f).unwrap(), t);
        let g = resolve_with_curve(&f, None).unwrap();
        prop_assert_eq!(g.node_count(), t.subscript().unwrap() as usize);
        prop_assert!(g.is_tree());
    }

    #[test]
    fn curve_position_survives_linear_change(lo in small(), up in small()) {
        let sub = unimodular(lo, up);
        let cases = [
            ("x^2 + y^2*z + x*z^2", ["x", "y"], CurvePosition::DFr),
            ("x^2 + y*z^2 + y^4", ["x", "y"], CurvePosition::DFl),
            ("x^2 + y^2*z - z^5", ["x", "z"], CurvePosition::DFl),
        ];
        for (s, gens, want) in cases {
            let f = parse(s).substitute(&sub).unwrap();
            let gens: Vec<Poly> = gens.iter().map(|g| parse(g).substitute(&sub).unwrap()).collect();
            let gamma = Ideal::new(gens).unwrap();
            prop_assert_eq!(curve_position(&f, &gamma).unwrap(), want);
        }
    }

    #[test]
    fn cubic_type_invariant_under_gl2(a in -3i64..=3, b in -3i64..=3, c in -3i64..=3, d in -3i64..=3, idx in 0usize..5) {
        prop_assume!(a * d - b * c != 0);
        let v = VarSet::of(&["s", "r"]);
        let forms = ["s*r*(s + r)", "s^2*r", "(s - 2*r)^3", "s^3 + r^3", "s*(s^2 + r^2)"];
        let p = Poly::parse(&v, forms[idx]).unwrap();
        let s = Poly::var_at(&v, 0);
        let r = Poly::var_at(&v, 1);
        let sub = Substitution::new(&v)
            .with("s", &s.scale(&qi(a)) + &r.scale(&qi(b)))
            .with("r", &s.scale(&qi(c)) + &r.scale(&qi(d)));
        prop_assert_eq!(cubic_factor_type(&p.substitute(&sub).unwrap()), cubic_factor_type(&p));
    }
}
