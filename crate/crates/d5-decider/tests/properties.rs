use std::collections::BTreeMap;

use core_poly::{q, qi, JetBound, Poly, Substitution, VarSet, Q};
use d5_decider::{
    case_split, decide_input, decide_terminal, reduce_to_normal_form, replay_symbolic,
    replay_theorem_charts, Case, D5NormalForm, PhiKey, SymbolicNormalForm, Verdict, Violation,
};
use ideal_lab::Ideal;
use num_traits::Zero;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn xyzt() -> VarSet {
    VarSet::of(&["x", "y", "z", "t"])
}

fn line() -> Ideal {
    Ideal::parse(&xyzt(), &["x", "y", "t"]).unwrap()
}

fn jb() -> JetBound {
    JetBound::new(8).unwrap()
}

/// Allowed `phi` monomials of degree 2..=4 outside the first case.
fn case_two_keys() -> Vec<PhiKey> {
    let mut out = Vec::new();
    for d in 2..=4u32 {
        for i in 0..=d {
            for j in 0..=d - i {
                let k = PhiKey(i, j, d - i - j);
                if !k.is_forbidden() && k != PhiKey(1, 0, 1) && k != PhiKey(0, 0, 2) {
                    out.push(k);
                }
            }
        }
    }
    out
}

/// Plain evaluation of the two conditions from raw numbers.
fn oracle(b: &Q, psi00: &Q, c: &dyn Fn(u32, u32, u32) -> Q) -> (bool, bool) {
    let i = c(0, 0, 4).is_zero()
        && c(1, 0, 2).is_zero()
        && (qi(2) * c(0, 1, 2) - b * psi00).is_zero()
        && (qi(4) * c(0, 0, 3) - b * b).is_zero();
    let a021 = c(0, 2, 1);
    let ii = (&a021 * &a021 - b * &a021 + c(0, 0, 3)).is_zero()
        && (c(0, 1, 2) - &a021 * psi00).is_zero();
    (i, ii)
}

/// A record of the second case with no degree-2 part, biased so that
/// each condition holds about a third of the time.
fn random_record(rng: &mut StdRng) -> D5NormalForm {
    let small = |rng: &mut StdRng| qi(rng.gen_range(-3..=3));
    let k = rng.gen_range(1..=3);
    let a = small(rng);
    let b = if k == 1 { a.clone() } else { Q::zero() };
    let psi00 = small(rng);
    let psi = Poly::parse(
        &VarSet::of(&["z", "t"]),
        &format!(
            "({}) + ({})*z + ({})*t",
            psi00,
            rng.gen_range(-2..=2),
            rng.gen_range(-2..=2)
        ),
    )
    .unwrap();
    let mut phi = BTreeMap::new();
    for key in case_two_keys() {
        if key.degree() >= 3 && rng.gen_bool(0.4) {
            phi.insert(key, small(rng));
        }
    }
    let a021 = small(rng);
    phi.insert(PhiKey(0, 2, 1), a021.clone());
    match rng.gen_range(0..3) {
        0 => {
            phi.insert(PhiKey(0, 0, 3), &b * &b / qi(4));
            phi.insert(PhiKey(0, 1, 2), &b * &psi00 / qi(2));
            phi.remove(&PhiKey(0, 0, 4));
            phi.remove(&PhiKey(1, 0, 2));
        }
        1 => {
            phi.insert(PhiKey(0, 0, 3), &b * &a021 - &a021 * &a021);
            phi.insert(PhiKey(0, 1, 2), &a021 * &psi00);
        }
        _ => {}
    }
    D5NormalForm::new(psi, a, k, phi, jb()).unwrap()
}

#[test]
fn brute_force_oracle_on_random_records() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut seen = [0usize; 3];
    for _ in 0..1000 {
        let nf = random_record(&mut rng);
        let (i, ii) = oracle(&nf.b, &nf.psi00(), &|a, b, c| nf.coeff(a, b, c));
        let (v, r) = decide_terminal(&nf);
        assert_eq!((r.condition_i, r.condition_ii), (i, ii));
        let want = if i {
            Verdict::NoTerminalContraction {
                violated: Violation::ConditionI,
            }
        } else if ii {
            Verdict::NoTerminalContraction {
                violated: Violation::ConditionII,
            }
        } else {
            Verdict::TerminalExists { index: 4 }
        };
        assert_eq!(v, want);
        seen[usize::from(i) + usize::from(!i && ii) * 2] += 1;
    }
    assert!(seen.iter().all(|&n| n > 100), "{seen:?}");
}

#[test]
fn example_input_has_no_terminal_contraction() {
    let f = Poly::parse(
        &xyzt(),
        "x^2 + y^2*z + 2*x*z^2 + t*(y^4 + z^2*t^2 + y*z^3 + y^3*t)",
    )
    .unwrap();
    let (v, nf, r) = decide_input(&f, &line(), jb()).unwrap();
    let nf = nf.unwrap();
    assert!(nf.psi.is_zero());
    assert_eq!((nf.a.clone(), nf.b.clone()), (qi(0), qi(0)));
    assert!(r.unwrap().condition_i);
    assert_eq!(
        v,
        Verdict::NoTerminalContraction {
            violated: Violation::ConditionI
        }
    );
}

#[test]
fn case_one_input_is_terminal() {
    let f = Poly::parse(&xyzt(), "x^2 + y^2*z + x*z^2 + y*t^2").unwrap();
    let (v, nf, _) = decide_input(&f, &line(), jb()).unwrap();
    assert_eq!(case_split(&nf.unwrap()), Case::Case1);
    assert_eq!(v, Verdict::TerminalExists { index: 4 });
}

#[test]
fn generic_replay_quartic() {
    for k in 1..=3 {
        let tr = replay_symbolic(&SymbolicNormalForm::generic(k, 2, 4)).unwrap();
        // the roots of the first equation are -f(0,0) and -b/2
        assert!(tr.singular.at_minus_f[..3].iter().all(Poly::is_zero));
        assert!(tr.singular.at_minus_half_b[0].is_zero());
    }
}

fn scaled(f: &Poly, images: [Poly; 4]) -> Poly {
    let v = xyzt();
    let mut s = Substitution::new(&v);
    for (n, p) in ["x", "y", "z", "t"].iter().zip(images) {
        s.set(n, p);
    }
    f.substitute(&s).unwrap()
}

fn arb_record() -> impl Strategy<Value = D5NormalForm> {
    any::<u64>().prop_map(|seed| random_record(&mut StdRng::seed_from_u64(seed)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reduction_is_idempotent(nf in arb_record()) {
        let once = reduce_to_normal_form(&nf.equation(), &line(), jb()).unwrap();
        prop_assert_eq!(&once, &nf);
        let twice = reduce_to_normal_form(&once.equation(), &line(), jb()).unwrap();
        prop_assert_eq!(twice, once);
    }

    #[test]
    fn weighted_scaling_keeps_the_pattern(nf in arb_record(), l in prop::sample::select(vec![2i64, -1, 3])) {
        let v = xyzt();
        let lam = qi(l);
        let pw = |e: u32| (0..e).fold(qi(1), |acc, _| acc * &lam);
        let images = [
            Poly::var(&v, "x").unwrap().scale(&pw(4)),
            Poly::var(&v, "y").unwrap().scale(&pw(3)),
            Poly::var(&v, "z").unwrap().scale(&pw(2)),
            Poly::var(&v, "t").unwrap().scale(&pw(2)),
        ];
        let g = scaled(&nf.equation(), images);
        let other = reduce_to_normal_form(&g, &line(), jb()).unwrap();
        let (v1, r1) = decide_terminal(&nf);
        let (v2, r2) = decide_terminal(&other);
        prop_assert_eq!(r1.zero_pattern(), r2.zero_pattern());
        prop_assert_eq!(v1, v2);
    }

    #[test]
    fn line_preserving_changes_keep_the_pattern(
        nf in arb_record(),
        al in -2i64..=2, be in -2i64..=2, ga in -2i64..=2,
        mu in prop::sample::select(vec![1i64, -1, 2]),
        la in prop::sample::select(vec![1i64, 3, -2]),
    ) {
        let v = xyzt();
        let var = |n: &str| Poly::var(&v, n).unwrap();
        let images = [
            &(&var("x") + &var("y").scale(&qi(al))) + &var("t").scale(&qi(be)),
            &var("y") + &var("t").scale(&qi(ga)),
            var("z").scale(&qi(la)),
            var("t").scale(&qi(mu)),
        ];
        let g = scaled(&nf.equation(), images);
        let other = reduce_to_normal_form(&g, &line(), jb()).unwrap();
        let (_, r1) = decide_terminal(&nf);
        let (_, r2) = decide_terminal(&other);
        prop_assert_eq!(r1.zero_pattern(), r2.zero_pattern());
    }

    #[test]
    fn case_one_is_never_obstructed(nf in arb_record(), c in 1i64..=3, which in 0usize..2) {
        let mut phi = nf.phi.clone();
        phi.insert([PhiKey(1, 0, 1), PhiKey(0, 0, 2)][which], qi(c));
        let nf = D5NormalForm::new(nf.psi.clone(), nf.a.clone(), nf.k, phi, jb()).unwrap();
        prop_assert_eq!(case_split(&nf), Case::Case1);
        prop_assert_eq!(decide_terminal(&nf).0, Verdict::TerminalExists { index: 4 });
    }

    #[test]
    fn singular_points_match_conditions(nf in arb_record()) {
        let (_, r) = decide_terminal(&nf);
        let tr = replay_theorem_charts(&nf).unwrap();
        prop_assert_eq!(tr.singular_root().is_some(), r.condition_i || r.condition_ii);
        let res = &tr.singular.resultant;
        let product = &r.i_fourth * &r.ii_first;
        prop_assert_eq!(res.constant_term(), product);
    }
}

#[test]
fn half_integers_survive_rescaling() {
    let f = Poly::parse(&xyzt(), "x^2 + y^2*z + 3*x*z^2 + t*(y^3 + t^3)").unwrap();
    let nf = reduce_to_normal_form(&f, &line(), jb()).unwrap();
    // x -> 3x, y -> 3y, divide by 9
    assert_eq!(nf.coeff(3, 0, 0), qi(3));
    assert_eq!(nf.coeff(0, 0, 3), q(1, 9));
}
