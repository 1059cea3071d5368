use proptest::prelude::*;

use hecke_involutions::coxeter::Side;
use hecke_involutions::laurent::LaurentPoly;
use hecke_involutions::systems;

fn poly() -> impl Strategy<Value = LaurentPoly> {
    (-6i32..6, prop::collection::vec(-9i64..10, 0..7)).prop_map(|(o, c)| LaurentPoly::new(o, c))
}

fn u_poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(-9i64..10, 0..5).prop_map(|c| LaurentPoly::from_u_coeffs(&c))
}

proptest! {
    #[test]
    fn bar_is_an_involutive_ring_map(p in poly(), q in poly()) {
        prop_assert_eq!(p.bar().bar(), p.clone());
        prop_assert_eq!((&p * &q).bar(), p.bar() * q.bar());
        prop_assert_eq!((&p + &q).bar(), p.bar() + q.bar());
    }

    #[test]
    fn split_recombines(p in poly()) {
        let (neg, rest) = p.split_strict_neg();
        prop_assert!(neg.max_exp().is_none_or(|e| e < 0));
        prop_assert!(rest.min_exp().is_none_or(|e| e >= 0));
        prop_assert_eq!(neg + rest, p);
    }

    #[test]
    fn mod2_is_a_ring_map(p in poly(), q in poly()) {
        prop_assert_eq!((&p + &q).mod2(), (p.mod2() + q.mod2()).mod2());
        prop_assert_eq!((&p * &q).mod2(), (p.mod2() * q.mod2()).mod2());
    }

    #[test]
    fn minus_u_is_an_involution(p in u_poly()) {
        prop_assert_eq!(p.sub_minus_u().unwrap().sub_minus_u().unwrap(), p);
    }

    #[test]
    fn string_form_parses_back(p in poly()) {
        prop_assert_eq!(LaurentPoly::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn star_and_exchange_condition(word in prop::collection::vec(0usize..3, 0..14), s in 0usize..3) {
        for sys in [systems::a_flip(3), systems::b(3), systems::affine_a2_swap()] {
            let g = sys.group();
            let w = g.from_word(&word);
            let ws = g.star_apply(w);
            prop_assert_eq!(g.star_apply(ws), w);
            prop_assert_eq!(g.length(ws), g.length(w));
            for t in 0..3 {
                prop_assert_eq!(g.descent(ws, sys.star()[t], Side::Left), g.descent(w, t, Side::Left));
            }
            for side in [Side::Left, Side::Right] {
                let (sw, sign) = g.mul_gen(w, s, side);
                prop_assert_eq!(g.descent(w, s, side), sign < 0);
                let expected = if sign < 0 { g.length(w) - 1 } else { g.length(w) + 1 };
                prop_assert_eq!(g.length(sw), expected);
            }
        }
    }

    #[test]
    fn bruhat_is_a_partial_order(i in 0usize..1000, j in 0usize..1000, k in 0usize..1000) {
        let g = systems::b(3).group();
        let all = g.enumerate_up_to(9).unwrap();
        let (x, y, z) = (all[i % all.len()], all[j % all.len()], all[k % all.len()]);
        prop_assert!(g.bruhat_leq(x, x));
        if g.bruhat_leq(x, y) && g.bruhat_leq(y, x) {
            prop_assert_eq!(x, y);
        }
        if g.bruhat_leq(x, y) && g.bruhat_leq(y, z) {
            prop_assert!(g.bruhat_leq(x, z));
        }
    }
}

#[test]
fn poincare_at_one_is_the_order() {
    for (name, sys) in systems::finite_test_systems() {
        let g = sys.group();
        let n = g.rank();
        for mask in 1u32..(1 << n) {
            let k: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let p = g.poincare_poly(&k).unwrap();
            assert_eq!(p.eval_at_one() as usize, g.parabolic_elements(&k).unwrap().len(), "{name} {k:?}");
        }
    }
}
