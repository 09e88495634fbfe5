use proptest::prelude::*;

use sasano::analysis::{
    coefficient_at, h_constants, laurent_infinity, laurent_zero, leading_data,
    residue_certificate_h, residue_certificate_q, zero_case, ZeroCase,
};
use sasano::backlund::{act_solution, act_word, generate_from_shift, orbit, seed_solution, shift_box};
use sasano::exactfield::{BigRational, ExpansionPoint, RatFunc};
use sasano::system::{is_solution, AffineParam, ParamVec, Solution};
use sasano::weyl::{act_params, act_params_word, Generator, Word};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn c(n: i64, d: i64) -> RatFunc {
    RatFunc::constant(q(n, d))
}

fn generator() -> impl Strategy<Value = Generator> {
    prop::sample::select(Generator::ALL.to_vec())
}

fn params() -> impl Strategy<Value = ParamVec> {
    let affine = (-30i64..31, 1i64..9, -4i64..5, 1i64..4)
        .prop_map(|(n, d, m, e)| AffineParam::ratio(n, d, m, e));
    (affine.clone(), affine.clone(), affine).prop_map(|(x, y, z)| ParamVec::from_free(x, y, z))
}

proptest! {
    #[test]
    fn generators_are_involutions_on_parameters(p in params(), g in generator()) {
        prop_assert_eq!(act_params(g, &act_params(g, &p)), p);
    }

    #[test]
    fn pi_conjugates_s0_to_s1(p in params()) {
        let w: Word = "p0p".parse().unwrap();
        prop_assert_eq!(act_params_word(&w, &p), act_params(Generator::S1, &p));
    }

    #[test]
    fn word_then_reverse_is_identity_on_the_seed(
        letters in prop::collection::vec(generator(), 0..7)
    ) {
        let w = Word::new(letters);
        let there = act_word(&w, &seed_solution());
        prop_assert!(is_solution(&there));
        prop_assert_eq!(&there.params, &act_params_word(&w, &seed_solution().params));
        prop_assert_eq!(act_word(&w.inverse(), &there), seed_solution());
    }
}

#[test]
fn orbit_box_one_satisfies_every_law() {
    let entries = orbit(&shift_box(1));
    assert_eq!(entries.len(), 27);
    for e in &entries {
        let s = &e.solution;
        assert!(is_solution(s), "{:?}", e.shift_index);
        let d = leading_data(s).unwrap();
        assert!(zero_case(s, &d).is_some());
        residue_certificate_q(s).unwrap();
        residue_certificate_h(s).unwrap();
        assert!(h_constants(s).conforms);
        for g in Generator::ALL {
            assert_eq!(act_solution(g, &act_solution(g, s)), *s);
        }
    }
}

#[test]
fn pi_swaps_components() {
    let s = generate_from_shift(0, 1, 0).solution;
    let swapped = act_solution(Generator::Pi, &s);
    assert_eq!((&swapped.q1, &swapped.p1), (&s.q2, &s.p2));
    assert_eq!((&swapped.q2, &swapped.p2), (&s.q1, &s.p1));
    assert_eq!(swapped.params.alpha0(), s.params.alpha1());
}

#[test]
fn first_shift_expansions() {
    let s = generate_from_shift(1, 0, 0).solution;
    let e = laurent_infinity(&s.q1, 1).unwrap();
    assert_eq!((e.lead_order, e.coeffs[0].clone()), (0, c(-1, 1)));
    let e = laurent_infinity(&s.p1, 2).unwrap();
    // (-1)(-2a - 1)/4
    let expected = &(&RatFunc::a() * &c(1, 2)) + &c(1, 4);
    assert_eq!(e.coeffs, vec![c(1, 4), expected]);
    assert!(laurent_zero(&c(1, 4), 1).unwrap().coeffs == vec![c(1, 4)]);
}

#[test]
fn third_shift_leading_data() {
    let s = generate_from_shift(0, 0, 1).solution;
    let d = leading_data(&s).unwrap();
    assert_eq!(d.a_inf_0, c(-1, 1));
    assert!((&d.a_inf_0 - &d.a_0_0).as_constant().unwrap().is_integer());
}

#[test]
fn q1_zero_family_has_the_p1_pole_profile() {
    // q1 = 0 with alpha0 = 1/4, alpha3 = 1/2, alpha1 = a
    let params = ParamVec::from_free(
        AffineParam::ratio(1, 4, 0, 1),
        AffineParam::ratio(0, 1, 1, 1),
        AffineParam::ratio(1, 2, 0, 1),
    );
    let a = RatFunc::a();
    let four_a = &c(4, 1) * &a;
    let coeff = &(&(&four_a - &RatFunc::one()) * &(&four_a + &RatFunc::one())) * &c(1, 16);
    let p1 = &c(1, 4) + &(&coeff * &RatFunc::t().inv().unwrap());
    let q2 = &c(1, 2) - &(&c(2, 1) * &a);
    let sol = Solution::new(params, RatFunc::zero(), p1.clone(), q2, c(1, 4));
    assert!(is_solution(&sol));
    assert_eq!(coefficient_at(&p1, ExpansionPoint::Zero, -1), coeff);
    let d = leading_data(&sol).unwrap();
    assert_eq!(zero_case(&sol, &d), Some(ZeroCase::PoleP1));
    assert!(h_constants(&sol).conforms);
}

#[test]
fn s0_on_seed_matches_the_q2_zero_family() {
    let s = act_solution(Generator::S0, &seed_solution());
    assert_eq!(s.q1, &c(2, 1) * &RatFunc::a());
    assert!(s.q2.is_zero());
    assert!(is_solution(&s));
}
