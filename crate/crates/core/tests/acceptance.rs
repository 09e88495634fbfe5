//! The acceptance suite: ten numbered criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the report is always printed. The
//! process fails when a criterion outside `KNOWN_UNATTAINABLE` fails, or when
//! one inside it unexpectedly passes.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use sasano::analysis::{
    h_constants_of, h_infinity_law, infinity_law, leading_data, residue_certificate_h_of,
    residue_certificate_q, zero_case,
};
use sasano::backlund::{act_solution, generate_from_shift, orbit, seed_solution, shift_box, OrbitEntry};
use sasano::exactfield::{BigRational, RatFunc};
use sasano::system::{
    hamiltonian, is_solution, residual, verify_hamiltonian_form, AffineParam, ParamVec, Solution,
};
use sasano::weyl::{
    act_params, act_params_word, necessary_condition_cases, reduce_to_standard, t0_word, t1_word,
    t2_word, Generator, Word,
};

/// Criteria that cannot hold as stated; see the README.
const KNOWN_UNATTAINABLE: [usize; 1] = [3];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn c(n: i64, d: i64) -> RatFunc {
    RatFunc::constant(q(n, d))
}

fn a() -> RatFunc {
    RatFunc::a()
}

fn t() -> RatFunc {
    RatFunc::t()
}

fn frac(n: &RatFunc, d: &RatFunc) -> RatFunc {
    n.div(d).expect("nonzero denominator")
}

fn criterion_1() -> Outcome {
    let r = residual(&seed_solution());
    outcome(r.iter().all(RatFunc::is_zero), "seed residual")
}

fn criterion_2() -> Outcome {
    outcome(verify_hamiltonian_form(), "formal identity")
}

/// The first, second and third example solutions as printed, in the seed's
/// parameter `a`.
fn printed_examples() -> [[RatFunc; 4]; 3] {
    let one = RatFunc::one();
    let quarter = c(1, 4);
    let m1 = c(-1, 1);
    let two_a = &c(2, 1) * &a();

    let x = frac(&a(), &(&c(2, 1) * &(&t() + &(&c(4, 1) * &(&a() * &a())))));
    let y = frac(&(&(&c(4, 1) * &a()) + &one), &(&c(4, 1) * &(&t() + &one)));
    let first = [
        m1.clone(),
        &(&quarter + &x) - &y,
        m1.clone(),
        &(&quarter - &x) + &y,
    ];

    // nested fractions, innermost first
    let r = frac(&(&a() * &(&one - &two_a)), &t()); // a(1 - 2a)/t
    let s = frac(&(&a() * &(&two_a - &one)), &t()); // a(2a - 1)/t
    let inv_1r = frac(&one, &(&one + &r));
    let inv_1s = frac(&one, &(&one - &s));
    let a2a1 = &a() * &(&two_a + &one);
    let q1 = &(&two_a - &inv_1r)
        + &frac(
            &(&c(2, 1) - &two_a),
            &(&one + &frac(&(&two_a + &one), &(&(&a2a1 - &t()) - &inv_1r))),
        );
    let p1 = &quarter
        + &frac(
            &(&two_a + &one),
            &(&(&(&c(-4, 1) * &t()) + &(&c(4, 1) * &a2a1)) - &inv_1s),
        );
    let q2 = -&inv_1s;
    let p2 = &(&quarter + &s)
        - &frac(
            &(&two_a + &one),
            &(&(&c(-4, 1) * &inv_1r) + &frac(&(&c(4, 1) * &t()), &(&two_a - &inv_1r))),
        );
    let second = [q1, p1, q2, p2];

    let u = &two_a - &one;
    let z = frac(&u, &(&c(4, 1) * &(&t() + &(&u * &u))));
    let w = frac(&(&(&c(4, 1) * &a()) - &c(3, 1)), &(&c(2, 1) * &(&t() + &one)));
    let third = [
        m1.clone(),
        &(&quarter - &z) + &w,
        m1,
        &(&quarter + &z) - &w,
    ];
    [first, second, third]
}

fn criterion_3() -> Outcome {
    let [first, second, third] = printed_examples();
    let matches = |e: &OrbitEntry, printed: &[RatFunc; 4]| {
        e.solution.components().into_iter().zip(printed).all(|(x, y)| x == y)
    };
    let e100 = generate_from_shift(1, 0, 0);
    let e001 = generate_from_shift(0, 0, 1);
    let e010 = generate_from_shift(0, 1, 0);

    let first_eq = matches(&e100, &first);
    let third_eq = matches(&e001, &third);
    let second_eq = matches(&e010, &second);
    let second_solves = is_solution(&e010.solution);
    let expected_params = ParamVec::new(
        AffineParam::ratio(-1, 2, 1, 2),
        AffineParam::ratio(1, 2, 1, 2),
        AffineParam::ratio(1, 4, -1, 1),
        AffineParam::ratio(0, 1, 1, 1),
    )
    .expect("normalized");
    let second_params = e010.solution.params == expected_params;

    // whether the printed first and third displays solve the system at all
    let printed_solves = |p: &[RatFunc; 4], params: &ParamVec| {
        let [q1, p1, q2, p2] = p.clone();
        is_solution(&Solution::new(params.clone(), q1, p1, q2, p2))
    };
    let first_solves = printed_solves(&first, &e100.solution.params);
    let third_solves = printed_solves(&third, &e001.solution.params);
    let second_solves_printed = printed_solves(&second, &e010.solution.params);
    let second_components: Vec<bool> = e010
        .solution
        .components()
        .into_iter()
        .zip(&second)
        .map(|(x, y)| x == y)
        .collect();

    let pass = first_eq && third_eq && second_eq && second_solves && second_params;
    outcome(
        pass,
        format!(
            "(1,0,0) equals first display: {first_eq} (display solves the system: {first_solves}); \
             (0,0,1) equals third display: {third_eq} (display solves the system: {third_solves}); \
             (0,1,0) residual zero: {second_solves}, parameters: {second_params}, \
             equals second display: {second_eq} (per component {second_components:?}, \
             display solves the system: {second_solves_printed})"
        ),
    )
}

fn criterion_4(entries: &[OrbitEntry]) -> Outcome {
    let mut bad = Vec::new();
    for e in entries {
        let ok = match leading_data(&e.solution) {
            Ok(d) => {
                let law = infinity_law(&e.solution.params);
                law[0] == d.a_inf_0 && law[1] == d.c_inf_0 && law[2] == d.b_inf_m1 && law[3] == d.d_inf_m1
            }
            Err(_) => false,
        };
        if !ok {
            bad.push(e.shift_index);
        }
    }
    outcome(
        bad.is_empty(),
        format!("{} entries, failures: {bad:?}", entries.len()),
    )
}

fn criterion_5(entries: &[OrbitEntry]) -> Outcome {
    let mut counts = std::collections::BTreeMap::new();
    let mut bad = Vec::new();
    for e in entries {
        let case = leading_data(&e.solution)
            .ok()
            .and_then(|d| zero_case(&e.solution, &d));
        match case {
            Some(c) => *counts.entry(format!("{c:?}")).or_insert(0) += 1,
            None => bad.push(e.shift_index),
        }
    }
    outcome(
        bad.is_empty(),
        format!("{} entries, cases {counts:?}, failures: {bad:?}", entries.len()),
    )
}

struct HData {
    shift: (i64, i64, i64),
    h: RatFunc,
}

fn criterion_6(entries: &[&OrbitEntry], hs: &[HData]) -> Outcome {
    let mut bad = Vec::new();
    let mut factors = 0;
    for (e, h) in entries.iter().zip(hs) {
        let q = residue_certificate_q(&e.solution);
        let hr = residue_certificate_h_of(&h.h);
        match (q, hr) {
            (Ok((r1, r2)), Ok(rh)) => {
                factors += r1.entries.len() + r2.entries.len() + rh.entries.len();
            }
            _ => bad.push(e.shift_index),
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{} entries, {factors} certified pole factors, failures: {bad:?}",
            entries.len()
        ),
    )
}

fn criterion_7(entries: &[&OrbitEntry], hs: &[HData]) -> Outcome {
    let mut bad = Vec::new();
    let mut seed_ok = false;
    let mut t0_ok = false;
    for (e, h) in entries.iter().zip(hs) {
        let hc = h_constants_of(&e.solution, &h.h);
        if hc.h_inf_0 != h_infinity_law(&e.solution.params) {
            bad.push(h.shift);
        }
        match h.shift {
            (0, 0, 0) => seed_ok = hc.h_inf_0.is_zero() && hc.h_0_0.is_zero(),
            (1, 0, 0) => t0_ok = hc.h_inf_0 == c(1, 4),
            _ => {}
        }
    }
    outcome(
        bad.is_empty() && seed_ok && t0_ok,
        format!(
            "{} entries, failures: {bad:?}, seed (0, 0): {seed_ok}, first shift 1/4: {t0_ok}",
            entries.len()
        ),
    )
}

fn random_rational(rng: &mut StdRng) -> BigRational {
    let n: i64 = rng.gen_range(-40..=40);
    let d: i64 = rng.gen_range(1..=12);
    q(n, d)
}

fn random_params(rng: &mut StdRng, symbolic: bool) -> ParamVec {
    let one = |rng: &mut StdRng| {
        let k = random_rational(rng);
        let m = if symbolic { random_rational(rng) } else { BigRational::zero() };
        AffineParam::new(k, m)
    };
    let (a0, a1, a3) = (one(rng), one(rng), one(rng));
    ParamVec::from_free(a0, a1, a3)
}

/// Numeric vectors with denominators up to 4, so that both satisfied and
/// violated conditions occur often.
fn small_denominator_params(rng: &mut StdRng) -> ParamVec {
    let one = |rng: &mut StdRng| {
        AffineParam::constant(q(rng.gen_range(-12..=12), rng.gen_range(1..=4)))
    };
    let (a0, a1, a3) = (one(rng), one(rng), one(rng));
    ParamVec::from_free(a0, a1, a3)
}

fn criterion_8(rng: &mut StdRng, small: &[&OrbitEntry]) -> Outcome {
    let pi_s0_pi: Word = "p0p".parse().expect("word");
    let shifts = [t0_word(), t1_word(), t2_word()];
    let mut param_fail = 0;
    for k in 0..1000 {
        let p = random_params(rng, k % 2 == 1);
        for g in Generator::ALL {
            if act_params(g, &act_params(g, &p)) != p {
                param_fail += 1;
            }
        }
        if act_params_word(&pi_s0_pi, &p) != act_params(Generator::S1, &p) {
            param_fail += 1;
        }
        for i in 0..3 {
            for j in (i + 1)..3 {
                let ij = act_params_word(&shifts[i].then_after(&shifts[j]), &p);
                let ji = act_params_word(&shifts[j].then_after(&shifts[i]), &p);
                if ij != ji {
                    param_fail += 1;
                }
            }
        }
    }
    let mut sol_fail = Vec::new();
    for e in small {
        for g in Generator::ALL {
            let once = act_solution(g, &e.solution);
            if act_solution(g, &once) != e.solution {
                sol_fail.push((e.shift_index, g.symbol()));
            }
        }
    }
    outcome(
        param_fail == 0 && sol_fail.is_empty(),
        format!(
            "parameter failures: {param_fail} over 1000 vectors; solution failures over {} entries: {sol_fail:?}",
            small.len()
        ),
    )
}

fn criterion_9(rng: &mut StdRng) -> Outcome {
    let half = q(1, 2);
    let standard = ParamVec::standard().instantiate(&half);
    let moves = [t0_word(), t1_word(), t2_word()];
    let mut failures = Vec::new();
    for _ in 0..100 {
        let len = rng.gen_range(1..=3);
        let mut w = Word::empty();
        for _ in 0..len {
            let m = &moves[rng.gen_range(0..3)];
            let m = if rng.gen_bool(0.5) { m.inverse() } else { m.clone() };
            w = m.then_after(&w);
        }
        let p = act_params_word(&w, &standard);
        match reduce_to_standard(&p, 40) {
            Ok((r, std)) if std.is_standard() && act_params_word(&r, &p) == std => {}
            _ => failures.push(w.to_string()),
        }
    }
    // membership computed directly from the four integrality quantities
    let mut rejected = 0;
    let mut disagreements = 0;
    for _ in 0..1000 {
        let p = small_denominator_params(rng);
        let [a0, a1, _, a3] = p.as_array().map(|x| x.constant.clone());
        let two = q(2, 1);
        let int = |x: BigRational| x.is_integer();
        let (x0, y0) = (int(&a3 - &two * &a0), int(&a3 + &two * &a0));
        let (x1, y1) = (int(&a3 - &two * &a1), int(&a3 + &two * &a1));
        let z = int(&a3 - q(1, 2));
        let any = (x0 && x1) || (x0 && y1) || (y0 && x1) || (y0 && y1) || (x0 && z) || (x1 && z);
        let cases = necessary_condition_cases(&p, None);
        if cases.is_empty() != !any {
            disagreements += 1;
        } else if !any {
            rejected += 1;
        }
    }
    outcome(
        failures.is_empty() && disagreements == 0 && rejected > 0,
        format!(
            "100 random shift words reduced: {} failures {failures:?}; {rejected} violating vectors rejected, {disagreements} disagreements over 1000",
            100 - failures.len()
        ),
    )
}

/// `p(a, t)` with `a` fixed: coefficients of the denominator in `t`.
fn den_coeffs_f64(x: &RatFunc, a_val: f64) -> Vec<f64> {
    let d = x.denom();
    let n = d.degree_t().map_or(0, |k| k + 1);
    let mut out = vec![0.0; n];
    for (i, j, c) in d.terms() {
        out[j] += c.to_f64().unwrap_or(f64::NAN) * a_val.powi(i as i32);
    }
    out
}

/// Away from poles: the denominator is not small against its own terms.
fn well_separated(x: &RatFunc, a_val: f64, t_val: f64) -> bool {
    let c = den_coeffs_f64(x, a_val);
    let (mut v, mut mag) = (0.0, 0.0);
    for (k, ck) in c.iter().enumerate() {
        let term = ck * t_val.powi(k as i32);
        v += term;
        mag += term.abs();
    }
    v.abs() > 1e-3 * mag
}

fn criterion_10(rng: &mut StdRng) -> Outcome {
    let mut funcs: Vec<(String, RatFunc)> = Vec::new();
    for (k0, k1, k2) in [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, 1, 0), (1, 1, -1)] {
        let e = generate_from_shift(k0, k1, k2);
        for (name, x) in ["q1", "p1", "q2", "p2"].iter().zip(e.solution.components()) {
            if !x.is_t_free() {
                funcs.push((format!("{name} of ({k0},{k1},{k2})"), x.clone()));
            }
        }
    }
    let x = frac(&(&(&a() * &t()) + &c(3, 1)), &(&(&t() * &t()) + &(&a() * &a())));
    funcs.push(("(a t + 3)/(t^2 + a^2)".into(), x));

    let h = q(1, 1_000_000_000);
    let two_h = &h * BigRational::from_integer(BigInt::from(2));
    let mut worst: f64 = 0.0;
    let mut failures = Vec::new();
    for (name, x) in &funcs {
        let dx = x.diff_t();
        let mut points = 0;
        while points < 100 {
            let a_val = q(rng.gen_range(1..=99), 100) + BigRational::from_integer(rng.gen_range(0..3).into());
            let t_val = q(rng.gen_range(-4000..=4000), 1000);
            let (af, tf) = (a_val.to_f64().unwrap(), t_val.to_f64().unwrap());
            if t_val.is_zero() || !well_separated(x, af, tf) {
                continue;
            }
            let (Ok(plus), Ok(minus), Ok(exact)) = (
                x.eval(&a_val, &(&t_val + &h)),
                x.eval(&a_val, &(&t_val - &h)),
                dx.eval(&a_val, &t_val),
            ) else {
                continue;
            };
            points += 1;
            let fd = (plus - minus) / &two_h;
            let err = (&fd - &exact).abs().to_f64().unwrap();
            let scale = exact.abs().to_f64().unwrap().max(1.0);
            let rel = err / scale;
            worst = worst.max(rel);
            if rel >= 1e-8 {
                failures.push(format!("{name} at a={a_val}, t={t_val}: {rel:e}"));
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{} functions x 100 points, worst relative error {worst:.2e}, failures: {}",
            funcs.len(),
            failures.len()
        ),
    )
}

fn main() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5a5a_2024);
    let mut results: Vec<(usize, &str, Outcome, f64)> = Vec::new();
    let mut record = |n: usize, name: &'static str, f: &mut dyn FnMut() -> Outcome| {
        let t0 = Instant::now();
        let o = f();
        let secs = t0.elapsed().as_secs_f64();
        println!(
            "criterion {n:>2} {:<4} {name} ({secs:.1}s): {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        results.push((n, name, o, secs));
    };

    record(1, "seed correctness", &mut criterion_1);
    record(2, "Hamiltonian form", &mut criterion_2);
    record(3, "example solutions", &mut criterion_3);

    let t_gen = Instant::now();
    let entries = orbit(&shift_box(3));
    println!(
        "generated {} orbit entries in {:.1}s",
        entries.len(),
        t_gen.elapsed().as_secs_f64()
    );
    let small: Vec<&OrbitEntry> = entries
        .iter()
        .filter(|e| {
            let (k0, k1, k2) = e.shift_index;
            k0.abs() <= 2 && k1.abs() <= 2 && k2.abs() <= 2
        })
        .collect();

    record(4, "leading law at infinity", &mut || criterion_4(&entries));
    record(5, "behaviour at zero", &mut || criterion_5(&entries));

    let t_h = Instant::now();
    let hs: Vec<HData> = small
        .iter()
        .map(|e| HData {
            shift: e.shift_index,
            h: hamiltonian(&e.solution),
        })
        .collect();
    println!(
        "Hamiltonians of {} entries in {:.1}s",
        hs.len(),
        t_h.elapsed().as_secs_f64()
    );
    record(6, "residue laws", &mut || criterion_6(&small, &hs));
    record(7, "Hamiltonian constant terms", &mut || criterion_7(&small, &hs));
    let mut rng8 = StdRng::seed_from_u64(rng.gen());
    record(8, "group action", &mut || criterion_8(&mut rng8, &small));
    let mut rng9 = StdRng::seed_from_u64(rng.gen());
    record(9, "classifier soundness", &mut || criterion_9(&mut rng9));
    let mut rng10 = StdRng::seed_from_u64(rng.gen());
    record(10, "derivative oracle", &mut || criterion_10(&mut rng10));

    let passed = results.iter().filter(|r| r.2.pass).count();
    println!(
        "{passed}/{} criteria passed in {:.1}s",
        results.len(),
        start.elapsed().as_secs_f64()
    );
    let mut unexpected = Vec::new();
    for (n, _, o, _) in &results {
        let known = KNOWN_UNATTAINABLE.contains(n);
        if o.pass == known {
            unexpected.push(*n);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
    for n in KNOWN_UNATTAINABLE {
        println!("criterion {n} fails as documented in the README");
    }
}
