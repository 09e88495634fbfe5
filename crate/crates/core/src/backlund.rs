//! Bäcklund transformations on solutions, the seed solution and orbit
//! generation by shift words.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactfield::{BigRational, RatFunc};
use crate::system::{is_solution, ParamVec, Solution};
use crate::weyl::{act_params, shift_word, Generator, Word};

/// `(0, 1/4, 0, 1/4)` at the standard parameters `(a/2, a/2, 1/4 - a, a)`.
pub fn seed_solution() -> Solution {
    let quarter = RatFunc::constant(BigRational::new(1.into(), 4.into()));
    Solution::new(
        ParamVec::standard(),
        RatFunc::zero(),
        quarter.clone(),
        RatFunc::zero(),
        quarter,
    )
}

/// Applies one generator. When the generator's pivot vanishes identically
/// the generator acts as the identity on the solution and the parameters.
///
/// `s2` shifts both momenta by `-alpha2 * dq/(q1 q2 + t)`, so that it commutes
/// with `pi` and preserves the system.
pub fn act_solution(g: Generator, sol: &Solution) -> Solution {
    let [a0, a1, a2, a3] = sol.params.as_array().map(|x| x.to_ratfunc());
    let Solution { q1, p1, q2, p2, .. } = sol;
    let shifted = |num: &RatFunc, pivot: &RatFunc| -> RatFunc {
        num.div(pivot).expect("pivot checked nonzero")
    };
    let (q1n, p1n, q2n, p2n) = match g {
        Generator::S0 => {
            if p1.is_zero() {
                return sol.clone();
            }
            (q1 + &shifted(&a0, p1), p1.clone(), q2.clone(), p2.clone())
        }
        Generator::S1 => {
            if p2.is_zero() {
                return sol.clone();
            }
            (q1.clone(), p1.clone(), q2 + &shifted(&a1, p2), p2.clone())
        }
        Generator::S2 => {
            let pivot = &(q1 * q2) + &RatFunc::t();
            if pivot.is_zero() {
                return sol.clone();
            }
            let inv = pivot.inv().expect("pivot checked nonzero");
            let k = &a2 * &inv;
            (q1.clone(), p1 - &(&k * q2), q2.clone(), p2 - &(&k * q1))
        }
        Generator::S3 => {
            let pivot = &(p1 + p2) - &RatFunc::one();
            if pivot.is_zero() {
                return sol.clone();
            }
            let d = shifted(&a3, &pivot);
            (q1 + &d, p1.clone(), q2 + &d, p2.clone())
        }
        Generator::Pi => (q2.clone(), p2.clone(), q1.clone(), p1.clone()),
    };
    Solution::new(act_params(g, &sol.params), q1n, p1n, q2n, p2n)
}

/// Applies `w`, rightmost letter first.
///
/// Each generator leaves its own pivot unchanged and flips the sign of its
/// parameter, so applying it twice is the identity; adjacent equal letters
/// are cancelled before anything is computed.
pub fn act_word(w: &Word, sol: &Solution) -> Solution {
    let mut reduced: Vec<Generator> = Vec::with_capacity(w.len());
    for g in w.action_order() {
        if reduced.last() == Some(&g) {
            reduced.pop();
        } else {
            reduced.push(g);
        }
    }
    reduced
        .into_iter()
        .fold(sol.clone(), |acc, g| act_solution(g, &acc))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitEntry {
    #[serde(rename = "shift")]
    pub shift_index: (i64, i64, i64),
    pub word: Word,
    #[serde(flatten)]
    pub solution: Solution,
}

/// The image of the seed under `T0^k0 T1^k1 T2^k2`.
pub fn generate_from_shift(k0: i64, k1: i64, k2: i64) -> OrbitEntry {
    let word = shift_word(k0, k1, k2);
    let solution = act_word(&word, &seed_solution());
    OrbitEntry {
        shift_index: (k0, k1, k2),
        word,
        solution,
    }
}

/// All shift indices with `|k_i| <= range`, in lexicographic order.
pub fn shift_box(range: i64) -> Vec<(i64, i64, i64)> {
    let r = -range..=range;
    r.clone()
        .flat_map(|k0| {
            let r = r.clone();
            r.clone()
                .flat_map(move |k1| r.clone().map(move |k2| (k0, k1, k2)))
        })
        .collect()
}

/// One entry per index, computed in parallel, returned in input order.
pub fn orbit(shifts: &[(i64, i64, i64)]) -> Vec<OrbitEntry> {
    shifts
        .par_iter()
        .map(|&(k0, k1, k2)| generate_from_shift(k0, k1, k2))
        .collect()
}

/// True when the entry solves the system at its parameters.
pub fn entry_is_sound(e: &OrbitEntry) -> bool {
    is_solution(&e.solution)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::BiPoly;
    use crate::system::{hamiltonian, residual, AffineParam};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn c(n: i64, d: i64) -> RatFunc {
        RatFunc::constant(q(n, d))
    }

    fn sym(v: [(i64, i64, i64, i64); 4]) -> ParamVec {
        let [x0, x1, x2, x3] = v.map(|(n, d, m, e)| AffineParam::ratio(n, d, m, e));
        ParamVec::new(x0, x1, x2, x3).unwrap()
    }

    #[test]
    fn seed_properties() {
        let s = seed_solution();
        assert!(is_solution(&s));
        assert_eq!(hamiltonian(&s), &RatFunc::t() * &c(-1, 4));
    }

    #[test]
    fn single_generators_on_seed() {
        let s = seed_solution();
        let a = RatFunc::a();

        let s0 = act_solution(Generator::S0, &s);
        assert_eq!(s0.q1, &a * &c(2, 1));
        assert_eq!(
            s0.params,
            sym([(0, 1, -1, 2), (0, 1, 1, 2), (1, 4, -1, 2), (0, 1, 1, 1)])
        );
        assert!(is_solution(&s0));

        assert_eq!(act_solution(Generator::Pi, &s), s);

        let s3 = act_solution(Generator::S3, &s);
        assert_eq!(s3.q1, &a * &c(-2, 1));
        assert_eq!(s3.q2, &a * &c(-2, 1));
        assert_eq!(
            s3.params,
            sym([(0, 1, 1, 2), (0, 1, 1, 2), (1, 4, 0, 1), (0, 1, -1, 1)])
        );
        assert!(is_solution(&s3));
    }

    #[test]
    fn degenerate_pivot_is_identity() {
        let s = Solution::new(
            ParamVec::standard(),
            RatFunc::zero(),
            RatFunc::zero(),
            RatFunc::zero(),
            RatFunc::one(),
        );
        assert_eq!(act_solution(Generator::S0, &s), s);
        assert_eq!(act_solution(Generator::S3, &s), s);
    }

    fn poly(rows: &[(i64, usize, usize)]) -> BiPoly {
        BiPoly::from_terms(rows.iter().map(|&(c, i, j)| (i, j, q(c, 1))))
    }

    #[test]
    fn first_shift_matches_closed_form() {
        let e = generate_from_shift(1, 0, 0);
        let s = &e.solution;
        // q = -t / (t + 4a^2 + 2a)
        let q_exp = RatFunc::new(
            poly(&[(-1, 0, 1)]),
            poly(&[(1, 0, 1), (4, 2, 0), (2, 1, 0)]),
        )
        .unwrap();
        // p = (t + 4a^2 + 6a + 2) / (4 (t + (2a + 1)^2))
        let p_exp = RatFunc::new(
            poly(&[(1, 0, 1), (4, 2, 0), (6, 1, 0), (2, 0, 0)]),
            poly(&[(4, 0, 1), (16, 2, 0), (16, 1, 0), (4, 0, 0)]),
        )
        .unwrap();
        assert_eq!(s.q1, q_exp);
        assert_eq!(s.q2, q_exp);
        assert_eq!(s.p1, p_exp);
        assert_eq!(s.p2, p_exp);
        assert_eq!(e.word.to_string(), "p23210");
        assert_eq!(
            s.params,
            sym([(1, 2, 1, 2), (1, 2, 1, 2), (-1, 4, -1, 1), (0, 1, 1, 1)])
        );
        assert!(residual(s).iter().all(RatFunc::is_zero));
    }

    #[test]
    fn third_shift_closed_form() {
        let s = generate_from_shift(0, 0, 1).solution;
        let q_exp = RatFunc::new(
            poly(&[(-1, 0, 1)]),
            poly(&[(1, 0, 1), (4, 2, 0), (-6, 1, 0), (2, 0, 0)]),
        )
        .unwrap();
        let p_exp = RatFunc::new(
            poly(&[(4, 2, 0), (-2, 1, 0), (1, 0, 1)]),
            poly(&[(4, 0, 1), (16, 2, 0), (-16, 1, 0), (4, 0, 0)]),
        )
        .unwrap();
        assert_eq!((&s.q1, &s.q2), (&q_exp, &q_exp));
        assert_eq!((&s.p1, &s.p2), (&p_exp, &p_exp));
        assert_eq!(
            s.params,
            sym([(0, 1, 1, 2), (0, 1, 1, 2), (3, 4, -1, 1), (-1, 1, 1, 1)])
        );
        assert!(is_solution(&s));
    }

    #[test]
    fn second_shift_closed_form() {
        let s = generate_from_shift(0, 1, 0).solution;
        // q2 = -t / (t - 2a^2 + a)
        let q2 = RatFunc::new(
            poly(&[(-1, 0, 1)]),
            poly(&[(1, 0, 1), (-2, 2, 0), (1, 1, 0)]),
        )
        .unwrap();
        // u = 4a^4 - 4a^3 - 4a^2 t - a^2 + 2at + a + t^2
        let u = poly(&[
            (4, 4, 0),
            (-4, 3, 0),
            (-4, 2, 1),
            (-1, 2, 0),
            (2, 1, 1),
            (1, 1, 0),
            (1, 0, 2),
        ]);
        let two_t = poly(&[(2, 0, 1)]);
        let q1 = RatFunc::new(
            &poly(&[(1, 0, 1)]) * &u,
            &poly(&[(1, 0, 1), (-2, 2, 0), (1, 1, 0)]) * &(&u + &two_t),
        )
        .unwrap();
        let w = poly(&[(16, 4, 0), (-16, 2, 1), (-4, 2, 0), (4, 0, 2), (4, 0, 1)]);
        let p1 = RatFunc::new(&u + &two_t, w.clone()).unwrap();
        let v = poly(&[
            (4, 4, 0),
            (4, 3, 0),
            (-4, 2, 1),
            (-1, 2, 0),
            (-2, 1, 1),
            (-1, 1, 0),
            (1, 0, 2),
            (2, 0, 1),
        ]);
        let p2 = RatFunc::new(v, w).unwrap();
        assert_eq!(s.q1, q1);
        assert_eq!(s.q2, q2);
        assert_eq!(s.p1, p1);
        assert_eq!(s.p2, p2);
        assert_eq!(
            s.params,
            sym([(-1, 2, 1, 2), (1, 2, 1, 2), (1, 4, -1, 1), (0, 1, 1, 1)])
        );
        assert!(is_solution(&s));
    }

    #[test]
    fn word_then_reverse_returns_seed() {
        let s = seed_solution();
        for w in ["0", "23", "p2321", "012p"] {
            let w: Word = w.parse().unwrap();
            let there = act_word(&w, &s);
            assert_eq!(act_word(&w.inverse(), &there), s, "word {w}");
        }
    }

    #[test]
    fn small_orbit_is_sound() {
        let entries = orbit(&shift_box(1));
        assert_eq!(entries.len(), 27);
        assert_eq!(entries[13].shift_index, (0, 0, 0));
        assert_eq!(entries[13].solution, seed_solution());
        assert!(entries.iter().all(entry_is_sound));
    }

    #[test]
    fn entry_json_shape() {
        let e = generate_from_shift(0, 0, 0);
        let v: serde_json::Value = serde_json::to_value(&e).unwrap();
        assert_eq!(v["shift"], serde_json::json!([0, 0, 0]));
        assert_eq!(v["word"], "");
        assert!(v["params"]["alpha0"].is_object());
        let back: OrbitEntry = serde_json::from_value(v).unwrap();
        assert_eq!(back, e);
    }
}
