//! The four-dimensional system, its Hamiltonian and exact residuals.

mod formal;
mod params;

use serde::{Deserialize, Serialize};

use crate::exactfield::{BiPoly, BigRational, Factored, FactoredContext, FieldError, RatFunc};

pub use formal::{
    hamiltonian_formal, rhs_formal, verify_hamiltonian_form, verify_hamiltonian_form_with,
    FormalPoly, ParamPoly, FORMAL_VARS,
};
pub use params::{parse_affine, AffineParam, ParamError, ParamVec};

/// A candidate rational solution `(q1, p1, q2, p2)` at parameters `params`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub params: ParamVec,
    pub q1: RatFunc,
    pub p1: RatFunc,
    pub q2: RatFunc,
    pub p2: RatFunc,
}

impl Solution {
    pub fn new(params: ParamVec, q1: RatFunc, p1: RatFunc, q2: RatFunc, p2: RatFunc) -> Self {
        Solution {
            params,
            q1,
            p1,
            q2,
            p2,
        }
    }

    pub fn components(&self) -> [&RatFunc; 4] {
        [&self.q1, &self.p1, &self.q2, &self.p2]
    }

    /// Replaces `a` by a number in parameters and components.
    pub fn instantiate(&self, a_val: &BigRational) -> Result<Solution, FieldError> {
        let sub = |x: &RatFunc| -> Result<RatFunc, FieldError> {
            let d = subst_a(&x.denom(), a_val);
            if d.is_zero() {
                return Err(FieldError::PoleAtPoint);
            }
            RatFunc::new(subst_a(x.numer(), a_val), d)
        };
        Ok(Solution {
            params: self.params.instantiate(a_val),
            q1: sub(&self.q1)?,
            p1: sub(&self.p1)?,
            q2: sub(&self.q2)?,
            p2: sub(&self.p2)?,
        })
    }
}

fn subst_a(p: &BiPoly, a_val: &BigRational) -> BiPoly {
    let mut terms: Vec<(usize, usize, BigRational)> = Vec::new();
    for (i, j, c) in p.terms() {
        let mut v = c;
        for _ in 0..i {
            v *= a_val;
        }
        terms.push((0, j, v));
    }
    BiPoly::from_terms(terms)
}

struct Alphas {
    a0: RatFunc,
    a1: RatFunc,
    sum: RatFunc,
}

fn alphas(params: &ParamVec) -> Alphas {
    let a0 = params.alpha0().to_ratfunc();
    let a1 = params.alpha1().to_ratfunc();
    let a3 = params.alpha3().to_ratfunc();
    let sum = &(&a0 + &a1) + &a3;
    Alphas { a0, a1, sum }
}

/// Right-hand sides of `t x' = F(x)` for `x = (q1, p1, q2, p2)`.
pub fn vector_field(
    params: &ParamVec,
    q1: &RatFunc,
    p1: &RatFunc,
    q2: &RatFunc,
    p2: &RatFunc,
) -> [RatFunc; 4] {
    let Alphas { a0, a1, sum } = alphas(params);
    let t = RatFunc::t();
    let two = RatFunc::from_int(2);
    let four = RatFunc::from_int(4);
    let q1q2 = q1 * q2;
    let p1p2 = p1 * p2;

    let f_q1 = &(&(&(&(&(&two * &(q1 * q1)) * p1) - &(q1 * q1)) + &(&sum * q1)) - &t)
        + &(&(&(&four * &t) * p2) + &(&(&two * &q1q2) * p2));
    let f_p1 = &(&(&(&(&(-&two) * q1) * &(p1 * p1)) + &(&(&two * q1) * p1)) - &(&sum * p1))
        + &(&a0 - &(&(&two * &p1p2) * q2));
    let f_q2 = &(&(&(&(&(&two * &(q2 * q2)) * p2) - &(q2 * q2)) + &(&sum * q2)) - &t)
        + &(&(&(&four * &t) * p1) + &(&(&two * &q1q2) * p1));
    let f_p2 = &(&(&(&(&(-&two) * q2) * &(p2 * p2)) + &(&(&two * q2) * p2)) - &(&sum * p2))
        + &(&a1 - &(&(&two * &p1p2) * q1));
    [f_q1, f_p1, f_q2, f_p2]
}

/// `(t q1' - F1, t p1' - F2, t q2' - F3, t p2' - F4)`, exact.
///
/// Every term is kept over the product of the components' denominators, so
/// a vanishing residual costs no gcd at all.
pub fn residual(sol: &Solution) -> [RatFunc; 4] {
    let ctx = FactoredContext::new(&sol.components());
    let [q1, p1, q2, p2] = sol.components().map(|x| ctx.lift(x));
    let Alphas { a0, a1, sum } = alphas(&sol.params);
    let (a0, a1, sum) = (ctx.lift(&a0), ctx.lift(&a1), ctx.lift(&sum));
    let t = ctx.poly(&BiPoly::t());
    let (two, four, m_one, m_two) = (ctx.int(2), ctx.int(4), ctx.int(-1), ctx.int(-2));

    let f_q = |q: &Factored, p: &Factored, p_other: &Factored, q_other: &Factored| {
        ctx.sum(&[
            ctx.product(&[&two, q, q, p]),
            ctx.product(&[&m_one, q, q]),
            ctx.mul(&sum, q),
            ctx.neg(&t),
            ctx.product(&[&four, &t, p_other]),
            ctx.product(&[&two, q, q_other, p_other]),
        ])
    };
    let f_p =
        |q: &Factored, p: &Factored, alpha: &Factored, q_other: &Factored, p_other: &Factored| {
            ctx.sum(&[
                ctx.product(&[&m_two, q, p, p]),
                ctx.product(&[&two, q, p]),
                ctx.neg(&ctx.mul(&sum, p)),
                alpha.clone(),
                ctx.product(&[&m_two, p, q_other, p_other]),
            ])
        };
    let rhs = [
        f_q(&q1, &p1, &p2, &q2),
        f_p(&q1, &p1, &a0, &q2, &p2),
        f_q(&q2, &p2, &p1, &q1),
        f_p(&q2, &p2, &a1, &q1, &p1),
    ];
    let mut out: [RatFunc; 4] = Default::default();
    for ((slot, x), f) in out.iter_mut().zip(sol.components()).zip(&rhs) {
        let r = ctx.sub(&ctx.mul(&t, &ctx.diff_t(x)), f);
        *slot = ctx.to_ratfunc(&r);
    }
    out
}

pub fn is_solution(sol: &Solution) -> bool {
    residual(sol).iter().all(RatFunc::is_zero)
}

/// The Hamiltonian evaluated along `sol`.
///
/// Grouped around `u = q p` with reduced intermediates: the final
/// denominator is far smaller than the product of the components'
/// denominators, so early cancellation pays for its gcds.
pub fn hamiltonian(sol: &Solution) -> RatFunc {
    let Alphas { a0, a1, sum } = alphas(&sol.params);
    let t = RatFunc::t();
    let u1 = &sol.q1 * &sol.p1;
    let u2 = &sol.q2 * &sol.p2;
    // q^2 p^2 - q^2 p + A q p - alpha q - t p
    let half = |u: &RatFunc, q: &RatFunc, p: &RatFunc, alpha: &RatFunc| {
        &(&(u * &(&(u - q) + &sum)) - &(alpha * q)) - &(&t * p)
    };
    let cross = &(&RatFunc::from_int(4) * &(&t * &(&sol.p1 * &sol.p2)))
        + &(&RatFunc::from_int(2) * &(&u1 * &u2));
    &(&half(&u1, &sol.q1, &sol.p1, &a0) + &half(&u2, &sol.q2, &sol.p2, &a1)) + &cross
}
