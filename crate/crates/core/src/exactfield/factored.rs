//! Fractions over a fixed set of denominator bases, kept unreduced.
//!
//! Sums and products of a few rational functions with known denominators
//! only need polynomial multiplication and addition; the single gcd happens
//! when a result is converted back to a [`RatFunc`].

use std::cell::RefCell;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::bipoly::BiPoly;
use super::ratfunc::RatFunc;
use super::zbipoly::ZBiPoly;

/// `num / (scale * prod bases[i]^exps[i])`.
#[derive(Clone, Debug)]
pub struct Factored {
    num: ZBiPoly,
    scale: BigInt,
    exps: Vec<u32>,
}

impl Factored {
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

/// The denominator bases shared by every [`Factored`] value built from it.
pub struct FactoredContext {
    bases: Vec<ZBiPoly>,
    powers: RefCell<Vec<Vec<ZBiPoly>>>,
}

impl FactoredContext {
    /// Registers the denominators of `funcs`; equal denominators share a base.
    pub fn new(funcs: &[&RatFunc]) -> Self {
        let mut bases: Vec<ZBiPoly> = Vec::new();
        for f in funcs {
            let d = f.denom_zbi();
            if !d.is_one() && !bases.contains(d) {
                bases.push(d.clone());
            }
        }
        let powers = RefCell::new(
            bases
                .iter()
                .map(|b| vec![ZBiPoly::one(), b.clone()])
                .collect(),
        );
        FactoredContext { bases, powers }
    }

    fn power(&self, i: usize, k: u32) -> ZBiPoly {
        let mut powers = self.powers.borrow_mut();
        let row = &mut powers[i];
        while row.len() <= k as usize {
            let next = row.last().expect("row starts with 1") * &self.bases[i];
            row.push(next);
        }
        row[k as usize].clone()
    }

    fn zero_exps(&self) -> Vec<u32> {
        vec![0; self.bases.len()]
    }

    /// A polynomial, which needs no base.
    pub fn poly(&self, p: &BiPoly) -> Factored {
        Factored {
            num: p.zbi().clone(),
            scale: p.scalar_den().clone(),
            exps: self.zero_exps(),
        }
    }

    pub fn int(&self, c: i64) -> Factored {
        self.poly(&BiPoly::from_int(c))
    }

    /// Any function whose denominator is one of the bases.
    pub fn lift(&self, f: &RatFunc) -> Factored {
        let mut exps = self.zero_exps();
        let d = f.denom_zbi();
        if !d.is_one() {
            let i = self
                .bases
                .iter()
                .position(|b| b == d)
                .expect("denominator registered in the context");
            exps[i] = 1;
        }
        Factored {
            num: f.numer().zbi().clone(),
            scale: f.numer().scalar_den().clone(),
            exps,
        }
    }

    /// `d f / dt` for a function whose denominator is one of the bases.
    pub fn diff_t(&self, f: &RatFunc) -> Factored {
        let d = f.denom_zbi();
        let n = f.numer().zbi();
        if d.is_one() {
            return Factored {
                num: n.derivative_t(),
                scale: f.numer().scalar_den().clone(),
                exps: self.zero_exps(),
            };
        }
        let mut out = self.lift(f);
        let i = out
            .exps
            .iter()
            .position(|&e| e == 1)
            .expect("lifted function has a base");
        out.exps[i] = 2;
        out.num = &(&n.derivative_t() * d) - &(n * &d.derivative_t());
        out
    }

    fn raise(&self, x: &Factored, exps: &[u32], factor: &BigInt) -> ZBiPoly {
        let mut n = x.num.scale(factor);
        for (i, (&have, &want)) in x.exps.iter().zip(exps).enumerate() {
            if want > have {
                n = &n * &self.power(i, want - have);
            }
        }
        n
    }

    pub fn add(&self, x: &Factored, y: &Factored) -> Factored {
        if x.is_zero() {
            return y.clone();
        }
        if y.is_zero() {
            return x.clone();
        }
        let exps: Vec<u32> = x.exps.iter().zip(&y.exps).map(|(a, b)| *a.max(b)).collect();
        let scale = x.scale.lcm(&y.scale);
        let num = &self.raise(x, &exps, &(&scale / &x.scale))
            + &self.raise(y, &exps, &(&scale / &y.scale));
        Factored { num, scale, exps }
    }

    pub fn neg(&self, x: &Factored) -> Factored {
        Factored {
            num: -&x.num,
            ..x.clone()
        }
    }

    pub fn sub(&self, x: &Factored, y: &Factored) -> Factored {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &Factored, y: &Factored) -> Factored {
        if x.is_zero() || y.is_zero() {
            return Factored {
                num: ZBiPoly::zero(),
                scale: BigInt::one(),
                exps: self.zero_exps(),
            };
        }
        Factored {
            num: &x.num * &y.num,
            scale: &x.scale * &y.scale,
            exps: x.exps.iter().zip(&y.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// Sum of any number of terms.
    pub fn sum(&self, terms: &[Factored]) -> Factored {
        terms.iter().fold(self.int(0), |acc, x| self.add(&acc, x))
    }

    /// Product of any number of factors.
    pub fn product(&self, factors: &[&Factored]) -> Factored {
        factors.iter().fold(self.int(1), |acc, x| self.mul(&acc, x))
    }

    /// The reduced rational function. Whole bases are divided out first so
    /// the final gcd works on the smaller quotient.
    pub fn to_ratfunc(&self, x: &Factored) -> RatFunc {
        if x.is_zero() {
            return RatFunc::zero();
        }
        let mut num = x.num.clone();
        let mut exps = x.exps.clone();
        for (i, e) in exps.iter_mut().enumerate() {
            while *e > 0 {
                match num.div_exact(&self.bases[i]) {
                    Some(q) => {
                        num = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        let mut den = ZBiPoly::constant(x.scale.clone());
        for (i, &e) in exps.iter().enumerate() {
            if e > 0 {
                den = &den * &self.power(i, e);
            }
        }
        debug_assert!(!den.is_zero());
        RatFunc::new(BiPoly::from_zbi(num), BiPoly::from_zbi(den)).expect("bases are nonzero")
    }
}
