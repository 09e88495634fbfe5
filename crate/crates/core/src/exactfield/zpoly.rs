//! Dense univariate polynomials over the integers.
//!
//! These are the coefficients of [`ZBiPoly`](super::zbipoly::ZBiPoly) in the
//! distinguished variable `t`: every entry is a polynomial in the parameter
//! symbol `a`. Coefficients are stored in ascending degree with no trailing
//! zeros, so structural equality is polynomial equality.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::zbipoly::ZBiPoly;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * a^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ZPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Divides every coefficient by `c`; the caller guarantees exactness.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Self {
        if c.is_one() {
            return self.clone();
        }
        ZPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|x| {
                    debug_assert!((x % c).is_zero());
                    x / c
                })
                .collect(),
        }
    }

    /// Nonnegative gcd of all coefficients.
    pub fn content(&self) -> BigInt {
        integer_content(self.coeffs.iter())
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Exact division over the integers; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &ZPoly) -> Option<ZPoly> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() - 1 < dd {
            return None;
        }
        let lc = divisor.lc();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * dc;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(quot))
    }

    /// Pseudo-remainder: `lc(divisor)^(deg self - deg divisor + 1) * self mod divisor`.
    pub fn pseudo_rem(&self, divisor: &ZPoly) -> ZPoly {
        assert!(!divisor.is_zero());
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return self.clone();
        }
        let lc = divisor.lc();
        let steps = rem.len() - dd;
        for k in (0..steps).rev() {
            let top = rem[k + dd].clone();
            for c in rem.iter_mut() {
                *c *= &lc;
            }
            if !top.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &top * dc;
                }
            }
            rem.pop();
        }
        Self::new(rem)
    }

    /// Greatest common divisor, through images modulo word-size primes.
    /// The result is primitive with positive leading coefficient (the integer
    /// content gcd is multiplied back in), and `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() {
            return other.normalized_sign();
        }
        if other.is_zero() {
            return self.normalized_sign();
        }
        let c = self.content().gcd(&other.content());
        let (f, g) = (self.primitive(), other.primitive());
        if f.is_constant() || g.is_constant() {
            return ZPoly::constant(c);
        }
        // The modular kernel works in the second variable; a univariate
        // polynomial is a bivariate one whose coefficients are constants.
        let lift = |p: &ZPoly| {
            ZBiPoly::new(
                p.coeffs
                    .iter()
                    .map(|x| ZPoly::constant(x.clone()))
                    .collect(),
            )
        };
        let (h, _, _) = super::modgcd::gcd_primitive(&lift(&f), &lift(&g));
        ZPoly::new(h.coeffs().iter().map(|x| x.coeff(0)).collect()).scale(&c)
    }

    /// The same gcd by the primitive remainder sequence; kept as an oracle.
    #[cfg(test)]
    pub(crate) fn gcd_prs(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() {
            return other.normalized_sign();
        }
        if other.is_zero() {
            return self.normalized_sign();
        }
        let c = self.content().gcd(&other.content());
        let (mut f, mut g) = (self.primitive(), other.primitive());
        if f.coeffs.len() < g.coeffs.len() {
            std::mem::swap(&mut f, &mut g);
        }
        while !g.is_zero() {
            if g.is_constant() {
                return ZPoly::constant(c);
            }
            let r = f.pseudo_rem(&g).primitive();
            f = g;
            g = r;
        }
        f.scale(&c)
    }

    fn normalized_sign(&self) -> ZPoly {
        if self.lc().is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_mod(&self, x: u64, p: u64) -> u64 {
        let mut acc = 0u64;
        for c in self.coeffs.iter().rev() {
            acc = ((acc as u128 * x as u128 + mod_u64(c, p) as u128) % p as u128) as u64;
        }
        acc
    }
}

/// Nonnegative gcd of integers. Starting from the smallest value and reducing
/// the others modulo the running gcd keeps every gcd step small.
pub(crate) fn integer_content<'a>(values: impl Iterator<Item = &'a BigInt>) -> BigInt {
    let values: Vec<&BigInt> = values.filter(|c| !c.is_zero()).collect();
    let Some(smallest) = values.iter().min_by_key(|c| c.bits()) else {
        return BigInt::zero();
    };
    let mut g = smallest.abs();
    for c in &values {
        if g.is_one() {
            break;
        }
        let r = c.mod_floor(&g);
        g = g.gcd(&r);
    }
    g
}

pub(crate) fn mod_u64(c: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = c.mod_floor(&m);
    r.iter_u64_digits().next().unwrap_or(0)
}

impl Neg for &ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        ZPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for &ZPoly {
    type Output = ZPoly;
    fn add(self, rhs: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                (Some(x), Some(y)) => out.push(x + y),
                (Some(x), None) => out.push(x.clone()),
                (None, Some(y)) => out.push(y.clone()),
                (None, None) => unreachable!(),
            }
        }
        ZPoly::new(out)
    }
}

impl Sub for &ZPoly {
    type Output = ZPoly;
    fn sub(self, rhs: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                (Some(x), Some(y)) => out.push(x - y),
                (Some(x), None) => out.push(x.clone()),
                (None, Some(y)) => out.push(-y),
                (None, None) => unreachable!(),
            }
        }
        ZPoly::new(out)
    }
}

impl Mul for &ZPoly {
    type Output = ZPoly;
    fn mul(self, rhs: &ZPoly) -> ZPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZPoly::zero();
        }
        ZPoly::new(super::kronecker::mul(&self.coeffs, &rhs.coeffs))
    }
}
