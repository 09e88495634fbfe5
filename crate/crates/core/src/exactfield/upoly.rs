//! Polynomials in `t` over the rational function field `Q(a)`.
//!
//! Coefficients are `t`-free [`RatFunc`]s. This is the arithmetic used for
//! modular inverses, residues modulo squarefree factors and partial
//! fractions, where working over the fraction field keeps the Euclidean
//! algorithm exact without tracking pseudo-division multipliers.

use super::{BiPoly, FieldError, RatFunc};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QaPoly {
    coeffs: Vec<RatFunc>,
}

impl QaPoly {
    pub fn new(mut coeffs: Vec<RatFunc>) -> Self {
        debug_assert!(coeffs.iter().all(RatFunc::is_t_free));
        while coeffs.last().is_some_and(RatFunc::is_zero) {
            coeffs.pop();
        }
        QaPoly { coeffs }
    }

    pub fn zero() -> Self {
        QaPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: RatFunc) -> Self {
        Self::new(vec![c])
    }

    pub fn t() -> Self {
        Self::new(vec![RatFunc::zero(), RatFunc::one()])
    }

    pub fn from_bipoly(p: &BiPoly) -> Self {
        let n = p.degree_t().map_or(0, |d| d + 1);
        Self::new((0..n).map(|k| RatFunc::from_poly(p.coeff_t(k))).collect())
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> RatFunc {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> RatFunc {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn add(&self, rhs: &QaPoly) -> QaPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }

    pub fn sub(&self, rhs: &QaPoly) -> QaPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }

    pub fn mul(&self, rhs: &QaPoly) -> QaPoly {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![RatFunc::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] = &out[i + j] + &(x * y);
                }
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &RatFunc) -> QaPoly {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn derivative(&self) -> QaPoly {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &RatFunc::from_int(k as i64))
                .collect(),
        )
    }

    /// Euclidean division; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &QaPoly) -> (QaPoly, QaPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let inv_lc = divisor.lc().inv().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![RatFunc::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let q = top * &inv_lc;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    rem[k + j] = &rem[k + j] - &(&q * dc);
                }
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &QaPoly) -> QaPoly {
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> QaPoly {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.lc().inv().expect("nonzero"))
    }

    /// Monic gcd.
    pub fn gcd(&self, rhs: &QaPoly) -> QaPoly {
        let (mut f, mut g) = (self.monic(), rhs.monic());
        while !g.is_zero() {
            let r = f.rem(&g).monic();
            f = g;
            g = r;
        }
        f
    }

    /// Inverse of `self` modulo `modulus`, reduced below `deg modulus`.
    pub fn inverse_mod(&self, modulus: &QaPoly) -> Result<QaPoly, FieldError> {
        match modulus.degree() {
            None => return Err(FieldError::ZeroPolynomial),
            Some(0) => return Err(FieldError::ConstantModulus),
            _ => {}
        }
        // invariant: s_i * self == r_i (mod modulus)
        let (mut r0, mut r1) = (modulus.clone(), self.rem(modulus));
        let (mut s0, mut s1) = (QaPoly::zero(), QaPoly::constant(RatFunc::one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() != Some(0) {
            return Err(FieldError::NotCoprime);
        }
        let c = r0.lc().inv().expect("nonzero");
        Ok(s0.scale(&c).rem(modulus))
    }

    /// Evaluates at `t` and returns the result as a single rational function.
    pub fn to_ratfunc(&self) -> RatFunc {
        let t = RatFunc::t();
        let mut acc = RatFunc::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &t) + c;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn c(n: i64, d: i64) -> RatFunc {
        RatFunc::constant(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn inverse_of_t_modulo_linear() {
        // t == 2 (mod t - 2)
        let m = QaPoly::new(vec![c(-2, 1), c(1, 1)]);
        let inv = QaPoly::t().inverse_mod(&m).unwrap();
        assert_eq!(inv, QaPoly::constant(c(1, 2)));
    }

    #[test]
    fn inverse_with_parameter() {
        // modulus t^2 + a, element t + 1
        let m = QaPoly::new(vec![RatFunc::a(), c(0, 1), c(1, 1)]);
        let g = QaPoly::new(vec![c(1, 1), c(1, 1)]);
        let inv = g.inverse_mod(&m).unwrap();
        assert_eq!(g.mul(&inv).rem(&m), QaPoly::constant(RatFunc::one()));
    }

    #[test]
    fn non_coprime_detected() {
        let m = QaPoly::new(vec![c(1, 1), c(1, 1)]);
        assert_eq!(m.inverse_mod(&m), Err(FieldError::NotCoprime));
    }
}
