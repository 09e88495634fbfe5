use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::bipoly::{forward_owned, BiPoly};
use super::zbipoly::ZBiPoly;
use super::FieldError;

/// Reduced rational function in `(a, t)`.
///
/// Canonical form: the denominator is an integer polynomial, primitive, with
/// positive leading coefficient in the t-major order, and shares no factor with
/// the numerator. Rational scalars live in the numerator. Equal functions are
/// structurally identical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: BiPoly,
    den: ZBiPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        Self::from_poly(BiPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(BiPoly::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(BiPoly::from_int(c))
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(BiPoly::constant(c))
    }

    pub fn t() -> Self {
        Self::from_poly(BiPoly::t())
    }

    pub fn a() -> Self {
        Self::from_poly(BiPoly::a())
    }

    pub fn from_poly(p: BiPoly) -> Self {
        RatFunc {
            num: p,
            den: ZBiPoly::one(),
        }
    }

    /// `num / den` in canonical form.
    pub fn new(num: BiPoly, den: BiPoly) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZeroFunction);
        }
        // (n/dn) / (d/dd) = (n * dd) / (d * dn)
        Ok(Self::reduce(
            num.zbi().clone(),
            den.scalar_den().clone(),
            den.zbi().clone(),
            num.scalar_den().clone(),
        ))
    }

    /// Reduced form of `(n * num_scale) / (d * den_scale)`.
    fn reduce(n: ZBiPoly, num_scale: BigInt, d: ZBiPoly, den_scale: BigInt) -> Self {
        if n.is_zero() {
            return Self::zero();
        }
        let (_, n, d) = n.gcd_cofactors(&d);
        Self::from_coprime(n.scale(&num_scale), d, den_scale)
    }

    /// Assembles `n / (d * den_scale)` where `gcd(n, d) = 1` in `Q[a, t]`.
    fn from_coprime(n: ZBiPoly, d: ZBiPoly, den_scale: BigInt) -> Self {
        let mut c = d.int_content();
        if d.leading_coeff().is_negative() {
            c = -c;
        }
        let d = d.div_scalar_exact(&c);
        RatFunc {
            num: BiPoly::from_ratio(n, den_scale * c),
            den: d,
        }
    }

    pub fn numer(&self) -> &BiPoly {
        &self.num
    }

    pub fn denom(&self) -> BiPoly {
        BiPoly::from_zbi(self.den.clone())
    }

    pub(crate) fn denom_zbi(&self) -> &ZBiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is a constant (the function is a polynomial).
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&BiPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    /// True when `t` does not occur (a rational function of `a` alone).
    pub fn is_t_free(&self) -> bool {
        self.num.is_t_free() && self.den.is_t_free()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_polynomial() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// Re-normalizes an existing value; the identity on canonical input.
    pub fn canonicalize(&self) -> Self {
        Self::new(self.num.clone(), self.denom()).expect("denominator is nonzero")
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZeroFunction);
        }
        Self::new(self.denom(), self.num.clone())
    }

    pub fn div(&self, rhs: &RatFunc) -> Result<Self, FieldError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = RatFunc::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Exact derivative in `t` by the quotient rule.
    pub fn diff_t(&self) -> Self {
        let n = self.num.zbi();
        let d = &self.den;
        let top = &(&n.derivative_t() * d) - &(n * &d.derivative_t());
        Self::reduce(top, BigInt::one(), d * d, self.num.scalar_den().clone())
    }

    /// Exact derivative in `a`.
    pub fn diff_a(&self) -> Self {
        let n = self.num.zbi();
        let d = &self.den;
        let top = &(&n.derivative_a() * d) - &(n * &d.derivative_a());
        Self::reduce(top, BigInt::one(), d * d, self.num.scalar_den().clone())
    }

    /// Exact value at `(a, t)`.
    pub fn eval(&self, a: &BigRational, t: &BigRational) -> Result<BigRational, FieldError> {
        let d = self.den.eval(a, t);
        if d.is_zero() {
            return Err(FieldError::PoleAtPoint);
        }
        Ok(self.num.eval(a, t) / d)
    }

    /// Double-precision value at `(a, t)`, evaluated in floating point.
    pub fn eval_f64(&self, a: f64, t: f64) -> f64 {
        fn ev(p: &BiPoly, a: f64, t: f64) -> f64 {
            p.terms()
                .iter()
                .map(|(i, j, c)| {
                    c.to_f64().unwrap_or(f64::NAN) * a.powi(*i as i32) * t.powi(*j as i32)
                })
                .sum()
        }
        ev(&self.num, a, t) / ev(&self.denom(), a, t)
    }

    /// Substitutes `t = 0`; `None` if `t` divides the denominator.
    pub fn at_t_zero(&self) -> Option<RatFunc> {
        if self.den.coeff_t(0).is_zero() {
            return None;
        }
        Some(
            Self::new(self.num.at_t_zero(), self.denom().at_t_zero())
                .expect("nonzero constant term"),
        )
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<BiPoly> for RatFunc {
    fn from(p: BiPoly) -> Self {
        Self::from_poly(p)
    }
}

impl From<i64> for RatFunc {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl From<BigRational> for RatFunc {
    fn from(c: BigRational) -> Self {
        Self::constant(c)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        // A/(a B) + C/(c D) with g = gcd(B, D): only g can share factors with the
        // combined numerator.
        let (sa, sc) = (self.num.scalar_den(), rhs.num.scalar_den());
        let (a_num, c_num) = (self.num.zbi(), rhs.num.zbi());
        let (g, b1, d1) = self.den.gcd_cofactors(&rhs.den);
        let m = &(&a_num.scale(sc) * &d1) + &(&c_num.scale(sa) * &b1);
        let scale = sa * sc;
        if m.is_zero() {
            return RatFunc::zero();
        }
        if g.is_one() {
            return RatFunc::from_coprime(m, &b1 * &d1, scale);
        }
        let (_, m, g) = m.gcd_cofactors(&g);
        RatFunc::from_coprime(m, &(&g * &b1) * &d1, scale)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        let cancel = |n: &ZBiPoly, d: &ZBiPoly| -> (ZBiPoly, ZBiPoly) {
            let (_, n, d) = n.gcd_cofactors(d);
            (n, d)
        };
        let (a, d) = cancel(self.num.zbi(), &rhs.den);
        let (c, b) = cancel(rhs.num.zbi(), &self.den);
        RatFunc::from_coprime(
            &a * &c,
            &b * &d,
            self.num.scalar_den() * rhs.num.scalar_den(),
        )
    }
}

forward_owned!(RatFunc, Add add, Sub sub, Mul mul);

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({}) / ({})", self.num, self.denom())
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn a() -> RatFunc {
        RatFunc::a()
    }

    fn t() -> RatFunc {
        RatFunc::t()
    }

    fn c(n: i64, d: i64) -> RatFunc {
        RatFunc::constant(q(n, d))
    }

    #[test]
    fn nested_subterm_sum() {
        // 1/4 + a/(2(t + 4a^2)) = (t + 4a^2 + 2a) / (4(t + 4a^2))
        let t4a2 = t() + c(4, 1) * a() * a();
        let x = c(1, 4) + a().div(&(c(2, 1) * &t4a2)).unwrap();
        let want = (&t4a2 + &(c(2, 1) * a())).div(&(c(4, 1) * &t4a2)).unwrap();
        assert_eq!(x, want);
        // canonical: denominator primitive, rational scalar in the numerator
        assert_eq!(
            x.denom(),
            BiPoly::t() + BiPoly::from_int(4) * BiPoly::a() * BiPoly::a()
        );
        assert_eq!(x.numer().coeff(0, 1), q(1, 4));
    }

    #[test]
    fn inverse_and_cancellation() {
        let x = (t() + c(1, 1)).div(&(t() + a())).unwrap();
        assert!((&x * &x.inv().unwrap()).is_one());
        let y = (t() * t() - c(1, 1)).div(&(t() - c(1, 1))).unwrap();
        assert_eq!(y, t() + c(1, 1));
    }

    #[test]
    fn division_by_zero_function() {
        assert_eq!(
            t().div(&RatFunc::zero()),
            Err(FieldError::DivisionByZeroFunction)
        );
        assert_eq!(
            RatFunc::zero().inv(),
            Err(FieldError::DivisionByZeroFunction)
        );
    }

    #[test]
    fn derivatives() {
        assert_eq!((t() * t()).diff_t(), c(2, 1) * t());
        assert_eq!(t().inv().unwrap().diff_t(), -(t() * t()).inv().unwrap());
        // d/dt a/(2(t + 4a^2)) = -a/(2(t + 4a^2)^2)
        let s = t() + c(4, 1) * a() * a();
        let x = a().div(&(c(2, 1) * &s)).unwrap();
        let want = -a().div(&(c(2, 1) * &s * &s)).unwrap();
        assert_eq!(x.diff_t(), want);
    }

    #[test]
    fn evaluation() {
        let inv_t = t().inv().unwrap();
        assert_eq!(inv_t.eval(&q(1, 1), &q(2, 1)), Ok(q(1, 2)));
        assert_eq!(inv_t.eval(&q(1, 1), &q(0, 1)), Err(FieldError::PoleAtPoint));
        let s = t() + c(4, 1) * a() * a();
        assert_eq!(s.eval(&q(1, 2), &q(1, 1)), Ok(q(2, 1)));
    }

    #[test]
    fn canonicalize_is_identity_on_canonical_values() {
        let x = (c(3, 2) * t() + a())
            .div(&(c(-6, 1) * t() * a() + c(2, 1)))
            .unwrap();
        assert_eq!(x.canonicalize(), x);
        assert!(x.denom().leading_coeff() > BigRational::zero());
    }
}
