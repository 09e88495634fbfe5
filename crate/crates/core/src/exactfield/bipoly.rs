use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::zbipoly::ZBiPoly;
use super::zpoly::ZPoly;

/// Polynomial in the parameter symbol `a` and the independent variable `t`
/// with rational coefficients.
///
/// Stored as an integer polynomial over a positive common denominator that is
/// coprime to the integer content, so two equal polynomials are structurally
/// identical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiPoly {
    num: ZBiPoly,
    den: BigInt,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly {
            num: ZBiPoly::zero(),
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_zbi(ZBiPoly::constant(BigInt::from(c)))
    }

    pub fn constant(c: BigRational) -> Self {
        let (n, d) = c.into_raw();
        Self::from_ratio(ZBiPoly::constant(n), d)
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::from_zbi(ZBiPoly::monomial(BigInt::one(), 0, 1))
    }

    /// The parameter symbol `a`.
    pub fn a() -> Self {
        Self::from_zbi(ZBiPoly::monomial(BigInt::one(), 1, 0))
    }

    /// `c * a^deg_a * t^deg_t`
    pub fn monomial(c: BigRational, deg_a: usize, deg_t: usize) -> Self {
        let (n, d) = c.into_raw();
        Self::from_ratio(ZBiPoly::monomial(n, deg_a, deg_t), d)
    }

    /// Builds a polynomial from `(deg_a, deg_t, coefficient)` terms; repeated
    /// exponents are summed.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, BigRational)>,
    {
        let terms: Vec<_> = terms.into_iter().collect();
        let mut den = BigInt::one();
        for (_, _, c) in &terms {
            den = den.lcm(c.denom());
        }
        let mut acc = ZBiPoly::zero();
        for (i, j, c) in terms {
            let scaled = c.numer() * (&den / c.denom());
            acc = &acc + &ZBiPoly::monomial(scaled, i, j);
        }
        Self::from_ratio(acc, den)
    }

    pub(crate) fn from_zbi(num: ZBiPoly) -> Self {
        BiPoly {
            num,
            den: BigInt::one(),
        }
    }

    /// `num / den` reduced; `den` must be nonzero.
    pub(crate) fn from_ratio(num: ZBiPoly, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.is_negative() {
            (-&num, -den)
        } else {
            (num, den)
        };
        let g = num.int_content().gcd(&den);
        if g.is_one() {
            BiPoly { num, den }
        } else {
            BiPoly {
                num: num.div_scalar_exact(&g),
                den: den / g,
            }
        }
    }

    pub(crate) fn zbi(&self) -> &ZBiPoly {
        &self.num
    }

    pub(crate) fn scalar_den(&self) -> &BigInt {
        &self.den
    }

    /// Nonzero terms `(deg_a, deg_t, coefficient)` in canonical order: descending
    /// in `t`, then descending in `a`.
    pub fn terms(&self) -> Vec<(usize, usize, BigRational)> {
        self.num
            .terms_desc()
            .map(|(i, j, c)| (i, j, BigRational::new(c.clone(), self.den.clone())))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_t_free(&self) -> bool {
        self.num.is_t_free()
    }

    /// True for a rational constant (no `a`, no `t`).
    pub fn is_constant(&self) -> bool {
        self.num.is_t_free() && self.num.coeff_t(0).is_constant()
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<BigRational> {
        if !self.is_constant() {
            return None;
        }
        Some(BigRational::new(
            self.num.coeff_t(0).coeff(0),
            self.den.clone(),
        ))
    }

    pub fn degree_t(&self) -> Option<usize> {
        self.num.degree_t()
    }

    pub fn degree_a(&self) -> Option<usize> {
        self.num.degree_a()
    }

    /// Coefficient of `t^k`, a polynomial in `a` (returned as a `t`-free BiPoly).
    pub fn coeff_t(&self, k: usize) -> BiPoly {
        Self::from_ratio(ZBiPoly::from_a_poly(self.num.coeff_t(k)), self.den.clone())
    }

    /// Coefficient of `a^i t^j`.
    pub fn coeff(&self, deg_a: usize, deg_t: usize) -> BigRational {
        BigRational::new(self.num.coeff_t(deg_t).coeff(deg_a), self.den.clone())
    }

    /// Leading coefficient in the canonical order.
    pub fn leading_coeff(&self) -> BigRational {
        BigRational::new(self.num.leading_coeff(), self.den.clone())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_ratio(self.num.scale(c.numer()), &self.den * c.denom())
    }

    /// Greatest common divisor, primitive over the integers with positive
    /// canonical leading coefficient; `gcd(P, 0)` is the normalized `P`.
    pub fn gcd(&self, other: &BiPoly) -> BiPoly {
        Self::from_zbi(self.num.gcd(&other.num))
    }

    /// Primitive integer associate with positive leading coefficient.
    pub fn normalized(&self) -> BiPoly {
        Self::from_zbi(self.num.primitive_int())
    }

    /// Exact quotient when `divisor` divides `self` in `Q[a, t]`.
    pub fn div_exact(&self, divisor: &BiPoly) -> Option<BiPoly> {
        if divisor.is_zero() {
            return None;
        }
        let c = divisor.num.int_content();
        let prim = divisor.num.div_scalar_exact(&c);
        let q = self.num.div_exact(&prim)?;
        Some(Self::from_ratio(q.scale(&divisor.den), &self.den * c))
    }

    pub fn derivative_t(&self) -> Self {
        Self::from_ratio(self.num.derivative_t(), self.den.clone())
    }

    pub fn derivative_a(&self) -> Self {
        Self::from_ratio(self.num.derivative_a(), self.den.clone())
    }

    pub fn eval(&self, a: &BigRational, t: &BigRational) -> BigRational {
        self.num.eval(a, t) / BigRational::from_integer(self.den.clone())
    }

    /// Substitutes `t = 0`.
    pub fn at_t_zero(&self) -> BiPoly {
        self.coeff_t(0)
    }

    pub fn pow(&self, k: u32) -> BiPoly {
        let mut acc = BiPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficients in `a` (ascending) of a `t`-free polynomial.
    pub fn a_coeffs(&self) -> Option<Vec<BigRational>> {
        if !self.is_t_free() {
            return None;
        }
        let c: ZPoly = self.num.coeff_t(0);
        Some(
            c.coeffs()
                .iter()
                .map(|x| BigRational::new(x.clone(), self.den.clone()))
                .collect(),
        )
    }
}

impl Default for BiPoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for BiPoly {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl From<BigRational> for BiPoly {
    fn from(c: BigRational) -> Self {
        Self::constant(c)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        if self.den == rhs.den {
            return BiPoly::from_ratio(&self.num + &rhs.num, self.den.clone());
        }
        let l = self.den.lcm(&rhs.den);
        let x = self.num.scale(&(&l / &self.den));
        let y = rhs.num.scale(&(&l / &rhs.den));
        BiPoly::from_ratio(&x + &y, l)
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self + &(-rhs)
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        BiPoly::from_ratio(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty { (&self).$m(&rhs) }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &$ty) -> $ty { (&self).$m(rhs) }
        }
        impl $tr<$ty> for &$ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty { self.$m(&rhs) }
        }
    )*};
}
pub(crate) use forward_owned;

forward_owned!(BiPoly, Add add, Sub sub, Mul mul);

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

/// Formats a rational coefficient times a monomial in plain text, e.g. `-3/4*a^2*t`.
pub(crate) fn write_poly(
    f: &mut fmt::Formatter<'_>,
    terms: &[(usize, usize, BigRational)],
    a_name: &str,
) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (k, (i, j, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if k == 0 {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        let mut factors = Vec::new();
        if !mag.is_one() || (*i == 0 && *j == 0) {
            factors.push(mag.to_string());
        }
        match i {
            0 => {}
            1 => factors.push(a_name.to_string()),
            _ => factors.push(format!("{a_name}^{i}")),
        }
        match j {
            0 => {}
            1 => factors.push("t".to_string()),
            _ => factors.push(format!("t^{j}")),
        }
        write!(f, "{}", factors.join("*"))?;
    }
    Ok(())
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.terms(), "a")
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn additive_inverse_is_empty() {
        let t = BiPoly::t();
        let z = &t + &(-&t);
        assert!(z.is_zero());
        assert!(z.terms().is_empty());
    }

    #[test]
    fn difference_of_squares() {
        let t = BiPoly::t();
        let one = BiPoly::one();
        let got = (&t + &one) * (&t - &one);
        assert_eq!(got, &t * &t - one);
    }

    #[test]
    fn nested_denominator_product() {
        // (t + 4a^2)(t + 1), expanded by hand: t^2 + (4a^2 + 1) t + 4a^2
        let a = BiPoly::a();
        let t = BiPoly::t();
        let four_a2 = BiPoly::from_int(4) * &a * &a;
        let got = (&t + &four_a2) * (&t + &BiPoly::one());
        let want = BiPoly::from_terms([
            (0, 2, q(1, 1)),
            (2, 1, q(4, 1)),
            (0, 1, q(1, 1)),
            (2, 0, q(4, 1)),
        ]);
        assert_eq!(got, want);
    }

    #[test]
    fn terms_are_in_canonical_order() {
        let p = BiPoly::from_terms([(2, 0, q(4, 1)), (0, 1, q(1, 1)), (1, 1, q(-1, 3))]);
        let order: Vec<_> = p.terms().into_iter().map(|(i, j, _)| (i, j)).collect();
        assert_eq!(order, vec![(1, 1), (0, 1), (2, 0)]);
        assert_eq!(p.to_string(), "-1/3*a*t + t + 4*a^2");
    }

    #[test]
    fn gcd_normalizes_content() {
        // gcd(2t + 2, 4) has primitive part 1
        let f = BiPoly::from_terms([(0, 1, q(2, 1)), (0, 0, q(2, 1))]);
        assert_eq!(f.gcd(&BiPoly::from_int(4)), BiPoly::one());
        // gcd(P, 0) is P normalized
        let p = BiPoly::from_terms([(0, 1, q(-1, 2)), (1, 0, q(3, 2))]);
        let want = BiPoly::from_terms([(0, 1, q(1, 1)), (1, 0, q(-3, 1))]);
        assert_eq!(p.gcd(&BiPoly::zero()), want);
    }

    #[test]
    fn gcd_recovers_oracle_factor() {
        let a = BiPoly::a();
        let t = BiPoly::t();
        let one = BiPoly::one();
        let f = (&t - &one) * (&t + &a);
        let g = (&t - &one) * (&t + &BiPoly::from_int(2));
        assert_eq!(f.gcd(&g), &t - &one);
    }
}
