//! Integer polynomials in `(a, t)`, stored as dense polynomials in `t` whose
//! coefficients are [`ZPoly`]s in `a`.
//!
//! This is the working representation behind [`BiPoly`](super::BiPoly) and the
//! home of the gcd, exact division and pseudo-remainder kernels.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::zpoly::{integer_content, ZPoly};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ZBiPoly {
    coeffs: Vec<ZPoly>,
}

impl ZBiPoly {
    pub fn new(mut coeffs: Vec<ZPoly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ZBiPoly { coeffs }
    }

    pub fn zero() -> Self {
        ZBiPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_a_poly(ZPoly::one())
    }

    pub fn from_a_poly(c: ZPoly) -> Self {
        Self::new(vec![c])
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_a_poly(ZPoly::constant(c))
    }

    /// `c * a^i * t^j`
    pub fn monomial(c: BigInt, deg_a: usize, deg_t: usize) -> Self {
        let mut coeffs = vec![ZPoly::zero(); deg_t + 1];
        coeffs[deg_t] = ZPoly::monomial(c, deg_a);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[ZPoly] {
        &self.coeffs
    }

    pub fn coeff_t(&self, k: usize) -> ZPoly {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True when the polynomial does not involve `t`.
    pub fn is_t_free(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree_t(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn degree_a(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(|c| c.degree()).max()
    }

    /// Leading coefficient in `t`, a polynomial in `a`.
    pub fn lc_t(&self) -> ZPoly {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Leading coefficient in the canonical (t-major lexicographic) term order.
    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().map(|c| c.lc()).unwrap_or_default()
    }

    /// Multiplicity of `t` as a factor.
    pub fn t_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides by `t^k`; the caller guarantees `k <= t_valuation()`.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(k <= self.t_valuation());
        ZBiPoly {
            coeffs: self.coeffs[k.min(self.coeffs.len())..].to_vec(),
        }
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![ZPoly::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        ZBiPoly { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ZBiPoly {
            coeffs: self.coeffs.iter().map(|x| x.scale(c)).collect(),
        }
    }

    pub fn mul_a_poly(&self, c: &ZPoly) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ZBiPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn div_scalar_exact(&self, c: &BigInt) -> Self {
        if c.is_one() {
            return self.clone();
        }
        ZBiPoly {
            coeffs: self.coeffs.iter().map(|x| x.div_scalar_exact(c)).collect(),
        }
    }

    /// Divides every `t`-coefficient by `c`; `None` if any division is inexact.
    pub fn div_a_poly_exact(&self, c: &ZPoly) -> Option<Self> {
        if c.is_one() {
            return Some(self.clone());
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|x| x.div_exact(c))
            .collect::<Option<Vec<_>>>()?;
        Some(ZBiPoly { coeffs })
    }

    /// Nonnegative gcd of all integer coefficients.
    pub fn int_content(&self) -> BigInt {
        integer_content(self.coeffs.iter().flat_map(|c| c.coeffs()))
    }

    /// Primitive over the integers with positive canonical leading coefficient.
    pub fn primitive_int(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.int_content();
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    /// Content with respect to `t`: gcd in `Z[a]` of the `t`-coefficients,
    /// with positive leading coefficient.
    pub fn content_a(&self) -> ZPoly {
        let nonzero: Vec<&ZPoly> = self.coeffs.iter().filter(|c| !c.is_zero()).collect();
        let Some(&smallest) = nonzero.iter().min_by_key(|c| c.coeffs().len()) else {
            return ZPoly::zero();
        };
        let ic = self.int_content();
        if smallest.is_constant() || nonzero.len() == 1 {
            return smallest.primitive().scale(&ic);
        }
        // One gcd against a combination of all coefficients usually finds
        // the content; the divisibility check confirms it.
        let mut combo = ZPoly::zero();
        for (j, c) in nonzero.iter().enumerate() {
            combo = &combo + &c.scale(&BigInt::from(2 * j + 1));
        }
        let guess = smallest.gcd(&combo).primitive();
        let part = if guess.is_constant() || nonzero.iter().all(|c| c.div_exact(&guess).is_some()) {
            guess
        } else {
            nonzero
                .iter()
                .fold(ZPoly::zero(), |g, c| g.gcd(c))
                .primitive()
        };
        part.scale(&ic)
    }

    /// Primitive part with respect to `t` (content in `Z[a]` removed).
    pub fn primitive_t(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content_a();
        let out = self
            .div_a_poly_exact(&c)
            .expect("content divides every coefficient");
        if out.leading_coeff().is_negative() {
            -&out
        } else {
            out
        }
    }

    pub fn derivative_t(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&BigInt::from(k)))
                .collect(),
        )
    }

    pub fn derivative_a(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.derivative()).collect())
    }

    /// Exact division in `Z[a][t]`; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &ZBiPoly) -> Option<ZBiPoly> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if divisor.is_t_free() {
            return self.div_a_poly_exact(&divisor.coeffs[0]);
        }
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() - 1 < dd {
            return None;
        }
        let lc = divisor.lc_t();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![ZPoly::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            if rem[k + dd].is_zero() {
                continue;
            }
            let q = rem[k + dd].div_exact(&lc)?;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    rem[k + j] = &rem[k + j] - &(&q * dc);
                }
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(quot))
    }

    /// Pseudo-remainder in `t`: `lc_t(divisor)^(d+1) * self mod divisor`
    /// where `d = deg_t self - deg_t divisor`.
    pub fn pseudo_rem(&self, divisor: &ZBiPoly) -> ZBiPoly {
        assert!(!divisor.is_zero());
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return self.clone();
        }
        let lc = divisor.lc_t();
        let mut rem = self.coeffs.clone();
        let steps = rem.len() - dd;
        for k in (0..steps).rev() {
            let top = rem[k + dd].clone();
            for c in rem.iter_mut() {
                *c = &*c * &lc;
            }
            if !top.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    if !dc.is_zero() {
                        rem[k + j] = &rem[k + j] - &(&top * dc);
                    }
                }
            }
            rem.pop();
        }
        Self::new(rem)
    }

    /// Greatest common divisor in `Q[a, t]`, returned primitive over the
    /// integers with positive canonical leading coefficient. `gcd(P, 0)` is the
    /// normalized `P`; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &ZBiPoly) -> ZBiPoly {
        if self.is_zero() {
            return other.primitive_int();
        }
        if other.is_zero() {
            return self.primitive_int();
        }
        self.gcd_cofactors(other).0
    }

    /// `(g, self / g, other / g)` with `g = gcd(self, other)`; both inputs nonzero.
    pub fn gcd_cofactors(&self, other: &ZBiPoly) -> (ZBiPoly, ZBiPoly, ZBiPoly) {
        assert!(!self.is_zero() && !other.is_zero(), "gcd cofactors of zero");
        let (ca, cb) = (self.content_a(), other.content_a());
        let content = ca.gcd(&cb).primitive();
        let f = self.div_a_poly_exact(&ca).expect("content divides");
        let g = other.div_a_poly_exact(&cb).expect("content divides");
        let ka = ca.div_exact(&content).expect("content gcd divides");
        let kb = cb.div_exact(&content).expect("content gcd divides");
        if f.is_t_free() || g.is_t_free() {
            return (
                ZBiPoly::from_a_poly(content),
                f.mul_a_poly(&ka),
                g.mul_a_poly(&kb),
            );
        }
        let (h, fh, gh) = super::modgcd::gcd_primitive(&f, &g);
        let full = h.mul_a_poly(&content);
        let mut k = full.int_content();
        if full.leading_coeff().is_negative() {
            k = -k;
        }
        let ka = ka.scale(&k);
        let kb = kb.scale(&k);
        (
            full.div_scalar_exact(&k),
            fh.mul_a_poly(&ka),
            gh.mul_a_poly(&kb),
        )
    }

    /// The same gcd through the primitive PRS; slower, kept as an oracle.
    #[cfg(test)]
    pub(crate) fn gcd_prs(&self, other: &ZBiPoly) -> ZBiPoly {
        if self.is_zero() {
            return other.primitive_int();
        }
        if other.is_zero() {
            return self.primitive_int();
        }
        let (ca, cb) = (self.content_a(), other.content_a());
        let content = ZBiPoly::from_a_poly(ca.gcd(&cb).primitive());
        let f = self.div_a_poly_exact(&ca).expect("content divides");
        let g = other.div_a_poly_exact(&cb).expect("content divides");
        let (f, g) = if f.coeffs.len() < g.coeffs.len() {
            (g, f)
        } else {
            (f, g)
        };
        if g.is_t_free() {
            return content;
        }
        gcd_primitive_prs(f, g, &content)
    }

    /// Evaluates at rational `a` and `t`.
    pub fn eval(&self, a: &BigRational, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c.eval(a);
        }
        acc
    }

    /// Substitutes `a = a_val`, leaving a polynomial in `t` with rational coefficients
    /// (ascending).
    pub fn eval_a(&self, a_val: &BigRational) -> Vec<BigRational> {
        self.coeffs.iter().map(|c| c.eval(a_val)).collect()
    }

    /// Iterates `(deg_a, deg_t, coefficient)` over nonzero terms in descending
    /// canonical order (t-major, then `a`).
    pub fn terms_desc(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> + '_ {
        self.coeffs.iter().enumerate().rev().flat_map(|(j, c)| {
            c.coeffs()
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, x)| !x.is_zero())
                .map(move |(i, x)| (i, j, x))
        })
    }

    /// Total number of stored nonzero terms.
    pub fn term_count(&self) -> usize {
        self.coeffs
            .iter()
            .map(|c| c.coeffs().iter().filter(|x| !x.is_zero()).count())
            .sum()
    }
}

#[cfg(test)]
fn gcd_primitive_prs(mut f: ZBiPoly, mut g: ZBiPoly, content: &ZBiPoly) -> ZBiPoly {
    while !g.is_zero() {
        if g.is_t_free() {
            return content.clone();
        }
        let r = f.pseudo_rem(&g);
        let r = if r.is_zero() { r } else { r.primitive_t() };
        f = g;
        g = r;
    }
    (content * &f.primitive_t()).primitive_int()
}

impl Neg for &ZBiPoly {
    type Output = ZBiPoly;
    fn neg(self) -> ZBiPoly {
        ZBiPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for &ZBiPoly {
    type Output = ZBiPoly;
    fn add(self, rhs: &ZBiPoly) -> ZBiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = ZPoly::zero();
        ZBiPoly::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&zero) + rhs.coeffs.get(k).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub for &ZBiPoly {
    type Output = ZBiPoly;
    fn sub(self, rhs: &ZBiPoly) -> ZBiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = ZPoly::zero();
        ZBiPoly::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&zero) - rhs.coeffs.get(k).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Mul for &ZBiPoly {
    type Output = ZBiPoly;
    fn mul(self, rhs: &ZBiPoly) -> ZBiPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZBiPoly::zero();
        }
        if self.is_t_free() {
            return rhs.mul_a_poly(&self.coeffs[0]);
        }
        if rhs.is_t_free() {
            return self.mul_a_poly(&rhs.coeffs[0]);
        }
        // t^i a^j sits at i * stride + j, with room for the product's a-degree.
        let stride = self.degree_a().unwrap_or(0) + rhs.degree_a().unwrap_or(0) + 1;
        let flatten = |x: &ZBiPoly| {
            let mut v = vec![
                BigInt::zero();
                (x.coeffs.len() - 1) * stride
                    + x.coeffs.last().map_or(0, |c| c.coeffs().len())
            ];
            for (i, c) in x.coeffs.iter().enumerate() {
                for (j, z) in c.coeffs().iter().enumerate() {
                    v[i * stride + j] = z.clone();
                }
            }
            v
        };
        let flat = super::kronecker::mul(&flatten(self), &flatten(rhs));
        ZBiPoly::new(
            flat.chunks(stride)
                .map(|chunk| ZPoly::new(chunk.to_vec()))
                .collect(),
        )
    }
}
