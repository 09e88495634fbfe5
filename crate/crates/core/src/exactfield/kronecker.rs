//! Integer polynomial multiplication by Kronecker substitution: both factors
//! are packed into single big integers, multiplied once, and the product's
//! coefficients are read back as balanced digits.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};

/// Below this many coefficients in the shorter factor the schoolbook product wins.
const THRESHOLD: usize = 12;

fn max_bits(c: &[BigInt]) -> u64 {
    c.iter().map(|x| x.bits()).max().unwrap_or(0)
}

fn pack(c: &[BigInt], limbs: usize) -> BigInt {
    let mut pos = vec![0u32; c.len() * limbs];
    let mut neg = vec![0u32; c.len() * limbs];
    for (i, x) in c.iter().enumerate() {
        let dst = match x.sign() {
            Sign::NoSign => continue,
            Sign::Plus => &mut pos,
            Sign::Minus => &mut neg,
        };
        for (k, d) in x.magnitude().iter_u32_digits().enumerate() {
            dst[i * limbs + k] = d;
        }
    }
    BigInt::from_biguint(Sign::Plus, BigUint::new(pos))
        - BigInt::from_biguint(Sign::Plus, BigUint::new(neg))
}

fn schoolbook(f: &[BigInt], g: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); f.len() + g.len() - 1];
    for (i, x) in f.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in g.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Coefficients of `f * g` (ascending, both nonempty); may carry trailing zeros.
pub(crate) fn mul(f: &[BigInt], g: &[BigInt]) -> Vec<BigInt> {
    if f.len().min(g.len()) < THRESHOLD {
        return schoolbook(f, g);
    }
    let n = f.len() + g.len() - 1;
    let terms = f.len().min(g.len()) as u64;
    let bits = max_bits(f) + max_bits(g) + (64 - terms.leading_zeros() as u64) + 2;
    let limbs = bits.div_ceil(32) as usize;
    let prod = pack(f, limbs) * pack(g, limbs);
    let negative = prod.sign() == Sign::Minus;
    let digits = prod.magnitude().to_u32_digits();

    let slot_bits = 32 * limbs as u64;
    let base = BigInt::one() << slot_bits;
    let half = BigInt::one() << (slot_bits - 1);
    let mut carry = false;
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let lo = (k * limbs).min(digits.len());
        let hi = ((k + 1) * limbs).min(digits.len());
        let mut v = BigInt::from_biguint(Sign::Plus, BigUint::from_slice(&digits[lo..hi]));
        if carry {
            v += 1;
        }
        carry = v >= half;
        if carry {
            v -= &base;
        }
        out.push(if negative { -v } else { v });
    }
    debug_assert!(!carry);
    out
}
