use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exactfield::{parse_rational, rational_to_string, RatFunc};

/// `constant + coeff_a * a`, the form every parameter takes along the
/// Bäcklund orbit of the seed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AffineParam {
    pub constant: BigRational,
    pub coeff_a: BigRational,
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

impl AffineParam {
    pub fn new(constant: BigRational, coeff_a: BigRational) -> Self {
        AffineParam { constant, coeff_a }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(c, BigRational::zero())
    }

    /// `n/d + (m/e) a` from small integers.
    pub fn ratio(n: i64, d: i64, m: i64, e: i64) -> Self {
        Self::new(q(n, d), q(m, e))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coeff_a.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.coeff_a.is_zero()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(&self.constant * c, &self.coeff_a * c)
    }

    /// Value at `a = a_val`.
    pub fn eval(&self, a_val: &BigRational) -> BigRational {
        &self.constant + &self.coeff_a * a_val
    }

    /// Substitutes a numeric value for `a`, leaving a constant.
    pub fn instantiate(&self, a_val: &BigRational) -> Self {
        Self::constant(self.eval(a_val))
    }

    /// Integer membership with `a` treated as transcendental: the `a`-part
    /// must vanish and the constant must be an integer.
    pub fn is_integer_symbolic(&self) -> bool {
        self.coeff_a.is_zero() && self.constant.is_integer()
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        &RatFunc::constant(self.constant.clone())
            + &(&RatFunc::constant(self.coeff_a.clone()) * &RatFunc::a())
    }
}

impl Add for &AffineParam {
    type Output = AffineParam;
    fn add(self, rhs: &AffineParam) -> AffineParam {
        AffineParam::new(&self.constant + &rhs.constant, &self.coeff_a + &rhs.coeff_a)
    }
}

impl Sub for &AffineParam {
    type Output = AffineParam;
    fn sub(self, rhs: &AffineParam) -> AffineParam {
        AffineParam::new(&self.constant - &rhs.constant, &self.coeff_a - &rhs.coeff_a)
    }
}

impl Neg for &AffineParam {
    type Output = AffineParam;
    fn neg(self) -> AffineParam {
        AffineParam::new(-&self.constant, -&self.coeff_a)
    }
}

impl fmt::Display for AffineParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.coeff_a;
        let k = &self.constant;
        if c.is_zero() {
            return write!(f, "{k}");
        }
        let a_term = if c.is_one() {
            "a".to_string()
        } else if *c == -BigRational::one() {
            "-a".to_string()
        } else {
            format!("{c}*a")
        };
        if k.is_zero() {
            write!(f, "{a_term}")
        } else if k.is_negative() {
            write!(f, "{a_term} - {}", k.abs())
        } else {
            write!(f, "{a_term} + {k}")
        }
    }
}

impl fmt::Debug for AffineParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize, Deserialize)]
struct AffineRepr {
    #[serde(rename = "const")]
    constant: String,
    a: String,
}

impl Serialize for AffineParam {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        AffineRepr {
            constant: rational_to_string(&self.constant),
            a: rational_to_string(&self.coeff_a),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AffineParam {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = AffineRepr::deserialize(deserializer)?;
        Ok(AffineParam::new(
            parse_rational(&repr.constant).map_err(D::Error::custom)?,
            parse_rational(&repr.a).map_err(D::Error::custom)?,
        ))
    }
}

/// Parses an affine expression in `a` such as `1/4-a`, `a/2+1/2`, `-3/2*a`, `2`.
pub fn parse_affine(s: &str) -> Result<AffineParam, String> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err("empty parameter expression".into());
    }
    let mut out = AffineParam::zero();
    let mut start = 0;
    let bytes = compact.as_bytes();
    let mut pieces = Vec::new();
    for i in 1..=bytes.len() {
        if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'/') {
            pieces.push(&compact[start..i]);
            start = i;
        }
    }
    for piece in pieces {
        let (sign, body) = match piece.as_bytes()[0] {
            b'-' => (-BigRational::one(), &piece[1..]),
            b'+' => (BigRational::one(), &piece[1..]),
            _ => (BigRational::one(), piece),
        };
        if body.is_empty() {
            return Err(format!("dangling sign in {s:?}"));
        }
        if let Some(pos) = body.find('a') {
            let (before, after) = (&body[..pos], &body[pos + 1..]);
            let mut coeff = match before.trim_end_matches('*') {
                "" => BigRational::one(),
                c => parse_rational(c)?,
            };
            if !after.is_empty() {
                let d = after
                    .strip_prefix('/')
                    .ok_or_else(|| format!("unexpected text after 'a' in {s:?}"))?;
                coeff /= parse_rational(d)?;
            }
            out.coeff_a += sign * coeff;
        } else {
            out.constant += sign * parse_rational(body)?;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParamError {
    #[error("parameters violate alpha0 + alpha1 + 2 alpha2 + alpha3 = 1/2 (sum is {0})")]
    NotNormalized(AffineParam),
}

/// `(alpha0, alpha1, alpha2, alpha3)` with `alpha0 + alpha1 + 2 alpha2 + alpha3 = 1/2`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ParamVec {
    alpha0: AffineParam,
    alpha1: AffineParam,
    alpha2: AffineParam,
    alpha3: AffineParam,
}

impl ParamVec {
    pub fn new(
        alpha0: AffineParam,
        alpha1: AffineParam,
        alpha2: AffineParam,
        alpha3: AffineParam,
    ) -> Result<Self, ParamError> {
        let sum = &(&(&alpha0 + &alpha1) + &alpha2.scale(&q(2, 1))) + &alpha3;
        if sum != AffineParam::constant(q(1, 2)) {
            return Err(ParamError::NotNormalized(sum));
        }
        Ok(ParamVec {
            alpha0,
            alpha1,
            alpha2,
            alpha3,
        })
    }

    /// Builds the vector from `(alpha0, alpha1, alpha3)`, inferring
    /// `alpha2 = (1/2 - alpha0 - alpha1 - alpha3) / 2`.
    pub fn from_free(alpha0: AffineParam, alpha1: AffineParam, alpha3: AffineParam) -> Self {
        let rest = &(&(&AffineParam::constant(q(1, 2)) - &alpha0) - &alpha1) - &alpha3;
        let alpha2 = rest.scale(&q(1, 2));
        Self::new(alpha0, alpha1, alpha2, alpha3).expect("normalized by construction")
    }

    /// `(a/2, a/2, 1/4 - a, a)`, the parameters of the seed solution.
    pub fn standard() -> Self {
        Self::new(
            AffineParam::ratio(0, 1, 1, 2),
            AffineParam::ratio(0, 1, 1, 2),
            AffineParam::ratio(1, 4, -1, 1),
            AffineParam::ratio(0, 1, 1, 1),
        )
        .expect("standard parameters are normalized")
    }

    pub fn alpha0(&self) -> &AffineParam {
        &self.alpha0
    }
    pub fn alpha1(&self) -> &AffineParam {
        &self.alpha1
    }
    pub fn alpha2(&self) -> &AffineParam {
        &self.alpha2
    }
    pub fn alpha3(&self) -> &AffineParam {
        &self.alpha3
    }

    pub fn as_array(&self) -> [&AffineParam; 4] {
        [&self.alpha0, &self.alpha1, &self.alpha2, &self.alpha3]
    }

    /// True in the standard form `alpha0 = alpha1 = alpha3 / 2`.
    pub fn is_standard(&self) -> bool {
        let half = self.alpha3.scale(&q(1, 2));
        self.alpha0 == half && self.alpha1 == half
    }

    pub fn is_symbolic(&self) -> bool {
        self.as_array().iter().any(|p| !p.is_constant())
    }

    pub fn instantiate(&self, a_val: &BigRational) -> Self {
        ParamVec {
            alpha0: self.alpha0.instantiate(a_val),
            alpha1: self.alpha1.instantiate(a_val),
            alpha2: self.alpha2.instantiate(a_val),
            alpha3: self.alpha3.instantiate(a_val),
        }
    }

    /// Rebuilds from components already known to be normalized.
    pub(crate) fn from_parts_unchecked(parts: [AffineParam; 4]) -> Self {
        let [alpha0, alpha1, alpha2, alpha3] = parts;
        let v = ParamVec {
            alpha0,
            alpha1,
            alpha2,
            alpha3,
        };
        debug_assert!(Self::new(
            v.alpha0.clone(),
            v.alpha1.clone(),
            v.alpha2.clone(),
            v.alpha3.clone()
        )
        .is_ok());
        v
    }
}

impl fmt::Display for ParamVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {})",
            self.alpha0, self.alpha1, self.alpha2, self.alpha3
        )
    }
}

impl fmt::Debug for ParamVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamVec{self}")
    }
}

#[derive(Deserialize)]
struct ParamRepr {
    alpha0: AffineParam,
    alpha1: AffineParam,
    alpha2: AffineParam,
    alpha3: AffineParam,
}

impl<'de> Deserialize<'de> for ParamVec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let r = ParamRepr::deserialize(deserializer)?;
        ParamVec::new(r.alpha0, r.alpha1, r.alpha2, r.alpha3).map_err(D::Error::custom)
    }
}
