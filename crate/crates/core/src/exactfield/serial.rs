//! JSON forms: a polynomial is an array of `{"a": i, "t": j, "c": "p/q"}`
//! terms in canonical order, a rational function is `{"num": [...], "den": [...]}`.

use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{BiPoly, RatFunc};

pub fn rational_to_string(c: &BigRational) -> String {
    c.to_string()
}

/// Parses `p/q` or `p`; the denominator must be nonzero.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    if let Some((_, d)) = s.split_once('/') {
        if d.trim()
            .trim_start_matches(['+', '-'])
            .chars()
            .all(|c| c == '0')
        {
            return Err(format!("zero denominator in {s:?}"));
        }
    }
    BigRational::from_str(s).map_err(|e| format!("invalid rational {s:?}: {e}"))
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    a: usize,
    t: usize,
    c: String,
}

impl Serialize for BiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TermRepr> = self
            .terms()
            .into_iter()
            .map(|(a, t, c)| TermRepr {
                a,
                t,
                c: rational_to_string(&c),
            })
            .collect();
        terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BiPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let terms = Vec::<TermRepr>::deserialize(deserializer)?;
        let mut parsed = Vec::with_capacity(terms.len());
        for term in terms {
            let c = parse_rational(&term.c).map_err(D::Error::custom)?;
            if c.is_zero() {
                return Err(D::Error::custom("zero coefficient stored in polynomial"));
            }
            parsed.push((term.a, term.t, c));
        }
        Ok(BiPoly::from_terms(parsed))
    }
}

#[derive(Serialize, Deserialize)]
struct RatFuncRepr {
    num: BiPoly,
    den: BiPoly,
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RatFuncRepr {
            num: self.numer().clone(),
            den: self.denom(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = RatFuncRepr::deserialize(deserializer)?;
        RatFunc::new(repr.num, repr.den).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ratfunc_layout() {
        // a / (2(t + 4a^2))
        let t4a2 = BiPoly::t() + BiPoly::from_int(4) * BiPoly::a() * BiPoly::a();
        let x = RatFunc::new(BiPoly::a(), BiPoly::from_int(2) * t4a2).unwrap();
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(
            json,
            r#"{"num":[{"a":1,"t":0,"c":"1/2"}],"den":[{"a":0,"t":1,"c":"1"},{"a":2,"t":0,"c":"4"}]}"#
        );
        let back: RatFunc = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }

    #[test]
    fn rejects_zero_denominator() {
        let bad = r#"{"num":[{"a":0,"t":0,"c":"1"}],"den":[]}"#;
        assert!(serde_json::from_str::<RatFunc>(bad).is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    fn small_poly() -> impl Strategy<Value = BiPoly> {
        prop::collection::vec((0usize..3, 0usize..3, -5i64..6, 1i64..4), 0..5).prop_map(|ts| {
            BiPoly::from_terms(
                ts.into_iter()
                    .map(|(i, j, n, d)| (i, j, BigRational::new(n.into(), d.into()))),
            )
        })
    }

    proptest! {
        #[test]
        fn json_round_trip_is_bit_exact(n in small_poly(), d in small_poly()) {
            prop_assume!(!d.is_zero());
            let x = RatFunc::new(n, d).unwrap();
            let s = serde_json::to_string(&x).unwrap();
            let back: RatFunc = serde_json::from_str(&s).unwrap();
            prop_assert_eq!(&back, &x);
            prop_assert_eq!(serde_json::to_string(&back).unwrap(), s);
        }
    }
}
