//! Affine Weyl group action on parameters: generators, words, shift
//! operators, the six necessary conditions and reduction to standard form.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::system::{AffineParam, ParamVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    S0,
    S1,
    S2,
    S3,
    Pi,
}

impl Generator {
    pub const ALL: [Generator; 5] = [
        Generator::S0,
        Generator::S1,
        Generator::S2,
        Generator::S3,
        Generator::Pi,
    ];

    pub fn symbol(self) -> char {
        match self {
            Generator::S0 => '0',
            Generator::S1 => '1',
            Generator::S2 => '2',
            Generator::S3 => '3',
            Generator::Pi => 'p',
        }
    }

    pub fn from_symbol(c: char) -> Option<Generator> {
        Some(match c {
            '0' => Generator::S0,
            '1' => Generator::S1,
            '2' => Generator::S2,
            '3' => Generator::S3,
            'p' => Generator::Pi,
            _ => return None,
        })
    }
}

/// A product of generators. Written left to right, the rightmost letter
/// acts first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Generator>,
}

impl Word {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(letters: Vec<Generator>) -> Self {
        Word { letters }
    }

    pub fn letters(&self) -> &[Generator] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The inverse word; every generator is an involution.
    pub fn inverse(&self) -> Word {
        Word::new(self.letters.iter().rev().copied().collect())
    }

    /// `self * other`: `other` acts first.
    pub fn then_after(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word::new(letters)
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        Word::new(letters)
    }

    /// Letters in the order they act.
    pub fn action_order(&self) -> impl Iterator<Item = Generator> + '_ {
        self.letters.iter().rev().copied()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.letters {
            write!(f, "{}", g.symbol())?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid letter {0:?} in word; expected one of 0,1,2,3,p")]
pub struct WordParseError(pub char);

impl FromStr for Word {
    type Err = WordParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| Generator::from_symbol(c).ok_or(WordParseError(c)))
            .collect::<Result<Vec<_>, _>>()
            .map(Word::new)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn word(s: &str) -> Word {
    s.parse().expect("static word")
}

/// `T0 = pi s2 s3 s2 s1 s0`.
pub fn t0_word() -> Word {
    word("p23210")
}

/// `T1 = s0 T0 s0`.
pub fn t1_word() -> Word {
    word("0p232100")
}

/// `T2 = s2 T0 s2`.
pub fn t2_word() -> Word {
    word("2p232102")
}

/// The word for `T0^k0 T1^k1 T2^k2`.
pub fn shift_word(k0: i64, k1: i64, k2: i64) -> Word {
    t0_word()
        .pow(k0)
        .then_after(&t1_word().pow(k1))
        .then_after(&t2_word().pow(k2))
}

pub fn act_params(g: Generator, p: &ParamVec) -> ParamVec {
    let [a0, a1, a2, a3] = p.as_array();
    let parts = match g {
        Generator::S0 => [-a0, a1.clone(), a2 + a0, a3.clone()],
        Generator::S1 => [a0.clone(), -a1, a2 + a1, a3.clone()],
        Generator::S2 => [a0 + a2, a1 + a2, -a2, &(a3 + a2) + a2],
        Generator::S3 => [a0.clone(), a1.clone(), a2 + a3, -a3],
        Generator::Pi => [a1.clone(), a0.clone(), a2.clone(), a3.clone()],
    };
    ParamVec::from_parts_unchecked(parts)
}

pub fn act_params_word(w: &Word, p: &ParamVec) -> ParamVec {
    w.action_order()
        .fold(p.clone(), |acc, g| act_params(g, &acc))
}

/// The five quantities entering the necessary conditions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionQuantities {
    pub x0: AffineParam,
    pub y0: AffineParam,
    pub x1: AffineParam,
    pub y1: AffineParam,
    pub z: AffineParam,
}

pub fn condition_quantities(p: &ParamVec) -> ConditionQuantities {
    let two = BigRational::from_integer(2.into());
    let [a0, a1, _, a3] = p.as_array();
    let d0 = a0.scale(&two);
    let d1 = a1.scale(&two);
    ConditionQuantities {
        x0: a3 - &d0,
        y0: a3 + &d0,
        x1: a3 - &d1,
        y1: a3 + &d1,
        z: a3 - &AffineParam::constant(BigRational::new(1.into(), 2.into())),
    }
}

/// Numbered cases 1 to 6 of the existence criterion satisfied by `p`. With
/// `a_val` the parameter symbol is substituted first; without it `a` is
/// treated as transcendental.
pub fn necessary_condition_cases(p: &ParamVec, a_val: Option<&BigRational>) -> BTreeSet<u8> {
    let c = condition_quantities(p);
    let int = |x: &AffineParam| match a_val {
        Some(v) => x.eval(v).is_integer(),
        None => x.is_integer_symbolic(),
    };
    let (x0, y0, x1, y1, z) = (int(&c.x0), int(&c.y0), int(&c.x1), int(&c.y1), int(&c.z));
    let table = [
        (1, x0 && x1),
        (2, x0 && y1),
        (3, y0 && x1),
        (4, y0 && y1),
        (5, x0 && z),
        (6, x1 && z),
    ];
    table
        .iter()
        .filter(|(_, ok)| *ok)
        .map(|(k, _)| *k)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeylError {
    #[error("no reducing word found within {max_depth} letters")]
    NotReduced { max_depth: usize },
}

pub const DEFAULT_SEARCH_DEPTH: usize = 40;

/// Breadth-first search for a word `w` with `act_params_word(w, p)` in
/// standard form. One move is a single generator or one of the shift words
/// `T_i^{+-1}`; words longer than `max_depth` letters are discarded and each
/// parameter state is expanded once.
pub fn reduce_to_standard(p: &ParamVec, max_depth: usize) -> Result<(Word, ParamVec), WeylError> {
    if p.is_standard() {
        return Ok((Word::empty(), p.clone()));
    }
    let mut moves: Vec<Word> = Generator::ALL.iter().map(|g| Word::new(vec![*g])).collect();
    for t in [t0_word(), t1_word(), t2_word()] {
        moves.push(t.inverse());
        moves.push(t);
    }

    let mut seen: HashSet<ParamVec> = HashSet::from([p.clone()]);
    let mut frontier = vec![(p.clone(), Word::empty())];
    while !frontier.is_empty() {
        let mut next_frontier = Vec::new();
        for (state, w) in &frontier {
            for m in &moves {
                if w.len() + m.len() > max_depth {
                    continue;
                }
                let next = act_params_word(m, state);
                if !seen.insert(next.clone()) {
                    continue;
                }
                let nw = m.then_after(w);
                if next.is_standard() {
                    return Ok((nw, next));
                }
                next_frontier.push((next, nw));
            }
        }
        frontier = next_frontier;
    }
    Err(WeylError::NotReduced { max_depth })
}

/// True when `x - y` is an integer for every substitution of `a`.
pub fn differs_by_integer(x: &AffineParam, y: &AffineParam) -> bool {
    let d = x - y;
    d.coeff_a.is_zero() && d.constant.is_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn num(a0: (i64, i64), a1: (i64, i64), a3: (i64, i64)) -> ParamVec {
        ParamVec::from_free(
            AffineParam::constant(q(a0.0, a0.1)),
            AffineParam::constant(q(a1.0, a1.1)),
            AffineParam::constant(q(a3.0, a3.1)),
        )
    }

    fn sym(c: [(i64, i64, i64, i64); 4]) -> ParamVec {
        let [x0, x1, x2, x3] = c.map(|(n, d, m, e)| AffineParam::ratio(n, d, m, e));
        ParamVec::new(x0, x1, x2, x3).unwrap()
    }

    #[test]
    fn word_strings() {
        assert_eq!(shift_word(1, 0, 0).to_string(), "p23210");
        assert_eq!(shift_word(-1, 0, 0).to_string(), "01232p");
        assert!(shift_word(0, 0, 0).is_empty());
        assert_eq!("x1".parse::<Word>(), Err(WordParseError('x')));
    }

    #[test]
    fn s0_on_standard() {
        let s = act_params(Generator::S0, &ParamVec::standard());
        assert_eq!(
            s,
            sym([(0, 1, -1, 2), (0, 1, 1, 2), (1, 4, -1, 2), (0, 1, 1, 1)])
        );
        assert_eq!(
            act_params(Generator::Pi, &ParamVec::standard()),
            ParamVec::standard()
        );
    }

    #[test]
    fn shift_actions_on_standard() {
        let std = ParamVec::standard();
        assert_eq!(
            act_params_word(&t0_word(), &std),
            sym([(1, 2, 1, 2), (1, 2, 1, 2), (-1, 4, -1, 1), (0, 1, 1, 1)])
        );
        assert_eq!(
            act_params_word(&t1_word(), &std),
            sym([(-1, 2, 1, 2), (1, 2, 1, 2), (1, 4, -1, 1), (0, 1, 1, 1)])
        );
        assert_eq!(
            act_params_word(&t2_word(), &std),
            sym([(0, 1, 1, 2), (0, 1, 1, 2), (3, 4, -1, 1), (-1, 1, 1, 1)])
        );
    }

    #[test]
    fn condition_cases() {
        let std = ParamVec::standard();
        assert_eq!(necessary_condition_cases(&std, None), BTreeSet::from([1]));
        let v = num((1, 4), (1, 4), (1, 2));
        assert_eq!(v.alpha2(), &AffineParam::constant(q(-1, 4)));
        assert_eq!(necessary_condition_cases(&v, None), (1..=6).collect());
        assert!(necessary_condition_cases(&num((1, 5), (1, 7), (1, 3)), None).is_empty());
        assert_eq!(
            necessary_condition_cases(&std, Some(&q(1, 2))),
            (1..=6).collect()
        );
    }

    #[test]
    fn reduce_examples() {
        let std = ParamVec::standard();
        assert_eq!(
            reduce_to_standard(&std, 40),
            Ok((Word::empty(), std.clone()))
        );

        let t0 = act_params_word(&t0_word(), &std);
        let (w, r) = reduce_to_standard(&t0, 40).unwrap();
        assert_eq!(r, std);
        assert_eq!(act_params_word(&w, &t0), std);

        let v = num((3, 4), (3, 4), (1, 2));
        let (w, r) = reduce_to_standard(&v, 40).unwrap();
        assert!(r.is_standard());
        assert_eq!(act_params_word(&w, &v), r);
    }

    #[test]
    fn unreachable_vector_reports_not_reduced() {
        let v = num((1, 5), (1, 7), (1, 3));
        assert_eq!(
            reduce_to_standard(&v, 12),
            Err(WeylError::NotReduced { max_depth: 12 })
        );
    }
}
