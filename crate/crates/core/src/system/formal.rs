//! Polynomials in independent symbols `q1, p1, q2, p2, t` with coefficients
//! polynomial in `alpha0..alpha3`, used to check the Hamiltonian structure
//! identically rather than along a particular solution.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Names of the formal variables, in exponent-tuple order.
pub const FORMAL_VARS: [&str; 5] = ["q1", "p1", "q2", "p2", "t"];

/// Sparse polynomial in `alpha0..alpha3`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParamPoly {
    terms: BTreeMap<[u32; 4], BigRational>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Self::zero();
        p.insert([0; 4], c);
        p
    }

    pub fn alpha(i: usize) -> Self {
        let mut e = [0; 4];
        e[i] = 1;
        let mut p = Self::zero();
        p.insert(e, BigRational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<[u32; 4], BigRational> {
        &self.terms
    }

    fn insert(&mut self, e: [u32; 4], c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero();
        for (e, v) in &self.terms {
            out.insert(*e, v * c);
        }
        out
    }

    pub fn eval(&self, alpha: &[BigRational; 4]) -> BigRational {
        self.terms.iter().fold(BigRational::zero(), |acc, (e, c)| {
            let mut v = c.clone();
            for (x, k) in alpha.iter().zip(e) {
                for _ in 0..*k {
                    v *= x;
                }
            }
            acc + v
        })
    }
}

impl Add for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert(*e, c.clone());
        }
        out
    }
}

impl Mul for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]];
                out.insert(e, c1 * c2);
            }
        }
        out
    }
}

/// Sparse polynomial in `q1, p1, q2, p2, t` over [`ParamPoly`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalPoly {
    terms: BTreeMap<[u32; 5], ParamPoly>,
}

impl FormalPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_param(p: ParamPoly) -> Self {
        let mut out = Self::zero();
        out.insert([0; 5], p);
        out
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_param(ParamPoly::constant(c))
    }

    pub fn int(n: i64) -> Self {
        Self::constant(BigRational::from_integer(n.into()))
    }

    /// The formal variable `FORMAL_VARS[i]`.
    pub fn var(i: usize) -> Self {
        let mut e = [0; 5];
        e[i] = 1;
        let mut out = Self::zero();
        out.insert(e, ParamPoly::constant(BigRational::one()));
        out
    }

    pub fn alpha(i: usize) -> Self {
        Self::from_param(ParamPoly::alpha(i))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<[u32; 5], ParamPoly> {
        &self.terms
    }

    fn insert(&mut self, e: [u32; 5], c: ParamPoly) {
        if c.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&e) {
            Some(old) => &old + &c,
            None => c,
        };
        if !merged.is_zero() {
            self.terms.insert(e, merged);
        }
    }

    /// Partial derivative in `FORMAL_VARS[i]`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut ne = *e;
            ne[i] -= 1;
            out.insert(ne, c.scale(&BigRational::from_integer(e[i].into())));
        }
        out
    }

    pub fn eval(&self, vars: &[BigRational; 5], alpha: &[BigRational; 4]) -> BigRational {
        self.terms.iter().fold(BigRational::zero(), |acc, (e, c)| {
            let mut v = c.eval(alpha);
            for (x, k) in vars.iter().zip(e) {
                for _ in 0..*k {
                    v *= x;
                }
            }
            acc + v
        })
    }
}

impl Add for &FormalPoly {
    type Output = FormalPoly;
    fn add(self, rhs: &FormalPoly) -> FormalPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert(*e, c.clone());
        }
        out
    }
}

impl Neg for &FormalPoly {
    type Output = FormalPoly;
    fn neg(self) -> FormalPoly {
        let m = -BigRational::one();
        FormalPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c.scale(&m))).collect(),
        }
    }
}

impl Sub for &FormalPoly {
    type Output = FormalPoly;
    fn sub(self, rhs: &FormalPoly) -> FormalPoly {
        self + &(-rhs)
    }
}

impl Mul for &FormalPoly {
    type Output = FormalPoly;
    fn mul(self, rhs: &FormalPoly) -> FormalPoly {
        let mut out = FormalPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let mut e = *e1;
                for (x, y) in e.iter_mut().zip(e2) {
                    *x += y;
                }
                out.insert(e, c1 * c2);
            }
        }
        out
    }
}

fn product(factors: &[&FormalPoly]) -> FormalPoly {
    factors.iter().fold(FormalPoly::int(1), |acc, f| &acc * *f)
}

struct Symbols {
    q1: FormalPoly,
    p1: FormalPoly,
    q2: FormalPoly,
    p2: FormalPoly,
    t: FormalPoly,
    a0: FormalPoly,
    a1: FormalPoly,
    sum: FormalPoly,
}

fn symbols() -> Symbols {
    let a0 = FormalPoly::alpha(0);
    let a1 = FormalPoly::alpha(1);
    let sum = &(&a0 + &a1) + &FormalPoly::alpha(3);
    Symbols {
        q1: FormalPoly::var(0),
        p1: FormalPoly::var(1),
        q2: FormalPoly::var(2),
        p2: FormalPoly::var(3),
        t: FormalPoly::var(4),
        a0,
        a1,
        sum,
    }
}

/// The Hamiltonian as a formal polynomial.
pub fn hamiltonian_formal() -> FormalPoly {
    let Symbols {
        q1,
        p1,
        q2,
        p2,
        t,
        a0,
        a1,
        sum,
    } = symbols();
    let n = FormalPoly::int;
    let terms = [
        product(&[&q1, &q1, &p1, &p1]),
        -&product(&[&q1, &q1, &p1]),
        product(&[&sum, &q1, &p1]),
        -&product(&[&a0, &q1]),
        -&product(&[&t, &p1]),
        product(&[&q2, &q2, &p2, &p2]),
        -&product(&[&q2, &q2, &p2]),
        product(&[&sum, &q2, &p2]),
        -&product(&[&a1, &q2]),
        -&product(&[&t, &p2]),
        product(&[&n(4), &t, &p1, &p2]),
        product(&[&n(2), &q1, &p1, &q2, &p2]),
    ];
    terms.iter().fold(FormalPoly::zero(), |acc, x| &acc + x)
}

/// Right-hand sides `(F_q1, F_p1, F_q2, F_p2)` of `t x' = F` as formal polynomials.
pub fn rhs_formal() -> [FormalPoly; 4] {
    let Symbols {
        q1,
        p1,
        q2,
        p2,
        t,
        a0,
        a1,
        sum,
    } = symbols();
    let n = FormalPoly::int;
    let sum_of = |xs: Vec<FormalPoly>| xs.iter().fold(FormalPoly::zero(), |acc, x| &acc + x);
    [
        sum_of(vec![
            product(&[&n(2), &q1, &q1, &p1]),
            -&product(&[&q1, &q1]),
            product(&[&sum, &q1]),
            -&t,
            product(&[&n(4), &t, &p2]),
            product(&[&n(2), &q1, &q2, &p2]),
        ]),
        sum_of(vec![
            product(&[&n(-2), &q1, &p1, &p1]),
            product(&[&n(2), &q1, &p1]),
            -&product(&[&sum, &p1]),
            a0.clone(),
            product(&[&n(-2), &p1, &q2, &p2]),
        ]),
        sum_of(vec![
            product(&[&n(2), &q2, &q2, &p2]),
            -&product(&[&q2, &q2]),
            product(&[&sum, &q2]),
            -&t,
            product(&[&n(4), &t, &p1]),
            product(&[&n(2), &q1, &p1, &q2]),
        ]),
        sum_of(vec![
            product(&[&n(-2), &q2, &p2, &p2]),
            product(&[&n(2), &q2, &p2]),
            -&product(&[&sum, &p2]),
            a1.clone(),
            product(&[&n(-2), &q1, &p1, &p2]),
        ]),
    ]
}

/// Checks `F_q = dH/dp` and `F_p = -dH/dq` for both pairs, identically in
/// all symbols.
pub fn verify_hamiltonian_form_with(h: &FormalPoly) -> bool {
    let [f_q1, f_p1, f_q2, f_p2] = rhs_formal();
    let checks = [
        (&f_q1, h.derivative(1)),
        (&f_p1, -&h.derivative(0)),
        (&f_q2, h.derivative(3)),
        (&f_p2, -&h.derivative(2)),
    ];
    checks.iter().all(|(f, g)| (*f - g).is_zero())
}

pub fn verify_hamiltonian_form() -> bool {
    verify_hamiltonian_form_with(&hamiltonian_formal())
}
