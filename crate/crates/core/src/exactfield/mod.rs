//! Exact arithmetic over `Q(a)(t)`: rational scalars, polynomials in the
//! parameter symbol `a` and the variable `t`, reduced rational functions,
//! gcd, squarefree decomposition and modular inverses.

mod bipoly;
mod factored;
mod kronecker;
pub(crate) mod modgcd;
mod ratfunc;
mod serial;
mod squarefree;
mod upoly;
pub(crate) mod zbipoly;
pub(crate) mod zpoly;

use thiserror::Error;

pub use bipoly::BiPoly;
pub use factored::{Factored, FactoredContext};
pub use num_rational::BigRational;
pub use ratfunc::RatFunc;
pub use serial::{parse_rational, rational_to_string};
pub use squarefree::{squarefree_decompose_t, SquarefreeDecomposition};
pub use upoly::QaPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("the zero polynomial has no decomposition")]
    ZeroPolynomial,
    #[error("division by the zero rational function")]
    DivisionByZeroFunction,
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("polynomials are not coprime")]
    NotCoprime,
    #[error("modulus has no positive degree in t")]
    ConstantModulus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Exact `P op Q` on polynomials. Division is not closed over polynomials,
/// so only add, sub and mul are accepted.
pub fn bipoly_arith(op: BinOp, p: &BiPoly, q: &BiPoly) -> BiPoly {
    match op {
        BinOp::Add => p + q,
        BinOp::Sub => p - q,
        BinOp::Mul => p * q,
        BinOp::Div => panic!("polynomial division is not a closed operation"),
    }
}

pub fn bipoly_gcd(p: &BiPoly, q: &BiPoly) -> BiPoly {
    p.gcd(q)
}

pub fn rf_arith(op: BinOp, x: &RatFunc, y: &RatFunc) -> Result<RatFunc, FieldError> {
    Ok(match op {
        BinOp::Add => x + y,
        BinOp::Sub => x - y,
        BinOp::Mul => x * y,
        BinOp::Div => x.div(y)?,
    })
}

pub fn rf_diff_t(x: &RatFunc) -> RatFunc {
    x.diff_t()
}

pub fn rf_eval(x: &RatFunc, a: &BigRational, t: &BigRational) -> Result<BigRational, FieldError> {
    x.eval(a, t)
}

/// Inverse of `g` modulo `f` as polynomials in `t` over the fraction field of
/// `a`: returns `R` with `g * R == 1 (mod f)` and `deg_t R < deg_t f`. The
/// result is a rational function whose denominator involves `a` only.
pub fn poly_modinv(g: &BiPoly, f: &BiPoly) -> Result<RatFunc, FieldError> {
    let inv = QaPoly::from_bipoly(g).inverse_mod(&QaPoly::from_bipoly(f))?;
    Ok(inv.to_ratfunc())
}

/// Expansion point for [`LaurentExpansion`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExpansionPoint {
    Zero,
    Infinity,
}

/// Truncated Laurent series in `t`. `coeffs[k]` multiplies
/// `t^(lead_order + k)` at zero and `t^(lead_order - k)` at infinity.
/// Coefficients are rational functions of `a` alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentExpansion {
    pub point: ExpansionPoint,
    /// Exponent of `t` carried by `coeffs[0]`.
    pub lead_order: i64,
    pub coeffs: Vec<RatFunc>,
}

impl LaurentExpansion {
    /// Exponent of `t` for `coeffs[k]`.
    pub fn t_power(&self, k: usize) -> i64 {
        match self.point {
            ExpansionPoint::Zero => self.lead_order + k as i64,
            ExpansionPoint::Infinity => self.lead_order - k as i64,
        }
    }

    /// Coefficient of `t^power`, zero when `power` lies before the leading term
    /// and `None` past the truncation.
    pub fn coeff_of_t(&self, power: i64) -> Option<RatFunc> {
        let k = match self.point {
            ExpansionPoint::Zero => power - self.lead_order,
            ExpansionPoint::Infinity => self.lead_order - power,
        };
        if k < 0 {
            return Some(RatFunc::zero());
        }
        self.coeffs.get(k as usize).cloned()
    }

    pub fn is_zero_function(&self) -> bool {
        self.coeffs.iter().all(RatFunc::is_zero)
    }
}
