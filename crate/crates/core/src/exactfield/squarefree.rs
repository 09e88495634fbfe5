use super::zbipoly::ZBiPoly;
use super::{BiPoly, FieldError};

/// `P = unit * prod(factor_i ^ multiplicity_i)` with pairwise coprime,
/// squarefree factors of positive `t`-degree. The unit is free of `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub unit: BiPoly,
    pub factors: Vec<(BiPoly, u32)>,
}

impl SquarefreeDecomposition {
    pub fn reconstruct(&self) -> BiPoly {
        self.factors
            .iter()
            .fold(self.unit.clone(), |acc, (f, m)| &acc * &f.pow(*m))
    }
}

/// Squarefree decomposition in `t` over the fraction field of `a` (Yun's
/// algorithm on the `t`-primitive part). Factors come out in increasing
/// multiplicity, each primitive over the integers with positive leading
/// coefficient.
pub fn squarefree_decompose_t(p: &BiPoly) -> Result<SquarefreeDecomposition, FieldError> {
    if p.is_zero() {
        return Err(FieldError::ZeroPolynomial);
    }
    let prim = p.zbi().primitive_t();
    let factors: Vec<(BiPoly, u32)> = yun(&prim)
        .into_iter()
        .map(|(f, m)| (BiPoly::from_zbi(f), m))
        .collect();
    let product = factors
        .iter()
        .fold(BiPoly::one(), |acc, (f, m)| &acc * &f.pow(*m));
    let unit = p.div_exact(&product).expect("factors divide the input");
    debug_assert!(unit.is_t_free());
    Ok(SquarefreeDecomposition { unit, factors })
}

/// Yun's algorithm; `f` must be primitive in `t`.
fn yun(f: &ZBiPoly) -> Vec<(ZBiPoly, u32)> {
    let mut out = Vec::new();
    if f.degree_t().unwrap_or(0) == 0 {
        return out;
    }
    let df = f.derivative_t();
    let (_, mut c, df_g) = f.gcd_cofactors(&df);
    let mut d = &df_g - &c.derivative_t();
    let mut k = 1u32;
    while c.degree_t().unwrap_or(0) > 0 {
        if d.is_zero() {
            out.push((c.primitive_int(), k));
            break;
        }
        let (a, c_a, d_a) = c.gcd_cofactors(&d);
        c = c_a;
        d = &d_a - &c.derivative_t();
        if a.degree_t().unwrap_or(0) > 0 {
            out.push((a.primitive_int(), k));
        }
        k += 1;
    }
    out
}
