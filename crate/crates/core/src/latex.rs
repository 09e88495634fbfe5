//! LaTeX rendering of solutions as sums of partial fractions in `t`.
//!
//! Denominators are split into their squarefree parts; a quadratic part is
//! further split into linear factors when its discriminant is a square in
//! `Q[a]`. Higher-degree parts stay whole.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::backlund::OrbitEntry;
use crate::exactfield::{squarefree_decompose_t, BiPoly, QaPoly, RatFunc};
use crate::system::{AffineParam, ParamVec, Solution};

/// A rational coefficient times monomials, highest power of `t` first.
pub fn poly_latex(p: &BiPoly) -> String {
    let terms = p.terms();
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (i, j, c)) in terms.iter().enumerate() {
        if c.is_negative() {
            out.push_str(if k == 0 { "-" } else { " - " });
        } else if k > 0 {
            out.push_str(" + ");
        }
        let mag = c.abs();
        let monomial = format!("{}{}", power("a", *i), power("t", *j));
        if !mag.is_one() || monomial.is_empty() {
            out.push_str(&rational_latex(&mag));
        }
        out.push_str(&monomial);
    }
    out
}

fn power(var: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => var.into(),
        _ => format!("{var}^{{{k}}}"),
    }
}

fn rational_latex(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        let sign = if c.is_negative() { "-" } else { "" };
        format!("{sign}\\frac{{{}}}{{{}}}", c.numer().abs(), c.denom())
    }
}

fn affine_latex(x: &AffineParam) -> String {
    poly_latex(&BiPoly::from_terms([
        (1, 0, x.coeff_a.clone()),
        (0, 0, x.constant.clone()),
    ]))
}

pub fn params_latex(p: &ParamVec) -> String {
    let parts: Vec<String> = p.as_array().iter().map(|x| affine_latex(x)).collect();
    format!("A_5^{{(2)}}({})", parts.join(", "))
}

/// Integer square root of a rational, when it exists.
fn rational_sqrt(c: &BigRational) -> Option<BigRational> {
    if c.is_negative() {
        return None;
    }
    let (n, d) = (c.numer().sqrt(), c.denom().sqrt());
    (&n * &n == *c.numer() && &d * &d == *c.denom()).then(|| BigRational::new(n, d))
}

/// Square root in `Q[a]` of a `t`-free polynomial, when it exists.
fn a_sqrt(p: &BiPoly) -> Option<BiPoly> {
    let c = p.a_coeffs()?;
    if c.is_empty() {
        return Some(BiPoly::zero());
    }
    let n = c.len() - 1;
    if n % 2 == 1 {
        return None;
    }
    let m = n / 2;
    // root coefficients from the top down
    let mut r = vec![BigRational::zero(); m + 1];
    r[m] = rational_sqrt(&c[n])?;
    let two_lead = &r[m] * BigRational::from_integer(2.into());
    for k in (0..m).rev() {
        let mut s = c[m + k].clone();
        for i in (k + 1)..=m {
            let j = m + k - i;
            if j > k && j <= m {
                s -= &r[i] * &r[j];
            }
        }
        r[k] = s / &two_lead;
    }
    let root = BiPoly::from_terms(r.into_iter().enumerate().map(|(i, x)| (i, 0, x)));
    (&root * &root == *p).then_some(root)
}

fn primitive(p: &BiPoly) -> BiPoly {
    let z = p.zbi().primitive_t();
    let z = if z.leading_coeff().is_negative() {
        z.scale(&-BigInt::one())
    } else {
        z
    };
    BiPoly::from_zbi(z)
}

/// Splits a squarefree factor into linear factors when it is quadratic with
/// a square discriminant.
fn split_factor(f: &BiPoly) -> Vec<BiPoly> {
    if f.degree_t() != Some(2) {
        return vec![f.clone()];
    }
    let (c2, c1, c0) = (f.coeff_t(2), f.coeff_t(1), f.coeff_t(0));
    let four = BiPoly::from_int(4);
    let disc = &(&c1 * &c1) - &(&(&four * &c2) * &c0);
    let Some(s) = a_sqrt(&disc) else {
        return vec![f.clone()];
    };
    let lin = &(&BiPoly::from_int(2) * &c2) * &BiPoly::t();
    let l1 = primitive(&(&(&lin + &c1) - &s));
    let l2 = primitive(&(&(&lin + &c1) + &s));
    if (&l1 * &l2).div_exact(f).is_some_and(|q| q.is_t_free()) {
        let mut v = vec![l1, l2];
        v.sort_by_key(|x| (std::cmp::Reverse(x.degree_a()), x.to_string()));
        v
    } else {
        vec![f.clone()]
    }
}

/// One summand `coeff / factor^power`; `factor` is `None` for the polynomial part.
struct Piece {
    numer: QaPoly,
    factor: Option<(BiPoly, u32)>,
}

fn partial_fractions(x: &RatFunc) -> Vec<Piece> {
    let den = x.denom();
    let mut factors: Vec<(BiPoly, u32)> = Vec::new();
    let v = x.denom_zbi().t_valuation();
    if v > 0 {
        factors.push((BiPoly::t(), v as u32));
    }
    let rest = BiPoly::from_zbi(x.denom_zbi().shift_down(v));
    let decomposition = squarefree_decompose_t(&rest).expect("nonzero denominator");
    for (f, m) in &decomposition.factors {
        for g in split_factor(f) {
            factors.push((g, *m));
        }
    }
    let qa = |p: &BiPoly| QaPoly::from_bipoly(p);
    let product = factors
        .iter()
        .fold(qa(&BiPoly::one()), |acc, (f, m)| acc.mul(&qa(&f.pow(*m))));
    // num / den = (num / unit) / product
    let unit = RatFunc::from_poly(den.clone())
        .div(&product.to_ratfunc())
        .expect("nonzero");
    let numer = qa(x.numer()).scale(&unit.inv().expect("nonzero"));
    let (poly, rem) = numer.div_rem(&product);
    let mut out = vec![Piece {
        numer: poly,
        factor: None,
    }];
    for (f, m) in &factors {
        let g = qa(&f.pow(*m));
        let cof = product.div_rem(&g).0;
        let inv = cof.inverse_mod(&g).expect("coprime factors");
        let mut a = rem.mul(&inv).rem(&g);
        let fq = qa(f);
        for k in 0..*m {
            let (q, r) = a.div_rem(&fq);
            out.push(Piece {
                numer: r,
                factor: Some((f.clone(), m - k)),
            });
            a = q;
        }
    }
    out.retain(|p| !p.numer.is_zero());
    out
}

/// `numer / denom` with integer coefficients and no common integer content.
fn integer_fraction(x: &RatFunc) -> (BiPoly, BiPoly) {
    let (n, d) = (x.numer(), x.denom());
    let zn = n.zbi().scale(d.scalar_den());
    let zd = d.zbi().scale(n.scalar_den());
    let g = zn.int_content().gcd(&zd.int_content());
    let (zn, zd) = (zn.div_scalar_exact(&g), zd.div_scalar_exact(&g));
    (BiPoly::from_zbi(zn), BiPoly::from_zbi(zd))
}

fn wrap(s: String, needs: bool) -> String {
    if needs {
        format!("({s})")
    } else {
        s
    }
}

/// Renders one summand with its sign pulled out: `(negative, body)`.
fn piece_latex(piece: &Piece) -> (bool, String) {
    let coeff = piece.numer.to_ratfunc();
    let (mut n, d) = integer_fraction(&coeff);
    let negative = n.leading_coeff().is_negative();
    if negative {
        n = -n;
    }
    let mut den_parts = Vec::new();
    let d_single = d.terms().len() == 1;
    if !d.is_one() {
        den_parts.push(wrap(poly_latex(&d), !d_single && piece.factor.is_some()));
    }
    if let Some((f, k)) = &piece.factor {
        let multi = f.terms().len() > 1;
        let base = wrap(poly_latex(f), multi && (*k > 1 || !den_parts.is_empty()));
        den_parts.push(if *k > 1 { format!("{base}^{{{k}}}") } else { base });
    }
    let body = if den_parts.is_empty() {
        poly_latex(&n)
    } else {
        format!("\\frac{{{}}}{{{}}}", poly_latex(&n), den_parts.join(""))
    };
    (negative, body)
}

pub fn ratfunc_latex(x: &RatFunc) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, piece) in partial_fractions(x).iter().enumerate() {
        let (negative, body) = piece_latex(piece);
        match (k, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

pub fn solution_latex(sol: &Solution) -> String {
    let names = ["q_1", "p_1", "q_2", "p_2"];
    let mut out = format!("% {}\n\\begin{{align*}}\n", params_latex(&sol.params));
    let rows: Vec<String> = names
        .iter()
        .zip(sol.components())
        .map(|(n, x)| format!("{n} &= {}", ratfunc_latex(x)))
        .collect();
    out.push_str(&rows.join(",\\\\\n"));
    out.push_str("\n\\end{align*}\n");
    out
}

pub fn entry_latex(e: &OrbitEntry) -> String {
    let (k0, k1, k2) = e.shift_index;
    format!(
        "% shift ({k0}, {k1}, {k2}), word {}\n{}",
        e.word,
        solution_latex(&e.solution)
    )
}
