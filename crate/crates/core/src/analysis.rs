//! Laurent expansions at `t = 0` and `t = infinity`, the leading data of a
//! solution, residue certificates at finite poles and the constant terms of
//! the Hamiltonian.

use num_bigint::BigInt;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exactfield::modgcd::{screen_residues, ResidueScreen};
use crate::exactfield::zbipoly::ZBiPoly;
use crate::exactfield::{
    squarefree_decompose_t, BiPoly, BigRational, ExpansionPoint, LaurentExpansion, RatFunc,
};
use crate::system::{hamiltonian, ParamVec, Solution};

pub const DEFAULT_TERMS: usize = 6;

/// Residue multiples tried when one squarefree factor mixes several of them.
const SPLIT_RANGE: i64 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("the zero function has no leading term")]
    ZeroFunction,
    #[error("{component}: pole of order {order} where at most {allowed} is allowed ({place})")]
    PoleOrderViolation {
        component: String,
        order: u32,
        allowed: u32,
        place: String,
    },
    #[error("{component}: difference {difference} between the constant terms at infinity and zero is not an integer")]
    IntegralityViolation {
        component: String,
        difference: String,
    },
    #[error("{component}: residues at the roots of {factor} are not integer multiples of the pole")]
    NonConformingResidue { component: String, factor: String },
}

/// Numerator and denominator coefficients in `t`, ascending, as functions of `a`.
fn t_coefficients(x: &RatFunc) -> (Vec<RatFunc>, Vec<RatFunc>) {
    let split = |p: &BiPoly| -> Vec<RatFunc> {
        let deg = p.degree_t().unwrap_or(0);
        (0..=deg).map(|k| RatFunc::from_poly(p.coeff_t(k))).collect()
    };
    (split(x.numer()), split(&x.denom()))
}

/// `n / d` as a power series given leading-first coefficient lists.
fn series_divide(n: &[RatFunc], d: &[RatFunc], terms: usize) -> Vec<RatFunc> {
    let d0 = d[0].clone();
    let mut out: Vec<RatFunc> = Vec::with_capacity(terms);
    for k in 0..terms {
        let mut c = n.get(k).cloned().unwrap_or_default();
        for j in 1..=k.min(d.len() - 1) {
            c = &c - &(&d[j] * &out[k - j]);
        }
        out.push(c.div(&d0).expect("leading coefficient is nonzero"));
    }
    out
}

/// Descending expansion at infinity, `terms` coefficients from the leading one.
pub fn laurent_infinity(x: &RatFunc, terms: usize) -> Result<LaurentExpansion, AnalysisError> {
    if x.is_zero() {
        return Err(AnalysisError::ZeroFunction);
    }
    let (mut n, mut d) = t_coefficients(x);
    let lead_order = n.len() as i64 - d.len() as i64;
    n.reverse();
    d.reverse();
    Ok(LaurentExpansion {
        point: ExpansionPoint::Infinity,
        lead_order,
        coeffs: series_divide(&n, &d, terms),
    })
}

/// Ascending expansion at zero, `terms` coefficients from the leading one.
pub fn laurent_zero(x: &RatFunc, terms: usize) -> Result<LaurentExpansion, AnalysisError> {
    if x.is_zero() {
        return Err(AnalysisError::ZeroFunction);
    }
    let (n, d) = t_coefficients(x);
    let vn = n.iter().position(|c| !c.is_zero()).expect("nonzero numerator");
    let vd = d.iter().position(|c| !c.is_zero()).expect("nonzero denominator");
    Ok(LaurentExpansion {
        point: ExpansionPoint::Zero,
        lead_order: vn as i64 - vd as i64,
        coeffs: series_divide(&n[vn..], &d[vd..], terms),
    })
}

/// Coefficient of `t^power` in the expansion at `point`; zero for the zero function.
pub fn coefficient_at(x: &RatFunc, point: ExpansionPoint, power: i64) -> RatFunc {
    if x.is_zero() {
        return RatFunc::zero();
    }
    let probe = match point {
        ExpansionPoint::Infinity => laurent_infinity(x, 1),
        ExpansionPoint::Zero => laurent_zero(x, 1),
    }
    .expect("nonzero");
    let needed = match point {
        ExpansionPoint::Infinity => probe.lead_order - power,
        ExpansionPoint::Zero => power - probe.lead_order,
    };
    if needed < 0 {
        return RatFunc::zero();
    }
    let full = match point {
        ExpansionPoint::Infinity => laurent_infinity(x, needed as usize + 1),
        ExpansionPoint::Zero => laurent_zero(x, needed as usize + 1),
    }
    .expect("nonzero");
    full.coeff_of_t(power).expect("expanded far enough")
}

/// Order of the pole at zero (zero when holomorphic there).
fn pole_order_at_zero(x: &RatFunc) -> u32 {
    if x.is_zero() {
        return 0;
    }
    let lead = laurent_zero(x, 1).expect("nonzero").lead_order;
    if lead < 0 {
        lead.unsigned_abs() as u32
    } else {
        0
    }
}

fn serialize_a_function<S: Serializer>(x: &RatFunc, s: S) -> Result<S::Ok, S::Error> {
    match x.as_polynomial().and_then(BiPoly::a_coeffs) {
        Some(c) => c
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .serialize(s),
        None => x.serialize(s),
    }
}

/// Leading coefficients of a solution at infinity and at zero.
///
/// `a_*`, `b_*`, `c_*`, `d_*` belong to `q1`, `p1`, `q2`, `p2`; the suffix
/// names the point and the power of `t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeadingData {
    #[serde(serialize_with = "serialize_a_function")]
    pub a_inf_0: RatFunc,
    #[serde(serialize_with = "serialize_a_function")]
    pub c_inf_0: RatFunc,
    #[serde(serialize_with = "serialize_a_function")]
    pub b_inf_m1: RatFunc,
    #[serde(serialize_with = "serialize_a_function")]
    pub d_inf_m1: RatFunc,
    #[serde(serialize_with = "serialize_a_function")]
    pub a_0_0: RatFunc,
    #[serde(serialize_with = "serialize_a_function")]
    pub c_0_0: RatFunc,
    #[serde(serialize_with = "serialize_a_function")]
    pub b_0_m1: RatFunc,
    #[serde(serialize_with = "serialize_a_function")]
    pub d_0_m1: RatFunc,
    /// Whether `p1`, `p2` have a simple pole at zero.
    pub pole_at_zero: (bool, bool),
}

fn integer_difference(component: &str, x: &RatFunc, y: &RatFunc) -> Result<(), AnalysisError> {
    let diff = x - y;
    match diff.as_constant() {
        Some(c) if c.is_integer() => Ok(()),
        _ => Err(AnalysisError::IntegralityViolation {
            component: component.into(),
            difference: diff.to_string(),
        }),
    }
}

/// Extracts the leading data of a solution, checking that `q1`, `q2` are
/// holomorphic at zero, that `p1`, `p2` have at most simple poles there and
/// that the constant terms of `q1`, `q2` at the two points differ by integers.
pub fn leading_data(sol: &Solution) -> Result<LeadingData, AnalysisError> {
    let names = ["q1", "p1", "q2", "p2"];
    for (name, x) in names.iter().zip(sol.components()) {
        let order = pole_order_at_zero(x);
        let allowed = if name.starts_with('q') { 0 } else { 1 };
        if order > allowed {
            return Err(AnalysisError::PoleOrderViolation {
                component: (*name).into(),
                order,
                allowed,
                place: "t = 0".into(),
            });
        }
    }
    let inf = |x: &RatFunc, k| coefficient_at(x, ExpansionPoint::Infinity, k);
    let zero = |x: &RatFunc, k| coefficient_at(x, ExpansionPoint::Zero, k);
    let data = LeadingData {
        a_inf_0: inf(&sol.q1, 0),
        c_inf_0: inf(&sol.q2, 0),
        b_inf_m1: inf(&sol.p1, -1),
        d_inf_m1: inf(&sol.p2, -1),
        a_0_0: zero(&sol.q1, 0),
        c_0_0: zero(&sol.q2, 0),
        b_0_m1: zero(&sol.p1, -1),
        d_0_m1: zero(&sol.p2, -1),
        pole_at_zero: (pole_order_at_zero(&sol.p1) == 1, pole_order_at_zero(&sol.p2) == 1),
    };
    integer_difference("q1", &data.a_inf_0, &data.a_0_0)?;
    integer_difference("q2", &data.c_inf_0, &data.c_0_0)?;
    Ok(data)
}

fn alphas(params: &ParamVec) -> [RatFunc; 4] {
    params.as_array().map(|x| x.to_ratfunc())
}

fn rat(n: i64, d: i64) -> RatFunc {
    RatFunc::constant(BigRational::new(n.into(), d.into()))
}

/// The values the leading data must take at infinity:
/// `(a_inf_0, c_inf_0, b_inf_m1, d_inf_m1)`.
pub fn infinity_law(params: &ParamVec) -> [RatFunc; 4] {
    let [a0, a1, _, a3] = alphas(params);
    let two = rat(2, 1);
    let x0 = &a3 - &(&two * &a0);
    let x1 = &a3 - &(&two * &a1);
    let y0 = -(&(&two * &a0) + &a3);
    let y1 = -(&(&two * &a1) + &a3);
    let quarter = rat(1, 4);
    let b = &(&x1 * &y1) * &quarter;
    let d = &(&x0 * &y0) * &quarter;
    [x0, x1, b, d]
}

/// How a solution behaves at zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ZeroCase {
    /// All components holomorphic; the index of the matching
    /// `(a_0_0, c_0_0)` pair.
    Holomorphic(u8),
    /// `p1` has a simple pole with the required profile.
    PoleP1,
    /// `p2` has a simple pole with the required profile.
    PoleP2,
}

/// The admissible holomorphic `(a_0_0, c_0_0)` pairs, in case order.
pub fn holomorphic_zero_pairs(params: &ParamVec) -> [(RatFunc, RatFunc); 4] {
    let [a0, a1, _, a3] = alphas(params);
    let zero = RatFunc::zero();
    let c2 = &(&a0 - &a1) + &a3;
    let a3_case = &(&a1 - &a0) + &a3;
    let c4 = &(&a3 - &a0) - &a1;
    [
        (zero.clone(), zero.clone()),
        (zero.clone(), c2),
        (a3_case, zero),
        (c4.clone(), c4),
    ]
}

/// Matches the data at zero against the holomorphic cases and the two
/// simple-pole profiles.
pub fn zero_case(sol: &Solution, data: &LeadingData) -> Option<ZeroCase> {
    let [a0, a1, _, _] = alphas(&sol.params);
    let sixteenth = rat(1, 16);
    let pole_coeff = |alpha: &RatFunc| {
        let four = rat(4, 1);
        let one = RatFunc::one();
        &(&(&(&four * alpha) - &one) * &(&(&four * alpha) + &one)) * &sixteenth
    };
    let half = rat(1, 2);
    match data.pole_at_zero {
        (false, false) => holomorphic_zero_pairs(&sol.params)
            .iter()
            .position(|(x, y)| *x == data.a_0_0 && *y == data.c_0_0)
            .map(|i| ZeroCase::Holomorphic(i as u8 + 1)),
        (true, false) => {
            let q2_0 = &half - &(&rat(2, 1) * &a1);
            let ok = data.b_0_m1 == pole_coeff(&a1)
                && data.a_0_0.is_zero()
                && data.c_0_0 == q2_0
                && coefficient_at(&sol.p2, ExpansionPoint::Zero, 0) == rat(1, 4);
            ok.then_some(ZeroCase::PoleP1)
        }
        (false, true) => {
            let q1_0 = &half - &(&rat(2, 1) * &a0);
            let ok = data.d_0_m1 == pole_coeff(&a0)
                && data.c_0_0.is_zero()
                && data.a_0_0 == q1_0
                && coefficient_at(&sol.p1, ExpansionPoint::Zero, 0) == rat(1, 4);
            ok.then_some(ZeroCase::PoleP2)
        }
        (true, true) => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ResidueComponent {
    #[serde(rename = "q1")]
    Q1,
    #[serde(rename = "q2")]
    Q2,
    #[serde(rename = "H")]
    H,
}

impl ResidueComponent {
    fn name(self) -> &'static str {
        match self {
            ResidueComponent::Q1 => "q1",
            ResidueComponent::Q2 => "q2",
            ResidueComponent::H => "H",
        }
    }
}

/// One factor of the denominator. At every root `c` of `factor` the
/// residue is `n c` (for `q1`, `q2`) or `n c / 4` (for `H`); `n` is `None`
/// when no integer works.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueEntry {
    pub factor: BiPoly,
    #[serde(rename = "order")]
    pub pole_order: u32,
    #[serde(rename = "n")]
    pub residue_multiple: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueReport {
    pub component: ResidueComponent,
    pub entries: Vec<ResidueEntry>,
}

impl ResidueReport {
    pub fn conforms(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.pole_order == 1 && e.residue_multiple.is_some())
    }

    fn certified(self) -> Result<Self, AnalysisError> {
        match self.entries.iter().find(|e| e.residue_multiple.is_none()) {
            Some(e) => Err(AnalysisError::NonConformingResidue {
                component: self.component.name().into(),
                factor: e.factor.to_string(),
            }),
            None => Ok(self),
        }
    }
}

/// Certificates for the finite nonzero poles of `x`. With `x = N / D`, a
/// simple pole along a squarefree factor `f` of `D = f g` has residue
/// `N / (f' g)` at each root, so the law `residue = n c / scale` is the
/// divisibility `f | scale N - n t f' g`.
pub fn residue_report(
    x: &RatFunc,
    component: ResidueComponent,
) -> Result<ResidueReport, AnalysisError> {
    let scale: i64 = if component == ResidueComponent::H { 4 } else { 1 };
    let mut report = ResidueReport {
        component,
        entries: Vec::new(),
    };
    if x.is_zero() {
        return Ok(report);
    }
    let den = x.denom_zbi();
    let finite = den.shift_down(den.t_valuation());
    if finite.is_t_free() {
        return Ok(report);
    }
    let num = x.numer().zbi().scale(&BigInt::from(scale));
    let num_scale = x.numer().scalar_den().clone();
    let decomposition =
        squarefree_decompose_t(&BiPoly::from_zbi(finite)).expect("denominator is nonzero");
    for (f, m) in &decomposition.factors {
        if *m > 1 {
            return Err(AnalysisError::PoleOrderViolation {
                component: component.name().into(),
                order: *m,
                allowed: 1,
                place: format!("roots of {f}"),
            });
        }
        let f = f.zbi();
        let g = den.div_exact(f).expect("factor divides the denominator");
        let w = (&(&ZBiPoly::monomial(num_scale.clone(), 0, 1) * &f.derivative_t()) * &g).clone();
        for (factor, n) in certify_factor(&num, &w, f) {
            report.entries.push(ResidueEntry {
                factor: BiPoly::from_zbi(factor),
                pole_order: 1,
                residue_multiple: n,
            });
        }
    }
    Ok(report)
}

/// Splits `f` into pieces on which `u = n w (mod piece)` holds exactly for
/// one integer `n`; a leftover piece gets `None`.
fn certify_factor(u: &ZBiPoly, w: &ZBiPoly, f: &ZBiPoly) -> Vec<(ZBiPoly, Option<i64>)> {
    let holds = |n: i64, piece: &ZBiPoly| {
        let diff = u - &w.scale(&BigInt::from(n));
        diff.is_zero() || diff.div_exact(piece).is_some()
    };
    let candidates = match screen_residues(u, w, f, SPLIT_RANGE) {
        ResidueScreen::Proportional(n) if holds(n, f) => return vec![(f.clone(), Some(n))],
        ResidueScreen::Proportional(n) => vec![n],
        ResidueScreen::Candidates(c) => c,
    };
    let mut rest = f.clone();
    let mut out = Vec::new();
    for n in candidates {
        if rest.is_t_free() {
            break;
        }
        let diff = u - &w.scale(&BigInt::from(n));
        let piece = if diff.is_zero() { rest.clone() } else { rest.gcd(&diff) };
        if piece.is_t_free() {
            continue;
        }
        rest = rest.div_exact(&piece).expect("gcd divides");
        out.push((piece, Some(n)));
    }
    if !rest.is_t_free() {
        out.push((rest.primitive_int(), None));
    }
    out
}

/// Residue certificates for `q1` and `q2`.
pub fn residue_certificate_q(
    sol: &Solution,
) -> Result<(ResidueReport, ResidueReport), AnalysisError> {
    let r1 = residue_report(&sol.q1, ResidueComponent::Q1)?.certified()?;
    let r2 = residue_report(&sol.q2, ResidueComponent::Q2)?.certified()?;
    Ok((r1, r2))
}

/// Residue certificate for the Hamiltonian along `sol`.
pub fn residue_certificate_h(sol: &Solution) -> Result<ResidueReport, AnalysisError> {
    residue_certificate_h_of(&hamiltonian(sol))
}

/// As [`residue_certificate_h`] for an already computed Hamiltonian.
pub fn residue_certificate_h_of(h: &RatFunc) -> Result<ResidueReport, AnalysisError> {
    residue_report(h, ResidueComponent::H)?.certified()
}

/// Constant terms of `H` at infinity and zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HConstants {
    #[serde(serialize_with = "serialize_a_function")]
    pub h_inf_0: RatFunc,
    #[serde(serialize_with = "serialize_a_function")]
    pub h_0_0: RatFunc,
    pub conforms: bool,
}

/// The value `h_inf_0` must take.
pub fn h_infinity_law(params: &ParamVec) -> RatFunc {
    let [a0, a1, _, a3] = alphas(params);
    let two = rat(2, 1);
    let s = &(&a0 + &a1) + &a3;
    let x0 = &a3 - &(&two * &a0);
    let x1 = &a3 - &(&two * &a1);
    &(&(&rat(3, 4) * &(&s * &s)) - &(&rat(1, 2) * &(&x0 * &x1))) - &(&rat(3, 1) * &(&(&a0 + &a1) * &a3))
}

/// The values `h_0_0` may take: the four holomorphic cases, then the
/// `p1`-pole and `p2`-pole cases.
pub fn h_zero_values(params: &ParamVec) -> [RatFunc; 6] {
    let [a0, a1, _, a3] = alphas(params);
    let s = &(&a0 + &a1) + &a3;
    let pole = |alpha: &RatFunc| &(&(&rat(-1, 4) * &(&s * &s)) + &(alpha * alpha)) + &rat(3, 16);
    [
        RatFunc::zero(),
        -(&a1 * &(&a0 + &a3)),
        -(&a0 * &(&a1 + &a3)),
        -(&a3 * &(&a0 + &a1)),
        pole(&a1),
        pole(&a0),
    ]
}

pub fn h_constants(sol: &Solution) -> HConstants {
    h_constants_of(sol, &hamiltonian(sol))
}

/// As [`h_constants`] for an already computed Hamiltonian.
pub fn h_constants_of(sol: &Solution, h: &RatFunc) -> HConstants {
    let h_inf_0 = coefficient_at(h, ExpansionPoint::Infinity, 0);
    let h_0_0 = coefficient_at(h, ExpansionPoint::Zero, 0);
    let conforms =
        h_inf_0 == h_infinity_law(&sol.params) && h_zero_values(&sol.params).contains(&h_0_0);
    HConstants {
        h_inf_0,
        h_0_0,
        conforms,
    }
}
