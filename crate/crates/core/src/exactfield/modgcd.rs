//! Dense modular gcd in `Z[a][t]`: images at points `a = a0` modulo word-size
//! primes, interpolation in `a`, Chinese remaindering over primes and a final
//! trial division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::zbipoly::ZBiPoly;
use super::zpoly::{mod_u64, ZPoly};

#[inline]
fn mulm(x: u64, y: u64, p: u64) -> u64 {
    (x as u128 * y as u128 % p as u128) as u64
}

#[inline]
fn addm(x: u64, y: u64, p: u64) -> u64 {
    let s = x + y;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
fn subm(x: u64, y: u64, p: u64) -> u64 {
    if x >= y {
        x - y
    } else {
        x + p - y
    }
}

fn powm(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, b, p);
        }
        b = mulm(b, b, p);
        e >>= 1;
    }
    r
}

fn invm(x: u64, p: u64) -> u64 {
    powm(x, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &b in &BASES {
        let mut x = powm(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulm(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Primes below `2^62`, descending.
struct Primes {
    next: u64,
}

impl Primes {
    fn new() -> Self {
        Primes {
            next: (1u64 << 62) - 1,
        }
    }
}

impl Iterator for Primes {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        while !is_prime(self.next) {
            self.next -= 2;
        }
        let p = self.next;
        self.next -= 2;
        Some(p)
    }
}

/// `f` reduced modulo `p`: `[t-degree][a-degree]`.
fn reduce(f: &ZBiPoly, p: u64) -> Vec<Vec<u64>> {
    f.coeffs()
        .iter()
        .map(|c| c.coeffs().iter().map(|x| mod_u64(x, p)).collect())
        .collect()
}

fn eval_a(c: &[u64], x: u64, p: u64) -> u64 {
    c.iter()
        .rev()
        .fold(0, |acc, &v| addm(mulm(acc, x, p), v, p))
}

/// Evaluation points are pseudo-random so that a point where the image gcd
/// has excess degree is not reused for every prime.
fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Monic gcd in `F_p[t]`.
fn gcd_monic(mut f: Vec<u64>, mut g: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut f);
    trim(&mut g);
    while !g.is_empty() {
        let dg = g.len() - 1;
        let inv = invm(g[dg], p);
        while f.len() > dg {
            let top = f.len() - 1;
            let q = mulm(f[top], inv, p);
            if q != 0 {
                for (j, &gc) in g.iter().enumerate() {
                    let idx = top - dg + j;
                    f[idx] = subm(f[idx], mulm(q, gc, p), p);
                }
            }
            f.pop();
            trim(&mut f);
        }
        std::mem::swap(&mut f, &mut g);
    }
    if let Some(&lc) = f.last() {
        let inv = invm(lc, p);
        for c in f.iter_mut() {
            *c = mulm(*c, inv, p);
        }
    }
    f
}

/// Newton interpolation grown one point at a time, with one running
/// polynomial in `a` per `t`-coefficient.
struct Interpolant {
    p: u64,
    /// `prod (a - x_i)` over the points so far.
    basis: Vec<u64>,
    polys: Vec<Vec<u64>>,
}

impl Interpolant {
    fn new(width: usize, p: u64) -> Self {
        Interpolant {
            p,
            basis: vec![1],
            polys: vec![Vec::new(); width],
        }
    }

    /// Adds a point; returns false when every coefficient already took the
    /// prescribed value there.
    fn push(&mut self, x: u64, values: &[u64]) -> bool {
        let p = self.p;
        let b = eval_a(&self.basis, x, p);
        let b_inv = invm(b, p);
        let mut changed = false;
        for (poly, &v) in self.polys.iter_mut().zip(values) {
            let c = mulm(subm(v, eval_a(poly, x, p), p), b_inv, p);
            if c != 0 {
                changed = true;
                if poly.len() < self.basis.len() {
                    poly.resize(self.basis.len(), 0);
                }
                for (k, &bk) in self.basis.iter().enumerate() {
                    poly[k] = addm(poly[k], mulm(c, bk, p), p);
                }
            }
        }
        let mut next = vec![0u64; self.basis.len() + 1];
        for (k, &c) in self.basis.iter().enumerate() {
            next[k + 1] = addm(next[k + 1], c, p);
            next[k] = subm(next[k], mulm(c, x, p), p);
        }
        self.basis = next;
        changed
    }

    fn finish(self) -> Vec<Vec<u64>> {
        self.polys
            .into_iter()
            .map(|mut v| {
                trim(&mut v);
                v
            })
            .collect()
    }
}

#[cfg(test)]
fn interpolate(points: &[u64], values: &[u64], p: u64) -> Vec<u64> {
    let mut it = Interpolant::new(1, p);
    for (&x, &v) in points.iter().zip(values) {
        it.push(x, &[v]);
    }
    it.finish().remove(0)
}

enum ImageOutcome {
    /// The gcd has degree zero in `t`.
    Trivial,
    /// `gamma * gcd / lc` modulo `p`, as `[t-degree][a-degree]`.
    Image(Vec<Vec<u64>>),
    /// The prime was unsuitable.
    Unlucky,
}

/// Image of the scaled gcd modulo `p`, or `Trivial` when some good
/// evaluation already has a constant gcd.
fn image_mod_p(
    f: &ZBiPoly,
    g: &ZBiPoly,
    gamma: &ZPoly,
    deg_bound_a: usize,
    p: u64,
    deg_t_cap: &mut usize,
    early_stop: bool,
) -> ImageOutcome {
    let fp = reduce(f, p);
    let gp = reduce(g, p);
    let gam: Vec<u64> = gamma.coeffs().iter().map(|x| mod_u64(x, p)).collect();
    let lf = fp.last().expect("nonzero");
    let lg = gp.last().expect("nonzero");
    if lf.iter().all(|&x| x == 0) || lg.iter().all(|&x| x == 0) || gam.iter().all(|&x| x == 0) {
        return ImageOutcome::Unlucky;
    }
    let needed = deg_bound_a + 1;
    let mut points: Vec<u64> = Vec::with_capacity(needed);
    let mut interp: Option<Interpolant> = None;
    let mut counter = 0u64;
    let mut misses = 0usize;
    while points.len() < needed {
        counter += 1;
        let a0 = 1 + splitmix64(p ^ counter.wrapping_mul(0x9E37_79B9)) % (p - 1);
        if misses > 4 * needed + 64 {
            return ImageOutcome::Unlucky;
        }
        if points.contains(&a0) {
            continue;
        }
        if eval_a(lf, a0, p) == 0 || eval_a(lg, a0, p) == 0 {
            misses += 1;
            continue;
        }
        let gv = eval_a(&gam, a0, p);
        if gv == 0 {
            misses += 1;
            continue;
        }
        let fi: Vec<u64> = fp.iter().map(|c| eval_a(c, a0, p)).collect();
        let gi: Vec<u64> = gp.iter().map(|c| eval_a(c, a0, p)).collect();
        let h = gcd_monic(fi, gi, p);
        let d = h.len() - 1;
        if d == 0 {
            return ImageOutcome::Trivial;
        }
        if d > *deg_t_cap {
            misses += 1;
            continue;
        }
        if d < *deg_t_cap || interp.as_ref().is_some_and(|it| it.polys.len() != d + 1) {
            *deg_t_cap = d;
            points.clear();
            interp = None;
        }
        let scaled: Vec<u64> = h.into_iter().map(|c| mulm(c, gv, p)).collect();
        let it = interp.get_or_insert_with(|| Interpolant::new(d + 1, p));
        points.push(a0);
        // A point that adds nothing means the interpolant has settled; the
        // final trial division guards against an early stop.
        if !it.push(a0, &scaled) && early_stop {
            break;
        }
    }
    ImageOutcome::Image(interp.expect("at least one point").finish())
}

fn symmetric(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &(&r * 2) > m {
        r - m
    } else {
        r
    }
}

/// Combines the integer lift `acc` (modulo `m`) with an image modulo `p`.
fn crt(acc: &[Vec<BigInt>], m: &BigInt, img: &[Vec<u64>], p: u64) -> Vec<Vec<BigInt>> {
    let pb = BigInt::from(p);
    let m_inv = invm(mod_u64(m, p), p);
    let new_m = m * &pb;
    let rows = acc.len().max(img.len());
    (0..rows)
        .map(|k| {
            let a_row = acc.get(k).map(Vec::as_slice).unwrap_or(&[]);
            let i_row = img.get(k).map(Vec::as_slice).unwrap_or(&[]);
            let cols = a_row.len().max(i_row.len());
            (0..cols)
                .map(|j| {
                    let x = a_row.get(j).cloned().unwrap_or_default();
                    let r = i_row.get(j).copied().unwrap_or(0);
                    let diff = subm(r, mod_u64(&x, p), p);
                    let k = mulm(diff, m_inv, p);
                    symmetric(&(x + m * BigInt::from(k)), &new_m)
                })
                .collect()
        })
        .collect()
}

fn to_zbipoly(rows: &[Vec<BigInt>]) -> ZBiPoly {
    ZBiPoly::new(rows.iter().map(|r| ZPoly::new(r.clone())).collect())
}

/// Gcd of two polynomials primitive in `t` (over `Z[a]`), both of positive
/// `t`-degree, with the cofactors `f / gcd` and `g / gcd`. The gcd is
/// primitive with positive leading coefficient.
pub(crate) fn gcd_primitive(f: &ZBiPoly, g: &ZBiPoly) -> (ZBiPoly, ZBiPoly, ZBiPoly) {
    let gamma = f.lc_t().gcd(&g.lc_t());
    let da = |x: &ZBiPoly| x.degree_a().unwrap_or(0);
    let deg_bound_a = gamma.degree().unwrap_or(0) + da(f).min(da(g));
    let mut deg_t_cap = f.degree_t().unwrap_or(0).min(g.degree_t().unwrap_or(0));

    let mut lift: Vec<Vec<BigInt>> = Vec::new();
    let mut modulus = BigInt::one();
    let mut lift_deg: Option<usize> = None;
    let mut last_candidate: Option<ZBiPoly> = None;
    let mut early_stop = true;

    for p in Primes::new() {
        let img = match image_mod_p(f, g, &gamma, deg_bound_a, p, &mut deg_t_cap, early_stop) {
            ImageOutcome::Trivial => return (ZBiPoly::one(), f.clone(), g.clone()),
            ImageOutcome::Unlucky => continue,
            ImageOutcome::Image(img) => img,
        };
        let d = img.len() - 1;
        match lift_deg {
            Some(ld) if d > ld => continue,
            Some(ld) if d < ld => {
                lift.clear();
                modulus = BigInt::one();
                last_candidate = None;
            }
            _ => {}
        }
        lift_deg = Some(d);
        lift = crt(&lift, &modulus, &img, p);
        modulus *= BigInt::from(p);

        let candidate = to_zbipoly(&lift);
        if last_candidate.as_ref() == Some(&candidate) {
            let h = candidate.primitive_t();
            if let Some(fh) = f.div_exact(&h) {
                if let Some(gh) = g.div_exact(&h) {
                    return (h, fh, gh);
                }
            }
            early_stop = false;
            lift.clear();
            modulus = BigInt::one();
            lift_deg = None;
            last_candidate = None;
            continue;
        }
        last_candidate = Some(candidate);
    }
    unreachable!("the prime iterator is unbounded")
}

/// `u mod f` in `F_p[t]` for monic `f`.
fn rem_monic(mut u: Vec<u64>, f: &[u64], p: u64) -> Vec<u64> {
    trim(&mut u);
    let df = f.len() - 1;
    while u.len() > df {
        let top = u.len() - 1;
        let q = u[top];
        if q != 0 {
            for (j, &fc) in f.iter().enumerate() {
                let idx = top - df + j;
                u[idx] = subm(u[idx], mulm(q, fc, p), p);
            }
        }
        u.pop();
        trim(&mut u);
    }
    u
}

fn symmetric_i64(c: u64, p: u64) -> Option<i64> {
    let v = if c > p / 2 { -((p - c) as i128) } else { c as i128 };
    (v.unsigned_abs() < 1 << 40).then_some(v as i64)
}

/// What one specialization says about `u / w` modulo `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum ResidueScreen {
    /// `u = n w (mod f)` held at the sample point.
    Proportional(i64),
    /// Integers `n` in range for which `u - n w` shares a root with `f` at
    /// some sample point.
    Candidates(Vec<i64>),
}

/// Screens `u = n w (mod f)` at two random specializations of `a` modulo a
/// large prime. The answer is a hint only; callers certify it exactly.
pub(crate) fn screen_residues(u: &ZBiPoly, w: &ZBiPoly, f: &ZBiPoly, range: i64) -> ResidueScreen {
    let p = Primes::new().next().expect("unbounded");
    let (up, wp, fp) = (reduce(u, p), reduce(w, p), reduce(f, p));
    let lf = fp.last().expect("f has positive degree").clone();
    let mut candidates = std::collections::BTreeSet::new();
    let mut samples = 0;
    let mut counter = 0u64;
    while samples < 2 && counter < 64 {
        counter += 1;
        let a0 = 1 + splitmix64(counter.wrapping_mul(0x2545_F491_4F6C_DD1D)) % (p - 1);
        let lc = eval_a(&lf, a0, p);
        if lc == 0 {
            continue;
        }
        let lc_inv = invm(lc, p);
        let fi: Vec<u64> = fp.iter().map(|c| mulm(eval_a(c, a0, p), lc_inv, p)).collect();
        let ui = rem_monic(up.iter().map(|c| eval_a(c, a0, p)).collect(), &fi, p);
        let wi = rem_monic(wp.iter().map(|c| eval_a(c, a0, p)).collect(), &fi, p);
        if wi.is_empty() {
            continue;
        }
        samples += 1;
        if samples == 1 && ui.len() <= wi.len() {
            let c = mulm(*ui.get(wi.len() - 1).unwrap_or(&0), invm(*wi.last().expect("nonzero"), p), p);
            let proportional = (0..wi.len()).all(|k| ui.get(k).copied().unwrap_or(0) == mulm(c, wi[k], p));
            if proportional {
                if let Some(n) = symmetric_i64(c, p) {
                    return ResidueScreen::Proportional(n);
                }
            }
        }
        for n in -range..=range {
            let nm = if n < 0 { p - n.unsigned_abs() } else { n as u64 };
            let len = ui.len().max(wi.len());
            let diff: Vec<u64> = (0..len)
                .map(|k| subm(ui.get(k).copied().unwrap_or(0), mulm(nm, wi.get(k).copied().unwrap_or(0), p), p))
                .collect();
            if gcd_monic(fi.clone(), diff, p).len() > 1 {
                candidates.insert(n);
            }
        }
    }
    ResidueScreen::Candidates(candidates.into_iter().collect())
}
