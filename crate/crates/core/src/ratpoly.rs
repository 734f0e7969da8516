//! Commutative polynomial arithmetic over ℚ, together with the two
//! root-finding routines the domain reports are built on: enumeration of
//! rational roots and enumeration of monic quadratic factors `x² − t·x + n`
//! with rational `t`, `n`. Coefficient vectors are low-degree first and
//! trimmed, so the empty vector is zero.

use std::collections::BTreeSet;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::intops::{divisors, factor_bigint};

pub(crate) type QPoly = Vec<BigRational>;

fn one() -> BigRational {
    BigRational::one()
}

pub(crate) fn trim(mut v: QPoly) -> QPoly {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

pub(crate) fn deg(v: &[BigRational]) -> Option<usize> {
    if v.is_empty() {
        None
    } else {
        Some(v.len() - 1)
    }
}

pub(crate) fn add(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, slot) in out.iter_mut().enumerate() {
        if let Some(x) = a.get(i) {
            *slot += x;
        }
        if let Some(y) = b.get(i) {
            *slot += y;
        }
    }
    trim(out)
}

pub(crate) fn sub(a: &[BigRational], b: &[BigRational]) -> QPoly {
    add(a, &neg(b))
}

pub(crate) fn neg(a: &[BigRational]) -> QPoly {
    a.iter().map(|x| -x).collect()
}

pub(crate) fn mul(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub(crate) fn scale(a: &[BigRational], c: &BigRational) -> QPoly {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x * c).collect()
}

/// Multiply by `x^k`.
pub(crate) fn shift(a: &[BigRational], k: usize) -> QPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); k];
    out.extend_from_slice(a);
    out
}

pub(crate) fn divrem(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let db = b.len() - 1;
    let lead_inv = b.last().unwrap().recip();
    let mut rem: QPoly = a.to_vec();
    let mut quo = vec![BigRational::zero(); a.len().saturating_sub(db)];
    while rem.len() > db {
        let dr = rem.len() - 1;
        let c = rem.last().unwrap() * &lead_inv;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                let t = &c * bj;
                rem[dr - db + j] -= t;
            }
            quo[dr - db] = c;
        }
        rem.pop();
        while rem.last().is_some_and(Zero::is_zero) {
            rem.pop();
        }
    }
    (trim(quo), trim(rem))
}

/// Division known to be exact; panics (debug) on a nonzero remainder.
fn exact_div(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let (q, r) = divrem(a, b);
    debug_assert!(
        r.is_empty(),
        "inexact division in fraction-free elimination"
    );
    q
}

pub(crate) fn monic(a: &[BigRational]) -> QPoly {
    match a.last() {
        None => Vec::new(),
        Some(lead) => scale(a, &lead.recip()),
    }
}

pub(crate) fn gcd(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    while !r1.is_empty() {
        let (_, r) = divrem(&r0, &r1);
        r0 = std::mem::replace(&mut r1, r);
    }
    monic(&r0)
}

pub(crate) fn eval(p: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Clear denominators and integer content, keeping the same roots.
fn primitive_integer(q: &[BigRational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for c in q {
        l = l.lcm(c.denom());
    }
    let l = BigRational::from(l);
    let ints: Vec<BigInt> = q.iter().map(|c| (c * &l).to_integer()).collect();
    let mut g = BigInt::zero();
    for v in &ints {
        g = g.gcd(v);
    }
    ints.iter().map(|v| v / &g).collect()
}

/// All distinct rational roots of a nonzero polynomial, sorted ascending.
/// `None` when the coefficient factorizations needed by the rational root
/// sieve are out of reach.
pub(crate) fn rational_roots(p: &[BigRational]) -> Option<Vec<BigRational>> {
    let p = trim(p.to_vec());
    assert!(!p.is_empty(), "rational roots of the zero polynomial");
    let mut roots = Vec::new();
    let k = p.iter().take_while(|c| c.is_zero()).count();
    if k > 0 {
        roots.push(BigRational::zero());
    }
    let q = &p[k..];
    if q.len() > 1 {
        let ints = primitive_integer(q);
        let a0 = ints.first().unwrap().abs();
        let an = ints.last().unwrap().abs();
        let num_divs = divisors(&factor_bigint(&a0)?, 4096)?;
        let den_divs = divisors(&factor_bigint(&an)?, 4096)?;
        let pairs = num_divs.len().saturating_mul(den_divs.len());
        if pairs > (1 << 20) {
            return None;
        }
        let mut seen = BTreeSet::new();
        for n in &num_divs {
            for d in &den_divs {
                for cand in [
                    BigRational::new(n.clone(), d.clone()),
                    BigRational::new(-n.clone(), d.clone()),
                ] {
                    if seen.insert(cand.clone()) && eval(q, &cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort();
    Some(roots)
}

/// Polynomial in `t` with coefficients in ℚ[n], trimmed in `t`.
type TnPoly = Vec<QPoly>;

fn tn_trim(mut v: TnPoly) -> TnPoly {
    while v.last().is_some_and(Vec::is_empty) {
        v.pop();
    }
    v
}

fn tn_add(a: &[QPoly], b: &[QPoly]) -> TnPoly {
    let mut out = vec![Vec::new(); a.len().max(b.len())];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).map_or(&[][..], Vec::as_slice);
        let y = b.get(i).map_or(&[][..], Vec::as_slice);
        *slot = add(x, y);
    }
    tn_trim(out)
}

fn tn_specialize(a: &[QPoly], n0: &BigRational) -> QPoly {
    trim(a.iter().map(|c| eval(c, n0)).collect())
}

/// Sylvester resultant in `t` of two polynomials with ℚ[n] coefficients,
/// computed by fraction-free (Bareiss) elimination so every division stays in
/// ℚ[n].
fn sylvester_resultant(f: &[QPoly], g: &[QPoly]) -> QPoly {
    let m = f.len() - 1;
    let k = g.len() - 1;
    let size = m + k;
    if size == 0 {
        return vec![one()];
    }
    let mut mat: Vec<Vec<QPoly>> = vec![vec![Vec::new(); size]; size];
    for i in 0..k {
        for (idx, c) in f.iter().enumerate() {
            mat[i][i + m - idx] = c.clone();
        }
    }
    for i in 0..m {
        for (idx, c) in g.iter().enumerate() {
            mat[k + i][i + k - idx] = c.clone();
        }
    }
    det_bareiss(mat)
}

fn det_bareiss(mut m: Vec<Vec<QPoly>>) -> QPoly {
    let n = m.len();
    let mut negate = false;
    let mut prev: QPoly = vec![one()];
    for c in 0..n.saturating_sub(1) {
        let Some(pr) = (c..n).find(|&r| !m[r][c].is_empty()) else {
            return Vec::new();
        };
        if pr != c {
            m.swap(c, pr);
            negate = !negate;
        }
        let pivot = m[c][c].clone();
        for r in c + 1..n {
            for j in c + 1..n {
                let t1 = mul(&m[r][j], &pivot);
                let t2 = mul(&m[r][c], &m[c][j]);
                m[r][j] = exact_div(&sub(&t1, &t2), &prev);
            }
            m[r][c] = Vec::new();
        }
        prev = pivot;
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        neg(&det)
    } else {
        det
    }
}

/// All monic quadratic factors `x² − t·x + n` of a nonzero polynomial, as
/// `(t, n)` pairs sorted by `(n, t)`. `None` when a coefficient factorization
/// bails out.
///
/// Working modulo `x² − t·x + n` with `t`, `n` indeterminate, powers of `x`
/// reduce to `f_m(t,n)·x + g_m(t,n)` via `f_{m+1} = t·f_m + g_m`,
/// `g_{m+1} = −n·f_m`, so the quadratic divides `p` exactly when the pair
/// `ρ₁ = Σ p_m f_m`, `ρ₀ = Σ p_m g_m` vanishes. The `t`-leading coefficient
/// of `ρ₁` is the constant `lead(p)`, so eliminating `t` with a resultant
/// catches every common zero; the candidates it produces are verified by
/// honest division.
pub(crate) fn quadratic_rational_factors(
    p: &[BigRational],
) -> Option<Vec<(BigRational, BigRational)>> {
    let p = trim(p.to_vec());
    assert!(!p.is_empty(), "quadratic factors of the zero polynomial");
    let d = p.len() - 1;
    if d < 2 {
        return Some(Vec::new());
    }
    let mut f: TnPoly = Vec::new();
    let mut g: TnPoly = vec![vec![one()]];
    let mut rho1: TnPoly = Vec::new();
    let mut rho0: TnPoly = Vec::new();
    for (m, pm) in p.iter().enumerate() {
        if !pm.is_zero() {
            let fs: TnPoly = f.iter().map(|c| scale(c, pm)).collect();
            let gs: TnPoly = g.iter().map(|c| scale(c, pm)).collect();
            rho1 = tn_add(&rho1, &fs);
            rho0 = tn_add(&rho0, &gs);
        }
        if m < d {
            let mut shifted: TnPoly = vec![Vec::new()];
            shifted.extend(f.iter().cloned());
            let new_f = tn_add(&shifted, &g);
            let new_g: TnPoly = f.iter().map(|c| neg(&shift(c, 1))).collect();
            f = new_f;
            g = tn_trim(new_g);
        }
    }
    let rho1 = tn_trim(rho1);
    let rho0 = tn_trim(rho0);
    if rho0.is_empty() || rho1.is_empty() {
        return None;
    }
    let res_n = sylvester_resultant(&rho1, &rho0);
    if res_n.is_empty() {
        return None;
    }
    let mut out = Vec::new();
    for n0 in rational_roots(&res_n)? {
        let r1 = tn_specialize(&rho1, &n0);
        let r0 = tn_specialize(&rho0, &n0);
        let h = gcd(&r1, &r0);
        if deg(&h) == Some(0) {
            continue;
        }
        for t0 in rational_roots(&h)? {
            let quadratic = vec![n0.clone(), -t0.clone(), one()];
            let (_, r) = divrem(&p, &quadratic);
            if r.is_empty() {
                out.push((t0, n0.clone()));
            }
        }
    }
    out.sort_by(|a, b| (&a.1, &a.0).cmp(&(&b.1, &b.0)));
    Some(out)
}
