//! Commutative polynomial arithmetic over `F_p`, used to realize `F_{p^n}` as
//! `F_p[t]` modulo a monic irreducible. Coefficient vectors are low-degree
//! first and kept trimmed (no trailing zeros), so `vec![]` is the zero
//! polynomial.

use crate::linalg::{BaseField, Fp};

pub(crate) fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub(crate) fn deg(v: &[u64]) -> Option<usize> {
    if v.is_empty() {
        None
    } else {
        Some(v.len() - 1)
    }
}

pub(crate) fn add(f: &Fp, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = f.add(&x, &y);
    }
    trim(out)
}

pub(crate) fn sub(f: &Fp, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = f.sub(&x, &y);
    }
    trim(out)
}

pub(crate) fn mul(f: &Fp, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(&x, &y));
        }
    }
    trim(out)
}

/// Quotient and remainder of `a` by nonzero `b`.
pub(crate) fn divrem(f: &Fp, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let db = b.len() - 1;
    let lead_inv = f
        .inv(b.last().unwrap())
        .expect("trimmed leading coefficient");
    let mut rem: Vec<u64> = a.to_vec();
    let mut quo = vec![0u64; a.len().saturating_sub(db)];
    while rem.len() > db {
        let dr = rem.len() - 1;
        let c = f.mul(rem.last().unwrap(), &lead_inv);
        if c != 0 {
            quo[dr - db] = c;
            for (j, &bj) in b.iter().enumerate() {
                let t = f.mul(&c, &bj);
                rem[dr - db + j] = f.sub(&rem[dr - db + j], &t);
            }
        }
        rem.pop();
        while rem.last() == Some(&0) {
            rem.pop();
        }
        if rem.len() <= db {
            break;
        }
    }
    (trim(quo), trim(rem))
}

pub(crate) fn rem(f: &Fp, a: &[u64], b: &[u64]) -> Vec<u64> {
    divrem(f, a, b).1
}

/// `base^exp mod m` by square-and-multiply.
pub(crate) fn powmod(f: &Fp, base: &[u64], mut exp: u64, m: &[u64]) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = rem(f, base, m);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = rem(f, &mul(f, &acc, &b), m);
        }
        b = rem(f, &mul(f, &b, &b), m);
        exp >>= 1;
    }
    acc
}

/// Extended Euclid: returns `(g, s, t)` with `s·a + t·b = g`, `g` monic
/// unless zero.
pub(crate) fn ext_gcd(f: &Fp, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    let mut s0 = vec![1u64];
    let mut s1 = Vec::new();
    let mut t0 = Vec::new();
    let mut t1 = vec![1u64];
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let s = sub(f, &s0, &mul(f, &q, &s1));
        let t = sub(f, &t0, &mul(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    if let Some(&lead) = r0.last() {
        if lead != 1 {
            let inv = f.inv(&lead).unwrap();
            let scale = |v: &[u64]| v.iter().map(|x| f.mul(x, &inv)).collect::<Vec<_>>();
            return (scale(&r0), scale(&s0), scale(&t0));
        }
    }
    (r0, s0, t0)
}

/// Inverse of `a` modulo `m`; `None` when `gcd(a, m) ≠ 1`.
pub(crate) fn inv_mod(f: &Fp, a: &[u64], m: &[u64]) -> Option<Vec<u64>> {
    let (g, s, _) = ext_gcd(f, a, m);
    if g == vec![1u64] {
        Some(rem(f, &s, m))
    } else {
        None
    }
}

/// Rabin's irreducibility test: `m` of degree `d` is irreducible over `F_p`
/// exactly when `t^(p^d) ≡ t (mod m)` and `gcd(t^(p^(d/q)) − t, m) = 1` for
/// every prime `q` dividing `d`. Stays fast for large `p`, unlike trial
/// division.
pub(crate) fn is_irreducible(f: &Fp, m: &[u64]) -> bool {
    let Some(d) = deg(m) else { return false };
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    // frob[j] = t^(p^j) mod m, built by repeated p-th powers.
    let mut frob = vec![rem(f, &[0, 1], m)];
    for _ in 0..d {
        let next = powmod(f, frob.last().unwrap(), f.p, m);
        frob.push(next);
    }
    if frob[d] != frob[0] {
        return false;
    }
    let mut divisor = 2;
    let mut rest = d;
    while divisor * divisor <= rest {
        if rest % divisor == 0 {
            let diff = sub(f, &frob[d / divisor], &frob[0]);
            let (g, _, _) = ext_gcd(f, &diff, m);
            if deg(&g) != Some(0) {
                return false;
            }
            while rest % divisor == 0 {
                rest /= divisor;
            }
        }
        divisor += 1;
    }
    if rest > 1 {
        let diff = sub(f, &frob[d / rest], &frob[0]);
        let (g, _, _) = ext_gcd(f, &diff, m);
        if deg(&g) != Some(0) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_basic() {
        let f = Fp::new(2);
        // t^2 + t + 1 divided by t + 1 over F_2: quotient t, remainder 1.
        let (q, r) = divrem(&f, &[1, 1, 1], &[1, 1]);
        assert_eq!(q, vec![0, 1]);
        assert_eq!(r, vec![1]);
    }

    #[test]
    fn ext_gcd_bezout() {
        let f = Fp::new(5);
        let a = vec![1, 0, 1]; // t^2 + 1
        let b = vec![2, 1]; // t + 2
        let (g, s, t) = ext_gcd(&f, &a, &b);
        let lhs = add(&f, &mul(&f, &s, &a), &mul(&f, &t, &b));
        assert_eq!(lhs, g);
        // t^2 + 1 = (t+2)(t+3) + 0? (t+2)(t+3) = t^2 + 5t + 6 = t^2 + 1 over F_5.
        assert_eq!(g, [2, 1].iter().map(|&x| x % 5).collect::<Vec<_>>());
    }

    #[test]
    fn inverse_in_f4() {
        let f = Fp::new(2);
        let m = vec![1, 1, 1]; // t^2 + t + 1
                               // g := t. g^-1 should be t + 1 since t(t+1) = t^2 + t = 1 mod m.
        let inv = inv_mod(&f, &[0, 1], &m).unwrap();
        assert_eq!(inv, vec![1, 1]);
        assert_eq!(inv_mod(&f, &[], &m), None);
    }

    #[test]
    fn irreducibility() {
        let f2 = Fp::new(2);
        assert!(is_irreducible(&f2, &[1, 1, 1])); // t^2+t+1
        assert!(!is_irreducible(&f2, &[1, 0, 1])); // t^2+1 = (t+1)^2
        assert!(is_irreducible(&f2, &[1, 1, 0, 1])); // t^3+t+1
        let f3 = Fp::new(3);
        assert!(is_irreducible(&f3, &[1, 0, 1])); // t^2+1 over F_3
        assert!(!is_irreducible(&f3, &[2, 0, 1])); // t^2+2 = (t+1)(t+2)
    }

    /// Brute-force oracle: divide by every monic polynomial of degree
    /// 1..=d/2 and cross-check the Rabin test on every monic polynomial of
    /// degree up to 4 over small prime fields.
    #[test]
    fn irreducibility_matches_trial_division() {
        fn monic_polys(p: u64, d: usize) -> Vec<Vec<u64>> {
            let mut out = Vec::new();
            let mut counter = vec![0u64; d];
            loop {
                let mut poly = counter.clone();
                poly.push(1);
                out.push(poly);
                let mut i = 0;
                loop {
                    if i == d {
                        return out;
                    }
                    counter[i] += 1;
                    if counter[i] < p {
                        break;
                    }
                    counter[i] = 0;
                    i += 1;
                }
            }
        }
        for p in [2u64, 3, 5] {
            let f = Fp::new(p);
            for d in 2..=4 {
                for m in monic_polys(p, d) {
                    let by_division = (1..=d / 2).all(|dd| {
                        monic_polys(p, dd)
                            .iter()
                            .all(|c| !rem(&f, &m, c).is_empty())
                    });
                    assert_eq!(is_irreducible(&f, &m), by_division, "p={p} m={m:?}");
                }
            }
        }
    }

    #[test]
    fn powmod_frobenius() {
        let f = Fp::new(3);
        let m = vec![1, 0, 1]; // t^2 + 1, F_9
                               // Frobenius image of t: t^3 = t·t^2 ≡ -t = 2t.
        assert_eq!(powmod(&f, &[0, 1], 3, &m), vec![0, 2]);
    }
}
