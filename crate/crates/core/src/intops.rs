//! Exact integer utilities shared by the finite-field and rational-number
//! machinery: primality, trial-division factorization, and representations
//! as sums of squares.

use num::{BigInt, BigRational, One, Signed, Zero};

fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod_u64(acc, base, m);
        }
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for `u64` (the listed bases cover the full range).
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// How far trial division is willing to walk before giving up. Inputs in
/// normal use are tiny; this bound only protects interactive commands from
/// adversarial numerators.
const TRIAL_DIVISION_LIMIT: u64 = 1 << 22;

/// Factor `n > 0` by trial division. Returns `None` when a cofactor survives
/// the trial-division bound and is not provably prime; callers degrade
/// gracefully (e.g. a domain report marked incomplete).
pub(crate) fn factor_bigint(n: &BigInt) -> Option<Vec<(BigInt, u32)>> {
    assert!(n.is_positive(), "factor_bigint expects a positive integer");
    let mut rest = n.clone();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    let push = |p: BigInt, e: u32, out: &mut Vec<(BigInt, u32)>| {
        if e > 0 {
            out.push((p, e));
        }
    };
    let mut d = 2u64;
    let mut exhausted = true;
    while rest > BigInt::one() {
        if d > TRIAL_DIVISION_LIMIT {
            exhausted = false;
            break;
        }
        let bd = BigInt::from(d);
        if (&bd * &bd) > rest {
            break;
        }
        let mut e = 0u32;
        while (&rest % &bd).is_zero() {
            rest /= &bd;
            e += 1;
        }
        push(bd, e, &mut out);
        d = if d == 2 { 3 } else { d + 2 };
    }
    if rest > BigInt::one() {
        if exhausted {
            // No divisor up to √rest: the cofactor is prime.
            push(rest, 1, &mut out);
            return Some(out);
        }
        if let Ok(r) = u64::try_from(&rest) {
            if is_prime_u64(r) {
                push(rest, 1, &mut out);
                return Some(out);
            }
        }
        // A square of a prime can also slip past the bound check above.
        let s = rest.sqrt();
        if &s * &s == rest {
            if let Ok(sp) = u64::try_from(&s) {
                if is_prime_u64(sp) {
                    push(s, 2, &mut out);
                    return Some(out);
                }
            }
        }
        return None;
    }
    Some(out)
}

/// All positive divisors from a factorization, capped to keep candidate scans
/// bounded on adversarial input.
pub(crate) fn divisors(factors: &[(BigInt, u32)], cap: usize) -> Option<Vec<BigInt>> {
    let mut out = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
        let mut pe = BigInt::one();
        for _ in 0..=*e {
            for d in &out {
                next.push(d * &pe);
            }
            pe *= p;
        }
        out = next;
        if out.len() > cap {
            return None;
        }
    }
    Some(out)
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub(crate) fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let ns = r.numer().sqrt();
    let ds = r.denom().sqrt();
    if &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom() {
        Some(BigRational::new(ns, ds))
    } else {
        None
    }
}

/// Write the non-negative integer `n` as `x² + y²`, if possible.
pub(crate) fn two_squares_integer(n: &BigInt) -> Option<(BigInt, BigInt)> {
    if n.is_zero() {
        return Some((BigInt::zero(), BigInt::zero()));
    }
    if n.is_negative() {
        return None;
    }
    let factors = factor_bigint(n)?;
    let mut x = BigInt::one();
    let mut y = BigInt::zero();
    let four = BigInt::from(4);
    let three = BigInt::from(3);
    for (p, e) in &factors {
        if p == &BigInt::from(2) {
            // 2 = 1² + 1²; compose e times.
            for _ in 0..*e {
                let (nx, ny) = (&x - &y, &x + &y);
                x = nx.abs();
                y = ny.abs();
            }
        } else if (p % &four) == three {
            if e % 2 != 0 {
                return None;
            }
            let mut scale = BigInt::one();
            for _ in 0..(e / 2) {
                scale *= p;
            }
            x *= &scale;
            y *= &scale;
        } else {
            let (a, b) = prime_two_squares(p)?;
            for _ in 0..*e {
                // Brahmagupta–Fibonacci composition.
                let (nx, ny) = (&x * &a - &y * &b, &x * &b + &y * &a);
                x = nx.abs();
                y = ny.abs();
            }
        }
    }
    Some((x.abs(), y.abs()))
}

/// Two-squares decomposition of a prime `p ≡ 1 (mod 4)` by bounded search.
fn prime_two_squares(p: &BigInt) -> Option<(BigInt, BigInt)> {
    let mut x = p.sqrt();
    while x.is_positive() {
        let rem = p - &x * &x;
        let y = rem.sqrt();
        if &y * &y == rem {
            return Some((x, y));
        }
        x -= 1;
    }
    None
}

/// Whether a non-negative rational is a sum of two rational squares, with a
/// witness. `p/q` works over `Q` exactly when the integer `p·q` works over `Z`.
pub(crate) fn two_squares_rational(r: &BigRational) -> Option<(BigRational, BigRational)> {
    if r.is_negative() {
        return None;
    }
    let pq = r.numer() * r.denom();
    let (x, y) = two_squares_integer(&pq)?;
    let d = r.denom().clone();
    Some((BigRational::new(x, d.clone()), BigRational::new(y, d)))
}

/// Legendre's criterion: `n ≥ 0` is a sum of three integer squares unless it
/// has the form `4^a (8b + 7)`. Needs no factorization.
pub(crate) fn three_squares_representable_integer(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    if n.is_zero() {
        return true;
    }
    let mut m = n.clone();
    let four = BigInt::from(4);
    while (&m % &four).is_zero() {
        m /= &four;
    }
    (&m % BigInt::from(8)) != BigInt::from(7)
}

pub(crate) fn three_squares_representable_rational(r: &BigRational) -> bool {
    if r.is_negative() {
        return false;
    }
    three_squares_representable_integer(&(r.numer() * r.denom()))
}

/// Write `n ≥ 0` as `x² + y² + z²`. By Davenport–Cassels the integer case
/// suffices for rationals after clearing squares of the denominator.
pub(crate) fn three_squares_integer(n: &BigInt) -> Option<(BigInt, BigInt, BigInt)> {
    if !three_squares_representable_integer(n) {
        return None;
    }
    let mut x = n.sqrt();
    loop {
        let rem = n - &x * &x;
        if let Some((y, z)) = two_squares_integer(&rem) {
            return Some((x, y, z));
        }
        if x.is_zero() {
            return None;
        }
        x -= 1;
    }
}

pub(crate) fn three_squares_rational(
    r: &BigRational,
) -> Option<(BigRational, BigRational, BigRational)> {
    if r.is_negative() {
        return None;
    }
    let pq = r.numer() * r.denom();
    let (x, y, z) = three_squares_integer(&pq)?;
    let d = r.denom().clone();
    Some((
        BigRational::new(x, d.clone()),
        BigRational::new(y, d.clone()),
        BigRational::new(z, d),
    ))
}

#[cfg(test)]
pub(crate) fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

#[cfg(test)]
pub(crate) fn bigrat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(3));
        assert!(is_prime_u64(97));
        assert!(is_prime_u64(2_147_483_647));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(561)); // Carmichael
        assert!(!is_prime_u64(6_700_417 * 3));
    }

    #[test]
    fn factoring() {
        let f = factor_bigint(&big(360)).unwrap();
        assert_eq!(f, vec![(big(2), 3), (big(3), 2), (big(5), 1)]);
        let d = divisors(&f, 100).unwrap();
        assert_eq!(d.len(), 24);
    }

    #[test]
    fn squares() {
        assert_eq!(rational_sqrt(&bigrat(9, 4)), Some(bigrat(3, 2)));
        assert_eq!(rational_sqrt(&bigrat(2, 1)), None);
        let (x, y) = two_squares_integer(&big(5)).unwrap();
        assert_eq!(&x * &x + &y * &y, big(5));
        assert!(two_squares_integer(&big(3)).is_none());
        assert!(two_squares_integer(&big(21)).is_none()); // 3·7
        let (x, y) = two_squares_integer(&big(45)).unwrap(); // 9·5
        assert_eq!(&x * &x + &y * &y, big(45));
        // 1/7 fails Legendre's criterion: numer·denom = 7 ≡ 7 (mod 8).
        assert!(!three_squares_representable_rational(&bigrat(1, 7)));
        assert!(three_squares_representable_rational(&bigrat(3, 1)));
        let (x, y, z) = three_squares_rational(&bigrat(3, 1)).unwrap();
        assert_eq!(&x * &x + &y * &y + &z * &z, bigrat(3, 1));
    }
}
