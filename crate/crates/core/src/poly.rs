//! The skew polynomial ring `K[T; σ, δ]`: usual addition, and multiplication
//! driven by the commutation rule `T·a = σ(a)·T + δ(a)`. The ring has a
//! right (and left) Euclidean division, so greatest common right divisors,
//! their left analogues, and least left common multiples all come from the
//! Euclidean algorithm. Evaluation at a point is defined as the remainder of
//! right division by `T − a`.

use std::fmt;

use thiserror::Error;

use crate::scalar::{FieldRef, Scalar};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("coefficients belong to different fields")]
    MixedFields,
}

/// Element of `K[T; σ, δ]`, coefficients low-degree first with a nonzero
/// leading coefficient (the zero polynomial stores no coefficients).
#[derive(Clone, PartialEq, Eq)]
pub struct SkewPolynomial {
    field: FieldRef,
    coeffs: Vec<Scalar>,
}

impl SkewPolynomial {
    pub fn zero(field: &FieldRef) -> Self {
        SkewPolynomial {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &FieldRef) -> Self {
        Self::constant(Scalar::one(field))
    }

    /// The variable `T`.
    pub fn var(field: &FieldRef) -> Self {
        Self::monomial(Scalar::one(field), 1)
    }

    pub fn constant(c: Scalar) -> Self {
        let field = c.field().clone();
        SkewPolynomial {
            field,
            coeffs: if c.is_zero() { Vec::new() } else { vec![c] },
        }
    }

    /// `c·T^k`.
    pub fn monomial(c: Scalar, k: usize) -> Self {
        let field = c.field().clone();
        if c.is_zero() {
            return Self::zero(&field);
        }
        let mut coeffs = vec![Scalar::zero(&field); k];
        coeffs.push(c);
        SkewPolynomial { field, coeffs }
    }

    /// Build from low-degree-first coefficients, which must all live in
    /// `field`.
    pub fn from_coeffs(field: &FieldRef, coeffs: Vec<Scalar>) -> Result<Self, PolyError> {
        if coeffs.iter().any(|c| c.field() != field) {
            return Err(PolyError::MixedFields);
        }
        let mut out = SkewPolynomial {
            field: field.clone(),
            coeffs,
        };
        out.trim();
        Ok(out)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Scalar::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `T^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(&self.field))
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    fn expect_same_field(&self, other: &Self) {
        assert!(
            self.field == other.field,
            "skew polynomials over different fields"
        );
    }

    /// `c·P` (coefficient-wise left multiplication).
    pub fn scale_left(&self, c: &Scalar) -> Self {
        let mut out = SkewPolynomial {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|x| c * x).collect(),
        };
        out.trim();
        out
    }

    /// Left-normalize to a monic polynomial (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lead) => self.scale_left(&lead.inv().expect("leading coefficient is nonzero")),
        }
    }

    /// `T·P`, one application of the commutation rule.
    fn t_times(&self) -> Self {
        let zero = Scalar::zero(&self.field);
        let mut coeffs = vec![zero; self.coeffs.len() + 1];
        for (j, b) in self.coeffs.iter().enumerate() {
            coeffs[j + 1] = &coeffs[j + 1] + &b.sigma();
            coeffs[j] = &coeffs[j] + &b.delta();
        }
        let mut out = SkewPolynomial {
            field: self.field.clone(),
            coeffs,
        };
        out.trim();
        out
    }

    pub fn pow(&self, mut k: usize) -> Self {
        let mut acc = Self::one(&self.field);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Right division: `self = q·d + r` with `deg r < deg d`.
    pub fn right_divide(&self, d: &Self) -> Result<(Self, Self), PolyError> {
        self.expect_same_field(d);
        let Some(dd) = d.degree() else {
            return Err(PolyError::DivisionByZero);
        };
        let d_lead = d.leading().unwrap();
        let mut rem = self.clone();
        let mut quo = vec![Scalar::zero(&self.field); self.coeffs.len().saturating_sub(dd)];
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let m = dr - dd;
            // Leading term of (q·T^m)·d is q·σ^m(lead d)·T^(m+dd).
            let q = rem.leading().unwrap() * &d_lead.sigma_pow(m as i64).inv().unwrap();
            rem = &rem - &(&Self::monomial(q.clone(), m) * d);
            quo[m] = q;
        }
        let quo = Self::from_coeffs(&self.field, quo).unwrap();
        Ok((quo, rem))
    }

    /// Left division: `self = d·q + r` with `deg r < deg d`.
    pub fn left_divide(&self, d: &Self) -> Result<(Self, Self), PolyError> {
        self.expect_same_field(d);
        let Some(dd) = d.degree() else {
            return Err(PolyError::DivisionByZero);
        };
        let d_lead_inv = d.leading().unwrap().inv().unwrap();
        let mut rem = self.clone();
        let mut quo = vec![Scalar::zero(&self.field); self.coeffs.len().saturating_sub(dd)];
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let m = dr - dd;
            // Leading term of d·(q·T^m) is (lead d)·σ^dd(q)·T^(dd+m).
            let q = (&d_lead_inv * rem.leading().unwrap()).sigma_pow(-(dd as i64));
            rem = &rem - &(d * &Self::monomial(q.clone(), m));
            quo[m] = q;
        }
        let quo = Self::from_coeffs(&self.field, quo).unwrap();
        Ok((quo, rem))
    }

    /// Evaluation at `a`: the remainder of right division by `T − a`.
    pub fn eval(&self, a: &Scalar) -> Scalar {
        assert!(a.field() == &self.field, "point from a different field");
        if self.is_zero() {
            return Scalar::zero(&self.field);
        }
        let divisor = Self::from_coeffs(&self.field, vec![-a, Scalar::one(&self.field)]).unwrap();
        let (_, r) = self.right_divide(&divisor).unwrap();
        r.coeff(0)
    }

    /// Monic greatest common right divisor (`gcrd(0, 0) = 0`).
    pub fn gcrd(&self, other: &Self) -> Self {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        while !r1.is_zero() {
            let (_, r) = r0.right_divide(&r1).unwrap();
            r0 = std::mem::replace(&mut r1, r);
        }
        r0.monic()
    }

    /// Extended right Euclid: `(g, u, v)` with `g = u·self + v·other` and `g`
    /// the monic gcrd.
    pub fn xgcrd(&self, other: &Self) -> (Self, Self, Self) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut u0 = Self::one(&self.field);
        let mut u1 = Self::zero(&self.field);
        let mut v0 = Self::zero(&self.field);
        let mut v1 = Self::one(&self.field);
        while !r1.is_zero() {
            let (q, r) = r0.right_divide(&r1).unwrap();
            let u = &u0 - &(&q * &u1);
            let v = &v0 - &(&q * &v1);
            r0 = std::mem::replace(&mut r1, r);
            u0 = std::mem::replace(&mut u1, u);
            v0 = std::mem::replace(&mut v1, v);
        }
        match r0.leading() {
            None => (r0, u0, v0),
            Some(lead) => {
                let c = lead.inv().unwrap();
                (r0.scale_left(&c), u0.scale_left(&c), v0.scale_left(&c))
            }
        }
    }

    /// Greatest common left divisor, normalized monic via a right unit.
    pub fn gcld(&self, other: &Self) -> Self {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        while !r1.is_zero() {
            let (_, r) = r0.left_divide(&r1).unwrap();
            r0 = std::mem::replace(&mut r1, r);
        }
        match (r0.degree(), r0.leading()) {
            (Some(d), Some(lead)) => {
                // G·u is monic for u = σ^(−d)(lead⁻¹); δ-terms only show up in
                // lower degrees.
                let u = lead.inv().unwrap().sigma_pow(-(d as i64));
                &r0 * &Self::constant(u)
            }
            _ => r0,
        }
    }

    /// Monic least common left multiple.
    pub fn llcm(&self, other: &Self) -> Self {
        self.llcm_with_cofactors(other).0
    }

    /// `(l, u, v)` with `l = u·self = v·other` the monic least common left
    /// multiple. When one argument is zero the lcm is zero.
    pub fn llcm_with_cofactors(&self, other: &Self) -> (Self, Self, Self) {
        self.expect_same_field(other);
        if self.is_zero() {
            return (
                Self::zero(&self.field),
                Self::one(&self.field),
                Self::zero(&self.field),
            );
        }
        if other.is_zero() {
            return (
                Self::zero(&self.field),
                Self::zero(&self.field),
                Self::one(&self.field),
            );
        }
        // Run the extended Euclid one step past the gcrd: when r_N = 0,
        // u_N·P = −v_N·Q is the least common left multiple.
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut u0 = Self::one(&self.field);
        let mut u1 = Self::zero(&self.field);
        let mut v0 = Self::zero(&self.field);
        let mut v1 = Self::one(&self.field);
        while !r1.is_zero() {
            let (q, r) = r0.right_divide(&r1).unwrap();
            let u = &u0 - &(&q * &u1);
            let v = &v0 - &(&q * &v1);
            r0 = std::mem::replace(&mut r1, r);
            u0 = std::mem::replace(&mut u1, u);
            v0 = std::mem::replace(&mut v1, v);
        }
        let l0 = &u1 * self;
        let c = l0
            .leading()
            .expect("lcm of nonzero polynomials is nonzero")
            .inv()
            .unwrap();
        let l = l0.scale_left(&c);
        let u = u1.scale_left(&c);
        let v = v1.scale_left(&-&c);
        (l, u, v)
    }
}

impl std::ops::Neg for &SkewPolynomial {
    type Output = SkewPolynomial;
    fn neg(self) -> SkewPolynomial {
        SkewPolynomial {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl std::ops::Add for &SkewPolynomial {
    type Output = SkewPolynomial;
    fn add(self, other: &SkewPolynomial) -> SkewPolynomial {
        self.expect_same_field(other);
        let zero = Scalar::zero(&self.field);
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for i in 0..len {
            let a = self.coeffs.get(i).unwrap_or(&zero);
            let b = other.coeffs.get(i).unwrap_or(&zero);
            coeffs.push(a + b);
        }
        let mut out = SkewPolynomial {
            field: self.field.clone(),
            coeffs,
        };
        out.trim();
        out
    }
}

impl std::ops::Sub for &SkewPolynomial {
    type Output = SkewPolynomial;
    fn sub(self, other: &SkewPolynomial) -> SkewPolynomial {
        self + &(-other)
    }
}

impl std::ops::Mul for &SkewPolynomial {
    type Output = SkewPolynomial;
    fn mul(self, other: &SkewPolynomial) -> SkewPolynomial {
        self.expect_same_field(other);
        let mut acc = SkewPolynomial::zero(&self.field);
        let mut cur = other.clone(); // T^i · other
        for a in &self.coeffs {
            if !a.is_zero() {
                acc = &acc + &cur.scale_left(a);
            }
            cur = cur.t_times();
        }
        acc
    }
}

impl fmt::Display for SkewPolynomial {
    /// Descending powers with every coefficient braced, except that monic
    /// terms drop the `{1}*`: `T^2 + {g}*T + {1}`. The zero polynomial is
    /// `{0}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "{{0}}");
        }
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let power = match i {
                0 => String::new(),
                1 => "T".to_string(),
                _ => format!("T^{i}"),
            };
            if i == 0 {
                write!(f, "{{{c}}}")?;
            } else if c.is_one() {
                write!(f, "{power}")?;
            } else {
                write!(f, "{{{c}}}*{power}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SkewPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} over {}", self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{FieldDescriptor, GaussianSigma};

    fn f4_derived() -> FieldRef {
        let k = FieldDescriptor::finite_field(2, &[1, 1, 1], 1).unwrap();
        let g = Scalar::parse(&k, "g").unwrap();
        k.with_inner_derivation(&g).unwrap()
    }

    fn quat_derived() -> FieldRef {
        let h = FieldDescriptor::quaternions();
        let i = Scalar::parse(&h, "i").unwrap();
        h.with_inner_derivation(&i).unwrap()
    }

    /// Independent evaluation: `P(a) = Σ p_i·N_i(a)` with `N_0 = 1`,
    /// `N_{i+1} = σ(N_i)·a + δ(N_i)`.
    fn eval_oracle(p: &SkewPolynomial, a: &Scalar) -> Scalar {
        let field = p.field().clone();
        let mut n = Scalar::one(&field);
        let mut acc = Scalar::zero(&field);
        for c in p.coeffs() {
            acc = &acc + &(c * &n);
            n = &(&n.sigma() * a) + &n.delta();
        }
        acc
    }

    #[test]
    fn commutation_rule() {
        let k = f4_derived();
        let g = Scalar::parse(&k, "g").unwrap();
        let t = SkewPolynomial::var(&k);
        let prod = &t * &SkewPolynomial::constant(g.clone());
        // T·g = σ(g)·T + δ(g) = (g+1)·T + g.
        assert_eq!(prod.coeff(1), g.sigma());
        assert_eq!(prod.coeff(0), g.delta());
        assert_eq!(prod.coeff(1), Scalar::parse(&k, "g+1").unwrap());
        assert_eq!(prod.coeff(0), g);
    }

    #[test]
    fn display_format() {
        let k = FieldDescriptor::finite_field(2, &[1, 1, 1], 1).unwrap();
        let g = Scalar::parse(&k, "g").unwrap();
        let p = SkewPolynomial::from_coeffs(&k, vec![Scalar::one(&k), g, Scalar::one(&k)]).unwrap();
        assert_eq!(p.to_string(), "T^2 + {g}*T + {1}");
        assert_eq!(SkewPolynomial::zero(&k).to_string(), "{0}");
        assert_eq!(SkewPolynomial::var(&k).to_string(), "T");
        let h = FieldDescriptor::quaternions();
        let c = Scalar::parse(&h, "-1/3i-2/3j").unwrap();
        assert_eq!(SkewPolynomial::constant(c).to_string(), "{-1/3i-2/3j}");
    }

    #[test]
    fn right_division_gaussian() {
        let k = FieldDescriptor::gaussian(GaussianSigma::Conjugation);
        let a = Scalar::parse(&k, "1+i").unwrap();
        let t2 = SkewPolynomial::var(&k).pow(2);
        let d = SkewPolynomial::from_coeffs(&k, vec![-&a, Scalar::one(&k)]).unwrap();
        let (q, r) = t2.right_divide(&d).unwrap();
        // T² = (T + 1−i)·(T − (1+i)) + 2 under σ = conjugation.
        assert_eq!(
            q,
            SkewPolynomial::from_coeffs(
                &k,
                vec![Scalar::parse(&k, "1-i").unwrap(), Scalar::one(&k)]
            )
            .unwrap()
        );
        assert_eq!(r, SkewPolynomial::constant(Scalar::from_i64(&k, 2)));
        assert_eq!(t2.eval(&a), Scalar::from_i64(&k, 2));
        // Reconstruction.
        assert_eq!(&(&q * &d) + &r, t2);
    }

    #[test]
    fn eval_agrees_with_recursion_oracle() {
        for field in [f4_derived(), quat_derived()] {
            let samples: Vec<Scalar> = if field.characteristic() > 0 {
                field.elements().unwrap()
            } else {
                ["0", "1", "i", "1+i", "j", "2-3k", "1/2+1/3i-1/4j+k"]
                    .iter()
                    .map(|s| Scalar::parse(&field, s).unwrap())
                    .collect()
            };
            let polys = [
                SkewPolynomial::var(&field).pow(3),
                SkewPolynomial::from_coeffs(
                    &field,
                    vec![
                        samples[1].clone(),
                        samples[2].clone(),
                        samples[3].clone(),
                        Scalar::one(&field),
                    ],
                )
                .unwrap(),
            ];
            for p in &polys {
                for a in &samples {
                    assert_eq!(p.eval(a), eval_oracle(p, a), "p = {p:?}, a = {a:?}");
                }
            }
        }
    }

    #[test]
    fn llcm_of_quaternion_linears() {
        let h = FieldDescriptor::quaternions();
        let i = Scalar::parse(&h, "i").unwrap();
        let j = Scalar::parse(&h, "j").unwrap();
        let p = SkewPolynomial::from_coeffs(&h, vec![-&i, Scalar::one(&h)]).unwrap();
        let q = SkewPolynomial::from_coeffs(&h, vec![-&j, Scalar::one(&h)]).unwrap();
        let (l, u, v) = p.llcm_with_cofactors(&q);
        // lcm(T−i, T−j) = T² + 1 over ℍ(ℚ).
        let expected = SkewPolynomial::from_coeffs(
            &h,
            vec![Scalar::one(&h), Scalar::zero(&h), Scalar::one(&h)],
        )
        .unwrap();
        assert_eq!(l, expected);
        assert_eq!(&u * &p, l);
        assert_eq!(&v * &q, l);
        // Degree identity: deg lcm + deg gcrd = deg P + deg Q.
        assert_eq!(p.gcrd(&q).degree(), Some(0));
    }

    #[test]
    fn gcrd_detects_shared_right_factor() {
        let k = FieldDescriptor::finite_field(2, &[1, 1, 1], 1).unwrap();
        let g = Scalar::parse(&k, "g").unwrap();
        let g2 = Scalar::parse(&k, "g+1").unwrap();
        let one = Scalar::one(&k);
        let shared = SkewPolynomial::from_coeffs(&k, vec![-&one, one.clone()]).unwrap();
        let a = &SkewPolynomial::from_coeffs(&k, vec![-&g, one.clone()]).unwrap() * &shared;
        let b = &SkewPolynomial::from_coeffs(&k, vec![-&g2, one.clone()]).unwrap() * &shared;
        assert_eq!(a.gcrd(&b), shared);
        let (gg, u, v) = a.xgcrd(&b);
        assert_eq!(gg, shared);
        assert_eq!(&(&u * &a) + &(&v * &b), gg);
        // Degree identity.
        let l = a.llcm(&b);
        assert_eq!(
            l.degree().unwrap() + gg.degree().unwrap(),
            a.degree().unwrap() + b.degree().unwrap()
        );
    }

    #[test]
    fn left_division_with_derivation() {
        let h = quat_derived();
        let i = Scalar::parse(&h, "i").unwrap();
        let j = Scalar::parse(&h, "j").unwrap();
        let p = SkewPolynomial::from_coeffs(
            &h,
            vec![
                j.clone(),
                i.clone(),
                Scalar::from_i64(&h, 2),
                Scalar::one(&h),
            ],
        )
        .unwrap();
        let d =
            SkewPolynomial::from_coeffs(&h, vec![-&i, Scalar::parse(&h, "1+j").unwrap()]).unwrap();
        let (q, r) = p.left_divide(&d).unwrap();
        assert!(r.degree().unwrap_or(0) < d.degree().unwrap());
        assert_eq!(&(&d * &q) + &r, p);
        // And the right division identity on the same data.
        let (q2, r2) = p.right_divide(&d).unwrap();
        assert_eq!(&(&q2 * &d) + &r2, p);
    }

    #[test]
    fn gcld_via_left_remainders() {
        let h = FieldDescriptor::quaternions();
        let i = Scalar::parse(&h, "i").unwrap();
        let one = Scalar::one(&h);
        let shared = SkewPolynomial::from_coeffs(&h, vec![-&i, one.clone()]).unwrap();
        let j = Scalar::parse(&h, "j").unwrap();
        let a = &shared * &SkewPolynomial::from_coeffs(&h, vec![-&j, one.clone()]).unwrap();
        let b = &shared * &SkewPolynomial::from_coeffs(&h, vec![j.clone(), one.clone()]).unwrap();
        let g = a.gcld(&b);
        assert_eq!(g, shared);
        // The gcld left-divides both inputs.
        assert!(a.left_divide(&g).unwrap().1.is_zero());
        assert!(b.left_divide(&g).unwrap().1.is_zero());
    }

    #[test]
    fn multiplication_is_associative_with_derivation() {
        let k = f4_derived();
        let g = Scalar::parse(&k, "g").unwrap();
        let a = SkewPolynomial::from_coeffs(&k, vec![g.clone(), Scalar::one(&k)]).unwrap();
        let b = SkewPolynomial::from_coeffs(&k, vec![Scalar::one(&k), g.clone(), Scalar::one(&k)])
            .unwrap();
        let c = SkewPolynomial::from_coeffs(&k, vec![g.clone(), g.clone()]).unwrap();
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        // Distributivity.
        assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
    }
}
