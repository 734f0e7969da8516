//! The built-in skew fields and their elements.
//!
//! Three coefficient fields are supported, each bundled with a distinguished
//! automorphism `σ` and an optional inner derivation `δ_c(x) = c·x − σ(x)·c`:
//!
//! * finite fields `F_{p^n} = F_p[g]/(m(g))` with `σ(x) = x^(p^k)`,
//! * the Gaussian rationals `ℚ(i)` with `σ` either complex conjugation or the
//!   identity,
//! * the rational quaternions `ℍ(ℚ)` with `σ = id`.
//!
//! A [`FieldDescriptor`] freezes one such choice; elements ([`Scalar`])
//! carry an `Arc` of their descriptor so mixed-field arithmetic is detected.
//! [`LinearOperator`] exposes the additive structure of the field over its
//! base subfield (`F_p` or `ℚ`), which is where centralizers, evaluation
//! operators, and the metro equation solver do their work.

use std::fmt;
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed, Zero};
use rand::Rng;
use thiserror::Error;

use crate::fppoly;
use crate::linalg::{BaseField, Fp, Mat, Rationals, Solve};

/// Shared handle to a field description.
pub type FieldRef = Arc<FieldDescriptor>;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("cannot parse element: {0}")]
    Parse(String),
    #[error("field is infinite")]
    InfiniteField,
    #[error("{0}")]
    TooLarge(String),
}

/// Which automorphism the Gaussian rationals carry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GaussianSigma {
    Conjugation,
    Identity,
}

/// The defining data of a built-in field (without the derivation).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FieldKind {
    /// `F_p[g]/(modulus)`, coefficients low-degree first, `σ(x) = x^(p^k)`
    /// with `k = frobenius_power`.
    FiniteField {
        p: u64,
        modulus: Vec<u64>,
        frobenius_power: u64,
    },
    Gaussian {
        sigma: GaussianSigma,
    },
    Quaternions,
}

/// Coordinates of an element over the base subfield: `g`-power coordinates
/// in `F_p` for finite fields, `(re, im)` or `(re, i, j, k)` rational
/// coordinates otherwise.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) enum Coords {
    Fp(Vec<u64>),
    Rat(Vec<BigRational>),
}

/// A field together with its automorphism and optional inner derivation.
#[derive(Debug)]
pub struct FieldDescriptor {
    kind: FieldKind,
    derivation: Option<Coords>,
    /// `σ(g^i)` for finite fields, padded to length `n`; empty otherwise.
    sigma_images: Vec<Vec<u64>>,
    /// Same for `σ⁻¹`.
    sigma_inv_images: Vec<Vec<u64>>,
}

impl PartialEq for FieldDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.derivation == other.derivation
    }
}

impl Eq for FieldDescriptor {}

impl std::hash::Hash for FieldDescriptor {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.kind.hash(state);
        self.derivation.hash(state);
    }
}

impl PartialOrd for FieldDescriptor {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldDescriptor {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.kind, &self.derivation).cmp(&(&other.kind, &other.derivation))
    }
}

fn pad(mut v: Vec<u64>, n: usize) -> Vec<u64> {
    v.resize(n, 0);
    v
}

impl FieldDescriptor {
    /// `F_p[g]/(modulus)` with `σ(x) = x^(p^k)`. The modulus is given
    /// low-degree first, must be monic irreducible with coefficients already
    /// reduced mod `p`, and `k` is taken modulo the extension degree.
    pub fn finite_field(
        p: u64,
        modulus: &[u64],
        frobenius_power: u64,
    ) -> Result<FieldRef, ScalarError> {
        if p >= 1 << 32 {
            return Err(ScalarError::InvalidField(
                "characteristic must be below 2^32".into(),
            ));
        }
        if !crate::intops::is_prime_u64(p) {
            return Err(ScalarError::InvalidField(format!("{p} is not prime")));
        }
        if modulus.len() < 2 {
            return Err(ScalarError::InvalidField(
                "modulus must have degree at least 1".into(),
            ));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(ScalarError::InvalidField(
                "modulus coefficients must be reduced mod p".into(),
            ));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(ScalarError::InvalidField("modulus must be monic".into()));
        }
        let f = Fp::new(p);
        if !fppoly::is_irreducible(&f, modulus) {
            return Err(ScalarError::InvalidField(
                "modulus is reducible over F_p".into(),
            ));
        }
        let n = modulus.len() - 1;
        let k = frobenius_power % n as u64;
        let kind = FieldKind::FiniteField {
            p,
            modulus: modulus.to_vec(),
            frobenius_power: k,
        };
        Ok(Arc::new(Self::build(kind, None)))
    }

    pub fn gaussian(sigma: GaussianSigma) -> FieldRef {
        Arc::new(Self::build(FieldKind::Gaussian { sigma }, None))
    }

    pub fn quaternions() -> FieldRef {
        Arc::new(Self::build(FieldKind::Quaternions, None))
    }

    fn build(kind: FieldKind, derivation: Option<Coords>) -> FieldDescriptor {
        let (sigma_images, sigma_inv_images) = match &kind {
            FieldKind::FiniteField {
                p,
                modulus,
                frobenius_power,
            } => {
                let n = modulus.len() - 1;
                let f = Fp::new(*p);
                let images = |steps: u64| -> Vec<Vec<u64>> {
                    // s = g^(p^steps), then images of g^i are s^i.
                    let mut s = fppoly::rem(&f, &[0, 1], modulus);
                    for _ in 0..steps {
                        s = fppoly::powmod(&f, &s, *p, modulus);
                    }
                    let mut acc = vec![1u64];
                    let mut out = Vec::with_capacity(n);
                    for _ in 0..n {
                        out.push(pad(acc.clone(), n));
                        acc = fppoly::rem(&f, &fppoly::mul(&f, &acc, &s), modulus);
                    }
                    out
                };
                let inv_steps = (n as u64 - frobenius_power) % n as u64;
                (images(*frobenius_power), images(inv_steps))
            }
            _ => (Vec::new(), Vec::new()),
        };
        FieldDescriptor {
            kind,
            derivation,
            sigma_images,
            sigma_inv_images,
        }
    }

    /// Attach the inner derivation `δ_c(x) = c·x − σ(x)·c`. When `δ_c`
    /// vanishes identically (for example any central `c` under `σ = id`) the
    /// returned field carries no derivation at all, so trivially-derived
    /// fields compare equal to underived ones.
    pub fn with_inner_derivation(self: &Arc<Self>, c: &Scalar) -> Result<FieldRef, ScalarError> {
        if c.field.kind != self.kind {
            return Err(ScalarError::MixedFields);
        }
        let candidate = Arc::new(FieldDescriptor {
            kind: self.kind.clone(),
            derivation: Some(c.coords.clone()),
            sigma_images: self.sigma_images.clone(),
            sigma_inv_images: self.sigma_inv_images.clone(),
        });
        let trivial = candidate.basis().iter().all(|e| e.delta().is_zero());
        if trivial {
            Ok(self.without_derivation())
        } else {
            Ok(candidate)
        }
    }

    pub fn without_derivation(self: &Arc<Self>) -> FieldRef {
        if self.derivation.is_none() {
            return self.clone();
        }
        Arc::new(FieldDescriptor {
            kind: self.kind.clone(),
            derivation: None,
            sigma_images: self.sigma_images.clone(),
            sigma_inv_images: self.sigma_inv_images.clone(),
        })
    }

    pub fn kind(&self) -> &FieldKind {
        &self.kind
    }

    pub fn has_derivation(&self) -> bool {
        self.derivation.is_some()
    }

    pub fn derivation_scalar(self: &Arc<Self>) -> Option<Scalar> {
        self.derivation.as_ref().map(|c| Scalar {
            field: self.clone(),
            coords: c.clone(),
        })
    }

    /// `p` for finite fields, `0` in characteristic zero.
    pub fn characteristic(&self) -> u64 {
        match &self.kind {
            FieldKind::FiniteField { p, .. } => *p,
            _ => 0,
        }
    }

    /// Dimension over the base subfield (`F_p` or `ℚ`).
    pub fn base_dim(&self) -> usize {
        match &self.kind {
            FieldKind::FiniteField { modulus, .. } => modulus.len() - 1,
            FieldKind::Gaussian { .. } => 2,
            FieldKind::Quaternions => 4,
        }
    }

    /// Number of elements, when finite and representable.
    pub fn order(&self) -> Option<u128> {
        match &self.kind {
            FieldKind::FiniteField { p, modulus, .. } => {
                (*p as u128).checked_pow((modulus.len() - 1) as u32)
            }
            _ => None,
        }
    }

    /// Multiplicative order of `σ`.
    pub(crate) fn sigma_order(&self) -> u64 {
        match &self.kind {
            FieldKind::FiniteField {
                modulus,
                frobenius_power,
                ..
            } => {
                let n = (modulus.len() - 1) as u64;
                n / gcd_u64(n, *frobenius_power)
            }
            FieldKind::Gaussian {
                sigma: GaussianSigma::Conjugation,
            } => 2,
            _ => 1,
        }
    }

    /// Basis over the base subfield: powers of `g`, `{1, i}`, or
    /// `{1, i, j, k}`.
    pub fn basis(self: &Arc<Self>) -> Vec<Scalar> {
        let n = self.base_dim();
        (0..n)
            .map(|i| {
                let coords = match &self.kind {
                    FieldKind::FiniteField { .. } => {
                        let mut v = vec![0u64; n];
                        v[i] = 1;
                        Coords::Fp(v)
                    }
                    _ => {
                        let mut v = vec![BigRational::zero(); n];
                        v[i] = BigRational::one();
                        Coords::Rat(v)
                    }
                };
                Scalar {
                    field: self.clone(),
                    coords,
                }
            })
            .collect()
    }

    /// Every element, for finite fields of at most 2^16 elements.
    pub fn elements(self: &Arc<Self>) -> Result<Vec<Scalar>, ScalarError> {
        let (p, n) = match &self.kind {
            FieldKind::FiniteField { p, modulus, .. } => (*p, modulus.len() - 1),
            _ => return Err(ScalarError::InfiniteField),
        };
        let order = self.order().ok_or(ScalarError::InfiniteField)?;
        if order > 1 << 16 {
            return Err(ScalarError::TooLarge(format!(
                "enumerating {order} elements exceeds the 2^16 cap"
            )));
        }
        let mut out = Vec::with_capacity(order as usize);
        let mut counter = vec![0u64; n];
        loop {
            out.push(Scalar {
                field: self.clone(),
                coords: Coords::Fp(counter.clone()),
            });
            let mut i = 0;
            loop {
                if i == n {
                    return Ok(out);
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

    /// Every nonzero element, with the same size cap as [`Self::elements`].
    pub fn units(self: &Arc<Self>) -> Result<Vec<Scalar>, ScalarError> {
        Ok(self
            .elements()?
            .into_iter()
            .filter(|x| !x.is_zero())
            .collect())
    }

    fn fq_params(&self) -> (Fp, &[u64], usize) {
        match &self.kind {
            FieldKind::FiniteField { p, modulus, .. } => {
                (Fp::new(*p), modulus.as_slice(), modulus.len() - 1)
            }
            _ => unreachable!("finite-field operation on a characteristic-zero field"),
        }
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

fn pow_u128(base: u64, exp: u32) -> Option<u128> {
    (base as u128).checked_pow(exp)
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            FieldKind::FiniteField {
                p,
                modulus,
                frobenius_power,
            } => {
                let n = (modulus.len() - 1) as u32;
                match pow_u128(*p, n) {
                    Some(q) => write!(f, "F_{q}")?,
                    None => write!(f, "F_({p}^{n})")?,
                }
                if *frobenius_power == 0 {
                    write!(f, ", sigma = id")?;
                } else {
                    match pow_u128(*p, *frobenius_power as u32) {
                        Some(e) => write!(f, ", sigma = x^{e}")?,
                        None => write!(f, ", sigma = x^({p}^{frobenius_power})")?,
                    }
                }
            }
            FieldKind::Gaussian { sigma } => {
                let s = match sigma {
                    GaussianSigma::Conjugation => "conj",
                    GaussianSigma::Identity => "id",
                };
                write!(f, "Q(i), sigma = {s}")?;
            }
            FieldKind::Quaternions => write!(f, "H(Q)")?,
        }
        if let Some(c) = &self.derivation {
            write!(f, ", delta = inner({})", format_element(&self.kind, c))?;
        }
        Ok(())
    }
}

/// An element of one of the built-in fields.
#[derive(Clone)]
pub struct Scalar {
    field: FieldRef,
    coords: Coords,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.same_field(other)
    }
}

impl Eq for Scalar {}

impl std::hash::Hash for Scalar {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coords
            .cmp(&other.coords)
            .then_with(|| self.field.cmp(&other.field))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.field)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_element(&self.field.kind, &self.coords))
    }
}

impl Scalar {
    pub(crate) fn from_coords(field: FieldRef, coords: Coords) -> Scalar {
        Scalar { field, coords }
    }

    pub fn zero(field: &FieldRef) -> Scalar {
        let coords = match &field.kind {
            FieldKind::FiniteField { .. } => Coords::Fp(vec![0; field.base_dim()]),
            _ => Coords::Rat(vec![BigRational::zero(); field.base_dim()]),
        };
        Scalar {
            field: field.clone(),
            coords,
        }
    }

    pub fn one(field: &FieldRef) -> Scalar {
        Scalar::from_i64(field, 1)
    }

    /// Image of an integer in the prime subfield (resp. in `ℚ ⊆ K`).
    pub fn from_i64(field: &FieldRef, v: i64) -> Scalar {
        let mut out = Scalar::zero(field);
        match &mut out.coords {
            Coords::Fp(c) => {
                let f = Fp::new(field.characteristic());
                c[0] = f.reduce_i64(v);
            }
            Coords::Rat(c) => c[0] = BigRational::from(BigInt::from(v)),
        }
        out
    }

    /// Image of a rational number; fails in positive characteristic when the
    /// denominator reduces to zero.
    pub fn from_rational(field: &FieldRef, q: &BigRational) -> Result<Scalar, ScalarError> {
        match &field.kind {
            FieldKind::FiniteField { p, .. } => {
                let f = Fp::new(*p);
                let p_big = BigInt::from(*p);
                let modred = |v: &BigInt| -> u64 {
                    let r = ((v % &p_big) + &p_big) % &p_big;
                    // r ∈ [0, p): fits u64 because p does.
                    u64::try_from(&r).unwrap()
                };
                let den = modred(q.denom());
                let num = modred(q.numer());
                let inv = f.inv(&den).ok_or(ScalarError::DivisionByZero)?;
                let mut out = Scalar::zero(field);
                if let Coords::Fp(c) = &mut out.coords {
                    c[0] = f.mul(&num, &inv);
                }
                Ok(out)
            }
            _ => {
                let mut out = Scalar::zero(field);
                if let Coords::Rat(c) = &mut out.coords {
                    c[0] = q.clone();
                }
                Ok(out)
            }
        }
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub(crate) fn coords(&self) -> &Coords {
        &self.coords
    }

    pub(crate) fn fp_coords(&self) -> &[u64] {
        match &self.coords {
            Coords::Fp(c) => c,
            Coords::Rat(_) => unreachable!("rational coordinates in a finite field context"),
        }
    }

    pub(crate) fn rat_coords(&self) -> &[BigRational] {
        match &self.coords {
            Coords::Rat(c) => c,
            Coords::Fp(_) => unreachable!("finite-field coordinates in a rational context"),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.coords {
            Coords::Fp(c) => c.iter().all(|&x| x == 0),
            Coords::Rat(c) => c.iter().all(Zero::is_zero),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Scalar::one(&self.field)
    }

    fn same_field(&self, other: &Scalar) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || self.field == other.field
    }

    fn expect_same_field(&self, other: &Scalar) {
        assert!(
            self.same_field(other),
            "mixed-field arithmetic: {} vs {}",
            self.field,
            other.field
        );
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        if !self.same_field(other) {
            return Err(ScalarError::MixedFields);
        }
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        if !self.same_field(other) {
            return Err(ScalarError::MixedFields);
        }
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        if !self.same_field(other) {
            return Err(ScalarError::MixedFields);
        }
        Ok(self * other)
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        if !self.same_field(other) {
            return Err(ScalarError::MixedFields);
        }
        Ok(self * &other.inv()?)
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let coords = match (&self.field.kind, &self.coords) {
            (FieldKind::FiniteField { .. }, Coords::Fp(a)) => {
                let (f, m, n) = self.field.fq_params();
                let inv = fppoly::inv_mod(&f, a, m).expect("nonzero element of a field");
                Coords::Fp(pad(inv, n))
            }
            (FieldKind::Gaussian { .. }, Coords::Rat(a)) => {
                let norm = &a[0] * &a[0] + &a[1] * &a[1];
                Coords::Rat(vec![&a[0] / &norm, -&a[1] / &norm])
            }
            (FieldKind::Quaternions, Coords::Rat(a)) => {
                let norm: BigRational = a.iter().map(|x| x * x).sum();
                let mut v: Vec<BigRational> = a.iter().map(|x| -(x / &norm)).collect();
                v[0] = -v[0].clone();
                Coords::Rat(v)
            }
            _ => unreachable!("coordinate kind matches field kind"),
        };
        Ok(Scalar {
            field: self.field.clone(),
            coords,
        })
    }

    /// The distinguished automorphism.
    pub fn sigma(&self) -> Scalar {
        let coords = match (&self.field.kind, &self.coords) {
            (FieldKind::FiniteField { .. }, Coords::Fp(a)) => {
                Coords::Fp(fq_linear_map(&self.field, &self.field.sigma_images, a))
            }
            (FieldKind::Gaussian { sigma }, Coords::Rat(a)) => match sigma {
                GaussianSigma::Conjugation => Coords::Rat(vec![a[0].clone(), -&a[1]]),
                GaussianSigma::Identity => self.coords.clone(),
            },
            (FieldKind::Quaternions, Coords::Rat(_)) => self.coords.clone(),
            _ => unreachable!("coordinate kind matches field kind"),
        };
        Scalar {
            field: self.field.clone(),
            coords,
        }
    }

    pub fn sigma_inv(&self) -> Scalar {
        let coords = match (&self.field.kind, &self.coords) {
            (FieldKind::FiniteField { .. }, Coords::Fp(a)) => {
                Coords::Fp(fq_linear_map(&self.field, &self.field.sigma_inv_images, a))
            }
            _ => return self.sigma_pow(-1),
        };
        Scalar {
            field: self.field.clone(),
            coords,
        }
    }

    /// `σ^e` for any integer `e`, reduced modulo the order of `σ`.
    pub fn sigma_pow(&self, e: i64) -> Scalar {
        let ord = self.field.sigma_order() as i64;
        let mut r = e.rem_euclid(ord);
        // One cached application of σ⁻¹ beats ord−1 applications of σ.
        if r == ord - 1 && r > 1 {
            return self.sigma_inv();
        }
        let mut out = self.clone();
        while r > 0 {
            out = out.sigma();
            r -= 1;
        }
        out
    }

    /// The inner derivation `δ(x) = c·x − σ(x)·c`, or zero when the field
    /// carries none.
    pub fn delta(&self) -> Scalar {
        match self.field.derivation_scalar() {
            None => Scalar::zero(&self.field),
            Some(c) => &(&c * self) - &(&self.sigma() * &c),
        }
    }

    /// Standard involution in characteristic zero: complex or quaternion
    /// conjugation. Not defined for finite fields.
    pub(crate) fn conj(&self) -> Scalar {
        let coords = match (&self.field.kind, &self.coords) {
            (FieldKind::Gaussian { .. }, Coords::Rat(a)) => Coords::Rat(vec![a[0].clone(), -&a[1]]),
            (FieldKind::Quaternions, Coords::Rat(a)) => {
                Coords::Rat(vec![a[0].clone(), -&a[1], -&a[2], -&a[3]])
            }
            _ => unreachable!("conjugation requested in positive characteristic"),
        };
        Scalar {
            field: self.field.clone(),
            coords,
        }
    }

    /// `x·conj(x)` as a rational number (characteristic zero only).
    pub(crate) fn norm_rat(&self) -> BigRational {
        self.rat_coords().iter().map(|x| x * x).sum()
    }

    /// Rational coordinate of `1` (characteristic zero only).
    pub(crate) fn re_rat(&self) -> BigRational {
        self.rat_coords()[0].clone()
    }

    /// Whether the element lies in the rational (resp. real) part: all
    /// non-leading coordinates vanish. In `ℍ(ℚ)` this is exactly the center.
    pub(crate) fn is_rational_part(&self) -> bool {
        self.rat_coords()[1..].iter().all(Zero::is_zero)
    }

    /// Uniformly random element of a finite field; in characteristic zero a
    /// rational element with small numerators and denominators.
    pub fn sample<R: Rng + ?Sized>(field: &FieldRef, rng: &mut R) -> Scalar {
        let n = field.base_dim();
        let coords = match &field.kind {
            FieldKind::FiniteField { p, .. } => {
                Coords::Fp((0..n).map(|_| rng.gen_range(0..*p)).collect())
            }
            _ => Coords::Rat(
                (0..n)
                    .map(|_| {
                        BigRational::new(
                            BigInt::from(rng.gen_range(-9i64..=9)),
                            BigInt::from(rng.gen_range(1i64..=4)),
                        )
                    })
                    .collect(),
            ),
        };
        Scalar {
            field: field.clone(),
            coords,
        }
    }

    /// Parse an element literal. Finite fields accept a polynomial in `g`
    /// (`g^3+2*g+1`) or a low-degree-first coordinate vector (`[1,2,0,1]`);
    /// the characteristic-zero fields accept signed rational combinations of
    /// their units (`3/2+5/7i`, `1-2i+3j-4/5k`).
    pub fn parse(field: &FieldRef, s: &str) -> Result<Scalar, ScalarError> {
        let coords = match &field.kind {
            FieldKind::FiniteField { .. } => Coords::Fp(parse_fq(field, s)?),
            FieldKind::Gaussian { .. } => Coords::Rat(parse_char0(&["i"], s)?),
            FieldKind::Quaternions => Coords::Rat(parse_char0(&["i", "j", "k"], s)?),
        };
        Ok(Scalar {
            field: field.clone(),
            coords,
        })
    }
}

fn fq_linear_map(field: &FieldDescriptor, images: &[Vec<u64>], a: &[u64]) -> Vec<u64> {
    let (f, _, n) = field.fq_params();
    let mut out = vec![0u64; n];
    for (i, &ci) in a.iter().enumerate() {
        if ci == 0 {
            continue;
        }
        for (j, &im) in images[i].iter().enumerate() {
            out[j] = f.add(&out[j], &f.mul(&ci, &im));
        }
    }
    out
}

impl std::ops::Add for &Scalar {
    type Output = Scalar;
    fn add(self, other: &Scalar) -> Scalar {
        self.expect_same_field(other);
        let coords = match (&self.coords, &other.coords) {
            (Coords::Fp(a), Coords::Fp(b)) => {
                let f = Fp::new(self.field.characteristic());
                Coords::Fp(a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect())
            }
            (Coords::Rat(a), Coords::Rat(b)) => {
                Coords::Rat(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            _ => unreachable!("same field implies same coordinate kind"),
        };
        Scalar {
            field: self.field.clone(),
            coords,
        }
    }
}

impl std::ops::Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, other: &Scalar) -> Scalar {
        self + &(-other)
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let coords = match &self.coords {
            Coords::Fp(a) => {
                let f = Fp::new(self.field.characteristic());
                Coords::Fp(a.iter().map(|x| f.neg(x)).collect())
            }
            Coords::Rat(a) => Coords::Rat(a.iter().map(|x| -x).collect()),
        };
        Scalar {
            field: self.field.clone(),
            coords,
        }
    }
}

impl std::ops::Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, other: &Scalar) -> Scalar {
        self.expect_same_field(other);
        let coords = match (&self.field.kind, &self.coords, &other.coords) {
            (FieldKind::FiniteField { .. }, Coords::Fp(a), Coords::Fp(b)) => {
                let (f, m, n) = self.field.fq_params();
                Coords::Fp(pad(fppoly::rem(&f, &fppoly::mul(&f, a, b), m), n))
            }
            (FieldKind::Gaussian { .. }, Coords::Rat(a), Coords::Rat(b)) => Coords::Rat(vec![
                &a[0] * &b[0] - &a[1] * &b[1],
                &a[0] * &b[1] + &a[1] * &b[0],
            ]),
            (FieldKind::Quaternions, Coords::Rat(a), Coords::Rat(b)) => Coords::Rat(vec![
                &a[0] * &b[0] - &a[1] * &b[1] - &a[2] * &b[2] - &a[3] * &b[3],
                &a[0] * &b[1] + &a[1] * &b[0] + &a[2] * &b[3] - &a[3] * &b[2],
                &a[0] * &b[2] - &a[1] * &b[3] + &a[2] * &b[0] + &a[3] * &b[1],
                &a[0] * &b[3] + &a[1] * &b[2] - &a[2] * &b[1] + &a[3] * &b[0],
            ]),
            _ => unreachable!("same field implies same coordinate kind"),
        };
        Scalar {
            field: self.field.clone(),
            coords,
        }
    }
}

impl std::ops::Add for Scalar {
    type Output = Scalar;
    fn add(self, other: Scalar) -> Scalar {
        &self + &other
    }
}

impl std::ops::Sub for Scalar {
    type Output = Scalar;
    fn sub(self, other: Scalar) -> Scalar {
        &self - &other
    }
}

impl std::ops::Mul for Scalar {
    type Output = Scalar;
    fn mul(self, other: Scalar) -> Scalar {
        &self * &other
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

// ---------------------------------------------------------------------------
// Element formatting and parsing
// ---------------------------------------------------------------------------

fn format_element(kind: &FieldKind, coords: &Coords) -> String {
    match (kind, coords) {
        (FieldKind::FiniteField { .. }, Coords::Fp(c)) => format_fq(c),
        (FieldKind::Gaussian { .. }, Coords::Rat(c)) => format_char0(&["", "i"], c),
        (FieldKind::Quaternions, Coords::Rat(c)) => format_char0(&["", "i", "j", "k"], c),
        _ => unreachable!("coordinate kind matches field kind"),
    }
}

fn format_fq(coords: &[u64]) -> String {
    let mut terms = Vec::new();
    for i in (0..coords.len()).rev() {
        let c = coords[i];
        if c == 0 {
            continue;
        }
        terms.push(match (i, c) {
            (0, c) => format!("{c}"),
            (1, 1) => "g".to_string(),
            (1, c) => format!("{c}*g"),
            (i, 1) => format!("g^{i}"),
            (i, c) => format!("{c}*g^{i}"),
        });
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

fn format_char0(units: &[&str], coords: &[BigRational]) -> String {
    let mut out = String::new();
    for (unit, c) in units.iter().zip(coords) {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        let mag = c.abs();
        if unit.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(unit);
        } else {
            out.push_str(&mag.to_string());
            out.push_str(unit);
        }
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

/// Split a whitespace-free literal into sign/term pairs at top-level `+`/`-`.
fn split_signed_terms(s: &str) -> Result<Vec<(bool, String)>, ScalarError> {
    if s.is_empty() {
        return Err(ScalarError::Parse("empty element literal".into()));
    }
    let bytes = s.as_bytes();
    let mut terms = Vec::new();
    let mut neg = false;
    let mut start = 0;
    if bytes[0] == b'+' || bytes[0] == b'-' {
        neg = bytes[0] == b'-';
        start = 1;
    }
    let mut i = start;
    while i < bytes.len() {
        if bytes[i] == b'+' || bytes[i] == b'-' {
            if i == start {
                return Err(ScalarError::Parse(format!("empty term in `{s}`")));
            }
            terms.push((neg, s[start..i].to_string()));
            neg = bytes[i] == b'-';
            start = i + 1;
        }
        i += 1;
    }
    if start >= s.len() {
        return Err(ScalarError::Parse(format!("dangling sign in `{s}`")));
    }
    terms.push((neg, s[start..].to_string()));
    Ok(terms)
}

fn parse_fq(field: &FieldRef, input: &str) -> Result<Vec<u64>, ScalarError> {
    let (f, modulus, n) = field.fq_params();
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(body) = s.strip_prefix('[') {
        let body = body
            .strip_suffix(']')
            .ok_or_else(|| ScalarError::Parse(format!("unterminated `[` in `{input}`")))?;
        let mut coeffs = Vec::new();
        if !body.is_empty() {
            for part in body.split(',') {
                let v: i64 = part
                    .parse()
                    .map_err(|_| ScalarError::Parse(format!("bad coefficient `{part}`")))?;
                coeffs.push(f.reduce_i64(v));
            }
        }
        return Ok(pad(fppoly::rem(&f, &coeffs, modulus), n));
    }
    let mut acc: Vec<u64> = Vec::new();
    for (neg, term) in split_signed_terms(&s)? {
        let (coeff_str, exp) = match term.find('g') {
            None => (term.as_str(), None),
            Some(pos) => {
                let tail = &term[pos + 1..];
                let exp = if tail.is_empty() {
                    1u64
                } else {
                    let digits = tail.strip_prefix('^').ok_or_else(|| {
                        ScalarError::Parse(format!("expected `^` after g in `{term}`"))
                    })?;
                    digits
                        .parse()
                        .map_err(|_| ScalarError::Parse(format!("bad exponent `{digits}`")))?
                };
                let head = term[..pos].strip_suffix('*').unwrap_or(&term[..pos]);
                (head, Some(exp))
            }
        };
        let mut coeff = if coeff_str.is_empty() {
            if exp.is_none() {
                return Err(ScalarError::Parse(format!("empty term in `{input}`")));
            }
            1 % f.p
        } else {
            let v: u64 = coeff_str
                .parse()
                .map_err(|_| ScalarError::Parse(format!("bad coefficient `{coeff_str}`")))?;
            v % f.p
        };
        if neg {
            coeff = f.neg(&coeff);
        }
        let monomial = match exp {
            None => vec![coeff],
            Some(e) => {
                let ge = fppoly::powmod(&f, &[0, 1], e, modulus);
                fppoly::mul(&f, &[coeff], &ge)
            }
        };
        acc = fppoly::add(&f, &acc, &monomial);
    }
    Ok(pad(fppoly::rem(&f, &acc, modulus), n))
}

fn parse_char0(units: &[&str], input: &str) -> Result<Vec<BigRational>, ScalarError> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    let mut coords = vec![BigRational::zero(); units.len() + 1];
    for (neg, term) in split_signed_terms(&s)? {
        let (slot, digits) = match units.iter().position(|u| term.ends_with(u)) {
            Some(idx) => {
                let head = &term[..term.len() - 1];
                let head = head.strip_suffix('*').unwrap_or(head);
                (idx + 1, head)
            }
            None => (0, term.as_str()),
        };
        let value = if slot > 0 && digits.is_empty() {
            BigRational::one()
        } else {
            parse_rational(digits)
                .ok_or_else(|| ScalarError::Parse(format!("bad term `{term}`")))?
        };
        let value = if neg { -value } else { value };
        coords[slot] += value;
    }
    Ok(coords)
}

fn parse_rational(s: &str) -> Option<BigRational> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit() || b == b'/') {
        return None;
    }
    let (num, den) = match s.split_once('/') {
        None => (s, "1"),
        Some((n, d)) => (n, d),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

// ---------------------------------------------------------------------------
// Base-field-linear operators
// ---------------------------------------------------------------------------

/// Result of solving a linear equation over the base subfield.
#[derive(Clone, Debug, PartialEq)]
pub enum SolveStatus {
    Unique(Scalar),
    /// A solution among infinitely (resp. several) many.
    NonUnique(Scalar),
    NoSolution,
}

#[derive(Clone, Debug, PartialEq)]
enum OpMat {
    Fp(Mat<Fp>),
    Rat(Mat<Rationals>),
}

/// A base-subfield-linear map `K → K`, stored as a matrix in the coordinate
/// basis. Left/right multiplications, `σ`, and `δ` are all of this shape, and
/// composing them yields the operators behind centralizers, the metro
/// equation, and rational-function evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearOperator {
    field: FieldRef,
    mat: OpMat,
}

impl LinearOperator {
    fn from_matrix(field: &FieldRef, mat: OpMat) -> Self {
        LinearOperator {
            field: field.clone(),
            mat,
        }
    }

    fn from_columns(field: &FieldRef, images: &[Scalar]) -> Self {
        let mat = match &field.kind {
            FieldKind::FiniteField { p, .. } => {
                let cols: Vec<Vec<u64>> = images.iter().map(|s| s.fp_coords().to_vec()).collect();
                OpMat::Fp(Mat::from_columns(Fp::new(*p), &cols))
            }
            _ => {
                let cols: Vec<Vec<BigRational>> =
                    images.iter().map(|s| s.rat_coords().to_vec()).collect();
                OpMat::Rat(Mat::from_columns(Rationals, &cols))
            }
        };
        Self::from_matrix(field, mat)
    }

    /// Operator with prescribed images of the coordinate basis.
    pub fn from_basis_images(field: &FieldRef, images: &[Scalar]) -> Result<Self, ScalarError> {
        if images.len() != field.base_dim() {
            return Err(ScalarError::InvalidField(format!(
                "expected {} basis images, got {}",
                field.base_dim(),
                images.len()
            )));
        }
        for im in images {
            if im.field() != field {
                return Err(ScalarError::MixedFields);
            }
        }
        Ok(Self::from_columns(field, images))
    }

    pub fn identity(field: &FieldRef) -> Self {
        let n = field.base_dim();
        let mat = match &field.kind {
            FieldKind::FiniteField { p, .. } => OpMat::Fp(Mat::identity(Fp::new(*p), n)),
            _ => OpMat::Rat(Mat::identity(Rationals, n)),
        };
        Self::from_matrix(field, mat)
    }

    pub fn zero(field: &FieldRef) -> Self {
        let n = field.base_dim();
        let mat = match &field.kind {
            FieldKind::FiniteField { p, .. } => OpMat::Fp(Mat::zero(Fp::new(*p), n, n)),
            _ => OpMat::Rat(Mat::zero(Rationals, n, n)),
        };
        Self::from_matrix(field, mat)
    }

    pub fn sigma(field: &FieldRef) -> Self {
        let images: Vec<Scalar> = field.basis().iter().map(Scalar::sigma).collect();
        Self::from_columns(field, &images)
    }

    pub fn delta(field: &FieldRef) -> Self {
        let images: Vec<Scalar> = field.basis().iter().map(Scalar::delta).collect();
        Self::from_columns(field, &images)
    }

    /// `x ↦ a·x`.
    pub fn left_mul(a: &Scalar) -> Self {
        let field = a.field().clone();
        let images: Vec<Scalar> = field.basis().iter().map(|e| a * e).collect();
        Self::from_columns(&field, &images)
    }

    /// `x ↦ x·a`.
    pub fn right_mul(a: &Scalar) -> Self {
        let field = a.field().clone();
        let images: Vec<Scalar> = field.basis().iter().map(|e| e * a).collect();
        Self::from_columns(&field, &images)
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn apply(&self, x: &Scalar) -> Scalar {
        assert!(
            x.field() == &self.field,
            "operator applied to an element of a different field"
        );
        let coords = match (&self.mat, x.coords()) {
            (OpMat::Fp(m), Coords::Fp(c)) => Coords::Fp(m.apply(c)),
            (OpMat::Rat(m), Coords::Rat(c)) => Coords::Rat(m.apply(c)),
            _ => unreachable!("same field implies same coordinate kind"),
        };
        Scalar::from_coords(self.field.clone(), coords)
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        assert!(self.field == other.field, "operators over different fields");
        let mat = match (&self.mat, &other.mat) {
            (OpMat::Fp(a), OpMat::Fp(b)) => OpMat::Fp(a.matmul(b)),
            (OpMat::Rat(a), OpMat::Rat(b)) => OpMat::Rat(a.matmul(b)),
            _ => unreachable!("same field implies same matrix kind"),
        };
        Self::from_matrix(&self.field, mat)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.field == other.field, "operators over different fields");
        let mat = match (&self.mat, &other.mat) {
            (OpMat::Fp(a), OpMat::Fp(b)) => OpMat::Fp(a.add(b)),
            (OpMat::Rat(a), OpMat::Rat(b)) => OpMat::Rat(a.add(b)),
            _ => unreachable!("same field implies same matrix kind"),
        };
        Self::from_matrix(&self.field, mat)
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert!(self.field == other.field, "operators over different fields");
        let mat = match (&self.mat, &other.mat) {
            (OpMat::Fp(a), OpMat::Fp(b)) => OpMat::Fp(a.sub(b)),
            (OpMat::Rat(a), OpMat::Rat(b)) => OpMat::Rat(a.sub(b)),
            _ => unreachable!("same field implies same matrix kind"),
        };
        Self::from_matrix(&self.field, mat)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mat = match &self.mat {
            OpMat::Fp(m) => OpMat::Fp(m.pow(k)),
            OpMat::Rat(m) => OpMat::Rat(m.pow(k)),
        };
        Self::from_matrix(&self.field, mat)
    }

    pub fn is_nonsingular(&self) -> bool {
        match &self.mat {
            OpMat::Fp(m) => m.is_nonsingular(),
            OpMat::Rat(m) => m.is_nonsingular(),
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        let mat = match &self.mat {
            OpMat::Fp(m) => OpMat::Fp(m.inverse()?),
            OpMat::Rat(m) => OpMat::Rat(m.inverse()?),
        };
        Some(Self::from_matrix(&self.field, mat))
    }

    pub fn rank(&self) -> usize {
        match &self.mat {
            OpMat::Fp(m) => m.rank(),
            OpMat::Rat(m) => m.rank(),
        }
    }

    pub fn solve(&self, rhs: &Scalar) -> SolveStatus {
        assert!(
            rhs.field() == &self.field,
            "right-hand side from a different field"
        );
        match (&self.mat, rhs.coords()) {
            (OpMat::Fp(m), Coords::Fp(c)) => match m.solve(c) {
                Solve::Unique(x) => {
                    SolveStatus::Unique(Scalar::from_coords(self.field.clone(), Coords::Fp(x)))
                }
                Solve::Underdetermined(x) => {
                    SolveStatus::NonUnique(Scalar::from_coords(self.field.clone(), Coords::Fp(x)))
                }
                Solve::Inconsistent => SolveStatus::NoSolution,
            },
            (OpMat::Rat(m), Coords::Rat(c)) => match m.solve(c) {
                Solve::Unique(x) => {
                    SolveStatus::Unique(Scalar::from_coords(self.field.clone(), Coords::Rat(x)))
                }
                Solve::Underdetermined(x) => {
                    SolveStatus::NonUnique(Scalar::from_coords(self.field.clone(), Coords::Rat(x)))
                }
                Solve::Inconsistent => SolveStatus::NoSolution,
            },
            _ => unreachable!("same field implies same coordinate kind"),
        }
    }

    pub fn nullspace_basis(&self) -> Vec<Scalar> {
        match &self.mat {
            OpMat::Fp(m) => m
                .nullspace()
                .into_iter()
                .map(|v| Scalar::from_coords(self.field.clone(), Coords::Fp(v)))
                .collect(),
            OpMat::Rat(m) => m
                .nullspace()
                .into_iter()
                .map(|v| Scalar::from_coords(self.field.clone(), Coords::Rat(v)))
                .collect(),
        }
    }
}
