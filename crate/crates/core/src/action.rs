//! `(σ, δ)`-conjugation. A nonzero `b` acts on `a` by
//! `^b a = σ(b)·a·b⁻¹ + δ(b)·b⁻¹`; this is exactly the change of `a` that
//! turns `T − a` into a right divisor of the same products, so orbits of the
//! action drive everything about evaluation of skew rational functions.
//!
//! Orbits are enumerable over the finite fields. Over `ℚ(i)` and `ℍ(ℚ)`
//! (without a derivation) the classes admit closed-form invariants: the norm
//! circle for conjugation on the Gaussians, singletons for `σ = id` on the
//! Gaussians, and trace/norm pairs for quaternions. With a nontrivial
//! derivation in characteristic zero the class structure is not supported.

use num::BigRational;
use thiserror::Error;

use crate::poly::SkewPolynomial;
use crate::scalar::{FieldKind, GaussianSigma, LinearOperator, Scalar, ScalarError};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum ActionError {
    #[error("conjugation by zero")]
    ConjugationByZero,
    #[error("class structure is unsupported in characteristic zero with a nontrivial derivation")]
    UnsupportedDerivation,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// `^b a = σ(b)·a·b⁻¹ + δ(b)·b⁻¹` for `b ≠ 0`.
pub fn conjugate(a: &Scalar, b: &Scalar) -> Result<Scalar, ActionError> {
    if a.field() != b.field() {
        return Err(ScalarError::MixedFields.into());
    }
    if b.is_zero() {
        return Err(ActionError::ConjugationByZero);
    }
    let b_inv = b.inv().expect("b is nonzero");
    Ok(&(&(&b.sigma() * a) * &b_inv) + &(&b.delta() * &b_inv))
}

/// The full orbit of `a` under conjugation, sorted and deduplicated.
/// Requires a (small enough) finite field.
pub fn orbit(a: &Scalar) -> Result<Vec<Scalar>, ActionError> {
    let units = a.field().units()?;
    let mut set = std::collections::BTreeSet::new();
    for b in &units {
        set.insert(conjugate(a, b).expect("units are nonzero"));
    }
    Ok(set.into_iter().collect())
}

/// The `(σ, δ)`-centralizer of `a`: all `b` with `^b a = a`, together with
/// zero a sub-division-algebra over the base subfield, computed as the kernel
/// of `x ↦ σ(x)·a + δ(x) − a·x`.
#[derive(Clone, Debug, PartialEq)]
pub struct Centralizer {
    basis: Vec<Scalar>,
    characteristic: u64,
}

impl Centralizer {
    /// Basis over `F_p` (resp. `ℚ`); always contains at least one vector
    /// since `1` centralizes everything.
    pub fn basis(&self) -> &[Scalar] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Number of elements including zero, for finite fields.
    pub fn order(&self) -> Option<u128> {
        if self.characteristic == 0 {
            None
        } else {
            (self.characteristic as u128).checked_pow(self.basis.len() as u32)
        }
    }
}

pub fn centralizer(a: &Scalar) -> Centralizer {
    let field = a.field();
    let op = LinearOperator::right_mul(a)
        .compose(&LinearOperator::sigma(field))
        .add(&LinearOperator::delta(field))
        .sub(&LinearOperator::left_mul(a));
    Centralizer {
        basis: op.nullspace_basis(),
        characteristic: field.characteristic(),
    }
}

/// Invariant that pins down a conjugacy class.
#[derive(Clone, Debug, PartialEq)]
pub enum ClassInvariant {
    /// Finite field: the orbit itself, sorted.
    Orbit(Vec<Scalar>),
    /// Gaussian rationals under conjugation: the common norm `z·conj(z)`.
    Norm(BigRational),
    /// A fixed point of the action (Gaussian `σ = id`, central quaternion).
    Singleton(Scalar),
    /// Noncentral quaternion class: `(2·Re(a), norm(a))`, the coefficients
    /// of the shared minimal polynomial over the center.
    TraceNorm(BigRational, BigRational),
}

/// A conjugacy class: a representative, the identifying invariant, and the
/// monic polynomial whose right roots are exactly the class.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjugacyClass {
    pub representative: Scalar,
    pub invariant: ClassInvariant,
    pub class_polynomial: SkewPolynomial,
}

impl ConjugacyClass {
    pub fn of(a: &Scalar) -> Result<ConjugacyClass, ActionError> {
        Ok(ConjugacyClass {
            representative: a.clone(),
            invariant: class_invariant(a)?,
            class_polynomial: class_polynomial(a)?,
        })
    }
}

fn guard_char0_derivation(a: &Scalar) -> Result<(), ActionError> {
    if a.field().characteristic() == 0 && a.field().has_derivation() {
        Err(ActionError::UnsupportedDerivation)
    } else {
        Ok(())
    }
}

fn class_invariant(a: &Scalar) -> Result<ClassInvariant, ActionError> {
    guard_char0_derivation(a)?;
    match a.field().kind() {
        FieldKind::FiniteField { .. } => Ok(ClassInvariant::Orbit(orbit(a)?)),
        FieldKind::Gaussian { sigma } => match sigma {
            GaussianSigma::Conjugation => {
                if a.is_zero() {
                    Ok(ClassInvariant::Singleton(a.clone()))
                } else {
                    Ok(ClassInvariant::Norm(a.norm_rat()))
                }
            }
            GaussianSigma::Identity => Ok(ClassInvariant::Singleton(a.clone())),
        },
        FieldKind::Quaternions => {
            if a.is_rational_part() {
                Ok(ClassInvariant::Singleton(a.clone()))
            } else {
                let two = BigRational::from_integer(2.into());
                Ok(ClassInvariant::TraceNorm(two * a.re_rat(), a.norm_rat()))
            }
        }
    }
}

/// The monic skew polynomial of minimal degree vanishing on the whole class
/// of `a` (finite fields: the least common left multiple of `T − c` over the
/// orbit; characteristic zero: `T − a` for fixed points, the minimal central
/// quadratic otherwise).
pub fn class_polynomial(a: &Scalar) -> Result<SkewPolynomial, ActionError> {
    guard_char0_derivation(a)?;
    let field = a.field();
    let one = Scalar::one(field);
    let linear =
        |c: &Scalar| SkewPolynomial::from_coeffs(field, vec![-c, one.clone()]).expect("same field");
    match field.kind() {
        FieldKind::FiniteField { .. } => {
            let mut acc: Option<SkewPolynomial> = None;
            for c in orbit(a)? {
                let l = linear(&c);
                acc = Some(match acc {
                    None => l,
                    Some(p) => p.llcm(&l),
                });
            }
            Ok(acc.expect("orbits are nonempty"))
        }
        FieldKind::Gaussian { sigma } => match sigma {
            GaussianSigma::Conjugation => {
                if a.is_zero() {
                    Ok(SkewPolynomial::var(field))
                } else {
                    let norm = Scalar::from_rational(field, &a.norm_rat()).expect("char 0");
                    Ok(
                        SkewPolynomial::from_coeffs(field, vec![-&norm, Scalar::zero(field), one])
                            .expect("same field"),
                    )
                }
            }
            GaussianSigma::Identity => Ok(linear(a)),
        },
        FieldKind::Quaternions => {
            if a.is_rational_part() {
                Ok(linear(a))
            } else {
                // T² − 2·Re(a)·T + N(a), the minimal polynomial over ℚ.
                let two_re = Scalar::from_rational(
                    field,
                    &(BigRational::from_integer(2.into()) * a.re_rat()),
                )
                .expect("char 0");
                let norm = Scalar::from_rational(field, &a.norm_rat()).expect("char 0");
                Ok(
                    SkewPolynomial::from_coeffs(field, vec![norm, -&two_re, one])
                        .expect("same field"),
                )
            }
        }
    }
}

/// Whether `a` and `b` are `(σ, δ)`-conjugate.
pub fn same_class(a: &Scalar, b: &Scalar) -> Result<bool, ActionError> {
    if a.field() != b.field() {
        return Err(ScalarError::MixedFields.into());
    }
    if a == b {
        return Ok(true);
    }
    guard_char0_derivation(a)?;
    match a.field().kind() {
        FieldKind::FiniteField { .. } => Ok(orbit(a)?.binary_search(b).is_ok()),
        FieldKind::Gaussian { sigma } => match sigma {
            // Hilbert 90: the orbit of a nonzero point is its whole norm
            // circle, and 0 is fixed.
            GaussianSigma::Conjugation => {
                Ok(!a.is_zero() && !b.is_zero() && a.norm_rat() == b.norm_rat())
            }
            GaussianSigma::Identity => Ok(false),
        },
        FieldKind::Quaternions => {
            // (Re, N) determines the class; a central and a noncentral
            // element never share both.
            Ok(a.re_rat() == b.re_rat() && a.norm_rat() == b.norm_rat())
        }
    }
}
