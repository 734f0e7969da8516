//! Skew rational functions, stored as reduced left fractions `den⁻¹·num`
//! with a monic denominator (common left factors removed by the gcld).
//!
//! Evaluation rests on the algebra morphism `P ↦ P(T_a)` into linear
//! operators on the field, where `T_a(x) = σ(x)·a + δ(x)`. The operator
//! satisfies the λ-identity `P(T_a)(y) = P(^y a)·y` for `y ≠ 0`, so a left
//! fraction is defined at `a` exactly when `den(T_a)` is nonsingular, and
//! then its value is `den(T_a)⁻¹(num(a))`. Undefinedness only depends on the
//! `(σ, δ)`-conjugacy class of the point; [`domain_report`] lists the bad
//! classes, exhaustively for the finite fields and by resultant/norm
//! arguments over `ℚ(i)` and `ℍ(ℚ)` without a derivation.

use num::{BigRational, Signed, Zero};
use std::fmt;
use thiserror::Error;

use crate::action::{conjugate, ActionError, ConjugacyClass};
use crate::intops;
use crate::poly::{PolyError, SkewPolynomial};
use crate::ratpoly::{self, QPoly};
use crate::scalar::{
    FieldKind, FieldRef, GaussianSigma, LinearOperator, Scalar, ScalarError, SolveStatus,
};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum RationalError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("inverse of the zero function")]
    DivisionByZero,
    #[error("the function is undefined at the point")]
    UndefinedAtPoint,
    #[error("the polynomial is not semi-invariant")]
    NotSemiInvariant,
    #[error("the denominator is reducible")]
    ReducibleDenominator,
    #[error("unsupported over this field: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Action(#[from] ActionError),
}

/// A reduced left fraction `den⁻¹ · num`.
#[derive(Clone, PartialEq, Eq)]
pub struct SkewRationalFunction {
    num: SkewPolynomial,
    den: SkewPolynomial,
}

impl SkewRationalFunction {
    /// Build `den⁻¹·num`, cancelling the greatest common left divisor and
    /// scaling the denominator monic.
    pub fn new(num: SkewPolynomial, den: SkewPolynomial) -> Result<Self, RationalError> {
        if num.field() != den.field() {
            return Err(ScalarError::MixedFields.into());
        }
        if den.is_zero() {
            return Err(RationalError::ZeroDenominator);
        }
        let g = num.gcld(&den);
        let (num, den) = if g.degree().is_some_and(|d| d > 0) {
            let (nq, nr) = num.left_divide(&g)?;
            let (dq, dr) = den.left_divide(&g)?;
            debug_assert!(nr.is_zero() && dr.is_zero());
            (nq, dq)
        } else {
            (num, den)
        };
        let u = den
            .leading()
            .expect("reduced denominator is nonzero")
            .inv()?;
        Ok(SkewRationalFunction {
            num: num.scale_left(&u),
            den: den.scale_left(&u),
        })
    }

    pub fn from_polynomial(p: &SkewPolynomial) -> Self {
        SkewRationalFunction {
            num: p.clone(),
            den: SkewPolynomial::one(p.field()),
        }
    }

    pub fn zero(field: &FieldRef) -> Self {
        Self::from_polynomial(&SkewPolynomial::zero(field))
    }

    pub fn one(field: &FieldRef) -> Self {
        Self::from_polynomial(&SkewPolynomial::one(field))
    }

    pub fn numerator(&self) -> &SkewPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &SkewPolynomial {
        &self.den
    }

    pub fn field(&self) -> &FieldRef {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, RationalError> {
        if self.field() != other.field() {
            return Err(ScalarError::MixedFields.into());
        }
        // Common left denominator: l = u·den₁ = v·den₂.
        let (l, u, v) = self.den.llcm_with_cofactors(&other.den);
        let num = &(&u * &self.num) + &(&v * &other.num);
        Self::new(num, l)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, RationalError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, RationalError> {
        if self.field() != other.field() {
            return Err(ScalarError::MixedFields.into());
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.field()));
        }
        // Commute num₁ past den₂⁻¹: with l = u·num₁ = v·den₂ we get
        // num₁·den₂⁻¹ = u⁻¹·v, so the product is (u·den₁)⁻¹·(v·num₂).
        let (_, u, v) = self.num.llcm_with_cofactors(&other.den);
        Self::new(&v * &other.num, &u * &self.den)
    }

    pub fn inv(&self) -> Result<Self, RationalError> {
        if self.is_zero() {
            return Err(RationalError::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }
}

impl std::ops::Neg for &SkewRationalFunction {
    type Output = SkewRationalFunction;
    fn neg(self) -> SkewRationalFunction {
        SkewRationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl std::ops::Add for &SkewRationalFunction {
    type Output = SkewRationalFunction;
    fn add(self, rhs: &SkewRationalFunction) -> SkewRationalFunction {
        self.checked_add(rhs).expect("same field")
    }
}

impl std::ops::Sub for &SkewRationalFunction {
    type Output = SkewRationalFunction;
    fn sub(self, rhs: &SkewRationalFunction) -> SkewRationalFunction {
        self.checked_sub(rhs).expect("same field")
    }
}

impl std::ops::Mul for &SkewRationalFunction {
    type Output = SkewRationalFunction;
    fn mul(self, rhs: &SkewRationalFunction) -> SkewRationalFunction {
        self.checked_mul(rhs).expect("same field")
    }
}

impl fmt::Display for SkewRationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})^-1 * ({})", self.den, self.num)
        }
    }
}

impl fmt::Debug for SkewRationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewRationalFunction({self})")
    }
}

/// `P(T_a)`, the image of a skew polynomial under the evaluation morphism at
/// the point `a`.
#[derive(Clone, Debug, PartialEq)]
pub struct EvalOperator {
    point: Scalar,
    op: LinearOperator,
}

/// Build `P(T_a) = Σ L_{p_m} ∘ T_a^m` where `T_a(x) = σ(x)·a + δ(x)`.
pub fn eval_operator(p: &SkewPolynomial, a: &Scalar) -> Result<EvalOperator, RationalError> {
    if p.field() != a.field() {
        return Err(ScalarError::MixedFields.into());
    }
    let field = a.field();
    let ta = LinearOperator::right_mul(a)
        .compose(&LinearOperator::sigma(field))
        .add(&LinearOperator::delta(field));
    let mut acc = LinearOperator::zero(field);
    for c in p.coeffs().iter().rev() {
        acc = acc.compose(&ta).add(&LinearOperator::left_mul(c));
    }
    Ok(EvalOperator {
        point: a.clone(),
        op: acc,
    })
}

impl EvalOperator {
    pub fn point(&self) -> &Scalar {
        &self.point
    }

    pub fn operator(&self) -> &LinearOperator {
        &self.op
    }

    pub fn apply(&self, y: &Scalar) -> Scalar {
        self.op.apply(y)
    }

    pub fn is_nonsingular(&self) -> bool {
        self.op.is_nonsingular()
    }

    pub fn solve(&self, rhs: &Scalar) -> SolveStatus {
        self.op.solve(rhs)
    }
}

/// Whether `f` is defined at `a`, i.e. whether `den(T_a)` is nonsingular.
pub fn is_defined_at(f: &SkewRationalFunction, a: &Scalar) -> Result<bool, RationalError> {
    Ok(eval_operator(f.denominator(), a)?.is_nonsingular())
}

/// The value `den(T_a)⁻¹(num(a))`, failing where the function is undefined.
pub fn evaluate_at(f: &SkewRationalFunction, a: &Scalar) -> Result<Scalar, RationalError> {
    let op = eval_operator(f.denominator(), a)?;
    match op.solve(&f.numerator().eval(a)) {
        SolveStatus::Unique(v) => Ok(v),
        _ => Err(RationalError::UndefinedAtPoint),
    }
}

fn require_char_zero(field: &FieldRef, what: &str) -> Result<(), RationalError> {
    if field.characteristic() != 0 {
        Err(RationalError::Unsupported(format!(
            "{what} has a closed form only in characteristic zero"
        )))
    } else {
        Ok(())
    }
}

/// Closed form for the value of `(T − b)⁻¹` at `a` in characteristic zero;
/// `None` where the function is undefined (i.e. `a` conjugate to `b` after
/// absorbing the derivation shift). Independent of the operator machinery.
pub fn linear_kernel(b: &Scalar, a: &Scalar) -> Result<Option<Scalar>, RationalError> {
    if a.field() != b.field() {
        return Err(ScalarError::MixedFields.into());
    }
    let field = a.field();
    require_char_zero(field, "the linear kernel")?;
    // An inner derivation δ_c just shifts the equation: σ(v)·a + δ(v) − b·v
    // equals σ(v)·(a−c) − (b−c)·v for σ = id, and likewise with σ(v)(a−c)
    // for the conjugation, so work with the shifted points.
    let (a, b) = match field.derivation_scalar() {
        Some(c) => (a - &c, b - &c),
        None => (a.clone(), b.clone()),
    };
    match field.kind() {
        FieldKind::Gaussian {
            sigma: GaussianSigma::Conjugation,
        } => {
            // σ(v)·a − b·v = 1 has v = (a + conj(b)) / (N(a) − N(b)).
            let d = a.norm_rat() - b.norm_rat();
            if d.is_zero() {
                return Ok(None);
            }
            let scale = Scalar::from_rational(field, &d.recip())?;
            Ok(Some(&(&a + &b.conj()) * &scale))
        }
        FieldKind::Gaussian {
            sigma: GaussianSigma::Identity,
        } => {
            if a == b {
                Ok(None)
            } else {
                Ok(Some((&a - &b).inv()?))
            }
        }
        FieldKind::Quaternions => {
            // v·a − b·v = 1 has v = (a − conj(b))·(a² − 2·Re(b)·a + N(b))⁻¹;
            // the divisor has rational coefficients so it commutes with a.
            let two_re =
                Scalar::from_rational(field, &(BigRational::from_integer(2.into()) * b.re_rat()))?;
            let norm = Scalar::from_rational(field, &b.norm_rat())?;
            let g = &(&(&a * &a) - &(&two_re * &a)) + &norm;
            if g.is_zero() {
                return Ok(None);
            }
            Ok(Some(&(&a - &b.conj()) * &g.inv()?))
        }
        FieldKind::FiniteField { .. } => unreachable!("characteristic zero was checked"),
    }
}

/// Closed form for the value of `(T² + b·T + c)⁻¹` at `a` over the Gaussian
/// rationals with conjugation and no derivation. The denominator must be
/// irreducible — `N(z) + b·z + c ≠ 0` for every `z ∈ ℚ(i)` — which makes the
/// inverse everywhere defined. With `A = N(a) + c` the value `x` solves
/// `A·x + b·a·σ(x) = 1`, whence `x = (N(a) − b·a + σ(c)) / (N(A) − N(a)·N(b))`.
pub fn quadratic_kernel_gaussian(
    b: &Scalar,
    c: &Scalar,
    a: &Scalar,
) -> Result<Scalar, RationalError> {
    if a.field() != b.field() || a.field() != c.field() {
        return Err(ScalarError::MixedFields.into());
    }
    let field = a.field();
    let conj_gaussian = matches!(
        field.kind(),
        FieldKind::Gaussian {
            sigma: GaussianSigma::Conjugation
        }
    );
    if !conj_gaussian || field.has_derivation() {
        return Err(RationalError::Unsupported(
            "the quadratic kernel needs the Gaussian rationals with conjugation and no \
             derivation"
                .into(),
        ));
    }
    if gaussian_quadratic_has_root(b, c)? {
        return Err(RationalError::ReducibleDenominator);
    }
    let norm_a = Scalar::from_rational(field, &a.norm_rat())?;
    let d = (&norm_a + c).norm_rat() - a.norm_rat() * b.norm_rat();
    if d.is_zero() {
        // A singular operator means a root in the class of `a` itself, even
        // when the global search above could not certify one.
        return Err(RationalError::ReducibleDenominator);
    }
    let num = &(&norm_a - &(b * a)) + &c.sigma();
    Ok(&num * &Scalar::from_rational(field, &d.recip())?)
}

/// Does `N(z) + b·z + c = 0` have a Gaussian rational solution? Writing
/// `z = s + t·i` splits it into the circle
/// `s² + t² + Re(b)·s − Im(b)·t + Re(c) = 0` and the line
/// `Im(b)·s + Re(b)·t + Im(c) = 0`. For `b ≠ 0` substituting the line into
/// the circle leaves one rational quadratic whose discriminant decides; for
/// `b = 0` it is a two-squares question. `Unsupported` when the two-squares
/// factorization gives up.
fn gaussian_quadratic_has_root(b: &Scalar, c: &Scalar) -> Result<bool, RationalError> {
    let (b1, b2) = (b.re_rat(), b.rat_coords()[1].clone());
    let (c1, c2) = (c.re_rat(), c.rat_coords()[1].clone());
    if b.is_zero() {
        if !c2.is_zero() {
            return Ok(false);
        }
        let r = -c1;
        if r.is_negative() {
            return Ok(false);
        }
        if intops::two_squares_rational(&r).is_some() {
            return Ok(true);
        }
        if factorable(&r) {
            return Ok(false);
        }
        return Err(RationalError::Unsupported(format!(
            "could not factor {r} to decide whether the denominator is irreducible"
        )));
    }
    let two = BigRational::from_integer(2.into());
    let four = BigRational::from_integer(4.into());
    let disc = if !b1.is_zero() {
        // t = −(Im(b)·s + Im(c)) / Re(b); clearing Re(b)² leaves
        // (Re(b)² + Im(b)²)·s² + (2·Im(b)·Im(c) + Re(b)³ + Re(b)·Im(b)²)·s
        //   + (Im(c)² + Re(b)·Im(b)·Im(c) + Re(b)²·Re(c)) = 0.
        let alpha = &b1 * &b1 + &b2 * &b2;
        let beta = &two * &b2 * &c2 + &b1 * &b1 * &b1 + &b1 * &b2 * &b2;
        let gamma = &c2 * &c2 + &b1 * &b2 * &c2 + &b1 * &b1 * &c1;
        &beta * &beta - four * alpha * gamma
    } else {
        // s = −Im(c)/Im(b) is pinned; the circle becomes
        // t² − Im(b)·t + (s² + Re(c)) = 0.
        let s = -(&c2 / &b2);
        &b2 * &b2 - four * (&s * &s + c1)
    };
    Ok(intops::rational_sqrt(&disc).is_some())
}

/// Outcome of the metro equation `σ(x)·c + δ(x) − b·x = 1`.
#[derive(Clone, Debug, PartialEq)]
pub enum MetroSolution {
    Unique(Scalar),
    /// One solution out of several.
    NonUnique(Scalar),
    NoSolution,
}

/// Solve `σ(x)·c + δ(x) − b·x = 1` for `x`.
pub fn metro_solve(b: &Scalar, c: &Scalar) -> Result<MetroSolution, RationalError> {
    if b.field() != c.field() {
        return Err(ScalarError::MixedFields.into());
    }
    let field = b.field();
    let op = LinearOperator::right_mul(c)
        .compose(&LinearOperator::sigma(field))
        .add(&LinearOperator::delta(field))
        .sub(&LinearOperator::left_mul(b));
    Ok(match op.solve(&Scalar::one(field)) {
        SolveStatus::Unique(x) => MetroSolution::Unique(x),
        SolveStatus::NonUnique(x) => MetroSolution::NonUnique(x),
        SolveStatus::NoSolution => MetroSolution::NoSolution,
    })
}

/// Evaluate `P(T_a)⁻¹(y)` for a semi-invariant `P` (meaning `P·x = σⁿ(x)·P`
/// for all `x`, with `n = deg P`) through the closed form
/// `σ^{-n}(P(^y a))⁻¹ · y`, bypassing the operator inverse entirely.
pub fn eval_semi_invariant(
    p: &SkewPolynomial,
    a: &Scalar,
    y: &Scalar,
) -> Result<Scalar, RationalError> {
    if p.field() != a.field() || a.field() != y.field() {
        return Err(ScalarError::MixedFields.into());
    }
    let field = p.field();
    let n = p.degree().ok_or(RationalError::NotSemiInvariant)?;
    // Both sides of P·x = σⁿ(x)·P are linear in x, so the basis decides.
    for e in field.basis() {
        let lhs = p * &SkewPolynomial::constant(e.clone());
        let rhs = &SkewPolynomial::constant(e.sigma_pow(n as i64)) * p;
        if lhs != rhs {
            return Err(RationalError::NotSemiInvariant);
        }
    }
    if y.is_zero() {
        return Ok(Scalar::zero(field));
    }
    let w = p.eval(&conjugate(a, y)?);
    if w.is_zero() {
        return Err(RationalError::UndefinedAtPoint);
    }
    Ok(&w.sigma_pow(-(n as i64)).inv()? * y)
}

/// Check the transfer identity `(T − ^b a)·b = σ(b)·(T − a)` for `b ≠ 0`.
pub fn conjugate_transfer_check(a: &Scalar, b: &Scalar) -> Result<bool, RationalError> {
    let field = a.field();
    let linear = |c: &Scalar| {
        SkewPolynomial::from_coeffs(field, vec![-c, Scalar::one(field)]).expect("same field")
    };
    let ab = conjugate(a, b)?;
    let lhs = &linear(&ab) * &SkewPolynomial::constant(b.clone());
    let rhs = &SkewPolynomial::constant(b.sigma()) * &linear(a);
    Ok(lhs == rhs)
}

/// Check the product formula `(f·g)(x) = f(^{g(x)} x)·g(x)` at a point.
/// Returns `true` vacuously when `g(x)` is zero or undefined, or when either
/// side is undefined at the required point.
pub fn product_formula_check(
    f: &SkewRationalFunction,
    g: &SkewRationalFunction,
    x: &Scalar,
) -> Result<bool, RationalError> {
    let prod = f.checked_mul(g)?;
    if x.field() != f.field() {
        return Err(ScalarError::MixedFields.into());
    }
    if !is_defined_at(g, x)? || !is_defined_at(&prod, x)? {
        return Ok(true);
    }
    let gx = evaluate_at(g, x)?;
    if gx.is_zero() {
        return Ok(true);
    }
    let y = conjugate(x, &gx)?;
    if !is_defined_at(f, &y)? {
        return Ok(true);
    }
    Ok(evaluate_at(&prod, x)? == &evaluate_at(f, &y)? * &gx)
}

/// Where a skew rational function fails to be defined: a list of verified
/// conjugacy classes, plus a flag recording whether the list is provably
/// exhaustive. Notes explain any gap.
#[derive(Clone, Debug)]
pub struct DomainReport {
    pub undefined_classes: Vec<ConjugacyClass>,
    pub complete: bool,
    pub notes: Vec<String>,
}

impl DomainReport {
    fn empty() -> Self {
        DomainReport {
            undefined_classes: Vec::new(),
            complete: true,
            notes: Vec::new(),
        }
    }

    fn sort(&mut self) {
        self.undefined_classes
            .sort_by(|a, b| a.representative.cmp(&b.representative));
    }
}

/// Describe all points where `f` is undefined, grouped into conjugacy
/// classes. Exhaustive over the finite fields (any derivation) and over
/// `ℚ(i)` and `ℍ(ℚ)` without a derivation, except where integer
/// factorization gives up — then `complete` is `false` and a note says so.
pub fn domain_report(f: &SkewRationalFunction) -> Result<DomainReport, RationalError> {
    let field = f.field().clone();
    if f.denominator().is_constant() {
        return Ok(DomainReport::empty());
    }
    match field.kind() {
        FieldKind::FiniteField { .. } => finite_field_report(f),
        FieldKind::Gaussian { sigma } => {
            if field.has_derivation() {
                return Err(RationalError::Unsupported(
                    "domain analysis over a characteristic-zero field with a nontrivial \
                     derivation"
                        .into(),
                ));
            }
            match sigma {
                GaussianSigma::Conjugation => gaussian_conj_report(f),
                GaussianSigma::Identity => commutative_root_report(f),
            }
        }
        FieldKind::Quaternions => {
            if field.has_derivation() {
                return Err(RationalError::Unsupported(
                    "domain analysis over a characteristic-zero field with a nontrivial \
                     derivation"
                        .into(),
                ));
            }
            quaternion_report(f)
        }
    }
}

fn finite_field_report(f: &SkewRationalFunction) -> Result<DomainReport, RationalError> {
    let field = f.field().clone();
    let mut report = DomainReport::empty();
    let mut seen = std::collections::BTreeSet::new();
    for a in field.elements()? {
        if seen.contains(&a) {
            continue;
        }
        if !is_defined_at(f, &a)? {
            let class = ConjugacyClass::of(&a)?;
            if let crate::action::ClassInvariant::Orbit(orbit) = &class.invariant {
                for x in orbit {
                    debug_assert!(!is_defined_at(f, x)?);
                    seen.insert(x.clone());
                }
            }
            report.undefined_classes.push(class);
        }
    }
    report.sort();
    Ok(report)
}

/// Real/imaginary parts of the coefficient at each power of `r`.
fn gaussian_parts(coeffs: &[Scalar]) -> (QPoly, QPoly) {
    let re = coeffs.iter().map(|c| c.re_rat()).collect();
    let im = coeffs.iter().map(|c| c.rat_coords()[1].clone()).collect();
    (ratpoly::trim(re), ratpoly::trim(im))
}

/// Whether a non-negative rational can be decided for two-squares
/// representability: factorization must succeed on numerator·denominator.
fn factorable(r: &BigRational) -> bool {
    let n = r.numer() * r.denom();
    n.is_zero() || intops::factor_bigint(&n.abs()).is_some()
}

fn gaussian_conj_report(f: &SkewRationalFunction) -> Result<DomainReport, RationalError> {
    let field = f.field().clone();
    let den = f.denominator();
    let mut report = DomainReport::empty();
    // Split den = A(T²) + B(T²)·T. On the norm-r circle T_a² is right
    // multiplication by r, so den(T_a)(v) = A(r)·v + B(r)·σ(v)·a, which is
    // singular exactly when E(r) = N(A(r)) − r·N(B(r)) vanishes.
    let even: Vec<Scalar> = den.coeffs().iter().step_by(2).cloned().collect();
    let odd: Vec<Scalar> = den.coeffs().iter().skip(1).step_by(2).cloned().collect();
    let (are, aim) = gaussian_parts(&even);
    let (bre, bim) = gaussian_parts(&odd);
    let norm_a = ratpoly::add(&ratpoly::mul(&are, &are), &ratpoly::mul(&aim, &aim));
    let norm_b = ratpoly::add(&ratpoly::mul(&bre, &bre), &ratpoly::mul(&bim, &bim));
    let e = ratpoly::sub(&norm_a, &ratpoly::shift(&norm_b, 1));
    if ratpoly::deg(&e).is_none() {
        report.complete = false;
        report
            .notes
            .push("the singularity polynomial vanished identically".into());
        return Ok(report);
    }
    let Some(roots) = ratpoly::rational_roots(&e) else {
        report.complete = false;
        report
            .notes
            .push("rational root search exceeded the factorization limits".into());
        return Ok(report);
    };
    for r in roots {
        if r.is_negative() {
            continue;
        }
        if !factorable(&r) {
            report.complete = false;
            report.notes.push(format!(
                "could not factor {r} to decide whether the norm-{r} circle has rational \
                 points"
            ));
            continue;
        }
        // A rational r ≥ 0 is a norm iff it is a sum of two rational squares.
        let Some((x, y)) = intops::two_squares_rational(&r) else {
            continue;
        };
        let rep = &Scalar::from_rational(&field, &x)?
            + &(&Scalar::from_rational(&field, &y)? * &Scalar::parse(&field, "i")?);
        if is_defined_at(f, &rep)? {
            report.complete = false;
            report.notes.push(format!(
                "candidate class of {rep} passed the singularity polynomial but verified \
                 as defined"
            ));
            continue;
        }
        report.undefined_classes.push(ConjugacyClass::of(&rep)?);
    }
    report.sort();
    Ok(report)
}

/// Coefficient-conjugated polynomial (characteristic zero, σ = id).
fn conj_coeffs(p: &SkewPolynomial) -> SkewPolynomial {
    let coeffs = p.coeffs().iter().map(|c| c.conj()).collect();
    SkewPolynomial::from_coeffs(p.field(), coeffs).expect("same field")
}

/// The central polynomial `den̄·den` as a rational-coefficient polynomial.
fn central_norm_poly(den: &SkewPolynomial) -> QPoly {
    let g = &conj_coeffs(den) * den;
    let coeffs: QPoly = g
        .coeffs()
        .iter()
        .map(|c| {
            debug_assert!(c.is_rational_part());
            c.re_rat()
        })
        .collect();
    ratpoly::trim(coeffs)
}

/// σ = id over ℚ(i): the operator `den(T_a)` is multiplication by `den(a)`,
/// so the undefined classes are the singleton roots of `den` in `ℚ(i)`,
/// found through the real polynomial `den̄·den`.
fn commutative_root_report(f: &SkewRationalFunction) -> Result<DomainReport, RationalError> {
    let field = f.field().clone();
    let den = f.denominator();
    let mut report = DomainReport::empty();
    let g = central_norm_poly(den);
    let i = Scalar::parse(&field, "i")?;
    let mut candidates: Vec<Scalar> = Vec::new();
    match ratpoly::rational_roots(&g) {
        Some(roots) => {
            for r in roots {
                candidates.push(Scalar::from_rational(&field, &r)?);
            }
        }
        None => {
            report.complete = false;
            report
                .notes
                .push("rational root search exceeded the factorization limits".into());
        }
    }
    match ratpoly::quadratic_rational_factors(&g) {
        Some(pairs) => {
            for (t, n) in pairs {
                // x² − t·x + n with roots t/2 ± (s/2)·i lies in ℚ(i) exactly
                // when 4n − t² is the square of a rational.
                let disc = BigRational::from_integer(4.into()) * &n - &t * &t;
                if !disc.is_positive() {
                    continue;
                }
                let Some(s) = intops::rational_sqrt(&disc) else {
                    continue;
                };
                let two = BigRational::from_integer(2.into());
                let re = Scalar::from_rational(&field, &(t / &two))?;
                let im = Scalar::from_rational(&field, &(s / &two))?;
                candidates.push(&re + &(&im * &i));
                candidates.push(&re - &(&im * &i));
            }
        }
        None => {
            report.complete = false;
            report
                .notes
                .push("quadratic factor search exceeded the resultant limits".into());
        }
    }
    candidates.sort();
    candidates.dedup();
    for z in candidates {
        if den.eval(&z).is_zero() {
            report.undefined_classes.push(ConjugacyClass::of(&z)?);
        }
    }
    report.sort();
    Ok(report)
}

fn quaternion_report(f: &SkewRationalFunction) -> Result<DomainReport, RationalError> {
    let field = f.field().clone();
    let den = f.denominator();
    let mut report = DomainReport::empty();
    // den(T_a)(v) = Σ q_m·v·a^m = Q*(v·a·v⁻¹)·v for plain substitution Q*,
    // so f is undefined on the class of a iff the class contains a left root
    // of den. Left roots of den are roots of the central polynomial
    // den̄·den, whose irreducible factors of degree ≤ 2 carry them all.
    let g = central_norm_poly(den);
    match ratpoly::rational_roots(&g) {
        Some(roots) => {
            for r in roots {
                let rep = Scalar::from_rational(&field, &r)?;
                // Central candidate: plain substitution equals evaluation.
                if den.eval(&rep).is_zero() {
                    report.undefined_classes.push(ConjugacyClass::of(&rep)?);
                }
            }
        }
        None => {
            report.complete = false;
            report
                .notes
                .push("rational root search exceeded the factorization limits".into());
        }
    }
    match ratpoly::quadratic_rational_factors(&g) {
        Some(pairs) => {
            for (t, n) in pairs {
                let four = BigRational::from_integer(4.into());
                let disc = &t * &t - &four * &n;
                if !disc.is_negative() {
                    // Real roots: the rational ones were already handled and
                    // irrational ones are not quaternion points.
                    continue;
                }
                // The class 2·Re = t, N = n has points iff n − t²/4 is a sum
                // of three rational squares.
                let s = &n - &(&t * &t) / &four;
                if !intops::three_squares_representable_rational(&s) {
                    continue;
                }
                let t_scalar = Scalar::from_rational(&field, &t)?;
                let n_scalar = Scalar::from_rational(&field, &n)?;
                let central = SkewPolynomial::from_coeffs(
                    &field,
                    vec![n_scalar, -&t_scalar, Scalar::one(&field)],
                )
                .expect("same field");
                let gcrd = den.gcrd(&central);
                let rep = match gcrd.degree() {
                    Some(1) => {
                        // gcrd = T − w: w is a root of den inside the class.
                        -&gcrd.coeff(0)
                    }
                    Some(2) => {
                        // The whole class consists of roots; take any point.
                        let Some((x, y, z)) = intops::three_squares_rational(&s) else {
                            report.complete = false;
                            report.notes.push(format!(
                                "could not decompose {s} into three squares for the class \
                                 2Re={t}, N={n}"
                            ));
                            continue;
                        };
                        let two = BigRational::from_integer(2.into());
                        let mut rep = Scalar::from_rational(&field, &(&t / &two))?;
                        for (coord, unit) in [(x, "i"), (y, "j"), (z, "k")] {
                            let u = Scalar::parse(&field, unit)?;
                            rep = &rep + &(&Scalar::from_rational(&field, &coord)? * &u);
                        }
                        rep
                    }
                    _ => continue,
                };
                if den.eval(&rep).is_zero() {
                    report.undefined_classes.push(ConjugacyClass::of(&rep)?);
                } else {
                    report.complete = false;
                    report.notes.push(format!(
                        "candidate in the class 2Re={t}, N={n} failed verification"
                    ));
                }
            }
        }
        None => {
            report.complete = false;
            report
                .notes
                .push("quadratic factor search exceeded the resultant limits".into());
        }
    }
    report.sort();
    Ok(report)
}
