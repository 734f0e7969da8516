//! Functions on a finite conjugation-invariant set, with the twisted product
//!
//! ```text
//! (f ⋄ g)(x) = f(^{g(x)} x) · g(x)   if g(x) ≠ 0,   0 otherwise.
//! ```
//!
//! Restriction of polynomial evaluation is multiplicative for ⋄, so these
//! function spaces model skew polynomial arithmetic pointwise. Pointwise
//! addition and ⋄ make the full function space a (right) near-ring: the right
//! distributive law always holds, the left one does not. The functions that
//! do distribute from the left are the *convex* ones; they form an honest
//! ring, and on a single orbit they correspond to linear endomorphisms of the
//! field via `b ↦ f(^b x₀)·b`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::action::{conjugate, ActionError};
use crate::poly::SkewPolynomial;
use crate::scalar::{FieldRef, LinearOperator, Scalar, ScalarError};

/// Value table of a function, keyed by the points of the set.
pub type ElementMap = BTreeMap<Scalar, Scalar>;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum FuncRingError {
    #[error("functions live on different sets")]
    MismatchedSets,
    #[error("point does not belong to the invariant set")]
    PointNotInSet,
    #[error("value table does not match the set")]
    BadTable,
    #[error("function is not convex")]
    NotConvex,
    #[error("linear map does not descend to a function on the orbit")]
    NotInduced,
    #[error("map does not commute with the conjugation action")]
    NotActionPreserving,
    #[error("parts do not cover the set exactly once")]
    IncompleteCover,
    #[error("too many functions to enumerate: {0}")]
    EnumerationTooLarge(u128),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

impl From<ActionError> for FuncRingError {
    fn from(e: ActionError) -> Self {
        match e {
            ActionError::Scalar(s) => FuncRingError::Scalar(s),
            // Conjugation by zero never happens here; classes of derived
            // characteristic-zero fields are never enumerated.
            _ => FuncRingError::Scalar(ScalarError::InfiniteField),
        }
    }
}

/// A finite set of field elements closed under `(σ, δ)`-conjugation, stored
/// sorted. Over the finite fields this is any union of orbits; over the
/// characteristic-zero fields only fixed points of the action qualify.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteInvariantSet {
    field: FieldRef,
    points: Arc<Vec<Scalar>>,
}

impl FiniteInvariantSet {
    /// Smallest invariant set containing all the given points.
    pub fn closure_of(field: &FieldRef, points: &[Scalar]) -> Result<Self, FuncRingError> {
        let mut set = std::collections::BTreeSet::new();
        for a in points {
            if a.field() != field {
                return Err(ScalarError::MixedFields.into());
            }
        }
        if field.characteristic() == 0 {
            // An orbit over ℚ(i) or ℍ(ℚ) is either a fixed point or
            // infinite (it is a coset space of the unit group by the
            // centralizer), so a finite invariant set is a set of fixed
            // points.
            for a in points {
                if crate::action::centralizer(a).dimension() != field.base_dim() {
                    return Err(ScalarError::InfiniteField.into());
                }
                set.insert(a.clone());
            }
        } else {
            let units = field.units()?;
            let mut queue: Vec<Scalar> = points.to_vec();
            while let Some(a) = queue.pop() {
                if !set.insert(a.clone()) {
                    continue;
                }
                for b in &units {
                    let c = conjugate(&a, b).expect("units are nonzero");
                    if !set.contains(&c) {
                        queue.push(c);
                    }
                }
            }
        }
        Ok(FiniteInvariantSet {
            field: field.clone(),
            points: Arc::new(set.into_iter().collect()),
        })
    }

    /// The orbit of a single point.
    pub fn orbit_of(a: &Scalar) -> Result<Self, FuncRingError> {
        Self::closure_of(a.field(), std::slice::from_ref(a))
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn points(&self) -> &[Scalar] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        self.index_of(x).is_some()
    }

    fn index_of(&self, x: &Scalar) -> Option<usize> {
        self.points.binary_search(x).ok()
    }
}

/// A function from a [`FiniteInvariantSet`] into its field.
#[derive(Clone, PartialEq, Eq)]
pub struct OrbitFunction {
    set: FiniteInvariantSet,
    values: Vec<Scalar>,
}

impl OrbitFunction {
    pub fn from_values(
        set: &FiniteInvariantSet,
        values: Vec<Scalar>,
    ) -> Result<Self, FuncRingError> {
        if values.len() != set.len() {
            return Err(FuncRingError::BadTable);
        }
        if values.iter().any(|v| v.field() != set.field()) {
            return Err(ScalarError::MixedFields.into());
        }
        Ok(OrbitFunction {
            set: set.clone(),
            values,
        })
    }

    pub fn from_map(set: &FiniteInvariantSet, map: &ElementMap) -> Result<Self, FuncRingError> {
        if map.len() != set.len() {
            return Err(FuncRingError::BadTable);
        }
        let mut values = Vec::with_capacity(set.len());
        for x in set.points() {
            values.push(map.get(x).ok_or(FuncRingError::BadTable)?.clone());
        }
        Self::from_values(set, values)
    }

    pub fn constant(set: &FiniteInvariantSet, c: &Scalar) -> Result<Self, FuncRingError> {
        Self::from_values(set, vec![c.clone(); set.len()])
    }

    pub fn zero(set: &FiniteInvariantSet) -> Self {
        Self::constant(set, &Scalar::zero(set.field())).expect("constant is well formed")
    }

    /// The ⋄-unit: the constant function 1.
    pub fn one(set: &FiniteInvariantSet) -> Self {
        Self::constant(set, &Scalar::one(set.field())).expect("constant is well formed")
    }

    /// The inclusion `x ↦ x`, i.e. the restriction of the polynomial `T`.
    pub fn identity(set: &FiniteInvariantSet) -> Self {
        OrbitFunction {
            set: set.clone(),
            values: set.points().to_vec(),
        }
    }

    /// Restriction of the evaluation map of a skew polynomial.
    pub fn of_polynomial(
        set: &FiniteInvariantSet,
        p: &SkewPolynomial,
    ) -> Result<Self, FuncRingError> {
        if p.field() != set.field() {
            return Err(ScalarError::MixedFields.into());
        }
        let values = set.points().iter().map(|x| p.eval(x)).collect();
        Ok(OrbitFunction {
            set: set.clone(),
            values,
        })
    }

    pub fn set(&self) -> &FiniteInvariantSet {
        &self.set
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn value_at(&self, x: &Scalar) -> Result<&Scalar, FuncRingError> {
        self.set
            .index_of(x)
            .map(|i| &self.values[i])
            .ok_or(FuncRingError::PointNotInSet)
    }

    pub fn as_map(&self) -> ElementMap {
        self.set
            .points()
            .iter()
            .cloned()
            .zip(self.values.iter().cloned())
            .collect()
    }

    pub fn pointwise_add(&self, g: &Self) -> Result<Self, FuncRingError> {
        if self.set != g.set {
            return Err(FuncRingError::MismatchedSets);
        }
        let values = self
            .values
            .iter()
            .zip(&g.values)
            .map(|(a, b)| a + b)
            .collect();
        Ok(OrbitFunction {
            set: self.set.clone(),
            values,
        })
    }

    pub fn pointwise_neg(&self) -> Self {
        OrbitFunction {
            set: self.set.clone(),
            values: self.values.iter().map(|a| -a).collect(),
        }
    }

    pub fn pointwise_sub(&self, g: &Self) -> Result<Self, FuncRingError> {
        self.pointwise_add(&g.pointwise_neg())
    }

    /// The twisted product `(f ⋄ g)(x) = f(^{g(x)} x)·g(x)`, with value `0`
    /// wherever `g` vanishes.
    pub fn skew_product(&self, g: &Self) -> Result<Self, FuncRingError> {
        if self.set != g.set {
            return Err(FuncRingError::MismatchedSets);
        }
        let mut values = Vec::with_capacity(self.set.len());
        for (x, gx) in self.set.points().iter().zip(&g.values) {
            if gx.is_zero() {
                values.push(Scalar::zero(self.set.field()));
            } else {
                let y = conjugate(x, gx).expect("gx is nonzero");
                values.push(self.value_at(&y)? * gx);
            }
        }
        Ok(OrbitFunction {
            set: self.set.clone(),
            values,
        })
    }

    /// Whether `f ⋄ ·` is additive, equivalently whether every map
    /// `b ↦ f(^b x)·b` (extended by `0 ↦ 0`) is additive.
    pub fn is_convex(&self) -> bool {
        if self.set.field().characteristic() == 0 {
            // The set consists of fixed points, so f(^b x)·b = f(x)·b.
            return true;
        }
        let units = self
            .set
            .field()
            .units()
            .expect("finite sets only exist over enumerable fields");
        for x in self.set.points() {
            let mut lambda = ElementMap::new();
            lambda.insert(
                Scalar::zero(self.set.field()),
                Scalar::zero(self.set.field()),
            );
            for b in &units {
                let y = conjugate(x, b).expect("units are nonzero");
                let fy = self.value_at(&y).expect("set is invariant");
                lambda.insert(b.clone(), fy * b);
            }
            for b in &units {
                for c in &units {
                    let lhs = &lambda[&(b + c)];
                    if *lhs != &lambda[b] + &lambda[c] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Two-sided inverse for ⋄, when it exists: `f` must be nowhere zero and
    /// `x ↦ ^{f(x)} x` must permute the set.
    pub fn skew_inverse(&self) -> Option<Self> {
        let n = self.set.len();
        let mut values: Vec<Option<Scalar>> = vec![None; n];
        for (x, fx) in self.set.points().iter().zip(&self.values) {
            if fx.is_zero() {
                return None;
            }
            let y = conjugate(x, fx).expect("fx is nonzero");
            let j = self.set.index_of(&y)?;
            if values[j].is_some() {
                return None; // not injective
            }
            values[j] = Some(fx.inv().expect("fx is nonzero"));
        }
        let values = values.into_iter().collect::<Option<Vec<_>>>()?;
        Some(OrbitFunction {
            set: self.set.clone(),
            values,
        })
    }

    pub fn is_skew_invertible(&self) -> bool {
        self.skew_inverse().is_some()
    }

    /// Whether some `g` solves `f ⋄ g = 1`: for each `x` there must be a unit
    /// `a` with `f(^a x) = a⁻¹`.
    pub fn has_right_inverse(&self) -> bool {
        let field = self.set.field();
        if field.characteristic() == 0 {
            // Fixed points: ^a x = x, so the only candidate is a = f(x)⁻¹.
            return self.values.iter().all(|v| !v.is_zero());
        }
        let one = Scalar::one(field);
        let units = field.units().expect("finite sets are enumerable");
        self.set.points().iter().all(|x| {
            units.iter().any(|a| {
                let y = conjugate(x, a).expect("units are nonzero");
                let fy = self.value_at(&y).expect("set is invariant");
                fy * a == one
            })
        })
    }

    /// Whether some `g` solves `g ⋄ f = 1`: `f` must be nowhere zero and
    /// `x ↦ ^{f(x)} x` injective. On a finite set this coincides with full
    /// skew invertibility, since injective self-maps are bijective.
    pub fn has_left_inverse(&self) -> bool {
        let mut seen = vec![false; self.set.len()];
        for (x, fx) in self.set.points().iter().zip(&self.values) {
            if fx.is_zero() {
                return false;
            }
            let y = conjugate(x, fx).expect("fx is nonzero");
            let j = self.set.index_of(&y).expect("set is invariant");
            if seen[j] {
                return false;
            }
            seen[j] = true;
        }
        true
    }

    /// Invertibility criterion special to convex functions: no zeros, and
    /// every point sees a unit `a` with `f(^a x) = a⁻¹`. Agrees with
    /// [`Self::is_skew_invertible`] on convex inputs.
    pub fn convex_invertibility(&self) -> Result<bool, FuncRingError> {
        if !self.is_convex() {
            return Err(FuncRingError::NotConvex);
        }
        Ok(self.values.iter().all(|v| !v.is_zero()) && self.has_right_inverse())
    }

    /// Restrictions of `f` to the orbits of its set, ordered by each orbit's
    /// first appearance.
    pub fn decompose(&self) -> Result<Vec<OrbitFunction>, FuncRingError> {
        let mut assigned = vec![false; self.set.len()];
        let mut parts = Vec::new();
        for (i, x) in self.set.points().iter().enumerate() {
            if assigned[i] {
                continue;
            }
            let orbit = FiniteInvariantSet::orbit_of(x)?;
            let values = orbit
                .points()
                .iter()
                .map(|y| {
                    let j = self.set.index_of(y).expect("orbit stays inside the set");
                    assigned[j] = true;
                    self.values[j].clone()
                })
                .collect();
            parts.push(OrbitFunction { set: orbit, values });
        }
        Ok(parts)
    }

    /// The linear endomorphism `b ↦ f(^b base)·b` attached to a convex
    /// function and a base point of its set.
    pub fn endomorphism_at(&self, base: &Scalar) -> Result<LinearOperator, FuncRingError> {
        if !self.set.contains(base) {
            return Err(FuncRingError::PointNotInSet);
        }
        if !self.is_convex() {
            return Err(FuncRingError::NotConvex);
        }
        let field = self.set.field();
        let images = field
            .basis()
            .iter()
            .map(|e| {
                let y = conjugate(base, e).expect("basis vectors are nonzero");
                Ok(self.value_at(&y)? * e)
            })
            .collect::<Result<Vec<_>, FuncRingError>>()?;
        Ok(LinearOperator::from_basis_images(field, &images).expect("images live in the field"))
    }

    /// Inverse of [`endomorphism_at`](Self::endomorphism_at): rebuild the
    /// convex function on the orbit of `base` from a linear map, provided the
    /// map descends (i.e. `λ(b)·b⁻¹` depends only on `^b base`).
    pub fn from_endomorphism(op: &LinearOperator, base: &Scalar) -> Result<Self, FuncRingError> {
        let field = op.field();
        if base.field() != field {
            return Err(ScalarError::MixedFields.into());
        }
        let set = FiniteInvariantSet::orbit_of(base)?;
        let mut values: Vec<Option<Scalar>> = vec![None; set.len()];
        if field.characteristic() == 0 {
            // Fixed point: the only constraint is λ = right multiplication
            // composed with a constant, i.e. λ(b)·b⁻¹ constant on units; on a
            // fixed point the function value is λ(1).
            let v = op.apply(&Scalar::one(field));
            values = vec![Some(v)];
            // Verify the descent on the basis.
            for e in field.basis() {
                let want = values[0].as_ref().expect("just set") * &e;
                if op.apply(&e) != want {
                    return Err(FuncRingError::NotInduced);
                }
            }
        } else {
            for b in field.units()? {
                let y = conjugate(base, &b).expect("units are nonzero");
                let i = set.index_of(&y).expect("orbit contains its points");
                let v = op.apply(&b) * b.inv().expect("b is a unit");
                match &values[i] {
                    None => values[i] = Some(v),
                    Some(prev) => {
                        if *prev != v {
                            return Err(FuncRingError::NotInduced);
                        }
                    }
                }
            }
        }
        let values = values
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or(FuncRingError::NotInduced)?;
        Ok(OrbitFunction { set, values })
    }
}

impl fmt::Display for OrbitFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .set
            .points()
            .iter()
            .zip(&self.values)
            .map(|(x, v)| format!("{{{x}}}=>{{{v}}}"))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

impl fmt::Debug for OrbitFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrbitFunction({self})")
    }
}

/// Every function from the set into the field, in lexicographic order of
/// value tables. Errors when the count exceeds `2^20`.
pub fn all_functions(set: &FiniteInvariantSet) -> Result<Vec<OrbitFunction>, FuncRingError> {
    let elems = set.field().elements()?;
    let count = (elems.len() as u128)
        .checked_pow(set.len() as u32)
        .filter(|&c| c <= 1 << 20)
        .ok_or_else(|| {
            FuncRingError::EnumerationTooLarge(
                (elems.len() as u128).saturating_pow(set.len() as u32),
            )
        })?;
    let mut out = Vec::with_capacity(count as usize);
    let mut idx = vec![0usize; set.len()];
    loop {
        out.push(OrbitFunction {
            set: set.clone(),
            values: idx.iter().map(|&i| elems[i].clone()).collect(),
        });
        let mut k = set.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < elems.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// The convex functions on the set, in the same order as [`all_functions`].
pub fn convex_functions(set: &FiniteInvariantSet) -> Result<Vec<OrbitFunction>, FuncRingError> {
    Ok(all_functions(set)?
        .into_iter()
        .filter(OrbitFunction::is_convex)
        .collect())
}

/// Reassemble a function from restrictions to disjoint invariant subsets.
/// Inverse to [`OrbitFunction::decompose`].
pub fn recompose(parts: &[OrbitFunction]) -> Result<OrbitFunction, FuncRingError> {
    let first = parts.first().ok_or(FuncRingError::IncompleteCover)?;
    let field = first.set().field().clone();
    let mut map = ElementMap::new();
    let mut points = Vec::new();
    for part in parts {
        if part.set().field() != &field {
            return Err(FuncRingError::MismatchedSets);
        }
        for (x, v) in part.set().points().iter().zip(part.values()) {
            if map.insert(x.clone(), v.clone()).is_some() {
                return Err(FuncRingError::IncompleteCover);
            }
            points.push(x.clone());
        }
    }
    let set = FiniteInvariantSet::closure_of(&field, &points)?;
    OrbitFunction::from_map(&set, &map).map_err(|_| FuncRingError::IncompleteCover)
}

/// Pull `f` back along `phi: domain → set(f)`. `phi` must be total on the
/// domain and commute with conjugation (`phi(^a x) = ^a phi(x)`), which makes
/// the pullback a ring map preserving convexity.
pub fn pullback(
    phi: &ElementMap,
    f: &OrbitFunction,
    domain: &FiniteInvariantSet,
) -> Result<OrbitFunction, FuncRingError> {
    let field = domain.field();
    if f.set().field() != field {
        return Err(FuncRingError::MismatchedSets);
    }
    let image = |x: &Scalar| -> Result<&Scalar, FuncRingError> {
        let y = phi.get(x).ok_or(FuncRingError::BadTable)?;
        if !f.set().contains(y) {
            return Err(FuncRingError::PointNotInSet);
        }
        Ok(y)
    };
    if field.characteristic() != 0 {
        let units = field.units()?;
        for x in domain.points() {
            let px = image(x)?;
            for a in &units {
                let lhs = image(&conjugate(x, a)?)?;
                if *lhs != conjugate(px, a)? {
                    return Err(FuncRingError::NotActionPreserving);
                }
            }
        }
    }
    let values = domain
        .points()
        .iter()
        .map(|x| Ok(f.value_at(image(x)?)?.clone()))
        .collect::<Result<Vec<_>, FuncRingError>>()?;
    OrbitFunction::from_values(domain, values)
}
