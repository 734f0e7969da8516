//! Exact arithmetic for skew polynomial rings `K[T; σ, δ]`, the near-ring of
//! skew-convex functions, and evaluation of skew rational functions, over
//! three built-in coefficient fields:
//!
//! * finite fields `F_{p^n}` with a Frobenius twist `σ(x) = x^(p^k)`,
//! * the Gaussian rationals `ℚ(i)` with `σ` conjugation or the identity,
//! * the rational quaternions `ℍ(ℚ)` with `σ = id`,
//!
//! each optionally extended by an inner derivation `δ_c(x) = c·x − σ(x)·c`.
//!
//! Everything is exact: finite-field coordinates are machine integers, the
//! characteristic-zero fields run on arbitrary-precision rationals. See
//! [`scalar`] for the fields themselves, [`poly`] for `K[T; σ, δ]` with its
//! one-sided Euclidean structure, [`action`] for `(σ, δ)`-conjugacy,
//! [`funcring`] for skew-convex function rings, [`rational`] for skew
//! rational functions and their evaluation domains, and [`expr`]/[`config`]
//! for the text front end used by the CLI.

pub mod action;
pub mod config;
pub mod expr;
pub mod funcring;
pub mod poly;
pub mod rational;
pub mod scalar;

mod fppoly;
mod intops;
mod linalg;
mod ratpoly;

pub use action::{
    centralizer, class_polynomial, conjugate, orbit, same_class, ActionError, Centralizer,
    ClassInvariant, ConjugacyClass,
};
pub use config::{Config, ConfigError};
pub use expr::{lower, parse_expr, Ast, LowerError, ParseError, Span};
pub use funcring::{
    all_functions, convex_functions, pullback, recompose, ElementMap, FiniteInvariantSet,
    FuncRingError, OrbitFunction,
};
pub use poly::{PolyError, SkewPolynomial};
pub use rational::{
    conjugate_transfer_check, domain_report, eval_operator, eval_semi_invariant, evaluate_at,
    is_defined_at, linear_kernel, metro_solve, product_formula_check, quadratic_kernel_gaussian,
    DomainReport, EvalOperator, MetroSolution, RationalError, SkewRationalFunction,
};
pub use scalar::{
    FieldDescriptor, FieldKind, FieldRef, GaussianSigma, LinearOperator, Scalar, ScalarError,
    SolveStatus,
};
