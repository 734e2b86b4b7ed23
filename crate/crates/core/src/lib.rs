//! Certified rational periodic points and backward orbits for self-maps of
//! projective space over Q and for products of elliptic curves.
//!
//! On `P^1` the periodic set is computed exactly: a descent certificate
//! bounds the height of every periodic point, the finitely many candidates
//! are enumerated, and their functional graph is classified.

pub mod arith;
pub mod certify;
pub mod dsl;
pub mod elliptic;
pub mod emit;
pub mod error;
pub mod orbit;
pub mod projective;

pub use arith::{BigInt, BigRat, BinaryForm, UniPoly};
pub use certify::{canonical_height, certify_descent, CanonicalHeightValue, DescentCertificate};
pub use dsl::{parse, Diagnostic, DslDocument};
pub use elliptic::{ECPoint, EllipticCurve, ProductSystem, TorsionGroup};
pub use error::{Error, Result};
pub use orbit::{
    backward_tree, enumerate_bounded, periodic_points, BackwardTree, CandidateSet, EngineOptions, PeriodicReport,
};
pub use projective::{HomogForm, Morphism, MultHeight, ProjPoint};
