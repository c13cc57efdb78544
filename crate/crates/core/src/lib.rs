//! Generalized cluster categories `D^b(kQ)/(F^m)` of Dynkin quivers, with
//! `F = τ⁻¹[1]`.
//!
//! The pipeline is: parse a [`Quiver`], knit its AR quiver into a
//! [`ModuleCategory`], view shifted modules as objects of the derived
//! category ([`DerivedCategory`]), pass to the orbit category
//! ([`OrbitCategory`]), then enumerate tilting objects, build the tilting
//! graph and profile endomorphism algebras.
//!
//! Explicit representations are generic over any [`ExactField`]; the aliases
//! below fix the rational numbers used by default.

pub mod derived;
pub mod endo;
pub mod linalg;
pub mod module_cat;
pub mod orbit;
pub mod quiver;
pub mod rep;
pub mod scalar;
pub mod tilting;
pub mod verify;

pub use derived::{DObject, DerivedCategory, DerivedError};
pub use module_cat::{
    knit_ar_quiver, realize, ARQuiver, HomTable, IndModule, ModuleCategory, ModuleId,
};
pub use orbit::{FStableObject, OrbitCategory, OrbitError, OrbitObject};
pub use quiver::{
    classify_dynkin, parse_quiver, DimVector, DynkinClass, Family, Quiver, QuiverError,
};
pub use scalar::ExactField;
pub use tilting::{ClusterTilting, GenClusterTilting, TiltingError, TiltingGraph};

/// Arbitrary-precision rationals, the default scalar for explicit representations.
pub type Rational = num_rational::BigRational;
/// Machine-word rationals; fine for the small representations of `A_n`/`D_4`.
pub type Rational64 = num_rational::Rational64;

pub type QMatrix = linalg::Matrix<Rational>;
pub type QRepresentation = rep::Representation<Rational>;
pub type QRealization = module_cat::Realization<Rational>;

/// Current version of every JSON document this crate emits.
pub const SCHEMA_VERSION: u32 = 1;
