//! Exact decision engine for the Liouville property of linear,
//! translation-invariant operators satisfying the maximum principle
//! (local diffusion/drift plus a Lévy jump part), together with the
//! period group of their bounded solutions, explicit counterexample
//! construction when the property fails, and a floating-point
//! verification layer based on the characteristic symbol.

pub mod document;
pub mod error;
pub mod linalg;
pub mod operator;
pub mod report;
pub mod scalar;
pub mod subgroup;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::{Field, FieldDescriptor, Scalar};
