//! Exact computer algebra for symplectic linear algebra on finite
//! form complexes.
//!
//! The crate provides a graded exterior algebra over exact coefficient
//! rings, the sl(2) operator triple `(L, Λ, H)` of a symplectic form,
//! the degree-lowering differential `dΛ` and its compositions, Hodge
//! theory for compatible triples, and an exact cohomology engine for
//! invariant-form (Chevalley–Eilenberg) complexes of nilmanifolds, with
//! named checks for the dd^Λ-lemma, strong Lefschetz, and duality
//! pairings. All arithmetic is exact; there is no floating point
//! anywhere.

pub mod blade;
pub mod checks;
pub mod darboux;
pub mod engine;
pub mod form;
pub mod identity;
pub mod linalg;
pub mod metric;
pub mod model;
pub mod parse;
pub mod scalar;
pub mod subspace;
pub mod symplectic;

pub use blade::Blade;
pub use checks::{CheckReport, Verdict};
pub use darboux::{DarbouxChart, PolyVectorField};
pub use engine::{CohomologyResult, Engine, Kind, OperatorId};
pub use form::Form;
pub use linalg::Mat;
pub use metric::{CompatibleTriple, EllipticKind, LaplacianKind, MetricContext};
pub use model::{Derivative, InvariantModel, ValidationReport};
pub use scalar::{Gaussian, Poly, Rat, Scalar};
pub use subspace::Subspace;
pub use symplectic::{LefschetzComponents, SymplecticContext};
