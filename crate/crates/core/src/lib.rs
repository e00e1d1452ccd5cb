//! Exact computations with skew Clifford algebras `sCl(V, μ, φ)` over ℚ:
//! presentations, Diamond-Lemma rewriting, structural checks and
//! homogenizations.

pub mod cli;
pub mod error;
pub mod fixtures;
pub mod homogenize;
pub mod presentation;
pub mod rewrite;
pub mod scalar;
pub mod structure;

pub use error::{Error, Result};
pub use presentation::Presentation;
pub use rewrite::{Element, SkewClifford, Word};
pub use scalar::{Matrix, Scalar};
