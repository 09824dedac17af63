//! Exact computations for degree-one generalized Weyl algebras
//! W = B(σ, φ) over B = ℚ[z₁, z₂]: normal forms, the enveloping algebra and
//! its homotopy double complex, smoothness certificates, Nakayama data and
//! non-smoothness witnesses.

pub mod aut;
pub mod calculus;
pub mod cohomology;
pub mod envelope;
pub mod error;
pub mod gwa;
pub mod ideal;
pub mod parse;
pub mod pipeline;
pub mod poly;
pub mod random;
pub mod report;
pub mod suites;
pub mod tor;

pub use error::{Error, Result};
