//! Boundary points of a free group and the Σ¹-invariant of metabelian-style
//! extensions `B ⋊ F_n`.
//!
//! A point of `∂F_n` is an eventually periodic [`Ray`]. For each ray the
//! [`sigma`] module decides whether it lies in `Σ¹(ρ)` by checking, over the
//! horoballs `A_k(τ)` of [`horoball`], whether a finite subset of `B`
//! generates `B`. The coefficient modules ([`coefficients`]) are the
//! Lehnert groups `Z[1/(p₁⋯pₙ)]` and the wreath families
//! `(⊕_C Z) ⋊ (C * D)`.
//!
//! ```
//! use sigma_tree::{classify, Family, Ray};
//!
//! let family: Family = "lehnert:2,3".parse().unwrap();
//! let ray: Ray = "a2 | A1".parse().unwrap();
//! let verdict = classify(&family, &ray).unwrap();
//! assert_eq!(verdict.record(), "Out;Cor_BoundedExpsum;letter=a1;k=0;bound=1");
//! ```

pub mod coefficients;
pub mod horoball;
pub mod rays;
pub mod sigma;
pub mod words;

use thiserror::Error;

pub use coefficients::{CoefficientError, Family, PRational, PhiImageModel, SupportVector};
pub use horoball::{in_horoball, HoroballError, HoroballQuery};
pub use rays::{Ray, RayError};
pub use sigma::{classify, Certificate, Criterion, SigmaError, Verdict};
pub use words::{Alphabet, CapExceeded, EnumerationCap, Letter, Word, WordError};

/// Any error raised by this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Ray(#[from] RayError),
    #[error(transparent)]
    Horoball(#[from] HoroballError),
    #[error(transparent)]
    Coefficient(#[from] CoefficientError),
    #[error(transparent)]
    Sigma(#[from] SigmaError),
    #[error(transparent)]
    Cap(#[from] CapExceeded),
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/words.md")]
    mod words {}
    #[doc = include_str!("../../../book/src/rays.md")]
    mod rays {}
    #[doc = include_str!("../../../book/src/horoballs.md")]
    mod horoballs {}
    #[doc = include_str!("../../../book/src/coefficients.md")]
    mod coefficients {}
    #[doc = include_str!("../../../book/src/sigma.md")]
    mod sigma {}
}
