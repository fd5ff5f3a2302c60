pub mod chevalley;
pub mod double;
pub mod error;
pub mod formats;
pub mod ideals;
pub mod kernel;
pub mod lagrange;
pub mod rootsys;
pub mod suite;

pub use error::{Error, Result};

/// The guide's code blocks, compiled and run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/roots.md")]
    mod roots {}
    #[doc = include_str!("../../../book/src/chevalley.md")]
    mod chevalley {}
    #[doc = include_str!("../../../book/src/double.md")]
    mod double {}
    #[doc = include_str!("../../../book/src/lagrangian.md")]
    mod lagrangian {}
    #[doc = include_str!("../../../book/src/ideals.md")]
    mod ideals {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
}
