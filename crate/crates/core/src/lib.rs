//! Exact computations on toric varieties: lattices and cones, fans and
//! their resolution, essential divisors, abelian quotient singularities,
//! affine semigroups, monomial valuations and arcs.
//!
//! A guide with worked examples lives in the `book/` directory.

pub mod arc;
pub mod cone;
pub mod error;
pub mod essential;
pub mod fan;
pub mod lattice;
pub mod linalg;
pub mod mckay;
pub mod semigroup;
pub mod valuation;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/cones.md")]
    mod cones {}
    #[doc = include_str!("../../../book/src/resolution.md")]
    mod resolution {}
    #[doc = include_str!("../../../book/src/essential.md")]
    mod essential {}
    #[doc = include_str!("../../../book/src/mckay.md")]
    mod mckay {}
    #[doc = include_str!("../../../book/src/semigroups.md")]
    mod semigroups {}
    #[doc = include_str!("../../../book/src/arcs.md")]
    mod arcs {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
