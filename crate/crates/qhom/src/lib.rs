//! Exact computer algebra for plane curve singularities: Groebner bases and
//! syzygies over Q[x0,x1,x2], minimal free resolutions of Jacobian ideals,
//! and a rank test deciding quasi-homogeneity of the singular points of free
//! and nearly free projective plane curves.

pub mod analyzer;
pub mod cli;
pub mod config;
pub mod engine;
pub mod error;
pub mod families;
pub mod groebner;
pub mod linalg;
pub mod monomial;
pub mod order;
pub mod parser;
pub mod point;
pub mod poly;
pub mod rational;
pub mod report;
pub mod resolution;

pub use cli::run;

// Compile the guide's code blocks as doctests so the book never drifts from
// the library.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/overview.md")]
    mod overview {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/groebner.md")]
    mod groebner {}
    #[doc = include_str!("../../../book/src/syzygies.md")]
    mod syzygies {}
    #[doc = include_str!("../../../book/src/analysis.md")]
    mod analysis {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
