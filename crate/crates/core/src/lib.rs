//! Exact computations with braids that carry double lines: word
//! normalization and Markov moves, the affine Hecke algebra, closed
//! diagrams and Gauss data, and Kauffman bracket traces.

pub mod braid;
pub mod diagram;
pub mod hecke;
pub mod ring;
pub mod skein;

use thiserror::Error;

/// Any error from the crate, tagged with the module it came from.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("braid: {0}")]
    Braid(#[from] braid::BraidError),
    #[error("hecke: {0}")]
    Hecke(#[from] hecke::HeckeError),
    #[error("diagram: {0}")]
    Diagram(#[from] diagram::DiagramError),
    #[error("skein: {0}")]
    Skein(#[from] skein::SkeinError),
}

pub type Result<T> = std::result::Result<T, Error>;
