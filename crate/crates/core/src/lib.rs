pub mod acceptance;
pub mod budget;
pub mod canon;
pub mod cli;
pub mod error;
pub mod expr;
pub mod graph;
pub mod linalg;
pub mod poly;
pub mod products;
pub mod ring;
pub mod simplicial;
pub mod spectral;
pub mod topology;

pub use canon::{CanonBudget, CanonicalForm};
pub use error::{Error, Result};
pub use graph::{Family, Graph};
pub use ring::{RingElement, View};

/// Exact rational matrices.
pub type RationalMatrix = linalg::DenseMatrix<num_rational::BigRational>;
/// Polynomials with integer coefficients.
pub type IntPoly = poly::Poly<i64>;
pub use spectral::{IntMatrix, Spectrum32, Spectrum64};
