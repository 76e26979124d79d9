//! Lattice order quantification with 0D/1D Vietoris–Rips persistence.
//!
//! The pipeline runs from grayscale surface images (seeded region growing to
//! indentation centers) or synthetic lattices, through persistence diagrams,
//! to the normalized order scores `H̄₀ = 4·Var(H₀)` and
//! `H̄₁ = ΣH₁ / (2(√2−1)(n−1))`, which read `(0, 1)` for a perfect square
//! lattice and `(0, 0)` for a perfect hexagonal one.

pub mod cloud;
pub mod error;
pub mod imaging;
pub mod lattice;
pub mod oracle;
pub mod persistence;
pub mod scores;

pub use cloud::{Point2, PointCloud, Unit};
pub use error::{Error, ErrorKind, Result};
