//! Exact computations for linear configurations: matroid invariants,
//! configuration polynomials, Bloch's incidence variety, and the square
//! conormal fan giving a tropical resolution of the configuration hypersurface.

pub mod arith;
pub mod charp;
pub mod classes;
pub mod config;
pub mod fans;
pub mod matroid;

pub use arith::{Field, Matrix, MultiPoly, Scalar};
pub use charp::{Certificate, CertificateKind, CharpError, Verdict};
pub use classes::{BettiTable, BiDegree, ClassesError};
pub use config::{ConfigError, Configuration};
pub use fans::{Fan, FanError, SquareBiflat};
pub use matroid::{BasisList, ClassPoly, Graph, Matroid, MatroidError, Subset};
