//! Exact combinatorics of Richardson varieties X_w^v in the Grassmannian
//! G(d, n).

pub mod error;
pub mod index;
pub mod linalg;
pub mod multiplicity;
pub mod plucker;
pub mod poly;
pub mod poset;
pub mod selftest;
pub mod smt;
pub mod straighten;
pub mod tangent;

pub use error::{Error, Result};
pub use index::{GrassContext, PluckerIndex, RichardsonId, RootPair};
