//! Exact computational commutative algebra for central hyperplane
//! arrangements.
//!
//! The library builds the Jacobian ideal of an arrangement's defining
//! polynomial and the ideals of fold products of its linear forms, then
//! computes the homological invariants that compare them: syzygy initial
//! degrees, graded Betti tables, Castelnuovo-Mumford regularity, satiety,
//! depth, reduction numbers with replayable certificates, Orlik-Terao fiber
//! presentations, and symmetric/Rees algebra comparisons (linear type,
//! freeness). Everything is exact: coefficients live in Q or F_p, and every
//! answer is an integer, a polynomial, or a yes/no that a second,
//! independent route can re-derive.

pub mod arrangement;
pub mod budget;
pub mod error;
pub mod fiber;
pub mod field;
pub mod forms;
pub mod hilbert;
pub mod ideal;
pub mod linalg;
pub mod matroid;
pub mod monomial;
pub mod oracle;
pub mod parse;
pub mod poly;
pub mod rees;
pub mod report;
pub mod resolution;

pub(crate) mod engine;

pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{Polynomial, PolynomialRing, Ring};
