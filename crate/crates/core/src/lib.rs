//! Scale-dependent set size.
//!
//! A set is measured by covering it with translates of one cell and counting
//! the cells: the result is a size pair `(r, N(r))`. This crate provides the
//! exact arithmetic those counts live in ([`graduation`]), the pair calculus
//! ([`pair`]), concrete set models ([`set`]), grid covers and size
//! equivalence ([`cover`]), outer-measure property checkers
//! ([`properties`]), symbolic sizes of infinite sets ([`cardinal`]),
//! log-log dimension fits ([`fit`]) and the report-producing commands behind
//! the `setsize` binary ([`report`]).
//!
//! Runnable walkthroughs live in `examples/`:
//!
//! ```bash
//! cargo run -p setsize --example cantor_dimension
//! ```

pub mod algebra;
pub mod cardinal;
pub mod cover;
pub mod error;
pub mod fit;
pub mod graduation;
pub mod pair;
pub mod properties;
pub mod report;
pub mod sampling;
pub mod set;

pub use error::{Error, Result};
pub use graduation::{Comparison, MValue};
pub use pair::{Scale, SizePair};
pub use set::{AxisBox, IfsFractal, Point, PointSet, SetModel, Translation};
