//! Local n-pseudofields and the locally sharply n-transitive groups built
//! from them.
//!
//! The crate has three layers:
//!
//! * the algebra: partial carrier operations, involutions and units
//!   ([`algebra`]), concrete instances ([`instances`]), and the postfix word
//!   calculus through which tuples act on the carrier ([`word`]);
//! * the two constructions: carrier-to-group ([`group`]) and the inverse
//!   extraction of the carrier operations from a sharply transitive action
//!   ([`extract`]);
//! * a seeded verification engine that turns every defining identity into
//!   residual statistics ([`verify`]), exposed through the `pseudofield`
//!   command-line tool.

pub mod algebra;
pub mod extract;
pub mod group;
pub mod instances;
pub mod linalg;
pub mod scalar;
pub mod verify;
pub mod word;

pub mod cli;

pub use algebra::{Element, Partial, Pseudofield, Undefined};
pub use group::Tuple;
pub use scalar::{Rat, Scalar};
