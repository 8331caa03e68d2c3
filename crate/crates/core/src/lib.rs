//! Cobordism complexes of rank 7/4.
//!
//! Triangle presentations, the semigroup of cobordisms generated by
//! `X00, X01, X10, X11, Y00, Y01`, the cylinder graph `R(ω)`, certificates
//! for flat tori and trees of flats, and exact counting over the semigroup.

pub mod census;
pub mod certificates;
pub mod cobordism;
pub mod complex;
pub mod dot;
pub mod error;
pub mod fixtures;
pub mod label;
pub mod rgraph;

pub use complex::{Triangle, TrianglePresentation};
pub use error::{CensusError, CobordismError, ComplexError, RGraphError};
pub use label::{Label, SignedLabel};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
