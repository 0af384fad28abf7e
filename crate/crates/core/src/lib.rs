//! Exact invariants of polynomial germs with non-isolated singularities: Milnor
//! numbers, relative polar curves, Lê numbers, Iomdin series and stratified
//! Euler obstruction identities.

pub mod algebra;
pub mod error;
pub mod fixtures;
pub mod frontend;
pub mod iomdin;
pub mod le;
pub mod limits;
pub mod local;
pub mod polar;
pub mod report;
pub mod strat;

pub use error::{Error, Result};
pub use limits::Limits;
