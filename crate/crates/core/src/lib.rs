pub mod audit;
pub mod construction;
pub mod covers;
pub mod dsl;
pub mod error;
pub mod geography;
pub mod group;
pub mod invariants;

pub use error::{Error, Result};
