//! Gabidulin (rank-metric) outer codes concatenated with MDS array and
//! locally repairable inner codes, with bounds on resilience capacity and a
//! seeded simulator of storage systems under static and dynamic attack.

pub mod array;
pub mod bounds;
pub mod concat;
pub mod error;
pub mod field;
pub mod gabidulin;
pub mod linearized;
pub mod payload;
pub mod scenario;
pub mod sim;

pub use error::{Error, Result};
