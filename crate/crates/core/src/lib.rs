pub mod cli;
pub mod comod;
pub mod error;
pub mod field;
pub mod grmod;
pub mod groth;
pub mod io;
pub mod stable;

pub use error::{Error, Result};
