pub mod error;
pub mod special;
pub mod units;
pub mod weber;

pub use error::{Error, Result};
pub mod force;
pub mod dynamics;
pub mod config;
pub mod scenario;
pub mod output;
pub mod validate;
