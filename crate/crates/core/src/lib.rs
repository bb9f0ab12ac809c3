pub mod complex_maps;
pub mod error;
pub use error::{Error, Result};
pub mod cli;
pub mod extension;
pub mod geometry;
pub mod real_maps;
pub mod triple;
pub mod verify;
