pub mod cli;
pub mod counting;
pub mod error;
pub mod graphs;
pub mod kirchhoff;
pub mod polyring;
pub mod reduction;
pub mod verify;

pub use error::{Error, Result};
