//! Guard placement in simple polygons whose edges are single-bounce mirrors.

pub mod cover;
pub mod decompose;
pub mod error;
pub mod find;
pub mod kernel;
pub mod mirror;
pub mod pipeline;
pub mod polygon;
pub mod scr;

pub use error::{Error, Result};
